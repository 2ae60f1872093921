#pragma once

#include <functional>
#include <vector>

namespace choreo {

// Right-hand side callback: writes f(t, y) into dydt (both of length n).
// Exceptions thrown here (e.g. CollisionError) propagate out of integrate().
using OdeRhs = std::function<void(double t, const double* y, double* dydt)>;

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-12;
    double h0 = 0.0;        // initial step size; 0 selects one automatically
    double max_step = 0.0;  // cap on the step size; 0 means unlimited
    long max_steps = 10'000'000;
};

struct OdeSolution {
    std::vector<double> t;
    std::vector<std::vector<double>> y;  // y[i] is the state at t[i]
    long n_steps = 0;                    // accepted steps
    long n_rhs = 0;                      // derivative evaluations
};

// Integrate dy/dt = f(t, y) from t0 through the requested output times with
// an adaptive Dormand-Prince 8(5,3) scheme (PI step control on the embedded
// 5th/3rd-order error estimate).  t_out must move strictly monotonically away
// from t0 — either direction works; the integrator clamps steps so that every
// output time is hit exactly.
OdeSolution integrate(const OdeRhs& f, double t0, const std::vector<double>& y0,
                      const std::vector<double>& t_out, const OdeOptions& opts = {});

}  // namespace choreo
