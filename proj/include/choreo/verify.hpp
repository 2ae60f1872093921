#pragma once

#include <vector>

#include "choreo/dynamics.hpp"
#include "choreo/fourier_loop.hpp"

namespace choreo {

// Close approaches below this abort Newton integration; the raw equations
// carry no useful information that deep into a near-collision.
inline constexpr double kCloseApproach = 1e-6;

struct NewtonTrajectory {
    std::vector<double> t;
    std::vector<PhasePoint> states;
};

// Integrate the reduced Newton equations  q1'' = dU/dq1,  q2'' = dU/dq2
// (equivalent to the full four-body system on the invariant subspace
// q3 = -q1, q4 = -q2) from `initial`, reporting the state at each requested
// time.  Throws CollisionError, carrying the approach time, if the minimal
// separation drops below kCloseApproach.
NewtonTrajectory integrate_newton(const PhasePoint& initial,
                                  const std::vector<double>& t_out,
                                  double rtol = 1e-12, double atol = 1e-12);

// Independent validation of a loop against the flow it claims to solve.
// All fields are nonnegative; the first four are +infinity when the
// integration aborts on a close approach.
struct ResidualReport {
    double newton_sup = 0;      // sup_t |flow_t(x(0)) - x(t)|, full phase state
    double energy_drift = 0;    // sup_t |E(t) - E(0)| along the integrated flow
    double momentum_drift = 0;  // same for the angular momentum
    double periodicity = 0;     // |flow_{2pi}(x(0)) - x(0)|
    double choreography = 0;    // sup_t |q2(t) - q1(t + pi/2)| on the loop
    double symmetry = 0;        // max over generators g of sup_t |(g.x)(t) - x(t)|
    double min_separation = 0;  // min over a fine grid of the four separations
};

struct VerifyOptions {
    int grid = 256;       // comparison grid for the integrated flow
    int sep_grid = 4096;  // grid for the separation minimum
    double rtol = 1e-12;
    double atol = 1e-12;
};

ResidualReport residual_report(const FourierLoop& loop, const VerifyOptions& opts = {});

}  // namespace choreo
