#include "choreo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "choreo/ode.hpp"
#include "choreo/symmetry.hpp"

namespace choreo {

namespace {

using std::numbers::pi;

void newton_rhs(double t, const double* y, double* dy) {
    const Configuration c{{y[0], y[1]}, {y[2], y[3]}};
    const double sep = min_separation(c);
    if (sep < kCloseApproach) throw CollisionError("min_separation", sep, t);
    const Configuration a = acceleration(c);
    dy[0] = y[4];
    dy[1] = y[5];
    dy[2] = y[6];
    dy[3] = y[7];
    dy[4] = a.q1.x;
    dy[5] = a.q1.y;
    dy[6] = a.q2.x;
    dy[7] = a.q2.y;
}

std::vector<double> pack(const PhasePoint& s) {
    return {s.q1.x, s.q1.y, s.q2.x, s.q2.y, s.p1.x, s.p1.y, s.p2.x, s.p2.y};
}

PhasePoint unpack(const std::vector<double>& y) {
    return {{y[0], y[1]}, {y[2], y[3]}, {y[4], y[5]}, {y[6], y[7]}};
}

double state_distance(const PhasePoint& a, const PhasePoint& b) {
    return std::sqrt(norm2(a.q1 - b.q1) + norm2(a.q2 - b.q2) + norm2(a.p1 - b.p1) +
                     norm2(a.p2 - b.p2));
}

}  // namespace

NewtonTrajectory integrate_newton(const PhasePoint& initial, const std::vector<double>& t_out,
                                  double rtol, double atol) {
    OdeOptions opts;
    opts.rtol = rtol;
    opts.atol = atol;
    const OdeSolution sol = integrate(newton_rhs, 0.0, pack(initial), t_out, opts);
    NewtonTrajectory traj;
    traj.t = sol.t;
    traj.states.reserve(sol.y.size());
    for (const auto& y : sol.y) traj.states.push_back(unpack(y));
    return traj;
}

ResidualReport residual_report(const FourierLoop& loop, const VerifyOptions& opts) {
    ResidualReport rep;
    const int m = opts.grid;

    // Trajectory-vs-loop comparison in phase space.  Pointwise ODE residuals
    // of a truncated series are dominated by differentiation noise in the top
    // modes, so the flow comparison is the meaningful measurement.
    const PhasePoint start = phase_point(loop, 0.0);
    std::vector<double> t_out(m);
    for (int i = 0; i < m; ++i) t_out[i] = 2 * pi * (i + 1) / m;
    try {
        const NewtonTrajectory traj = integrate_newton(start, t_out, opts.rtol, opts.atol);
        const double e0 = energy(start);
        const double l0 = angular_momentum(start);
        for (int i = 0; i < m; ++i) {
            const PhasePoint& s = traj.states[i];
            rep.newton_sup = std::max(rep.newton_sup, state_distance(s, phase_point(loop, t_out[i])));
            rep.energy_drift = std::max(rep.energy_drift, std::abs(energy(s) - e0));
            rep.momentum_drift =
                std::max(rep.momentum_drift, std::abs(angular_momentum(s) - l0));
        }
        rep.periodicity = state_distance(traj.states.back(), start);
    } catch (const CollisionError&) {
        const double inf = std::numeric_limits<double>::infinity();
        rep.newton_sup = rep.energy_drift = rep.momentum_drift = rep.periodicity = inf;
    }

    // Loop-intrinsic residuals.
    for (int i = 0; i < m; ++i) {
        const double t = 2 * pi * i / m;
        const Configuration a = evaluate(loop, t);
        const Configuration b = evaluate(loop, t + pi / 2);
        rep.choreography = std::max(rep.choreography, norm(a.q2 - b.q1));
    }
    for (const GroupElement& g : {generator_g1(), generator_g2(), generator_g3()}) {
        FourierLoop d = act_on_loop(g, loop);
        add_scaled(d, -1.0, loop);
        for (int i = 0; i < m; ++i) {
            const Configuration c = evaluate(d, 2 * pi * i / m);
            rep.symmetry = std::max(rep.symmetry, std::sqrt(norm2(c.q1) + norm2(c.q2)));
        }
    }

    rep.min_separation = std::numeric_limits<double>::infinity();
    for (int i = 0; i < opts.sep_grid; ++i) {
        const double t = 2 * pi * i / opts.sep_grid;
        rep.min_separation = std::min(rep.min_separation, min_separation(evaluate(loop, t)));
    }
    return rep;
}

}  // namespace choreo
