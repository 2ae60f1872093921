#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "choreo/symmetry.hpp"
#include "choreo/verify.hpp"
#include "helpers.hpp"

using namespace choreo;
using std::numbers::pi;

namespace {

PhasePoint square_state() {
    const double R = rotating_square_radius();
    return {{0, R}, {R, 0}, {R, 0}, {0, -R}};
}

std::vector<double> period_grid(int m) {
    std::vector<double> t(m);
    for (int i = 0; i < m; ++i) t[i] = 2 * pi * (i + 1) / m;
    return t;
}

}  // namespace

TEST_CASE("rotating square is a relative equilibrium of the flow") {
    const double R = rotating_square_radius();
    const NewtonTrajectory traj = integrate_newton(square_state(), period_grid(64));
    const FourierLoop loop = rotating_square_loop(4);
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const PhasePoint& s = traj.states[i];
        CHECK(std::abs(norm(s.q1) - R) < 1e-8);
        CHECK(std::abs(norm(s.q2) - R) < 1e-8);
        const Configuration c = evaluate(loop, traj.t[i]);
        CHECK(norm(s.q1 - c.q1) < 1e-8);
        CHECK(norm(s.q2 - c.q2) < 1e-8);
    }
}

TEST_CASE("conserved quantities drift below 1e-9 over one period") {
    for (const PhasePoint start :
         {square_state(), PhasePoint{{0.1, 1.1}, {0.9, -0.2}, {0.8, 0.1}, {-0.1, -0.9}}}) {
        const NewtonTrajectory traj = integrate_newton(start, period_grid(32));
        const double e0 = energy(start);
        const double l0 = angular_momentum(start);
        for (const PhasePoint& s : traj.states) {
            CHECK(std::abs(energy(s) - e0) < 1e-9);
            CHECK(std::abs(angular_momentum(s) - l0) < 1e-9);
        }
    }
}

TEST_CASE("forward-backward integration restores the state") {
    const PhasePoint start{{0.1, 1.1}, {0.9, -0.2}, {0.8, 0.1}, {-0.1, -0.9}};
    const NewtonTrajectory fwd = integrate_newton(start, {3.0});
    const PhasePoint mid = fwd.states.back();
    // Reverse momenta; the flow is time-reversible.
    const PhasePoint back_start{mid.q1, mid.q2, -1.0 * mid.p1, -1.0 * mid.p2};
    const NewtonTrajectory back = integrate_newton(back_start, {3.0});
    const PhasePoint end = back.states.back();
    CHECK(norm(end.q1 - start.q1) < 1e-8);
    CHECK(norm(end.q2 - start.q2) < 1e-8);
    CHECK(norm(end.p1 + start.p1) < 1e-8);
    CHECK(norm(end.p2 + start.p2) < 1e-8);
}

TEST_CASE("close approaches abort with the approach time") {
    // Body 2 dives through the origin where its mirror partner sits.
    const PhasePoint diving{{1, 0}, {0, 0.01}, {0, 0}, {0, -1}};
    try {
        integrate_newton(diving, {1.0});
        FAIL("expected CollisionError");
    } catch (const CollisionError& e) {
        CHECK(e.denominator() == "min_separation");
        CHECK(e.value() < kCloseApproach);
        CHECK(std::isfinite(e.time()));
        CHECK(e.time() > 0);
        CHECK(e.time() < 0.1);
    }
}

TEST_CASE("residual report certifies the rotating square") {
    const ResidualReport rep = residual_report(rotating_square_loop(8));
    CHECK(rep.newton_sup < 1e-6);
    CHECK(rep.energy_drift < 1e-9);
    CHECK(rep.momentum_drift < 1e-9);
    CHECK(rep.periodicity < 1e-8);
    CHECK(rep.choreography < 1e-12);
    CHECK(rep.symmetry < 1e-12);
    const double R = rotating_square_radius();
    CHECK(rep.min_separation == doctest::Approx(R * std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("residual report flags a symmetric non-solution") {
    std::mt19937_64 rng(31);
    FourierLoop x = rotating_square_loop(16);
    FourierLoop noise = choreo::testing::random_loop(rng, 16);
    scale(noise, 0.05 / h1_norm(noise));
    add_scaled(x, 1.0, noise);
    x = equivariant_project(x);

    const ResidualReport rep = residual_report(x);
    CHECK(std::isfinite(rep.newton_sup));
    CHECK(rep.newton_sup > 1e-3);       // not a solution, and seen as such
    CHECK(rep.energy_drift < 1e-9);     // the integration itself stays accurate
    CHECK(rep.choreography < 1e-10);    // projector guarantees these regardless
    CHECK(rep.symmetry < 1e-10);
    CHECK(rep.min_separation > 0.5);
}

TEST_CASE("integration abort is recorded as infinite residuals") {
    // A symmetric loop whose t = 0 state is a square at rest: the flow is a
    // homothetic free fall into total collision (about t ~ 0.6), long before
    // one period elapses.  Modes 1 and 3 are combined so the initial velocity
    // cancels while the initial positions do not.
    const double s = 0.7;
    FourierLoop x(4);
    x.xi_at(1, kQ1x) = 0.75 * s * basis_norm(1);
    x.xi_at(3, kQ1x) = -0.25 * s * basis_norm(3);
    x.eta_at(1, kQ1y) = 0.75 * s * basis_norm(1);
    x.eta_at(3, kQ1y) = 0.25 * s * basis_norm(3);
    x.eta_at(1, kQ2x) = x.xi_at(1, kQ1x);
    x.eta_at(3, kQ2x) = -x.xi_at(3, kQ1x);
    x.xi_at(1, kQ2y) = -x.eta_at(1, kQ1y);
    x.xi_at(3, kQ2y) = x.eta_at(3, kQ1y);
    REQUIRE(choreo::testing::max_coeff_diff(equivariant_project(x), x) < 1e-12);
    const PhasePoint start = phase_point(x, 0.0);
    REQUIRE(norm(start.p1) < 1e-12);
    REQUIRE(norm(start.p2) < 1e-12);
    REQUIRE(norm(start.q1 - Vec2{0, s}) < 1e-12);

    const ResidualReport rep = residual_report(x);
    CHECK(std::isinf(rep.newton_sup));
    CHECK(std::isinf(rep.energy_drift));
    CHECK(std::isinf(rep.momentum_drift));
    CHECK(std::isinf(rep.periodicity));
    // The loop itself is collision-free; only its flow collapses.
    CHECK(rep.choreography < 1e-12);
    CHECK(std::isfinite(rep.min_separation));
    CHECK(rep.min_separation > 0.4);
}
