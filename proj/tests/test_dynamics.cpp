#include <doctest.h>

#include <cmath>
#include <random>

#include "choreo/dynamics.hpp"
#include "helpers.hpp"

using namespace choreo;
using choreo::testing::random_config;
using choreo::testing::uniform;

namespace {

// Central finite difference of a scalar field on configuration space.
Configuration fd_gradient(double (*f)(const Configuration&), const Configuration& c, double h) {
    Configuration g;
    double* comps[4] = {nullptr, nullptr, nullptr, nullptr};
    Configuration probe = c;
    double* pc[4] = {&probe.q1.x, &probe.q1.y, &probe.q2.x, &probe.q2.y};
    double out[4];
    for (int i = 0; i < 4; ++i) {
        const double saved = *pc[i];
        *pc[i] = saved + h;
        const double fp = f(probe);
        *pc[i] = saved - h;
        const double fm = f(probe);
        *pc[i] = saved;
        out[i] = (fp - fm) / (2 * h);
    }
    (void)comps;
    g.q1 = {out[0], out[1]};
    g.q2 = {out[2], out[3]};
    return g;
}

}  // namespace

TEST_CASE("potential value at pinned configurations") {
    CHECK(potential_U({{1, 0}, {0, 1}}) == doctest::Approx(std::sqrt(2.0) + 1.0).epsilon(1e-13));
    CHECK(potential_U({{0, 1}, {2, 0}}) ==
          doctest::Approx(2.0 / std::sqrt(5.0) + 0.75).epsilon(1e-13));
    CHECK(potential_U({{1, 0}, {0, 1}}) > 0.0);
}

TEST_CASE("potential symmetries") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Configuration c = random_config(rng);
        const double u = potential_U(c);
        CHECK(potential_U({c.q2, c.q1}) == doctest::Approx(u).epsilon(1e-12));
        CHECK(potential_U({-c.q1, c.q2}) == doctest::Approx(u).epsilon(1e-12));
        CHECK(potential_U({c.q1, -c.q2}) == doctest::Approx(u).epsilon(1e-12));
        const Mat2 rot = rotation(uniform(rng, 0, 6.28));
        CHECK(potential_U({rot * c.q1, rot * c.q2}) == doctest::Approx(u).epsilon(1e-11));
    }
}

TEST_CASE("acceleration at pinned configuration") {
    const Configuration a = acceleration({{0, 1}, {1, 0}});
    CHECK(a.q1.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(a.q1.y == doctest::Approx(-0.5 - 1.0 / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("acceleration equals the potential gradient (finite differences)") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Configuration c = random_config(rng);
        const Configuration a = acceleration(c);
        const Configuration g = fd_gradient(&potential_U, c, 1e-6);
        const double scale =
            std::max({1.0, std::abs(g.q1.x), std::abs(g.q1.y), std::abs(g.q2.x), std::abs(g.q2.y)});
        CHECK(std::abs(a.q1.x - g.q1.x) / scale < 1e-8);
        CHECK(std::abs(a.q1.y - g.q1.y) / scale < 1e-8);
        CHECK(std::abs(a.q2.x - g.q2.x) / scale < 1e-8);
        CHECK(std::abs(a.q2.y - g.q2.y) / scale < 1e-8);
    }
}

TEST_CASE("strong-force gradient matches finite differences") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const Configuration c = random_config(rng);
        const Configuration gw = grad_W(c);
        const Configuration fd = fd_gradient(&strong_force_W, c, 1e-6);
        const double scale = std::max(
            {1.0, std::abs(fd.q1.x), std::abs(fd.q1.y), std::abs(fd.q2.x), std::abs(fd.q2.y)});
        CHECK(std::abs(gw.q1.x - fd.q1.x) / scale < 1e-7);
        CHECK(std::abs(gw.q1.y - fd.q1.y) / scale < 1e-7);
        CHECK(std::abs(gw.q2.x - fd.q2.x) / scale < 1e-7);
        CHECK(std::abs(gw.q2.y - fd.q2.y) / scale < 1e-7);
    }
}

TEST_CASE("square symmetry of force magnitudes") {
    const Configuration a = acceleration({{1, 0}, {0, 1}});
    CHECK(norm(a.q1) == doctest::Approx(norm(a.q2)).epsilon(1e-13));
}

TEST_CASE("energy") {
    const PhasePoint rest{{1, 0}, {0, 1}, {0, 0}, {0, 0}};
    CHECK(energy(rest) == doctest::Approx(-(std::sqrt(2.0) + 1.0)).epsilon(1e-13));

    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        const Configuration c = random_config(rng);
        PhasePoint s{c.q1, c.q2,
                     Vec2{uniform(rng, -1, 1), uniform(rng, -1, 1)},
                     Vec2{uniform(rng, -1, 1), uniform(rng, -1, 1)}};
        const double e0 = energy(s);
        PhasePoint s2 = s;
        s2.p1 = s.p1 * std::sqrt(2.0);
        s2.p2 = s.p2 * std::sqrt(2.0);
        // Doubling the kinetic part shifts E by the original kinetic energy.
        CHECK(energy(s2) - e0 ==
              doctest::Approx(0.5 * (norm2(s.p1) + norm2(s.p2))).epsilon(1e-12));
    }
}

TEST_CASE("angular momentum") {
    CHECK(angular_momentum({{1, 0}, {0, 1}, {0, 0}, {0, 0}}) == 0.0);
    CHECK(angular_momentum({{1, 0}, {0, 0}, {0, 1}, {0, 0}}) == doctest::Approx(1.0));
}

TEST_CASE("collision errors name the vanished denominator") {
    CHECK_THROWS_WITH_AS(potential_U({{1, 0}, {1, 0}}),
                         doctest::Contains("|q1 - q2|"), CollisionError);
    CHECK_THROWS_WITH_AS(potential_U({{1, 0}, {-1, 0}}),
                         doctest::Contains("|q1 + q2|"), CollisionError);
    CHECK_THROWS_WITH_AS(potential_U({{0, 0}, {1, 0}}), doctest::Contains("|q1|"),
                         CollisionError);
    CHECK_THROWS_WITH_AS(potential_U({{1, 0}, {1e-13, 0}}), doctest::Contains("|q2|"),
                         CollisionError);
    CHECK_THROWS_AS(acceleration({{1, 0}, {1, 0}}), CollisionError);
    CHECK_THROWS_AS(energy({{0, 0}, {1, 0}, {0, 0}, {0, 0}}), CollisionError);
}

TEST_CASE("min separation includes the antipodal pair distances") {
    // Pairs through the origin are 2|q1| and 2|q2| apart.
    CHECK(min_separation({{1, 0}, {0, 1}}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(min_separation({{0.25, 0}, {0, 1}}) == doctest::Approx(0.5));
}
