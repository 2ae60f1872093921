#include "choreo/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "choreo/symmetry.hpp"

namespace choreo {

using std::numbers::pi;

double kepler_min_action(double alpha, double T0) {
    if (alpha <= 0 || T0 <= 0)
        throw std::invalid_argument("kepler_min_action: alpha and T0 must be positive");
    return 1.5 * std::pow(pi, 2.0 / 3.0) * std::pow(alpha, 2.0 / 3.0) * std::cbrt(T0);
}

double total_collision_lower_bound() {
    return 3.0 * std::pow(2.0, -4.0 / 3.0) * std::pow(1.0 + 2.0 * std::sqrt(2.0), 2.0 / 3.0) * pi;
}

namespace {

// U on the shape sphere in the reduced angle chart: by rotation invariance
// only the opening angle between s1 and s2 matters, so fix s1 on the x-axis.
double sphere_potential(double phi, double psi) {
    const double r1 = std::cos(phi), r2 = std::sin(phi);
    const Configuration c{{r1, 0.0}, {r2 * std::cos(psi), r2 * std::sin(psi)}};
    return potential_U(c);
}

}  // namespace

ShapeMinimum shape_potential_min(int resolution) {
    if (resolution < 16) throw std::invalid_argument("shape_potential_min: resolution < 16");
    double best = std::numeric_limits<double>::infinity();
    double best_phi = 0, best_psi = 0;
    auto scan = [&](double phi0, double phi1, double psi0, double psi1, int n) {
        for (int i = 0; i <= n; ++i) {
            const double phi = phi0 + (phi1 - phi0) * i / n;
            if (phi <= 0 || phi >= pi / 2) continue;  // degenerate shapes
            for (int j = 0; j <= n; ++j) {
                const double psi = psi0 + (psi1 - psi0) * j / n;
                double u;
                try {
                    u = sphere_potential(phi, psi);
                } catch (const CollisionError&) {
                    continue;
                }
                if (u < best) {
                    best = u;
                    best_phi = phi;
                    best_psi = psi;
                }
            }
        }
    };
    scan(0.0, pi / 2, 0.0, 2 * pi, resolution);
    double dphi = (pi / 2) / resolution, dpsi = (2 * pi) / resolution;
    for (int level = 0; level < 6; ++level) {
        scan(best_phi - 2 * dphi, best_phi + 2 * dphi, best_psi - 2 * dpsi, best_psi + 2 * dpsi,
             32);
        dphi *= 4.0 / 32.0;
        dpsi *= 4.0 / 32.0;
    }
    ShapeMinimum m;
    m.value = best;
    const double r1 = std::cos(best_phi), r2 = std::sin(best_phi);
    m.shape = {{r1, 0.0}, {r2 * std::cos(best_psi), r2 * std::sin(best_psi)}};
    return m;
}

Configuration test_path(double t) {
    if (t < -1e-12 || t > pi / 4 + 1e-12)
        throw std::invalid_argument("test_path: t outside [0, pi/4]");
    return {{t, pi / 4 - 2 * t}, {pi / 2 - t, t}};
}

Configuration test_path_velocity(double t) {
    if (t < -1e-12 || t > pi / 4 + 1e-12)
        throw std::invalid_argument("test_path: t outside [0, pi/4]");
    return {{1.0, -2.0}, {-1.0, 1.0}};
}

ActionValue test_path_action(int n) {
    if (n % 2 != 0) throw std::invalid_argument("test_path_action: n must be even");
    std::vector<double> kin(n + 1), pot(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = (pi / 4) * i / n;
        const Configuration v = test_path_velocity(t);
        kin[i] = 0.5 * (norm2(v.q1) + norm2(v.q2));
        pot[i] = potential_U(test_path(t));
    }
    ActionValue a;
    a.kinetic = quadrature_simpson(kin, 0, pi / 4);
    a.potential = quadrature_simpson(pot, 0, pi / 4);
    a.strong_force = 0;
    a.total = a.kinetic + a.potential;
    a.eps = 0;
    return a;
}

double test_path_action_closed_form() {
    const double s5 = std::sqrt(5.0), s13 = std::sqrt(13.0), s2 = std::sqrt(2.0);
    return 7 * pi / 8 + (std::asinh(3.0) + std::asinh(2.0)) / (2 * s5) +
           std::asinh(1.0) / (2 * s2) + (std::asinh(1.5) + std::asinh(1.75)) / s13 +
           std::asinh(0.5);
}

FourierLoop test_path_loop(int k) {
    if (k < 4 || k % 4 != 0) throw std::invalid_argument("test_path_loop: k must be a multiple of 4");
    const int n = k / 4;
    Segment s;
    s.samples.resize(n + 1);
    for (int i = 0; i <= n; ++i) s.samples[i] = test_path((pi / 4) * i / n);
    return segment_to_loop(s);
}

std::vector<BoundReport> bound_reports(int shape_resolution) {
    std::vector<BoundReport> out;
    auto push = [&out](const std::string& name, double formula, double oracle,
                       const std::string& note) {
        out.push_back({name, formula, oracle, std::abs(formula - oracle), note});
    };

    push("total_collision_bound", total_collision_lower_bound(),
         kepler_min_action(4.0 + std::sqrt(2.0), pi / 4),
         "3*2^{-4/3}(1+2sqrt2)^{2/3}pi vs the Kepler form at alpha=4+sqrt2, T0=pi/4");
    push("kepler_example", 1.5 * pi, kepler_min_action(1.0, pi),
         "alpha=1, T0=pi collapses to 3pi/2");

    const ShapeMinimum sm = shape_potential_min(shape_resolution);
    push("shape_sphere_min_reduced", 2.0 + std::sqrt(2.0), sm.value,
         "square-shape value of the reduced U on the unit sphere vs grid search");
    push("shape_sphere_min_quoted", 4.0 + std::sqrt(2.0), sm.value,
         "often-quoted constant; uses the unreduced pair-sum potential "
         "normalization, hence the offset against the reduced-U oracle");

    push("test_path_action", test_path_action_closed_form(), test_path_action().total,
         "closed form vs Simpson quadrature; < 5, and 4.449729 under "
         "quarter-weight self-interaction terms");
    return out;
}

}  // namespace choreo
