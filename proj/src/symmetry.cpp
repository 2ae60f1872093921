#include "choreo/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace choreo {

using std::numbers::pi;

namespace {

// Affine circle map t -> eps t + quarters * pi/2 encoded by an orthogonal
// matrix with entries in {0, +-1}.  A rotation matrix advances the circle
// point by phi with (cos phi, sin phi) = (a, c); a reflection maps t to
// phi - t with the same phi.
struct TimeMap {
    int eps;       // +-1
    int quarters;  // 0..3
};

int quarter_of(int a, int c) {
    if (a == 1 && c == 0) return 0;
    if (a == 0 && c == 1) return 1;
    if (a == -1 && c == 0) return 2;
    if (a == 0 && c == -1) return 3;
    throw std::invalid_argument("time matrix is not quarter-turn aligned");
}

TimeMap decode_time_map(const Mat2& tau) {
    const int a = static_cast<int>(std::lround(tau.a));
    const int b = static_cast<int>(std::lround(tau.b));
    const int c = static_cast<int>(std::lround(tau.c));
    const int d = static_cast<int>(std::lround(tau.d));
    if (std::abs(tau.a - a) + std::abs(tau.b - b) + std::abs(tau.c - c) + std::abs(tau.d - d) >
        1e-12)
        throw std::invalid_argument("time matrix entries must be 0 or +-1");
    const int det = a * d - b * c;
    if (det != 1 && det != -1) throw std::invalid_argument("time matrix must be orthogonal");
    return {det, quarter_of(a, c)};
}

// cos and sin of quarters * pi/2, exactly.
constexpr int kCosQ[4] = {1, 0, -1, 0};
constexpr int kSinQ[4] = {0, 1, 0, -1};

}  // namespace

GroupElement identity_element() { return {kIdentity2, kIdentity2, {0, 1, 2, 3}}; }

GroupElement generator_g1() {
    return {kIdentity2, -kIdentity2, {2, 3, 0, 1}};  // sigma = (1 3)(2 4)
}

GroupElement generator_g2() {
    // tau: t -> -t (reflection across the x-axis of the circle), rho = R_y.
    return {Mat2{1, 0, 0, -1}, kReflectY, {0, 3, 2, 1}};  // sigma = (2 4)
}

GroupElement generator_g3() {
    // tau: t -> t - pi/2 (clockwise quarter turn; see header note), rho = Id.
    return {Mat2{0, 1, -1, 0}, kIdentity2, {1, 2, 3, 0}};  // sigma = (1 2 3 4)
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    GroupElement out;
    out.tau = g.tau * h.tau;
    out.rho = g.rho * h.rho;
    for (int i = 0; i < 4; ++i) out.sigma[i] = g.sigma[h.sigma[i]];
    return out;
}

GroupElement inverse(const GroupElement& g) {
    GroupElement out;
    out.tau = g.tau.transpose();  // orthogonal, integer entries: exact inverse
    out.rho = g.rho.transpose();
    for (int i = 0; i < 4; ++i) out.sigma[g.sigma[i]] = i;
    return out;
}

SymmetryGroup build_group() {
    SymmetryGroup G;
    G.elements.push_back(identity_element());
    const GroupElement gens[3] = {generator_g1(), generator_g2(), generator_g3()};
    bool grew = true;
    while (grew) {
        grew = false;
        const size_t n = G.elements.size();
        for (size_t i = 0; i < n; ++i) {
            for (const GroupElement& g : gens) {
                const GroupElement cand = compose(G.elements[i], g);
                bool found = false;
                for (const GroupElement& e : G.elements)
                    if (e == cand) {
                        found = true;
                        break;
                    }
                if (!found) {
                    G.elements.push_back(cand);
                    grew = true;
                }
            }
        }
    }
    return G;
}

namespace {

SymmetryGroup cyclic_closure(const GroupElement& g) {
    SymmetryGroup G;
    GroupElement e = identity_element();
    do {
        G.elements.push_back(e);
        e = compose(e, g);
    } while (!(e == identity_element()));
    return G;
}

const SymmetryGroup& full_group() {
    static const SymmetryGroup G = build_group();
    return G;
}

}  // namespace

SymmetryGroup choreography_subgroup() { return cyclic_closure(generator_g3()); }
SymmetryGroup antipodal_subgroup() { return cyclic_closure(generator_g1()); }

FourierLoop act_on_loop(const GroupElement& g, const FourierLoop& x) {
    const GroupElement gi = inverse(g);
    const TimeMap tm = decode_time_map(gi.tau);
    FourierLoop out(x.k);
    for (int body = 0; body < 2; ++body) {
        const int src = gi.sigma[body];
        const int m = src % 2;  // reduced source body (bodies 3,4 mirror 1,2)
        const double sgn = (src < 2) ? 1.0 : -1.0;
        for (int l = 0; l <= x.k; ++l) {
            const int ph = (tm.quarters * l) % 4;
            const double C = kCosQ[ph], S = kSinQ[ph];
            const double E = tm.eps;
            const double xx = x.xi_at(l, 2 * m), ex = x.eta_at(l, 2 * m);
            const double xy = x.xi_at(l, 2 * m + 1), ey = x.eta_at(l, 2 * m + 1);
            // Reparametrized coefficients: f(eps t + c) maps
            //   xi -> eps (xi cos lc - eta sin lc),  eta -> xi sin lc + eta cos lc.
            const double txx = E * (xx * C - ex * S), tex = xx * S + ex * C;
            const double txy = E * (xy * C - ey * S), tey = xy * S + ey * C;
            out.xi_at(l, 2 * body) = sgn * (g.rho.a * txx + g.rho.b * txy);
            out.xi_at(l, 2 * body + 1) = sgn * (g.rho.c * txx + g.rho.d * txy);
            out.eta_at(l, 2 * body) = sgn * (g.rho.a * tex + g.rho.b * tey);
            out.eta_at(l, 2 * body + 1) = sgn * (g.rho.c * tex + g.rho.d * tey);
        }
    }
    for (int j = 0; j < 4; ++j) out.xi_at(0, j) = 0.0;
    return out;
}

FourierLoop project_group(const SymmetryGroup& G, const FourierLoop& x) {
    FourierLoop acc(x.k);
    for (const GroupElement& g : G.elements) add_scaled(acc, 1.0, act_on_loop(g, x));
    scale(acc, 1.0 / static_cast<double>(G.elements.size()));
    return acc;
}

FourierLoop equivariant_project(const FourierLoop& x) { return project_group(full_group(), x); }

BoundaryResidual boundary_residual(const FourierLoop& x) {
    const Configuration c0 = evaluate(x, 0.0);
    const Configuration cq = evaluate(x, pi / 4.0);
    BoundaryResidual r;
    r.rhomboidal_q1 = std::abs(c0.q1.x);
    r.rhomboidal_q2 = std::abs(c0.q2.y);
    r.rectangular = norm(cq.q2 - kReflectX * cq.q1);
    r.q1y_at_0 = c0.q1.y;
    r.q2x_at_0 = c0.q2.x;
    r.q1x_at_quarter = cq.q1.x;
    r.q1y_at_quarter = cq.q1.y;
    return r;
}

bool omega_signs_strict(const BoundaryResidual& r) {
    return r.q1y_at_0 > 0.0 && r.q2x_at_0 > 0.0 && r.q1x_at_quarter > 0.0 &&
           r.q1y_at_quarter < 0.0;
}

FourierLoop segment_to_loop(const Segment& s, double tol) {
    if (s.samples.size() < 2) throw std::invalid_argument("segment needs at least 2 samples");
    const int n = static_cast<int>(s.samples.size()) - 1;
    const Configuration& first = s.samples.front();
    const Configuration& last = s.samples.back();
    if (std::abs(first.q1.x) > tol) {
        std::ostringstream os;
        os << "rhomboidal condition violated: P_x q1(0) = " << first.q1.x;
        throw std::invalid_argument(os.str());
    }
    if (std::abs(first.q2.y) > tol) {
        std::ostringstream os;
        os << "rhomboidal condition violated: P_y q2(0) = " << first.q2.y;
        throw std::invalid_argument(os.str());
    }
    const double rect = norm(last.q2 - kReflectX * last.q1);
    if (rect > tol) {
        std::ostringstream os;
        os << "rectangular condition violated: |q2(pi/4) - R_x q1(pi/4)| = " << rect;
        throw std::invalid_argument(os.str());
    }

    // Unfold [0, pi/4] to the full period through the fixed-loop relations:
    //   q1(pi/2 - s) = R_x q2(s),   q2(pi/2 - s) = R_x q1(s),
    //   q1(pi/2 + s) = q2(s),       q2(pi/2 + s) = -q1(s),
    //   q1(pi  - s) = R_x q1(s),    q2(pi  - s) = R_y q2(s),
    //   q(t + pi)   = -q(t).
    const int m = 8 * n;
    std::vector<Configuration> full(m);
    for (int j = 0; j <= n; ++j) full[j] = s.samples[j];
    for (int j = n + 1; j <= 2 * n; ++j) {
        const Configuration& a = s.samples[2 * n - j];
        full[j] = {kReflectX * a.q2, kReflectX * a.q1};
    }
    for (int j = 2 * n + 1; j <= 3 * n; ++j) {
        const Configuration& a = s.samples[j - 2 * n];
        full[j] = {a.q2, -a.q1};
    }
    for (int j = 3 * n + 1; j < 4 * n; ++j) {
        const Configuration& a = s.samples[4 * n - j];
        full[j] = {kReflectX * a.q1, kReflectY * a.q2};
    }
    for (int j = 4 * n; j < 8 * n; ++j) full[j] = {-full[j - 4 * n].q1, -full[j - 4 * n].q2};

    // Trigonometric interpolation on the m uniform samples; k = m/2 with the
    // half-weighted Nyquist cosine mode.
    const int k = 4 * n;
    FourierLoop x(k);
    const SinCosTable table(k, m);
    for (int j = 0; j < 4; ++j) {
        std::vector<double> f(m);
        for (int i = 0; i < m; ++i) {
            const Configuration& c = full[i];
            f[i] = (j == 0) ? c.q1.x : (j == 1) ? c.q1.y : (j == 2) ? c.q2.x : c.q2.y;
        }
        double mean = 0.0;
        for (int i = 0; i < m; ++i) mean += f[i];
        x.eta_at(0, j) = basis_norm(0) * mean / m;
        for (int l = 1; l <= k; ++l) {
            const double* srow = table.sin_row(l);
            const double* crow = table.cos_row(l);
            double as = 0.0, ac = 0.0;
            for (int i = 0; i < m; ++i) {
                as += f[i] * srow[i];
                ac += f[i] * crow[i];
            }
            const double w = (l == k) ? 1.0 : 2.0;  // Nyquist half weight
            x.xi_at(l, j) = basis_norm(l) * w * as / m;
            x.eta_at(l, j) = basis_norm(l) * w * ac / m;
        }
    }
    // Clean residual asymmetry from boundary tolerance slop.
    return equivariant_project(x);
}

Segment loop_to_segment(const FourierLoop& x, int n) {
    if (n < 1) throw std::invalid_argument("loop_to_segment: n must be >= 1");
    Segment s;
    s.samples.resize(n + 1);
    for (int i = 0; i <= n; ++i) s.samples[i] = evaluate(x, (pi / 4.0) * i / n);
    return s;
}

double rotating_square_radius() { return std::cbrt(0.5 * (1.0 + std::sqrt(2.0))); }

FourierLoop rotating_square_loop(int k) {
    if (k < 1) throw std::invalid_argument("rotating_square_loop: k must be >= 1");
    const double R = rotating_square_radius();
    const double n1 = basis_norm(1);
    FourierLoop x(k);
    x.xi_at(1, kQ1x) = R * n1;   // q1x = R sin t
    x.eta_at(1, kQ1y) = R * n1;  // q1y = R cos t
    x.eta_at(1, kQ2x) = R * n1;  // q2x = R cos t
    x.xi_at(1, kQ2y) = -R * n1;  // q2y = -R sin t
    return x;
}

FourierLoop random_init(std::uint64_t seed, int k, double amplitude) {
    std::mt19937_64 rng(seed);
    // Fixed uniform mapping (not std::uniform_real_distribution, whose output
    // is implementation-defined): 53 random bits -> [0,1) -> [-1,1).
    auto uniform = [&rng]() {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return 2.0 * u - 1.0;
    };
    FourierLoop x(k);
    for (int l = 0; l <= k; ++l) {
        const double sc = amplitude / (l == 0 ? 1.0 : static_cast<double>(l) * l);
        for (int j = 0; j < 4; ++j) {
            if (l > 0) x.xi_at(l, j) = uniform() * sc;
            x.eta_at(l, j) = uniform() * sc;
        }
    }
    x = equivariant_project(x);

    // Orientation moves (exact automorphisms of the fixed subspace) aiming at
    // the sign chamber (+, +, +, -) of (P_y q1(0), P_x q2(0), P_x q1(pi/4),
    // P_y q1(pi/4)).  The first two signs are always fixable; the quarter-time
    // pair is fixable when its parity allows (the all-positive, square-like
    // pattern has no admissible move and is left for the minimizer to sort
    // out).
    auto negate_all = [](FourierLoop& y) { scale(y, -1.0); };
    auto flip_x = [](FourierLoop& y) {  // spatial R_y on both bodies
        for (int l = 0; l <= y.k; ++l)
            for (int j : {kQ1x, kQ2x}) {
                y.xi_at(l, j) = -y.xi_at(l, j);
                y.eta_at(l, j) = -y.eta_at(l, j);
            }
    };
    auto flip_y = [](FourierLoop& y) {  // spatial R_x on both bodies
        for (int l = 0; l <= y.k; ++l)
            for (int j : {kQ1y, kQ2y}) {
                y.xi_at(l, j) = -y.xi_at(l, j);
                y.eta_at(l, j) = -y.eta_at(l, j);
            }
    };
    auto quarter_swap = [](FourierLoop& y) {
        // (q1, q2)(t) -> (Rot(pi/2) q2(t), -Rot(pi/2) q1(t)): swaps the two
        // boundary sign pairs.
        FourierLoop z(y.k);
        for (int l = 0; l <= y.k; ++l) {
            z.xi_at(l, kQ1x) = -y.xi_at(l, kQ2y);
            z.eta_at(l, kQ1x) = -y.eta_at(l, kQ2y);
            z.xi_at(l, kQ1y) = y.xi_at(l, kQ2x);
            z.eta_at(l, kQ1y) = y.eta_at(l, kQ2x);
            z.xi_at(l, kQ2x) = y.xi_at(l, kQ1y);
            z.eta_at(l, kQ2x) = y.eta_at(l, kQ1y);
            z.xi_at(l, kQ2y) = -y.xi_at(l, kQ1x);
            z.eta_at(l, kQ2y) = -y.eta_at(l, kQ1x);
        }
        y = z;
    };

    BoundaryResidual r = boundary_residual(x);
    if (r.q1y_at_0 < 0.0 && r.q2x_at_0 < 0.0)
        negate_all(x);
    else if (r.q1y_at_0 < 0.0)
        flip_y(x);
    else if (r.q2x_at_0 < 0.0)
        flip_x(x);
    r = boundary_residual(x);
    if (r.q1x_at_quarter < 0.0 && r.q1y_at_quarter > 0.0) quarter_swap(x);
    return x;
}

}  // namespace choreo
