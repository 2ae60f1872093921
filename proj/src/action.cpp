#include "choreo/action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace choreo {

using std::numbers::pi;

ActionWorkspace::ActionWorkspace(int k, int m) : table_(k, m) {
    if (m % 8 != 0)
        throw std::invalid_argument("quadrature grid must be divisible by 8 (group-invariant)");
    if (m < 4 * k)
        throw std::invalid_argument("quadrature grid too coarse for the truncation order");
}

void ActionWorkspace::synthesize(const FourierLoop& x, double eps, bool with_force) {
    sample_loop(x, table_, grid_);
    const int m = grid_.m;
    if (with_force)
        for (int j = 0; j < 4; ++j) force_[j].assign(m, 0.0);
    last_min_sep_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const Configuration c{{grid_.q[kQ1x][i], grid_.q[kQ1y][i]},
                              {grid_.q[kQ2x][i], grid_.q[kQ2y][i]}};
        last_min_sep_ = std::min(last_min_sep_, min_separation(c));
        if (with_force) {
            try {
                Configuration f = grad_U(c);
                if (eps != 0.0) {
                    const Configuration fw = grad_W(c);
                    f.q1 += fw.q1 * eps;
                    f.q2 += fw.q2 * eps;
                }
                force_[kQ1x][i] = f.q1.x;
                force_[kQ1y][i] = f.q1.y;
                force_[kQ2x][i] = f.q2.x;
                force_[kQ2y][i] = f.q2.y;
            } catch (const CollisionError& e) {
                throw CollisionError(e.denominator(), e.value(), 2 * pi * i / m);
            }
        }
    }
}

ActionValue ActionWorkspace::action(const FourierLoop& x, double eps) {
    synthesize(x, eps, /*with_force=*/false);
    const int m = grid_.m;
    double kin = 0, pot = 0, strong = 0;
    for (int i = 0; i < m; ++i) {
        const Configuration c{{grid_.q[kQ1x][i], grid_.q[kQ1y][i]},
                              {grid_.q[kQ2x][i], grid_.q[kQ2y][i]}};
        kin += 0.5 * (grid_.v[kQ1x][i] * grid_.v[kQ1x][i] + grid_.v[kQ1y][i] * grid_.v[kQ1y][i] +
                      grid_.v[kQ2x][i] * grid_.v[kQ2x][i] + grid_.v[kQ2y][i] * grid_.v[kQ2y][i]);
        try {
            pot += potential_U(c);
            if (eps != 0.0) strong += strong_force_W(c);
        } catch (const CollisionError& e) {
            throw CollisionError(e.denominator(), e.value(), 2 * pi * i / m);
        }
    }
    const double w = 2 * pi / m;
    ActionValue v;
    v.kinetic = kin * w;
    v.potential = pot * w;
    v.strong_force = eps * strong * w;
    v.total = v.kinetic + v.potential + v.strong_force;
    v.eps = eps;
    return v;
}

void ActionWorkspace::gradient(const FourierLoop& x, double eps, FourierLoop& out) {
    synthesize(x, eps, /*with_force=*/true);
    const int m = grid_.m;
    const double w = 2 * pi / m;
    if (out.k != x.k) out = FourierLoop(x.k);
    for (int j = 0; j < 4; ++j) {
        const double* v = grid_.v[j].data();
        const double* f = force_[j].data();
        // Constant mode: d/d eta_0 = int F_j / sqrt(2 pi).
        {
            double acc = 0;
            for (int i = 0; i < m; ++i) acc += f[i];
            out.eta_at(0, j) = acc * w / basis_norm(0);
            out.xi_at(0, j) = 0.0;
        }
        for (int l = 1; l <= x.k; ++l) {
            const double* srow = table_.sin_row(l);
            const double* crow = table_.cos_row(l);
            const double dl = static_cast<double>(l);
            double axi = 0, aeta = 0;
            for (int i = 0; i < m; ++i) {
                axi += v[i] * dl * crow[i] + f[i] * srow[i];
                aeta += -v[i] * dl * srow[i] + f[i] * crow[i];
            }
            const double inv_n = 1.0 / basis_norm(l);
            out.xi_at(l, j) = axi * w * inv_n;
            out.eta_at(l, j) = aeta * w * inv_n;
        }
    }
}

ActionValue action_loop(const FourierLoop& x, double eps, int m) {
    ActionWorkspace ws(x.k, m);
    return ws.action(x, eps);
}

ActionValue action_segment(const FourierLoop& x, double eps, int n) {
    if (n % 2 != 0) throw std::invalid_argument("action_segment: n must be even");
    std::vector<double> kin(n + 1), pot(n + 1), strong(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = (pi / 4) * i / n;
        const Configuration q = evaluate(x, t);
        const Configuration v = evaluate_velocity(x, t);
        kin[i] = 0.5 * (norm2(v.q1) + norm2(v.q2));
        try {
            pot[i] = potential_U(q);
            strong[i] = (eps != 0.0) ? strong_force_W(q) : 0.0;
        } catch (const CollisionError& e) {
            throw CollisionError(e.denominator(), e.value(), t);
        }
    }
    ActionValue v;
    v.kinetic = quadrature_simpson(kin, 0, pi / 4);
    v.potential = quadrature_simpson(pot, 0, pi / 4);
    v.strong_force = eps * quadrature_simpson(strong, 0, pi / 4);
    v.total = v.kinetic + v.potential + v.strong_force;
    v.eps = eps;
    return v;
}

FourierLoop gradient(const FourierLoop& x, double eps, int m) {
    ActionWorkspace ws(x.k, m);
    FourierLoop out(x.k);
    ws.gradient(x, eps, out);
    return out;
}

}  // namespace choreo
