#include "choreo/fourier_loop.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace choreo {

using std::numbers::pi;

double basis_norm(int l) {
    if (l == 0) return std::sqrt(2.0 * pi);
    return std::sqrt(pi * (1.0 + static_cast<double>(l) * l));
}

Configuration evaluate(const FourierLoop& x, double t) {
    double comp[4] = {0, 0, 0, 0};
    for (int l = 0; l <= x.k; ++l) {
        const double s = std::sin(l * t), c = std::cos(l * t);
        const double inv_n = 1.0 / basis_norm(l);
        for (int j = 0; j < 4; ++j)
            comp[j] += (x.xi_at(l, j) * s + x.eta_at(l, j) * c) * inv_n;
    }
    return {{comp[0], comp[1]}, {comp[2], comp[3]}};
}

Configuration evaluate_velocity(const FourierLoop& x, double t) {
    double comp[4] = {0, 0, 0, 0};
    for (int l = 1; l <= x.k; ++l) {
        const double s = std::sin(l * t), c = std::cos(l * t);
        const double f = l / basis_norm(l);
        for (int j = 0; j < 4; ++j)
            comp[j] += (x.xi_at(l, j) * c - x.eta_at(l, j) * s) * f;
    }
    return {{comp[0], comp[1]}, {comp[2], comp[3]}};
}

PhasePoint phase_point(const FourierLoop& x, double t) {
    const Configuration q = evaluate(x, t);
    const Configuration v = evaluate_velocity(x, t);
    return {q.q1, q.q2, v.q1, v.q2};
}

double h1_norm(const FourierLoop& x) { return std::sqrt(h1_dot(x, x)); }

double h1_dot(const FourierLoop& a, const FourierLoop& b) {
    assert(a.k == b.k);
    double acc = 0.0;
    for (size_t i = 0; i < a.xi.size(); ++i) acc += a.xi[i] * b.xi[i] + a.eta[i] * b.eta[i];
    return acc;
}

void add_scaled(FourierLoop& y, double s, const FourierLoop& x) {
    assert(y.k == x.k);
    for (size_t i = 0; i < y.xi.size(); ++i) {
        y.xi[i] += s * x.xi[i];
        y.eta[i] += s * x.eta[i];
    }
}

void scale(FourierLoop& x, double s) {
    for (size_t i = 0; i < x.xi.size(); ++i) {
        x.xi[i] *= s;
        x.eta[i] *= s;
    }
}

SinCosTable::SinCosTable(int k, int m) : k_(k), m_(m) {
    sin_.resize(static_cast<size_t>(k + 1) * m);
    cos_.resize(static_cast<size_t>(k + 1) * m);
    for (int l = 0; l <= k; ++l) {
        double* srow = &sin_[static_cast<size_t>(l) * m];
        double* crow = &cos_[static_cast<size_t>(l) * m];
        for (int i = 0; i < m; ++i) {
            const double t = 2.0 * pi * i / m;
            srow[i] = std::sin(l * t);
            crow[i] = std::cos(l * t);
        }
    }
}

void sample_loop(const FourierLoop& x, const SinCosTable& table, LoopGrid& grid) {
    if (table.k() < x.k) throw std::invalid_argument("sample_loop: table truncation too small");
    const int m = table.m();
    grid.m = m;
    for (int j = 0; j < 4; ++j) {
        grid.q[j].assign(m, 0.0);
        grid.v[j].assign(m, 0.0);
    }
    for (int j = 0; j < 4; ++j) {
        double* q = grid.q[j].data();
        double* v = grid.v[j].data();
        // Constant mode.
        const double c0 = x.eta_at(0, j) / basis_norm(0);
        for (int i = 0; i < m; ++i) q[i] = c0;
        for (int l = 1; l <= x.k; ++l) {
            const double inv_n = 1.0 / basis_norm(l);
            const double cxi = x.xi_at(l, j) * inv_n;
            const double ceta = x.eta_at(l, j) * inv_n;
            if (cxi == 0.0 && ceta == 0.0) continue;
            const double* srow = table.sin_row(l);
            const double* crow = table.cos_row(l);
            const double dl = static_cast<double>(l);
            for (int i = 0; i < m; ++i) {
                q[i] += cxi * srow[i] + ceta * crow[i];
                v[i] += dl * (cxi * crow[i] - ceta * srow[i]);
            }
        }
    }
}

double quadrature_periodic(const std::vector<double>& f) {
    if (f.size() < 2) throw std::invalid_argument("quadrature_periodic: need >= 2 samples");
    double acc = 0.0;
    for (double v : f) acc += v;
    return acc * (2.0 * pi / static_cast<double>(f.size()));
}

double quadrature_simpson(const std::vector<double>& f, double a, double b) {
    const size_t n = f.size() - 1;
    if (f.size() < 3 || n % 2 != 0)
        throw std::invalid_argument("quadrature_simpson: need an even number of intervals");
    const double h = (b - a) / static_cast<double>(n);
    double acc = f[0] + f[n];
    for (size_t i = 1; i < n; i += 2) acc += 4.0 * f[i];
    for (size_t i = 2; i < n; i += 2) acc += 2.0 * f[i];
    return acc * h / 3.0;
}

}  // namespace choreo
