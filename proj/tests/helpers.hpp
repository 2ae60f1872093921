#pragma once

#include <cstdint>
#include <random>

#include "choreo/dynamics.hpp"
#include "choreo/fourier_loop.hpp"

namespace choreo::testing {

// Deterministic uniform in [lo, hi).
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

// Random configuration bounded away from all collision sets so that
// finite-difference probes stay well conditioned.
inline Configuration random_config(std::mt19937_64& rng, double min_sep = 0.3) {
    for (;;) {
        Configuration c{{uniform(rng, -2, 2), uniform(rng, -2, 2)},
                        {uniform(rng, -2, 2), uniform(rng, -2, 2)}};
        if (min_separation(c) > min_sep) return c;
    }
}

// Random loop with l^-2 coefficient decay (not symmetry-projected).
inline FourierLoop random_loop(std::mt19937_64& rng, int k, double amplitude = 1.0) {
    FourierLoop x(k);
    for (int l = 0; l <= k; ++l) {
        const double sc = amplitude / (l == 0 ? 1.0 : static_cast<double>(l) * l);
        for (int j = 0; j < 4; ++j) {
            if (l > 0) x.xi_at(l, j) = uniform(rng, -1, 1) * sc;
            x.eta_at(l, j) = uniform(rng, -1, 1) * sc;
        }
    }
    return x;
}

inline double max_coeff_diff(const FourierLoop& a, const FourierLoop& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.xi.size(); ++i) {
        m = std::max(m, std::abs(a.xi[i] - b.xi[i]));
        m = std::max(m, std::abs(a.eta[i] - b.eta[i]));
    }
    return m;
}

}  // namespace choreo::testing
