#include "choreo/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "choreo/dop853_tableau.hpp"

namespace choreo {

namespace {

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;
// The controller reacts to the (order 7) embedded error estimate.
constexpr double kErrorExponent = -1.0 / 8.0;

double rms_over_scale(const std::vector<double>& v, const std::vector<double>& scale) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = v[i] / scale[i];
        s += r * r;
    }
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

OdeSolution integrate(const OdeRhs& f, double t0, const std::vector<double>& y0,
                      const std::vector<double>& t_out, const OdeOptions& opts) {
    using namespace dop853;

    if (t_out.empty()) throw std::invalid_argument("integrate: no output times requested");
    if (y0.empty()) throw std::invalid_argument("integrate: empty state");

    OdeSolution sol;
    const double dir = (t_out.back() > t0) ? 1.0 : (t_out.back() < t0 ? -1.0 : 0.0);
    if (dir == 0.0) {
        if (t_out.size() != 1)
            throw std::invalid_argument("integrate: output times must be strictly monotone");
        sol.t = t_out;
        sol.y.push_back(y0);
        return sol;
    }
    if (dir * (t_out.front() - t0) < 0)
        throw std::invalid_argument("integrate: output times must move away from t0");
    for (std::size_t i = 1; i < t_out.size(); ++i)
        if (dir * (t_out[i] - t_out[i - 1]) <= 0)
            throw std::invalid_argument("integrate: output times must be strictly monotone");

    const std::size_t n = y0.size();
    const double max_step =
        opts.max_step > 0 ? opts.max_step : std::numeric_limits<double>::infinity();

    std::vector<double> y = y0;
    std::vector<double> k[kStagesExtended];
    for (auto& stage : k) stage.resize(n);
    std::vector<double> y_stage(n), y_new(n), err(n), scale(n);

    double t = t0;
    f(t, y.data(), k[0].data());
    ++sol.n_rhs;

    // Initial step size: a cheap two-sample curvature probe, unless the caller
    // pinned one explicitly.
    double h_abs;
    if (opts.h0 > 0) {
        h_abs = opts.h0;
    } else {
        for (std::size_t i = 0; i < n; ++i) scale[i] = opts.atol + opts.rtol * std::abs(y[i]);
        const double d0 = rms_over_scale(y, scale);
        const double d1 = rms_over_scale(k[0], scale);
        double h_probe = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        for (std::size_t i = 0; i < n; ++i) y_stage[i] = y[i] + h_probe * dir * k[0][i];
        f(t + h_probe * dir, y_stage.data(), k[1].data());
        ++sol.n_rhs;
        for (std::size_t i = 0; i < n; ++i) err[i] = k[1][i] - k[0][i];
        const double d2 = rms_over_scale(err, scale) / h_probe;
        double h1 = (d1 <= 1e-15 && d2 <= 1e-15)
                        ? std::max(1e-6, h_probe * 1e-3)
                        : std::pow(0.01 / std::max(d1, d2), 1.0 / 8.0);
        h_abs = std::min({100 * h_probe, h1, std::abs(t_out.back() - t0)});
    }
    h_abs = std::min(h_abs, max_step);

    long attempts = 0;
    bool rejected = false;
    for (double target : t_out) {
        while (dir * (target - t) > 0) {
            if (++attempts > opts.max_steps)
                throw std::runtime_error("integrate: exceeded the maximum number of steps");
            const double min_step =
                10 * std::abs(std::nextafter(t, dir * std::numeric_limits<double>::infinity()) - t);
            if (h_abs < min_step)
                throw std::runtime_error("integrate: step size underflow");

            double t_new = t + dir * h_abs;
            if (dir * (t_new - target) > 0) t_new = target;
            const double h = t_new - t;
            const double h_used = std::abs(h);

            for (int s = 1; s < kStages; ++s) {
                for (std::size_t i = 0; i < n; ++i) {
                    double acc = 0;
                    for (int j = 0; j < s; ++j) acc += kA[s][j] * k[j][i];
                    y_stage[i] = y[i] + h * acc;
                }
                f(t + kC[s] * h, y_stage.data(), k[s].data());
            }
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0;
                for (int j = 0; j < kStages; ++j) acc += kB[j] * k[j][i];
                y_new[i] = y[i] + h * acc;
            }
            f(t_new, y_new.data(), k[kStages].data());
            sol.n_rhs += kStages;

            double e5_sq = 0, e3_sq = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                double e5 = 0, e3 = 0;
                for (int j = 0; j < kStagesExtended; ++j) {
                    e5 += kE5[j] * k[j][i];
                    e3 += kE3[j] * k[j][i];
                }
                e5 /= sc;
                e3 /= sc;
                e5_sq += e5 * e5;
                e3_sq += e3 * e3;
            }
            const double denom = e5_sq + 0.01 * e3_sq;
            const double err_norm =
                denom > 0 ? h_used * e5_sq / std::sqrt(denom * static_cast<double>(n)) : 0.0;

            if (err_norm < 1) {
                double factor = err_norm == 0
                                    ? kMaxFactor
                                    : std::min(kMaxFactor, kSafety * std::pow(err_norm, kErrorExponent));
                if (rejected) factor = std::min(1.0, factor);
                h_abs = std::min(h_used * factor, max_step);
                rejected = false;
                t = t_new;
                std::swap(y, y_new);
                std::swap(k[0], k[kStages]);
                ++sol.n_steps;
            } else {
                h_abs = h_used * std::max(kMinFactor, kSafety * std::pow(err_norm, kErrorExponent));
                rejected = true;
            }
        }
        sol.t.push_back(target);
        sol.y.push_back(y);
    }
    return sol;
}

}  // namespace choreo
