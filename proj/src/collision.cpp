#include "choreo/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "choreo/ode.hpp"

namespace choreo {

namespace {

using std::numbers::pi;

bool is_circular_limit(double d) { return std::isinf(d); }

// State layout (x, y, vx, vy).
void scaling_rhs(double d, const double* y, double* dy) {
    const double r2 = y[0] * y[0] + y[1] * y[1];
    const double r = std::sqrt(r2);
    double c;  // acceleration = -c * y
    if (is_circular_limit(d)) {
        c = 2.0 / (r2 * r2);
    } else {
        c = 0.5 / (r2 * r) + d / (r2 * r2);
    }
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = -c * y[0];
    dy[3] = -c * y[1];
}

}  // namespace

ScalingTrajectory integrate_scaling(double d, int branch, double s_max, int n_samples,
                                    double rtol, double atol) {
    if (!(d >= 0)) throw std::invalid_argument("integrate_scaling: d must be >= 0");
    if (branch != 1 && branch != -1)
        throw std::invalid_argument("integrate_scaling: branch must be +1 or -1");
    if (!(s_max > 0) || n_samples < 2)
        throw std::invalid_argument("integrate_scaling: bad sampling request");

    const double speed = is_circular_limit(d) ? std::sqrt(2.0) : std::sqrt(1.0 + d);
    const std::vector<double> y0 = {0.0, 1.0, branch * speed, 0.0};
    std::vector<double> s_out(n_samples);
    for (int i = 0; i < n_samples; ++i) s_out[i] = s_max * (i + 1) / n_samples;

    OdeOptions opts;
    opts.rtol = rtol;
    opts.atol = atol;
    const OdeSolution sol =
        integrate([d](double, const double* y, double* dy) { scaling_rhs(d, y, dy); }, 0.0,
                  y0, s_out, opts);

    ScalingTrajectory traj;
    traj.d = d;
    traj.branch = branch;
    traj.samples.reserve(n_samples + 1);
    traj.samples.push_back({0.0, {0.0, 1.0}, {branch * speed, 0.0}, 1.0, pi / 2});
    double theta_prev = pi / 2;
    for (int i = 0; i < n_samples; ++i) {
        ScalingSample smp;
        smp.s = sol.t[i];
        smp.y = {sol.y[i][0], sol.y[i][1]};
        smp.v = {sol.y[i][2], sol.y[i][3]};
        smp.r = norm(smp.y);
        double th = std::atan2(smp.y.y, smp.y.x);
        // Unwrap against the previous sample (sampling is dense enough that
        // consecutive angles differ by less than pi).
        th += 2 * pi * std::round((theta_prev - th) / (2 * pi));
        smp.theta = th;
        theta_prev = th;
        traj.samples.push_back(smp);
    }
    return traj;
}

double scaling_energy(double d, const Vec2& y, const Vec2& v) {
    const double r = norm(y);
    if (is_circular_limit(d)) return 0.5 * norm2(v) - 1.0 / (r * r);
    return 0.5 * norm2(v) - 0.5 / r - 0.5 * d / (r * r);
}

double theta_asymptote(double d, int branch) {
    if (!(d >= 0) || std::isinf(d))
        throw std::invalid_argument("theta_asymptote: requires finite d >= 0");
    if (branch != 1 && branch != -1)
        throw std::invalid_argument("theta_asymptote: branch must be +1 or -1");
    return pi / 2 - branch * pi * std::sqrt(1.0 + d);
}

double extract_theta_asymptote(const ScalingTrajectory& traj) {
    // Least-squares intercept of theta against atan(1/sqrt(r-1)) over the tail.
    double sw = 0, sg = 0, sgg = 0, st = 0, sgt = 0;
    for (const ScalingSample& smp : traj.samples) {
        if (smp.r <= 2.0) continue;
        const double g = std::atan(1.0 / std::sqrt(smp.r - 1.0));
        sw += 1;
        sg += g;
        sgg += g * g;
        st += smp.theta;
        sgt += g * smp.theta;
    }
    const double det = sw * sgg - sg * sg;
    if (sw < 8 || std::abs(det) < 1e-12)
        throw std::invalid_argument("extract_theta_asymptote: trajectory does not escape");
    return (st * sgg - sg * sgt) / det;
}

Vec2 y_infinity(double s, int branch) {
    return {std::cos(std::sqrt(2.0) * s), branch * std::sin(std::sqrt(2.0) * s)};
}

// ---------------------------------------------------------------------------
// Levi-Civita
// ---------------------------------------------------------------------------

namespace {

constexpr Complex kI{0.0, 1.0};

void check_secondary(const Complex& q2, const Complex& zm, const Complex& zp, double tau) {
    if (std::abs(q2) < kCollisionThreshold) throw CollisionError("|q2|", std::abs(q2), tau);
    if (std::abs(zm) < kCollisionThreshold)
        throw CollisionError("|z^2 - 2iq2|", std::abs(zm), tau);
    if (std::abs(zp) < kCollisionThreshold)
        throw CollisionError("|z^2 + 2iq2|", std::abs(zp), tau);
}

LCState lc_rhs_at(const LCState& l, double tau) {
    const Complex z2 = l.z * l.z;
    const Complex zm = z2 - 2.0 * kI * l.q2;  // 2(q1 - q2) / (-i)
    const Complex zp = z2 + 2.0 * kI * l.q2;
    check_secondary(l.q2, zm, zp, tau);
    const double bm = std::abs(zm), bp = std::abs(zp);
    const double bm3 = bm * bm * bm, bp3 = bp * bp * bp;
    const double r2 = std::abs(l.q2);
    const double zz = std::norm(l.z);

    LCState d;
    d.z = l.w;
    d.q2 = zz * l.p2;
    d.w = l.z * (2.0 * l.E - std::norm(l.p2) + 4.0 / bm + 4.0 / bp + 1.0 / r2) -
          4.0 * zz * std::conj(l.z) * (zm / bm3 + zp / bp3);
    d.p2 = zz * (-l.q2 / (2.0 * r2 * r2 * r2) - 4.0 * kI * zm / bm3 + 4.0 * kI * zp / bp3);
    d.E = 0;
    return d;
}

}  // namespace

LCState lc_transform(const PhasePoint& p) {
    const Complex q1{p.q1.x, p.q1.y};
    const Complex q2{p.q2.x, p.q2.y};
    const Complex p1{p.p1.x, p.p1.y};
    const Complex p2{p.p2.x, p.p2.y};
    if (std::abs(q1) < kCollisionThreshold)
        throw std::invalid_argument("lc_transform: q1 = 0 (construct LCState directly)");
    Complex z = std::sqrt(2.0 * kI * q1);
    // sqrt returns Re >= 0; resolve the Re z = 0 boundary to Im z >= 0.
    if (z.real() == 0.0 && z.imag() < 0.0) z = -z;
    LCState l;
    l.z = z;
    l.w = kI * p1 * std::conj(z);
    l.q2 = q2;
    l.p2 = p2;
    l.E = energy(p);
    return l;
}

PhasePoint lc_inverse(const LCState& l) {
    const Complex q1 = -0.5 * kI * l.z * l.z;
    if (std::abs(l.z) < kCollisionThreshold)
        throw std::invalid_argument("lc_inverse: z = 0 (momentum p1 undefined)");
    const Complex p1 = -kI * l.w / std::conj(l.z);
    return {{q1.real(), q1.imag()},
            {l.q2.real(), l.q2.imag()},
            {p1.real(), p1.imag()},
            {l.p2.real(), l.p2.imag()}};
}

LCState lc_rhs(const LCState& l) { return lc_rhs_at(l, CollisionError::kNoTime); }

LCTrajectory integrate_through_collision(Complex q2_0, Complex p2_0, double tau_span,
                                         int n_samples, double rtol, double atol) {
    if (std::abs(q2_0) < kCollisionThreshold)
        throw std::invalid_argument("integrate_through_collision: q2 = 0");
    if (!(tau_span > 0) || n_samples < 3 || n_samples % 2 == 0)
        throw std::invalid_argument(
            "integrate_through_collision: need tau_span > 0 and an odd n_samples >= 3");

    const double E = 0.5 * std::norm(p2_0) - 2.5 / std::abs(q2_0);

    // State layout: (Re z, Im z, Re w, Im w, Re q2, Im q2, Re p2, Im p2, t).
    const auto rhs = [E](double tau, const double* y, double* dy) {
        LCState l;
        l.z = {y[0], y[1]};
        l.w = {y[2], y[3]};
        l.q2 = {y[4], y[5]};
        l.p2 = {y[6], y[7]};
        l.E = E;
        const LCState d = lc_rhs_at(l, tau);
        dy[0] = d.z.real();
        dy[1] = d.z.imag();
        dy[2] = d.w.real();
        dy[3] = d.w.imag();
        dy[4] = d.q2.real();
        dy[5] = d.q2.imag();
        dy[6] = d.p2.real();
        dy[7] = d.p2.imag();
        dy[8] = std::norm(l.z);  // dt/dtau
    };

    const std::vector<double> y0 = {0.0,         0.0,          std::sqrt(2.0),
                                    0.0,         q2_0.real(),  q2_0.imag(),
                                    p2_0.real(), p2_0.imag(),  0.0};

    OdeOptions opts;
    opts.rtol = rtol;
    opts.atol = atol;

    LCTrajectory traj;
    traj.samples.resize(n_samples);
    const auto fill = [&](int idx, double tau, const std::vector<double>& y) {
        LCSample& smp = traj.samples[idx];
        smp.tau = tau;
        smp.t = y[8];
        smp.state.z = {y[0], y[1]};
        smp.state.w = {y[2], y[3]};
        smp.state.q2 = {y[4], y[5]};
        smp.state.p2 = {y[6], y[7]};
        smp.state.E = E;
        smp.q1 = -0.5 * kI * smp.state.z * smp.state.z;
        smp.p1 = std::abs(smp.state.z) > 0
                     ? -kI * smp.state.w / std::conj(smp.state.z)
                     : Complex{std::numeric_limits<double>::quiet_NaN(),
                               std::numeric_limits<double>::quiet_NaN()};
    };

    const int mid = (n_samples - 1) / 2;
    std::vector<double> tau_fwd, tau_back;
    for (int i = 0; i < n_samples; ++i) {
        const double tau = -tau_span + 2.0 * tau_span * i / (n_samples - 1);
        if (tau > 0) tau_fwd.push_back(tau);
        if (tau < 0) tau_back.push_back(tau);
    }
    std::sort(tau_back.begin(), tau_back.end(), std::greater<double>());

    fill(mid, 0.0, y0);
    if (!tau_fwd.empty()) {
        const OdeSolution fwd = integrate(rhs, 0.0, y0, tau_fwd, opts);
        for (std::size_t i = 0; i < tau_fwd.size(); ++i)
            fill(mid + 1 + static_cast<int>(i), tau_fwd[i], fwd.y[i]);
    }
    if (!tau_back.empty()) {
        const OdeSolution back = integrate(rhs, 0.0, y0, tau_back, opts);
        for (std::size_t i = 0; i < tau_back.size(); ++i)
            fill(mid - 1 - static_cast<int>(i), tau_back[i], back.y[i]);
    }
    return traj;
}

int quadrant_diagnostic(Complex q2_0, Complex p2_0, double tau_probe) {
    if (std::abs(p2_0) < kCollisionThreshold)
        throw std::invalid_argument("quadrant_diagnostic: p2 = 0 gives no deflection");
    if (!(tau_probe > 0)) throw std::invalid_argument("quadrant_diagnostic: bad probe");
    const LCTrajectory traj = integrate_through_collision(q2_0, p2_0, tau_probe, 3);
    const double re_q1 = traj.samples.back().q1.real();
    if (std::abs(re_q1) < 1e-9)
        throw std::runtime_error("quadrant_diagnostic: deflection below the noise floor");
    return re_q1 > 0 ? 1 : -1;
}

}  // namespace choreo
