#include "choreo/minimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "choreo/bounds.hpp"
#include "choreo/symmetry.hpp"

namespace choreo {

namespace {

// Quarter-period value of the full-period discrete action (the fixed loops
// repeat their fundamental segment eight times, so this is exact).
double quarter(double full) { return full / 8.0; }

ActionValue quarter(ActionValue v) {
    v.total /= 8.0;
    v.kinetic /= 8.0;
    v.potential /= 8.0;
    v.strong_force /= 8.0;
    return v;
}

// Attempt cap per start slot.  Roughly 6% of draws carry the relative
// winding the sign-chamber minimizer needs, so the cap leaves the odds of
// a spurious slot failure below 1e-6.
constexpr std::uint64_t kMaxAttempts = 256;

bool in_sign_chamber(const std::array<double, 4>& s) {
    return s[0] > 0 && s[1] > 0 && s[2] > 0 && s[3] < 0;
}

}  // namespace

Schedule default_schedule() {
    Schedule s;
    for (int n = 0; n <= 16; ++n) s.eps_ladder.push_back(0.1 * std::ldexp(1.0, -n));
    s.eps_ladder.push_back(0.0);
    return s;
}

void validate(const Schedule& s) {
    if (s.eps_ladder.empty() || s.eps_ladder.back() != 0.0)
        throw std::invalid_argument("schedule: ladder must end at 0");
    for (std::size_t i = 1; i < s.eps_ladder.size(); ++i)
        if (!(s.eps_ladder[i] < s.eps_ladder[i - 1]))
            throw std::invalid_argument("schedule: ladder must be strictly decreasing");
    if (!(s.step > 0)) throw std::invalid_argument("schedule: step must be positive");
    if (s.max_iters < 0) throw std::invalid_argument("schedule: max_iters must be >= 0");
    if (!(s.grad_tol > 0)) throw std::invalid_argument("schedule: grad_tol must be positive");
    if (!(s.collision_floor >= 0))
        throw std::invalid_argument("schedule: collision_floor must be >= 0");
}

DescentOutcome descend(ActionWorkspace& ws, const FourierLoop& x0, double eps,
                       const Schedule& s, std::vector<LogRow>* log) {
    DescentOutcome out;
    FourierLoop x = equivariant_project(x0);

    double value = 0;
    try {
        value = ws.action(x, eps).total;
    } catch (const CollisionError&) {
        out.loop = std::move(x);
        out.collision = true;
        return out;
    }
    double min_sep = ws.last_min_separation();
    if (min_sep < s.collision_floor) {
        out.loop = std::move(x);
        out.action = quarter(value);
        out.min_separation = min_sep;
        out.collision = true;
        return out;
    }

    FourierLoop grad(x.k);
    double h = s.step;
    const double h_min = s.step * 0x1.0p-44;  // no progress at any step length
    // The monotone backtracking is the actual stability guard, so the step is
    // allowed to grow well past its initial value; the ceiling only prevents
    // runaway growth across flat stretches.
    const double h_max = 50.0 * s.step;

    for (int iter = 0;; ++iter) {
        ws.gradient(x, eps, grad);
        out.grad_norm = h1_norm(grad);
        if (log) log->push_back({iter, eps, quarter(value), out.grad_norm, min_sep});
        if (out.grad_norm < s.grad_tol) {
            out.hit_tol = true;
            break;
        }
        if (iter >= s.max_iters) break;

        // Sufficient-decrease (Armijo) backtracking: plain "not larger" lets
        // the step hover at the stability edge, where the iterate bounces
        // without the gradient ever settling.
        const double directional = out.grad_norm * out.grad_norm;
        bool accepted = false;
        while (h >= h_min) {
            FourierLoop trial = x;
            add_scaled(trial, -h, grad);
            trial = equivariant_project(trial);
            bool ok = true;
            double trial_value = 0;
            try {
                trial_value = ws.action(trial, eps).total;
            } catch (const CollisionError&) {
                ok = false;
            }
            if (ok && trial_value <= value - 0.25 * h * directional) {
                x = std::move(trial);
                value = trial_value;
                min_sep = ws.last_min_separation();
                h = std::min(1.25 * h, h_max);
                accepted = true;
                break;
            }
            h *= 0.5;
        }
        if (!accepted) break;
        out.iters = iter + 1;
        if (min_sep < s.collision_floor) {
            out.collision = true;
            break;
        }
    }

    out.loop = std::move(x);
    out.action = quarter(value);
    out.min_separation = min_sep;
    return out;
}

OrbitResult continuation(ActionWorkspace& ws, const FourierLoop& x0, const Schedule& s,
                         std::vector<LogRow>* log) {
    validate(s);
    OrbitResult res;
    FourierLoop x = x0;
    DescentOutcome out;
    for (const double eps : s.eps_ladder) {
        out = descend(ws, x, eps, s, log);
        x = out.loop;
        res.eps_history.emplace_back(eps, out.action);
        if (out.collision) break;
    }
    res.min_separation = out.min_separation;
    res.grad_norm = out.grad_norm;
    res.collision_restart = out.collision;
    res.converged = !out.collision && res.eps_history.size() == s.eps_ladder.size() &&
                    out.hit_tol && out.min_separation > s.collision_floor;
    if (!out.collision) {
        // eps = 0 breakdown of the final iterate (the last rung's functional
        // when the ladder completed).
        res.action = quarter(ws.action(x, 0.0));
    }
    const BoundaryResidual b = boundary_residual(x);
    res.omega_signs = {b.q1y_at_0, b.q2x_at_0, b.q1x_at_quarter, b.q1y_at_quarter};
    res.loop = std::move(x);
    return res;
}

int resolve_thread_count(int requested, int cap) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("CHOREO_THREADS")) {
            try {
                n = std::stoi(env);
            } catch (...) {
                n = 0;
            }
        }
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(n, 1, std::max(cap, 1));
}

const OrbitResult& MinimizeResult::best() const {
    for (const StartReport& r : starts)
        if (r.seed_index == best_index) return r.result;
    throw std::logic_error("MinimizeResult::best: no converged start");
}

MinimizeResult minimize(const MinimizeConfig& c) {
    if (c.k < 1 || c.seeds < 1 || c.quadrature % 8 != 0 || c.quadrature < 4 * c.k)
        throw std::invalid_argument("minimize: bad config");
    validate(c.schedule);

    MinimizeResult result;
    result.starts.resize(c.seeds);

    const auto run_start = [&](int i) {
        StartReport& rep = result.starts[static_cast<std::size_t>(i)];
        rep.seed_index = i;
        ActionWorkspace ws(c.k, c.quadrature);

        for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
            rep.seed = c.seed_base + 1000003ull * static_cast<std::uint64_t>(i) + attempt;
            rep.attempts = static_cast<int>(attempt) + 1;
            const FourierLoop x0 = random_init(rep.seed, c.k, c.amplitude);
            try {
                ws.action(x0, c.schedule.eps_ladder.front());
            } catch (const CollisionError&) {
                rep.status = StartStatus::kCollision;
                continue;
            }
            // Sign-chamber basins are entered through pinched inits (the
            // relative loops pass near zero), so the draw filter must not
            // demand more clearance than descent itself tolerates.
            if (ws.last_min_separation() < c.schedule.collision_floor) {
                rep.status = StartStatus::kCollision;
                continue;
            }
            if (c.keep_logs) rep.log.clear();
            try {
                rep.result =
                    continuation(ws, x0, c.schedule, c.keep_logs ? &rep.log : nullptr);
            } catch (const CollisionError&) {
                rep.status = StartStatus::kCollision;
                continue;
            }
            if (rep.result.collision_restart) {
                rep.status = StartStatus::kCollision;
                continue;
            }
            if (!rep.result.converged) {
                // Budget exhaustion is a hard failure: masking it behind a
                // redraw would hide an undersized schedule.
                rep.status = StartStatus::kBudget;
                return;
            }
            if (!in_sign_chamber(rep.result.omega_signs)) {
                rep.status = StartStatus::kSquareBasin;
                continue;
            }
            rep.status = StartStatus::kConverged;
            return;
        }
    };

    const int workers = resolve_thread_count(c.threads, c.seeds);
    if (workers == 1) {
        for (int i = 0; i < c.seeds; ++i) run_start(i);
    } else {
        std::atomic<int> next{0};
        const auto drain = [&] {
            for (int i; (i = next.fetch_add(1)) < c.seeds;) run_start(i);
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
        drain();
        for (std::thread& t : pool) t.join();
    }

    // Single reducer: lowest converged action wins; ties resolved by seed
    // order for determinism.
    for (const StartReport& r : result.starts) {
        if (r.status != StartStatus::kConverged) continue;
        if (!result.any_converged ||
            r.result.action.total <
                result.starts[static_cast<std::size_t>(result.best_index)].result.action.total) {
            result.any_converged = true;
            result.best_index = r.seed_index;
        }
    }
    if (result.any_converged) {
        const double best_action =
            result.starts[static_cast<std::size_t>(result.best_index)].result.action.total;
        for (const StartReport& r : result.starts)
            if (r.status == StartStatus::kConverged &&
                std::abs(r.result.action.total - best_action) <= c.basin_tol)
                ++result.basin_count;
    }
    return result;
}

}  // namespace choreo
