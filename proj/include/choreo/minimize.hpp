#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "choreo/action.hpp"
#include "choreo/fourier_loop.hpp"

namespace choreo {

// Continuation schedule: a strictly decreasing regularization ladder ending
// at exactly 0, plus the per-rung descent controls.
struct Schedule {
    std::vector<double> eps_ladder;
    double step = 0.05;            // initial step, H^1 units
    int max_iters = 4000;          // per rung
    // Stopping gradient norm.  The sufficient-decrease test needs
    // 0.25*h*grad^2 to exceed one ulp of the action (~3e-15 at action ~30),
    // which floors the reachable gradient norm near 2e-7; 1e-6 keeps a
    // margin while the coefficient error it leaves (~grad/mu) stays far
    // below the Fourier truncation error.
    double grad_tol = 1e-6;        // stopping gradient norm
    // Restart when any mutual distance crosses this floor.  The eps-term
    // turns descent around at pinches of ~2e-3 that later converge cleanly,
    // so the floor only needs to catch genuine collapse.
    double collision_floor = 0.001;
};

// eps_n = 0.1 * 2^-n for n = 0..16, then 0.
Schedule default_schedule();

// Throws std::invalid_argument unless the ladder is strictly decreasing and
// ends at 0, step > 0, max_iters >= 0, grad_tol > 0, collision_floor >= 0.
void validate(const Schedule& s);

// One line per descent iterate, in the units of the closed-form bounds
// (quarter-period action).
struct LogRow {
    int iter = 0;  // within the rung
    double eps = 0;
    double action = 0;
    double grad_norm = 0;
    double min_separation = 0;
};

struct DescentOutcome {
    FourierLoop loop;
    double action = 0;  // quarter-period J^eps at the final iterate
    double grad_norm = 0;
    double min_separation = 0;
    int iters = 0;           // accepted steps
    bool hit_tol = false;    // gradient norm reached grad_tol
    bool collision = false;  // iterate crossed the collision floor: restart
};

// Projected steepest descent at fixed eps:  x <- P(x - h grad J^eps) with
// monotone backtracking (h halves until the action does not increase, then
// recovers by 1.25x up to the schedule step).  The input is projected onto
// the fixed subspace once up front, and every accepted iterate is projected,
// so the whole trajectory stays symmetric.  With max_iters = 0 the gradient
// is measured but no step is taken.  Descent stops at grad_tol, at the
// iteration budget, when no step length makes progress, or - the restart
// signal - when the accepted iterate's grid separation drops below the
// collision floor.
DescentOutcome descend(ActionWorkspace& ws, const FourierLoop& x0, double eps,
                       const Schedule& s, std::vector<LogRow>* log = nullptr);

struct OrbitResult {
    FourierLoop loop;
    ActionValue action;  // eps = 0 breakdown, quarter-period scale
    std::vector<std::pair<double, double>> eps_history;  // (eps, quarter J^eps)
    double min_separation = 0;
    double grad_norm = 0;
    // Signed boundary values (P_y q1(0), P_x q2(0), P_x q1(pi/4), P_y q1(pi/4));
    // the figure-eight chamber is (+, +, +, -).
    std::array<double, 4> omega_signs{};
    bool converged = false;          // final rung hit grad_tol, separation > floor
    bool collision_restart = false;  // some rung crossed the collision floor
};

// Warm-started descent down the ladder.  Each rung starts from the previous
// minimizer; the recorded (eps, J^eps) sequence is non-increasing because the
// strong-force term shrinks with eps and descent never increases the action.
// A collision restart aborts the ladder (eps_history shows the rung reached).
// Intermediate rungs may exhaust max_iters without harm - the next rung
// resumes from the same point; `converged` is decided by the final eps = 0
// rung alone.
OrbitResult continuation(ActionWorkspace& ws, const FourierLoop& x0, const Schedule& s,
                         std::vector<LogRow>* log = nullptr);

enum class StartStatus {
    kConverged,    // converged inside the sign chamber
    kSquareBasin,  // converged but violating the chamber: discarded
    kCollision,    // restart signal (or no collision-free init found)
    kBudget,       // final rung ran out of iterations
};

struct StartReport {
    int seed_index = 0;
    std::uint64_t seed = 0;  // RNG seed of the reported attempt
    int attempts = 0;        // draws consumed by this slot
    StartStatus status = StartStatus::kBudget;
    OrbitResult result;
    std::vector<LogRow> log;  // rung-by-rung rows of the reported attempt
};

struct MinimizeConfig {
    int k = 32;
    int quadrature = 2048;  // grid points, divisible by 8
    int seeds = 8;
    std::uint64_t seed_base = 20260814;
    double amplitude = 0.8;  // random_init coefficient scale
    Schedule schedule = default_schedule();
    double basin_tol = 1e-6;  // action spread counted as one basin
    int threads = 0;          // 0: CHOREO_THREADS, else hardware concurrency
    bool keep_logs = true;
};

struct MinimizeResult {
    bool any_converged = false;
    int best_index = -1;  // seed_index of the winner
    int basin_count = 0;  // converged starts within basin_tol of the winner
    std::vector<StartReport> starts;

    const OrbitResult& best() const;  // requires any_converged
};

// Multi-start driver.  Each of the `seeds` slots draws deterministic
// derived seeds until its continuation converges inside the sign chamber:
// collision restarts and square-basin discards consume the attempt and the
// slot redraws (capped), so a slot fails only on budget exhaustion or when
// the cap runs out.  Returns the lowest-action converged result.  Starts
// run on at most `threads` workers; the outcome is identical for any
// thread count.
MinimizeResult minimize(const MinimizeConfig& c);

// Thread-count resolution: `requested` if positive, else the CHOREO_THREADS
// environment variable, else the hardware concurrency; at least 1, at most
// `cap`.
int resolve_thread_count(int requested, int cap);

}  // namespace choreo
