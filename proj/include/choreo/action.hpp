#pragma once

#include "choreo/fourier_loop.hpp"

namespace choreo {

// Value of the (regularized) action split into its integrand parts.
struct ActionValue {
    double total = 0;
    double kinetic = 0;
    double potential = 0;
    double strong_force = 0;  // the eps-weighted inverse-square part
    double eps = 0;
};

// Reusable buffers for the hot path: trig tables sized (k, m), grid samples,
// force values.  The quadrature grid must have m divisible by 8 so that it is
// invariant under the group's quarter-turn time maps; this makes the discrete
// gradient exactly equivariant and lets the minimizer project every step
// without fighting the quadrature.
class ActionWorkspace {
  public:
    ActionWorkspace(int k, int m);

    int k() const { return table_.k(); }
    int m() const { return table_.m(); }

    // Full-period action  int_0^{2pi} |qdot|^2/2 + U + eps W dt  by the
    // periodic trapezoid rule.  Throws CollisionError (with the grid time)
    // if a sample approaches a collision.  Records the grid minimum of the
    // mutual distances as a side effect.
    ActionValue action(const FourierLoop& x, double eps);

    // Riesz gradient of the same discrete functional in the orthonormal
    // H^1 basis (the ascent direction; descent negates it).  This is the
    // exact derivative of the trapezoid-discretized action.
    void gradient(const FourierLoop& x, double eps, FourierLoop& out);

    double last_min_separation() const { return last_min_sep_; }

  private:
    void synthesize(const FourierLoop& x, double eps, bool with_force);

    SinCosTable table_;
    LoopGrid grid_;
    std::array<std::vector<double>, 4> force_;
    double last_min_sep_ = 0;
};

// One-shot conveniences (construct a workspace internally).
ActionValue action_loop(const FourierLoop& x, double eps, int m = 2048);

// Quarter-period functional int_0^{pi/4} of the same integrand by composite
// Simpson on n+1 points; this is the scale on which the closed-form bounds
// are quoted.  For H-fixed loops action_loop = 8 * action_segment.
ActionValue action_segment(const FourierLoop& x, double eps, int n = 2048);

FourierLoop gradient(const FourierLoop& x, double eps, int m = 2048);

}  // namespace choreo
