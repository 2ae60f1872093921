#pragma once

#include <complex>
#include <vector>

#include "choreo/dynamics.hpp"
#include "choreo/vec2.hpp"

namespace choreo {

// ---------------------------------------------------------------------------
// Blow-up (scaling-limit) system near a binary ejection/collision of body 1.
// ---------------------------------------------------------------------------

struct ScalingSample {
    double s = 0;
    Vec2 y;
    Vec2 v;
    double r = 0;      // |y|
    double theta = 0;  // unwrapped polar angle, theta(0) = pi/2
};

struct ScalingTrajectory {
    double d = 0;    // parameter in [0, inf]; +infinity selects the circular limit
    int branch = 1;  // sign of the initial tangential velocity
    std::vector<ScalingSample> samples;
};

// Zero-energy motion in the potential V_d(y) = 1/(2|y|) + d/(2|y|^2):
//   y'' = -y/(2|y|^3) - d y/|y|^4,   y(0) = (0,1),   y'(0) = branch*sqrt(1+d)*(1,0),
// so the first integral  |y'|^2/2 - 1/(2|y|) - d/(2|y|^2)  vanishes identically.
// For finite d the orbit escapes (r strictly increasing) and the unwrapped
// angle converges to theta_asymptote(d, branch).  Passing d = +infinity
// selects the rescaled limit  y'' = -2y/|y|^4,  y'(0) = branch*sqrt(2)*(1,0),
// which stays on the unit circle with theta(s) = pi/2 - branch*sqrt(2)*s.
ScalingTrajectory integrate_scaling(double d, int branch, double s_max,
                                    int n_samples = 2000, double rtol = 1e-12,
                                    double atol = 1e-12);

// Conserved energy of the blow-up system evaluated at one sample
// (zero on every orbit produced by integrate_scaling).
double scaling_energy(double d, const Vec2& y, const Vec2& v);

// Closed-form angle limit:  pi/2 - branch * pi * sqrt(1+d)  (finite d only).
double theta_asymptote(double d, int branch);

// Estimate of the angle limit from a finite trajectory.  On a zero-energy
// orbit the relation
//   theta(s) = theta_inf + branch * 2 sqrt(1+d) * atan(1/sqrt(r(s)-1))
// is exact, so fitting theta against atan(1/sqrt(r-1)) over the escaping tail
// recovers the intercept to integration accuracy.  Requires an escaping
// trajectory (finite d, enough samples with r > 2).
double extract_theta_asymptote(const ScalingTrajectory& traj);

// Explicit circular solution of the d = infinity system:
//   y(s) = (cos(sqrt2 s), branch * sin(sqrt2 s)).
// It satisfies y'' = -2y/|y|^4 identically but starts at (1,0) - a quarter
// period away (with reversed orientation label) from the initial condition
// y(0) = (0,1) integrated above.  Treated as an ODE solution, not as the
// solution of that initial-value problem.
Vec2 y_infinity(double s, int branch);

// ---------------------------------------------------------------------------
// Levi-Civita regularization of the q1 = 0 binary collision.
// ---------------------------------------------------------------------------

using Complex = std::complex<double>;

// Coordinates  q1 = -(i/2) z^2,  p1 = -i w / conj(z),  with physical time
// dt = |z|^2 dtau.  (z, w) and (-z, -w) describe the same physical state.
// E is the orbit energy, entering the flow as a fixed parameter; whenever
// z != 0 it satisfies the energy relation
//   E = (|w|^2 - 2)/(2|z|^2) + |p2|^2/2 - 2/|z^2-2iq2| - 2/|z^2+2iq2| - 1/(2|q2|),
// where |q1 -+ q2| = |z^2 -+ 2iq2| / 2.
struct LCState {
    Complex z, w, q2, p2;
    double E = 0;
};

// Forward map (requires q1 != 0; picks the branch Re z > 0, or Im z >= 0 when
// Re z = 0) and its inverse (requires z != 0 to recover p1).
LCState lc_transform(const PhasePoint& p);
PhasePoint lc_inverse(const LCState& l);

// Right-hand side of the regularized flow, d/dtau of (z, w, q2, p2).  Every
// term carries a factor z or |z|^2, so the field is regular at z = 0; it is
// singular only at secondary collisions (q2 = 0 or z^2 = -+ 2iq2), which
// raise CollisionError.
LCState lc_rhs(const LCState& l);

struct LCSample {
    double tau = 0;
    double t = 0;  // physical time, t(0) = 0 at the collision
    LCState state;
    Complex q1;  // -(i/2) z^2
    Complex p1;  // -i w / conj(z); NaN at z = 0
};

struct LCTrajectory {
    std::vector<LCSample> samples;  // tau increasing, centered on the collision
};

// Integrate the regularized flow through a binary collision of body 1 at
// t = 0: z(0) = 0, w(0) = sqrt(2) (zero-energy ejection), q2(0) = q2_0,
// p2(0) = p2_0, E = |p2_0|^2/2 - 5/(2 |q2_0|).  tau runs over
// [-tau_span, tau_span] with n_samples uniform sample points (n_samples odd
// keeps tau = 0 in the set).  Near tau = 0 the physical time obeys
// t = (2/3) tau^3 + O(tau^5).
LCTrajectory integrate_through_collision(Complex q2_0, Complex p2_0, double tau_span,
                                         int n_samples = 201, double rtol = 1e-12,
                                         double atol = 1e-12);

// Which side of the y-axis the ejected body is deflected to: the sign of
// Re q1 at tau = tau_probe (+1 or -1).  For q2_0 on the real axis (the
// collision configuration of interest) this equals -sign(Im b3), where
// b3 = (2/3) p2_0 is the leading q2 Taylor coefficient: the deflection sends
// body 1 into the quadrant already occupied by body 4 (for Im b3 > 0) or
// body 2 (for Im b3 < 0), and Im z grows only at order tau^10.  (For complex
// q2_0 the deflection starts earlier, at order tau^7, with a sign set by
// Im q2_0.)  The probe must sit where the signal clears the integration
// noise; below a 1e-9 floor this throws std::runtime_error.
int quadrant_diagnostic(Complex q2_0, Complex p2_0, double tau_probe = 0.5);

}  // namespace choreo
