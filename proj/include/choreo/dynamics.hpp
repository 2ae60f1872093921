#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include "choreo/vec2.hpp"

namespace choreo {

// Reduced parallelogram coordinates for the planar equal-mass four-body
// problem: the configuration stores (q1, q2) and the remaining bodies are
// implied by q3 = -q1, q4 = -q2.  Units G = m = 1.
struct Configuration {
    Vec2 q1;
    Vec2 q2;
};

// Positions plus momenta (= velocities, unit masses).
struct PhasePoint {
    Vec2 q1, q2;
    Vec2 p1, p2;
};

// A denominator in the reduced potential/force field dropped below the
// collision threshold.  The message names the vanished denominator so the
// minimizer's restart logic can key off a deterministic error surface.
class CollisionError : public std::runtime_error {
  public:
    CollisionError(const std::string& denominator, double value, double time = kNoTime);

    const std::string& denominator() const { return denom_; }
    double value() const { return value_; }
    // Time of the offending sample when known (quadrature / integration), else NaN.
    double time() const { return time_; }

    static constexpr double kNoTime = std::numeric_limits<double>::quiet_NaN();

  private:
    std::string denom_;
    double value_;
    double time_;
};

// Denominators below this raise CollisionError instead of overflowing.
inline constexpr double kCollisionThreshold = 1e-12;

// Reduced potential
//   U(q1,q2) = 1/|q1-q2| + 1/|q1+q2| + 1/(2|q1|) + 1/(2|q2|).
// Strictly positive on the collision-free set.
double potential_U(const Configuration& c);

// Strong-force regularizing potential (the coefficient eps is applied by the
// caller):  W(q1,q2) = 1/|q1-q2|^2 + 1/|q1+q2|^2 + 1/(2|q1|^2) + 1/(2|q2|^2).
double strong_force_W(const Configuration& c);

// (dU/dq1, dU/dq2).  With the attractive sign convention (Lagrangian
// K + U) the reduced equations of motion read qdd = +grad U:
//   qdd1 = -q1/(2|q1|^3) - (q1-q2)/|q1-q2|^3 - (q1+q2)/|q1+q2|^3,
// and symmetrically for q2.
Configuration grad_U(const Configuration& c);

// (dW/dq1, dW/dq2) for the inverse-square terms.
Configuration grad_W(const Configuration& c);

// Accelerations (qdd1, qdd2) of the reduced system; identical to grad_U.
Configuration acceleration(const Configuration& c);

// E = |p1|^2/2 + |p2|^2/2 - U(q1,q2).  Conserved along the flow.
double energy(const PhasePoint& s);

// q1 x p1 + q2 x p2 (planar scalar cross products).  Note: this is the
// angular momentum of the reduced pair; the full four-body system carries
// exactly twice this value because bodies 3,4 mirror bodies 1,2.
double angular_momentum(const PhasePoint& s);

// Smallest of the four mutual-distance functions of the full system:
//   |q1-q2|, |q1+q2|, 2|q1|, 2|q2|
// (each value covers a symmetry-equivalent class of body pairs).
double min_separation(const Configuration& c);

}  // namespace choreo
