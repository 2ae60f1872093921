#include "choreo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace choreo {

namespace {

std::string collision_message(const std::string& denom, double value, double time) {
    std::ostringstream os;
    os << "collision: denominator " << denom << " = " << value << " below threshold "
       << kCollisionThreshold;
    if (!std::isnan(time)) os << " at t = " << time;
    return os.str();
}

// The four separation vectors and their norms, with collision checks.
struct Separations {
    Vec2 d12, d14;  // q1-q2 and q1+q2 (= q1-q4)
    double r12, r14, r1, r2;
};

Separations separations(const Configuration& c) {
    Separations s;
    s.d12 = c.q1 - c.q2;
    s.d14 = c.q1 + c.q2;
    s.r12 = norm(s.d12);
    s.r14 = norm(s.d14);
    s.r1 = norm(c.q1);
    s.r2 = norm(c.q2);
    if (s.r12 < kCollisionThreshold) throw CollisionError("|q1 - q2|", s.r12);
    if (s.r14 < kCollisionThreshold) throw CollisionError("|q1 + q2|", s.r14);
    if (s.r1 < kCollisionThreshold) throw CollisionError("|q1|", s.r1);
    if (s.r2 < kCollisionThreshold) throw CollisionError("|q2|", s.r2);
    return s;
}

}  // namespace

CollisionError::CollisionError(const std::string& denominator, double value, double time)
    : std::runtime_error(collision_message(denominator, value, time)),
      denom_(denominator),
      value_(value),
      time_(time) {}

double potential_U(const Configuration& c) {
    const Separations s = separations(c);
    return 1.0 / s.r12 + 1.0 / s.r14 + 0.5 / s.r1 + 0.5 / s.r2;
}

double strong_force_W(const Configuration& c) {
    const Separations s = separations(c);
    return 1.0 / (s.r12 * s.r12) + 1.0 / (s.r14 * s.r14) + 0.5 / (s.r1 * s.r1) +
           0.5 / (s.r2 * s.r2);
}

Configuration grad_U(const Configuration& c) {
    const Separations s = separations(c);
    const double c12 = 1.0 / (s.r12 * s.r12 * s.r12);
    const double c14 = 1.0 / (s.r14 * s.r14 * s.r14);
    const double c1 = 0.5 / (s.r1 * s.r1 * s.r1);
    const double c2 = 0.5 / (s.r2 * s.r2 * s.r2);
    Configuration g;
    g.q1 = -(s.d12 * c12) - (s.d14 * c14) - c.q1 * c1;
    g.q2 = (s.d12 * c12) - (s.d14 * c14) - c.q2 * c2;
    return g;
}

Configuration grad_W(const Configuration& c) {
    const Separations s = separations(c);
    const double c12 = 2.0 / (norm2(s.d12) * norm2(s.d12));
    const double c14 = 2.0 / (norm2(s.d14) * norm2(s.d14));
    const double c1 = 1.0 / (norm2(c.q1) * norm2(c.q1));
    const double c2 = 1.0 / (norm2(c.q2) * norm2(c.q2));
    Configuration g;
    g.q1 = -(s.d12 * c12) - (s.d14 * c14) - c.q1 * c1;
    g.q2 = (s.d12 * c12) - (s.d14 * c14) - c.q2 * c2;
    return g;
}

Configuration acceleration(const Configuration& c) { return grad_U(c); }

double energy(const PhasePoint& s) {
    return 0.5 * (norm2(s.p1) + norm2(s.p2)) - potential_U({s.q1, s.q2});
}

double angular_momentum(const PhasePoint& s) {
    return cross(s.q1, s.p1) + cross(s.q2, s.p2);
}

double min_separation(const Configuration& c) {
    return std::min({norm(c.q1 - c.q2), norm(c.q1 + c.q2), 2.0 * norm(c.q1), 2.0 * norm(c.q2)});
}

}  // namespace choreo
