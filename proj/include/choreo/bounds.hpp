#pragma once

#include <string>
#include <vector>

#include "choreo/action.hpp"
#include "choreo/fourier_loop.hpp"

namespace choreo {

// A closed-form constant paired with an independently computed oracle value.
struct BoundReport {
    std::string name;
    double formula_value = 0;
    double oracle_value = 0;
    double discrepancy = 0;  // |formula - oracle|
    std::string note;
};

// Minimal action of a Kepler-type problem with potential alpha/r over paths
// joining the origin to itself in time T0:  (3/2) pi^{2/3} alpha^{2/3} T0^{1/3}.
double kepler_min_action(double alpha, double T0);

// Lower bound for the quarter-period action of paths experiencing a total
// collision:  3 * 2^{-4/3} (1 + 2 sqrt 2)^{2/3} pi  (~ 9.1533).  Algebraically
// equal to kepler_min_action(4 + sqrt 2, pi/4).
double total_collision_lower_bound();

struct ShapeMinimum {
    double value = 0;
    Configuration shape;  // minimizer on the unit sphere |s1|^2 + |s2|^2 = 1
};

// Brute-force minimum of the reduced potential U over the shape sphere
// (grid in the two free angles, then nested refinement).  The minimizer is
// the square: |s1| = |s2| = 1/sqrt 2, s1 . s2 = 0, where U = 2 + sqrt 2.
ShapeMinimum shape_potential_min(int resolution = 512);

// Explicit low-action test segment on [0, pi/4]:
//   q1(t) = (t, pi/4 - 2t),   q2(t) = (pi/2 - t, t).
// Piecewise linear with constant kinetic density 7/2; satisfies all boundary
// equalities exactly and the sign chamber strictly.
Configuration test_path(double t);
Configuration test_path_velocity(double t);

// Quarter-period action of the exact test segment by composite Simpson.
// The quadrature reproduces the closed form
//   7 pi/8 + (asinh 3 + asinh 2)/(2 sqrt 5) + asinh(1)/(2 sqrt 2)
//          + (asinh(3/2) + asinh(7/4))/sqrt 13 + asinh(1/2)  ~ 4.970247,
// which is < 5.
ActionValue test_path_action(int n = 4096);
double test_path_action_closed_form();

// H-fixed loop through the sampled test segment (k = 4n).
FourierLoop test_path_loop(int k);

// The full comparison table (used by the CLI `bounds` command).
std::vector<BoundReport> bound_reports(int shape_resolution = 512);

}  // namespace choreo
