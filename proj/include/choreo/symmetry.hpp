#pragma once

#include <array>
#include <vector>

#include "choreo/fourier_loop.hpp"

namespace choreo {

// Element of the symmetry group H = Z2 x D8 (16 elements) acting on loops by
//   (g . q)_k(t) = rho(g) q_{sigma(g^-1)(k)}(tau(g^-1) t),
// where tau acts on the time circle, rho on the plane and sigma permutes the
// four bodies.  All matrix entries are exactly 0 or +-1, so elements compare
// exactly.
struct GroupElement {
    Mat2 tau;
    Mat2 rho;
    // Permutation images, 0-based: body i+1 maps to sigma[i]+1.
    std::array<int, 4> sigma;

    bool operator==(const GroupElement&) const = default;
};

GroupElement identity_element();

// Generators.  g1 encodes the antipodal pairing (q3,q4) = -(q1,q2); g2 is the
// time reversal with a spatial y-axis reflection; g3 is the quarter-period
// shift with the cyclic body relabeling.
//
// Convention note: the source material prints tau(g3) as the counterclockwise
// quarter turn, but that choice contradicts its own boundary structure (it
// forces q2(pi/4) = R_y q1(pi/4), while the explicit test path and the
// reflection identity q1(t) = R_x q2(pi/2 - t) demand the R_x relation).
// We therefore take tau(g3) = clockwise quarter turn (t -> t - pi/2), the
// unique single-generator repair consistent with the rest of the structure;
// the resulting fixed loops satisfy q2(t) = q1(t + pi/2).
GroupElement generator_g1();
GroupElement generator_g2();
GroupElement generator_g3();

GroupElement compose(const GroupElement& g, const GroupElement& h);  // g after h
GroupElement inverse(const GroupElement& g);

struct SymmetryGroup {
    std::vector<GroupElement> elements;
};

// Closure of {g1, g2, g3}: exactly 16 elements.
SymmetryGroup build_group();
// Cyclic subgroup <g3> (choreography constraint only), 4 elements.
SymmetryGroup choreography_subgroup();
// Subgroup <g1>, 2 elements.
SymmetryGroup antipodal_subgroup();

// The loop action in coefficient space.  tau(g^-1) restricted to H is an
// affine circle map t -> eps t + m pi/2, which maps mode l to mode l with an
// exact {0,+-1} trigonometric mixing, so no resampling is involved.
FourierLoop act_on_loop(const GroupElement& g, const FourierLoop& x);

// Group average (1/|G|) sum_g g.x — an H^1-orthogonal projector onto the
// fixed subspace.
FourierLoop project_group(const SymmetryGroup& G, const FourierLoop& x);
// Average over the full group H.
FourierLoop equivariant_project(const FourierLoop& x);

// Boundary structure of fixed loops at t = 0 (rhomboidal: body 1 on the
// y-axis, body 2 on the x-axis) and t = pi/4 (rectangular: q2 = R_x q1).
struct BoundaryResidual {
    double rhomboidal_q1 = 0;   // |P_x q1(0)|
    double rhomboidal_q2 = 0;   // |P_y q2(0)|
    double rectangular = 0;     // |q2(pi/4) - R_x q1(pi/4)|
    double q1y_at_0 = 0;        // P_y q1(0)
    double q2x_at_0 = 0;        // P_x q2(0)
    double q1x_at_quarter = 0;  // P_x q1(pi/4)
    double q1y_at_quarter = 0;  // P_y q1(pi/4)
};
BoundaryResidual boundary_residual(const FourierLoop& x);

// Strict sign chamber of the super-eight: (+, +, +, -) for the four signed
// values above.  The rotating square fails the last sign.
bool omega_signs_strict(const BoundaryResidual& r);

// A fixed loop is determined by its restriction to [0, pi/4]; the segment
// holds n+1 uniform samples of (q1, q2) on that interval.
struct Segment {
    std::vector<Configuration> samples;
};

// Unfold a segment to the full period through the group relations and fit the
// trigonometric interpolant (k = 4n for n+1 samples), then project.  The
// segment must satisfy the boundary conditions to `tol`.
FourierLoop segment_to_loop(const Segment& s, double tol = 1e-8);
Segment loop_to_segment(const FourierLoop& x, int n);

// The rotating-square relative equilibrium: an exact H-fixed solution with
//   q1(t) = R (sin t, cos t), q2(t) = R (cos t, -sin t), R^3 = (1 + sqrt 2)/2.
// It is a critical point of the action but sits outside the strict sign
// chamber (q1y at pi/4 is positive).
double rotating_square_radius();
FourierLoop rotating_square_loop(int k);

}  // namespace choreo
