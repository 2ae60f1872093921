#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "choreo/dynamics.hpp"

namespace choreo {

// Component indices of a reduced loop.
enum : int { kQ1x = 0, kQ1y = 1, kQ2x = 2, kQ2y = 3 };

// H^1-orthonormal trigonometric basis on [0, 2pi]:
//   e^sin_l = sin(lt)/sqrt(pi(1+l^2)),  e^cos_l = cos(lt)/sqrt(pi(1+l^2))  (l >= 1),
//   e^cos_0 = 1/sqrt(2 pi),             e^sin_0 = 0 (stored but always zero).
// Under this normalization Parseval holds exactly for the H^1 inner product
// <f,g> = int (f g + f' g') dt, so the squared H^1 norm of a loop is the
// plain sum of squared coefficients.
double basis_norm(int l);

// Truncated trigonometric loop of the reduced configuration:
//   q_j(t) = sum_l xi[l][j] sin(lt)/N_l + eta[l][j] cos(lt)/N_l,
// j indexing (q1x, q1y, q2x, q2y).  Coefficients are stored row-major in l.
struct FourierLoop {
    int k = 0;
    std::vector<double> xi, eta;  // size 4*(k+1), entry (l, j) at l*4+j

    FourierLoop() = default;
    explicit FourierLoop(int k_) : k(k_), xi(4 * (k_ + 1), 0.0), eta(4 * (k_ + 1), 0.0) {}

    double& xi_at(int l, int j) { return xi[static_cast<size_t>(l) * 4 + j]; }
    double& eta_at(int l, int j) { return eta[static_cast<size_t>(l) * 4 + j]; }
    double xi_at(int l, int j) const { return xi[static_cast<size_t>(l) * 4 + j]; }
    double eta_at(int l, int j) const { return eta[static_cast<size_t>(l) * 4 + j]; }
    size_t n_coeffs() const { return xi.size() + eta.size(); }
};

// Pointwise synthesis.
Configuration evaluate(const FourierLoop& x, double t);
// Time derivative (velocities of both bodies).
Configuration evaluate_velocity(const FourierLoop& x, double t);
PhasePoint phase_point(const FourierLoop& x, double t);

// H^1 geometry (exact in coefficient space by the basis normalization).
double h1_norm(const FourierLoop& x);
double h1_dot(const FourierLoop& a, const FourierLoop& b);

// In-place y += s * x; shapes must match.
void add_scaled(FourierLoop& y, double s, const FourierLoop& x);
void scale(FourierLoop& x, double s);

// Cached sin(l t_i), cos(l t_i) on the uniform grid t_i = 2 pi i / m,
// i = 0..m-1, l = 0..k.  Shared by synthesis, quadrature and the gradient.
class SinCosTable {
  public:
    SinCosTable(int k, int m);
    int k() const { return k_; }
    int m() const { return m_; }
    const double* sin_row(int l) const { return &sin_[static_cast<size_t>(l) * m_]; }
    const double* cos_row(int l) const { return &cos_[static_cast<size_t>(l) * m_]; }

  private:
    int k_, m_;
    std::vector<double> sin_, cos_;
};

// Uniform-grid samples of positions and velocities, component-major.
struct LoopGrid {
    int m = 0;
    std::array<std::vector<double>, 4> q, v;
};

// Synthesize the loop on the table's grid.  The table truncation must be
// >= x.k.
void sample_loop(const FourierLoop& x, const SinCosTable& table, LoopGrid& grid);

// Trapezoid rule for a 2pi-periodic integrand sampled on the uniform grid
// t_i = 2 pi i / m (spectrally accurate; exact for band-limited integrands
// of degree < m).
double quadrature_periodic(const std::vector<double>& f);

// Composite Simpson on [a, b] for samples at n+1 uniform points (n even).
double quadrature_simpson(const std::vector<double>& f, double a, double b);

// Random H-fixed initial loop: i.i.d. uniform coefficients in
// [-amplitude, amplitude] scaled by l^-2, then equivariant projection, then
// orientation moves enforcing the Omega sign conventions where possible.
// Deterministic for a fixed seed.  (Defined with the symmetry module.)
FourierLoop random_init(std::uint64_t seed, int k, double amplitude);

}  // namespace choreo
