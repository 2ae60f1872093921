#pragma once

#include <stdexcept>
#include <string>

#include "choreo/minimize.hpp"

namespace choreo {

// Malformed or inconsistent orbit file.
class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Orbit file: JSON, UTF-8, fixed key order, floating point as shortest
// round-trip decimals.  write(read(s)) == s byte for byte on files this
// writer produced.
//
//   {"format_version":1,
//    "period":6.283185307179586,
//    "truncation":k,
//    "quadrature":M,
//    "coefficients":{"xi":[[k+1]x4],"eta":[[k+1]x4]},  (modes l = 0..k)
//    "action":<quarter-period total at eps=0>,
//    "eps_history":[[eps,J]...],
//    "diagnostics":{"kinetic":...,"potential":...,"min_separation":...,
//                   "grad_norm":...,"omega_signs":[4],
//                   "converged":bool,"collision_restart":bool}}
std::string orbit_to_json(const OrbitResult& orbit, int quadrature);

// Parses and validates an orbit file.  Throws FormatError on any structural
// or numeric defect (wrong version, shape mismatch, non-finite entries).
// `quadrature_out`, when non-null, receives the stored quadrature size.
OrbitResult orbit_from_json(const std::string& text, int* quadrature_out = nullptr);

// Uniform-time samples of all four bodies lifted from the reduced loop
// (q3 = -q1, q4 = -q2).  Header plus `samples` rows:
//   t,q1x,q1y,q2x,q2y,q3x,q3y,q4x,q4y
// with t_i = 2*pi*i/samples and shortest round-trip decimals.
std::string samples_to_csv(const FourierLoop& loop, int samples);

// The same samples as JSON: {"format_version":1,"samples":N,
// "columns":[...],"data":[[t,...]x N]}.
std::string samples_to_json(const FourierLoop& loop, int samples);

// Convergence log: one comment line per start
//   # start <index> seed <seed> attempts <n> status <name>
// followed by that start's rung-by-rung rows
//   iter,eps,action,grad_norm,min_sep
// (single global header line; `minimize` must run with keep_logs).
std::string minimize_log_csv(const MinimizeResult& result);

}  // namespace choreo
