#pragma once

#include <cstdint>

namespace bohrlab {

// Numerical knobs shared across modules. Every default is pinned here so the
// test suites and the CLI agree on one source of truth.
struct Tolerances {
  // max allowed ||U^H U - I|| for a matrix accepted as unitary
  double unitary = 1e-10;
  // defect threshold under which a map is treated as an exact homomorphism
  double hom = 1e-9;
  // max pairwise commutator norm for simultaneous diagonalization
  double commute = 1e-8;
  // half-width of the boundary collar around the strict radius inequality
  double boundary_collar = 1e-9;
  // smallest singular value for which the polar factor is considered defined
  double polar_min_sv = 1e-12;
};

inline constexpr double kDefaultCorrectionCap = 1.0 / 200.0;  // defect cap for correction
inline constexpr double kDefaultCoveringConstant = 6.0;       // placeholder covering constant
inline constexpr int kDefaultOrderCap = 10080;
inline constexpr long kNetSampleCount = 100000;

}  // namespace bohrlab
