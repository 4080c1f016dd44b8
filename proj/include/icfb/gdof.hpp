#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "icfb/bounds.hpp"
#include "icfb/channel.hpp"

namespace icfb {

/// One linear constraint c1*d1 + c2*d2 <= rhs on the prelog pair (d1, d2).
struct GdofConstraint {
  double c1 = 0.0;
  double c2 = 0.0;
  double rhs = 0.0;
};

/// The six-constraint high-SNR prelog region, constraints kept in display
/// order with the direct exponents as coefficients.
struct GdofRegion {
  std::array<GdofConstraint, 6> constraints{};
  AntennaConfig config;
  ScalingExponents exponents;
};

/// Level-filling value: the stronger of the two links fills first.
/// Ties take the first branch (both branches agree algebraically).
double f_level(double u, double a1, double u1, double a2, double u2);

GdofRegion gdof_region(const AntennaConfig& config, const ScalingExponents& a);

/// Largest d with (d, d) feasible.
double symmetric_point(const GdofRegion& region);

/// Symmetric-channel closed form with feedback (two linear pieces meeting
/// at alpha = 1). Roles of m and n interchangeable.
double symmetric_gdof_pf(int m, int n, double alpha);

/// Symmetric-channel closed form without feedback (branch boundaries at
/// 1/2, 2/3 and 1).
double symmetric_gdof_nf(int m, int n, double alpha);

/// Per-constraint two-point slopes of the zero-cross-covariance bounds,
/// (I_k(hi) - I_k(lo)) / (log2 hi - log2 lo), on one random channel with
/// rho_ij = snr^alpha_ij.
SixBounds empirical_slope(const AntennaConfig& config, const ScalingExponents& a,
                          std::uint64_t seed, double snr_lo, double snr_hi);

/// Alpha grid with step `step` on [0, alpha_max], plus every curve
/// breakpoint (1/2, 2/3, 1, 3 - m/n, 2) that falls in range.
std::vector<double> alpha_grid(int m, int n, double alpha_max, double step);

}  // namespace icfb
