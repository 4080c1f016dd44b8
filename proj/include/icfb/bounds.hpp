#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "icfb/channel.hpp"
#include "icfb/hermitian.hpp"
#include "icfb/regions.hpp"

namespace icfb {

/// The six outer-bound constraint values in bits, in display order:
/// i1, i3 bound R1; i2, i4 bound R2; i5, i6 bound R1+R2.
struct SixBounds {
  std::array<double, 6> i{};  // i[k] holds I_{k+1}
};

SixBounds six_bounds(const ChannelInstance& ch, const CrossCovariance& q);
SixBounds six_bounds_zero(const ChannelInstance& ch);

/// tighten(min(i1,i3), min(i2,i4), min(i5,i6)) of the given bounds.
TriBoundRegion tri_region(const SixBounds& b);

/// Zero-cross-covariance region plus the [0,N1]x[0,N2] rectangle.
TriBoundRegion outer_region(const ChannelInstance& ch);

/// Achievability deductions applied to the zero-cross-covariance region.
/// PerConstraint subtracts (N1, N2, N1+N2, N1+N2, N1+N2, N1+N2) from
/// i1..i6 before tightening; Blanket applies ominus [0,N1+N2]^2 instead.
enum class InnerMode { PerConstraint, Blanket };
TriBoundRegion inner_region(const ChannelInstance& ch,
                            InnerMode mode = InnerMode::PerConstraint);

/// Private/public transmit covariance split; k_ip + k_iu = I_Mi, both PSD,
/// and the private part lands at or below the noise floor at the
/// unintended receiver.
struct PowerSplit {
  CMatrix k1p, k1u;  // M1 x M1
  CMatrix k2p, k2u;  // M2 x M2
};
PowerSplit power_split(const ChannelInstance& ch);

/// Worst-case slack 1 - lambda_max(rho_ij H_ij K_ip H_ij^dagger) over both
/// users; >= 0 iff the private signals sit at or below the noise floor.
double noise_floor_margin(const ChannelInstance& ch);

/// Convex hull over sampled feasible cross-covariances (zero always
/// included); samples alternate interior/boundary styles.
ConvexRegion2D sampled_hull(const ChannelInstance& ch, int n_samples, std::uint64_t seed);

struct GapReport {
  SixBounds i_zero;
  TriBoundRegion inner, outer;
  TriBoundRegion inner_reciprocal, outer_reciprocal;
  bool inner_in_outer = false;
  bool inner_in_outer_reciprocal = false;
  bool cross_forward = false;   // inner^R shrunk by (N1+N2+M1, N1+N2+M2) within outer
  bool cross_backward = false;  // inner shrunk by (M1+M2+N1, M1+M2+N2) within outer^R
  GapTriple gaps;
  double max_gap_bits = 0.0;
  bool pass() const {
    return inner_in_outer && inner_in_outer_reciprocal && cross_forward && cross_backward;
  }
};

GapReport gap_certificate(const ChannelInstance& ch);

/// Fixed-key-order JSON (for golden-file diffing); echoes the channel.
std::string gap_report_json(const ChannelInstance& ch, const GapReport& report);

}  // namespace icfb
