#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "icfb/bounds.hpp"

namespace icfb {

/// Outcome of one randomized property check. worst_margin is the closest
/// signed approach to violation (>= 0 means the property held with that
/// slack, in the assertion's own units).
struct PropertyVerdict {
  std::string property_id;
  long trials = 0;
  long failures = 0;
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  bool pass() const { return failures == 0; }
};

std::string verdict_json_line(const PropertyVerdict& v);

struct VerifyOptions {
  long trials = 1000;
  std::uint64_t seed = 0;
  int max_dim = 8;
  std::vector<double> gains_grid{1.0, 1e2, 1e4, 1e8};
  bool parallel = true;  // serial path kept as the reference implementation
};

/// K1 <= K2 implies L(K1,S) <= L(K2,S).
PropertyVerdict check_L_monotone(const VerifyOptions& opt);
/// Block determinant agrees with the direct determinant through both pivots.
PropertyVerdict check_block_det(const VerifyOptions& opt);
/// log2 det(I + V - V(I+V)^-1 V) <= N for V = S^H S, any S.
PropertyVerdict check_det_bound(const VerifyOptions& opt);
/// S(I + S^H S)^-1 S^H is PSD for any S.
PropertyVerdict check_gram_psd(const VerifyOptions& opt);
/// The diagonal sandwich identity behind the high-SNR reduction.
PropertyVerdict check_diagonal_identity(const VerifyOptions& opt);
/// I_k(Q) <= I_k(0) + (N1, N2, 0, 0, N2, N1)_k over random channels and Q.
PropertyVerdict check_appendix_c(const VerifyOptions& opt);
/// The six pairings I1=I3', I2=I4', I3=I1', I4=I2', I5=I6', I6=I5'.
PropertyVerdict check_reciprocity(const VerifyOptions& opt);
/// Power-split covariances PSD, summing to identity, private part at or
/// below the noise floor.
PropertyVerdict check_power_split(const VerifyOptions& opt);

std::vector<PropertyVerdict> run_all(const VerifyOptions& opt);

}  // namespace icfb
