#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "icfb/errors.hpp"

namespace icfb {

using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Antenna counts (M1, N1, M2, N2); all must be >= 1.
struct AntennaConfig {
  int m1 = 1;
  int n1 = 1;
  int m2 = 1;
  int n2 = 1;
};

/// Linear-scale link power gains rho_ij (transmitter i -> receiver j).
struct LinkGains {
  double rho11 = 0.0;
  double rho12 = 0.0;
  double rho21 = 0.0;
  double rho22 = 0.0;
};

/// A two-user MIMO interference channel. h_ij maps transmitter i (M_i
/// antennas) to receiver j (N_j antennas), so h_ij is N_j x M_i.
struct ChannelInstance {
  AntennaConfig config;
  CMatrix h11;  // N1 x M1
  CMatrix h12;  // N2 x M1
  CMatrix h21;  // N1 x M2
  CMatrix h22;  // N2 x M2
  LinkGains gains;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Link-quality scaling exponents alpha_ij. Direct exponents must be
/// strictly positive; the cross exponents only nonnegative.
struct ScalingExponents {
  ScalingExponents(double a11, double a12, double a21, double a22);
  double a11, a12, a21, a22;
};

/// Lists every violated invariant; empty report iff the instance is valid.
ValidationReport validate(const ChannelInstance& ch);

/// Reverses the direction of information flow: antennas (N1,M1,N2,M2),
/// matrices transposed with the cross links exchanged, cross gains swapped.
ChannelInstance reciprocal(const ChannelInstance& ch);

/// Each matrix entry i.i.d. CN(0,1); deterministic for a given seed
/// (mt19937_64, one documented draw order).
ChannelInstance random_channel(const AntennaConfig& config, const LinkGains& gains,
                               std::uint64_t seed);

ChannelInstance load_channel(const std::string& path);
void save_channel(const ChannelInstance& ch, const std::string& path);

/// Channel-file JSON text (same schema save_channel writes).
std::string channel_json(const ChannelInstance& ch);

}  // namespace icfb
