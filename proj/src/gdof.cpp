#include "icfb/gdof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace icfb {

namespace {

double pos(double x) { return x > 0.0 ? x : 0.0; }

void require_config(const AntennaConfig& c) {
  if (c.m1 < 1 || c.n1 < 1 || c.m2 < 1 || c.n2 < 1)
    throw SchemaError("gdof_region: antenna counts must be >= 1");
}

// tail shared by constraints 3/5 (user 1) and 4/6 (user 2): the part of the
// direct signal that survives zero-forcing at the unintended receiver
double surviving_direct(double aii, double aij, int mi, int ni, int nj) {
  const double zf = std::min(pos(mi - nj), static_cast<double>(ni));
  return aii * zf + pos(aii - aij) * (std::min(mi, ni) - zf);
}

}  // namespace

double f_level(double u, double a1, double u1, double a2, double u2) {
  if (a1 >= a2)
    return std::min(u, u1) * pos(a1) + std::min(pos(u - u1), u2) * pos(a2);
  return std::min(u, u2) * pos(a2) + std::min(pos(u - u2), u1) * pos(a1);
}

GdofRegion gdof_region(const AntennaConfig& config, const ScalingExponents& a) {
  require_config(config);
  const double m1 = config.m1, n1 = config.n1, m2 = config.m2, n2 = config.n2;

  const double f1 = f_level(n1, a.a11, m1, a.a21, m2);
  const double f2 = f_level(n2, a.a22, m2, a.a12, m1);
  const double tail1 = surviving_direct(a.a11, a.a12, config.m1, config.n1, config.n2);
  const double tail2 = surviving_direct(a.a22, a.a21, config.m2, config.n2, config.n1);

  GdofRegion region{{}, config, a};
  region.constraints[0] = {a.a11, 0.0, f1};
  region.constraints[1] = {0.0, a.a22, f2};
  region.constraints[2] = {a.a11, 0.0, a.a12 * std::min(m1, n2) + tail1};
  region.constraints[3] = {0.0, a.a22, a.a21 * std::min(m2, n1) + tail2};
  region.constraints[4] = {a.a11, a.a22, f2 + tail1};
  region.constraints[5] = {a.a11, a.a22, f1 + tail2};
  return region;
}

double symmetric_point(const GdofRegion& region) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : region.constraints) {
    const double w = c.c1 + c.c2;
    if (w > 0.0) d = std::min(d, c.rhs / w);
  }
  return std::max(d, 0.0);
}

double symmetric_gdof_pf(int m, int n, double alpha) {
  if (m < 1 || n < 1) throw SchemaError("symmetric_gdof_pf: antenna counts must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw SchemaError("symmetric_gdof_pf: alpha must be finite and nonnegative");
  const double nn = std::min(m, n);  // roles of m and n interchangeable
  const double mm = std::max(m, n);
  const double k = pos(2.0 * nn - mm);
  if (alpha <= 1.0) return nn - 0.5 * alpha * k;
  return nn * 0.5 * (alpha + 1.0) - 0.5 * k;
}

double symmetric_gdof_nf(int m, int n, double alpha) {
  if (m < 1 || n < 1) throw SchemaError("symmetric_gdof_nf: antenna counts must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw SchemaError("symmetric_gdof_nf: alpha must be finite and nonnegative");
  const double nn = std::min(m, n);
  const double mm = std::max(m, n);
  const double k = pos(2.0 * nn - mm);
  if (alpha <= 0.5) return nn - alpha * k;
  if (alpha <= 2.0 / 3.0) return nn - (1.0 - alpha) * k;
  if (alpha <= 1.0) return nn - 0.5 * alpha * k;
  return std::min(nn, nn * 0.5 * (alpha + 1.0) - 0.5 * k);
}

SixBounds empirical_slope(const AntennaConfig& config, const ScalingExponents& a,
                          std::uint64_t seed, double snr_lo, double snr_hi) {
  require_config(config);
  if (!(snr_lo > 1.0) || !(snr_hi > snr_lo))
    throw SchemaError("empirical_slope: need 1 < snr_lo < snr_hi");
  auto gains_at = [&](double snr) {
    return LinkGains{std::pow(snr, a.a11), std::pow(snr, a.a12), std::pow(snr, a.a21),
                     std::pow(snr, a.a22)};
  };
  ChannelInstance lo = random_channel(config, gains_at(snr_lo), seed);
  ChannelInstance hi = lo;
  hi.gains = gains_at(snr_hi);
  const SixBounds blo = six_bounds_zero(lo);
  const SixBounds bhi = six_bounds_zero(hi);
  const double span = std::log2(snr_hi) - std::log2(snr_lo);
  SixBounds out;
  for (int k = 0; k < 6; ++k) out.i[k] = (bhi.i[k] - blo.i[k]) / span;
  return out;
}

std::vector<double> alpha_grid(int m, int n, double alpha_max, double step) {
  if (m < 1 || n < 1) throw SchemaError("alpha_grid: antenna counts must be >= 1");
  if (!(alpha_max > 0.0) || !(step > 0.0))
    throw SchemaError("alpha_grid: alpha_max and step must be positive");
  std::vector<double> grid;
  for (double a = 0.0; a <= alpha_max + 1e-12; a += step) grid.push_back(std::min(a, alpha_max));
  const double ratio = static_cast<double>(std::max(m, n)) / std::min(m, n);
  for (double bp : {0.5, 2.0 / 3.0, 1.0, 3.0 - ratio, 2.0})
    if (bp > 0.0 && bp <= alpha_max) grid.push_back(bp);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());
  return grid;
}

}  // namespace icfb
