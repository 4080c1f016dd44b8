#include "icfb/bounds.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace icfb {

namespace {

using nlohmann::ordered_json;

CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

double ld(const CMatrix& m) { return logdet2(HermitianMatrix(m, 1e-6)); }

// log2 det(I + rho * H W H^H) with W = I - Q Q^H (or I - Q^H Q), clamped to
// the PSD cone so a boundary Q cannot push the argument below I by roundoff.
double ld_residual(const CMatrix& h, double rho, const CMatrix& w_raw) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (w_raw + w_raw.adjoint()));
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  const CMatrix p = h * es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
  return ld(eye(h.rows()) + rho * p * p.adjoint());
}

double ld_constraint(const CMatrix& m, int index) {
  try {
    return ld(m);
  } catch (const NumericError& e) {
    throw NumericError("constraint i" + std::to_string(index) + ": " + e.what());
  }
}

void require_valid(const ChannelInstance& ch, const char* where) {
  auto rep = validate(ch);
  if (!rep.ok())
    throw SchemaError(std::string(where) + ": invalid channel: " + rep.violations.front());
}

double pos(double x) { return x > 0.0 ? x : 0.0; }

ordered_json region_json(const TriBoundRegion& r) {
  return {{"b1", r.b1}, {"b2", r.b2}, {"b12", r.b12}};
}

// Evaluates the six constraints for a given cross covariance. The Q = 0
// simplified display is the algebraic specialization of the general block
// forms, so both public entry points share this kernel and specialize
// bit-for-bit identically.
SixBounds compute_bounds(const ChannelInstance& ch, const CMatrix& q) {
  const auto& g = ch.gains;
  const int n1 = ch.config.n1, n2 = ch.config.n2;
  const int m1 = ch.config.m1, m2 = ch.config.m2;

  const CMatrix g11 = ch.h11 * ch.h11.adjoint();
  const CMatrix g12 = ch.h12 * ch.h12.adjoint();
  const CMatrix g21 = ch.h21 * ch.h21.adjoint();
  const CMatrix g22 = ch.h22 * ch.h22.adjoint();

  const double s1121 = std::sqrt(g.rho11 * g.rho21);
  const double s2212 = std::sqrt(g.rho22 * g.rho12);
  const double s1112 = std::sqrt(g.rho11 * g.rho12);
  const double s2221 = std::sqrt(g.rho22 * g.rho21);

  // receiver-side combined covariances (first terms of i1, i2, i5, i6)
  const CMatrix rx1 = eye(n1) + g.rho11 * g11 + g.rho21 * g21 +
                      s1121 * (ch.h11 * q * ch.h21.adjoint() +
                               ch.h21 * q.adjoint() * ch.h11.adjoint());
  const CMatrix rx2 = eye(n2) + g.rho22 * g22 + g.rho12 * g12 +
                      s2212 * (ch.h22 * q.adjoint() * ch.h12.adjoint() +
                               ch.h12 * q * ch.h22.adjoint());
  const double i1 = ld_constraint(rx1, 1);
  const double i2 = ld_constraint(rx2, 2);

  // conditional terms shared between i3/i5 and i4/i6
  CMatrix row1(n1, n2 + m2);
  row1.leftCols(n2) = s1112 * ch.h11 * ch.h12.adjoint();
  row1.rightCols(m2) = std::sqrt(g.rho11) * ch.h11 * q;
  const CMatrix b1 = std::sqrt(g.rho12) * ch.h12 * q;
  const CMatrix x1 = block_inverse_apply(eye(n2) + g.rho12 * g12, b1, b1.adjoint(),
                                         eye(m2), row1.adjoint());
  // row * solve is Hermitian in exact arithmetic; symmetrize so LU rounding
  // at high gain cannot trip the Hermitian guard
  const CMatrix s1 = row1 * x1;
  const double cond1 =
      ld_constraint(eye(n1) + g.rho11 * g11 - 0.5 * (s1 + s1.adjoint()), 3);

  CMatrix row2(n2, n1 + m1);
  row2.leftCols(n1) = s2221 * ch.h22 * ch.h21.adjoint();
  row2.rightCols(m1) = std::sqrt(g.rho22) * ch.h22 * q.adjoint();
  const CMatrix b2 = std::sqrt(g.rho21) * ch.h21 * q.adjoint();
  const CMatrix x2 = block_inverse_apply(eye(n1) + g.rho21 * g21, b2, b2.adjoint(),
                                         eye(m1), row2.adjoint());
  const CMatrix s2 = row2 * x2;
  const double cond2 =
      ld_constraint(eye(n2) + g.rho22 * g22 - 0.5 * (s2 + s2.adjoint()), 4);

  const double i3 =
      ld_residual(ch.h12, g.rho12, eye(m1) - q * q.adjoint()) + cond1;
  const double i4 =
      ld_residual(ch.h21, g.rho21, eye(m2) - q.adjoint() * q) + cond2;

  SixBounds out;
  out.i = {i1, i2, i3, i4, i2 + cond1, i1 + cond2};
  return out;
}

}  // namespace

SixBounds six_bounds(const ChannelInstance& ch, const CrossCovariance& qc) {
  require_valid(ch, "six_bounds");
  if (qc.q().rows() != ch.config.m1 || qc.q().cols() != ch.config.m2)
    throw SchemaError("six_bounds: cross-covariance shape must be M1 x M2");
  return compute_bounds(ch, qc.q());
}

SixBounds six_bounds_zero(const ChannelInstance& ch) {
  require_valid(ch, "six_bounds_zero");
  return compute_bounds(ch, CMatrix::Zero(ch.config.m1, ch.config.m2));
}

TriBoundRegion tri_region(const SixBounds& b) {
  return tighten(std::min(b.i[0], b.i[2]), std::min(b.i[1], b.i[3]),
                 std::min(b.i[4], b.i[5]));
}

TriBoundRegion outer_region(const ChannelInstance& ch) {
  return oplus(tri_region(six_bounds_zero(ch)),
               {static_cast<double>(ch.config.n1), static_cast<double>(ch.config.n2)});
}

TriBoundRegion inner_region(const ChannelInstance& ch, InnerMode mode) {
  const SixBounds z = six_bounds_zero(ch);
  const double n1 = ch.config.n1, n2 = ch.config.n2;
  if (mode == InnerMode::Blanket)
    return ominus(tri_region(z), {n1 + n2, n1 + n2});
  const double b1 = std::min(pos(z.i[0] - n1), pos(z.i[2] - (n1 + n2)));
  const double b2 = std::min(pos(z.i[1] - n2), pos(z.i[3] - (n1 + n2)));
  const double b12 = std::min(pos(z.i[4] - (n1 + n2)), pos(z.i[5] - (n1 + n2)));
  return tighten(b1, b2, b12);
}

PowerSplit power_split(const ChannelInstance& ch) {
  require_valid(ch, "power_split");
  // K_ip = I - rho_ij H_ij^H (I + rho_ij H_ij H_ij^H)^-1 H_ij, evaluated
  // through the eigenvalues of rho_ij H_ij^H H_ij so both parts stay PSD
  // at high gain.
  auto split = [](const CMatrix& hij, double rho, CMatrix& kp, CMatrix& ku) {
    const CMatrix scaled = rho * hij.adjoint() * hij;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (scaled + scaled.adjoint()));
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    const Eigen::VectorXd priv = (lam.array() + 1.0).inverse().matrix();
    const CMatrix v = es.eigenvectors();
    kp = v * priv.asDiagonal() * v.adjoint();
    ku = v * (1.0 - priv.array()).matrix().asDiagonal() * v.adjoint();
  };
  PowerSplit out;
  split(ch.h12, ch.gains.rho12, out.k1p, out.k1u);
  split(ch.h21, ch.gains.rho21, out.k2p, out.k2u);
  return out;
}

double noise_floor_margin(const ChannelInstance& ch) {
  // 1 - lambda_max(rho_ij H_ij K_ip H_ij^H), worst case over both users,
  // evaluated through a factor of K_ip to keep the peak accurate at high
  // gain.
  auto margin = [](const CMatrix& hij, double rho) {
    const CMatrix scaled = rho * hij.adjoint() * hij;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (scaled + scaled.adjoint()));
    const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    const CMatrix f =
        std::sqrt(rho) * hij * es.eigenvectors() *
        (lam.array() + 1.0).rsqrt().matrix().asDiagonal();
    Eigen::JacobiSVD<CMatrix> svd(f);
    const double peak = svd.singularValues().size() == 0
                            ? 0.0
                            : svd.singularValues().maxCoeff();
    return 1.0 - peak * peak;
  };
  return std::min(margin(ch.h12, ch.gains.rho12), margin(ch.h21, ch.gains.rho21));
}

ConvexRegion2D sampled_hull(const ChannelInstance& ch, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw SchemaError("sampled_hull: n_samples must be >= 1");
  std::vector<TriBoundRegion> regions;
  regions.push_back(tri_region(six_bounds_zero(ch)));
  for (int k = 0; k < n_samples; ++k) {
    const QStyle style = (k % 2 == 0) ? QStyle::interior : QStyle::boundary;
    const auto q = sample_cross_covariance(ch.config.m1, ch.config.m2,
                                           derive_seed(seed, 0x100 + k), style);
    regions.push_back(tri_region(six_bounds(ch, q)));
  }
  return hull_union(regions);
}

GapReport gap_certificate(const ChannelInstance& ch) {
  require_valid(ch, "gap_certificate");
  const double n1 = ch.config.n1, n2 = ch.config.n2;
  const double m1 = ch.config.m1, m2 = ch.config.m2;

  GapReport rep;
  rep.i_zero = six_bounds_zero(ch);
  rep.inner = inner_region(ch);
  rep.outer = outer_region(ch);
  const ChannelInstance rch = reciprocal(ch);
  rep.inner_reciprocal = inner_region(rch);
  rep.outer_reciprocal = outer_region(rch);

  rep.inner_in_outer = contains(rep.outer, rep.inner);
  rep.inner_in_outer_reciprocal = contains(rep.outer_reciprocal, rep.inner_reciprocal);
  // achievable rates of one channel, shrunk by the reciprocity offsets,
  // must land inside the other channel's outer bound
  rep.cross_forward =
      contains(rep.outer, ominus(rep.inner_reciprocal, {n1 + n2 + m1, n1 + n2 + m2}));
  rep.cross_backward =
      contains(rep.outer_reciprocal, ominus(rep.inner, {m1 + m2 + n1, m1 + m2 + n2}));

  // gap accounting uses the raw constraint triples: tightening can cap one
  // bound with another and inflate the apparent per-constraint difference
  const auto& z = rep.i_zero.i;
  const double og1 = std::min(z[0], z[2]) + n1;
  const double og2 = std::min(z[1], z[3]) + n2;
  const double og12 = std::min(z[4], z[5]) + n1 + n2;
  const double ig1 = std::min(pos(z[0] - n1), pos(z[2] - (n1 + n2)));
  const double ig2 = std::min(pos(z[1] - n2), pos(z[3] - (n1 + n2)));
  const double ig12 = pos(std::min(z[4], z[5]) - (n1 + n2));
  rep.gaps = {og1 - ig1, og2 - ig2, og12 - ig12};
  rep.max_gap_bits = rep.gaps.max();
  return rep;
}

std::string gap_report_json(const ChannelInstance& ch, const GapReport& report) {
  ordered_json j;
  j["channel"] = ordered_json::parse(channel_json(ch));
  j["i_zero"] = report.i_zero.i;
  j["inner"] = region_json(report.inner);
  j["outer"] = region_json(report.outer);
  j["reciprocal"] = {{"inner", region_json(report.inner_reciprocal)},
                     {"outer", region_json(report.outer_reciprocal)}};
  j["containments"] = {{"inner_in_outer", report.inner_in_outer},
                       {"inner_in_outer_reciprocal", report.inner_in_outer_reciprocal},
                       {"cross_forward", report.cross_forward},
                       {"cross_backward", report.cross_backward}};
  j["max_gap_bits"] = report.max_gap_bits;
  return j.dump(2) + "\n";
}

}  // namespace icfb
