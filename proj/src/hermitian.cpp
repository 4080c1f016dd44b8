#include "icfb/hermitian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <sstream>

namespace icfb {

namespace {

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

CMatrix ridge_of(const CMatrix& m) {
  const double eps = 1e-10 * std::abs(m.trace()) / static_cast<double>(m.rows());
  return CMatrix::Identity(m.rows(), m.cols()) * std::max(eps, 1e-300);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined word
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CMatrix random_complex_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> comp(0.0, 1.0 / std::sqrt(2.0));
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double re = comp(rng);
      const double im = comp(rng);
      m(r, c) = Complex(re, im);
    }
  return m;
}

HermitianMatrix::HermitianMatrix(const CMatrix& a, double herm_tol) {
  if (a.rows() != a.cols()) throw NumericError("HermitianMatrix: matrix not square");
  const double scale = std::max(1.0, max_abs(a));
  const double dev = max_abs(a - a.adjoint());
  if (dev > herm_tol * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: deviation from Hermitian " << dev << " exceeds tolerance";
    throw NumericError(os.str());
  }
  m_ = 0.5 * (a + a.adjoint().eval());
}

bool is_psd(const HermitianMatrix& a, double tol) {
  if (a.dim() == 0) return true;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.mat(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return lo >= -tol * std::max(1.0, hi);
}

double logdet2(const HermitianMatrix& a) {
  auto try_llt = [](const CMatrix& m, double& out) {
    Eigen::LLT<CMatrix> llt(m);
    if (llt.info() != Eigen::Success) return false;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      const double d = llt.matrixL()(k, k).real();
      if (!(d > 0.0) || !std::isfinite(d)) return false;
      acc += std::log2(d);
    }
    out = 2.0 * acc;
    return true;
  };
  double v = 0.0;
  if (try_llt(a.mat(), v)) return v;
  if (try_llt(a.mat() + ridge_of(a.mat()), v)) return v;
  throw NumericError("logdet2: matrix not positive definite");
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw NumericError("loewner_leq: dimension mismatch");
  return is_psd(HermitianMatrix(b.mat() - a.mat(), 1e-6), tol);
}

CMatrix block_inverse_apply(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                            const CMatrix& d, const CMatrix& rhs) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols())
    throw NumericError("block_inverse_apply: blocks not conformal");
  const Eigen::Index n = a.rows() + c.rows();
  if (rhs.rows() != n) throw NumericError("block_inverse_apply: rhs dimension mismatch");
  CMatrix m(n, a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.topRightCorner(b.rows(), b.cols()) = b;
  m.bottomLeftCorner(c.rows(), c.cols()) = c;
  m.bottomRightCorner(d.rows(), d.cols()) = d;

  // Symmetric equilibration by exact powers of two: the assembled system
  // mixes unit blocks with rho-scaled blocks (rho up to 1e8), and scaling
  // keeps the LU forward error at the level of the equilibrated condition
  // number instead.
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double row_max = m.row(i).cwiseAbs().maxCoeff();
    scale(i) = row_max > 0.0 ? std::exp2(-std::round(0.5 * std::log2(row_max))) : 1.0;
  }
  const CMatrix ms = scale.asDiagonal() * m * scale.asDiagonal();
  const CMatrix rhs_s = scale.asDiagonal() * rhs;

  auto solve = [&](const CMatrix& sys, double& rcond) {
    Eigen::PartialPivLU<CMatrix> lu(sys);
    rcond = lu.rcond();
    CMatrix z = lu.solve(rhs_s);
    z += lu.solve(CMatrix(rhs_s - sys * z));  // one step of refinement
    return CMatrix(scale.asDiagonal() * z);
  };
  double rcond = 0.0;
  CMatrix x = solve(ms, rcond);
  if (!(rcond > 1.0 / kConditionThreshold) || !x.allFinite()) {
    x = solve(ms + ridge_of(ms), rcond);
    if (!(rcond > 1.0 / kConditionThreshold) || !x.allFinite()) {
      std::ostringstream os;
      os << "block_inverse_apply: system ill-conditioned, rcond=" << rcond;
      throw NumericError(os.str());
    }
  }
  return x;
}

CrossCovariance::CrossCovariance(CMatrix q, double tol) : q_(std::move(q)) {
  if (q_.size() > 0) {
    Eigen::JacobiSVD<CMatrix> svd(q_);
    if (svd.singularValues().maxCoeff() > 1.0 + tol)
      throw NumericError("CrossCovariance: largest singular value exceeds 1");
  }
}

CrossCovariance sample_cross_covariance(int m1, int m2, std::uint64_t seed, QStyle style) {
  if (style == QStyle::zero) return CrossCovariance::zero(m1, m2);
  CMatrix g = random_complex_matrix(m1, m2, seed);
  Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  if (style == QStyle::boundary) {
    s.setOnes();
  } else {
    std::mt19937_64 rng(derive_seed(seed, 0x51));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = uni(rng);
  }
  CMatrix q = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
  return CrossCovariance(std::move(q));
}

HermitianMatrix L_operator(const HermitianMatrix& k, const CMatrix& s) {
  const CMatrix& km = k.mat();
  if (km.rows() != s.rows()) throw NumericError("L_operator: dimension mismatch");
  const Eigen::Index n = s.cols();
  const CMatrix inner = CMatrix::Identity(n, n) + s.adjoint() * km * s;
  Eigen::PartialPivLU<CMatrix> lu(inner);
  double rcond = lu.rcond();
  CMatrix solved;
  if (rcond > 1.0 / kConditionThreshold) {
    solved = lu.solve(CMatrix(s.adjoint() * km));
  } else {
    Eigen::PartialPivLU<CMatrix> lu2(inner + ridge_of(inner));
    if (!(lu2.rcond() > 1.0 / kConditionThreshold))
      throw NumericError("L_operator: inner system ill-conditioned");
    solved = lu2.solve(CMatrix(s.adjoint() * km));
  }
  return HermitianMatrix(km - km * s * solved, 1e-6);
}

}  // namespace icfb
