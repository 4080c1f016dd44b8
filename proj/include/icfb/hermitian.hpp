#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "icfb/channel.hpp"
#include "icfb/errors.hpp"

namespace icfb {

// Default tolerances. PSD tests are relative to the largest eigenvalue;
// Hermitian acceptance is relative to the max entry magnitude.
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kHermTol = 1e-8;
inline constexpr double kConditionThreshold = 1e12;

/// Complex Hermitian matrix; input is symmetrized to (A + A^H)/2 at
/// construction and rejected if it deviates beyond tolerance.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& a, double herm_tol = kHermTol);

  const CMatrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  static HermitianMatrix identity(int n) { return HermitianMatrix(CMatrix::Identity(n, n)); }
  static HermitianMatrix zero(int n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

 private:
  CMatrix m_;
};

/// True iff lambda_min(a) >= -tol * max(1, lambda_max(a)).
bool is_psd(const HermitianMatrix& a, double tol = kPsdTol);

/// log2 det(a) for positive definite a via Cholesky; falls back to a small
/// ridge (1e-10 * trace/n) when the factorization fails, and throws
/// NumericError if the matrix is not PD beyond that.
double logdet2(const HermitianMatrix& a);

/// Loewner order: a <= b iff b - a is PSD.
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol = kPsdTol);

/// Solves [[A, B], [C, D]] x = rhs with one LU solve on the assembled
/// matrix. Ill-conditioned systems get a trace-scaled ridge; if the ridge
/// does not recover a usable solve, throws NumericError with the estimate.
CMatrix block_inverse_apply(const CMatrix& a, const CMatrix& b, const CMatrix& c,
                            const CMatrix& d, const CMatrix& rhs);

/// Cross-covariance Q = E[X1 X2^H], feasible iff QQ^H <= I
/// (largest singular value <= 1).
class CrossCovariance {
 public:
  explicit CrossCovariance(CMatrix q, double tol = kPsdTol);
  static CrossCovariance zero(int m1, int m2) {
    return CrossCovariance(CMatrix::Zero(m1, m2));
  }
  const CMatrix& q() const { return q_; }

 private:
  CMatrix q_;
};

enum class QStyle { boundary, interior, zero };

/// Random feasible cross-covariance: Gaussian matrix, SVD, singular values
/// set to 1 (boundary), uniform [0,1] (interior), or all zero.
CrossCovariance sample_cross_covariance(int m1, int m2, std::uint64_t seed, QStyle style);

/// K - K S (I + S^H K S)^-1 S^H K, symmetrized. K is MxM PSD, S is MxN.
HermitianMatrix L_operator(const HermitianMatrix& k, const CMatrix& s);

/// Per-trial stream derivation so parallel trials stay deterministic.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Random complex matrix with i.i.d. CN(0,1) entries.
CMatrix random_complex_matrix(int rows, int cols, std::uint64_t seed);

}  // namespace icfb
