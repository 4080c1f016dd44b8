#include "icfb/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace icfb {

namespace {

constexpr double kFailedTrial = -1e9;  // margin recorded when a trial throws

double psd_margin(const CMatrix& a, double tol) {
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return lo + tol * std::max(1.0, hi);
}

double log2_abs_det(const CMatrix& m) {
  Eigen::PartialPivLU<CMatrix> lu(m);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    acc += std::log2(std::abs(lu.matrixLU()(k, k)));
  return acc;
}

int draw_dim(std::mt19937_64& rng, int max_dim) {
  return std::uniform_int_distribution<int>(1, max_dim)(rng);
}

double draw_gain(std::mt19937_64& rng, const std::vector<double>& grid) {
  if (grid.empty()) return 1.0;
  return grid[std::uniform_int_distribution<std::size_t>(0, grid.size() - 1)(rng)];
}

ChannelInstance draw_channel(std::uint64_t seed, int max_dim,
                             const std::vector<double>& grid) {
  std::mt19937_64 rng(seed);
  AntennaConfig cfg{draw_dim(rng, max_dim), draw_dim(rng, max_dim),
                    draw_dim(rng, max_dim), draw_dim(rng, max_dim)};
  LinkGains g{draw_gain(rng, grid), draw_gain(rng, grid), draw_gain(rng, grid),
              draw_gain(rng, grid)};
  return random_channel(cfg, g, derive_seed(seed, 0xC4));
}

template <typename Trial>
PropertyVerdict run_property(const char* id, std::uint64_t tag, const VerifyOptions& opt,
                             Trial&& trial) {
  PropertyVerdict v;
  v.property_id = id;
  v.trials = opt.trials;
  v.seed = opt.seed;
  const std::uint64_t base = derive_seed(opt.seed, tag);
  long failures = 0;
  double worst = std::numeric_limits<double>::infinity();

  auto one = [&](long t) {
    double m;
    try {
      m = trial(t, derive_seed(base, static_cast<std::uint64_t>(t)));
    } catch (const std::exception&) {
      m = kFailedTrial;
    }
    return m;
  };

  if (opt.parallel) {
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : failures) reduction(min : worst) schedule(dynamic)
#endif
    for (long t = 0; t < opt.trials; ++t) {
      const double m = one(t);
      if (m < 0.0) ++failures;
      worst = std::min(worst, m);
    }
  } else {
    for (long t = 0; t < opt.trials; ++t) {
      const double m = one(t);
      if (m < 0.0) ++failures;
      worst = std::min(worst, m);
    }
  }
  v.failures = failures;
  v.worst_margin = worst;
  return v;
}

}  // namespace

std::string verdict_json_line(const PropertyVerdict& v) {
  nlohmann::ordered_json j;
  j["property_id"] = v.property_id;
  j["trials"] = v.trials;
  j["failures"] = v.failures;
  j["worst_margin"] = v.worst_margin;
  j["seed"] = v.seed;
  j["pass"] = v.pass();
  return j.dump();
}

PropertyVerdict check_L_monotone(const VerifyOptions& opt) {
  return run_property("L_monotone", 1, opt, [&](long, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const int m = draw_dim(rng, opt.max_dim);
    const int n = draw_dim(rng, opt.max_dim);
    const CMatrix a = random_complex_matrix(m, m, derive_seed(s, 1));
    const CMatrix b = random_complex_matrix(m, m, derive_seed(s, 2));
    const CMatrix sm = random_complex_matrix(m, n, derive_seed(s, 3));
    const HermitianMatrix k1(a * a.adjoint(), 1e-6);
    const HermitianMatrix k2(k1.mat() + b * b.adjoint(), 1e-6);
    const auto l1 = L_operator(k1, sm);
    const auto l2 = L_operator(k2, sm);
    return psd_margin(l2.mat() - l1.mat(), 1e-8);
  });
}

PropertyVerdict check_block_det(const VerifyOptions& opt) {
  return run_property("block_det", 2, opt, [&](long, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const int p = draw_dim(rng, opt.max_dim);
    const int q = draw_dim(rng, opt.max_dim);
    // diagonal boost keeps the pivot blocks invertible
    const CMatrix a = random_complex_matrix(p, p, derive_seed(s, 1)) +
                      3.0 * CMatrix::Identity(p, p);
    const CMatrix d = random_complex_matrix(q, q, derive_seed(s, 2)) +
                      3.0 * CMatrix::Identity(q, q);
    const CMatrix b = random_complex_matrix(p, q, derive_seed(s, 3));
    const CMatrix c = random_complex_matrix(q, p, derive_seed(s, 4));
    CMatrix full(p + q, p + q);
    full.topLeftCorner(p, p) = a;
    full.topRightCorner(p, q) = b;
    full.bottomLeftCorner(q, p) = c;
    full.bottomRightCorner(q, q) = d;
    const double direct = log2_abs_det(full);
    const double via_a =
        log2_abs_det(a) + log2_abs_det(d - c * Eigen::PartialPivLU<CMatrix>(a).solve(b));
    const double via_d =
        log2_abs_det(d) + log2_abs_det(a - b * Eigen::PartialPivLU<CMatrix>(d).solve(c));
    const double scale = std::max(1.0, std::abs(direct));
    const double err =
        std::max(std::abs(direct - via_a), std::abs(direct - via_d)) / scale;
    return 1e-8 - err;
  });
}

PropertyVerdict check_det_bound(const VerifyOptions& opt) {
  return run_property("det_bound", 3, opt, [&](long, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const int rows = draw_dim(rng, opt.max_dim);
    const int n = draw_dim(rng, opt.max_dim);
    const double scale =
        std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 6.0)(rng));
    const CMatrix sm = scale * random_complex_matrix(rows, n, derive_seed(s, 1));
    const CMatrix v = sm.adjoint() * sm;
    // evaluate the displayed matrix through the eigenvalues of V: each
    // eigenvalue maps to 1 + v - v^2/(1+v) = 1 + v/(1+v), which stays
    // accurate when ||S|| reaches 1e6
    Eigen::SelfAdjointEigenSolver<CMatrix> es(v, Eigen::EigenvaluesOnly);
    double val = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double ev = std::max(0.0, es.eigenvalues()(k));
      val += std::log2(1.0 + ev / (1.0 + ev));
    }
    return static_cast<double>(n) + 1e-6 - val;
  });
}

PropertyVerdict check_gram_psd(const VerifyOptions& opt) {
  return run_property("gram_psd", 4, opt, [&](long, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const int rows = draw_dim(rng, opt.max_dim);
    const int n = draw_dim(rng, opt.max_dim);
    const double scale =
        std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
    const CMatrix sm = scale * random_complex_matrix(rows, n, derive_seed(s, 1));
    const CMatrix x =
        Eigen::PartialPivLU<CMatrix>(CMatrix::Identity(n, n) + sm.adjoint() * sm)
            .solve(sm.adjoint());
    return psd_margin(sm * x, 1e-9);
  });
}

PropertyVerdict check_diagonal_identity(const VerifyOptions& opt) {
  return run_property("diagonal_identity", 5, opt, [&](long t, std::uint64_t s) {
    std::mt19937_64 rng(s);
    const int da = draw_dim(rng, opt.max_dim);
    const int db = draw_dim(rng, opt.max_dim);
    // alternate the wide (M >= N) and tall (M < N) shapes
    const int m = t % 2 == 0 ? std::max(da, db) : std::min(da, db);
    const int n = t % 2 == 0 ? std::min(da, db) : std::max(da, db);
    const int mn = std::min(m, n);
    std::normal_distribution<double> comp(0.0, 1.0 / std::sqrt(2.0));
    CMatrix sigma = CMatrix::Zero(n, m);
    Eigen::VectorXd lam(mn);
    for (int k = 0; k < mn; ++k) {
      const Complex sk(comp(rng), comp(rng));
      sigma(k, k) = sk;
      lam(k) = std::norm(sk);
    }
    CMatrix mid = CMatrix::Zero(n, n);
    for (int k = 0; k < mn; ++k) mid(k, k) = 1.0 / (1.0 + lam(k));
    for (int k = mn; k < n; ++k) mid(k, k) = 1.0;
    CMatrix rhs = CMatrix::Zero(m, m);
    for (int k = 0; k < mn; ++k) rhs(k, k) = 1.0 - 1.0 / (1.0 + lam(k));
    const double err = (sigma.adjoint() * mid * sigma - rhs).cwiseAbs().maxCoeff();
    return 1e-12 - err;
  });
}

PropertyVerdict check_appendix_c(const VerifyOptions& opt) {
  return run_property("appendix_c", 6, opt, [&](long t, std::uint64_t s) {
    const ChannelInstance ch = draw_channel(s, opt.max_dim, opt.gains_grid);
    const QStyle style =
        t % 3 == 0 ? QStyle::zero : (t % 3 == 1 ? QStyle::interior : QStyle::boundary);
    const auto q = sample_cross_covariance(ch.config.m1, ch.config.m2,
                                           derive_seed(s, 0x9), style);
    const SixBounds with_q = six_bounds(ch, q);
    const SixBounds zero = six_bounds_zero(ch);
    const double n1 = ch.config.n1, n2 = ch.config.n2;
    const std::array<double, 6> delta{n1, n2, 0.0, 0.0, n2, n1};
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 6; ++k)
      margin = std::min(margin, zero.i[k] + delta[k] + 1e-8 - with_q.i[k]);
    return margin;
  });
}

PropertyVerdict check_reciprocity(const VerifyOptions& opt) {
  return run_property("reciprocity", 7, opt, [&](long, std::uint64_t s) {
    const ChannelInstance ch = draw_channel(s, opt.max_dim, opt.gains_grid);
    const SixBounds fwd = six_bounds_zero(ch);
    const SixBounds rev = six_bounds_zero(reciprocal(ch));
    // I1=I3', I2=I4', I3=I1', I4=I2', I5=I6', I6=I5'
    const std::array<int, 6> pair{2, 3, 0, 1, 5, 4};
    double worst = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double rel = std::abs(fwd.i[k] - rev.i[pair[k]]) /
                         std::max(1.0, std::abs(fwd.i[k]));
      worst = std::max(worst, rel);
    }
    return 1e-8 - worst;
  });
}

PropertyVerdict check_power_split(const VerifyOptions& opt) {
  return run_property("power_split", 8, opt, [&](long, std::uint64_t s) {
    const ChannelInstance ch = draw_channel(s, opt.max_dim, opt.gains_grid);
    const PowerSplit ps = power_split(ch);
    const int m1 = ch.config.m1, m2 = ch.config.m2;
    double margin = std::numeric_limits<double>::infinity();
    for (const CMatrix* k : {&ps.k1p, &ps.k1u, &ps.k2p, &ps.k2u})
      margin = std::min(margin, psd_margin(*k, 1e-9));
    const double sum_err =
        std::max((ps.k1p + ps.k1u - CMatrix::Identity(m1, m1)).cwiseAbs().maxCoeff(),
                 (ps.k2p + ps.k2u - CMatrix::Identity(m2, m2)).cwiseAbs().maxCoeff());
    margin = std::min(margin, 1e-8 - sum_err);
    margin = std::min(margin, noise_floor_margin(ch) + 1e-9);
    return margin;
  });
}

std::vector<PropertyVerdict> run_all(const VerifyOptions& opt) {
  return {check_L_monotone(opt),  check_block_det(opt),
          check_det_bound(opt),   check_gram_psd(opt),
          check_diagonal_identity(opt), check_appendix_c(opt),
          check_reciprocity(opt), check_power_split(opt)};
}

}  // namespace icfb
