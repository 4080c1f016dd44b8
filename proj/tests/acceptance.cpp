// End-to-end acceptance run: one line of output per criterion, exit status 0
// only if every criterion passes.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "icfb/bounds.hpp"
#include "icfb/gdof.hpp"
#include "icfb/verify.hpp"

using namespace icfb;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " — "
            << detail << "\n";
  if (!pass) ++g_failures;
}

ChannelInstance random_small_channel(std::uint64_t seed, int max_dim) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, max_dim);
  const double grid[] = {1.0, 1e2, 1e4, 1e8};
  std::uniform_int_distribution<int> pick(0, 3);
  const AntennaConfig cfg{dim(rng), dim(rng), dim(rng), dim(rng)};
  const LinkGains g{grid[pick(rng)], grid[pick(rng)], grid[pick(rng)], grid[pick(rng)]};
  return random_channel(cfg, g, derive_seed(seed, 0xC4));
}

// 1. fixture bounds against the frozen high-precision reference
void criterion_1() {
  const auto t0 = Clock::now();
  const SixBounds z = six_bounds_zero(load_channel(ICFB_FIG3_PATH));
  const double want[6] = {129.5868972470807552038263, 76.99825985331436230860358,
                          100.7385171946282717380738, 105.6806621055620985008009,
                          100.7390702242707703782824, 129.5870652290989142629841};
  double worst = 0.0;
  for (int k = 0; k < 6; ++k)
    worst = std::max(worst, std::abs(z.i[k] - want[k]) / std::abs(want[k]));
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "fixture bounds within " << worst << " relative of the 50-digit reference in "
     << dt << " s";
  report(1, worst <= 1e-8 && dt < 1.0, os.str());
}

// 2. constant-gap certificate over the fixture and random channels
void criterion_2() {
  const auto t0 = Clock::now();
  long checked = 0, bad = 0;
  double worst_excess = -1e9;
  auto check_one = [&](const ChannelInstance& ch) {
    const GapReport rep = gap_certificate(ch);
    const double n1 = ch.config.n1, n2 = ch.config.n2;
    const double excess = std::max({rep.gaps.g1 - (2 * n1 + n2),
                                    rep.gaps.g2 - (n1 + 2 * n2),
                                    rep.gaps.g12 - 2 * (n1 + n2)});
    worst_excess = std::max(worst_excess, excess);
    ++checked;
    if (!rep.inner_in_outer || excess > 1e-8) ++bad;
  };
  check_one(load_channel(ICFB_FIG3_PATH));
  for (std::uint64_t s = 0; s < 100; ++s) check_one(random_small_channel(derive_seed(20, s), 6));
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << checked << " channels, " << bad << " gap violations, worst excess " << worst_excess
     << " bits, " << dt << " s";
  report(2, bad == 0 && dt < 10.0, os.str());
}

VerifyOptions acceptance_options(long trials, int max_dim) {
  VerifyOptions opt;
  opt.trials = trials;
  opt.seed = 90210;
  opt.max_dim = max_dim;
  return opt;
}

// 3. I_k(Q) never exceeds I_k(0) plus the fixed per-constraint offsets
void criterion_3() {
  const auto t0 = Clock::now();
  const PropertyVerdict v = check_appendix_c(acceptance_options(500, 6));
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << v.failures << "/" << v.trials << " failures, worst margin " << v.worst_margin
     << ", " << dt << " s";
  report(3, v.pass() && dt < 30.0, os.str());
}

// 4. reciprocity pairings plus agreement of the two zero-Q regions
void criterion_4() {
  const auto t0 = Clock::now();
  const PropertyVerdict v = check_reciprocity(acceptance_options(500, 6));
  double worst_region = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ChannelInstance ch = random_small_channel(derive_seed(40, s), 6);
    const TriBoundRegion a = tri_region(six_bounds_zero(ch));
    const TriBoundRegion b = tri_region(six_bounds_zero(reciprocal(ch)));
    // relative: values run to hundreds of bits, beyond absolute 1e-8 in double
    const double scale = std::max(1.0, a.b12);
    worst_region = std::max({worst_region, std::abs(a.b1 - b.b1) / scale,
                             std::abs(a.b2 - b.b2) / scale,
                             std::abs(a.b12 - b.b12) / scale});
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << v.failures << "/" << v.trials << " pairing failures, worst region deviation "
     << worst_region << " relative, " << dt << " s";
  report(4, v.pass() && worst_region <= 1e-8 && dt < 30.0, os.str());
}

// 5. the five matrix-lemma properties
void criterion_5() {
  const auto t0 = Clock::now();
  const VerifyOptions opt = acceptance_options(1000, 8);
  const PropertyVerdict vs[] = {check_L_monotone(opt), check_block_det(opt),
                                check_det_bound(opt), check_gram_psd(opt),
                                check_diagonal_identity(opt)};
  long failures = 0;
  std::string first_fail;
  for (const auto& v : vs) {
    failures += v.failures;
    if (!v.pass() && first_fail.empty()) first_fail = v.property_id;
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "5 properties x 1000 trials, " << failures << " failures";
  if (!first_fail.empty()) os << " (first: " << first_fail << ")";
  os << ", " << dt << " s";
  report(5, failures == 0 && dt < 60.0, os.str());
}

// 6. power-split covariances stay valid and below the noise floor
void criterion_6() {
  const auto t0 = Clock::now();
  const PropertyVerdict v = check_power_split(acceptance_options(1000, 8));
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << v.failures << "/" << v.trials << " failures, worst margin " << v.worst_margin
     << ", " << dt << " s";
  report(6, v.pass(), os.str());
}

// 7. GDoF closed forms: grid equality, feedback vs no-feedback ordering,
// transmit-antenna saturation
void criterion_7() {
  bool ok = true;
  std::ostringstream why;
  const std::pair<int, int> shapes[] = {{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 3}};
  double worst_eq = 0.0;
  for (const auto& [m, n] : shapes) {
    const int nn = std::min(m, n), mm = std::max(m, n);
    const double k = std::max(0, 2 * nn - mm);
    for (double alpha : alpha_grid(m, n, 3.0, 0.1)) {
      const GdofRegion region =
          gdof_region({m, n, m, n}, ScalingExponents(1.0, alpha, alpha, 1.0));
      const double pf = symmetric_gdof_pf(m, n, alpha);
      const double nf = symmetric_gdof_nf(m, n, alpha);
      worst_eq = std::max(worst_eq, std::abs(symmetric_point(region) - pf));
      if (pf < nf - 1e-12) {
        ok = false;
        why << "PF below NF at (" << m << "," << n << "), alpha=" << alpha << "; ";
      }
      const bool on_equal_branch = alpha >= 2.0 / 3.0 - 1e-12 && alpha <= 1.0 + 1e-12;
      if (on_equal_branch && std::abs(pf - nf) > 1e-12) {
        ok = false;
        why << "PF != NF inside [2/3,1] at (" << m << "," << n << "), alpha=" << alpha
            << "; ";
      }
      const bool expect_strict =
          (k > 0 && alpha > 1e-12 && alpha < 2.0 / 3.0 - 1e-12) ||
          alpha > std::max(1.0, 3.0 - double(mm) / nn) + 1e-9;
      if (expect_strict && !(pf > nf + 1e-12)) {
        ok = false;
        why << "missing strict gain at (" << m << "," << n << "), alpha=" << alpha << "; ";
      }
    }
  }
  if (worst_eq > 1e-12) {
    ok = false;
    why << "grid equality off by " << worst_eq << "; ";
  }
  for (int n : {1, 2, 3})
    for (double alpha : {0.0, 0.5, 1.0, 1.5, 2.5})
      for (int extra : {1, 2, 4})
        if (symmetric_gdof_pf(2 * n + extra, n, alpha) !=
            symmetric_gdof_pf(2 * n, n, alpha)) {
          ok = false;
          why << "saturation broken at N=" << n << ", alpha=" << alpha << "; ";
        }
  std::ostringstream os;
  os << "closed-form grid deviation " << worst_eq
     << ", PF/NF ordering and saturation checked on 5 shapes";
  if (!ok) os << " [" << why.str() << "]";
  report(7, ok, os.str());
}

// 8. finite-SNR slopes of the zero-Q bounds against the prelog region
void criterion_8() {
  const auto t0 = Clock::now();
  const double snr_lo = std::exp2(30.0), snr_hi = std::exp2(40.0);
  const std::array<int, 4> sets[] = {{1, 1, 1, 1}, {2, 1, 2, 1}, {3, 2, 3, 2}};
  double worst = 0.0;
  long bad = 0;
  for (const auto& st : sets)
    for (double alpha : {0.5, 1.0, 2.0})
      for (std::uint64_t rep = 0; rep < 20; ++rep) {
        const AntennaConfig cfg{st[0], st[1], st[2], st[3]};
        const ScalingExponents a(1.0, alpha, alpha, 1.0);
        const SixBounds slope =
            empirical_slope(cfg, a, derive_seed(80, rep * 100 + std::uint64_t(alpha * 10)),
                            snr_lo, snr_hi);
        const GdofRegion region = gdof_region(cfg, a);
        for (int k = 0; k < 6; ++k) {
          const double err = std::abs(slope.i[k] - region.constraints[k].rhs);
          worst = std::max(worst, err);
          if (err > 0.05) ++bad;
        }
      }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "180 channels x 6 constraints, " << bad << " slope mismatches, worst deviation "
     << worst << ", " << dt << " s";
  report(8, bad == 0 && dt < 60.0, os.str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename());
  std::sort(names.begin(), names.end());
  for (const auto& name : names)
    if (!fs::exists(b / name) || slurp(a / name) != slurp(b / name)) return false;
  return !names.empty();
}

// 9. repeated runs with the same seed produce byte-identical outputs
void criterion_9() {
  const fs::path base = fs::temp_directory_path() / "icfb_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  auto run = [&](const std::string& args, const fs::path& log) {
    const std::string cmd =
        std::string(ICFB_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    return std::system(cmd.c_str());
  };
  bool ok = true;
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path out = base / ("region" + std::to_string(rep));
    const int rc = run("region " ICFB_FIG3_PATH " --sample-q 20 --seed 11 --out " +
                           out.string(),
                       base / ("region" + std::to_string(rep) + ".log"));
    ok = ok && rc == 0;
  }
  // the region log echoes the output directory, so only the files are compared
  ok = ok && dirs_identical(base / "region0", base / "region1");
  for (int rep = 0; rep < 2; ++rep) {
    const int rc = run("verify --trials 50 --seed 33",
                       base / ("verify" + std::to_string(rep) + ".log"));
    ok = ok && rc == 0;
  }
  ok = ok && slurp(base / "verify0.log") == slurp(base / "verify1.log");
  report(9, ok, "region and verify runs repeat byte-identically under a fixed seed");
  fs::remove_all(base);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::cout << (g_failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: FAILURES present")
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
