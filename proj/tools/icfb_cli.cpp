#include <unistd.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fig3_fixture.hpp"
#include "icfb/bounds.hpp"
#include "icfb/gdof.hpp"
#include "icfb/verify.hpp"

namespace fs = std::filesystem;
using namespace icfb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write " + path.string());
  out << content;
}

void from_db(ChannelInstance& ch) {
  auto lin = [](double db) { return std::pow(10.0, db / 10.0); };
  ch.gains = {lin(ch.gains.rho11), lin(ch.gains.rho12), lin(ch.gains.rho21),
              lin(ch.gains.rho22)};
}

ChannelInstance fig3_channel() {
  const fs::path tmp = fs::temp_directory_path() /
                       ("icfb_fig3_fixture_" + std::to_string(::getpid()) + ".json");
  write_file(tmp, kFig3ChannelJson);
  ChannelInstance ch = load_channel(tmp.string());
  fs::remove(tmp);
  return ch;
}

std::string constraint_line(const GdofConstraint& c) {
  std::ostringstream os;
  os.precision(12);
  if (c.c1 > 0.0 && c.c2 > 0.0)
    os << c.c1 << "*d1 + " << c.c2 << "*d2 <= " << c.rhs;
  else if (c.c1 > 0.0)
    os << c.c1 << "*d1 <= " << c.rhs;
  else
    os << c.c2 << "*d2 <= " << c.rhs;
  return os.str();
}

ConvexRegion2D gdof_polygon(const GdofRegion& region) {
  // in the scaled coordinates (a11*d1, a22*d2) the region is a TriBoundRegion
  const auto& c = region.constraints;
  const double a11 = region.exponents.a11;
  const double a22 = region.exponents.a22;
  const TriBoundRegion scaled = tighten(std::min(c[0].rhs, c[2].rhs),
                                        std::min(c[1].rhs, c[3].rhs),
                                        std::min(c[4].rhs, c[5].rhs));
  ConvexRegion2D poly = to_polygon(scaled);
  for (auto& p : poly.vertices) {
    p.r1 /= a11;
    p.r2 /= a22;
  }
  return poly;
}

std::string curve_csv(int m, int n, double alpha_max, double step) {
  std::ostringstream os;
  os.precision(17);
  os << "alpha,gdof_pf,gdof_nf\n";
  for (double a : alpha_grid(m, n, alpha_max, step))
    os << a << ',' << symmetric_gdof_pf(m, n, a) << ',' << symmetric_gdof_nf(m, n, a)
       << '\n';
  return os.str();
}

int cmd_region(const std::string& channel_file, const fs::path& out_dir, bool db_gains,
               int sample_q, std::uint64_t seed) {
  ChannelInstance ch = load_channel(channel_file);
  if (db_gains) from_db(ch);
  fs::create_directories(out_dir);

  const TriBoundRegion ro0 = tri_region(six_bounds_zero(ch));
  write_file(out_dir / "ro0.csv", region_csv(to_polygon(ro0)));
  write_file(out_dir / "inner.csv", region_csv(to_polygon(inner_region(ch))));
  write_file(out_dir / "outer.csv", region_csv(to_polygon(outer_region(ch))));
  const GapReport report = gap_certificate(ch);
  write_file(out_dir / "gap_report.json", gap_report_json(ch, report));
  if (sample_q > 0)
    write_file(out_dir / "hull.csv", region_csv(sampled_hull(ch, sample_q, seed)));

  std::cout << "region: wrote ro0.csv, inner.csv, outer.csv, gap_report.json"
            << (sample_q > 0 ? ", hull.csv" : "") << " to " << out_dir.string() << "\n"
            << "certificate: " << (report.pass() ? "PASS" : "FAILED")
            << ", max per-constraint gap " << report.max_gap_bits << " bits\n";
  return report.pass() ? kExitOk : kExitVerifyFail;
}

int cmd_gdof(const std::vector<int>& antennas, const std::vector<double>& alphas,
             const fs::path& out_dir) {
  const AntennaConfig cfg{antennas[0], antennas[1], antennas[2], antennas[3]};
  const ScalingExponents a(alphas[0], alphas[1], alphas[2], alphas[3]);
  const GdofRegion region = gdof_region(cfg, a);
  for (const auto& c : region.constraints) std::cout << constraint_line(c) << "\n";
  std::cout << "symmetric point: " << symmetric_point(region) << "\n";
  fs::create_directories(out_dir);
  write_file(out_dir / "gdof_region.csv", region_csv(gdof_polygon(region)));
  return kExitOk;
}

int cmd_gdof_curve(const std::vector<int>& mn, double alpha_max, double step,
                   const fs::path& out_dir) {
  fs::create_directories(out_dir);
  write_file(out_dir / "curve.csv", curve_csv(mn[0], mn[1], alpha_max, step));
  std::cout << "gdof-curve: wrote curve.csv for M=" << mn[0] << ", N=" << mn[1] << "\n";
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt) {
  bool all_pass = true;
  for (const auto& v : run_all(opt)) {
    std::cout << verdict_json_line(v) << "\n";
    all_pass = all_pass && v.pass();
  }
  return all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_reproduce(const std::string& figure, const fs::path& out_dir, double tol) {
  fs::create_directories(out_dir);
  if (figure == "fig2") {
    const ChannelInstance ch = fig3_channel();
    write_file(out_dir / "fig2_ro0.csv",
               region_csv(to_polygon(tri_region(six_bounds_zero(ch)))));
    std::ostringstream os;
    os << "offset,bits\nN1," << ch.config.n1 << "\nN2," << ch.config.n2 << "\nN1+N2,"
       << ch.config.n1 + ch.config.n2 << "\n";
    write_file(out_dir / "fig2_offsets.csv", os.str());
    std::cout << "fig2: wrote fig2_ro0.csv, fig2_offsets.csv\n";
    return kExitOk;
  }
  if (figure == "fig3") {
    const ChannelInstance ch = fig3_channel();
    write_file(out_dir / "fig3_ro0.csv",
               region_csv(to_polygon(tri_region(six_bounds_zero(ch)))));
    write_file(out_dir / "fig3_inner.csv", region_csv(to_polygon(inner_region(ch))));
    write_file(out_dir / "fig3_outer.csv", region_csv(to_polygon(outer_region(ch))));
    std::cout << "fig3: wrote fig3_ro0.csv, fig3_inner.csv, fig3_outer.csv\n"
              << "notice: the figure's no-feedback curves come from cited external "
                 "work and are not reproduced\n";
    return kExitOk;
  }
  if (figure == "fig4") {
    const ChannelInstance ch = fig3_channel();
    const ChannelInstance rch = reciprocal(ch);
    write_file(out_dir / "fig4_inner.csv", region_csv(to_polygon(inner_region(ch))));
    write_file(out_dir / "fig4_outer.csv", region_csv(to_polygon(outer_region(ch))));
    write_file(out_dir / "fig4_inner_reciprocal.csv",
               region_csv(to_polygon(inner_region(rch))));
    write_file(out_dir / "fig4_outer_reciprocal.csv",
               region_csv(to_polygon(outer_region(rch))));
    const TriBoundRegion a = tri_region(six_bounds_zero(ch));
    const TriBoundRegion b = tri_region(six_bounds_zero(rch));
    const double dev = std::max({std::abs(a.b1 - b.b1), std::abs(a.b2 - b.b2),
                                 std::abs(a.b12 - b.b12)});
    std::cout << "fig4: wrote region pairs for the channel and its reciprocal\n"
              << "reciprocal R_o(0) deviation " << dev << " bits ("
              << (dev <= tol * std::max(1.0, a.b12) ? "match" : "MISMATCH") << ")\n";
    return kExitOk;
  }
  if (figure == "fig5") {
    write_file(out_dir / "fig5a.csv", curve_csv(3, 2, 3.0, 0.05));
    write_file(out_dir / "fig5b.csv", curve_csv(4, 2, 3.0, 0.05));
    std::cout << "fig5: wrote fig5a.csv (M=3, N=2) and fig5b.csv (M=4, N=2)\n";
    return kExitOk;
  }
  std::cerr << "error: unknown figure id '" << figure
            << "' (expected fig2, fig3, fig4 or fig5)\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity-region bounds and GDoF for the two-user MIMO interference "
               "channel with feedback"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after the subcommand too

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double tol = 1e-8;
  bool db_gains = false;
  app.add_option("--seed", seed, "PRNG seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--tol", tol, "comparison tolerance");
  app.add_flag("--db-gains", db_gains, "interpret link gains as dB");

  auto* region = app.add_subcommand("region", "inner/outer bounds and gap certificate");
  std::string channel_file;
  int sample_q = 0;
  region->add_option("channel_file", channel_file, "channel JSON file")->required();
  region->add_option("--sample-q", sample_q, "also write the hull over N sampled Q");

  auto* gdof = app.add_subcommand("gdof", "exact GDoF region");
  std::vector<int> antennas;
  std::vector<double> alphas;
  gdof->add_option("--antennas", antennas, "M1 N1 M2 N2")->expected(4)->required();
  gdof->add_option("--alpha", alphas, "a11 a12 a21 a22")->expected(4)->required();

  auto* curve = app.add_subcommand("gdof-curve", "symmetric PF/NF curves over alpha");
  std::vector<int> mn;
  double alpha_max = 3.0, step = 0.1;
  curve->add_option("--antennas", mn, "M N")->expected(2)->required();
  curve->add_option("--alpha-max", alpha_max, "largest alpha");
  curve->add_option("--step", step, "grid step");

  auto* verify = app.add_subcommand("verify", "Monte Carlo property suite");
  long trials = 1000;
  int max_dim = 8;
  bool serial = false;
  verify->add_option("--trials", trials, "trials per property");
  verify->add_option("--max-dim", max_dim, "largest antenna count");
  verify->add_flag("--serial", serial, "use the serial reference path");

  auto* reproduce = app.add_subcommand("reproduce", "figure data from the shipped fixture");
  std::string figure;
  reproduce->add_option("figure", figure, "fig2 | fig3 | fig4 | fig5")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*region) return cmd_region(channel_file, out_dir, db_gains, sample_q, seed);
    if (*gdof) return cmd_gdof(antennas, alphas, out_dir);
    if (*curve) return cmd_gdof_curve(mn, alpha_max, step, out_dir);
    if (*verify) {
      VerifyOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      opt.max_dim = max_dim;
      opt.parallel = !serial;
      return cmd_verify(opt);
    }
    if (*reproduce) return cmd_reproduce(figure, out_dir, tol);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
