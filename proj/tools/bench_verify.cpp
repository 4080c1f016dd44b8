// Times the property suite on the serial reference path versus the
// OpenMP-parallel path and checks that both produce identical verdicts.
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "icfb/verify.hpp"

using namespace icfb;

namespace {

double run_timed(const VerifyOptions& opt, std::vector<PropertyVerdict>& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = run_all(opt);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  VerifyOptions opt;
  if (argc > 1) opt.trials = std::strtol(argv[1], nullptr, 10);
  if (argc > 2) opt.seed = std::strtoull(argv[2], nullptr, 10);

  std::vector<PropertyVerdict> serial, parallel;
  opt.parallel = false;
  const double t_serial = run_timed(opt, serial);
  opt.parallel = true;
  const double t_parallel = run_timed(opt, parallel);

  std::cout << std::fixed << std::setprecision(3);
  std::cout << "trials per property: " << opt.trials << "\n"
            << "serial:   " << t_serial << " s\n"
            << "parallel: " << t_parallel << " s\n"
            << "speedup:  " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n";

  bool same = serial.size() == parallel.size();
  for (std::size_t k = 0; same && k < serial.size(); ++k)
    same = verdict_json_line(serial[k]) == verdict_json_line(parallel[k]);
  std::cout << "verdicts identical: " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}
