// Benchmark: serial vs OpenMP brute-force path enumeration on a wide spec.

#include <chrono>
#include <iostream>

#include "hsbd/enumerate.hpp"

using namespace hsbd;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long long span = argc > 1 ? std::atoll(argv[1]) : 5;
  // row sum 24 per level: 24^5 ~ 8.0e6 paths at the default span
  RuleProfile profile;
  profile.lo = -2;
  profile.rules = {SequenceRule::constant(Rational(3)), SequenceRule::constant(Rational(7)),
                   SequenceRule::constant(Rational(4)), SequenceRule::constant(Rational(8)),
                   SequenceRule::constant(Rational(2))};
  DiagramSpec spec = DiagramSpec::from_rules(profile);
  const unsigned long long guard = 4'000'000'000ULL;

  auto t0 = std::chrono::steady_clock::now();
  PathHistogram serial = path_count_histogram_serial(spec, 0, span, guard);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  PathHistogram parallel = path_count_histogram_parallel(spec, 0, span, guard);
  double t_parallel = seconds_since(t0);

  bool same = serial.lo == parallel.lo && serial.counts == parallel.counts;
  std::cout << "paths enumerated: " << serial.total() << "\n";
  std::cout << "serial:    " << t_serial << " s\n";
  std::cout << "parallel:  " << t_parallel << " s\n";
  std::cout << "speedup:   " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n";
  std::cout << "identical: " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}
