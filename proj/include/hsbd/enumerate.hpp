#ifndef HSBD_ENUMERATE_HPP
#define HSBD_ENUMERATE_HPP

#include "hsbd/diagram.hpp"

namespace hsbd {

// Path counts per total offset, from explicit edge-sequence enumeration.
struct PathHistogram {
  long long lo = 0;
  std::vector<unsigned long long> counts;

  unsigned long long count_at(long long offset) const;
  unsigned long long total() const;
};

inline constexpr unsigned long long kEnumerationGuard = 10'000'000;

// Serial reference enumeration: every edge sequence between levels n and
// n + m is expanded slot by slot (multiplicities included).
PathHistogram path_count_histogram_serial(const DiagramSpec& spec, long long n, long long m,
                                          unsigned long long guard = kEnumerationGuard);

// OpenMP enumeration over a flattened slot prefix; deterministic merge.
PathHistogram path_count_histogram_parallel(const DiagramSpec& spec, long long n, long long m,
                                            unsigned long long guard = kEnumerationGuard);

// Independent oracle for path_count_band entries.
Int path_count_bruteforce(const DiagramSpec& spec, long long n, long long m, long long offset,
                          unsigned long long guard = kEnumerationGuard);

}  // namespace hsbd

#endif
