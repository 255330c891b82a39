#include "hsbd/enumerate.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hsbd/errors.hpp"

namespace hsbd {

namespace {

// Offsets of every edge slot per level, multiplicities expanded.
struct LevelSlots {
  std::vector<std::vector<long long>> offsets;  // [level][slot]
  long long lo_total = 0;
  long long hi_total = 0;
  unsigned long long paths = 1;
};

LevelSlots expand_levels(const DiagramSpec& spec, long long n, long long m,
                         unsigned long long guard) {
  if (m < 1) throw std::invalid_argument("span must be >= 1");
  LevelSlots out;
  for (long long l = n; l < n + m; ++l) {
    Band b = spec.band_at(l);
    if (!b.is_integer()) throw RuleOverflowError("enumeration needs integer bands");
    std::vector<long long> slots;
    for (long long k = b.lo(); k <= b.hi(); ++k) {
      long long c = static_cast<long long>(b.coeff(k).num().get_si());
      for (long long i = 0; i < c; ++i) slots.push_back(k);
    }
    out.lo_total += b.lo();
    out.hi_total += b.hi();
    if (out.paths > guard / slots.size())
      throw IntractableError("enumeration guard exceeded (" + std::to_string(guard) + " paths)");
    out.paths *= slots.size();
    out.offsets.push_back(std::move(slots));
  }
  return out;
}

void enumerate_from(const LevelSlots& ls, std::size_t level, long long offset_sum,
                    std::vector<unsigned long long>& hist, long long lo) {
  if (level == ls.offsets.size()) {
    ++hist[static_cast<std::size_t>(offset_sum - lo)];
    return;
  }
  for (long long k : ls.offsets[level]) enumerate_from(ls, level + 1, offset_sum + k, hist, lo);
}

}  // namespace

unsigned long long PathHistogram::count_at(long long offset) const {
  long long idx = offset - lo;
  if (idx < 0 || idx >= static_cast<long long>(counts.size())) return 0;
  return counts[static_cast<std::size_t>(idx)];
}

unsigned long long PathHistogram::total() const {
  unsigned long long t = 0;
  for (auto c : counts) t += c;
  return t;
}

PathHistogram path_count_histogram_serial(const DiagramSpec& spec, long long n, long long m,
                                          unsigned long long guard) {
  LevelSlots ls = expand_levels(spec, n, m, guard);
  PathHistogram hist;
  hist.lo = ls.lo_total;
  hist.counts.assign(static_cast<std::size_t>(ls.hi_total - ls.lo_total + 1), 0);
  enumerate_from(ls, 0, 0, hist.counts, hist.lo);
  return hist;
}

PathHistogram path_count_histogram_parallel(const DiagramSpec& spec, long long n, long long m,
                                            unsigned long long guard) {
  LevelSlots ls = expand_levels(spec, n, m, guard);
  PathHistogram hist;
  hist.lo = ls.lo_total;
  std::size_t bins = static_cast<std::size_t>(ls.hi_total - ls.lo_total + 1);
  hist.counts.assign(bins, 0);

  // Flatten enough leading levels to give the loop real width.
  std::size_t prefix_levels = 0;
  long long prefix_count = 1;
  while (prefix_levels < ls.offsets.size() && prefix_count < 256)
    prefix_count *= static_cast<long long>(ls.offsets[prefix_levels++].size());

#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<unsigned long long> local(bins, 0);
#pragma omp for schedule(static) nowait
    for (long long idx = 0; idx < prefix_count; ++idx) {
      long long rest = idx;
      long long offset_sum = 0;
      for (std::size_t l = 0; l < prefix_levels; ++l) {
        const auto& slots = ls.offsets[l];
        offset_sum += slots[static_cast<std::size_t>(rest % static_cast<long long>(slots.size()))];
        rest /= static_cast<long long>(slots.size());
      }
      enumerate_from(ls, prefix_levels, offset_sum, local, hist.lo);
    }
#pragma omp critical
    {
      for (std::size_t i = 0; i < bins; ++i) hist.counts[i] += local[i];
    }
  }
#else
  for (long long idx = 0; idx < prefix_count; ++idx) {
    long long rest = idx;
    long long offset_sum = 0;
    for (std::size_t l = 0; l < prefix_levels; ++l) {
      const auto& slots = ls.offsets[l];
      offset_sum += slots[static_cast<std::size_t>(rest % static_cast<long long>(slots.size()))];
      rest /= static_cast<long long>(slots.size());
    }
    enumerate_from(ls, prefix_levels, offset_sum, hist.counts, hist.lo);
  }
#endif
  return hist;
}

Int path_count_bruteforce(const DiagramSpec& spec, long long n, long long m, long long offset,
                          unsigned long long guard) {
  PathHistogram hist = path_count_histogram_parallel(spec, n, m, guard);
  return Int(static_cast<unsigned long>(hist.count_at(offset)));
}

}  // namespace hsbd
