#ifndef HSBD_MEASURES_HPP
#define HSBD_MEASURES_HPP

#include <optional>
#include <set>
#include <utility>

#include "hsbd/diagram.hpp"

namespace hsbd {

// Level vector p^(n): either constant over all of Z or finitely supported.
class MeasureVector {
 public:
  static MeasureVector constant(Rational value);
  static MeasureVector finite(Band profile);

  bool is_constant() const { return !finite_.has_value(); }
  const Rational& constant_value() const;
  const Band& finite_profile() const;

  friend bool operator==(const MeasureVector& a, const MeasureVector& b);

 private:
  MeasureVector() = default;
  Rational constant_{0};
  std::optional<Band> finite_;
};

struct TailCheckResult {
  bool ok = true;
  std::optional<long long> first_failing_level;
};

// Checks F_n^T p^(n+1) = p^(n) for n < N. The constant case reduces to
// value(n) = r_n * value(n+1); the finite case is an exact convolution with
// the level band.
TailCheckResult verify_tail_invariant(const DiagramSpec& spec,
                                      const std::vector<MeasureVector>& vectors, long long N);

// p^(n) from p^(n+1) under the same recursion.
MeasureVector pull_back(const DiagramSpec& spec, long long n, const MeasureVector& next);

// Same identity through the Laurent view: band_hat * p_next_hat == p_prev_hat.
bool fourier_check(const DiagramSpec& spec, const Band& p_next, const Band& p_prev, long long n);

// Measure of the depth-n cylinder of the odometer's own path space.
Rational odometer_cylinder(const DiagramSpec& spec, const OdometerSpec& odo, long long n);

enum class Verdict { Finite, Infinite, Undecided };

std::string verdict_str(Verdict v, long long horizon);

// Partial sums/products of the measure-extension series along an odometer,
// with a three-valued finiteness verdict decided from the sequence rules.
struct ExtensionReport {
  std::vector<Rational> fs;      // traversed coefficients f^(n)
  std::vector<Rational> sigmas;  // sigma^(n) = r_n - f^(n)
  std::vector<Rational> alphas;  // alpha_n = prod_{l<=n} r_l / f^(l)
  Rational partial_value{0};     // = alphas.back()
  Verdict verdict = Verdict::Undecided;
  long long horizon = 0;
  std::string reason;
};

ExtensionReport extension_report(const DiagramSpec& spec, const OdometerSpec& odo, long long N);

struct TailParallelResult {
  enum class Kind { Equal, Parallel, NotParallel, Undecided } kind = Kind::Undecided;
  long long shift = 0;                     // Parallel
  std::vector<long long> witness_levels;   // NotParallel: first two disagreements
  long long horizon = 0;                   // Undecided
};

TailParallelResult tail_parallel(const OdometerSpec& a, const OdometerSpec& b, long long horizon);

// Offsets where the band coefficient attains its maximum.
std::set<long long> dominating_offsets(const DiagramSpec& spec, long long n);

// Extension report for a finite-window vertex subdiagram with the
// equal-column-sum property.
struct EcsExtensionReport {
  std::vector<Rational> rs;
  std::vector<Rational> cs;
  std::vector<Int> window_sizes;  // |W_0| .. |W_N|
  std::vector<Rational> alphas;   // alpha_n = prod_{i<=n}(r_i/c_i) * |W_{n+1}|
  Rational partial_value{0};
  Verdict verdict = Verdict::Undecided;
  long long horizon = 0;
  std::string reason;
  // Partial products prod_{i<m} b_0^(i)/c_i, the weight of each vertical
  // odometer component; empty when a diagonal coefficient vanishes.
  std::vector<Rational> component_products;
};

EcsExtensionReport ecs_subdiagram_extension(const DiagramSpec& spec, const WindowFamily& windows,
                                            long long N);

// e_0..e_lmax of the given values by the standard recurrence.
std::vector<Rational> elementary_symmetric(const std::vector<Rational>& values, long long lmax);

// Central path count g'_{ii} over span m for a class-C diagonal, via the
// binomial-times-symmetric-sum formula. Must match the convolution center.
Int classc_g_center(const SequenceRule& diagonal, long long n, long long m);

// prod_{j=n}^{n+m-1} a_j / (a_j + 2).
Rational classc_product_factor(const SequenceRule& diagonal, long long n, long long m);

// The level-l term of the no-measure criterion at span m.
Rational classc_no_measure_term(const SequenceRule& diagonal, long long n, long long l, long long m);

// Center entry of the stochastic span-m product.
Rational classc_stochastic_center(const SequenceRule& diagonal, long long n, long long m);

// Markov measure data: per-level edge probabilities keyed by (offset, copy),
// identical across vertices, plus a constant initial value.
class MarkovKernel {
 public:
  using SlotProbs = std::vector<std::pair<Slot, Rational>>;

  static MarkovKernel uniform(Rational initial = Rational(1));
  // Lists are used cyclically per level. Each list must have positive
  // probabilities summing to exactly 1 and no duplicate slots.
  static MarkovKernel explicit_kernel(Rational initial, std::vector<SlotProbs> levels);

  bool is_uniform() const { return levels_.empty(); }
  const Rational& initial() const { return initial_; }

  Rational probability(const DiagramSpec& spec, long long level, const Slot& slot) const;

  // Slot lists must exactly match the level's slot multiset.
  void validate_against(const DiagramSpec& spec, long long levels) const;

  const std::vector<SlotProbs>& level_lists() const { return levels_; }

  friend bool operator==(const MarkovKernel& a, const MarkovKernel& b) {
    return a.initial_ == b.initial_ && a.levels_ == b.levels_;
  }

 private:
  Rational initial_{1};
  std::vector<SlotProbs> levels_;  // empty = uniform
};

Rational markov_cylinder(const DiagramSpec& spec, const MarkovKernel& kernel, const FinitePath& path);

struct MarkovCheckResult {
  bool ok = true;
  long long checked_depth = 0;
  std::optional<std::pair<FinitePath, FinitePath>> witness;
  std::optional<std::pair<Rational, Rational>> witness_values;
};

// Enumerates all paths of each depth <= depth into one range vertex and
// compares cylinder values.
MarkovCheckResult markov_tail_invariance_check(const DiagramSpec& spec, const MarkovKernel& kernel,
                                               long long depth,
                                               unsigned long long guard = 1'000'000);

struct DepossoelRow {
  long long m = 0;
  Int g{0};
  Rational mu_partial{0};  // g / (a_0 ... a_{n+m-1})
  Rational nu_partial{0};  // g / ((a_0+2) ... (a_{n+m-1}+2))
  std::optional<Rational> ratio;  // mu/nu where g != 0
};

// Trace of the two cylinder-value approximants and their ratio for a
// class-C diagram, vertical odometer at i, cylinder ending at j in V_n.
std::vector<DepossoelRow> depossel_ratio_trace(const DiagramSpec& spec, long long i, long long n,
                                               long long j, long long M);

}  // namespace hsbd

#endif
