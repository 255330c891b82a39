#ifndef HSBD_DIAGRAM_HPP
#define HSBD_DIAGRAM_HPP

#include <optional>
#include <set>
#include <vector>

#include "hsbd/band.hpp"
#include "hsbd/rules.hpp"

namespace hsbd {

// Per-offset rule profile: offsets lo .. lo + rules.size() - 1.
struct RuleProfile {
  long long lo = 0;
  std::vector<SequenceRule> rules;

  long long hi() const { return lo + static_cast<long long>(rules.size()) - 1; }
  Band band_at(long long n) const;
  friend bool operator==(const RuleProfile& a, const RuleProfile& b) {
    return a.lo == b.lo && a.rules == b.rules;
  }
};

struct BoundedSizeParams {
  long long t;       // minimal half-width with support in [v - t, v + t]
  Int L;             // in-degree bound (the row sum)
  bool symmetric;    // p == q
  bool full;         // symmetric and every coefficient in [-t, t] positive
};

// A horizontally stationary diagram given as a level-indexed family of bands.
// Rule-generated specs keep the symbolic profile so that series/product
// finiteness stays decidable; explicit specs carry a finite list of bands and
// an optional rule-generated tail. The triadic builtin has level-dependent
// support (offsets -2*3^n, -3^n, 0) and is treated as opaque by the symbolic
// machinery.
class DiagramSpec {
 public:
  enum class Kind { Rules, Explicit, Triadic };

  static DiagramSpec from_rules(RuleProfile profile);
  static DiagramSpec explicit_levels(std::vector<Band> bands, std::optional<RuleProfile> tail);
  static DiagramSpec class_c(SequenceRule diagonal);
  static DiagramSpec triadic();

  Kind kind() const { return kind_; }

  Band band_at(long long n) const;
  Rational row_sum_at(long long n) const;

  // Number of finite paths from level 0 into any level-n vertex.
  Int height(long long n) const;

  // Explicit-levels spec over the cut points; bands compose by convolution.
  DiagramSpec telescope(const std::vector<long long>& cuts) const;

  BoundedSizeParams bounded_size_params(long long n) const;

  // Profile of F_{n+m-1} ... F_n; entry at offset k counts paths between
  // i in V_{n+m} and i + k in V_n.
  Band path_count_band(long long n, long long m) const;

  bool is_class_c() const;
  const SequenceRule& class_c_diagonal() const;

  // Symbolic access: the rule profile governing all levels >= tail_start(),
  // when one exists.
  std::optional<RuleProfile> tail_profile() const;
  long long tail_start() const;

  const std::vector<Band>& explicit_bands() const { return explicit_bands_; }

  friend bool operator==(const DiagramSpec& a, const DiagramSpec& b);

 private:
  DiagramSpec() = default;

  Kind kind_ = Kind::Rules;
  RuleProfile profile_;  // Rules kind, or the tail of an Explicit kind
  bool has_tail_ = true;
  std::vector<Band> explicit_bands_;
};

// One vertex per level along i_{n+1} = i_n - offset(n); edges must exist.
struct OdometerSpec {
  SequenceRule offsets;  // bounded kinds only (constant / explicit-periodic)
  long long base = 0;

  long long offset_at(long long n) const;
  long long vertex_at(long long n) const;

  friend bool operator==(const OdometerSpec& a, const OdometerSpec& b) {
    return a.offsets == b.offsets && a.base == b.base;
  }
};

// Validates the offset rule's kind and membership in the band supports up to
// the probe horizon.
void validate_odometer(const DiagramSpec& spec, const OdometerSpec& odo, long long probe_levels = 8);

// Per-level vertex intervals W_n = [lo(n), hi(n)].
struct WindowFamily {
  SequenceRule lo;
  SequenceRule hi;

  long long lo_at(long long n) const;
  long long hi_at(long long n) const;
  Int size_at(long long n) const;

  friend bool operator==(const WindowFamily& a, const WindowFamily& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Incoming-edge slot of a range vertex: source sits at range + offset; copy
// distinguishes parallel edges.
struct Slot {
  long long offset = 0;
  long long copy = 0;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct Edge {
  long long level = 0;
  long long offset = 0;
  long long copy = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Path prefix from V_0 with an explicit base vertex; vertex at level l+1 is
// vertex(l) - offset(l).
struct FinitePath {
  long long base_vertex = 0;
  std::vector<Edge> edges;

  long long depth() const { return static_cast<long long>(edges.size()); }
  long long vertex_at(long long level) const;
  long long terminal_vertex() const { return vertex_at(depth()); }

  friend bool operator==(const FinitePath&, const FinitePath&) = default;

  std::string str() const;
};

void validate_path(const DiagramSpec& spec, const FinitePath& path);

// All slots of a level (each offset with multiplicity), in (offset, copy) order.
std::vector<Slot> level_slots(const DiagramSpec& spec, long long n);

}  // namespace hsbd

#endif
