#ifndef HSBD_VERSHIK_HPP
#define HSBD_VERSHIK_HPP

#include <optional>

#include "hsbd/diagram.hpp"

namespace hsbd {

// Horizontally stationary edge order: one total order on the incoming-edge
// slots of a level, the same at every vertex. Explicit level lists are used
// cyclically.
class OrderSpec {
 public:
  enum class Kind { LeftToRight, RightToLeft, Explicit };

  static OrderSpec left_to_right();
  static OrderSpec right_to_left();
  static OrderSpec explicit_orders(std::vector<std::vector<Slot>> levels);

  Kind kind() const { return kind_; }
  const std::vector<std::vector<Slot>>& level_lists() const { return levels_; }

  // Slots of the level in ascending order position; validates explicit lists
  // against the level's slot multiset.
  std::vector<Slot> ordered_slots(const DiagramSpec& spec, long long level) const;

  Slot max_slot(const DiagramSpec& spec, long long level) const;
  Slot min_slot(const DiagramSpec& spec, long long level) const;

  std::optional<Slot> successor_slot(const DiagramSpec& spec, long long level,
                                     const Slot& slot) const;

  OrderSpec reversed() const;

  friend bool operator==(const OrderSpec& a, const OrderSpec& b) {
    return a.kind_ == b.kind_ && a.levels_ == b.levels_;
  }

 private:
  Kind kind_ = Kind::LeftToRight;
  std::vector<std::vector<Slot>> levels_;  // Explicit only
};

// (max slot, min slot) of the level; by stationarity these give the unique
// outgoing maximal/minimal edge of every vertex.
std::pair<Slot, Slot> max_min_edges(const DiagramSpec& spec, const OrderSpec& order, long long n);

// The unique minimal finite path of the given depth ending at the vertex.
FinitePath minimal_path_into(const DiagramSpec& spec, const OrderSpec& order, long long depth,
                             long long vertex);

FinitePath maximal_path_into(const DiagramSpec& spec, const OrderSpec& order, long long depth,
                             long long vertex);

// Successor of a finite prefix; nullopt when every edge is maximal.
std::optional<FinitePath> vershik_successor(const DiagramSpec& spec, const OrderSpec& order,
                                            const FinitePath& path);

struct OrbitResult {
  std::vector<FinitePath> paths;  // starting prefix plus each successor
  bool reached_max = false;
  long long terminal_vertex = 0;
  bool terminal_invariant = true;  // certificate: the range never changed
};

OrbitResult orbit(const DiagramSpec& spec, const OrderSpec& order, const FinitePath& start,
                  long long steps);

struct ContinuityLevelRecord {
  long long n = 0;
  std::vector<long long> successor_sources;  // distinct sources, ascending
  std::optional<long long> v;                // defined when there is one source
  std::optional<bool> min_edge_link;         // link between v_n and v_{n+1}
};

struct TwoSourceWitness {
  Slot slot_a, slot_b;
  long long source_a = 0, source_b = 0;
};

struct MissingMinEdgeWitness {
  long long v_n = 0;
  long long v_next = 0;
  long long min_offset = 0;       // offset of the level's minimal slot
  long long actual_source = 0;    // source of the minimal edge into v_{n+1}
};

struct ContinuityReport {
  std::vector<ContinuityLevelRecord> levels;
  bool continuous = true;
  long long horizon = 0;
  long long fail_level = -1;
  std::optional<TwoSourceWitness> two_source;
  std::optional<MissingMinEdgeWitness> missing_min_edge;
};

// Horizon check of the homeomorphism conditions: for n = 1..N-1 the
// order-successors of all non-maximal outgoing slots at the maximal path's
// level-n vertex must share one source v_n, and for n = 1..N-2 the minimal
// slot into v_{n+1} must have source v_n.
ContinuityReport continuity_check(const DiagramSpec& spec, const OrderSpec& order, long long N,
                                  long long start_vertex = 0);

OrderSpec reverse_order(const OrderSpec& order);

}  // namespace hsbd

#endif
