#include "hsbd/vershik.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hsbd/errors.hpp"

namespace hsbd {

OrderSpec OrderSpec::left_to_right() { return OrderSpec(); }

OrderSpec OrderSpec::right_to_left() {
  OrderSpec o;
  o.kind_ = Kind::RightToLeft;
  return o;
}

OrderSpec OrderSpec::explicit_orders(std::vector<std::vector<Slot>> levels) {
  if (levels.empty()) throw std::invalid_argument("explicit order needs at least one level list");
  for (const auto& list : levels) {
    std::set<Slot> seen;
    for (const Slot& s : list)
      if (!seen.insert(s).second)
        throw SemanticError("slot listed twice in an explicit order");
  }
  OrderSpec o;
  o.kind_ = Kind::Explicit;
  o.levels_ = std::move(levels);
  return o;
}

std::vector<Slot> OrderSpec::ordered_slots(const DiagramSpec& spec, long long level) const {
  std::vector<Slot> natural = level_slots(spec, level);
  switch (kind_) {
    case Kind::LeftToRight:
      return natural;
    case Kind::RightToLeft:
      std::reverse(natural.begin(), natural.end());
      return natural;
    case Kind::Explicit: {
      const auto& list = levels_[static_cast<std::size_t>(level) % levels_.size()];
      std::vector<Slot> sorted = list;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != natural)
        throw SemanticError("explicit order does not list the slot multiset of level " +
                            std::to_string(level));
      return list;
    }
  }
  throw std::logic_error("unreachable");
}

Slot OrderSpec::max_slot(const DiagramSpec& spec, long long level) const {
  return ordered_slots(spec, level).back();
}

Slot OrderSpec::min_slot(const DiagramSpec& spec, long long level) const {
  return ordered_slots(spec, level).front();
}

std::optional<Slot> OrderSpec::successor_slot(const DiagramSpec& spec, long long level,
                                              const Slot& slot) const {
  std::vector<Slot> slots = ordered_slots(spec, level);
  auto it = std::find(slots.begin(), slots.end(), slot);
  if (it == slots.end()) throw std::invalid_argument("slot does not exist at this level");
  ++it;
  if (it == slots.end()) return std::nullopt;
  return *it;
}

OrderSpec OrderSpec::reversed() const {
  switch (kind_) {
    case Kind::LeftToRight:
      return right_to_left();
    case Kind::RightToLeft:
      return left_to_right();
    case Kind::Explicit: {
      std::vector<std::vector<Slot>> rev = levels_;
      for (auto& list : rev) std::reverse(list.begin(), list.end());
      return explicit_orders(std::move(rev));
    }
  }
  throw std::logic_error("unreachable");
}

std::pair<Slot, Slot> max_min_edges(const DiagramSpec& spec, const OrderSpec& order, long long n) {
  std::vector<Slot> slots = order.ordered_slots(spec, n);
  return {slots.back(), slots.front()};
}

namespace {

FinitePath extreme_path_into(const DiagramSpec& spec, const OrderSpec& order, long long depth,
                             long long vertex, bool minimal) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  std::vector<Slot> chosen;
  chosen.reserve(static_cast<std::size_t>(depth));
  for (long long l = 0; l < depth; ++l)
    chosen.push_back(minimal ? order.min_slot(spec, l) : order.max_slot(spec, l));
  FinitePath path;
  long long v = vertex;
  for (long long l = depth - 1; l >= 0; --l) v += chosen[static_cast<std::size_t>(l)].offset;
  path.base_vertex = v;
  for (long long l = 0; l < depth; ++l)
    path.edges.push_back(Edge{l, chosen[static_cast<std::size_t>(l)].offset,
                              chosen[static_cast<std::size_t>(l)].copy});
  return path;
}

}  // namespace

FinitePath minimal_path_into(const DiagramSpec& spec, const OrderSpec& order, long long depth,
                             long long vertex) {
  return extreme_path_into(spec, order, depth, vertex, true);
}

FinitePath maximal_path_into(const DiagramSpec& spec, const OrderSpec& order, long long depth,
                             long long vertex) {
  return extreme_path_into(spec, order, depth, vertex, false);
}

std::optional<FinitePath> vershik_successor(const DiagramSpec& spec, const OrderSpec& order,
                                            const FinitePath& path) {
  validate_path(spec, path);
  if (path.edges.empty()) throw std::invalid_argument("successor of an empty prefix");
  long long m = -1;
  std::optional<Slot> next;
  for (std::size_t l = 0; l < path.edges.size(); ++l) {
    Slot cur{path.edges[l].offset, path.edges[l].copy};
    next = order.successor_slot(spec, static_cast<long long>(l), cur);
    if (next) {
      m = static_cast<long long>(l);
      break;
    }
  }
  if (m < 0) return std::nullopt;  // every edge maximal

  long long range_vertex = path.vertex_at(m + 1);
  long long new_source = range_vertex + next->offset;
  FinitePath out = minimal_path_into(spec, order, m, new_source);
  out.edges.push_back(Edge{m, next->offset, next->copy});
  for (std::size_t l = static_cast<std::size_t>(m) + 1; l < path.edges.size(); ++l)
    out.edges.push_back(path.edges[l]);
  return out;
}

OrbitResult orbit(const DiagramSpec& spec, const OrderSpec& order, const FinitePath& start,
                  long long steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  validate_path(spec, start);
  OrbitResult result;
  result.paths.push_back(start);
  result.terminal_vertex = start.terminal_vertex();
  for (long long s = 0; s < steps; ++s) {
    std::optional<FinitePath> next = vershik_successor(spec, order, result.paths.back());
    if (!next) {
      result.reached_max = true;
      break;
    }
    if (next->terminal_vertex() != result.terminal_vertex) result.terminal_invariant = false;
    result.paths.push_back(std::move(*next));
  }
  return result;
}

ContinuityReport continuity_check(const DiagramSpec& spec, const OrderSpec& order, long long N,
                                  long long start_vertex) {
  if (N < 2) throw std::invalid_argument("horizon must be >= 2");
  ContinuityReport report;
  report.horizon = N;

  // Vertices of the maximal path: w_{n+1} = w_n - max-slot offset.
  std::vector<long long> w(static_cast<std::size_t>(N) + 1, start_vertex);
  for (long long n = 0; n < N; ++n)
    w[static_cast<std::size_t>(n + 1)] =
        w[static_cast<std::size_t>(n)] - order.max_slot(spec, n).offset;

  std::vector<std::optional<long long>> v(static_cast<std::size_t>(N));
  for (long long n = 1; n < N && report.continuous; ++n) {
    std::vector<Slot> slots = order.ordered_slots(spec, n);
    ContinuityLevelRecord rec;
    rec.n = n;
    std::set<long long> sources;
    std::vector<std::pair<Slot, long long>> realized;
    for (std::size_t idx = 0; idx + 1 < slots.size(); ++idx) {
      // Outgoing edge of w_n at this slot; its successor shares the range.
      long long source = w[static_cast<std::size_t>(n)] - slots[idx].offset + slots[idx + 1].offset;
      sources.insert(source);
      realized.push_back({slots[idx], source});
    }
    rec.successor_sources.assign(sources.begin(), sources.end());
    if (sources.size() == 1) {
      v[static_cast<std::size_t>(n)] = *sources.begin();
      rec.v = v[static_cast<std::size_t>(n)];
    }
    report.levels.push_back(rec);

    if (sources.size() > 1) {
      report.continuous = false;
      report.fail_level = n;
      TwoSourceWitness wit;
      wit.slot_a = realized.front().first;
      wit.source_a = realized.front().second;
      for (const auto& [slot, source] : realized)
        if (source != wit.source_a) {
          wit.slot_b = slot;
          wit.source_b = source;
          break;
        }
      report.two_source = wit;
      break;
    }

    if (n >= 2) {
      long long t = n - 1;
      Slot min_slot = order.min_slot(spec, t);
      long long minimal_source = *v[static_cast<std::size_t>(n)] + min_slot.offset;
      bool link = minimal_source == *v[static_cast<std::size_t>(t)];
      report.levels[static_cast<std::size_t>(t - 1)].min_edge_link = link;
      if (!link) {
        report.continuous = false;
        report.fail_level = t;
        report.missing_min_edge = MissingMinEdgeWitness{
            *v[static_cast<std::size_t>(t)], *v[static_cast<std::size_t>(n)], min_slot.offset,
            minimal_source};
        break;
      }
    }
  }
  return report;
}

OrderSpec reverse_order(const OrderSpec& order) { return order.reversed(); }

}  // namespace hsbd
