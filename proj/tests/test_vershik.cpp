#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hsbd/errors.hpp"
#include "hsbd/vershik.hpp"

using namespace hsbd;

namespace {

DiagramSpec classc(long long a) {
  return DiagramSpec::class_c(SequenceRule::constant(Rational(a)));
}

DiagramSpec random_small_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> wd(2, 3);
  std::uniform_int_distribution<long long> cd(1, 2);
  std::uniform_int_distribution<long long> lod(-2, 0);
  long long w = wd(rng);
  RuleProfile profile;
  profile.lo = lod(rng);
  Rational sum(0);
  for (long long i = 0; i < w; ++i) {
    Rational c(cd(rng));
    sum += c;
    profile.rules.push_back(SequenceRule::constant(c));
  }
  if (sum > Rational(5)) return classc(2);  // keep towers small
  return DiagramSpec::from_rules(std::move(profile));
}

}  // namespace

TEST_CASE("max and min slots") {
  DiagramSpec c3 = classc(3);
  OrderSpec l2r = OrderSpec::left_to_right();
  auto [mx, mn] = max_min_edges(c3, l2r, 2);
  CHECK(mx == Slot{1, 0});
  CHECK(mn == Slot{-1, 0});

  DiagramSpec triadic = DiagramSpec::triadic();
  for (long long n = 0; n < 4; ++n) {
    long long step = 1;
    for (long long i = 0; i < n; ++i) step *= 3;
    auto [tmx, tmn] = max_min_edges(triadic, l2r, n);
    CHECK(tmx == Slot{0, 0});            // vertical edges maximal
    CHECK(tmn == Slot{-2 * step, 0});
  }

  CHECK_THROWS_AS(OrderSpec::explicit_orders({{Slot{0, 0}, Slot{0, 0}}}), SemanticError);
}

TEST_CASE("explicit order must list the level's slot multiset") {
  DiagramSpec c2 = classc(2);
  OrderSpec good = OrderSpec::explicit_orders({{Slot{0, 0}, Slot{-1, 0}, Slot{1, 0}, Slot{0, 1}}});
  CHECK(good.ordered_slots(c2, 0)[0] == Slot{0, 0});
  OrderSpec bad = OrderSpec::explicit_orders({{Slot{0, 0}, Slot{-1, 0}}});
  CHECK_THROWS_AS(bad.ordered_slots(c2, 0), SemanticError);
}

TEST_CASE("successor: slot bump with base recomputed") {
  DiagramSpec c2 = classc(2);
  OrderSpec l2r = OrderSpec::left_to_right();

  FinitePath x{0, {Edge{0, -1, 0}}};  // from vertex 0 into vertex 1
  std::optional<FinitePath> s = vershik_successor(c2, l2r, x);
  CHECK(s);
  CHECK(s->edges == std::vector<Edge>{Edge{0, 0, 0}});
  CHECK(s->base_vertex == 1);
  CHECK(s->terminal_vertex() == x.terminal_vertex());
}

TEST_CASE("successor: maximal first edge rolls over") {
  DiagramSpec c2 = classc(2);
  OrderSpec l2r = OrderSpec::left_to_right();

  // first edge maximal, second non-maximal
  FinitePath x{0, {Edge{0, 1, 0}, Edge{1, -1, 0}}};
  std::optional<FinitePath> s = vershik_successor(c2, l2r, x);
  CHECK(s);
  CHECK(s->edges[1] == Edge{1, 0, 0});            // successor slot at level 1
  CHECK(s->edges[0] == Edge{0, -1, 0});           // replaced by the minimal edge
  CHECK(s->terminal_vertex() == x.terminal_vertex());
  // the new level-0 edge is the minimal path into the successor's source
  CHECK(s->vertex_at(1) == x.vertex_at(2) + 0);
}

TEST_CASE("successor: all-maximal prefix signals MaximalPrefix") {
  DiagramSpec c2 = classc(2);
  OrderSpec l2r = OrderSpec::left_to_right();
  FinitePath top{0, {Edge{0, 1, 0}, Edge{1, 1, 0}}};
  CHECK_FALSE(vershik_successor(c2, l2r, top).has_value());
}

TEST_CASE("tower exhaustion") {
  std::mt19937_64 rng(71);
  OrderSpec l2r = OrderSpec::left_to_right();
  for (int t = 0; t < 25; ++t) {
    DiagramSpec spec = random_small_spec(rng);
    for (long long depth = 1; depth <= 3; ++depth) {
      Int h = spec.height(depth);
      long long expect = static_cast<long long>(h.get_si());
      FinitePath start = minimal_path_into(spec, l2r, depth, 0);
      OrbitResult res = orbit(spec, l2r, start, expect + 5);
      CHECK(res.reached_max);
      CHECK(static_cast<long long>(res.paths.size()) == expect);
      CHECK(res.terminal_invariant);
      std::set<std::string> seen;
      for (const auto& p : res.paths) seen.insert(p.str());
      CHECK(static_cast<long long>(seen.size()) == expect);
    }
  }
}

TEST_CASE("orbit of one step is the successor") {
  DiagramSpec c2 = classc(2);
  OrderSpec l2r = OrderSpec::left_to_right();
  FinitePath start = minimal_path_into(c2, l2r, 2, 0);
  OrbitResult res = orbit(c2, l2r, start, 1);
  CHECK(res.paths.size() == 2);
  CHECK(res.paths[1] == *vershik_successor(c2, l2r, start));
}

TEST_CASE("class-C depth-1 tower has r0 prefixes") {
  DiagramSpec c2 = classc(2);
  OrderSpec l2r = OrderSpec::left_to_right();
  OrbitResult res = orbit(c2, l2r, minimal_path_into(c2, l2r, 1, 0), 10);
  CHECK(res.paths.size() == 4);
  CHECK(res.reached_max);
}

TEST_CASE("successor is injective per tower") {
  std::mt19937_64 rng(73);
  OrderSpec l2r = OrderSpec::left_to_right();
  for (int t = 0; t < 10; ++t) {
    DiagramSpec spec = random_small_spec(rng);
    FinitePath start = minimal_path_into(spec, l2r, 3, 0);
    OrbitResult res = orbit(spec, l2r, start, 200);
    std::set<std::string> images;
    for (std::size_t i = 1; i < res.paths.size(); ++i) images.insert(res.paths[i].str());
    CHECK(images.size() == res.paths.size() - 1);
  }
}

TEST_CASE("successor commutes with horizontal shift") {
  std::mt19937_64 rng(79);
  OrderSpec l2r = OrderSpec::left_to_right();
  for (int t = 0; t < 10; ++t) {
    DiagramSpec spec = random_small_spec(rng);
    FinitePath x = minimal_path_into(spec, l2r, 3, 2);
    for (int step = 0; step < 5; ++step) {
      FinitePath shifted = x;
      shifted.base_vertex += 11;
      std::optional<FinitePath> sx = vershik_successor(spec, l2r, x);
      std::optional<FinitePath> ss = vershik_successor(spec, l2r, shifted);
      CHECK(sx.has_value() == ss.has_value());
      if (!sx) break;
      FinitePath moved = *sx;
      moved.base_vertex += 11;
      CHECK(moved == *ss);
      x = *sx;
    }
  }
}

TEST_CASE("continuity: triadic diagram is continuous with v_n = w + 3^n") {
  DiagramSpec triadic = DiagramSpec::triadic();
  OrderSpec l2r = OrderSpec::left_to_right();
  ContinuityReport rep = continuity_check(triadic, l2r, 6);
  CHECK(rep.continuous);
  long long step = 3;
  for (const auto& lvl : rep.levels) {
    CHECK(lvl.v == step);
    step *= 3;
  }
  // reversed order: vertical edges become minimal; still a homeomorphism
  ContinuityReport rev = continuity_check(triadic, l2r.reversed(), 6);
  CHECK(rev.continuous);
}

TEST_CASE("continuity: tridiagonal left-to-right fails on the minimal edge") {
  DiagramSpec c1 = classc(1);
  OrderSpec l2r = OrderSpec::left_to_right();
  ContinuityReport rep = continuity_check(c1, l2r, 6);
  CHECK_FALSE(rep.continuous);
  CHECK(rep.fail_level == 1);
  CHECK(rep.missing_min_edge);
  CHECK_FALSE(rep.two_source);
  // successor-source condition itself holds: one source per level
  CHECK(rep.levels[0].successor_sources.size() == 1);
  // v_{n+1} = v_n - 1 and only a maximal edge connects them
  CHECK(rep.missing_min_edge->v_next == rep.missing_min_edge->v_n - 1);

  ContinuityReport rev = continuity_check(c1, l2r.reversed(), 6);
  CHECK_FALSE(rev.continuous);
}

TEST_CASE("continuity: interleaving order gives a two-source witness") {
  DiagramSpec flat = DiagramSpec::explicit_levels(
      {}, RuleProfile{0,
                      {SequenceRule::constant(Rational(1)), SequenceRule::constant(Rational(1)),
                       SequenceRule::constant(Rational(1)), SequenceRule::constant(Rational(1))}});
  OrderSpec weave = OrderSpec::explicit_orders(
      {{Slot{0, 0}, Slot{2, 0}, Slot{1, 0}, Slot{3, 0}}});
  ContinuityReport rep = continuity_check(flat, weave, 6);
  CHECK_FALSE(rep.continuous);
  CHECK(rep.two_source);
  CHECK(rep.levels[0].successor_sources.size() == 2);

  ContinuityReport rev = continuity_check(flat, weave.reversed(), 6);
  CHECK_FALSE(rev.continuous);
  CHECK(rev.two_source);
}

TEST_CASE("continuity is invariant under horizontal shift") {
  DiagramSpec triadic = DiagramSpec::triadic();
  OrderSpec l2r = OrderSpec::left_to_right();
  ContinuityReport base = continuity_check(triadic, l2r, 5, 0);
  ContinuityReport moved = continuity_check(triadic, l2r, 5, 9);
  CHECK(base.continuous == moved.continuous);
  for (std::size_t i = 0; i < base.levels.size(); ++i)
    CHECK(*base.levels[i].v + 9 == *moved.levels[i].v);

  DiagramSpec c1 = classc(1);
  CHECK(continuity_check(c1, l2r, 6, 0).fail_level == continuity_check(c1, l2r, 6, -4).fail_level);
}

TEST_CASE("reverse order is an involution") {
  OrderSpec l2r = OrderSpec::left_to_right();
  CHECK(reverse_order(l2r) == OrderSpec::right_to_left());
  CHECK(reverse_order(reverse_order(l2r)) == l2r);

  OrderSpec weave = OrderSpec::explicit_orders(
      {{Slot{0, 0}, Slot{2, 0}, Slot{1, 0}, Slot{3, 0}}});
  CHECK(reverse_order(reverse_order(weave)) == weave);

  DiagramSpec c2 = classc(2);
  auto natural = l2r.ordered_slots(c2, 0);
  auto flipped = reverse_order(l2r).ordered_slots(c2, 0);
  std::reverse(flipped.begin(), flipped.end());
  CHECK(natural == flipped);
}
