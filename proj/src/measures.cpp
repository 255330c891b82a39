#include "hsbd/measures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hsbd/errors.hpp"

namespace hsbd {

MeasureVector MeasureVector::constant(Rational value) {
  if (value.is_negative()) throw std::invalid_argument("measure value must be non-negative");
  MeasureVector v;
  v.constant_ = std::move(value);
  return v;
}

MeasureVector MeasureVector::finite(Band profile) {
  MeasureVector v;
  v.finite_ = std::move(profile);
  return v;
}

const Rational& MeasureVector::constant_value() const {
  if (!is_constant()) throw std::logic_error("not a constant vector");
  return constant_;
}

const Band& MeasureVector::finite_profile() const {
  if (is_constant()) throw std::logic_error("not a finite vector");
  return *finite_;
}

bool operator==(const MeasureVector& a, const MeasureVector& b) {
  if (a.is_constant() != b.is_constant()) return false;
  if (a.is_constant()) return a.constant_ == b.constant_;
  return *a.finite_ == *b.finite_;
}

TailCheckResult verify_tail_invariant(const DiagramSpec& spec,
                                      const std::vector<MeasureVector>& vectors, long long N) {
  if (N < 1) throw std::invalid_argument("horizon must be >= 1");
  if (static_cast<long long>(vectors.size()) < N + 1)
    throw std::invalid_argument("need vectors for levels 0..N");
  for (long long n = 0; n < N; ++n) {
    const MeasureVector& prev = vectors[static_cast<std::size_t>(n)];
    const MeasureVector& next = vectors[static_cast<std::size_t>(n + 1)];
    if (prev.is_constant() != next.is_constant())
      throw MixedKindsError("constant and finite vectors at adjacent levels " + std::to_string(n) +
                            "/" + std::to_string(n + 1));
    if (prev.is_constant()) {
      if (prev.constant_value() != spec.row_sum_at(n) * next.constant_value())
        return {false, n};
    } else {
      if (!(prev.finite_profile() == convolve(spec.band_at(n), next.finite_profile())))
        return {false, n};
    }
  }
  return {true, std::nullopt};
}

MeasureVector pull_back(const DiagramSpec& spec, long long n, const MeasureVector& next) {
  if (next.is_constant())
    return MeasureVector::constant(spec.row_sum_at(n) * next.constant_value());
  return MeasureVector::finite(convolve(spec.band_at(n), next.finite_profile()));
}

bool fourier_check(const DiagramSpec& spec, const Band& p_next, const Band& p_prev, long long n) {
  LaurentPoly lhs = laurent_multiply(LaurentPoly::from_band(spec.band_at(n)),
                                     LaurentPoly::from_band(p_next));
  return lhs == LaurentPoly::from_band(p_prev);
}

Rational odometer_cylinder(const DiagramSpec& spec, const OdometerSpec& odo, long long n) {
  Rational value(1);
  for (long long l = 0; l < n; ++l) {
    Rational f = spec.band_at(l).coeff(odo.offset_at(l));
    if (f.is_zero())
      throw MissingEdgeError("odometer traverses a zero coefficient at level " + std::to_string(l));
    value /= f;
  }
  return value;
}

std::string verdict_str(Verdict v, long long horizon) {
  switch (v) {
    case Verdict::Finite: return "Finite";
    case Verdict::Infinite: return "Infinite";
    case Verdict::Undecided: return "Undecided(" + std::to_string(horizon) + ")";
  }
  return "?";
}

namespace {

// Decides sum_n num(n)/den(n) for integer-valued rule data where den never
// vanishes and num, when not eventually zero, is >= 1 infinitely often.
std::pair<Verdict, std::string> decide_ratio_sum(const Growth& den, const Growth& num) {
  using K = Growth::Kind;
  if (num.kind == K::Zero) return {Verdict::Finite, "numerator vanishes eventually"};
  switch (den.kind) {
    case K::Zero:
      throw MissingEdgeError("denominator rule vanishes eventually");
    case K::Bounded:
    case K::Linear:
      return {Verdict::Infinite, "harmonic-type lower bound: denominator grows at most linearly"};
    case K::Geometric:
      if (num.kind == K::Bounded || num.kind == K::Linear)
        return {Verdict::Finite, "geometric comparison: denominator outgrows numerator"};
      if (num.ratio < den.ratio)
        return {Verdict::Finite, "geometric comparison of ratios"};
      return {Verdict::Infinite, "terms do not vanish: numerator ratio >= denominator ratio"};
  }
  return {Verdict::Undecided, ""};
}

std::pair<Verdict, std::string> odometer_verdict(const DiagramSpec& spec, const OdometerSpec& odo,
                                                 long long N) {
  auto tail = spec.tail_profile();
  auto period = odo.offsets.eventual_period();
  if (!tail || !period)
    return {Verdict::Undecided, "no closed-form tail to analyze; partial sums only"};
  long long start = std::max(spec.tail_start(), odo.offsets.stabilization());
  std::pair<Verdict, std::string> result{Verdict::Finite, "every residue class converges"};
  for (long long t = 0; t < *period; ++t) {
    long long k = odo.offset_at(start + t);
    if (k < tail->lo || k > tail->hi())
      throw MissingEdgeError("odometer offset " + std::to_string(k) + " outside the band support");
    const SequenceRule& f_rule = tail->rules[static_cast<std::size_t>(k - tail->lo)];
    if (f_rule.eventually_zero())
      throw MissingEdgeError("odometer offset " + std::to_string(k) +
                             " has eventually-zero coefficients");
    Growth sigma = Growth::zero();
    for (std::size_t idx = 0; idx < tail->rules.size(); ++idx) {
      if (static_cast<long long>(idx) + tail->lo == k) continue;
      sigma = combine_growth(sigma, tail->rules[idx].growth());
    }
    auto [verdict, reason] = decide_ratio_sum(f_rule.growth(), sigma);
    if (verdict == Verdict::Infinite)
      return {Verdict::Infinite, reason + " (offset " + std::to_string(k) + ")"};
  }
  (void)N;
  return result;
}

}  // namespace

ExtensionReport extension_report(const DiagramSpec& spec, const OdometerSpec& odo, long long N) {
  if (N < 1) throw std::invalid_argument("horizon must be >= 1");
  ExtensionReport rep;
  rep.horizon = N;
  Rational alpha(1);
  Rational direct(1);
  Rational prod_r(1);  // r_0 ... r_{n-1}
  Rational prod_f(1);  // f^(0) ... f^(n)
  for (long long n = 0; n < N; ++n) {
    Band b = spec.band_at(n);
    long long k = odo.offset_at(n);
    Rational f = b.coeff(k);
    if (f.is_zero())
      throw MissingEdgeError("odometer traverses a zero coefficient at level " + std::to_string(n));
    Rational r = b.row_sum();
    Rational sigma = r - f;
    rep.fs.push_back(f);
    rep.sigmas.push_back(sigma);
    alpha *= r / f;
    rep.alphas.push_back(alpha);
    prod_f *= f;
    direct += prod_r / prod_f * sigma;
    prod_r *= r;
  }
  if (direct != alpha)
    throw std::logic_error("telescoped and direct extension values disagree");
  rep.partial_value = alpha;
  auto [verdict, reason] = odometer_verdict(spec, odo, N);
  rep.verdict = verdict;
  rep.reason = reason;
  return rep;
}

TailParallelResult tail_parallel(const OdometerSpec& a, const OdometerSpec& b, long long horizon) {
  TailParallelResult res;
  res.horizon = horizon;
  auto pa = a.offsets.eventual_period();
  auto pb = b.offsets.eventual_period();
  if (!pa || !pb) {
    res.kind = TailParallelResult::Kind::Undecided;
    return res;
  }
  long long start = std::max(a.offsets.stabilization(), b.offsets.stabilization());
  long long cycle = std::lcm(*pa, *pb);
  bool eventually_equal = true;
  for (long long t = 0; t < cycle; ++t)
    if (a.offset_at(start + t) != b.offset_at(start + t)) {
      eventually_equal = false;
      break;
    }
  if (eventually_equal) {
    long long shift = b.vertex_at(start) - a.vertex_at(start);
    res.kind = shift == 0 ? TailParallelResult::Kind::Equal : TailParallelResult::Kind::Parallel;
    res.shift = shift;
    return res;
  }
  res.kind = TailParallelResult::Kind::NotParallel;
  for (long long n = 0; n < start + 2 * cycle && res.witness_levels.size() < 2; ++n)
    if (a.offset_at(n) != b.offset_at(n)) res.witness_levels.push_back(n);
  return res;
}

std::set<long long> dominating_offsets(const DiagramSpec& spec, long long n) {
  Band b = spec.band_at(n);
  Rational best(0);
  for (long long k = b.lo(); k <= b.hi(); ++k) best = std::max(best, b.coeff(k));
  std::set<long long> out;
  for (long long k = b.lo(); k <= b.hi(); ++k)
    if (b.coeff(k) == best) out.insert(k);
  return out;
}

namespace {

bool eventually_constant(const SequenceRule& r) {
  auto p = r.eventual_period();
  return p && *p == 1;
}

// Offsets selected by a column of the restricted incidence matrix.
std::vector<long long> selected_offsets(long long column, long long next_lo, long long next_hi,
                                        long long band_lo, long long band_hi) {
  std::vector<long long> out;
  for (long long k = column - next_hi; k <= column - next_lo; ++k)
    if (k >= band_lo && k <= band_hi) out.push_back(k);
  return out;
}

std::pair<Verdict, std::string> ecs_verdict(const DiagramSpec& spec, const WindowFamily& win) {
  auto tail = spec.tail_profile();
  if (!tail || !eventually_constant(win.lo) || !eventually_constant(win.hi))
    return {Verdict::Undecided, "window or diagram has no eventually-constant closed form"};
  long long t0 = std::max({spec.tail_start(), win.lo.stabilization(), win.hi.stabilization()});
  long long wlo = win.lo_at(t0), whi = win.hi_at(t0);

  // Column-sum rule multisets must agree across the window.
  std::vector<std::string> reference;
  for (long long j = wlo; j <= whi; ++j) {
    std::vector<std::string> names;
    for (long long k : selected_offsets(j, wlo, whi, tail->lo, tail->hi()))
      names.push_back(tail->rules[static_cast<std::size_t>(k - tail->lo)].to_text());
    std::sort(names.begin(), names.end());
    if (j == wlo)
      reference = names;
    else if (names != reference)
      return {Verdict::Undecided, "equal column sums hold numerically but are not certified symbolically"};
  }

  auto sel = selected_offsets(wlo, wlo, whi, tail->lo, tail->hi());
  Growth den = Growth::zero();
  Growth num = Growth::zero();
  for (long long k = tail->lo; k <= tail->hi(); ++k) {
    const Growth g = tail->rules[static_cast<std::size_t>(k - tail->lo)].growth();
    if (std::find(sel.begin(), sel.end(), k) != sel.end())
      den = combine_growth(den, g);
    else
      num = combine_growth(num, g);
  }
  auto [verdict, reason] = decide_ratio_sum(den, num);
  return {verdict, "window sizes bounded; " + reason};
}

}  // namespace

EcsExtensionReport ecs_subdiagram_extension(const DiagramSpec& spec, const WindowFamily& windows,
                                            long long N) {
  if (N < 1) throw std::invalid_argument("horizon must be >= 1");
  EcsExtensionReport rep;
  rep.horizon = N;

  long long probe = N;
  if (eventually_constant(windows.lo) && eventually_constant(windows.hi))
    probe = std::max(N, std::max(windows.lo.stabilization(), windows.hi.stabilization()) + 1);

  Rational alpha_ratio(1);  // prod r_i/c_i
  Rational direct(1);
  Rational prod_r(1);
  Rational prod_c(1);
  Rational comp(1);
  bool comp_defined = true;
  rep.window_sizes.push_back(windows.size_at(0));
  for (long long n = 0; n < probe; ++n) {
    Band b = spec.band_at(n);
    long long wlo = windows.lo_at(n), whi = windows.hi_at(n);
    long long nlo = windows.lo_at(n + 1), nhi = windows.hi_at(n + 1);
    if (whi < wlo || nhi < nlo) throw SemanticError("empty window at level " + std::to_string(n));
    if (whi - wlo > 1'000'000) throw IntractableError("window too wide");

    std::optional<Rational> column_sum;
    for (long long j = wlo; j <= whi; ++j) {
      Rational c(0);
      for (long long i = nlo; i <= nhi; ++i) c += b.coeff(j - i);
      if (!column_sum) {
        column_sum = c;
      } else if (c != *column_sum) {
        throw NotEcsError(n, wlo, j,
                          "columns " + std::to_string(wlo) + " and " + std::to_string(j) +
                              " of level " + std::to_string(n) + " have different sums " +
                              column_sum->str() + " vs " + c.str());
      }
    }
    Rational c = *column_sum;
    if (c.is_zero())
      throw MissingEdgeError("window subdiagram has no edges at level " + std::to_string(n));
    if (n >= N) continue;  // probed only for validation beyond the horizon

    Rational r = b.row_sum();
    Rational wsize_next(Int(static_cast<long>(nhi - nlo + 1)));
    Rational wsize_cur(Int(static_cast<long>(whi - wlo + 1)));
    rep.rs.push_back(r);
    rep.cs.push_back(c);
    rep.window_sizes.push_back(Int(static_cast<long>(nhi - nlo + 1)));
    alpha_ratio *= r / c;
    rep.alphas.push_back(alpha_ratio * wsize_next);
    prod_c *= c;
    direct += prod_r / prod_c * (r * wsize_next - c * wsize_cur);
    prod_r *= r;

    if (comp_defined) {
      Rational diag = b.coeff(0);
      if (diag.is_zero()) {
        comp_defined = false;
        rep.component_products.clear();
      } else {
        comp *= diag / c;
        rep.component_products.push_back(comp);
      }
    }
  }
  rep.partial_value = Rational(1) + rep.alphas.back() - Rational(rep.window_sizes.front());
  if (direct != rep.partial_value)
    throw std::logic_error("telescoped and direct extension values disagree");
  auto [verdict, reason] = ecs_verdict(spec, windows);
  rep.verdict = verdict;
  rep.reason = reason;
  return rep;
}

std::vector<Rational> elementary_symmetric(const std::vector<Rational>& values, long long lmax) {
  if (lmax < 0) throw std::invalid_argument("negative degree");
  std::vector<Rational> e(static_cast<std::size_t>(lmax) + 1, Rational(0));
  e[0] = Rational(1);
  for (const Rational& v : values)
    for (long long j = std::min<long long>(lmax, static_cast<long long>(values.size())); j >= 1; --j)
      e[static_cast<std::size_t>(j)] += v * e[static_cast<std::size_t>(j - 1)];
  return e;
}

namespace {

constexpr long long kClassCGuard = 4096;

std::vector<Int> diagonal_values(const SequenceRule& diagonal, long long n, long long m) {
  std::vector<Int> a;
  a.reserve(static_cast<std::size_t>(m));
  for (long long j = n; j < n + m; ++j) {
    Rational v = diagonal.value(j);
    if (!v.is_integer() || v < Rational(1))
      throw RuleOverflowError("class-C diagonal must be a positive integer at level " +
                              std::to_string(j));
    a.push_back(v.num());
  }
  return a;
}

}  // namespace

Int classc_g_center(const SequenceRule& diagonal, long long n, long long m) {
  if (m < 1) throw std::invalid_argument("span must be >= 1");
  if (m > kClassCGuard) throw IntractableError("span exceeds the class-C guard");
  std::vector<Int> a = diagonal_values(diagonal, n, m);
  // e_0..e_m of the diagonal values
  std::vector<Int> e(static_cast<std::size_t>(m) + 1, Int(0));
  e[0] = 1;
  for (const Int& v : a)
    for (long long j = m; j >= 1; --j)
      e[static_cast<std::size_t>(j)] += v * e[static_cast<std::size_t>(j - 1)];
  Int total(0);
  for (long long k = 0; 2 * k <= m; ++k)
    total += binomial(static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k)) *
             e[static_cast<std::size_t>(m - 2 * k)];
  return total;
}

Rational classc_product_factor(const SequenceRule& diagonal, long long n, long long m) {
  if (m < 0) throw std::invalid_argument("negative span");
  Rational p(1);
  for (const Int& v : diagonal_values(diagonal, n, m)) p *= Rational(v, v + 2);
  return p;
}

Rational classc_no_measure_term(const SequenceRule& diagonal, long long n, long long l, long long m) {
  if (l < 0) throw std::invalid_argument("negative subset size");
  if (m < l) throw std::invalid_argument("span must be >= subset size");
  if (m > kClassCGuard) throw IntractableError("span exceeds the class-C guard");
  std::vector<Rational> recip;
  recip.reserve(static_cast<std::size_t>(m));
  for (const Int& v : diagonal_values(diagonal, n, m)) recip.emplace_back(Int(1), v);
  std::vector<Rational> e = elementary_symmetric(recip, l);
  return classc_product_factor(diagonal, n, m) * e[static_cast<std::size_t>(l)];
}

Rational classc_stochastic_center(const SequenceRule& diagonal, long long n, long long m) {
  Int g = classc_g_center(diagonal, n, m);
  Int den(1);
  for (const Int& v : diagonal_values(diagonal, n, m)) den *= v + 2;
  return Rational(g, den);
}

MarkovKernel MarkovKernel::uniform(Rational initial) {
  if (!(initial > Rational(0))) throw std::invalid_argument("initial value must be positive");
  MarkovKernel k;
  k.initial_ = std::move(initial);
  return k;
}

MarkovKernel MarkovKernel::explicit_kernel(Rational initial, std::vector<SlotProbs> levels) {
  if (!(initial > Rational(0))) throw std::invalid_argument("initial value must be positive");
  if (levels.empty()) throw std::invalid_argument("explicit kernel needs at least one level list");
  for (const auto& list : levels) {
    Rational sum(0);
    std::set<Slot> seen;
    for (const auto& [slot, p] : list) {
      if (!(p > Rational(0)))
        throw SemanticError("edge probability must be positive");
      if (!seen.insert(slot).second) throw SemanticError("duplicate slot in kernel level");
      sum += p;
    }
    if (sum != Rational(1)) throw SemanticError("per-vertex outgoing probabilities must sum to 1");
  }
  MarkovKernel k;
  k.initial_ = std::move(initial);
  k.levels_ = std::move(levels);
  return k;
}

Rational MarkovKernel::probability(const DiagramSpec& spec, long long level, const Slot& slot) const {
  if (is_uniform()) return Rational(1) / spec.row_sum_at(level);
  const auto& list = levels_[static_cast<std::size_t>(level) % levels_.size()];
  for (const auto& [s, p] : list)
    if (s == slot) return p;
  throw MissingEdgeError("kernel assigns no probability to slot (" + std::to_string(slot.offset) +
                         "," + std::to_string(slot.copy) + ") at level " + std::to_string(level));
}

void MarkovKernel::validate_against(const DiagramSpec& spec, long long levels) const {
  if (is_uniform()) return;
  for (long long n = 0; n < levels; ++n) {
    std::vector<Slot> expected;
    try {
      expected = level_slots(spec, n);
    } catch (const FiniteHorizonError&) {
      break;
    }
    const auto& list = levels_[static_cast<std::size_t>(n) % levels_.size()];
    std::vector<Slot> got;
    got.reserve(list.size());
    for (const auto& [s, p] : list) got.push_back(s);
    std::sort(got.begin(), got.end());
    if (got != expected)
      throw SemanticError("kernel slots do not match the edges of level " + std::to_string(n));
  }
}

Rational markov_cylinder(const DiagramSpec& spec, const MarkovKernel& kernel,
                         const FinitePath& path) {
  validate_path(spec, path);
  Rational value = kernel.initial();
  for (const Edge& e : path.edges)
    value *= kernel.probability(spec, e.level, Slot{e.offset, e.copy});
  return value;
}

MarkovCheckResult markov_tail_invariance_check(const DiagramSpec& spec, const MarkovKernel& kernel,
                                               long long depth, unsigned long long guard) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  MarkovCheckResult result;
  for (long long d = 1; d <= depth; ++d) {
    std::vector<std::vector<Slot>> slots;
    unsigned long long total = 1;
    for (long long l = 0; l < d; ++l) {
      slots.push_back(level_slots(spec, l));
      if (total > guard / slots.back().size())
        throw IntractableError("path enumeration guard exceeded");
      total *= slots.back().size();
    }
    // Every slot chain is one path into the range vertex 0 at level d.
    std::vector<std::size_t> choice(static_cast<std::size_t>(d), 0);
    std::optional<Rational> reference;
    std::vector<std::size_t> reference_choice;
    auto build_path = [&](const std::vector<std::size_t>& ch) {
      FinitePath p;
      std::vector<long long> vertices(static_cast<std::size_t>(d) + 1, 0);
      for (long long l = d - 1; l >= 0; --l)
        vertices[static_cast<std::size_t>(l)] =
            vertices[static_cast<std::size_t>(l + 1)] + slots[static_cast<std::size_t>(l)][ch[static_cast<std::size_t>(l)]].offset;
      p.base_vertex = vertices[0];
      for (long long l = 0; l < d; ++l) {
        Slot s = slots[static_cast<std::size_t>(l)][ch[static_cast<std::size_t>(l)]];
        p.edges.push_back(Edge{l, s.offset, s.copy});
      }
      return p;
    };
    for (unsigned long long idx = 0; idx < total; ++idx) {
      unsigned long long rest = idx;
      Rational value = kernel.initial();
      for (long long l = 0; l < d; ++l) {
        const auto& ls = slots[static_cast<std::size_t>(l)];
        choice[static_cast<std::size_t>(l)] = static_cast<std::size_t>(rest % ls.size());
        rest /= ls.size();
        value *= kernel.probability(spec, l, ls[choice[static_cast<std::size_t>(l)]]);
      }
      if (!reference) {
        reference = value;
        reference_choice = choice;
      } else if (value != *reference) {
        result.ok = false;
        result.checked_depth = d;
        result.witness = {build_path(reference_choice), build_path(choice)};
        result.witness_values = {*reference, value};
        return result;
      }
    }
    result.checked_depth = d;
  }
  return result;
}

std::vector<DepossoelRow> depossel_ratio_trace(const DiagramSpec& spec, long long i, long long n,
                                               long long j, long long M) {
  if (!spec.is_class_c()) throw std::invalid_argument("ratio trace needs a class-C diagram");
  if (M < 1) throw std::invalid_argument("horizon must be >= 1");
  const SequenceRule& diag = spec.class_c_diagonal();
  std::vector<DepossoelRow> rows;
  Band acc = spec.band_at(n);
  Int prod_a(1);
  Int prod_a2(1);
  for (long long l = 0; l < n; ++l) {
    Int a = diag.value(l).num();
    prod_a *= a;
    prod_a2 *= a + 2;
  }
  for (long long m = 1; m <= M; ++m) {
    if (m > 1) acc = convolve(spec.band_at(n + m - 1), acc);
    Int a = diag.value(n + m - 1).num();
    prod_a *= a;
    prod_a2 *= a + 2;
    DepossoelRow row;
    row.m = m;
    Rational g = acc.coeff(j - i);
    row.g = g.num();
    row.mu_partial = g / Rational(prod_a);
    row.nu_partial = g / Rational(prod_a2);
    if (!g.is_zero()) {
      row.ratio = row.mu_partial / row.nu_partial;
      if (*row.ratio != Rational(prod_a2, prod_a))
        throw std::logic_error("ratio trace does not telescope");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hsbd
