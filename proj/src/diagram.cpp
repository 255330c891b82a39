#include "hsbd/diagram.hpp"

#include <algorithm>
#include <stdexcept>

#include "hsbd/errors.hpp"

namespace hsbd {

namespace {

constexpr long long kTriadicWidthGuard = 10'000'000;

void validate_incidence_rule(const SequenceRule& rule, const char* what) {
  if (!rule.nonnegative_valued())
    throw RuleOverflowError("coefficient must be non-negative (" + std::string(what) + " rule " +
                            rule.to_text() + ")");
  if (!rule.integer_valued())
    throw RuleOverflowError("coefficient must be an integer (" + std::string(what) + " rule " +
                            rule.to_text() + ")");
}

void validate_profile(const RuleProfile& profile) {
  if (profile.rules.size() < 2)
    throw std::invalid_argument("band support must have width >= 2");
  for (const auto& r : profile.rules) validate_incidence_rule(r, "incidence");
  if (!profile.rules.front().never_zero_from(0) || !profile.rules.back().never_zero_from(0))
    throw RuleOverflowError("endpoint rule vanishes at some level; support would degenerate");
}

long long pow3(long long n) {
  long long r = 1;
  for (long long i = 0; i < n; ++i) r *= 3;
  return r;
}

}  // namespace

Band RuleProfile::band_at(long long n) const {
  std::vector<Rational> coeffs;
  coeffs.reserve(rules.size());
  for (const auto& r : rules) {
    Rational v = r.value(n);
    if (v.is_negative())
      throw RuleOverflowError("coefficient must be non-negative at level " + std::to_string(n));
    if (!v.is_integer())
      throw RuleOverflowError("coefficient must be an integer at level " + std::to_string(n));
    coeffs.push_back(std::move(v));
  }
  return Band(lo, std::move(coeffs));
}

DiagramSpec DiagramSpec::from_rules(RuleProfile profile) {
  validate_profile(profile);
  DiagramSpec spec;
  spec.kind_ = Kind::Rules;
  spec.profile_ = std::move(profile);
  return spec;
}

DiagramSpec DiagramSpec::explicit_levels(std::vector<Band> bands, std::optional<RuleProfile> tail) {
  if (bands.empty() && !tail) throw std::invalid_argument("explicit spec needs at least one band");
  for (const auto& b : bands) {
    if (!b.is_integer()) throw RuleOverflowError("explicit band has a non-integer coefficient");
    if (b.width() < 2) throw std::invalid_argument("band support must have width >= 2");
  }
  if (tail) validate_profile(*tail);
  DiagramSpec spec;
  spec.kind_ = Kind::Explicit;
  spec.explicit_bands_ = std::move(bands);
  spec.has_tail_ = tail.has_value();
  if (tail) spec.profile_ = std::move(*tail);
  return spec;
}

DiagramSpec DiagramSpec::class_c(SequenceRule diagonal) {
  validate_incidence_rule(diagonal, "diagonal");
  if (!diagonal.never_zero_from(0))
    throw RuleOverflowError("class-C diagonal must be >= 1 at every level");
  RuleProfile profile;
  profile.lo = -1;
  profile.rules = {SequenceRule::constant(Rational(1)), std::move(diagonal),
                   SequenceRule::constant(Rational(1))};
  return from_rules(std::move(profile));
}

DiagramSpec DiagramSpec::triadic() {
  DiagramSpec spec;
  spec.kind_ = Kind::Triadic;
  return spec;
}

Band DiagramSpec::band_at(long long n) const {
  if (n < 0) throw std::invalid_argument("negative level");
  switch (kind_) {
    case Kind::Rules:
      return profile_.band_at(n);
    case Kind::Explicit:
      if (n < static_cast<long long>(explicit_bands_.size()))
        return explicit_bands_[static_cast<std::size_t>(n)];
      if (!has_tail_)
        throw FiniteHorizonError("spec has no bands beyond level " +
                                 std::to_string(explicit_bands_.size() - 1));
      return profile_.band_at(n);
    case Kind::Triadic: {
      if (n > 14 || 2 * pow3(n) + 1 > kTriadicWidthGuard)
        throw IntractableError("triadic band too wide at level " + std::to_string(n));
      long long step = pow3(n);
      std::vector<Rational> coeffs(static_cast<std::size_t>(2 * step + 1), Rational(0));
      coeffs[0] = Rational(1);
      coeffs[static_cast<std::size_t>(step)] = Rational(1);
      coeffs[static_cast<std::size_t>(2 * step)] = Rational(1);
      return Band(-2 * step, std::move(coeffs));
    }
  }
  throw std::logic_error("unreachable");
}

Rational DiagramSpec::row_sum_at(long long n) const {
  if (kind_ == Kind::Triadic) return Rational(3);
  return band_at(n).row_sum();
}

Int DiagramSpec::height(long long n) const {
  if (n < 0) throw std::invalid_argument("negative level");
  Int h(1);
  for (long long l = 0; l < n; ++l) {
    Rational r = row_sum_at(l);
    h *= r.num();  // integer for incidence bands
  }
  return h;
}

DiagramSpec DiagramSpec::telescope(const std::vector<long long>& cuts) const {
  if (cuts.size() < 2 || cuts.front() != 0)
    throw std::invalid_argument("cuts must start at 0 and contain at least two levels");
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i] >= cuts[i + 1]) throw std::invalid_argument("cuts must be strictly increasing");
  std::vector<Band> bands;
  bands.reserve(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Band acc = band_at(cuts[k]);
    for (long long l = cuts[k] + 1; l < cuts[k + 1]; ++l) acc = convolve(band_at(l), acc);
    bands.push_back(std::move(acc));
  }
  return explicit_levels(std::move(bands), std::nullopt);
}

BoundedSizeParams DiagramSpec::bounded_size_params(long long n) const {
  Band b = band_at(n);
  long long p = -b.lo();
  long long q = b.hi();
  long long t = std::max(p, q);
  bool symmetric = (p == q);
  bool full = symmetric;
  if (full) {
    for (long long k = -t; k <= t; ++k)
      if (b.coeff(k).is_zero()) {
        full = false;
        break;
      }
  }
  return BoundedSizeParams{t, b.row_sum().num(), symmetric, full};
}

Band DiagramSpec::path_count_band(long long n, long long m) const {
  if (m < 1) throw std::invalid_argument("span must be >= 1");
  Band acc = band_at(n);
  for (long long l = n + 1; l < n + m; ++l) acc = convolve(band_at(l), acc);
  return acc;
}

bool DiagramSpec::is_class_c() const {
  if (kind_ != Kind::Rules) return false;
  if (profile_.lo != -1 || profile_.rules.size() != 3) return false;
  return profile_.rules[0] == SequenceRule::constant(Rational(1)) &&
         profile_.rules[2] == SequenceRule::constant(Rational(1)) &&
         profile_.rules[1].never_zero_from(0);
}

const SequenceRule& DiagramSpec::class_c_diagonal() const {
  if (!is_class_c()) throw std::invalid_argument("spec is not of class-C shape");
  return profile_.rules[1];
}

std::optional<RuleProfile> DiagramSpec::tail_profile() const {
  if (kind_ == Kind::Rules) return profile_;
  if (kind_ == Kind::Explicit && has_tail_) return profile_;
  return std::nullopt;
}

long long DiagramSpec::tail_start() const {
  if (kind_ == Kind::Explicit) return static_cast<long long>(explicit_bands_.size());
  return 0;
}

bool operator==(const DiagramSpec& a, const DiagramSpec& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case DiagramSpec::Kind::Rules:
      return a.profile_ == b.profile_;
    case DiagramSpec::Kind::Explicit:
      return a.explicit_bands_ == b.explicit_bands_ && a.has_tail_ == b.has_tail_ &&
             (!a.has_tail_ || a.profile_ == b.profile_);
    case DiagramSpec::Kind::Triadic:
      return true;
  }
  return false;
}

long long OdometerSpec::offset_at(long long n) const {
  Rational v = offsets.value(n);
  if (!v.is_integer()) throw std::invalid_argument("odometer offset is not an integer");
  return static_cast<long long>(v.num().get_si());
}

long long OdometerSpec::vertex_at(long long n) const {
  long long v = base;
  for (long long l = 0; l < n; ++l) v -= offset_at(l);
  return v;
}

void validate_odometer(const DiagramSpec& spec, const OdometerSpec& odo, long long probe_levels) {
  if (!odo.offsets.eventual_period())
    throw SemanticError("odometer offsets must be a bounded rule (constant or explicit-periodic)");
  if (!odo.offsets.integer_valued())
    throw SemanticError("odometer offsets must be integers");
  for (long long n = 0; n < probe_levels; ++n) {
    std::optional<Band> b;
    try {
      b = spec.band_at(n);
    } catch (const FiniteHorizonError&) {
      break;  // probe stops at the spec's explicit horizon
    }
    long long k = odo.offset_at(n);
    if (k < b->lo() || k > b->hi() || b->coeff(k).is_zero())
      throw MissingEdgeError("no edge along odometer offset " + std::to_string(k) + " at level " +
                             std::to_string(n));
  }
}

long long WindowFamily::lo_at(long long n) const {
  Rational v = lo.value(n);
  if (!v.is_integer()) throw SemanticError("window bound is not an integer");
  return static_cast<long long>(v.num().get_si());
}

long long WindowFamily::hi_at(long long n) const {
  Rational v = hi.value(n);
  if (!v.is_integer()) throw SemanticError("window bound is not an integer");
  return static_cast<long long>(v.num().get_si());
}

Int WindowFamily::size_at(long long n) const {
  long long l = lo_at(n), h = hi_at(n);
  if (h < l) throw SemanticError("empty window at level " + std::to_string(n));
  return Int(static_cast<long>(h - l + 1));
}

long long FinitePath::vertex_at(long long level) const {
  long long v = base_vertex;
  for (long long l = 0; l < level; ++l) v -= edges[static_cast<std::size_t>(l)].offset;
  return v;
}

std::string FinitePath::str() const {
  std::string out = "v0=" + std::to_string(base_vertex);
  for (const auto& e : edges)
    out += " (" + std::to_string(e.level) + "," + std::to_string(e.offset) + "," +
           std::to_string(e.copy) + ")";
  return out;
}

void validate_path(const DiagramSpec& spec, const FinitePath& path) {
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const Edge& e = path.edges[i];
    if (e.level != static_cast<long long>(i))
      throw std::invalid_argument("path edges must be consecutive from level 0");
    Band b = spec.band_at(e.level);
    Rational c = b.coeff(e.offset);
    if (c.is_zero()) throw MissingEdgeError("no edge at offset " + std::to_string(e.offset) +
                                            " on level " + std::to_string(e.level));
    if (e.copy < 0 || Rational(e.copy) >= c)
      throw MissingEdgeError("edge copy out of range on level " + std::to_string(e.level));
  }
}

std::vector<Slot> level_slots(const DiagramSpec& spec, long long n) {
  Band b = spec.band_at(n);
  std::vector<Slot> slots;
  for (long long k = b.lo(); k <= b.hi(); ++k) {
    Rational c = b.coeff(k);
    if (c.is_zero()) continue;
    long long copies = static_cast<long long>(c.num().get_si());
    for (long long i = 0; i < copies; ++i) slots.push_back(Slot{k, i});
  }
  return slots;
}

}  // namespace hsbd
