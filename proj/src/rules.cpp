#include "hsbd/rules.hpp"

#include <algorithm>
#include <stdexcept>

#include "hsbd/errors.hpp"

namespace hsbd {

Growth combine_growth(const Growth& a, const Growth& b) {
  using K = Growth::Kind;
  if (a.kind == K::Geometric && b.kind == K::Geometric)
    return a.ratio >= b.ratio ? a : b;
  if (a.kind == K::Geometric) return a;
  if (b.kind == K::Geometric) return b;
  if (a.kind == K::Linear || b.kind == K::Linear) return Growth::linear();
  if (a.kind == K::Bounded || b.kind == K::Bounded) return Growth::bounded();
  return Growth::zero();
}

SequenceRule::SequenceRule(ExplicitPeriodicRule r) : v_(std::move(r)) {
  if (std::get<ExplicitPeriodicRule>(v_).cycle.empty())
    throw std::invalid_argument("explicit rule needs a nonempty cycle");
}

Rational SequenceRule::value(long long n) const {
  if (n < 0) throw std::invalid_argument("rule evaluated at negative level");
  if (const auto* c = std::get_if<ConstantRule>(&v_)) return c->value;
  if (const auto* a = std::get_if<AffineRule>(&v_)) return a->slope * Rational(n) + a->intercept;
  if (const auto* g = std::get_if<GeometricRule>(&v_))
    return g->base * pow_rational(g->ratio, n);
  const auto& e = std::get<ExplicitPeriodicRule>(v_);
  std::size_t p = e.prefix.size();
  if (static_cast<std::size_t>(n) < p) return e.prefix[static_cast<std::size_t>(n)];
  return e.cycle[static_cast<std::size_t>((static_cast<unsigned long long>(n) - p) % e.cycle.size())];
}

Growth SequenceRule::growth() const {
  if (const auto* c = std::get_if<ConstantRule>(&v_))
    return c->value.is_zero() ? Growth::zero() : Growth::bounded();
  if (const auto* a = std::get_if<AffineRule>(&v_)) {
    if (!a->slope.is_zero()) return Growth::linear();
    return a->intercept.is_zero() ? Growth::zero() : Growth::bounded();
  }
  if (const auto* g = std::get_if<GeometricRule>(&v_)) {
    if (g->base.is_zero()) return Growth::zero();
    if (g->ratio > Rational(1)) return Growth::geometric(g->ratio);
    if (g->ratio == Rational(1)) return Growth::bounded();
    return Growth::zero();  // |ratio| < 1 decays
  }
  const auto& e = std::get<ExplicitPeriodicRule>(v_);
  bool all_zero = std::all_of(e.cycle.begin(), e.cycle.end(), [](const Rational& v) { return v.is_zero(); });
  return all_zero ? Growth::zero() : Growth::bounded();
}

bool SequenceRule::eventually_zero() const { return growth().kind == Growth::Kind::Zero; }

bool SequenceRule::integer_valued() const {
  if (const auto* c = std::get_if<ConstantRule>(&v_)) return c->value.is_integer();
  if (const auto* a = std::get_if<AffineRule>(&v_)) return a->slope.is_integer() && a->intercept.is_integer();
  if (const auto* g = std::get_if<GeometricRule>(&v_)) {
    if (g->base.is_zero()) return true;
    return g->base.is_integer() && g->ratio.is_integer() && g->ratio >= Rational(1);
  }
  const auto& e = std::get<ExplicitPeriodicRule>(v_);
  auto ok = [](const Rational& v) { return v.is_integer(); };
  return std::all_of(e.prefix.begin(), e.prefix.end(), ok) && std::all_of(e.cycle.begin(), e.cycle.end(), ok);
}

bool SequenceRule::nonnegative_valued() const {
  if (const auto* c = std::get_if<ConstantRule>(&v_)) return !c->value.is_negative();
  if (const auto* a = std::get_if<AffineRule>(&v_))
    return !a->intercept.is_negative() && !a->slope.is_negative();
  if (const auto* g = std::get_if<GeometricRule>(&v_)) {
    if (g->base.is_zero()) return true;
    return !g->base.is_negative() && !g->ratio.is_negative();
  }
  const auto& e = std::get<ExplicitPeriodicRule>(v_);
  auto ok = [](const Rational& v) { return !v.is_negative(); };
  return std::all_of(e.prefix.begin(), e.prefix.end(), ok) && std::all_of(e.cycle.begin(), e.cycle.end(), ok);
}

bool SequenceRule::never_zero_from(long long from) const {
  if (const auto* c = std::get_if<ConstantRule>(&v_)) return !c->value.is_zero();
  if (const auto* a = std::get_if<AffineRule>(&v_)) {
    if (a->slope.is_zero()) return !a->intercept.is_zero();
    // strictly monotone: zero at most at the single level n0 = -intercept/slope
    Rational n0 = -(a->intercept / a->slope);
    return !(n0.is_integer() && n0 >= Rational(from));
  }
  if (const auto* g = std::get_if<GeometricRule>(&v_)) return !g->base.is_zero() && !g->ratio.is_zero();
  const auto& e = std::get<ExplicitPeriodicRule>(v_);
  for (std::size_t i = static_cast<std::size_t>(std::max<long long>(from, 0)); i < e.prefix.size(); ++i)
    if (e.prefix[i].is_zero()) return false;
  return std::none_of(e.cycle.begin(), e.cycle.end(), [](const Rational& v) { return v.is_zero(); });
}

std::optional<long long> SequenceRule::eventual_period() const {
  if (std::holds_alternative<ConstantRule>(v_)) return 1;
  if (const auto* a = std::get_if<AffineRule>(&v_)) {
    if (a->slope.is_zero()) return 1;
    return std::nullopt;
  }
  if (const auto* g = std::get_if<GeometricRule>(&v_)) {
    if (g->base.is_zero() || g->ratio == Rational(1)) return 1;
    return std::nullopt;
  }
  return static_cast<long long>(std::get<ExplicitPeriodicRule>(v_).cycle.size());
}

long long SequenceRule::stabilization() const {
  if (const auto* e = std::get_if<ExplicitPeriodicRule>(&v_))
    return static_cast<long long>(e->prefix.size());
  return 0;
}

bool SequenceRule::is_constant_value() const {
  if (std::holds_alternative<ConstantRule>(v_)) return true;
  if (const auto* a = std::get_if<AffineRule>(&v_)) return a->slope.is_zero();
  if (const auto* g = std::get_if<GeometricRule>(&v_))
    return g->base.is_zero() || g->ratio == Rational(1);
  const auto& e = std::get<ExplicitPeriodicRule>(v_);
  Rational first = e.cycle.front();
  auto same = [&first](const Rational& v) { return v == first; };
  return std::all_of(e.cycle.begin(), e.cycle.end(), same) &&
         std::all_of(e.prefix.begin(), e.prefix.end(), same);
}

std::string SequenceRule::to_text() const {
  if (const auto* c = std::get_if<ConstantRule>(&v_)) return "constant(" + c->value.str() + ")";
  if (const auto* a = std::get_if<AffineRule>(&v_))
    return "affine(" + a->slope.str() + "," + a->intercept.str() + ")";
  if (const auto* g = std::get_if<GeometricRule>(&v_))
    return "geometric(" + g->base.str() + "," + g->ratio.str() + ")";
  const auto& e = std::get<ExplicitPeriodicRule>(v_);
  std::string out = "explicit(";
  for (std::size_t i = 0; i < e.prefix.size(); ++i) {
    if (i) out += ",";
    out += e.prefix[i].str();
  }
  if (!e.prefix.empty()) out += " ";
  out += "|";
  for (std::size_t i = 0; i < e.cycle.size(); ++i) {
    out += i ? "," : " ";
    out += e.cycle[i].str();
  }
  out += ")";
  return out;
}

namespace {

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      std::string t;
      for (char c : cur)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
      if (!t.empty()) out.push_back(Rational::parse(t));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

}  // namespace

SequenceRule SequenceRule::parse(const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw std::invalid_argument("malformed rule '" + text + "'");
  std::string name = text.substr(0, open);
  std::string args = text.substr(open + 1, text.size() - open - 2);
  if (name == "constant") {
    auto v = parse_rational_list(args);
    if (v.size() != 1) throw std::invalid_argument("constant() takes one argument");
    return constant(v[0]);
  }
  if (name == "affine") {
    auto v = parse_rational_list(args);
    if (v.size() != 2) throw std::invalid_argument("affine() takes two arguments");
    return affine(v[0], v[1]);
  }
  if (name == "geometric") {
    auto v = parse_rational_list(args);
    if (v.size() != 2) throw std::invalid_argument("geometric() takes two arguments");
    return geometric(v[0], v[1]);
  }
  if (name == "explicit") {
    auto bar = args.find('|');
    std::vector<Rational> prefix, cycle;
    if (bar == std::string::npos) {
      cycle = parse_rational_list(args);
    } else {
      prefix = parse_rational_list(args.substr(0, bar));
      cycle = parse_rational_list(args.substr(bar + 1));
    }
    if (cycle.empty()) throw std::invalid_argument("explicit() needs a nonempty cycle");
    return explicit_periodic(std::move(prefix), std::move(cycle));
  }
  throw std::invalid_argument("unknown rule '" + name + "'");
}

bool operator==(const SequenceRule& a, const SequenceRule& b) {
  if (a.v_.index() != b.v_.index()) return false;
  if (const auto* c = std::get_if<ConstantRule>(&a.v_))
    return c->value == std::get<ConstantRule>(b.v_).value;
  if (const auto* x = std::get_if<AffineRule>(&a.v_)) {
    const auto& y = std::get<AffineRule>(b.v_);
    return x->slope == y.slope && x->intercept == y.intercept;
  }
  if (const auto* x = std::get_if<GeometricRule>(&a.v_)) {
    const auto& y = std::get<GeometricRule>(b.v_);
    return x->base == y.base && x->ratio == y.ratio;
  }
  const auto& x = std::get<ExplicitPeriodicRule>(a.v_);
  const auto& y = std::get<ExplicitPeriodicRule>(b.v_);
  return x.prefix == y.prefix && x.cycle == y.cycle;
}

}  // namespace hsbd
