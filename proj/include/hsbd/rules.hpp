#ifndef HSBD_RULES_HPP
#define HSBD_RULES_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hsbd/rational.hpp"

namespace hsbd {

// Asymptotic class of a rule-generated sequence, used by the finiteness
// decision procedures. Geometric carries the ratio.
struct Growth {
  enum class Kind { Zero, Bounded, Linear, Geometric };
  Kind kind = Kind::Bounded;
  Rational ratio;  // meaningful for Geometric only

  static Growth zero() { return {Kind::Zero, Rational(0)}; }
  static Growth bounded() { return {Kind::Bounded, Rational(0)}; }
  static Growth linear() { return {Kind::Linear, Rational(0)}; }
  static Growth geometric(Rational r) { return {Kind::Geometric, std::move(r)}; }
};

// Dominant growth of a sum of sequences.
Growth combine_growth(const Growth& a, const Growth& b);

struct ConstantRule {
  Rational value;
};
struct AffineRule {
  Rational slope;
  Rational intercept;  // value(n) = slope*n + intercept
};
struct GeometricRule {
  Rational base;
  Rational ratio;  // value(n) = base * ratio^n
};
struct ExplicitPeriodicRule {
  std::vector<Rational> prefix;
  std::vector<Rational> cycle;  // nonempty
};

// Closed algebra of level-indexed value generators. The algebra is kept
// closed so that series/product finiteness is decidable; arbitrary callbacks
// are deliberately not representable.
class SequenceRule {
 public:
  SequenceRule() : v_(ConstantRule{Rational(0)}) {}
  SequenceRule(ConstantRule r) : v_(std::move(r)) {}
  SequenceRule(AffineRule r) : v_(std::move(r)) {}
  SequenceRule(GeometricRule r) : v_(std::move(r)) {}
  SequenceRule(ExplicitPeriodicRule r);

  static SequenceRule constant(Rational c) { return SequenceRule(ConstantRule{std::move(c)}); }
  static SequenceRule affine(Rational slope, Rational intercept) {
    return SequenceRule(AffineRule{std::move(slope), std::move(intercept)});
  }
  static SequenceRule geometric(Rational base, Rational ratio) {
    return SequenceRule(GeometricRule{std::move(base), std::move(ratio)});
  }
  static SequenceRule explicit_periodic(std::vector<Rational> prefix, std::vector<Rational> cycle) {
    return SequenceRule(ExplicitPeriodicRule{std::move(prefix), std::move(cycle)});
  }

  Rational value(long long n) const;

  Growth growth() const;

  // True when value(n) = 0 for all n beyond some level.
  bool eventually_zero() const;

  // True when the rule provably yields a non-negative integer for every n.
  bool integer_valued() const;
  bool nonnegative_valued() const;

  // True when value(n) >= 1 for every n >= from.
  bool never_zero_from(long long from) const;

  // Values repeat with this period beyond stabilization(); nullopt when the
  // sequence is not eventually periodic (affine slope != 0, geometric ratio > 1).
  std::optional<long long> eventual_period() const;
  long long stabilization() const;  // level from which the eventual behavior holds

  bool is_constant_value() const;  // same value at every level

  std::string to_text() const;
  static SequenceRule parse(const std::string& text);

  friend bool operator==(const SequenceRule& a, const SequenceRule& b);

 private:
  std::variant<ConstantRule, AffineRule, GeometricRule, ExplicitPeriodicRule> v_;
};

}  // namespace hsbd

#endif
