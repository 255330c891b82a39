#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsbd/rules.hpp"

using namespace hsbd;

TEST_CASE("rule evaluation") {
  CHECK(SequenceRule::constant(Rational(3)).value(17) == Rational(3));
  CHECK(SequenceRule::affine(Rational(1), Rational(1)).value(4) == Rational(5));
  CHECK(SequenceRule::geometric(Rational(2), Rational(2)).value(2) == Rational(8));
  SequenceRule e = SequenceRule::explicit_periodic({Rational(9)}, {Rational(1), Rational(2)});
  CHECK(e.value(0) == Rational(9));
  CHECK(e.value(1) == Rational(1));
  CHECK(e.value(2) == Rational(2));
  CHECK(e.value(3) == Rational(1));
  CHECK_THROWS_AS(SequenceRule::explicit_periodic({}, {}), std::invalid_argument);
}

TEST_CASE("growth classification") {
  CHECK(SequenceRule::constant(Rational(0)).growth().kind == Growth::Kind::Zero);
  CHECK(SequenceRule::constant(Rational(5)).growth().kind == Growth::Kind::Bounded);
  CHECK(SequenceRule::affine(Rational(2), Rational(0)).growth().kind == Growth::Kind::Linear);
  CHECK(SequenceRule::affine(Rational(0), Rational(2)).growth().kind == Growth::Kind::Bounded);
  Growth g = SequenceRule::geometric(Rational(3), Rational(2)).growth();
  CHECK(g.kind == Growth::Kind::Geometric);
  CHECK(g.ratio == Rational(2));
  CHECK(SequenceRule::geometric(Rational(3), Rational(1)).growth().kind == Growth::Kind::Bounded);
  CHECK(SequenceRule::geometric(Rational(0), Rational(7)).growth().kind == Growth::Kind::Zero);

  Growth combined = combine_growth(Growth::linear(), Growth::geometric(Rational(3)));
  CHECK(combined.kind == Growth::Kind::Geometric);
  CHECK(combined.ratio == Rational(3));
  CHECK(combine_growth(Growth::geometric(Rational(2)), Growth::geometric(Rational(5))).ratio ==
        Rational(5));
  CHECK(combine_growth(Growth::zero(), Growth::zero()).kind == Growth::Kind::Zero);
}

TEST_CASE("integer and sign validity") {
  CHECK(SequenceRule::geometric(Rational(2), Rational(2)).integer_valued());
  CHECK_FALSE(SequenceRule::geometric(Rational(2), Rational(Int(3), Int(2))).integer_valued());
  CHECK_FALSE(SequenceRule::affine(Rational(-1), Rational(10)).nonnegative_valued());
  CHECK(SequenceRule::explicit_periodic({}, {Rational(0), Rational(2)}).integer_valued());
}

TEST_CASE("never zero from a level") {
  CHECK(SequenceRule::constant(Rational(1)).never_zero_from(0));
  CHECK_FALSE(SequenceRule::constant(Rational(0)).never_zero_from(0));
  // affine n: zero exactly at level 0
  SequenceRule id = SequenceRule::affine(Rational(1), Rational(0));
  CHECK_FALSE(id.never_zero_from(0));
  CHECK(id.never_zero_from(1));
  CHECK_FALSE(SequenceRule::explicit_periodic({}, {Rational(1), Rational(0)}).never_zero_from(3));
}

TEST_CASE("periodicity metadata") {
  CHECK(*SequenceRule::constant(Rational(2)).eventual_period() == 1);
  CHECK_FALSE(SequenceRule::affine(Rational(1), Rational(0)).eventual_period().has_value());
  CHECK_FALSE(SequenceRule::geometric(Rational(1), Rational(2)).eventual_period().has_value());
  SequenceRule e = SequenceRule::explicit_periodic({Rational(5)}, {Rational(1), Rational(2)});
  CHECK(*e.eventual_period() == 2);
  CHECK(e.stabilization() == 1);
  CHECK(SequenceRule::explicit_periodic({}, {Rational(4), Rational(4)}).is_constant_value());
}

TEST_CASE("rule text round trip") {
  for (const char* text : {"constant(3)", "affine(1,1)", "geometric(2,2)",
                           "explicit(1,2,3 | 4,5)", "explicit( | 1)", "constant(5/3)"}) {
    SequenceRule r = SequenceRule::parse(text);
    CHECK(SequenceRule::parse(r.to_text()) == r);
  }
  CHECK_THROWS_AS(SequenceRule::parse("constant(1,2)"), std::invalid_argument);
  CHECK_THROWS_AS(SequenceRule::parse("wavelet(1)"), std::invalid_argument);
  CHECK_THROWS_AS(SequenceRule::parse("constant"), std::invalid_argument);
}
