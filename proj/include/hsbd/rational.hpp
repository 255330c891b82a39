#ifndef HSBD_RATIONAL_HPP
#define HSBD_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <string>

namespace hsbd {

using Int = mpz_class;

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v);
  Rational(const Int& v) : q_(v) {}
  Rational(const Int& num, const Int& den);

  // Accepts "p" or "p/q" with optional sign.
  static Rational parse(const std::string& text);

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_negative() const { return sgn(q_) < 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  // Renders "p" for integers, "p/q" otherwise.
  std::string str() const;

  // Decimal annotation rounded to `digits` places (half away from zero).
  std::string decimal(int digits) const;

 private:
  mpq_class q_;
};

// b^e for e >= 0; 1/b^|e| for e < 0 (b nonzero).
Rational pow_rational(const Rational& base, long long e);

Int pow_int(const Int& base, unsigned long e);

Int binomial(unsigned long n, unsigned long k);

std::string int_str(const Int& v);

}  // namespace hsbd

#endif
