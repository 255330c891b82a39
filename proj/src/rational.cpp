#include "hsbd/rational.hpp"

#include <stdexcept>

#include "hsbd/errors.hpp"

namespace hsbd {

Rational::Rational(long long v) {
  Int z;
  if (v >= 0) {
    z = Int(static_cast<unsigned long>(v));
  } else {
    // avoid overflow on LLONG_MIN
    z = Int(static_cast<unsigned long>(-(v + 1)));
    z += 1;
    z = -z;
  }
  q_ = mpq_class(z);
}

Rational::Rational(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Int(text));
    }
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 0) digits = 0;
  bool neg = is_negative();
  Int n = abs(num());
  Int d = den();
  Int scale = pow_int(Int(10), static_cast<unsigned long>(digits));
  // round half away from zero
  Int scaled = (n * scale * 2 + d) / (d * 2);
  Int whole = scaled / scale;
  Int frac = scaled % scale;
  std::string out = (neg && sgn(scaled) != 0 ? "-" : "") + whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += "." + std::string(static_cast<size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

Rational pow_rational(const Rational& base, long long e) {
  if (e < 0) {
    if (base.is_zero()) throw std::invalid_argument("zero to a negative power");
    return Rational(1) / pow_rational(base, -e);
  }
  Int n = pow_int(base.num(), static_cast<unsigned long>(e));
  Int d = pow_int(base.den(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::string int_str(const Int& v) { return v.get_str(); }

}  // namespace hsbd
