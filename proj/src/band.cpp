#include "hsbd/band.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "hsbd/errors.hpp"

namespace hsbd {

Band::Band(long long lo, std::vector<Rational> coefficients) : lo_(lo), coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_) {
    if (c.is_negative()) throw std::invalid_argument("band coefficient must be non-negative");
  }
  while (!coeffs_.empty() && coeffs_.front().is_zero()) {
    coeffs_.erase(coeffs_.begin());
    ++lo_;
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) throw ZeroBandError("band has empty support");
}

Band Band::delta(long long offset, const Rational& value) {
  return Band(offset, {value});
}

Rational Band::coeff(long long offset) const {
  if (offset < lo_ || offset > hi()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(offset - lo_)];
}

Rational Band::row_sum() const {
  Rational s(0);
  for (const auto& c : coeffs_) s += c;
  return s;
}

bool Band::is_integer() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_integer(); });
}

Band Band::reversed() const {
  std::vector<Rational> rev(coeffs_.rbegin(), coeffs_.rend());
  return Band(-hi(), std::move(rev));
}

std::string Band::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += coeffs_[i].str();
  }
  out += "]@" + std::to_string(lo_);
  return out;
}

Band convolve(const Band& a, const Band& b) {
  long long lo = a.lo() + b.lo();
  long long hi = a.hi() + b.hi();
  std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1), Rational(0));
  for (long long k = lo; k <= hi; ++k) {
    Rational s(0);
    long long jmin = std::max(a.lo(), k - b.hi());
    long long jmax = std::min(a.hi(), k - b.lo());
    for (long long j = jmin; j <= jmax; ++j) s += a.coeff(j) * b.coeff(k - j);
    out[static_cast<std::size_t>(k - lo)] = s;
  }
  return Band(lo, std::move(out));
}

Band stochasticize(const Band& b) {
  Rational r = b.row_sum();
  if (r.is_zero()) throw ZeroBandError("cannot normalize a zero row sum");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(b.width()));
  for (const auto& c : b.coefficients()) out.push_back(c / r);
  return Band(b.lo(), std::move(out));
}

LaurentPoly::LaurentPoly(long long lo, std::vector<Rational> coefficients)
    : lo_(lo), coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.front().is_zero()) {
    coeffs_.erase(coeffs_.begin());
    ++lo_;
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) throw ZeroBandError("laurent polynomial has no terms");
}

LaurentPoly LaurentPoly::from_band(const Band& b) {
  return LaurentPoly(b.lo(), b.coefficients());
}

Band LaurentPoly::to_band() const { return Band(lo_, coeffs_); }

LaurentPoly laurent_multiply(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<long long, Rational> acc;
  for (long long i = a.lo(); i <= a.hi(); ++i) {
    const Rational& ca = a.coefficients()[static_cast<std::size_t>(i - a.lo())];
    if (ca.is_zero()) continue;
    for (long long j = b.lo(); j <= b.hi(); ++j) {
      const Rational& cb = b.coefficients()[static_cast<std::size_t>(j - b.lo())];
      if (cb.is_zero()) continue;
      acc[i + j] += ca * cb;
    }
  }
  long long lo = acc.begin()->first;
  long long hi = acc.rbegin()->first;
  std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1), Rational(0));
  for (const auto& [k, v] : acc) out[static_cast<std::size_t>(k - lo)] = v;
  return LaurentPoly(lo, std::move(out));
}

Matrix toeplitz_window(const Band& b, std::size_t rows, std::size_t cols,
                       long long row0, long long col0) {
  Matrix m(rows, std::vector<Rational>(cols, Rational(0)));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m[r][c] = b.coeff((col0 + static_cast<long long>(c)) - (row0 + static_cast<long long>(r)));
  return m;
}

bool is_toeplitz_window(const Matrix& m) {
  if (m.empty()) return true;
  std::size_t cols = m[0].size();
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument("matrix is not rectangular");
  for (std::size_t i = 0; i + 1 < m.size(); ++i)
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (m[i][j] != m[i + 1][j + 1]) return false;
  return true;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  std::size_t k = b.size();
  if (k == 0 || n == 0) return {};
  std::size_t p = b[0].size();
  Matrix out(n, std::vector<Rational>(p, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::invalid_argument("matrix dimensions do not match");
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  }
  return out;
}

}  // namespace hsbd
