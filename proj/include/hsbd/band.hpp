#ifndef HSBD_BAND_HPP
#define HSBD_BAND_HPP

#include <vector>

#include "hsbd/rational.hpp"

namespace hsbd {

// One diagonal profile of an infinite Toeplitz incidence matrix: a finitely
// supported sequence over integer offsets k = column - row. Canonical form
// has nonzero first and last coefficients; interior zeros are allowed.
class Band {
 public:
  // Trims endpoint zeros; rejects empty/all-zero input and negative entries.
  Band(long long lo, std::vector<Rational> coefficients);

  static Band delta(long long offset = 0, const Rational& value = Rational(1));

  long long lo() const { return lo_; }
  long long hi() const { return lo_ + static_cast<long long>(coeffs_.size()) - 1; }
  long long width() const { return static_cast<long long>(coeffs_.size()); }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  // Coefficient at an arbitrary offset; zero outside the support.
  Rational coeff(long long offset) const;

  Rational row_sum() const;
  bool is_integer() const;

  // Profile of the transposed Toeplitz matrix.
  Band reversed() const;

  friend bool operator==(const Band& a, const Band& b) {
    return a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const;

 private:
  long long lo_;
  std::vector<Rational> coeffs_;
};

// Diagonal profile of the product of the two Toeplitz matrices.
Band convolve(const Band& a, const Band& b);

// Divides by the row sum; the result is the profile of the stochastic matrix.
Band stochasticize(const Band& b);

// Same payload as Band, read as coefficients of sum_k c_k z^k.
class LaurentPoly {
 public:
  LaurentPoly(long long lo, std::vector<Rational> coefficients);

  static LaurentPoly from_band(const Band& b);
  Band to_band() const;

  long long lo() const { return lo_; }
  long long hi() const { return lo_ + static_cast<long long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_;
  }

 private:
  long long lo_;
  std::vector<Rational> coeffs_;
};

// Schoolbook product in exponent space; kept independent of convolve.
LaurentPoly laurent_multiply(const LaurentPoly& a, const LaurentPoly& b);

using Matrix = std::vector<std::vector<Rational>>;

// Finite window of the Toeplitz matrix with the given band: entry (r, c) is
// the coefficient at offset (col0 + c) - (row0 + r).
Matrix toeplitz_window(const Band& b, std::size_t rows, std::size_t cols,
                       long long row0, long long col0);

// Shift-commutation criterion on the interior of a finite window.
bool is_toeplitz_window(const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);

}  // namespace hsbd

#endif
