#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace knotfilt::knot {

// Integer Laurent polynomial in T. Stored trimmed: no leading or trailing
// zero coefficients; the zero polynomial has no coefficients.
class Laurent {
 public:
  Laurent() = default;
  // coeffs[k] is the coefficient of T^(low + k).
  Laurent(int low, std::vector<std::int64_t> coeffs);
  static Laurent monomial(int exponent, std::int64_t coeff = 1);

  bool is_zero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t coeff(int exponent) const;
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  std::int64_t at_one() const;
  bool symmetric() const;

  Laurent operator+(const Laurent& other) const;
  Laurent operator-(const Laurent& other) const;
  Laurent operator*(const Laurent& other) const;
  Laurent operator-() const;
  Laurent shifted(int by) const;

  // Exact division by (1 - T^-1); throws InvariantViolation on a remainder.
  Laurent divided_by_one_minus_inverse() const;

  // Centered about exponent 0 when palindromic, sign chosen so that the
  // value at T = 1 is positive.
  Laurent normalized() const;

  // e.g. "T - 1 + T^-1"
  std::string to_string() const;

  bool operator==(const Laurent&) const = default;

 private:
  void trim();

  int low_ = 0;
  std::vector<std::int64_t> coeffs_;
};

}  // namespace knotfilt::knot
