#include "knot/laurent.hpp"

#include <algorithm>
#include <cstdlib>

#include "common/errors.hpp"

namespace knotfilt::knot {

Laurent::Laurent(int low, std::vector<std::int64_t> coeffs) : low_(low), coeffs_(std::move(coeffs)) {
  trim();
}

Laurent Laurent::monomial(int exponent, std::int64_t coeff) { return Laurent(exponent, {coeff}); }

void Laurent::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

std::int64_t Laurent::coeff(int exponent) const {
  if (coeffs_.empty() || exponent < low_ || exponent > high()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

std::int64_t Laurent::at_one() const {
  std::int64_t s = 0;
  for (auto c : coeffs_) s += c;
  return s;
}

bool Laurent::symmetric() const {
  return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
}

Laurent Laurent::operator+(const Laurent& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  int lo = std::min(low_, other.low_);
  int hi = std::max(high(), other.high());
  std::vector<std::int64_t> c(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int e = lo; e <= hi; ++e) c[static_cast<std::size_t>(e - lo)] = coeff(e) + other.coeff(e);
  return Laurent(lo, std::move(c));
}

Laurent Laurent::operator-() const {
  std::vector<std::int64_t> c = coeffs_;
  for (auto& x : c) x = -x;
  return Laurent(low_, std::move(c));
}

Laurent Laurent::operator-(const Laurent& other) const { return *this + (-other); }

Laurent Laurent::operator*(const Laurent& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<std::int64_t> c(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return Laurent(low_ + other.low_, std::move(c));
}

Laurent Laurent::shifted(int by) const {
  Laurent out = *this;
  if (!out.is_zero()) out.low_ += by;
  return out;
}

Laurent Laurent::divided_by_one_minus_inverse() const {
  if (is_zero()) return {};
  // P = Q (1 - T^-1)  =>  P_e = Q_e - Q_{e+1}; solve from the top.
  int hi = high();
  int lo = low_;
  std::vector<std::int64_t> q(static_cast<std::size_t>(hi - lo), 0);  // exponents lo+1 .. hi
  std::int64_t above = 0;
  for (int e = hi; e >= lo + 1; --e) {
    std::int64_t qe = coeff(e) + above;
    q[static_cast<std::size_t>(e - lo - 1)] = qe;
    above = qe;
  }
  if (coeff(lo) != -above) {
    throw InvariantViolation("Euler characteristic is not divisible by (1 - T^-1)");
  }
  return Laurent(lo + 1, std::move(q));
}

Laurent Laurent::normalized() const {
  Laurent out = *this;
  if (out.at_one() < 0) out = -out;
  if (!out.is_zero() && out.symmetric() && (out.low_ + out.high()) % 2 == 0) {
    out = out.shifted(-(out.low_ + out.high()) / 2);
  }
  return out;
}

std::string Laurent::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int e = high(); e >= low_; --e) {
    std::int64_t c = coeff(e);
    if (c == 0) continue;
    bool first = s.empty();
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::int64_t a = std::llabs(c);
    if (e == 0) {
      s += std::to_string(a);
      continue;
    }
    if (a != 1) s += std::to_string(a);
    s += "T";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace knotfilt::knot
