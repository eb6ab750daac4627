#include "contact/contact.hpp"

#include <cstdlib>

#include "common/errors.hpp"

namespace knotfilt::contact {

void require_parity(const LegendrianData& l) {
  if ((static_cast<long long>(l.tb) + l.rot) % 2 == 0) {
    throw InputError("tb + rot must be odd (tb=" + std::to_string(l.tb) +
                     ", rot=" + std::to_string(l.rot) + ")");
  }
  if (l.genus && *l.genus < 0) throw InputError("genus must be nonnegative");
}

std::string to_string(BoundStatus s, bool genus_bound) {
  switch (s) {
    case BoundStatus::consistent:
      return "Consistent";
    case BoundStatus::sharp:
      return "Sharp";
    case BoundStatus::violates:
      return genus_bound ? "ViolatesGenusBound" : "ViolatesTauBound";
  }
  return "Unknown";
}

namespace {

BoundCheck check(int lhs, int rhs) {
  BoundCheck c{lhs, rhs, BoundStatus::consistent};
  if (lhs == rhs) {
    c.status = BoundStatus::sharp;
  } else if (lhs > rhs) {
    c.status = BoundStatus::violates;
  }
  return c;
}

}  // namespace

BennequinVerdict bennequin_verdict(const LegendrianData& l, int tau) {
  require_parity(l);
  const int lhs = l.tb + std::abs(l.rot);
  BennequinVerdict v;
  v.tau = check(lhs, 2 * tau - 1);
  if (l.genus) {
    v.genus = check(lhs, 2 * *l.genus - 1);
    v.tau_bound_stronger = tau < *l.genus;
  }
  return v;
}

CableBound cable_tau_upper_bound(long long p, long long q, long long g) {
  if (p <= 0 || q <= 0) throw InputError("cable parameters p and q must be positive");
  if (g < 0) throw InputError("genus must be nonnegative");
  CableBound b;
  b.twice_exact = 2 * p * g - (p - 1) * (q - 1);
  b.half_integer = ((p - 1) * (q - 1)) % 2 != 0;
  // floor division by 2
  b.bound = b.twice_exact >= 0 ? b.twice_exact / 2 : -((-b.twice_exact + 1) / 2);
  return b;
}

long long min_cabling_parameter(long long n, long long p, long long g) {
  if (p <= 0) throw InputError("cable parameter p must be positive");
  if (p == 1) throw InputError("no q exists for p = 1: the (1, -q) cable is the knot itself");
  if (n < 0) throw InputError("N must be nonnegative");
  if (g < 0) throw InputError("genus must be nonnegative");
  // bound < -n  <=>  (p - 1)(q - 1) > 2 p g + 2 n
  long long q = (2 * p * g + 2 * n) / (p - 1) + 2;
  while (q > 1 && cable_tau_upper_bound(p, q - 1, g).twice_exact < -2 * n) --q;
  while (cable_tau_upper_bound(p, q, g).twice_exact >= -2 * n) ++q;
  return q;
}

FiberedVerdict fibered_verdict(const LegendrianData& l, int genus) {
  LegendrianData with_genus = l;
  with_genus.genus = genus;
  require_parity(with_genus);
  FiberedVerdict v;
  v.lhs = l.tb + std::abs(l.rot);
  v.rhs = 2 * genus - 1;
  v.realizes_bound = v.lhs == v.rhs;
  if (v.realizes_bound) {
    v.tau_forced = genus;
    v.conclusion = "the open book contact structure is tight and its invariant equals c(xi)";
  } else {
    v.conclusion = "no conclusion";
  }
  return v;
}

ExclusivityCheck at_most_one_realizes(std::span<const FiberedVerdict> verdicts) {
  ExclusivityCheck out;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i].realizes_bound) out.realizing.push_back(i);
  }
  out.conflict = out.realizing.size() > 1;
  return out;
}

int seifert_shift(int tau, int c1) {
  if (c1 % 2 != 0) throw InputError("Chern class evaluation must be even, got " + std::to_string(c1));
  return tau + c1 / 2;
}

}  // namespace knotfilt::contact
