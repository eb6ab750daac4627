#pragma once

// Arithmetic consequences of the tau bound for Legendrian knots: Bennequin
// type checks, cable bounds, fibered-knot tightness verdicts and the shift
// of tau under a change of Seifert class.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace knotfilt::contact {

struct LegendrianData {
  int tb = 0;
  int rot = 0;
  std::optional<int> genus;
};

// Throws InputError unless tb + rot is odd (and genus, if present, >= 0).
void require_parity(const LegendrianData& l);

enum class BoundStatus { consistent, sharp, violates };

// "Consistent" / "Sharp" / "ViolatesTauBound" (or "ViolatesGenusBound").
std::string to_string(BoundStatus s, bool genus_bound = false);

struct BoundCheck {
  int lhs = 0;
  int rhs = 0;
  BoundStatus status = BoundStatus::consistent;
};

struct BennequinVerdict {
  // tb + |rot| against 2 tau - 1.
  BoundCheck tau;
  // tb + |rot| against 2 g - 1 when the genus is known.
  std::optional<BoundCheck> genus;
  // 2 tau - 1 < 2 g - 1.
  bool tau_bound_stronger = false;
};

BennequinVerdict bennequin_verdict(const LegendrianData& l, int tau);

struct CableBound {
  // floor(p g - (p - 1)(q - 1) / 2)
  long long bound = 0;
  // (p - 1)(q - 1) is odd, so the exact value is bound + 1/2.
  bool half_integer = false;
  // 2 p g - (p - 1)(q - 1), the exact value doubled.
  long long twice_exact = 0;
};

// Upper bound on tau of the (p, -q) cable of a knot of genus g.
// Throws InputError for p <= 0, q <= 0 or g < 0.
CableBound cable_tau_upper_bound(long long p, long long q, long long g);

// Least q > 0 with cable_tau_upper_bound(p, q, g) < -n.
// Throws InputError for p = 1 (no such q), p <= 0, n < 0 or g < 0.
long long min_cabling_parameter(long long n, long long p, long long g);

struct FiberedVerdict {
  int lhs = 0;  // tb + |rot|
  int rhs = 0;  // 2 g - 1
  bool realizes_bound = false;
  std::optional<int> tau_forced;
  std::string conclusion;
};

inline constexpr const char* kFiberedAssumption =
    "fiberedness of the knot is taken from the caller and not verified";

FiberedVerdict fibered_verdict(const LegendrianData& l, int genus);

struct ExclusivityCheck {
  // Indices of the verdicts that realize the bound.
  std::vector<std::size_t> realizing;
  // More than one contact structure on the same manifold claims equality.
  bool conflict = false;
};

// Verdicts for one fibered knot measured in distinct contact structures on
// one manifold: the bound can be realized in at most one of them.
ExclusivityCheck at_most_one_realizes(std::span<const FiberedVerdict> verdicts);

// tau + c1 / 2 for the even evaluation c1 of the first Chern class on the
// difference of two Seifert classes. Throws InputError when c1 is odd.
int seifert_shift(int tau, int c1);

}  // namespace knotfilt::contact
