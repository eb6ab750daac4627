#pragma once

// Doubly filtered knot complexes (a finite seed for CFK-infinity).
//
// A generator x stands for the triples [x, i, j] with j - i = alexander(x);
// the triple has homological grading maslov(x) + 2i. An arrow labelled
// (nw, nz) sends [x, i, j] to [y, i - nw, j - nz]. Since the differential
// lowers the triple grading by one,
//
//   maslov(y) = maslov(x) - 1 + 2 nw,   alexander(y) = alexander(x) - nz + nw.
//
// `auxiliary_factors` counts extra two-dimensional tensor factors V with
// (maslov, alexander) gradings (0, 0) and (-1, -1) that the data is known to
// carry (a size-n grid diagram carries n - 1 of them).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complex/filtered_complex.hpp"
#include "complex/homology.hpp"
#include "f2/f2_linalg.hpp"
#include "knot/laurent.hpp"

namespace knotfilt::knot {

struct KnotGenerator {
  std::string id;
  int maslov = 0;
  int alexander = 0;

  bool operator==(const KnotGenerator&) const = default;
};

struct KnotArrow {
  Index from = 0;
  Index to = 0;
  int nw = 0;
  int nz = 0;

  auto operator<=>(const KnotArrow&) const = default;
};

class KnotComplex {
 public:
  KnotComplex() = default;
  // Arrows with identical labels cancel mod 2. Throws InputError on bad ids,
  // negative labels or out-of-range endpoints.
  KnotComplex(std::vector<KnotGenerator> generators, std::vector<KnotArrow> arrows,
              int auxiliary_factors = 0);

  std::size_t size() const { return generators_.size(); }
  const std::vector<KnotGenerator>& generators() const { return generators_; }
  const KnotGenerator& generator(Index i) const { return generators_[i]; }
  const std::vector<KnotArrow>& arrows() const { return arrows_; }
  int auxiliary_factors() const { return auxiliary_factors_; }
  std::optional<Index> find(const std::string& id) const;

 private:
  std::vector<KnotGenerator> generators_;
  std::vector<KnotArrow> arrows_;
  int auxiliary_factors_ = 0;
};

enum class KnotViolationKind { maslov_rule, alexander_rule, boundary_squared };

struct KnotViolation {
  KnotViolationKind kind;
  Index from;
  Index to;
  int nw;
  int nz;
};

struct KnotValidationReport {
  std::vector<KnotViolation> violations;
  bool ok() const { return violations.empty(); }
};

const char* to_string(KnotViolationKind kind);

KnotValidationReport validate(const KnotComplex& d);
void require_valid(const KnotComplex& d);

// C{i = 0}: arrows with nw = 0, filtration = alexander.
FilteredComplex hat_filtered(const KnotComplex& d);

// Lifts an abstract graded filtered complex to knot data with only nw = 0
// arrows (nz = filtration drop, alexander = filt).
KnotComplex from_filtered(const FilteredComplex& c);

// Connected sum model: tensor product of the two seeds.
KnotComplex tensor(const KnotComplex& a, const KnotComplex& b);

// Ranks keyed by (alexander, maslov).
using BigradedRanks = std::map<std::pair<int, int>, std::size_t>;

struct HfkResult {
  // Associated graded homology of hat_filtered(d), as computed.
  BigradedRanks raw;
  // raw with the auxiliary factors divided out.
  BigradedRanks reduced;
  int auxiliary_factors = 0;
};

// Throws InvariantViolation when the raw ranks are not divisible by the
// declared auxiliary factors.
HfkResult hfk(const KnotComplex& d);

// Homology of the associated graded of a graded filtered complex, keyed by
// (filt, maslov). The hat complex of knot data gives the raw table of hfk.
BigradedRanks associated_graded_ranks(const FilteredComplex& c);
// hfk from an already built hat complex (no knot-data validation).
HfkResult hfk_of_hat(const FilteredComplex& hat, int auxiliary_factors);

// sum_m chi(HFK(m)) T^m of the reduced table.
Laurent euler_characteristic(const BigradedRanks& ranks);
Laurent alexander_polynomial(const KnotComplex& d);

// max |m| with nonzero reduced HFK in Alexander grading m.
// Throws InputError when every group vanishes.
int genus_upper_support(const HfkResult& result);
int genus_upper_support(const KnotComplex& d);

struct Triple {
  Index generator = 0;
  int i = 0;
  int j = 0;
};

// C{min(i, j - m) = 0} together with the chain map f_m from the hat complex.
struct SurgeryModel {
  int m = 0;
  std::vector<Triple> triples;
  FilteredComplex complex;  // maslov = maslov(x) + 2i, filt = j
  f2::Matrix map;           // rows: model generators, cols: hat generators
};

// Throws InvariantViolation if the model differential does not square to
// zero or f_m fails to commute with the differentials.
SurgeryModel surgery_model(const KnotComplex& d, int m);

enum class Dichotomy { nonzero_forced, zero_forced, indeterminate };
const char* to_string(Dichotomy d);

struct DichotomyResult {
  int m = 0;
  int tau = 0;
  Dichotomy verdict = Dichotomy::indeterminate;
  bool computed_nonzero = false;
  // The computed value disagrees with the forced one.
  bool contradiction = false;
};

// `z` is a class of hat_filtered(d).
DichotomyResult surgery_dichotomy(const KnotComplex& d, const HomologyClass& z, int m);

// Dichotomy for every m in [min alexander - 1, max alexander + 1].
std::vector<DichotomyResult> surgery_sweep(const KnotComplex& d, const HomologyClass& z);

}  // namespace knotfilt::knot
