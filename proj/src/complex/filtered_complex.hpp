#pragma once

// Z-filtered chain complexes over F2.
//
// Generators carry an optional Maslov grading and an integer filtration level;
// the differential is a set of arrows (coefficient 1). A complex is either
// fully graded or fully ungraded.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "f2/f2_linalg.hpp"

namespace knotfilt {

using f2::Index;

struct Generator {
  std::string id;
  std::optional<int> maslov;
  int filt = 0;

  bool operator==(const Generator&) const = default;
};

struct Arrow {
  Index from = 0;
  Index to = 0;

  auto operator<=>(const Arrow&) const = default;
};

enum class ViolationKind { maslov_drop, filtration_increase, boundary_squared };

struct Violation {
  ViolationKind kind;
  Index from;
  Index to;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

const char* to_string(ViolationKind kind);

class FilteredComplex {
 public:
  FilteredComplex() = default;

  // Arrows given by generator index; repeated arrows cancel mod 2.
  // Throws InputError on empty or duplicate ids, mixed grading, or
  // out-of-range arrow endpoints.
  FilteredComplex(std::vector<Generator> generators, std::vector<Arrow> arrows);

  // Same, with arrows given by id.
  static FilteredComplex from_ids(std::vector<Generator> generators,
                                  const std::vector<std::pair<std::string, std::string>>& arrows);

  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }
  bool graded() const { return graded_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& generator(Index i) const { return generators_[i]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  // Sorted targets of the differential of generator i.
  const f2::Support& boundary(Index i) const { return boundary_[i]; }
  std::optional<Index> find(const std::string& id) const;

  // Content hash over ids, gradings, levels and arrows.
  std::uint64_t digest() const { return digest_; }

  std::optional<int> min_filt() const;
  std::optional<int> max_filt() const;

  // Applies the differential to a chain (indexed by generator).
  f2::Vector differential(const f2::Vector& chain) const;
  // Transpose of the differential: the coboundary of a cochain.
  f2::Vector codifferential(const f2::Vector& cochain) const;

  bool operator==(const FilteredComplex& other) const {
    return generators_ == other.generators_ && arrows_ == other.arrows_;
  }

 private:
  std::vector<Generator> generators_;
  std::vector<Arrow> arrows_;
  std::vector<f2::Support> boundary_;
  bool graded_ = false;
  std::uint64_t digest_ = 0;
};

// Lists every arrow that breaks a complex invariant, plus every pair (x, z)
// at which the differential squared is nonzero.
ValidationReport validate(const FilteredComplex& c);

// Throws InputError carrying the first violation when `c` is invalid.
void require_valid(const FilteredComplex& c);

// Full subcomplex on generators with filt <= m.
FilteredComplex sublevel(const FilteredComplex& c, int m);

// Quotient complex on generators with filt > m.
FilteredComplex quotient_above(const FilteredComplex& c, int m);

// Hom(C, F2): generator x* with maslov -maslov(x), filt -filt(x), arrows
// reversed. Dual generator i corresponds to original generator i.
FilteredComplex dualize(const FilteredComplex& c);

// Every filtration level moved by d.
FilteredComplex shift(const FilteredComplex& c, int d);

// Tensor product; generator (i, j) sits at index i * c2.size() + j with
// additive maslov and filtration.
FilteredComplex tensor(const FilteredComplex& c1, const FilteredComplex& c2);

// Index of the tensor generator a (x) b.
inline Index tensor_index(const FilteredComplex& c2, Index a, Index b) {
  return static_cast<Index>(a * c2.size() + b);
}

f2::Vector tensor_vectors(const f2::Vector& a, const f2::Vector& b);

// Generator ids for derived complexes.
std::string dual_id(const std::string& id);
std::string tensor_id(const std::string& a, const std::string& b);

// True when the two complexes agree up to renaming generators, with the
// bijection given by position (generator i <-> generator i).
bool same_shape(const FilteredComplex& a, const FilteredComplex& b);

}  // namespace knotfilt
