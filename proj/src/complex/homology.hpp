#pragma once

// Homology of filtered complexes and the filtration invariants tau / tau*.
//
// Each Maslov grading (or the whole complex, when ungraded) is reduced with
// the standard low-pivot column reduction, generators ordered by
// (filtration level, generator index). Working in that order makes the
// reduced boundary columns an echelon basis of B_{<=m} and the kernel
// columns an echelon basis of Z_{<=m} for every level m simultaneously,
// which is all that tau and tau* need.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "complex/filtered_complex.hpp"

namespace knotfilt {

struct HomologyClass {
  // Digest of the complex the representative lives in.
  std::uint64_t owner = 0;
  // Grading of a homogeneous representative in a graded complex.
  std::optional<int> maslov;
  f2::Vector representative;
};

// Builds a class for a chain of `c`, checking that it is a cycle.
HomologyClass make_class(const FilteredComplex& c, f2::Vector representative);

struct GradingSummary {
  std::optional<int> maslov;
  std::size_t rank = 0;
  // Offset of this grading's basis inside the global coordinate vector.
  std::size_t offset = 0;
};

// Least filtration level at which a class appears, with a witness cycle of
// that level. For tau the witness is the cycle homologous to the input that
// is least in the (filtration, index) order; for tau* it is the least cycle
// alpha of the minimal level with <y, alpha> = 1.
struct TauResult {
  int tau = 0;
  f2::Vector witness;
};

class HomologyPresentation {
 public:
  // Throws InputError when `c` fails validation.
  static HomologyPresentation compute(const FilteredComplex& c);

  std::uint64_t owner() const { return owner_; }
  bool graded() const { return graded_; }
  std::size_t complex_size() const { return filt_.size(); }

  // One entry per grading that has generators, ascending.
  const std::vector<GradingSummary>& gradings() const { return summaries_; }
  std::size_t rank(std::optional<int> maslov) const;
  std::size_t total_rank() const { return total_rank_; }

  // Cycle representatives of the basis of one grading (generator-indexed).
  std::vector<f2::Vector> representatives(std::optional<int> maslov) const;
  // Representative of global basis element k.
  f2::Vector basis_vector(std::size_t k) const;

  bool is_cycle(const f2::Vector& chain) const;
  bool is_boundary(const f2::Vector& chain) const;

  // Coordinates of a cycle in the global basis. Throws InputError if the
  // chain is not a cycle.
  f2::Vector coordinates(const f2::Vector& cycle) const;

  // Throws InputError when `cycle` is not a cycle or is null-homologous.
  TauResult tau(const f2::Vector& cycle) const;
  // `cocycle` is a cochain on the generators (equivalently a chain of the
  // dual complex). Throws InputError when it is not a cocycle or vanishes
  // on homology.
  TauResult tau_dual(const f2::Vector& cocycle) const;

 private:
  struct Block {
    std::optional<int> maslov;
    std::vector<Index> order;
    std::vector<std::int64_t> boundary_slot;
    std::vector<f2::Support> boundaries;
    std::vector<std::int64_t> cycle_slot;
    std::vector<f2::Support> cycles;
    std::vector<Index> essential;
    std::vector<std::int64_t> essential_slot;
  };

  std::vector<std::vector<char>> split_by_block(const f2::Vector& chain) const;
  const Block* block_for(std::optional<int> maslov) const;

  std::uint64_t owner_ = 0;
  bool graded_ = false;
  std::vector<int> filt_;
  std::vector<f2::Support> boundary_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<Index> position_of_;
  std::vector<GradingSummary> summaries_;
  std::size_t total_rank_ = 0;
};

inline HomologyPresentation homology(const FilteredComplex& c) {
  return HomologyPresentation::compute(c);
}

// The distinguished class: the unique nonzero class of maximal Maslov
// grading, required to span a one-dimensional group (for an ungraded
// complex, the whole homology must be one-dimensional).
HomologyClass top_class(const FilteredComplex& c, const HomologyPresentation& h);
HomologyClass top_class(const FilteredComplex& c);

// Matrix of H(sublevel(c, m)) -> H(c) in the presentations' bases, one block
// per grading of H(c).
struct InclusionMap {
  HomologyPresentation source;
  HomologyPresentation target;
  std::vector<std::pair<std::optional<int>, f2::Matrix>> blocks;
  // sublevel generator k is generator source_to_target[k] of c.
  std::vector<Index> source_to_target;
};

InclusionMap inclusion_on_homology(const FilteredComplex& c, int m);

// Chain-level inclusion of sublevel(c, m) into c.
f2::Vector include_chain(const FilteredComplex& c, int m, const f2::Vector& sub_chain);
// Restriction of a chain of c to the generators of sublevel(c, m).
f2::Vector restrict_chain(const FilteredComplex& c, int m, const f2::Vector& chain);

TauResult tau_class(const FilteredComplex& c, const HomologyClass& z);
TauResult tau_dual_class(const FilteredComplex& c, const HomologyClass& y);

// <y, x> for y a class of dualize(c) and x a class of c.
int pairing(const FilteredComplex& c, const HomologyClass& y, const HomologyClass& x);

}  // namespace knotfilt
