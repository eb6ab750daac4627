#include "complex/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "common/errors.hpp"

namespace knotfilt {

namespace {

std::optional<int> grading_of(const FilteredComplex& c, const f2::Vector& chain) {
  if (!c.graded() || chain.is_zero()) return std::nullopt;
  int m = *c.generator(chain.support().front()).maslov;
  for (Index i : chain.support()) {
    if (*c.generator(i).maslov != m) return std::nullopt;
  }
  return m;
}

}  // namespace

HomologyClass make_class(const FilteredComplex& c, f2::Vector representative) {
  if (representative.length() != c.size()) {
    throw InputError("class representative has length " + std::to_string(representative.length()) +
                     " but the complex has " + std::to_string(c.size()) + " generators");
  }
  if (!c.differential(representative).is_zero()) {
    throw InputError("class representative is not a cycle");
  }
  HomologyClass z;
  z.owner = c.digest();
  z.maslov = grading_of(c, representative);
  z.representative = std::move(representative);
  return z;
}

HomologyPresentation HomologyPresentation::compute(const FilteredComplex& c) {
  require_valid(c);
  HomologyPresentation h;
  h.owner_ = c.digest();
  h.graded_ = c.graded();
  h.filt_.reserve(c.size());
  h.boundary_.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    h.filt_.push_back(c.generator(static_cast<Index>(i)).filt);
    h.boundary_.push_back(c.boundary(static_cast<Index>(i)));
  }

  // Blocks, ascending in maslov.
  std::map<int, std::vector<Index>> by_grading;
  for (std::size_t i = 0; i < c.size(); ++i) {
    int key = c.graded() ? *c.generator(static_cast<Index>(i)).maslov : 0;
    by_grading[key].push_back(static_cast<Index>(i));
  }
  h.block_of_.assign(c.size(), 0);
  h.position_of_.assign(c.size(), 0);
  for (auto& [key, members] : by_grading) {
    Block b;
    if (c.graded()) b.maslov = key;
    b.order = std::move(members);
    std::stable_sort(b.order.begin(), b.order.end(), [&](Index x, Index y) {
      return h.filt_[x] < h.filt_[y];
    });
    b.boundary_slot.assign(b.order.size(), -1);
    b.cycle_slot.assign(b.order.size(), -1);
    b.essential_slot.assign(b.order.size(), -1);
    for (std::size_t p = 0; p < b.order.size(); ++p) {
      h.block_of_[b.order[p]] = h.blocks_.size();
      h.position_of_[b.order[p]] = static_cast<Index>(p);
    }
    h.blocks_.push_back(std::move(b));
  }

  auto columns_of = [&](const Block& b) {
    std::vector<f2::Support> cols(b.order.size());
    for (std::size_t p = 0; p < b.order.size(); ++p) {
      for (Index t : h.boundary_[b.order[p]]) cols[p].push_back(h.position_of_[t]);
      std::sort(cols[p].begin(), cols[p].end());
    }
    return cols;
  };

  if (!c.graded()) {
    if (!h.blocks_.empty()) {
      Block& b = h.blocks_.front();
      auto cols = columns_of(b);
      auto red = f2::reduce_low(b.order.size(), cols, true);
      for (std::size_t p = 0; p < b.order.size(); ++p) {
        if (red.reduced[p].empty()) {
          b.cycle_slot[p] = static_cast<std::int64_t>(b.cycles.size());
          b.cycles.push_back(std::move(red.transform[p]));
        } else {
          b.boundary_slot[red.reduced[p].back()] = static_cast<std::int64_t>(b.boundaries.size());
          b.boundaries.push_back(std::move(red.reduced[p]));
        }
      }
    }
  } else {
    // Top grading first, so that boundaries landing in a block are known
    // before the block itself is reduced (clearing).
    for (std::size_t bi = h.blocks_.size(); bi-- > 0;) {
      Block& b = h.blocks_[bi];
      Block* target = nullptr;
      if (bi > 0 && *h.blocks_[bi - 1].maslov == *b.maslov - 1) target = &h.blocks_[bi - 1];
      std::vector<bool> skip(b.order.size());
      for (std::size_t p = 0; p < b.order.size(); ++p) skip[p] = b.boundary_slot[p] >= 0;
      auto cols = columns_of(b);
      std::size_t rows = target != nullptr ? target->order.size() : 0;
      auto red = f2::reduce_low(rows, cols, true, &skip);
      for (std::size_t p = 0; p < b.order.size(); ++p) {
        if (skip[p]) {
          b.cycle_slot[p] = static_cast<std::int64_t>(b.cycles.size());
          b.cycles.push_back(b.boundaries[static_cast<std::size_t>(b.boundary_slot[p])]);
        } else if (red.reduced[p].empty()) {
          b.cycle_slot[p] = static_cast<std::int64_t>(b.cycles.size());
          b.cycles.push_back(std::move(red.transform[p]));
        } else {
          target->boundary_slot[red.reduced[p].back()] =
              static_cast<std::int64_t>(target->boundaries.size());
          target->boundaries.push_back(std::move(red.reduced[p]));
        }
        red.transform[p].clear();
        red.transform[p].shrink_to_fit();
      }
    }
  }

  std::size_t offset = 0;
  for (auto& b : h.blocks_) {
    for (std::size_t p = 0; p < b.order.size(); ++p) {
      if (b.cycle_slot[p] >= 0 && b.boundary_slot[p] < 0) {
        b.essential_slot[p] = static_cast<std::int64_t>(b.essential.size());
        b.essential.push_back(static_cast<Index>(p));
      }
    }
    h.summaries_.push_back({b.maslov, b.essential.size(), offset});
    offset += b.essential.size();
  }
  h.total_rank_ = offset;
  return h;
}

const HomologyPresentation::Block* HomologyPresentation::block_for(
    std::optional<int> maslov) const {
  for (const auto& b : blocks_) {
    if (b.maslov == maslov) return &b;
  }
  return nullptr;
}

std::size_t HomologyPresentation::rank(std::optional<int> maslov) const {
  const Block* b = block_for(maslov);
  return b == nullptr ? 0 : b->essential.size();
}

std::vector<f2::Vector> HomologyPresentation::representatives(std::optional<int> maslov) const {
  std::vector<f2::Vector> out;
  const Block* b = block_for(maslov);
  if (b == nullptr) return out;
  for (Index p : b->essential) {
    f2::Support s;
    for (Index q : b->cycles[static_cast<std::size_t>(b->cycle_slot[p])]) s.push_back(b->order[q]);
    out.push_back(f2::Vector::from_support(filt_.size(), std::move(s)));
  }
  return out;
}

f2::Vector HomologyPresentation::basis_vector(std::size_t k) const {
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const auto& s = summaries_[bi];
    if (k >= s.offset && k < s.offset + s.rank) return representatives(s.maslov)[k - s.offset];
  }
  throw InputError("basis index out of range");
}

std::vector<std::vector<char>> HomologyPresentation::split_by_block(const f2::Vector& chain) const {
  if (chain.length() != filt_.size()) {
    throw InputError("chain length does not match the complex");
  }
  std::vector<std::vector<char>> bits(blocks_.size());
  for (Index i : chain.support()) {
    auto bi = block_of_[i];
    if (bits[bi].empty()) bits[bi].assign(blocks_[bi].order.size(), 0);
    bits[bi][position_of_[i]] ^= 1;
  }
  return bits;
}

bool HomologyPresentation::is_cycle(const f2::Vector& chain) const {
  if (chain.length() != filt_.size()) return false;
  f2::Support acc;
  f2::Support scratch;
  for (Index i : chain.support()) f2::add_into(acc, boundary_[i], scratch);
  return acc.empty();
}

f2::Vector HomologyPresentation::coordinates(const f2::Vector& cycle) const {
  if (!is_cycle(cycle)) throw InputError("chain is not a cycle");
  auto bits = split_by_block(cycle);
  f2::Support coords;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    if (bits[bi].empty()) continue;
    const Block& b = blocks_[bi];
    auto& w = bits[bi];
    for (std::size_t p = w.size(); p-- > 0;) {
      if (!w[p]) continue;
      if (b.boundary_slot[p] >= 0) {
        for (Index q : b.boundaries[static_cast<std::size_t>(b.boundary_slot[p])]) w[q] ^= 1;
      } else if (b.essential_slot[p] >= 0) {
        coords.push_back(static_cast<Index>(summaries_[bi].offset +
                                            static_cast<std::size_t>(b.essential_slot[p])));
        for (Index q : b.cycles[static_cast<std::size_t>(b.cycle_slot[p])]) w[q] ^= 1;
      } else {
        throw InputError("chain is not a cycle");
      }
    }
  }
  return f2::Vector::from_support(total_rank_, std::move(coords));
}

bool HomologyPresentation::is_boundary(const f2::Vector& chain) const {
  return coordinates(chain).is_zero();
}

TauResult HomologyPresentation::tau(const f2::Vector& cycle) const {
  if (!is_cycle(cycle)) throw InputError("tau: representative is not a cycle");
  auto bits = split_by_block(cycle);
  std::optional<int> level;
  f2::Support witness;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    if (bits[bi].empty()) continue;
    const Block& b = blocks_[bi];
    auto& w = bits[bi];
    for (std::size_t p = w.size(); p-- > 0;) {
      if (w[p] && b.boundary_slot[p] >= 0) {
        for (Index q : b.boundaries[static_cast<std::size_t>(b.boundary_slot[p])]) w[q] ^= 1;
      }
    }
    for (std::size_t p = 0; p < w.size(); ++p) {
      if (!w[p]) continue;
      Index g = b.order[p];
      witness.push_back(g);
      level = level ? std::max(*level, filt_[g]) : filt_[g];
    }
  }
  if (!level) throw InputError("tau: the class is zero in homology");
  return {*level, f2::Vector::from_support(filt_.size(), std::move(witness))};
}

TauResult HomologyPresentation::tau_dual(const f2::Vector& cocycle) const {
  if (cocycle.length() != filt_.size()) throw InputError("cochain length does not match the complex");
  for (std::size_t i = 0; i < filt_.size(); ++i) {
    int parity = 0;
    for (Index t : boundary_[i]) parity ^= cocycle.test(t) ? 1 : 0;
    if (parity) throw InputError("tau*: the dual representative is not a cycle of the dual complex");
  }

  struct Candidate {
    std::size_t block;
    Index position;
    int level;
    Index generator;
  };
  std::optional<Candidate> best;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const Block& b = blocks_[bi];
    for (std::size_t p = 0; p < b.order.size(); ++p) {
      if (b.cycle_slot[p] < 0) continue;
      int value = 0;
      for (Index q : b.cycles[static_cast<std::size_t>(b.cycle_slot[p])]) {
        value ^= cocycle.test(b.order[q]) ? 1 : 0;
      }
      if (value == 0) continue;
      Candidate cand{bi, static_cast<Index>(p), filt_[b.order[p]], b.order[p]};
      if (!best || cand.level < best->level ||
          (cand.level == best->level && cand.generator < best->generator)) {
        best = cand;
      }
      break;
    }
  }
  if (!best) throw InputError("tau*: the dual class is zero in homology");

  // Every kernel basis vector below the chosen one pairs to zero, so
  // reducing against them keeps <y, alpha> = 1.
  const Block& b = blocks_[best->block];
  std::vector<char> w(b.order.size(), 0);
  for (Index q : b.cycles[static_cast<std::size_t>(b.cycle_slot[best->position])]) w[q] ^= 1;
  for (std::size_t p = best->position; p-- > 0;) {
    if (w[p] && b.cycle_slot[p] >= 0) {
      for (Index q : b.cycles[static_cast<std::size_t>(b.cycle_slot[p])]) w[q] ^= 1;
    }
  }
  f2::Support witness;
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (w[p]) witness.push_back(b.order[p]);
  }
  return {best->level, f2::Vector::from_support(filt_.size(), std::move(witness))};
}

HomologyClass top_class(const FilteredComplex& c, const HomologyPresentation& h) {
  if (h.owner() != c.digest()) throw InputError("homology presentation belongs to another complex");
  const GradingSummary* top = nullptr;
  for (const auto& s : h.gradings()) {
    if (s.rank > 0) top = &s;
  }
  if (top == nullptr) throw InputError("top class: homology is zero");
  if (top->rank != 1) {
    throw InputError("top class: the top nonzero graded piece has rank " +
                     std::to_string(top->rank) + ", expected 1");
  }
  return make_class(c, h.representatives(top->maslov).front());
}

HomologyClass top_class(const FilteredComplex& c) { return top_class(c, homology(c)); }

namespace {

std::vector<Index> sublevel_members(const FilteredComplex& c, int m) {
  std::vector<Index> members;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.generator(static_cast<Index>(i)).filt <= m) members.push_back(static_cast<Index>(i));
  }
  return members;
}

}  // namespace

f2::Vector include_chain(const FilteredComplex& c, int m, const f2::Vector& sub_chain) {
  auto members = sublevel_members(c, m);
  if (sub_chain.length() != members.size()) throw InputError("chain does not live in the sublevel");
  f2::Support s;
  for (Index k : sub_chain.support()) s.push_back(members[k]);
  return f2::Vector::from_support(c.size(), std::move(s));
}

f2::Vector restrict_chain(const FilteredComplex& c, int m, const f2::Vector& chain) {
  auto members = sublevel_members(c, m);
  if (chain.length() != c.size()) throw InputError("chain length does not match the complex");
  f2::Support s;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (chain.test(members[k])) s.push_back(static_cast<Index>(k));
  }
  return f2::Vector::from_support(members.size(), std::move(s));
}

InclusionMap inclusion_on_homology(const FilteredComplex& c, int m) {
  FilteredComplex sub = sublevel(c, m);
  InclusionMap map{homology(sub), homology(c), {}, sublevel_members(c, m)};
  for (const auto& target : map.target.gradings()) {
    std::size_t cols = map.source.rank(target.maslov);
    std::vector<f2::Support> columns;
    for (const auto& rep : map.source.representatives(target.maslov)) {
      f2::Support lifted;
      for (Index k : rep.support()) lifted.push_back(map.source_to_target[k]);
      auto coords = map.target.coordinates(f2::Vector::from_support(c.size(), std::move(lifted)));
      f2::Support col;
      for (Index k : coords.support()) col.push_back(static_cast<Index>(k - target.offset));
      columns.push_back(std::move(col));
    }
    (void)cols;
    map.blocks.emplace_back(target.maslov, f2::Matrix::from_columns(target.rank, std::move(columns)));
  }
  return map;
}

TauResult tau_class(const FilteredComplex& c, const HomologyClass& z) {
  if (z.owner != c.digest()) throw InputError("tau: class belongs to another complex");
  return homology(c).tau(z.representative);
}

TauResult tau_dual_class(const FilteredComplex& c, const HomologyClass& y) {
  if (y.owner != dualize(c).digest()) {
    throw InputError("tau*: class does not belong to the dual complex");
  }
  return homology(c).tau_dual(y.representative);
}

int pairing(const FilteredComplex& c, const HomologyClass& y, const HomologyClass& x) {
  if (x.owner != c.digest()) throw InputError("pairing: x does not belong to the complex");
  if (y.owner != dualize(c).digest()) throw InputError("pairing: y does not belong to the dual");
  if (!c.differential(x.representative).is_zero()) throw InputError("pairing: x is not a cycle");
  if (!c.codifferential(y.representative).is_zero()) throw InputError("pairing: y is not a cycle");
  if (x.maslov && y.maslov && *y.maslov != -*x.maslov) {
    throw InputError("pairing: gradings are not dual to each other");
  }
  return y.representative.dot(x.representative);
}

}  // namespace knotfilt
