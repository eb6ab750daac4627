#include "knot/knot_complex.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "common/errors.hpp"

namespace knotfilt::knot {

KnotComplex::KnotComplex(std::vector<KnotGenerator> generators, std::vector<KnotArrow> arrows,
                         int auxiliary_factors)
    : generators_(std::move(generators)), auxiliary_factors_(auxiliary_factors) {
  if (auxiliary_factors < 0) throw InputError("auxiliary factor count must be nonnegative");
  std::unordered_map<std::string, Index> seen;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].id.empty()) throw InputError("generator id must be nonempty");
    if (!seen.emplace(generators_[i].id, static_cast<Index>(i)).second) {
      throw InputError("duplicate generator id '" + generators_[i].id + "'");
    }
  }
  for (const auto& a : arrows) {
    if (a.from >= generators_.size() || a.to >= generators_.size()) {
      throw InputError("arrow endpoint out of range");
    }
    if (a.nw < 0 || a.nz < 0) throw InputError("arrow labels nw, nz must be nonnegative");
  }
  std::sort(arrows.begin(), arrows.end());
  for (std::size_t i = 0; i < arrows.size();) {
    std::size_t j = i;
    while (j < arrows.size() && arrows[j] == arrows[i]) ++j;
    if ((j - i) % 2 == 1) arrows_.push_back(arrows[i]);
    i = j;
  }
}

std::optional<Index> KnotComplex::find(const std::string& id) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].id == id) return static_cast<Index>(i);
  }
  return std::nullopt;
}

const char* to_string(KnotViolationKind kind) {
  switch (kind) {
    case KnotViolationKind::maslov_rule:
      return "maslov(to) != maslov(from) - 1 + 2 nw";
    case KnotViolationKind::alexander_rule:
      return "alexander(to) != alexander(from) - nz + nw";
    case KnotViolationKind::boundary_squared:
      return "differential squares to nonzero";
  }
  return "unknown";
}

KnotValidationReport validate(const KnotComplex& d) {
  KnotValidationReport report;
  std::vector<std::vector<std::size_t>> out(d.size());
  for (std::size_t k = 0; k < d.arrows().size(); ++k) {
    const auto& a = d.arrows()[k];
    out[a.from].push_back(k);
    const auto& x = d.generator(a.from);
    const auto& y = d.generator(a.to);
    if (y.maslov != x.maslov - 1 + 2 * a.nw) {
      report.violations.push_back({KnotViolationKind::maslov_rule, a.from, a.to, a.nw, a.nz});
    }
    if (y.alexander != x.alexander - a.nz + a.nw) {
      report.violations.push_back({KnotViolationKind::alexander_rule, a.from, a.to, a.nw, a.nz});
    }
  }
  // d^2 on the full Z+Z lattice: paths x -> y -> z grouped by total label.
  std::vector<std::tuple<Index, int, int>> ends;
  for (std::size_t x = 0; x < d.size(); ++x) {
    ends.clear();
    for (std::size_t k1 : out[x]) {
      const auto& a1 = d.arrows()[k1];
      for (std::size_t k2 : out[a1.to]) {
        const auto& a2 = d.arrows()[k2];
        ends.emplace_back(a2.to, a1.nw + a2.nw, a1.nz + a2.nz);
      }
    }
    std::sort(ends.begin(), ends.end());
    for (std::size_t i = 0; i < ends.size();) {
      std::size_t j = i;
      while (j < ends.size() && ends[j] == ends[i]) ++j;
      if ((j - i) % 2 == 1) {
        const auto& [z, nw, nz] = ends[i];
        report.violations.push_back(
            {KnotViolationKind::boundary_squared, static_cast<Index>(x), z, nw, nz});
      }
      i = j;
    }
  }
  return report;
}

void require_valid(const KnotComplex& d) {
  auto report = validate(d);
  if (report.ok()) return;
  const auto& v = report.violations.front();
  throw InputError(std::string("invalid knot complex: ") + to_string(v.kind) + " at " +
                   d.generator(v.from).id + " -> " + d.generator(v.to).id);
}

FilteredComplex hat_filtered(const KnotComplex& d) {
  std::vector<Generator> gens;
  gens.reserve(d.size());
  for (const auto& g : d.generators()) gens.push_back({g.id, g.maslov, g.alexander});
  std::vector<Arrow> arrows;
  for (const auto& a : d.arrows()) {
    if (a.nw == 0) arrows.push_back({a.from, a.to});
  }
  return FilteredComplex(std::move(gens), std::move(arrows));
}

KnotComplex from_filtered(const FilteredComplex& c) {
  if (!c.empty() && !c.graded()) {
    throw InputError("knot data needs a maslov grading on every generator");
  }
  std::vector<KnotGenerator> gens;
  for (const auto& g : c.generators()) gens.push_back({g.id, *g.maslov, g.filt});
  std::vector<KnotArrow> arrows;
  for (const auto& a : c.arrows()) {
    int drop = c.generator(a.from).filt - c.generator(a.to).filt;
    if (drop < 0) throw InputError("arrow increases the filtration");
    arrows.push_back({a.from, a.to, 0, drop});
  }
  return KnotComplex(std::move(gens), std::move(arrows));
}

KnotComplex tensor(const KnotComplex& a, const KnotComplex& b) {
  std::vector<KnotGenerator> gens;
  gens.reserve(a.size() * b.size());
  for (const auto& x : a.generators()) {
    for (const auto& y : b.generators()) {
      gens.push_back({tensor_id(x.id, y.id), x.maslov + y.maslov, x.alexander + y.alexander});
    }
  }
  auto idx = [&](std::size_t i, std::size_t j) { return static_cast<Index>(i * b.size() + j); };
  std::vector<KnotArrow> arrows;
  for (const auto& e : a.arrows()) {
    for (std::size_t j = 0; j < b.size(); ++j) arrows.push_back({idx(e.from, j), idx(e.to, j), e.nw, e.nz});
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& e : b.arrows()) arrows.push_back({idx(i, e.from), idx(i, e.to), e.nw, e.nz});
  }
  return KnotComplex(std::move(gens), std::move(arrows),
                     a.auxiliary_factors() + b.auxiliary_factors());
}

namespace {

// Divides a bigraded Poincare polynomial by (1 + t^-1 q^-1), diagonal by
// diagonal (the factor preserves alexander - maslov).
BigradedRanks divide_out_factor(const BigradedRanks& ranks) {
  std::map<int, std::map<int, std::int64_t>> diagonals;  // (A - M) -> A -> rank
  for (const auto& [key, r] : ranks) {
    if (r != 0) diagonals[key.first - key.second][key.first] += static_cast<std::int64_t>(r);
  }
  BigradedRanks out;
  for (const auto& [diag, poly] : diagonals) {
    int lo = poly.begin()->first;
    int hi = poly.rbegin()->first;
    auto p = [&](int a) {
      auto it = poly.find(a);
      return it == poly.end() ? std::int64_t{0} : it->second;
    };
    // P_A = Q_A + Q_{A+1}; Q supported in [lo + 1, hi].
    std::int64_t above = 0;
    for (int a = hi; a >= lo + 1; --a) {
      std::int64_t q = p(a) - above;
      if (q < 0) throw InvariantViolation("knot Floer ranks are not divisible by the auxiliary factor");
      if (q > 0) out[{a, a - diag}] = static_cast<std::size_t>(q);
      above = q;
    }
    if (p(lo) != above) {
      throw InvariantViolation("knot Floer ranks are not divisible by the auxiliary factor");
    }
  }
  return out;
}

}  // namespace

BigradedRanks associated_graded_ranks(const FilteredComplex& c) {
  if (!c.empty() && !c.graded()) throw InputError("knot Floer ranks need a maslov grading");
  std::map<std::pair<int, int>, std::vector<Index>> blocks;
  std::vector<Index> local(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& g = c.generator(static_cast<Index>(i));
    auto& members = blocks[{g.filt, *g.maslov}];
    local[i] = static_cast<Index>(members.size());
    members.push_back(static_cast<Index>(i));
  }
  std::map<std::pair<int, int>, std::vector<f2::Support>> columns;
  for (const auto& [key, members] : blocks) columns[key].resize(members.size());
  for (const auto& a : c.arrows()) {
    const auto& g = c.generator(a.from);
    if (c.generator(a.to).filt != g.filt) continue;
    columns[{g.filt, *g.maslov}][local[a.from]].push_back(local[a.to]);
  }
  std::map<std::pair<int, int>, std::size_t> out_rank;
  for (auto& [key, cols] : columns) {
    for (auto& col : cols) std::sort(col.begin(), col.end());
    auto target = blocks.find({key.first, key.second - 1});
    std::size_t rows = target == blocks.end() ? 0 : target->second.size();
    out_rank[key] = f2::reduce_low(rows, cols, false).rank;
  }
  BigradedRanks ranks;
  for (const auto& [key, members] : blocks) {
    std::size_t incoming = 0;
    if (auto it = out_rank.find({key.first, key.second + 1}); it != out_rank.end()) incoming = it->second;
    std::size_t r = members.size() - out_rank[key] - incoming;
    if (r != 0) ranks[key] = r;
  }
  return ranks;
}

HfkResult hfk_of_hat(const FilteredComplex& hat, int auxiliary_factors) {
  HfkResult result;
  result.auxiliary_factors = auxiliary_factors;
  result.raw = associated_graded_ranks(hat);
  result.reduced = result.raw;
  for (int k = 0; k < auxiliary_factors; ++k) result.reduced = divide_out_factor(result.reduced);
  return result;
}

HfkResult hfk(const KnotComplex& d) {
  require_valid(d);
  return hfk_of_hat(hat_filtered(d), d.auxiliary_factors());
}

Laurent euler_characteristic(const BigradedRanks& ranks) {
  Laurent chi;
  for (const auto& [key, r] : ranks) {
    std::int64_t sign = (key.second % 2 == 0) ? 1 : -1;
    chi = chi + Laurent::monomial(key.first, sign * static_cast<std::int64_t>(r));
  }
  return chi;
}

Laurent alexander_polynomial(const KnotComplex& d) {
  return euler_characteristic(hfk(d).reduced).normalized();
}

int genus_upper_support(const HfkResult& result) {
  if (result.reduced.empty()) throw InputError("every knot Floer group vanishes");
  int g = 0;
  for (const auto& [key, r] : result.reduced) g = std::max(g, std::abs(key.first));
  return g;
}

int genus_upper_support(const KnotComplex& d) { return genus_upper_support(hfk(d)); }

const char* to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::nonzero_forced:
      return "NonzeroForced";
    case Dichotomy::zero_forced:
      return "ZeroForced";
    case Dichotomy::indeterminate:
      return "Indeterminate";
  }
  return "unknown";
}

SurgeryModel surgery_model(const KnotComplex& d, int m) {
  SurgeryModel model;
  model.m = m;
  if (d.size() == 0) {
    model.map = f2::Matrix(0, 0);
    return model;
  }
  int min_a = std::numeric_limits<int>::max();
  int max_a = std::numeric_limits<int>::min();
  for (const auto& g : d.generators()) {
    min_a = std::min(min_a, g.alexander);
    max_a = std::max(max_a, g.alexander);
  }
  int j_hi = std::max(m, max_a);

  std::vector<std::vector<Index>> triples_of(d.size());
  std::vector<Generator> gens;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const auto& g = d.generator(static_cast<Index>(x));
    for (int j = min_a; j <= j_hi; ++j) {
      int i = j - g.alexander;
      if (i < 0 || j < m || std::min(i, j - m) != 0) continue;
      triples_of[x].push_back(static_cast<Index>(model.triples.size()));
      model.triples.push_back({static_cast<Index>(x), i, j});
      gens.push_back({g.id + "@" + std::to_string(i) + "," + std::to_string(j), g.maslov + 2 * i, j});
    }
  }
  // Targets outside the region are dropped: they lie in the subcomplex
  // C{min(i, j - m) < 0} being divided out.
  std::vector<Arrow> arrows;
  for (const auto& a : d.arrows()) {
    for (Index source : triples_of[a.from]) {
      const Triple& t = model.triples[source];
      int ti = t.i - a.nw;
      int tj = t.j - a.nz;
      if (ti < 0 || tj < m || std::min(ti, tj - m) != 0) continue;
      for (Index target : triples_of[a.to]) {
        if (model.triples[target].i == ti && model.triples[target].j == tj) {
          arrows.push_back({source, target});
        }
      }
    }
  }
  model.complex = FilteredComplex(std::move(gens), std::move(arrows));
  auto report = validate(model.complex);
  if (!report.ok()) throw InvariantViolation("surgery model is not a filtered chain complex");

  std::vector<f2::Support> cols(d.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (d.generator(static_cast<Index>(x)).alexander >= m) {
      for (Index t : triples_of[x]) {
        if (model.triples[t].i == 0) cols[x].push_back(t);
      }
    }
  }
  model.map = f2::Matrix::from_columns(model.triples.size(), std::move(cols));

  FilteredComplex hat = hat_filtered(d);
  for (std::size_t x = 0; x < d.size(); ++x) {
    auto unit = f2::Vector::unit(d.size(), static_cast<Index>(x));
    if (model.complex.differential(model.map.apply(unit)) != model.map.apply(hat.differential(unit))) {
      throw InvariantViolation("f_m does not commute with the differentials at generator " +
                               d.generator(static_cast<Index>(x)).id);
    }
  }
  return model;
}

namespace {

DichotomyResult classify(const KnotComplex& d, const HomologyClass& z, int m, int tau) {
  SurgeryModel model = surgery_model(d, m);
  DichotomyResult r;
  r.m = m;
  r.tau = tau;
  auto image = model.map.apply(z.representative);
  r.computed_nonzero = !homology(model.complex).is_boundary(image);
  if (m < tau) {
    r.verdict = Dichotomy::nonzero_forced;
    r.contradiction = !r.computed_nonzero;
  } else if (m > tau) {
    r.verdict = Dichotomy::zero_forced;
    r.contradiction = r.computed_nonzero;
  } else {
    r.verdict = Dichotomy::indeterminate;
  }
  return r;
}

}  // namespace

DichotomyResult surgery_dichotomy(const KnotComplex& d, const HomologyClass& z, int m) {
  FilteredComplex hat = hat_filtered(d);
  int tau = tau_class(hat, z).tau;
  return classify(d, z, m, tau);
}

std::vector<DichotomyResult> surgery_sweep(const KnotComplex& d, const HomologyClass& z) {
  FilteredComplex hat = hat_filtered(d);
  int tau = tau_class(hat, z).tau;
  std::vector<DichotomyResult> out;
  if (d.size() == 0) return out;
  int min_a = std::numeric_limits<int>::max();
  int max_a = std::numeric_limits<int>::min();
  for (const auto& g : d.generators()) {
    min_a = std::min(min_a, g.alexander);
    max_a = std::max(max_a, g.alexander);
  }
  for (int m = min_a - 1; m <= max_a + 1; ++m) out.push_back(classify(d, z, m, tau));
  return out;
}

}  // namespace knotfilt::knot
