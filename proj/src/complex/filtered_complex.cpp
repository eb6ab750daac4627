#include "complex/filtered_complex.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "common/errors.hpp"

namespace knotfilt {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
}

void mix(std::uint64_t& h, const std::string& s) {
  mix(h, s.size());
  for (unsigned char ch : s) {
    h ^= ch;
    h *= kFnvPrime;
  }
}

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::maslov_drop:
      return "maslov drop is not 1";
    case ViolationKind::filtration_increase:
      return "filtration increase";
    case ViolationKind::boundary_squared:
      return "differential squares to nonzero";
  }
  return "unknown";
}

FilteredComplex::FilteredComplex(std::vector<Generator> generators, std::vector<Arrow> arrows)
    : generators_(std::move(generators)) {
  std::unordered_map<std::string, Index> seen;
  std::size_t graded_count = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.id.empty()) throw InputError("generator id must be nonempty");
    if (!seen.emplace(g.id, static_cast<Index>(i)).second) {
      throw InputError("duplicate generator id '" + g.id + "'");
    }
    if (g.maslov) ++graded_count;
  }
  if (graded_count != 0 && graded_count != generators_.size()) {
    throw InputError("either every generator carries a maslov grading or none does");
  }
  graded_ = !generators_.empty() && graded_count == generators_.size();

  for (const auto& a : arrows) {
    if (a.from >= generators_.size() || a.to >= generators_.size()) {
      throw InputError("arrow endpoint out of range");
    }
  }
  std::sort(arrows.begin(), arrows.end());
  for (std::size_t i = 0; i < arrows.size();) {
    std::size_t j = i;
    while (j < arrows.size() && arrows[j] == arrows[i]) ++j;
    if ((j - i) % 2 == 1) arrows_.push_back(arrows[i]);
    i = j;
  }
  boundary_.resize(generators_.size());
  for (const auto& a : arrows_) boundary_[a.from].push_back(a.to);

  digest_ = kFnvOffset;
  mix(digest_, generators_.size());
  for (const auto& g : generators_) {
    mix(digest_, g.id);
    mix(digest_, g.maslov ? 1U : 0U);
    mix(digest_, static_cast<std::uint64_t>(static_cast<std::int64_t>(g.maslov.value_or(0))));
    mix(digest_, static_cast<std::uint64_t>(static_cast<std::int64_t>(g.filt)));
  }
  for (const auto& a : arrows_) {
    mix(digest_, a.from);
    mix(digest_, a.to);
  }
}

FilteredComplex FilteredComplex::from_ids(
    std::vector<Generator> generators,
    const std::vector<std::pair<std::string, std::string>>& arrows) {
  std::unordered_map<std::string, Index> index;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    index.emplace(generators[i].id, static_cast<Index>(i));
  }
  std::vector<Arrow> resolved;
  resolved.reserve(arrows.size());
  for (const auto& [from, to] : arrows) {
    auto f = index.find(from);
    auto t = index.find(to);
    if (f == index.end()) throw InputError("arrow references unknown generator '" + from + "'");
    if (t == index.end()) throw InputError("arrow references unknown generator '" + to + "'");
    resolved.push_back({f->second, t->second});
  }
  return FilteredComplex(std::move(generators), std::move(resolved));
}

std::optional<Index> FilteredComplex::find(const std::string& id) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].id == id) return static_cast<Index>(i);
  }
  return std::nullopt;
}

std::optional<int> FilteredComplex::min_filt() const {
  if (generators_.empty()) return std::nullopt;
  int m = std::numeric_limits<int>::max();
  for (const auto& g : generators_) m = std::min(m, g.filt);
  return m;
}

std::optional<int> FilteredComplex::max_filt() const {
  if (generators_.empty()) return std::nullopt;
  int m = std::numeric_limits<int>::min();
  for (const auto& g : generators_) m = std::max(m, g.filt);
  return m;
}

f2::Vector FilteredComplex::differential(const f2::Vector& chain) const {
  if (chain.length() != size()) throw InputError("chain length does not match complex size");
  f2::Support acc;
  f2::Support scratch;
  for (Index i : chain.support()) f2::add_into(acc, boundary_[i], scratch);
  return f2::Vector::from_support(size(), std::move(acc));
}

f2::Vector FilteredComplex::codifferential(const f2::Vector& cochain) const {
  if (cochain.length() != size()) throw InputError("cochain length does not match complex size");
  f2::Support out;
  for (std::size_t i = 0; i < size(); ++i) {
    int parity = 0;
    for (Index t : boundary_[i]) parity ^= cochain.test(t) ? 1 : 0;
    if (parity) out.push_back(static_cast<Index>(i));
  }
  return f2::Vector::from_support(size(), std::move(out));
}

ValidationReport validate(const FilteredComplex& c) {
  ValidationReport report;
  for (const auto& a : c.arrows()) {
    const auto& from = c.generator(a.from);
    const auto& to = c.generator(a.to);
    if (c.graded() && *to.maslov != *from.maslov - 1) {
      report.violations.push_back({ViolationKind::maslov_drop, a.from, a.to});
    }
    if (to.filt > from.filt) {
      report.violations.push_back({ViolationKind::filtration_increase, a.from, a.to});
    }
  }
  f2::Support acc;
  f2::Support scratch;
  for (std::size_t x = 0; x < c.size(); ++x) {
    acc.clear();
    for (Index y : c.boundary(static_cast<Index>(x))) f2::add_into(acc, c.boundary(y), scratch);
    for (Index z : acc) {
      report.violations.push_back({ViolationKind::boundary_squared, static_cast<Index>(x), z});
    }
  }
  return report;
}

void require_valid(const FilteredComplex& c) {
  auto report = validate(c);
  if (report.ok()) return;
  const auto& v = report.violations.front();
  throw InputError(std::string("invalid filtered complex: ") + to_string(v.kind) + " at " +
                   c.generator(v.from).id + " -> " + c.generator(v.to).id);
}

namespace {

template <class Keep>
FilteredComplex restrict_to(const FilteredComplex& c, Keep keep) {
  std::vector<std::int64_t> new_index(c.size(), -1);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (keep(c.generator(static_cast<Index>(i)))) {
      new_index[i] = static_cast<std::int64_t>(gens.size());
      gens.push_back(c.generator(static_cast<Index>(i)));
    }
  }
  std::vector<Arrow> arrows;
  for (const auto& a : c.arrows()) {
    if (new_index[a.from] >= 0 && new_index[a.to] >= 0) {
      arrows.push_back({static_cast<Index>(new_index[a.from]), static_cast<Index>(new_index[a.to])});
    }
  }
  return FilteredComplex(std::move(gens), std::move(arrows));
}

}  // namespace

FilteredComplex sublevel(const FilteredComplex& c, int m) {
  return restrict_to(c, [m](const Generator& g) { return g.filt <= m; });
}

FilteredComplex quotient_above(const FilteredComplex& c, int m) {
  return restrict_to(c, [m](const Generator& g) { return g.filt > m; });
}

std::string dual_id(const std::string& id) { return id + "*"; }

std::string tensor_id(const std::string& a, const std::string& b) { return a + "|" + b; }

FilteredComplex dualize(const FilteredComplex& c) {
  std::vector<Generator> gens;
  gens.reserve(c.size());
  for (const auto& g : c.generators()) {
    std::optional<int> m;
    if (g.maslov) m = -*g.maslov;
    gens.push_back({dual_id(g.id), m, -g.filt});
  }
  std::vector<Arrow> arrows;
  arrows.reserve(c.arrows().size());
  for (const auto& a : c.arrows()) arrows.push_back({a.to, a.from});
  return FilteredComplex(std::move(gens), std::move(arrows));
}

FilteredComplex shift(const FilteredComplex& c, int d) {
  std::vector<Generator> gens = c.generators();
  for (auto& g : gens) g.filt += d;
  return FilteredComplex(std::move(gens), c.arrows());
}

FilteredComplex tensor(const FilteredComplex& c1, const FilteredComplex& c2) {
  if (!c1.empty() && !c2.empty() && c1.graded() != c2.graded()) {
    throw InputError("cannot tensor a graded complex with an ungraded one");
  }
  std::vector<Generator> gens;
  gens.reserve(c1.size() * c2.size());
  for (const auto& a : c1.generators()) {
    for (const auto& b : c2.generators()) {
      std::optional<int> m;
      if (a.maslov && b.maslov) m = *a.maslov + *b.maslov;
      gens.push_back({tensor_id(a.id, b.id), m, a.filt + b.filt});
    }
  }
  std::vector<Arrow> arrows;
  for (const auto& e : c1.arrows()) {
    for (std::size_t b = 0; b < c2.size(); ++b) {
      arrows.push_back({tensor_index(c2, e.from, static_cast<Index>(b)),
                        tensor_index(c2, e.to, static_cast<Index>(b))});
    }
  }
  for (std::size_t a = 0; a < c1.size(); ++a) {
    for (const auto& e : c2.arrows()) {
      arrows.push_back({tensor_index(c2, static_cast<Index>(a), e.from),
                        tensor_index(c2, static_cast<Index>(a), e.to)});
    }
  }
  return FilteredComplex(std::move(gens), std::move(arrows));
}

f2::Vector tensor_vectors(const f2::Vector& a, const f2::Vector& b) {
  f2::Support s;
  s.reserve(a.weight() * b.weight());
  for (Index i : a.support()) {
    for (Index j : b.support()) s.push_back(static_cast<Index>(i * b.length() + j));
  }
  return f2::Vector::from_support(a.length() * b.length(), std::move(s));
}

bool same_shape(const FilteredComplex& a, const FilteredComplex& b) {
  if (a.size() != b.size() || a.arrows() != b.arrows()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& ga = a.generator(static_cast<Index>(i));
    const auto& gb = b.generator(static_cast<Index>(i));
    if (ga.maslov != gb.maslov || ga.filt != gb.filt) return false;
  }
  return true;
}

}  // namespace knotfilt
