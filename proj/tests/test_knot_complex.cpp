#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "common/errors.hpp"
#include "complex/homology.hpp"
#include "grid/grid.hpp"
#include "knot/knot_complex.hpp"
#include "support/random_complex.hpp"

using namespace knotfilt;
using namespace knotfilt::knot;

namespace {

KnotComplex unknot() { return KnotComplex({{"g", 0, 0}}, {}); }

KnotComplex staircase() {
  return KnotComplex({{"a", 0, 1}, {"b", -1, 0}, {"c", -2, -1}}, {{1, 0, 1, 0}, {1, 2, 0, 1}});
}

BigradedRanks table(std::initializer_list<std::tuple<int, int, std::size_t>> rows) {
  BigradedRanks out;
  for (auto [a, m, r] : rows) out[{a, m}] = r;
  return out;
}

// Every (x, i, j) with j - i = A(x), i >= 0, j >= m and min(i, j - m) = 0,
// found by scanning a generous box.
std::set<std::tuple<Index, int, int>> brute_region(const KnotComplex& d, int m) {
  std::set<std::tuple<Index, int, int>> out;
  for (Index x = 0; x < d.size(); ++x) {
    for (int i = -40; i <= 40; ++i) {
      int j = i + d.generator(x).alexander;
      if (i >= 0 && j >= m && std::min(i, j - m) == 0) out.emplace(x, i, j);
    }
  }
  return out;
}

void check_models(const KnotComplex& d) {
  int lo = d.generator(0).alexander;
  int hi = lo;
  for (const auto& g : d.generators()) {
    lo = std::min(lo, g.alexander);
    hi = std::max(hi, g.alexander);
  }
  for (int m = lo - 1; m <= hi + 1; ++m) {
    SurgeryModel model = surgery_model(d, m);  // throws unless d^2 = 0 and f_m is a chain map
    std::set<std::tuple<Index, int, int>> got;
    for (const auto& t : model.triples) got.emplace(t.generator, t.i, t.j);
    CHECK(got == brute_region(d, m));
    CHECK(validate(model.complex).ok());
  }
}

}  // namespace

TEST_CASE("hat complex") {
  auto u = hat_filtered(unknot());
  CHECK(u.size() == 1);
  CHECK(u.arrows().empty());
  auto s = hat_filtered(staircase());
  REQUIRE(s.arrows().size() == 1);
  CHECK(s.generator(s.arrows()[0].from).id == "b");
  CHECK(s.generator(s.arrows()[0].to).id == "c");
  CHECK(validate(s).ok());
  // The two empty rectangles each way carry equal labels and cancel mod 2.
  auto g = grid::to_knot_complex({2, {0, 1}, {1, 0}});
  CHECK(g.arrows().empty());
  auto h = hat_filtered(g);
  CHECK(h.size() == 2);
  CHECK(h.arrows().empty());
}

TEST_CASE("knot data validation") {
  CHECK(validate(staircase()).ok());
  auto bad_maslov = KnotComplex({{"a", 0, 1}, {"b", -1, 0}}, {{1, 0, 0, 0}});
  CHECK(validate(bad_maslov).violations.at(0).kind == KnotViolationKind::maslov_rule);
  auto bad_alex = KnotComplex({{"a", 0, 0}, {"b", -1, 0}}, {{0, 1, 0, 1}});
  CHECK(validate(bad_alex).violations.at(0).kind == KnotViolationKind::alexander_rule);
  auto squares = KnotComplex({{"a", 0, 0}, {"b", -1, 0}, {"c", -2, 0}}, {{0, 1, 0, 0}, {1, 2, 0, 0}});
  CHECK(validate(squares).violations.at(0).kind == KnotViolationKind::boundary_squared);
  CHECK_THROWS_AS(hfk(squares), InputError);
  CHECK_THROWS_AS(KnotComplex({{"a", 0, 0}, {"b", 1, 1}}, {{0, 1, -1, 0}}), InputError);
  // Equal labels cancel, distinct labels are kept apart.
  auto twice = KnotComplex({{"a", 0, 0}, {"b", 1, 0}}, {{1, 0, 1, 1}, {1, 0, 1, 1}, {1, 0, 0, 0}});
  CHECK(twice.arrows().size() == 1);
}

TEST_CASE("hfk, Alexander polynomial and genus") {
  CHECK(hfk(unknot()).reduced == table({{0, 0, 1}}));
  CHECK(alexander_polynomial(unknot()).to_string() == "1");
  CHECK(genus_upper_support(unknot()) == 0);

  auto s = staircase();
  CHECK(hfk(s).reduced == table({{1, 0, 1}, {0, -1, 1}, {-1, -2, 1}}));
  CHECK(alexander_polynomial(s).to_string() == "T - 1 + T^-1");
  CHECK(genus_upper_support(s) == 1);

  auto ss = tensor(s, s);
  auto r = hfk(ss);
  CHECK(r.reduced.at({2, 0}) == 1);
  int top = -100;
  for (const auto& [key, rank] : r.reduced) top = std::max(top, key.first);
  CHECK(top == 2);
  CHECK(genus_upper_support(ss) == 2);
  CHECK(alexander_polynomial(ss) == (alexander_polynomial(s) * alexander_polynomial(s)).normalized());

  CHECK_THROWS_AS(genus_upper_support(HfkResult{}), InputError);
}

TEST_CASE("auxiliary factors divide out") {
  auto g = grid::to_knot_complex({2, {0, 1}, {1, 0}});
  CHECK(g.auxiliary_factors() == 1);
  auto r = hfk(g);
  CHECK(r.raw == table({{0, 0, 1}, {-1, -1, 1}}));
  CHECK(r.reduced == table({{0, 0, 1}}));
  // Data that is not a multiple of the declared factor is rejected.
  auto lying = KnotComplex({{"g", 0, 0}}, {}, 1);
  CHECK_THROWS_AS(hfk(lying), InvariantViolation);
}

TEST_CASE("surgery model examples") {
  auto u = surgery_model(unknot(), 0);
  REQUIRE(u.triples.size() == 1);
  CHECK(u.triples[0].i == 0);
  CHECK(u.triples[0].j == 0);
  CHECK(u.map == f2::Matrix::identity(1));

  auto s = staircase();
  auto m0 = surgery_model(s, 0);
  std::set<std::tuple<Index, int, int>> got;
  for (const auto& t : m0.triples) got.emplace(t.generator, t.i, t.j);
  CHECK(got == std::set<std::tuple<Index, int, int>>{{0, 0, 1}, {1, 0, 0}, {2, 1, 0}});
  CHECK(m0.complex.arrows().empty());

  auto m2 = surgery_model(s, 2);
  got.clear();
  for (const auto& t : m2.triples) got.emplace(t.generator, t.i, t.j);
  CHECK(got == std::set<std::tuple<Index, int, int>>{{0, 1, 2}, {1, 2, 2}, {2, 3, 2}});
  CHECK(m2.complex.arrows().size() == 1);
  CHECK(m2.map.nnz() == 0);
}

TEST_CASE("surgery dichotomy examples") {
  auto u = unknot();
  auto uh = hat_filtered(u);
  auto r = surgery_dichotomy(u, top_class(uh), -1);
  CHECK(r.verdict == Dichotomy::nonzero_forced);
  CHECK(r.computed_nonzero);
  CHECK_FALSE(r.contradiction);

  auto s = staircase();
  auto sh = hat_filtered(s);
  auto z = make_class(sh, f2::Vector::unit(3, 0));
  auto r0 = surgery_dichotomy(s, z, 0);
  CHECK(r0.verdict == Dichotomy::nonzero_forced);
  CHECK(r0.computed_nonzero);
  auto r1 = surgery_dichotomy(s, z, 1);
  CHECK(r1.verdict == Dichotomy::indeterminate);
  auto r2 = surgery_dichotomy(s, z, 2);
  CHECK(r2.verdict == Dichotomy::zero_forced);
  CHECK_FALSE(r2.computed_nonzero);
  CHECK(std::string(to_string(r2.verdict)) == "ZeroForced");

  for (const auto& row : surgery_sweep(s, z)) CHECK_FALSE(row.contradiction);
}

TEST_CASE("surgery models on assorted data") {
  check_models(unknot());
  check_models(staircase());
  check_models(tensor(staircase(), staircase()));
  check_models(grid::to_knot_complex({2, {0, 1}, {1, 0}}));
  check_models(grid::to_knot_complex({3, {0, 1, 2}, {1, 2, 0}}));
  check_models(grid::to_knot_complex({5, {4, 3, 2, 1, 0}, {1, 0, 4, 3, 2}}));
}

TEST_CASE("dichotomy on random lifted complexes") {
  std::mt19937_64 rng(testing::seed_from_env() + 5);
  int done = 0;
  while (done < 60) {
    auto rc = testing::random_complex(rng);
    if (rc.essentials.empty()) continue;
    auto d = from_filtered(rc.complex);
    check_models(d);
    auto hat = hat_filtered(d);
    auto pick = testing::random_class(rng, rc, true);
    auto z = make_class(hat, testing::sum_of(rc.essentials, pick, hat.size()));
    for (const auto& row : surgery_sweep(d, z)) CHECK_FALSE(row.contradiction);
    ++done;
  }
}

TEST_CASE("tau stays within the genus support") {
  for (const auto& d : {unknot(), staircase(), tensor(staircase(), staircase())}) {
    auto hat = hat_filtered(d);
    int t = tau_class(hat, top_class(hat)).tau;
    CHECK(std::abs(t) <= genus_upper_support(d));
  }
}

TEST_CASE("Laurent helpers") {
  Laurent p(-1, {1, -1, 1});
  CHECK(p.to_string() == "T - 1 + T^-1");
  CHECK(p.symmetric());
  CHECK(p.at_one() == 1);
  CHECK((-p).normalized() == p);
  CHECK(p.shifted(3).normalized() == p);
  Laurent one_minus(-1, {-1, 1});  // 1 - T^-1
  CHECK((p * one_minus).divided_by_one_minus_inverse() == p);
  CHECK_THROWS_AS(p.divided_by_one_minus_inverse(), InvariantViolation);
  CHECK(Laurent().to_string() == "0");
  CHECK(Laurent(0, {3, 0, -2}).to_string() == "-2T^2 + 3");
}
