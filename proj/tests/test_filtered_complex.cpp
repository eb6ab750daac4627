#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common/errors.hpp"
#include "complex/filtered_complex.hpp"
#include "complex/homology.hpp"
#include "support/random_complex.hpp"

using namespace knotfilt;
using f2::Vector;

namespace {

// Hat complex of the trefoil staircase: a (0, 1), b (-1, 0), c (-2, -1), b -> c.
FilteredComplex trefoil_hat() {
  return FilteredComplex::from_ids({{"a", 0, 1}, {"b", -1, 0}, {"c", -2, -1}}, {{"b", "c"}});
}

FilteredComplex point(int maslov, int filt) { return FilteredComplex({{"g", maslov, filt}}, {}); }

Vector gen(const FilteredComplex& c, const std::string& id) { return Vector::unit(c.size(), *c.find(id)); }

bool supported_at_or_below(const FilteredComplex& c, const Vector& v, int m) {
  for (auto i : v.support()) {
    if (c.generator(i).filt > m) return false;
  }
  return true;
}

std::size_t total_rank(const FilteredComplex& c) { return homology(c).total_rank(); }

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(point(0, 0)).ok());
  auto bad = FilteredComplex::from_ids({{"a", 1, 0}, {"b", 0, 1}}, {{"a", "b"}});
  auto report = validate(bad);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::filtration_increase);
  CHECK(validate(trefoil_hat()).ok());

  auto drop = FilteredComplex::from_ids({{"a", 0, 0}, {"b", 0, 0}}, {{"a", "b"}});
  CHECK(validate(drop).violations.at(0).kind == ViolationKind::maslov_drop);
  auto square = FilteredComplex::from_ids({{"a", 0, 0}, {"b", -1, 0}, {"c", -2, 0}}, {{"a", "b"}, {"b", "c"}});
  CHECK(validate(square).violations.at(0).kind == ViolationKind::boundary_squared);
  CHECK_THROWS_AS(homology(square), InputError);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(FilteredComplex({{"a", 0, 0}, {"a", 0, 0}}, {}), InputError);
  CHECK_THROWS_AS(FilteredComplex({{"", 0, 0}}, {}), InputError);
  CHECK_THROWS_AS(FilteredComplex({{"a", 0, 0}, {"b", std::nullopt, 0}}, {}), InputError);
  CHECK_THROWS_AS(FilteredComplex({{"a", 0, 0}}, {{0, 1}}), InputError);
  // Repeated arrows cancel.
  auto c = FilteredComplex({{"a", 1, 0}, {"b", 0, 0}}, {{0, 1}, {0, 1}});
  CHECK(c.arrows().empty());
}

TEST_CASE("sublevel and quotient") {
  auto c = trefoil_hat();
  CHECK(sublevel(c, -5).empty());
  CHECK(sublevel(c, 5) == c);
  auto s0 = sublevel(c, 0);
  CHECK(s0 == FilteredComplex::from_ids({{"b", -1, 0}, {"c", -2, -1}}, {{"b", "c"}}));
  CHECK(quotient_above(c, 5).empty());
  CHECK(quotient_above(c, -5) == c);
  CHECK(quotient_above(c, 0) == FilteredComplex::from_ids({{"a", 0, 1}}, {}));
}

TEST_CASE("homology examples") {
  auto h1 = homology(point(3, 0));
  CHECK(h1.rank(3) == 1);
  CHECK(h1.total_rank() == 1);
  auto pair = FilteredComplex::from_ids({{"a", 1, 0}, {"b", 0, 0}}, {{"a", "b"}});
  CHECK(homology(pair).total_rank() == 0);
  auto c = trefoil_hat();
  auto h = homology(c);
  CHECK(h.total_rank() == 1);
  CHECK(h.rank(0) == 1);
  auto reps = h.representatives(0);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0] == gen(c, "a"));
  CHECK(homology(FilteredComplex()).total_rank() == 0);
}

TEST_CASE("inclusion on homology") {
  auto c = trefoil_hat();
  auto top = inclusion_on_homology(c, 5);
  for (const auto& [m, mat] : top.blocks) CHECK(mat == f2::Matrix::identity(mat.rows()));
  CHECK(top.source.total_rank() == 1);
  auto low = inclusion_on_homology(c, -5);
  CHECK(low.source.total_rank() == 0);
  for (const auto& [m, mat] : low.blocks) CHECK(mat.cols() == 0);
  auto mid = inclusion_on_homology(c, 0);
  CHECK(mid.source.total_rank() == 0);
}

TEST_CASE("tau examples") {
  auto g = point(0, 0);
  CHECK(tau_class(g, make_class(g, Vector::unit(1, 0))).tau == 0);
  auto c = trefoil_hat();
  auto a = make_class(c, gen(c, "a"));
  auto r = tau_class(c, a);
  CHECK(r.tau == 1);
  CHECK(r.witness == gen(c, "a"));
  auto c5 = shift(c, 5);
  CHECK(tau_class(c5, make_class(c5, gen(c5, "a"))).tau == 6);

  CHECK_THROWS_AS(make_class(c, gen(c, "b")), InputError);  // not a cycle
  CHECK_THROWS_AS(tau_class(c, make_class(c, gen(c, "c"))), InputError);  // boundary
  CHECK_THROWS_AS(tau_class(c, make_class(c, Vector(3))), InputError);
  // A class of another complex is refused.
  CHECK_THROWS_AS(tau_class(c5, a), InputError);
}

TEST_CASE("dualize examples") {
  CHECK(dualize(FilteredComplex()).empty());
  auto c = trefoil_hat();
  auto dd = dualize(dualize(c));
  CHECK(same_shape(dd, c));
  CHECK(dd.generator(0).id == "a**");
  auto d = dualize(c);
  CHECK(d.generator(*d.find("a*")).filt == -1);
  CHECK(d.generator(*d.find("b*")).filt == 0);
  CHECK(d.generator(*d.find("c*")).filt == 1);
  CHECK(d.boundary(*d.find("c*")) == f2::Support{*d.find("b*")});
  auto h = homology(d);
  CHECK(h.total_rank() == 1);
  auto star = make_class(d, gen(d, "a*"));
  CHECK(tau_class(d, star).tau == -1);
}

TEST_CASE("pairing and tau* examples") {
  auto g = point(0, 0);
  auto gd = dualize(g);
  CHECK(pairing(g, make_class(gd, Vector::unit(1, 0)), make_class(g, Vector::unit(1, 0))) == 1);
  CHECK(tau_dual_class(g, make_class(gd, Vector::unit(1, 0))).tau == 0);

  auto c = trefoil_hat();
  auto d = dualize(c);
  auto y = make_class(d, gen(d, "a*"));
  auto x = make_class(c, gen(c, "a"));
  CHECK(pairing(c, y, x) == 1);
  // x + boundary pairs the same way.
  auto perturbed = make_class(c, gen(c, "a") + gen(c, "c"));
  CHECK(pairing(c, y, perturbed) == 1);
  auto r = tau_dual_class(c, y);
  CHECK(r.tau == 1);
  CHECK(r.tau == -tau_class(d, y).tau);
  auto c3 = shift(c, 3);
  auto d3 = dualize(c3);
  CHECK(tau_dual_class(c3, make_class(d3, gen(d3, "a*"))).tau == 4);
  // y must live on the dual of c.
  CHECK_THROWS_AS(tau_dual_class(c, x), InputError);
  // Grading mismatch is refused.
  auto two = FilteredComplex({{"p", 0, 0}, {"q", 2, 0}}, {});
  auto two_d = dualize(two);
  CHECK_THROWS_AS(pairing(two, make_class(two_d, Vector::unit(2, 1)), make_class(two, Vector::unit(2, 0))),
                  InputError);
}

TEST_CASE("tensor and shift examples") {
  auto c = trefoil_hat();
  auto unit = point(0, 0);
  CHECK(same_shape(tensor(c, unit), c));
  auto cc = tensor(c, c);
  CHECK(cc.size() == 9);
  CHECK(validate(cc).ok());
  auto a = gen(c, "a");
  auto z = make_class(cc, tensor_vectors(a, a));
  CHECK(tau_class(cc, z).tau == 2);
  CHECK(tau_class(cc, top_class(cc)).tau == 2);

  auto cd = tensor(c, dualize(c));
  CHECK(tau_class(cd, top_class(cd)).tau == 0);

  CHECK(shift(c, 0) == c);
  CHECK(shift(shift(c, 2), 3) == shift(c, 5));
  CHECK_THROWS_AS(tensor(c, FilteredComplex({{"u", std::nullopt, 0}}, {})), InputError);
}

TEST_CASE("top class selection") {
  CHECK_THROWS_AS(top_class(FilteredComplex({{"p", 0, 0}, {"q", 0, 1}}, {})), InputError);
  CHECK_THROWS_AS(top_class(FilteredComplex()), InputError);
  auto c = FilteredComplex({{"p", 0, 0}, {"q", 2, 5}}, {});
  auto z = top_class(c);
  CHECK(z.maslov == 2);
  CHECK(tau_class(c, z).tau == 5);
}

TEST_CASE("random complexes against the direct-sum oracle") {
  std::mt19937_64 rng(testing::seed_from_env());
  for (int trial = 0; trial < 300; ++trial) {
    testing::RandomOptions opts;
    opts.graded = trial % 4 != 3;
    auto rc = testing::random_complex(rng, opts);
    const auto& c = rc.complex;
    REQUIRE(validate(c).ok());
    auto h = homology(c);
    CHECK(h.total_rank() == rc.essentials.size());
    if (rc.essentials.empty()) continue;
    auto d = dualize(c);
    for (int sample = 0; sample < 4; ++sample) {
      auto pick = testing::random_class(rng, rc, opts.graded);
      auto z = make_class(c, testing::sum_of(rc.essentials, pick, c.size()));
      int expected = rc.levels[pick[0]];
      int expected_dual = rc.levels[pick[0]];
      for (auto k : pick) {
        expected = std::max(expected, rc.levels[k]);
        expected_dual = std::min(expected_dual, rc.levels[k]);
      }
      auto r = tau_class(c, z);
      CHECK(r.tau == expected);
      CHECK(h.is_cycle(r.witness));
      CHECK(h.is_boundary(r.witness + z.representative));
      CHECK(supported_at_or_below(c, r.witness, r.tau));

      auto y = make_class(d, testing::sum_of(rc.dual_essentials, pick, c.size()));
      auto rd = tau_dual_class(c, y);
      CHECK(rd.tau == expected_dual);
      CHECK(h.is_cycle(rd.witness));
      CHECK(y.representative.dot(rd.witness) == 1);
      CHECK(supported_at_or_below(c, rd.witness, rd.tau));
      // Reversal.
      CHECK(tau_class(d, y).tau == -rd.tau);
      // Shift.
      auto cs = shift(c, 7);
      CHECK(tau_class(cs, make_class(cs, z.representative)).tau == expected + 7);
    }
  }
}

TEST_CASE("short exact sequence bookkeeping and monotonicity") {
  std::mt19937_64 rng(testing::seed_from_env() + 11);
  for (int trial = 0; trial < 100; ++trial) {
    auto rc = testing::random_complex(rng);
    const auto& c = rc.complex;
    int lo = *c.min_filt() - 1;
    int hi = *c.max_filt() + 1;
    std::size_t hc = total_rank(c);
    std::vector<f2::Vector> previous_images;
    for (int m = lo; m <= hi; ++m) {
      std::size_t hf = total_rank(sublevel(c, m));
      std::size_t hq = total_rank(quotient_above(c, m));
      auto inc = inclusion_on_homology(c, m);
      std::size_t rank_i = 0;
      std::vector<f2::Vector> images;
      for (const auto& [grading, mat] : inc.blocks) {
        rank_i += f2::rank(mat);
        for (std::size_t j = 0; j < mat.cols(); ++j) {
          // Lift the block column into global coordinates.
          std::size_t offset = 0;
          for (const auto& s : inc.target.gradings()) {
            if (s.maslov == grading) offset = s.offset;
          }
          f2::Support global;
          for (auto row : mat.column(j)) global.push_back(static_cast<Index>(row + offset));
          images.push_back(Vector::from_support(hc, global));
        }
      }
      REQUIRE((hf + hq) >= hc);
      REQUIRE((hf + hq - hc) % 2 == 0);
      std::size_t rank_delta = (hf + hq - hc) / 2;
      CHECK(hf == rank_delta + rank_i);
      CHECK(hq == (hc - rank_i) + rank_delta);
      // Im I_{m-1} is contained in Im I_m.
      if (!previous_images.empty()) {
        std::vector<f2::Support> cols;
        for (const auto& v : images) cols.push_back(v.support());
        auto span = f2::Matrix::from_columns(hc, cols);
        for (const auto& v : previous_images) CHECK(f2::image_membership(span, v).has_value());
      }
      previous_images = images;
    }
  }
}

TEST_CASE("duality identification, adjointness and reversal on random complexes") {
  std::mt19937_64 rng(testing::seed_from_env() + 23);
  for (int trial = 0; trial < 120; ++trial) {
    auto rc = testing::random_complex(rng);
    const auto& c = rc.complex;
    auto d = dualize(c);
    int lo = *c.min_filt() - 1;
    int hi = *c.max_filt() + 1;
    for (int m = lo; m <= hi; ++m) {
      CHECK(dualize(quotient_above(c, m)) == sublevel(d, -m - 1));
    }
    if (rc.essentials.empty()) continue;
    // Adjointness <P_{-m-1} y, x>_m = <y, I_m x> with perturbed representatives.
    for (int m = lo; m <= hi; ++m) {
      auto sub = sublevel(c, m);
      auto hs = homology(sub);
      if (hs.total_rank() == 0) continue;
      auto dq = quotient_above(d, -m - 1);  // identified with the dual of sub
      REQUIRE(same_shape(dq, dualize(sub)));
      for (std::size_t k = 0; k < hs.total_rank(); ++k) {
        auto x_sub = hs.basis_vector(k);
        // Perturb x by a random boundary of the sublevel complex.
        f2::Vector w(sub.size());
        for (Index i = 0; i < sub.size(); ++i) {
          if (rng() & 1) w.flip(i);
        }
        auto x_pert = x_sub + sub.differential(w);
        auto x_full = include_chain(c, m, x_sub);
        for (std::size_t e = 0; e < rc.dual_essentials.size(); ++e) {
          const auto& y = rc.dual_essentials[e];
          // P_{-m-1}: restrict the cochain to the sublevel generators.
          auto py = restrict_chain(c, m, y);
          // Perturb P(y) by a coboundary of the quotient (dual of sub).
          f2::Vector u(sub.size());
          for (Index i = 0; i < sub.size(); ++i) {
            if (rng() & 1) u.flip(i);
          }
          auto py_pert = py + sub.codifferential(u);
          CHECK(py_pert.dot(x_pert) == y.dot(x_full));
        }
      }
    }
  }
}

TEST_CASE("additivity on random pairs") {
  std::mt19937_64 rng(testing::seed_from_env() + 37);
  int done = 0;
  while (done < 60) {
    testing::RandomOptions opts;
    opts.max_generators = 7;
    auto r1 = testing::random_complex(rng, opts);
    auto r2 = testing::random_complex(rng, opts);
    if (r1.essentials.empty() || r2.essentials.empty()) continue;
    auto p1 = testing::random_class(rng, r1, true);
    auto p2 = testing::random_class(rng, r2, true);
    auto z1 = testing::sum_of(r1.essentials, p1, r1.complex.size());
    auto z2 = testing::sum_of(r2.essentials, p2, r2.complex.size());
    auto t = tensor(r1.complex, r2.complex);
    int t1 = tau_class(r1.complex, make_class(r1.complex, z1)).tau;
    int t2 = tau_class(r2.complex, make_class(r2.complex, z2)).tau;
    CHECK(tau_class(t, make_class(t, tensor_vectors(z1, z2))).tau == t1 + t2);
    // tau* is additive as well.
    auto y1 = testing::sum_of(r1.dual_essentials, p1, r1.complex.size());
    auto y2 = testing::sum_of(r2.dual_essentials, p2, r2.complex.size());
    auto td = dualize(t);
    int s1 = tau_dual_class(r1.complex, make_class(dualize(r1.complex), y1)).tau;
    int s2 = tau_dual_class(r2.complex, make_class(dualize(r2.complex), y2)).tau;
    CHECK(tau_dual_class(t, make_class(td, tensor_vectors(y1, y2))).tau == s1 + s2);
    ++done;
  }
}

TEST_CASE("homology presentation is deterministic") {
  std::mt19937_64 rng(testing::seed_from_env() + 41);
  for (int trial = 0; trial < 30; ++trial) {
    auto rc = testing::random_complex(rng);
    auto h1 = homology(rc.complex);
    auto h2 = homology(rc.complex);
    for (std::size_t k = 0; k < h1.total_rank(); ++k) CHECK(h1.basis_vector(k) == h2.basis_vector(k));
  }
}
