#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

#include "common/errors.hpp"
#include "complex/homology.hpp"
#include "contact/contact.hpp"
#include "grid/grid.hpp"
#include "io/formats.hpp"
#include "knot/knot_complex.hpp"
#include "support/random_complex.hpp"

using namespace knotfilt;
using namespace knotfilt::grid;
using knot::Laurent;

namespace {

GridDiagram load(const std::string& name) {
  return parse_grid(io::read_file(std::string(KNOTFILT_FIXTURE_DIR) + "/" + name));
}

const std::vector<std::string> kFixtures = {"unknot2.grid",          "unknot3.grid",   "trefoil-negative.grid",
                                            "trefoil-positive.grid", "figure-eight.grid", "torus-2-5.grid"};

int tau_of(const GridDiagram& g) {
  auto hat = to_hat_complex(g);
  return tau_class(hat, top_class(hat)).tau;
}

GridDiagram random_knot_grid(std::mt19937_64& rng, int n) {
  for (;;) {
    GridDiagram g{n, std::vector<int>(static_cast<std::size_t>(n)), std::vector<int>(static_cast<std::size_t>(n))};
    std::iota(g.o.begin(), g.o.end(), 0);
    std::iota(g.x.begin(), g.x.end(), 0);
    std::shuffle(g.o.begin(), g.o.end(), rng);
    std::shuffle(g.x.begin(), g.x.end(), rng);
    if (validate_grid(g).is_knot()) return g;
  }
}

// Labelled arrows mod 2, found geometrically in doubled coordinates: state
// points at even lattice positions, markings at odd ones, containment tested
// against every point of the torus.
std::map<std::tuple<std::string, std::string, int, int>, int> rectangle_oracle(const GridDiagram& g) {
  const int n = g.n;
  const int N = 2 * n;
  auto inside = [&](int px, int py, int x0, int w, int y0, int h) {
    int dx = ((px - x0) % N + N) % N;
    int dy = ((py - y0) % N + N) % N;
    return dx > 0 && dx < w && dy > 0 && dy < h;
  };
  std::map<std::tuple<std::string, std::string, int, int>, int> out;
  GridState s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  do {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        // Rectangle from column a rightwards to column b, rows s[a] upwards to s[b].
        int x0 = 2 * a;
        int y0 = 2 * s[static_cast<std::size_t>(a)];
        int w = 2 * (((b - a) % n + n) % n);
        int h = 2 * (((s[static_cast<std::size_t>(b)] - s[static_cast<std::size_t>(a)]) % n + n) % n);
        bool empty = true;
        for (int c = 0; c < n && empty; ++c) {
          if (inside(2 * c, 2 * s[static_cast<std::size_t>(c)], x0, w, y0, h)) empty = false;
        }
        if (!empty) continue;
        int nw = 0;
        int nz = 0;
        for (int r = 0; r < n; ++r) {
          nw += inside(2 * g.o[static_cast<std::size_t>(r)] + 1, 2 * r + 1, x0, w, y0, h);
          nz += inside(2 * g.x[static_cast<std::size_t>(r)] + 1, 2 * r + 1, x0, w, y0, h);
        }
        GridState t = s;
        std::swap(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]);
        auto key = std::make_tuple(state_id(s), state_id(t), nw, nz);
        out[key] ^= 1;
      }
    }
  } while (std::next_permutation(s.begin(), s.end()));
  for (auto it = out.begin(); it != out.end();) it = it->second ? std::next(it) : out.erase(it);
  return out;
}

std::map<std::tuple<std::string, std::string, int, int>, int> arrows_by_id(const knot::KnotComplex& d) {
  std::map<std::tuple<std::string, std::string, int, int>, int> out;
  for (const auto& a : d.arrows()) out[{d.generator(a.from).id, d.generator(a.to).id, a.nw, a.nz}] ^= 1;
  return out;
}

// Winding number of the knot around lattice point (i, j): signed count of
// vertical strands crossing the horizontal ray to the right.
int winding(const GridDiagram& g, int i, int j) {
  int w = 0;
  for (int c = 0; c < g.n; ++c) {
    if (c < i) continue;
    int row_o = static_cast<int>(std::find(g.o.begin(), g.o.end(), c) - g.o.begin());
    int row_x = static_cast<int>(std::find(g.x.begin(), g.x.end(), c) - g.x.begin());
    int lo = std::min(row_o, row_x);
    int hi = std::max(row_o, row_x);
    if (lo < j && j <= hi) w += row_o > row_x ? 1 : -1;  // vertical strands run from X to O
  }
  return w;
}

// det (T^-w(i,j)) by the Leibniz expansion.
Laurent winding_determinant(const GridDiagram& g) {
  const int n = g.n;
  std::vector<std::vector<int>> e(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -winding(g, i, j);
  }
  std::map<int, std::int64_t> terms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) inversions += p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)];
    }
    int exponent = 0;
    for (int i = 0; i < n; ++i) exponent += e[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
    terms[exponent] += inversions % 2 ? -1 : 1;
  } while (std::next_permutation(p.begin(), p.end()));
  Laurent out;
  for (auto [k, c] : terms) out = out + Laurent::monomial(k, c);
  return out;
}

// Representative of p up to multiplication by +-T^k.
Laurent up_to_unit(const Laurent& p) {
  if (p.is_zero()) return p;
  Laurent q = p.shifted(-p.low());
  return q.coeff(0) < 0 ? -q : q;
}

Laurent one_minus_t_power(int k) {
  Laurent out = Laurent::monomial(0);
  for (int i = 0; i < k; ++i) out = out * Laurent(0, {1, -1});
  return out;
}

void check_structure(const GridDiagram& g) {
  auto d = to_knot_complex(g, {kHardMaxGridSize, 1});
  CHECK(d.size() == factorial(g.n));
  CHECK(knot::validate(d).ok());  // Maslov drop, Alexander rule and d^2 = 0
  auto hat = to_hat_complex(g, {kHardMaxGridSize, 1});
  CHECK(hat == knot::hat_filtered(d));
  CHECK(validate(hat).ok());
  for (const auto& a : hat.arrows()) {
    CHECK(hat.generator(a.to).filt <= hat.generator(a.from).filt);
    CHECK(*hat.generator(a.to).maslov == *hat.generator(a.from).maslov - 1);
  }
  auto h = homology(hat);
  CHECK(h.total_rank() == (std::size_t{1} << (g.n - 1)));
  std::optional<int> top;
  for (const auto& s : h.gradings()) {
    if (s.rank > 0) top = s.maslov;
  }
  REQUIRE(top);
  CHECK(h.rank(top) == 1);
}

}  // namespace

TEST_CASE("grid text format") {
  auto g = parse_grid("# comment\n3\nO: 0 1 2\nX: 1 2 0\n");
  CHECK(g == GridDiagram{3, {0, 1, 2}, {1, 2, 0}});
  CHECK(parse_grid(format_grid(g)) == g);
  for (const auto& name : kFixtures) {
    auto f = load(name);
    CHECK(parse_grid(format_grid(f)) == f);
  }
  CHECK_THROWS_AS(parse_grid(""), InputError);
  CHECK_THROWS_AS(parse_grid("3\nO: 0 1 2\n"), InputError);
  CHECK_THROWS_AS(parse_grid("3\nO: 0 1\nX: 1 2 0\n"), InputError);
  CHECK_THROWS_AS(parse_grid("3\nX: 1 2 0\nO: 0 1 2\n"), InputError);
  CHECK_THROWS_AS(parse_grid("3\nO: 0 1 two\nX: 1 2 0\n"), InputError);
  CHECK_THROWS_AS(parse_grid("x\nO: 0\nX: 0\n"), InputError);
}

TEST_CASE("grid validation") {
  auto same = validate_grid({2, {0, 1}, {0, 1}});
  CHECK_FALSE(same.valid());
  CHECK(validate_grid({3, {0, 0, 1}, {1, 2, 0}}).violations.size() >= 1);
  CHECK(validate_grid(load("trefoil-positive.grid")).is_knot());
  // Two separate unknots.
  auto link = validate_grid({4, {0, 1, 2, 3}, {1, 0, 3, 2}});
  CHECK(link.valid());
  CHECK(link.components == 2);
  CHECK_FALSE(link.is_knot());
  CHECK_THROWS_AS(to_knot_complex({4, {0, 1, 2, 3}, {1, 0, 3, 2}}), InputError);
  for (const auto& name : kFixtures) CHECK(validate_grid(load(name)).is_knot());
}

TEST_CASE("2x2 unknot") {
  GridDiagram g{2, {0, 1}, {1, 0}};
  CHECK(gradings(g, {1, 0}) == Bigrading{0, 0});
  CHECK(gradings(g, {0, 1}) == Bigrading{-1, -1});
  auto d = to_knot_complex(g);
  CHECK(d.size() == 2);
  CHECK(d.arrows().empty());
  CHECK(rectangle_oracle(g).empty());
  CHECK(tau_of(g) == 0);
  CHECK(tau_of(mirror(g)) == 0);
}

TEST_CASE("rectangles agree with a geometric enumeration") {
  for (const auto& name : {"unknot2.grid", "unknot3.grid", "trefoil-positive.grid", "trefoil-negative.grid"}) {
    auto g = load(name);
    CHECK(arrows_by_id(to_knot_complex(g)) == rectangle_oracle(g));
  }
  std::mt19937_64 rng(testing::seed_from_env() + 11);
  for (int k = 0; k < 20; ++k) {
    auto g = random_knot_grid(rng, 3 + k % 3);
    CHECK(arrows_by_id(to_knot_complex(g)) == rectangle_oracle(g));
  }
}

TEST_CASE("structure on fixtures and random grids") {
  for (const auto& name : kFixtures) check_structure(load(name));
  std::mt19937_64 rng(testing::seed_from_env() + 12);
  for (int k = 0; k < 100; ++k) check_structure(random_knot_grid(rng, 2 + k % 5));
}

TEST_CASE("tau of the fixtures") {
  CHECK(tau_of(load("unknot2.grid")) == 0);
  CHECK(tau_of(load("unknot3.grid")) == 0);
  CHECK(tau_of(load("trefoil-positive.grid")) == 1);
  CHECK(tau_of(load("trefoil-negative.grid")) == -1);
  CHECK(tau_of(load("figure-eight.grid")) == 0);
  CHECK(tau_of(load("torus-2-5.grid")) == 2);
}

TEST_CASE("hfk and Alexander polynomials of the fixtures") {
  auto t = knot::hfk(to_knot_complex(load("trefoil-positive.grid")));
  knot::BigradedRanks expect{{{1, 0}, 1}, {{0, -1}, 1}, {{-1, -2}, 1}};
  CHECK(t.reduced == expect);
  auto tn = knot::hfk(to_knot_complex(load("trefoil-negative.grid")));
  knot::BigradedRanks expect_n{{{1, 2}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}};
  CHECK(tn.reduced == expect_n);

  auto fig8 = to_knot_complex(load("figure-eight.grid"));
  CHECK(knot::alexander_polynomial(fig8).to_string() == "-T + 3 - T^-1");
  CHECK(knot::genus_upper_support(fig8) == 1);
  // Seifert matrix oracle: det(V - T V^t) for V = [[-1, 1], [0, 1]].
  Laurent a = Laurent(0, {-1, 1});   // -1 + T
  Laurent b = Laurent(0, {1});       // 1
  Laurent c = Laurent(1, {-1});      // -T
  Laurent d = Laurent(0, {1, -1});   // 1 - T
  Laurent seifert = a * d - b * c;
  CHECK(up_to_unit(seifert) == up_to_unit(knot::alexander_polynomial(fig8)));

  auto t25 = to_knot_complex(load("torus-2-5.grid"));
  CHECK(knot::alexander_polynomial(t25) == Laurent(-2, {1, -1, 1, -1, 1}));
  CHECK(knot::genus_upper_support(t25) == 2);
}

TEST_CASE("Alexander polynomial matches the winding-number determinant") {
  auto check = [](const GridDiagram& g) {
    Laurent lhs = up_to_unit(winding_determinant(g));
    Laurent rhs = up_to_unit(one_minus_t_power(g.n - 1) * knot::alexander_polynomial(to_knot_complex(g)));
    CHECK(lhs == rhs);
  };
  for (const auto& name : kFixtures) check(load(name));
  std::mt19937_64 rng(testing::seed_from_env() + 13);
  for (int k = 0; k < 30; ++k) check(random_knot_grid(rng, 3 + k % 4));
}

TEST_CASE("hfk symmetry") {
  for (const auto& name : kFixtures) {
    auto r = knot::hfk(to_knot_complex(load(name)));
    for (const auto& [key, rank] : r.reduced) {
      auto [a, m] = key;
      auto it = r.reduced.find({-a, m - 2 * a});
      REQUIRE(it != r.reduced.end());
      CHECK(it->second == rank);
    }
  }
}

TEST_CASE("mirror, transpose and rotation") {
  for (const auto& name : kFixtures) {
    auto g = load(name);
    CHECK(mirror(mirror(g)) == g);
    CHECK(transpose(transpose(g)) == g);
    int t = tau_of(g);
    CHECK(tau_of(mirror(g)) == -t);
    CHECK(tau_of(transpose(g)) == t);
  }
  CHECK(mirror(load("trefoil-negative.grid")) == load("trefoil-positive.grid"));
  auto g = load("trefoil-positive.grid");
  for (int r = 0; r < g.n; ++r) {
    for (int c = 0; c < g.n; ++c) CHECK(tau_of(rotate(g, r, c)) == 1);
  }
}

TEST_CASE("stabilization keeps tau and the Alexander polynomial") {
  for (const auto& name : {"unknot2.grid", "trefoil-positive.grid", "trefoil-negative.grid"}) {
    auto g = load(name);
    int t = tau_of(g);
    auto delta = knot::alexander_polynomial(to_knot_complex(g));
    for (int row = 0; row < g.n; ++row) {
      for (auto corner : {Corner::NW, Corner::NE, Corner::SW, Corner::SE}) {
        auto s = stabilize(g, row, corner);
        REQUIRE(s.n == g.n + 1);
        REQUIRE(validate_grid(s).is_knot());
        CHECK(tau_of(s) == t);
        CHECK(knot::alexander_polynomial(to_knot_complex(s)) == delta);
      }
    }
  }
  CHECK_THROWS_AS(stabilize(load("unknot2.grid"), 2, Corner::NW), InputError);
  CHECK(parse_corner("SE") == Corner::SE);
  CHECK_THROWS_AS(parse_corner("up"), InputError);
}

TEST_CASE("Legendrian invariants") {
  auto u2 = legendrian_invariants(load("unknot2.grid"));
  CHECK(u2.tb == -1);
  CHECK(u2.rot == 0);
  auto u3 = legendrian_invariants(load("unknot3.grid"));
  CHECK(u3.tb == -2);
  CHECK(std::abs(u3.rot) == 1);
  auto tp = legendrian_invariants(load("trefoil-positive.grid"));
  CHECK(tp.tb == 1);
  CHECK(tp.rot == 0);

  for (const auto& name : kFixtures) {
    auto g = load(name);
    auto l = legendrian_invariants(g);
    CHECK((l.tb + l.rot) % 2 != 0);
    CHECK(l.tb + std::abs(l.rot) <= 2 * tau_of(g) - 1);
  }
  std::mt19937_64 rng(testing::seed_from_env() + 14);
  for (int k = 0; k < 60; ++k) {
    auto g = random_knot_grid(rng, 2 + k % 5);
    auto l = legendrian_invariants(g);
    CHECK((l.tb + l.rot) % 2 != 0);
    CHECK(l.tb + std::abs(l.rot) <= 2 * tau_of(g) - 1);
  }
}

TEST_CASE("output does not depend on the thread count") {
  auto g = load("figure-eight.grid");
  auto one = to_knot_complex(g, {9, 1});
  for (int threads : {2, 3, 7, 16}) {
    auto many = to_knot_complex(g, {9, threads});
    CHECK(many.generators() == one.generators());
    CHECK(many.arrows() == one.arrows());
    CHECK(to_hat_complex(g, {9, threads}) == to_hat_complex(g, {9, 1}));
  }
}

TEST_CASE("size cap") {
  auto g = load("trefoil-positive.grid");
  CHECK_THROWS_AS(to_knot_complex(g, {4, 1}), ResourceError);
  CHECK_THROWS_AS(to_hat_complex(g, {4, 1}), ResourceError);
  CHECK_NOTHROW(to_hat_complex(g, {5, 1}));
}

TEST_CASE("permutation ranks") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(9) == 362880);
  GridState prev;
  for (std::uint64_t r = 0; r < factorial(5); ++r) {
    auto s = permutation_unrank(r, 5);
    CHECK(permutation_rank(s) == r);
    if (r > 0) CHECK(prev < s);
    prev = s;
  }
}
