#pragma once

// Toroidal grid diagrams for knots in S^3.
//
// Row r (row 0 at the bottom) carries an O in column o[r] and an X in column
// x[r]. Markings sit at the centres of unit squares, state points on lattice
// corners: a grid state s puts one point at (c, s[c]) for every column c.
// The knot is drawn with vertical segments from X to O and horizontal
// segments from O to X, vertical strands crossing over horizontal ones.

#include <cstdint>
#include <string>
#include <vector>

#include "complex/filtered_complex.hpp"
#include "knot/knot_complex.hpp"

namespace knotfilt::grid {

inline constexpr int kDefaultMaxGridSize = 9;
inline constexpr int kHardMaxGridSize = 12;

struct GridDiagram {
  int n = 0;
  std::vector<int> o;
  std::vector<int> x;

  bool operator==(const GridDiagram&) const = default;
};

// Grid file: `n`, `O: ...`, `X: ...`; '#' comment lines ignored.
// Throws InputError on malformed text (structure only; see validate_grid).
GridDiagram parse_grid(const std::string& text);
std::string format_grid(const GridDiagram& g);

struct GridReport {
  std::vector<std::string> violations;
  // Number of link components (0 when the markings are malformed).
  int components = 0;
  bool valid() const { return violations.empty(); }
  bool is_knot() const { return valid() && components == 1; }
};

GridReport validate_grid(const GridDiagram& g);
// Throws InputError unless `g` is a valid one-component grid.
void require_knot(const GridDiagram& g);

using GridState = std::vector<int>;  // s[c] = row of the point in column c

struct Bigrading {
  int maslov = 0;
  int alexander = 0;
  bool operator==(const Bigrading&) const = default;
};

Bigrading gradings(const GridDiagram& g, const GridState& s);

// Generator id of a state: "x" and the rows, dot-separated when n > 10.
std::string state_id(const GridState& s);

struct GridOptions {
  int max_size = kDefaultMaxGridSize;
  // 0 = hardware concurrency. The output never depends on this.
  int threads = 0;
};

// All n! states (lexicographic order) with every empty rectangle as an arrow
// labelled (#O, #X). Throws ResourceError when n exceeds options.max_size.
knot::KnotComplex to_knot_complex(const GridDiagram& g, const GridOptions& options = {});

// Only the rectangles free of O's, i.e. the filtered hat complex directly,
// without materialising the rest of the knot data.
FilteredComplex to_hat_complex(const GridDiagram& g, const GridOptions& options = {});

// Mirror image: reflection across a horizontal axis (row r -> n - 1 - r).
GridDiagram mirror(const GridDiagram& g);
// Reflection across the main diagonal. Presents the same knot with reversed
// orientation, not the mirror.
GridDiagram transpose(const GridDiagram& g);
// Cyclic rotation of the torus by `rows` rows and `cols` columns.
GridDiagram rotate(const GridDiagram& g, int rows, int cols);

enum class Corner { NW, NE, SW, SE };
Corner parse_corner(const std::string& s);
const char* to_string(Corner c);

// Stabilization at the X of `row`: the X becomes a 2x2 block with X's on the
// diagonal avoiding `corner`, the new O diagonally opposite `corner`, and
// `corner` itself left empty. Throws InputError on a bad row.
GridDiagram stabilize(const GridDiagram& g, int row, Corner corner);

struct LegendrianData {
  int tb = 0;
  int rot = 0;
  int writhe = 0;
  int cusps = 0;
};

enum class FrontRotation { clockwise, counterclockwise };

// Front obtained by turning the grid 45 degrees. Clockwise: NE and SW corners
// become cusps and horizontal strands pass in front. Counterclockwise: NW and
// SE corners become cusps and vertical strands pass in front.
// tb = writhe - cusps/2, rot = (down cusps - up cusps)/2.
LegendrianData legendrian_invariants(const GridDiagram& g,
                                     FrontRotation rotation = FrontRotation::counterclockwise);

// Permutation rank helpers shared with tests.
std::uint64_t permutation_rank(const GridState& s);
GridState permutation_unrank(std::uint64_t rank, int n);
std::uint64_t factorial(int n);

}  // namespace knotfilt::grid
