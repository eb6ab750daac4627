#include "grid/grid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

#include "common/errors.hpp"

namespace knotfilt::grid {

// ---------------------------------------------------------------- parsing

GridDiagram parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line.substr(first));
  }
  if (lines.size() != 3) {
    throw InputError("grid file needs exactly three non-comment lines (n, O:, X:), found " +
                     std::to_string(lines.size()));
  }
  GridDiagram g;
  {
    std::istringstream ls(lines[0]);
    std::string extra;
    if (!(ls >> g.n) || (ls >> extra)) throw InputError("grid file: first line must be the size n");
    if (g.n < 2) throw InputError("grid size must be at least 2");
    if (g.n > kHardMaxGridSize) {
      throw InputError("grid size " + std::to_string(g.n) + " exceeds the supported maximum " +
                       std::to_string(kHardMaxGridSize));
    }
  }
  auto read_row = [&](const std::string& l, const std::string& tag) {
    if (l.rfind(tag, 0) != 0) throw InputError("grid file: expected line starting with '" + tag + "'");
    std::istringstream ls(l.substr(tag.size()));
    std::vector<int> values;
    std::string token;
    while (ls >> token) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(token, &used);
      } catch (const std::exception&) {
        throw InputError("grid file: '" + token + "' is not an integer");
      }
      if (used != token.size()) throw InputError("grid file: '" + token + "' is not an integer");
      values.push_back(v);
    }
    if (static_cast<int>(values.size()) != g.n) {
      throw InputError("grid file: " + tag + " line has " + std::to_string(values.size()) +
                       " entries, expected " + std::to_string(g.n));
    }
    return values;
  };
  g.o = read_row(lines[1], "O:");
  g.x = read_row(lines[2], "X:");
  return g;
}

std::string format_grid(const GridDiagram& g) {
  std::ostringstream out;
  out << g.n << "\nO:";
  for (int v : g.o) out << ' ' << v;
  out << "\nX:";
  for (int v : g.x) out << ' ' << v;
  out << '\n';
  return out.str();
}

// ---------------------------------------------------------------- validation

namespace {

bool is_permutation_of_range(const std::vector<int>& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

std::vector<int> inverse(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

}  // namespace

GridReport validate_grid(const GridDiagram& g) {
  GridReport report;
  if (g.n < 2) report.violations.push_back("grid size must be at least 2");
  if (!is_permutation_of_range(g.o, g.n)) report.violations.push_back("O markings are not a permutation");
  if (!is_permutation_of_range(g.x, g.n)) report.violations.push_back("X markings are not a permutation");
  if (!report.violations.empty()) return report;
  for (int r = 0; r < g.n; ++r) {
    if (g.o[static_cast<std::size_t>(r)] == g.x[static_cast<std::size_t>(r)]) {
      report.violations.push_back("row " + std::to_string(r) + " has O and X in the same square");
    }
  }
  if (!report.violations.empty()) return report;
  // Follow O -> X along the row, then X -> O up/down the column.
  auto o_row_of_col = inverse(g.o);
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  for (int start = 0; start < g.n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++report.components;
    int r = start;
    while (!seen[static_cast<std::size_t>(r)]) {
      seen[static_cast<std::size_t>(r)] = 1;
      r = o_row_of_col[static_cast<std::size_t>(g.x[static_cast<std::size_t>(r)])];
    }
  }
  return report;
}

void require_knot(const GridDiagram& g) {
  auto report = validate_grid(g);
  if (!report.valid()) throw InputError("invalid grid: " + report.violations.front());
  if (report.components != 1) {
    throw InputError("grid presents a link with " + std::to_string(report.components) +
                     " components; only knots are supported");
  }
}

// ---------------------------------------------------------------- gradings

namespace {

struct Point {
  int x2;  // doubled coordinates
  int y2;
};

int count_below_left(const std::vector<Point>& p, const std::vector<Point>& q) {
  int count = 0;
  for (const auto& a : p) {
    for (const auto& b : q) {
      if (a.x2 < b.x2 && a.y2 < b.y2) ++count;
    }
  }
  return count;
}

// 2 J(P, Q)
int twice_j(const std::vector<Point>& p, const std::vector<Point>& q) {
  return count_below_left(p, q) + count_below_left(q, p);
}

std::vector<Point> marking_points(const std::vector<int>& cols) {
  std::vector<Point> pts;
  for (std::size_t r = 0; r < cols.size(); ++r) pts.push_back({2 * cols[r] + 1, 2 * static_cast<int>(r) + 1});
  return pts;
}

std::vector<Point> state_points(const GridState& s) {
  std::vector<Point> pts;
  for (std::size_t c = 0; c < s.size(); ++c) pts.push_back({2 * static_cast<int>(c), 2 * s[c]});
  return pts;
}

class GradingEngine {
 public:
  explicit GradingEngine(const GridDiagram& g)
      : o_(marking_points(g.o)), x_(marking_points(g.x)), n_(g.n),
        twice_j_oo_(twice_j(o_, o_)), twice_j_xx_(twice_j(x_, x_)) {}

  Bigrading operator()(const GridState& s) const {
    auto pts = state_points(s);
    int jss = twice_j(pts, pts);
    // M = J(s,s) - 2 J(s,M) + J(M,M) + 1, carried doubled.
    int twice_mo = jss - 2 * twice_j(pts, o_) + twice_j_oo_ + 2;
    int twice_mx = jss - 2 * twice_j(pts, x_) + twice_j_xx_ + 2;
    int mo = twice_mo / 2;
    int mx = twice_mx / 2;
    // A = (M_O - M_X)/2 - (n - 1)/2
    return {mo, (mo - mx - (n_ - 1)) / 2};
  }

 private:
  std::vector<Point> o_;
  std::vector<Point> x_;
  int n_;
  int twice_j_oo_;
  int twice_j_xx_;
};

}  // namespace

Bigrading gradings(const GridDiagram& g, const GridState& s) {
  require_knot(g);
  if (!is_permutation_of_range(s, g.n)) throw InputError("grid state is not a permutation");
  return GradingEngine(g)(s);
}

// ---------------------------------------------------------------- states

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t permutation_rank(const GridState& s) {
  const int n = static_cast<int>(s.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) {
      if (s[static_cast<std::size_t>(j)] < s[static_cast<std::size_t>(i)]) ++smaller;
    }
    rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
  }
  return rank;
}

GridState permutation_unrank(std::uint64_t rank, int n) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  GridState s;
  for (int i = 0; i < n; ++i) {
    std::uint64_t f = factorial(n - 1 - i);
    auto k = static_cast<std::size_t>(rank / f);
    rank %= f;
    s.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return s;
}

std::string state_id(const GridState& s) {
  std::string id = "x";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.size() > 10 && i > 0) id += '.';
    id += std::to_string(s[i]);
  }
  return id;
}

namespace {

struct Chunk {
  std::vector<knot::KnotGenerator> generators;
  std::vector<knot::KnotArrow> arrows;
};

// Enumerates states [begin, end) in lexicographic order with their empty
// rectangles. Rectangles containing an O are skipped when `o_free_only`.
Chunk enumerate_chunk(const GridDiagram& g, std::uint64_t begin, std::uint64_t end, bool o_free_only) {
  const int n = g.n;
  GradingEngine grade(g);
  Chunk chunk;
  if (begin >= end) return chunk;
  GridState s = permutation_unrank(begin, n);
  GridState t;
  for (std::uint64_t rank = begin; rank < end; ++rank) {
    auto bg = grade(s);
    chunk.generators.push_back({state_id(s), bg.maslov, bg.alexander});
    for (int i = 0; i < n; ++i) {
      const int row_i = s[static_cast<std::size_t>(i)];
      for (int width = 1; width < n; ++width) {
        const int j = (i + width) % n;
        const int height = (s[static_cast<std::size_t>(j)] - row_i + n) % n;
        bool empty = true;
        for (int k = 1; k < width && empty; ++k) {
          int col = (i + k) % n;
          if ((s[static_cast<std::size_t>(col)] - row_i + n) % n < height) empty = false;
        }
        if (!empty) continue;
        int nw = 0;
        int nz = 0;
        for (int u = 0; u < height; ++u) {
          int row = (row_i + u) % n;
          if ((g.o[static_cast<std::size_t>(row)] - i + n) % n < width) ++nw;
          if ((g.x[static_cast<std::size_t>(row)] - i + n) % n < width) ++nz;
        }
        if (o_free_only && nw != 0) continue;
        t = s;
        std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
        chunk.arrows.push_back({static_cast<Index>(rank), static_cast<Index>(permutation_rank(t)), nw, nz});
      }
    }
    std::next_permutation(s.begin(), s.end());
  }
  return chunk;
}

Chunk enumerate(const GridDiagram& g, const GridOptions& options, bool o_free_only) {
  require_knot(g);
  if (g.n > options.max_size) {
    throw ResourceError("grid size " + std::to_string(g.n) + " exceeds the configured cap " +
                        std::to_string(options.max_size));
  }
  if (g.n > kHardMaxGridSize) throw ResourceError("grid size exceeds the supported maximum");
  const std::uint64_t total = factorial(g.n);
  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total));

  std::vector<Chunk> chunks(static_cast<std::size_t>(threads));
  std::vector<std::thread> workers;
  for (int k = 0; k < threads; ++k) {
    std::uint64_t begin = total * static_cast<std::uint64_t>(k) / static_cast<std::uint64_t>(threads);
    std::uint64_t end = total * static_cast<std::uint64_t>(k + 1) / static_cast<std::uint64_t>(threads);
    if (threads == 1) {
      chunks[0] = enumerate_chunk(g, begin, end, o_free_only);
    } else {
      workers.emplace_back([&, k, begin, end] {
        chunks[static_cast<std::size_t>(k)] = enumerate_chunk(g, begin, end, o_free_only);
      });
    }
  }
  for (auto& w : workers) w.join();

  // Merge in rank order.
  Chunk merged;
  std::size_t gens = 0;
  std::size_t arrows = 0;
  for (const auto& c : chunks) {
    gens += c.generators.size();
    arrows += c.arrows.size();
  }
  merged.generators.reserve(gens);
  merged.arrows.reserve(arrows);
  for (auto& c : chunks) {
    std::move(c.generators.begin(), c.generators.end(), std::back_inserter(merged.generators));
    std::move(c.arrows.begin(), c.arrows.end(), std::back_inserter(merged.arrows));
    c = Chunk{};
  }
  return merged;
}

}  // namespace

knot::KnotComplex to_knot_complex(const GridDiagram& g, const GridOptions& options) {
  Chunk all = enumerate(g, options, false);
  return knot::KnotComplex(std::move(all.generators), std::move(all.arrows), g.n - 1);
}

FilteredComplex to_hat_complex(const GridDiagram& g, const GridOptions& options) {
  Chunk all = enumerate(g, options, true);
  std::vector<Generator> gens;
  gens.reserve(all.generators.size());
  for (auto& kg : all.generators) gens.push_back({std::move(kg.id), kg.maslov, kg.alexander});
  std::vector<Arrow> arrows;
  arrows.reserve(all.arrows.size());
  for (const auto& a : all.arrows) arrows.push_back({a.from, a.to});
  return FilteredComplex(std::move(gens), std::move(arrows));
}

// ---------------------------------------------------------------- moves

GridDiagram mirror(const GridDiagram& g) {
  GridDiagram m = g;
  std::reverse(m.o.begin(), m.o.end());
  std::reverse(m.x.begin(), m.x.end());
  return m;
}

GridDiagram transpose(const GridDiagram& g) {
  GridDiagram t;
  t.n = g.n;
  t.o = inverse(g.o);
  t.x = inverse(g.x);
  return t;
}

GridDiagram rotate(const GridDiagram& g, int rows, int cols) {
  GridDiagram out;
  out.n = g.n;
  out.o.assign(static_cast<std::size_t>(g.n), 0);
  out.x.assign(static_cast<std::size_t>(g.n), 0);
  auto wrap = [&](int v) { return ((v % g.n) + g.n) % g.n; };
  for (int r = 0; r < g.n; ++r) {
    auto nr = static_cast<std::size_t>(wrap(r + rows));
    out.o[nr] = wrap(g.o[static_cast<std::size_t>(r)] + cols);
    out.x[nr] = wrap(g.x[static_cast<std::size_t>(r)] + cols);
  }
  return out;
}

Corner parse_corner(const std::string& s) {
  if (s == "NW") return Corner::NW;
  if (s == "NE") return Corner::NE;
  if (s == "SW") return Corner::SW;
  if (s == "SE") return Corner::SE;
  throw InputError("unknown corner '" + s + "' (expected NW, NE, SW or SE)");
}

const char* to_string(Corner c) {
  switch (c) {
    case Corner::NW:
      return "NW";
    case Corner::NE:
      return "NE";
    case Corner::SW:
      return "SW";
    case Corner::SE:
      return "SE";
  }
  return "?";
}

GridDiagram stabilize(const GridDiagram& g, int row, Corner corner) {
  require_knot(g);
  if (row < 0 || row >= g.n) throw InputError("stabilize: row index out of range");
  const int c = g.x[static_cast<std::size_t>(row)];
  const int s = inverse(g.o)[static_cast<std::size_t>(c)];
  auto map_col = [&](int col) { return col < c ? col : col + 1; };
  auto map_row = [&](int r) { return r < row ? r : r + 1; };

  // Block squares as (column, row) in the new grid.
  struct Square {
    int col;
    int row;
  };
  const Square sw{c, row}, se{c + 1, row}, nw{c, row + 1}, ne{c + 1, row + 1};
  Square o_sq{}, x1{}, x2{};
  switch (corner) {
    case Corner::SW:
      o_sq = ne, x1 = se, x2 = nw;
      break;
    case Corner::NE:
      o_sq = sw, x1 = se, x2 = nw;
      break;
    case Corner::NW:
      o_sq = se, x1 = sw, x2 = ne;
      break;
    case Corner::SE:
      o_sq = nw, x1 = sw, x2 = ne;
      break;
  }
  const int free_row = o_sq.row == row ? row + 1 : row;     // receives the row's old O
  const int free_col = o_sq.col == c ? c + 1 : c;            // receives the column's old O

  GridDiagram out;
  out.n = g.n + 1;
  out.o.assign(static_cast<std::size_t>(out.n), -1);
  out.x.assign(static_cast<std::size_t>(out.n), -1);
  for (int r = 0; r < g.n; ++r) {
    if (r == row) continue;
    auto nr = static_cast<std::size_t>(map_row(r));
    out.x[nr] = map_col(g.x[static_cast<std::size_t>(r)]);
    out.o[nr] = r == s ? free_col : map_col(g.o[static_cast<std::size_t>(r)]);
  }
  out.x[static_cast<std::size_t>(x1.row)] = x1.col;
  out.x[static_cast<std::size_t>(x2.row)] = x2.col;
  out.o[static_cast<std::size_t>(o_sq.row)] = o_sq.col;
  out.o[static_cast<std::size_t>(free_row)] = map_col(g.o[static_cast<std::size_t>(row)]);
  return out;
}

// ---------------------------------------------------------------- Legendrian

namespace {

struct Dir {
  int dx;
  int dy;
};

int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

LegendrianData legendrian_invariants(const GridDiagram& g, FrontRotation rotation) {
  require_knot(g);
  const int n = g.n;
  const bool cw = rotation == FrontRotation::clockwise;
  auto x_row_of_col = inverse(g.x);
  auto o_row_of_col = inverse(g.o);

  LegendrianData out;
  // Crossings: vertical segment of column c against horizontal segment of row r.
  // The strand of smaller front slope is in front: horizontal after a
  // clockwise turn, vertical after a counterclockwise one.
  for (int c = 0; c < n; ++c) {
    int from = x_row_of_col[static_cast<std::size_t>(c)];
    int to = o_row_of_col[static_cast<std::size_t>(c)];
    int v = sign(to - from);
    for (int r = std::min(from, to) + 1; r < std::max(from, to); ++r) {
      int left = std::min(g.o[static_cast<std::size_t>(r)], g.x[static_cast<std::size_t>(r)]);
      int right = std::max(g.o[static_cast<std::size_t>(r)], g.x[static_cast<std::size_t>(r)]);
      if (left < c && c < right) {
        int h = sign(g.x[static_cast<std::size_t>(r)] - g.o[static_cast<std::size_t>(r)]);
        // sign = cross(over, under)
        out.writhe += cw ? h * v : -h * v;
      }
    }
  }

  // Height in the rotated front.
  auto height = [cw](Dir d) { return cw ? d.dy - d.dx : d.dx + d.dy; };
  int down = 0;
  int up = 0;
  for (int r = 0; r < n; ++r) {
    for (int is_o = 0; is_o < 2; ++is_o) {
      int col = is_o ? g.o[static_cast<std::size_t>(r)] : g.x[static_cast<std::size_t>(r)];
      int other_col = is_o ? g.x[static_cast<std::size_t>(r)] : g.o[static_cast<std::size_t>(r)];
      int other_row = is_o ? x_row_of_col[static_cast<std::size_t>(col)]
                           : o_row_of_col[static_cast<std::size_t>(col)];
      Dir horizontal{sign(other_col - col), 0};
      Dir vertical{0, sign(other_row - r)};
      // A corner is a cusp when both arms leave on the same side of the
      // rotated horizontal axis.
      int side_h = horizontal.dx;
      int side_v = cw ? vertical.dy : -vertical.dy;
      if (side_h != side_v) continue;
      ++out.cusps;
      // At an O the strand arrives vertically and leaves horizontally; at
      // an X the other way round.
      Dir in = is_o ? vertical : horizontal;
      Dir leave = is_o ? horizontal : vertical;
      if (height(in) > height(leave)) {
        ++down;
      } else {
        ++up;
      }
    }
  }
  out.tb = out.writhe - out.cusps / 2;
  out.rot = (down - up) / 2;
  return out;
}

}  // namespace knotfilt::grid
