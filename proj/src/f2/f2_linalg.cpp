#include "f2/f2_linalg.hpp"

#include <algorithm>
#include <string>

#include "common/errors.hpp"

namespace knotfilt::f2 {

void symmetric_difference(const Support& a, const Support& b, Support& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      out.push_back(*ia++);
    } else if (*ib < *ia) {
      out.push_back(*ib++);
    } else {
      ++ia;
      ++ib;
    }
  }
  out.insert(out.end(), ia, a.end());
  out.insert(out.end(), ib, b.end());
}

void add_into(Support& a, const Support& b, Support& scratch) {
  symmetric_difference(a, b, scratch);
  a.swap(scratch);
}

Support normalize_support(Support raw) {
  std::sort(raw.begin(), raw.end());
  Support out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    while (j < raw.size() && raw[j] == raw[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(raw[i]);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------- Vector

Vector Vector::from_support(std::size_t length, Support support) {
  Vector v(length);
  v.support_ = normalize_support(std::move(support));
  if (!v.support_.empty() && v.support_.back() >= length) {
    throw InputError("vector index " + std::to_string(v.support_.back()) +
                     " out of range for length " + std::to_string(length));
  }
  return v;
}

Vector Vector::unit(std::size_t length, Index i) { return from_support(length, {i}); }

bool Vector::test(Index i) const {
  return std::binary_search(support_.begin(), support_.end(), i);
}

void Vector::flip(Index i) {
  if (i >= length_) throw InputError("vector index out of range");
  auto it = std::lower_bound(support_.begin(), support_.end(), i);
  if (it != support_.end() && *it == i) {
    support_.erase(it);
  } else {
    support_.insert(it, i);
  }
}

Vector& Vector::operator+=(const Vector& other) {
  if (other.length_ != length_) throw InputError("vector length mismatch");
  Support scratch;
  add_into(support_, other.support_, scratch);
  return *this;
}

int Vector::dot(const Vector& other) const {
  if (other.length_ != length_) throw InputError("vector length mismatch");
  int parity = 0;
  auto ia = support_.begin();
  auto ib = other.support_.begin();
  while (ia != support_.end() && ib != other.support_.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      parity ^= 1;
      ++ia;
      ++ib;
    }
  }
  return parity;
}

// ---------------------------------------------------------------- Matrix

Matrix Matrix::from_entries(std::size_t rows, std::size_t cols,
                            std::span<const std::pair<Index, Index>> entries) {
  Matrix m(rows, cols);
  for (const auto& [r, c] : entries) {
    if (r >= rows || c >= cols) throw InputError("matrix entry out of range");
    m.columns_[c].push_back(r);
  }
  for (auto& col : m.columns_) col = normalize_support(std::move(col));
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::vector<Support> columns) {
  Matrix m(rows, 0);
  m.columns_ = std::move(columns);
  for (auto& col : m.columns_) {
    col = normalize_support(std::move(col));
    if (!col.empty() && col.back() >= rows) throw InputError("matrix entry out of range");
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = {static_cast<Index>(i)};
  return m;
}

std::size_t Matrix::nnz() const {
  std::size_t total = 0;
  for (const auto& col : columns_) total += col.size();
  return total;
}

bool Matrix::test(Index row, Index col) const {
  const auto& c = columns_.at(col);
  return std::binary_search(c.begin(), c.end(), row);
}

Vector Matrix::apply(const Vector& v) const {
  if (v.length() != cols()) throw InputError("matrix-vector dimension mismatch");
  Support acc;
  Support scratch;
  for (Index j : v.support()) add_into(acc, columns_[j], scratch);
  Vector out(rows_);
  out = Vector::from_support(rows_, std::move(acc));
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols(), rows_);
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    for (Index r : columns_[j]) t.columns_[r].push_back(static_cast<Index>(j));
  }
  return t;
}

// ---------------------------------------------------------------- elimination

namespace {

class SparseRows {
 public:
  explicit SparseRows(const Matrix& m) : rows_(m.rows()) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (Index r : m.column(j)) rows_[r].push_back(static_cast<Index>(j));
    }
  }
  std::size_t count() const { return rows_.size(); }
  bool test(std::size_t r, Index c) const {
    return std::binary_search(rows_[r].begin(), rows_[r].end(), c);
  }
  void add_row(std::size_t dst, std::size_t src) { add_into(rows_[dst], rows_[src], scratch_); }
  template <class F>
  void for_each_in_row(std::size_t r, F&& f) const {
    for (Index c : rows_[r]) f(c);
  }

 private:
  std::vector<Support> rows_;
  Support scratch_;
};

class DenseRows {
 public:
  explicit DenseRows(const Matrix& m)
      : words_((m.cols() + 63) / 64), bits_(m.rows() * words_, 0) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (Index r : m.column(j)) bits_[r * words_ + j / 64] ^= std::uint64_t{1} << (j % 64);
    }
    rows_ = m.rows();
  }
  std::size_t count() const { return rows_; }
  bool test(std::size_t r, Index c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void add_row(std::size_t dst, std::size_t src) {
    std::uint64_t* d = &bits_[dst * words_];
    const std::uint64_t* s = &bits_[src * words_];
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
  }
  template <class F>
  void for_each_in_row(std::size_t r, F&& f) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[r * words_ + w];
      while (word != 0) {
        int bit = __builtin_ctzll(word);
        f(static_cast<Index>(w * 64 + bit));
        word &= word - 1;
      }
    }
  }

 private:
  std::size_t rows_ = 0;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

struct Echelon {
  std::vector<std::int64_t> pivot_row_of_col;
  std::vector<char> rhs;
  std::vector<char> row_is_pivot;
};

// Gauss-Jordan: columns in ascending order, pivot = lowest-index row not yet
// used as a pivot. Every other row is cleared in the pivot column, so the
// result is the reduced row echelon form.
template <class Rows>
Echelon gauss_jordan(Rows& rows, std::size_t cols, std::vector<char> rhs) {
  Echelon e;
  e.pivot_row_of_col.assign(cols, -1);
  e.row_is_pivot.assign(rows.count(), 0);
  for (std::size_t c = 0; c < cols; ++c) {
    std::int64_t pivot = -1;
    for (std::size_t r = 0; r < rows.count(); ++r) {
      if (!e.row_is_pivot[r] && rows.test(r, static_cast<Index>(c))) {
        pivot = static_cast<std::int64_t>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    auto p = static_cast<std::size_t>(pivot);
    e.row_is_pivot[p] = 1;
    e.pivot_row_of_col[c] = pivot;
    for (std::size_t r = 0; r < rows.count(); ++r) {
      if (r != p && rows.test(r, static_cast<Index>(c))) {
        rows.add_row(r, p);
        if (!rhs.empty()) rhs[r] ^= rhs[p];
      }
    }
  }
  e.rhs = std::move(rhs);
  return e;
}

template <class Rows>
std::vector<Vector> kernel_from(Rows& rows, std::size_t cols) {
  Echelon e = gauss_jordan(rows, cols, {});
  std::vector<Support> basis_by_free(cols);
  std::vector<char> is_free(cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    if (e.pivot_row_of_col[c] < 0) {
      is_free[c] = 1;
      basis_by_free[c].push_back(static_cast<Index>(c));
    }
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (e.pivot_row_of_col[c] < 0) continue;
    auto r = static_cast<std::size_t>(e.pivot_row_of_col[c]);
    rows.for_each_in_row(r, [&](Index f) {
      if (is_free[f]) basis_by_free[f].push_back(static_cast<Index>(c));
    });
  }
  std::vector<Vector> out;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_free[c]) out.push_back(Vector::from_support(cols, std::move(basis_by_free[c])));
  }
  return out;
}

template <class Rows>
std::optional<Vector> solve_from(Rows& rows, std::size_t cols, const Vector& v) {
  std::vector<char> rhs(rows.count(), 0);
  for (Index r : v.support()) rhs[r] = 1;
  Echelon e = gauss_jordan(rows, cols, std::move(rhs));
  for (std::size_t r = 0; r < rows.count(); ++r) {
    if (!e.row_is_pivot[r] && e.rhs[r]) return std::nullopt;
  }
  Support sol;
  for (std::size_t c = 0; c < cols; ++c) {
    auto r = e.pivot_row_of_col[c];
    if (r >= 0 && e.rhs[static_cast<std::size_t>(r)]) sol.push_back(static_cast<Index>(c));
  }
  return Vector::from_support(cols, std::move(sol));
}

}  // namespace

Backend resolve_backend(const Matrix& m, Backend requested) {
  if (requested != Backend::automatic) return requested;
  double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  if (cells == 0.0) return Backend::sparse;
  return static_cast<double>(m.nnz()) / cells > kDenseFillRatio ? Backend::dense
                                                                 : Backend::sparse;
}

std::size_t rank(const Matrix& m, Backend backend) {
  if (resolve_backend(m, backend) == Backend::dense) {
    DenseRows rows(m);
    Echelon e = gauss_jordan(rows, m.cols(), {});
    return static_cast<std::size_t>(
        std::count(e.row_is_pivot.begin(), e.row_is_pivot.end(), 1));
  }
  // Sparse matrices go through the low-pivot column reduction, which keeps
  // fill-in far lower than row elimination on boundary matrices.
  return reduce_low(m.rows(), m.columns(), false).rank;
}

std::vector<Vector> kernel_basis(const Matrix& m, Backend backend) {
  if (resolve_backend(m, backend) == Backend::dense) {
    DenseRows rows(m);
    return kernel_from(rows, m.cols());
  }
  SparseRows rows(m);
  return kernel_from(rows, m.cols());
}

std::optional<Vector> image_membership(const Matrix& m, const Vector& v, Backend backend) {
  if (v.length() != m.rows()) {
    throw InputError("image_membership: vector length " + std::to_string(v.length()) +
                     " does not match matrix rows " + std::to_string(m.rows()));
  }
  if (resolve_backend(m, backend) == Backend::dense) {
    DenseRows rows(m);
    return solve_from(rows, m.cols(), v);
  }
  SparseRows rows(m);
  return solve_from(rows, m.cols(), v);
}

LowReduction reduce_low(std::size_t rows, std::span<const Support> columns,
                        bool track_transform, const std::vector<bool>* skip) {
  LowReduction out;
  out.reduced.resize(columns.size());
  if (track_transform) out.transform.resize(columns.size());
  out.pivot_column.assign(rows, -1);
  Support scratch;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (skip != nullptr && (*skip)[j]) continue;
    Support col = columns[j];
    Support v;
    if (track_transform) v.push_back(static_cast<Index>(j));
    while (!col.empty()) {
      std::int64_t k = out.pivot_column[col.back()];
      if (k < 0) break;
      add_into(col, out.reduced[static_cast<std::size_t>(k)], scratch);
      if (track_transform) add_into(v, out.transform[static_cast<std::size_t>(k)], scratch);
    }
    if (!col.empty()) {
      out.pivot_column[col.back()] = static_cast<std::int64_t>(j);
      ++out.rank;
    }
    out.reduced[j] = std::move(col);
    if (track_transform) out.transform[j] = std::move(v);
  }
  return out;
}

}  // namespace knotfilt::f2
