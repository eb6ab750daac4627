#pragma once

// Linear algebra over the two-element field.
//
// Vectors and matrix columns are sorted index lists ("supports"). Elimination
// routines run on either sparse rows or dense 64-bit blocks; the backend only
// changes speed, never the answer.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace knotfilt::f2 {

using Index = std::uint32_t;
using Support = std::vector<Index>;

// Symmetric difference of two sorted supports, written into `out`.
void symmetric_difference(const Support& a, const Support& b, Support& out);

// a ^= b for sorted supports; `scratch` is reused between calls.
void add_into(Support& a, const Support& b, Support& scratch);

// Sorts and cancels duplicate indices in pairs.
Support normalize_support(Support raw);

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t length) : length_(length) {}

  // Duplicate indices cancel mod 2. Throws InputError on an out-of-range index.
  static Vector from_support(std::size_t length, Support support);
  static Vector unit(std::size_t length, Index i);

  std::size_t length() const { return length_; }
  const Support& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  std::size_t weight() const { return support_.size(); }

  bool test(Index i) const;
  void flip(Index i);

  Vector& operator+=(const Vector& other);
  friend Vector operator+(Vector a, const Vector& b) {
    a += b;
    return a;
  }

  // Standard bilinear form sum_i a_i b_i.
  int dot(const Vector& other) const;

  bool operator==(const Vector&) const = default;

 private:
  std::size_t length_ = 0;
  Support support_;
};

// Column-major sparse matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  // Entries are (row, col); repeated entries cancel mod 2.
  static Matrix from_entries(std::size_t rows, std::size_t cols,
                             std::span<const std::pair<Index, Index>> entries);
  static Matrix from_columns(std::size_t rows, std::vector<Support> columns);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Support& column(std::size_t j) const { return columns_[j]; }
  const std::vector<Support>& columns() const { return columns_; }
  std::size_t nnz() const;
  bool test(Index row, Index col) const;

  Vector apply(const Vector& v) const;
  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<Support> columns_;
};

enum class Backend { automatic, sparse, dense };

// Above this fill ratio the automatic backend switches to dense bit rows.
inline constexpr double kDenseFillRatio = 1.0 / 32.0;

Backend resolve_backend(const Matrix& m, Backend requested);

std::size_t rank(const Matrix& m, Backend backend = Backend::automatic);

// Reduced-echelon basis of the null space: one vector per free column, in
// ascending order of the free column. Independent of backend.
std::vector<Vector> kernel_basis(const Matrix& m, Backend backend = Backend::automatic);

// Returns the preimage with all free coordinates zero, or nullopt when v is
// not in the column space. Throws InputError when v.length() != m.rows().
std::optional<Vector> image_membership(const Matrix& m, const Vector& v,
                                       Backend backend = Backend::automatic);

// Left-to-right "low pivot" column reduction (the standard persistence
// reduction). Column j is reduced by adding earlier reduced columns whose
// lowest (largest) row index coincides with its own.
struct LowReduction {
  std::vector<Support> reduced;
  // transform[j] lists the original columns summed into reduced[j]
  // (only populated when tracking was requested).
  std::vector<Support> transform;
  // pivot_column[row] = column whose reduced low is `row`, or -1.
  std::vector<std::int64_t> pivot_column;
  std::size_t rank = 0;
};

// `skip` marks columns known to reduce to zero (clearing); they are left
// empty without being processed.
LowReduction reduce_low(std::size_t rows, std::span<const Support> columns,
                        bool track_transform, const std::vector<bool>* skip = nullptr);

}  // namespace knotfilt::f2
