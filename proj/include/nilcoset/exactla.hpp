#pragma once

// Exact integer linear algebra: dense and sparse integer matrices, Hermite and
// Smith normal forms, integer kernels, cokernels and presented abelian groups.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcoset::exactla {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix from_rows(const std::vector<IntVector> &rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  void append_row(const IntVector &row);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer &factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer &factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntMatrix transpose() const;
  bool is_zero() const;
  std::size_t nonzero_count() const;

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
  friend bool operator==(const IntMatrix &a, const IntMatrix &b);

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector multiply(const IntMatrix &m, const IntVector &x);      // m * x
IntVector multiply_left(const IntVector &x, const IntMatrix &m); // x * m
IntMatrix vstack(const IntMatrix &top, const IntMatrix &bottom);

struct Triplet {
  std::size_t row;
  std::size_t col;
  Integer value;
};

/// Sparse integer matrix in triplet form. Construction validates indices and
/// rejects duplicate (row, col) pairs; zero values are dropped.
class SparseIntMatrix {
public:
  SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static SparseIntMatrix from_dense(const IntMatrix &m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Triplet> &entries() const { return entries_; }
  std::size_t nonzero_count() const { return entries_.size(); }

  IntMatrix to_dense() const;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Triplet> entries_; // sorted by (row, col)
};

/// Invariants of a finitely generated abelian group Z^free_rank + sum Z/t_i,
/// with t_1 | t_2 | ... and every t_i >= 2.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  static AbelianInvariants from_divisors(std::size_t ambient_rank, const std::vector<Integer> &divisors);
  /// Canonical form of Z^free + sum Z/orders (orders in any order; 1s dropped).
  static AbelianInvariants from_cyclic_orders(std::size_t free_rank, const std::vector<Integer> &orders);

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Order of the torsion subgroup; the group order when free_rank == 0.
  Integer torsion_order() const;
  std::string to_string() const;

  friend bool operator==(const AbelianInvariants &, const AbelianInvariants &) = default;
};

struct HermiteForm {
  IntMatrix h; // h = u * m
  IntMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

struct SmithForm {
  std::vector<Integer> divisors; // min(rows, cols) entries, trailing zeros allowed
  IntMatrix u;                   // u * m * v = diag(divisors)
  IntMatrix v;
  IntMatrix v_inverse;
  std::size_t rank = 0;
};

HermiteForm hnf(const IntMatrix &m);
/// Hermite form without the transform; cheaper for lattice bookkeeping.
IntMatrix hnf_rows(const IntMatrix &m);
SmithForm snf(const IntMatrix &m);
std::vector<Integer> smith_divisors(const IntMatrix &m);
std::vector<Integer> smith_divisors(const SparseIntMatrix &m);
std::size_t rank(const IntMatrix &m);
std::size_t rank(const SparseIntMatrix &m);

/// Basis of {x : m x = 0} in Hermite-reduced form.
std::vector<IntVector> kernel_basis(const IntMatrix &m);

/// Invariants of Z^ambient_rank / rowspace(m). Matrices with more than
/// kSparseThreshold stored entries take the sparse elimination path.
AbelianInvariants cokernel_invariants(const IntMatrix &m, std::size_t ambient_rank);
AbelianInvariants cokernel_invariants(const SparseIntMatrix &m, std::size_t ambient_rank);

inline constexpr std::size_t kSparseThreshold = 10000;

/// Some x with m x = b, or nullopt when no integer solution exists.
std::optional<IntVector> solve_integer(const IntMatrix &m, const IntVector &b);

Integer determinant(const IntMatrix &m);
/// Determinant modulo a prime p < 2^62 of a square matrix with entries already reduced.
std::uint64_t determinant_mod(std::vector<std::uint64_t> entries, std::size_t n, std::uint64_t p);
bool is_unimodular(const IntMatrix &m);

// ---------------------------------------------------------------------------
// Row lattices and presented abelian groups.

/// Incremental row-echelon basis of an integer row lattice. Rows are inserted
/// one at a time and reduced against existing pivots with unimodular 2x2
/// steps, so the represented lattice is always the span of everything added.
class EchelonLattice {
public:
  explicit EchelonLattice(std::size_t cols);

  void add_row(const IntMatrix &m, std::size_t r);
  void add_sparse_row(std::vector<std::pair<std::size_t, Integer>> row);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return count_; }
  /// Basis rows in Hermite normal form.
  IntMatrix basis() const;

private:
  using SparseRow = std::vector<std::pair<std::size_t, Integer>>;
  void reduce_tail(std::size_t pivot_col);

  std::size_t cols_;
  std::size_t count_ = 0;
  std::vector<SparseRow> pivot_rows_; // indexed by pivot column; empty when absent
  std::size_t insertions_since_reduce_ = 0;
};

/// Streaming elimination for relation rows with small entries. Rows are
/// reduced in 64-bit arithmetic against unit pivots kept in reduced echelon
/// form; rows without a unit entry are set aside and finished exactly at the
/// end. Throws std::overflow_error when an entry leaves the 64-bit range.
class UnitPivotReducer {
public:
  using Row = std::vector<std::pair<std::size_t, std::int64_t>>;
  explicit UnitPivotReducer(std::size_t cols);

  void add_row(const Row &row);
  std::size_t unit_pivots() const { return pivot_cols_.size(); }
  /// Re-reduces the rows set aside until none has a unit entry. Afterwards
  /// Z^cols / rowspan is Z^core / rowspan(core_relations()), where the core
  /// columns are the columns without a pivot.
  void finish();
  const std::vector<std::size_t> &core_columns() const { return core_cols_; }
  IntMatrix core_relations() const;
  /// Class of v in Z^cols / rowspan, in core coordinates. Call after finish().
  std::vector<std::int64_t> core_coordinates(std::vector<std::int64_t> v) const;
  /// Smith divisors of the span of all rows added, padded with zeros to
  /// min(total_rows, cols) entries as smith_divisors does.
  std::vector<Integer> divisors(std::size_t total_rows);

private:
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;
  void promote(std::vector<std::int64_t> v, std::size_t col);
  std::size_t find_unit(const std::vector<std::int64_t> &v) const;

  std::size_t cols_;
  std::vector<std::int64_t> pivot_row_of_col_; // -1 when the column has no pivot
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::vector<std::int64_t>> pivots_; // dense rows, 1 at the pivot
  std::vector<Row> hard_;
  std::vector<std::size_t> core_cols_;
  std::vector<std::size_t> core_index_; // column -> core position, cols_ for pivot columns
};

/// Canonical (Hermite) basis of the row lattice spanned by m.
IntMatrix lattice_basis(const IntMatrix &m);
bool same_lattice(const IntMatrix &a, const IntMatrix &b);
/// {x in Z^rows(map) : x * map in rowspace(target_relations)}, as a Hermite basis.
IntMatrix preimage_lattice(const IntMatrix &map, const IntMatrix &target_relations);

/// Abelian group Z^n_gens / rowspace(relations).
struct AbelianPresentation {
  std::size_t n_gens = 0;
  IntMatrix relations; // rows are relations, n_gens columns

  AbelianInvariants invariants() const;
};

/// Whether the homomorphism induced by `map` (rows: images of source
/// generators in target generator coordinates) is well defined, injective
/// and surjective.
struct InducedMapCheck {
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  bool isomorphism() const { return well_defined && injective && surjective; }
};
InducedMapCheck check_induced_map(const AbelianPresentation &source, const AbelianPresentation &target,
                                  const IntMatrix &map);

} // namespace nilcoset::exactla
