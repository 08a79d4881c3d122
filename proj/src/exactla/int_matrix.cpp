#include "nilcoset/exactla.hpp"

#include <algorithm>
#include <sstream>

namespace nilcoset::exactla {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_)
      throw DimensionError("ragged matrix literal");
    for (long v : r)
      data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector> &rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto &r : rows)
    m.append_row(r);
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::append_row(const IntVector &row) {
  if (row.size() != cols_)
    throw DimensionError("append_row: length " + std::to_string(row.size()) + " != " + std::to_string(cols_));
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t c = 0; c < cols_; ++c)
    std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t r = 0; r < rows_; ++r)
    std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer &factor) {
  if (factor == 0)
    return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const Integer &s = (*this)(src, c);
    if (s != 0)
      (*this)(dst, c) += factor * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer &factor) {
  if (factor == 0)
    return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Integer &s = (*this)(r, src);
    if (s != 0)
      (*this)(r, dst) += factor * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, c) = -(*this)(r, c);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer &v) { return v == 0; });
}

std::size_t IntMatrix::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Integer &v) { return v != 0; }));
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols_ != b.rows_)
    throw DimensionError("matrix product: inner dimensions differ");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer &x = a(i, k);
      if (x == 0)
        continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0)
          p(i, j) += x * b(k, j);
    }
  return p;
}

bool operator==(const IntMatrix &a, const IntMatrix &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c)
      os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVector multiply(const IntMatrix &m, const IntVector &x) {
  if (x.size() != m.cols())
    throw DimensionError("matrix-vector product: length mismatch");
  IntVector y(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0 && x[c] != 0)
        y[r] += m(r, c) * x[c];
  return y;
}

IntVector multiply_left(const IntVector &x, const IntMatrix &m) {
  if (x.size() != m.rows())
    throw DimensionError("vector-matrix product: length mismatch");
  IntVector y(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (x[r] == 0)
      continue;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0)
        y[c] += x[r] * m(r, c);
  }
  return y;
}

IntMatrix vstack(const IntMatrix &top, const IntMatrix &bottom) {
  if (top.cols() != bottom.cols())
    throw DimensionError("vstack: column counts differ");
  IntMatrix m = top;
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    m.append_row(bottom.row(r));
  return m;
}

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  std::erase_if(entries, [](const Triplet &t) { return t.value == 0; });
  std::sort(entries.begin(), entries.end(), [](const Triplet &a, const Triplet &b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].row >= rows || entries[i].col >= cols)
      throw DimensionError("sparse triplet index out of range");
    if (i > 0 && entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col)
      throw DimensionError("duplicate sparse triplet");
  }
  entries_ = std::move(entries);
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix &m) {
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0)
        t.push_back({r, c, m(r, c)});
  return {m.rows(), m.cols(), std::move(t)};
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix m(rows_, cols_);
  for (const auto &t : entries_)
    m(t.row, t.col) = t.value;
  return m;
}

AbelianInvariants AbelianInvariants::from_divisors(std::size_t ambient_rank, const std::vector<Integer> &divisors) {
  AbelianInvariants inv;
  std::size_t nonzero = 0;
  for (const auto &d : divisors) {
    if (d == 0)
      continue;
    ++nonzero;
    if (abs(d) > 1)
      inv.torsion.push_back(abs(d));
  }
  inv.free_rank = ambient_rank - nonzero;
  std::sort(inv.torsion.begin(), inv.torsion.end());
  return inv;
}

AbelianInvariants AbelianInvariants::from_cyclic_orders(std::size_t free_rank, const std::vector<Integer> &orders) {
  // Diagonal matrix Smith form gives the divisibility chain.
  std::vector<Integer> kept;
  for (const auto &o : orders)
    if (abs(o) > 1)
      kept.push_back(abs(o));
  IntMatrix d(kept.size(), kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    d(i, i) = kept[i];
  AbelianInvariants inv = from_divisors(kept.size(), smith_divisors(d));
  inv.free_rank = free_rank;
  return inv;
}

Integer AbelianInvariants::torsion_order() const {
  Integer p = 1;
  for (const auto &t : torsion)
    p *= t;
  return p;
}

std::string AbelianInvariants::to_string() const {
  if (is_trivial())
    return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1)
      os << '^' << free_rank;
    first = false;
  }
  for (const auto &t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

} // namespace nilcoset::exactla
