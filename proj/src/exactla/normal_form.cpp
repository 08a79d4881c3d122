#include "nilcoset/exactla.hpp"

#include <algorithm>

namespace nilcoset::exactla {

namespace {

// Floor division keeps remainders non-negative for positive divisors.
Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Row Hermite reduction of `h`, applying the same row operations to `u` when given.
std::size_t hermite_in_place(IntMatrix &h, IntMatrix *u, std::vector<std::size_t> *pivots) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      // Minimal absolute value, ties to the lowest row.
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0)
          continue;
        if (best == m || abs(h(i, c)) < abs(h(best, c)))
          best = i;
      }
      if (best == m)
        break;
      h.swap_rows(r, best);
      if (u)
        u->swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0)
          continue;
        Integer q = floor_div(h(i, c), h(r, c));
        h.add_row_multiple(i, r, -q);
        if (u)
          u->add_row_multiple(i, r, -q);
        if (h(i, c) != 0)
          clean = false;
      }
      if (clean)
        break;
    }
    if (h(r, c) == 0)
      continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      if (u)
        u->negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (h(i, c) == 0)
        continue;
      Integer q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      if (u)
        u->add_row_multiple(i, r, -q);
    }
    if (pivots)
      pivots->push_back(c);
    ++r;
  }
  return r;
}

} // namespace

HermiteForm hnf(const IntMatrix &m) {
  HermiteForm f{m, IntMatrix::identity(m.rows()), 0, {}};
  f.rank = hermite_in_place(f.h, &f.u, &f.pivot_cols);
  return f;
}

IntMatrix hnf_rows(const IntMatrix &m) {
  IntMatrix h = m;
  hermite_in_place(h, nullptr, nullptr);
  return h;
}

SmithForm snf(const IntMatrix &m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  SmithForm f{{}, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(cols), 0};

  // Column op "col dst += k col src" on a and v is matched by
  // "row src -= k row dst" on v_inverse.
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer &k) {
    a.add_col_multiple(dst, src, k);
    f.v.add_col_multiple(dst, src, k);
    f.v_inverse.add_row_multiple(src, dst, -k);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    f.v.swap_cols(x, y);
    f.v_inverse.swap_rows(x, y);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer &k) {
    a.add_row_multiple(dst, src, k);
    f.u.add_row_multiple(dst, src, k);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    f.u.swap_rows(x, y);
  };

  const std::size_t limit = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < limit; ++t) {
    while (true) {
      // Pivot: minimal |entry| in the trailing block, ties to lowest (row, col).
      std::size_t br = rows, bc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0)
            continue;
          if (br == rows || abs(a(i, j)) < abs(a(br, bc))) {
            br = i;
            bc = j;
          }
        }
      if (br == rows)
        break;
      row_swap(t, br);
      col_swap(t, bc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0)
          continue;
        Integer q = floor_div(a(i, t), a(t, t));
        row_add(i, t, -q);
        dirty = dirty || a(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0)
          continue;
        Integer q = floor_div(a(t, j), a(t, t));
        col_add(j, t, -q);
        dirty = dirty || a(t, j) != 0;
      }
      if (dirty)
        continue;

      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows)
        break;
      row_add(t, bad_row, 1);
    }
    if (t >= rows || t >= cols || a(t, t) == 0)
      break;
    if (a(t, t) < 0) {
      a.negate_row(t);
      f.u.negate_row(t);
    }
  }
  f.rank = t;
  f.divisors.assign(limit, Integer(0));
  for (std::size_t i = 0; i < f.rank; ++i)
    f.divisors[i] = a(i, i);
  return f;
}

namespace {

// Divisors of a lattice given by a Hermite basis. A unit pivot has zeros
// above and below it, so column operations split it off as a divisor 1; only
// the rows with pivots > 1 need a dense Smith form.
std::vector<Integer> divisors_via_echelon(const IntMatrix &basis, std::size_t rows, std::size_t cols) {
  std::vector<Integer> d(std::min(rows, cols), Integer(0));
  std::vector<bool> unit_col(basis.cols(), false);
  std::vector<std::size_t> hard_rows;
  std::size_t filled = 0;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    std::size_t c = 0;
    while (c < basis.cols() && basis(r, c) == 0)
      ++c;
    if (c == basis.cols())
      continue;
    if (basis(r, c) == 1) {
      unit_col[c] = true;
      d[filled++] = 1;
    } else {
      hard_rows.push_back(r);
    }
  }
  std::vector<std::size_t> keep_cols;
  for (std::size_t c = 0; c < basis.cols(); ++c)
    if (!unit_col[c])
      keep_cols.push_back(c);
  IntMatrix core(hard_rows.size(), keep_cols.size());
  for (std::size_t i = 0; i < hard_rows.size(); ++i)
    for (std::size_t j = 0; j < keep_cols.size(); ++j)
      core(i, j) = basis(hard_rows[i], keep_cols[j]);
  for (const auto &x : snf(core).divisors)
    if (x != 0)
      d[filled++] = x;
  return d;
}

} // namespace

std::vector<Integer> smith_divisors(const IntMatrix &m) {
  if (m.nonzero_count() > kSparseThreshold)
    return smith_divisors(SparseIntMatrix::from_dense(m));
  if (m.rows() > 2 * m.cols() + 8) {
    EchelonLattice lat(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      lat.add_row(m, r);
    return divisors_via_echelon(lat.basis(), m.rows(), m.cols());
  }
  return snf(m).divisors;
}

UnitPivotReducer::UnitPivotReducer(std::size_t cols) : cols_(cols), pivot_row_of_col_(cols, -1) {}

namespace {

std::int64_t checked_sub_mul(std::int64_t a, std::int64_t k, std::int64_t b) {
  std::int64_t p, r;
  if (__builtin_mul_overflow(k, b, &p) || __builtin_sub_overflow(a, p, &r))
    throw std::overflow_error("UnitPivotReducer: entry exceeds 64 bits");
  return r;
}

} // namespace

std::vector<std::int64_t> UnitPivotReducer::reduce(std::vector<std::int64_t> v) const {
  for (std::size_t k = 0; k < pivot_cols_.size(); ++k) {
    const std::int64_t f = v[pivot_cols_[k]];
    if (f == 0)
      continue;
    const auto &p = pivots_[static_cast<std::size_t>(pivot_row_of_col_[pivot_cols_[k]])];
    for (std::size_t c = 0; c < cols_; ++c)
      if (p[c] != 0)
        v[c] = checked_sub_mul(v[c], f, p[c]);
  }
  return v;
}

std::size_t UnitPivotReducer::find_unit(const std::vector<std::int64_t> &v) const {
  for (std::size_t c = 0; c < cols_; ++c)
    if (v[c] == 1 || v[c] == -1)
      return c;
  return cols_;
}

void UnitPivotReducer::promote(std::vector<std::int64_t> v, std::size_t col) {
  if (v[col] == -1)
    for (auto &x : v)
      x = -x;
  for (auto &p : pivots_) {
    const std::int64_t f = p[col];
    if (f == 0)
      continue;
    for (std::size_t c = 0; c < cols_; ++c)
      if (v[c] != 0)
        p[c] = checked_sub_mul(p[c], f, v[c]);
  }
  pivot_row_of_col_[col] = static_cast<std::int64_t>(pivots_.size());
  pivot_cols_.push_back(col);
  pivots_.push_back(std::move(v));
}

void UnitPivotReducer::add_row(const Row &row) {
  std::vector<std::int64_t> v(cols_, 0);
  for (const auto &[c, x] : row) {
    if (c >= cols_)
      throw DimensionError("UnitPivotReducer: column index out of range");
    v[c] += x;
  }
  v = reduce(std::move(v));
  const std::size_t u = find_unit(v);
  if (u < cols_) {
    promote(std::move(v), u);
    return;
  }
  Row sparse;
  for (std::size_t c = 0; c < cols_; ++c)
    if (v[c] != 0)
      sparse.emplace_back(c, v[c]);
  if (!sparse.empty())
    hard_.push_back(std::move(sparse));
}

void UnitPivotReducer::finish() {
  // Later pivots may have produced unit entries in rows set aside earlier.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Row> keep;
    for (const auto &r : hard_) {
      std::vector<std::int64_t> v(cols_, 0);
      for (const auto &[c, x] : r)
        v[c] = x;
      v = reduce(std::move(v));
      const std::size_t u = find_unit(v);
      if (u < cols_) {
        promote(std::move(v), u);
        changed = true;
        continue;
      }
      Row sparse;
      for (std::size_t c = 0; c < cols_; ++c)
        if (v[c] != 0)
          sparse.emplace_back(c, v[c]);
      if (!sparse.empty())
        keep.push_back(std::move(sparse));
    }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    hard_ = std::move(keep);
  }
  core_cols_.clear();
  core_index_.assign(cols_, cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_row_of_col_[c] < 0) {
      core_index_[c] = core_cols_.size();
      core_cols_.push_back(c);
    }
}

IntMatrix UnitPivotReducer::core_relations() const {
  IntMatrix m(hard_.size(), core_cols_.size());
  for (std::size_t r = 0; r < hard_.size(); ++r)
    for (const auto &[c, x] : hard_[r])
      m(r, core_index_[c]) = static_cast<long>(x);
  return m;
}

std::vector<std::int64_t> UnitPivotReducer::core_coordinates(std::vector<std::int64_t> v) const {
  if (v.size() != cols_)
    throw DimensionError("UnitPivotReducer: vector length differs from column count");
  v = reduce(std::move(v));
  std::vector<std::int64_t> out(core_cols_.size());
  for (std::size_t k = 0; k < core_cols_.size(); ++k)
    out[k] = v[core_cols_[k]];
  return out;
}

std::vector<Integer> UnitPivotReducer::divisors(std::size_t total_rows) {
  finish();
  // The remaining rows vanish on pivot columns.
  const std::size_t width = core_cols_.size();
  EchelonLattice lat(width);
  for (const auto &r : hard_) {
    std::vector<std::pair<std::size_t, Integer>> row;
    for (const auto &[c, x] : r)
      row.emplace_back(core_index_[c], Integer(static_cast<long>(x)));
    lat.add_sparse_row(std::move(row));
  }
  std::vector<Integer> d(std::min(total_rows, cols_), Integer(0));
  std::size_t filled = 0;
  for (std::size_t k = 0; k < pivot_cols_.size() && filled < d.size(); ++k)
    d[filled++] = 1;
  for (const auto &x : divisors_via_echelon(lat.basis(), lat.rank(), width))
    if (x != 0 && filled < d.size())
      d[filled++] = x;
  std::sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(filled));
  return d;
}

std::vector<Integer> smith_divisors(const SparseIntMatrix &m) {
  bool small = true;
  for (const auto &e : m.entries())
    if (!e.value.fits_slong_p()) {
      small = false;
      break;
    }
  if (small) {
    try {
      UnitPivotReducer red(m.cols());
      UnitPivotReducer::Row row;
      const auto &e = m.entries();
      for (std::size_t i = 0; i < e.size(); ++i) {
        row.emplace_back(e[i].col, e[i].value.get_si());
        if (i + 1 == e.size() || e[i + 1].row != e[i].row) {
          red.add_row(row);
          row.clear();
        }
      }
      return red.divisors(m.rows());
    } catch (const std::overflow_error &) {
    }
  }
  EchelonLattice lat(m.cols());
  std::vector<std::pair<std::size_t, Integer>> row;
  std::size_t current = 0;
  const auto &e = m.entries();
  for (std::size_t i = 0; i <= e.size(); ++i) {
    if (i == e.size() || e[i].row != current) {
      if (!row.empty())
        lat.add_sparse_row(std::move(row));
      row.clear();
      if (i == e.size())
        break;
      current = e[i].row;
    }
    row.emplace_back(e[i].col, e[i].value);
  }
  return divisors_via_echelon(lat.basis(), m.rows(), m.cols());
}

std::size_t rank(const IntMatrix &m) {
  IntMatrix h = m;
  return hermite_in_place(h, nullptr, nullptr);
}

std::size_t rank(const SparseIntMatrix &m) {
  auto d = smith_divisors(m);
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const Integer &x) { return x != 0; }));
}

std::vector<IntVector> kernel_basis(const IntMatrix &m) {
  HermiteForm f = hnf(m.transpose());
  IntMatrix k(0, m.cols());
  for (std::size_t r = f.rank; r < f.u.rows(); ++r)
    k.append_row(f.u.row(r));
  IntMatrix h = hnf_rows(k);
  std::vector<IntVector> basis;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    IntVector v = h.row(r);
    if (std::any_of(v.begin(), v.end(), [](const Integer &x) { return x != 0; }))
      basis.push_back(std::move(v));
  }
  return basis;
}

AbelianInvariants cokernel_invariants(const IntMatrix &m, std::size_t ambient_rank) {
  if (m.cols() != ambient_rank)
    throw DimensionError("cokernel_invariants: relation matrix has " + std::to_string(m.cols()) +
                         " columns, ambient rank " + std::to_string(ambient_rank));
  return AbelianInvariants::from_divisors(ambient_rank, smith_divisors(m));
}

AbelianInvariants cokernel_invariants(const SparseIntMatrix &m, std::size_t ambient_rank) {
  if (m.cols() != ambient_rank)
    throw DimensionError("cokernel_invariants: column count differs from ambient rank");
  return AbelianInvariants::from_divisors(ambient_rank, smith_divisors(m));
}

std::optional<IntVector> solve_integer(const IntMatrix &m, const IntVector &b) {
  if (b.size() != m.rows())
    throw DimensionError("solve_integer: right-hand side has wrong length");
  SmithForm f = snf(m);
  IntVector ub = multiply(f.u, b);
  IntVector y(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    const Integer d = i < f.divisors.size() ? f.divisors[i] : Integer(0);
    if (d == 0) {
      if (ub[i] != 0)
        return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t()))
      return std::nullopt;
    y[i] = ub[i] / d;
  }
  return multiply(f.v, y);
}

Integer determinant(const IntMatrix &m) {
  if (m.rows() != m.cols())
    throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::uint64_t determinant_mod(std::vector<std::uint64_t> a, std::size_t n, std::uint64_t p) {
  using u128 = unsigned __int128;
  auto mul = [p](std::uint64_t x, std::uint64_t y) { return static_cast<std::uint64_t>((u128)x * y % p); };
  auto pow = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1)
        r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[piv * n + j], a[c * n + j]);
      det = det == 0 ? 0 : p - det;
    }
    const std::uint64_t pv = a[c * n + c];
    det = mul(det, pv);
    const std::uint64_t inv = pow(pv, p - 2);
    for (std::size_t i = c + 1; i < n; ++i) {
      std::uint64_t f = a[i * n + c];
      if (f == 0)
        continue;
      f = mul(f, inv);
      const std::uint64_t nf = p - f;
      std::uint64_t *ri = &a[i * n];
      const std::uint64_t *rc = &a[c * n];
      for (std::size_t j = c; j < n; ++j)
        if (rc[j])
          ri[j] = static_cast<std::uint64_t>((ri[j] + (u128)nf * rc[j]) % p);
    }
  }
  return det;
}

bool is_unimodular(const IntMatrix &m) {
  if (m.rows() != m.cols())
    return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

} // namespace nilcoset::exactla
