#include "nilcoset/exactla.hpp"

#include <algorithm>

namespace nilcoset::exactla {

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

// a*x + b*y, merged by column.
SparseRow combine(const Integer &a, const SparseRow &x, const Integer &b, const SparseRow &y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      if (a != 0)
        out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      if (b != 0)
        out.emplace_back(y[j].first, b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second + b * y[j].second;
      if (v != 0)
        out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

Integer floor_div(const Integer &a, const Integer &b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

} // namespace

EchelonLattice::EchelonLattice(std::size_t cols) : cols_(cols), pivot_rows_(cols) {}

void EchelonLattice::add_row(const IntMatrix &m, std::size_t r) {
  if (m.cols() != cols_)
    throw DimensionError("EchelonLattice: column mismatch");
  SparseRow row;
  for (std::size_t c = 0; c < cols_; ++c)
    if (m(r, c) != 0)
      row.emplace_back(c, m(r, c));
  add_sparse_row(std::move(row));
}

void EchelonLattice::add_sparse_row(SparseRow row) {
  std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  std::erase_if(row, [](const auto &e) { return e.second == 0; });
  while (!row.empty()) {
    const std::size_t c = row.front().first;
    if (c >= cols_)
      throw DimensionError("EchelonLattice: column index out of range");
    SparseRow &piv = pivot_rows_[c];
    if (piv.empty()) {
      if (row.front().second < 0)
        for (auto &e : row)
          e.second = -e.second;
      piv = std::move(row);
      ++count_;
      // Periodically bring entries to the right of pivots into range so
      // coefficients stay small.
      if (++insertions_since_reduce_ >= 64) {
        insertions_since_reduce_ = 0;
        reduce_tail(c);
      }
      return;
    }
    const Integer &a = piv.front().second;
    const Integer &b = row.front().second;
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      Integer q = b / a;
      row = combine(1, row, -q, piv);
      continue;
    }
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer ag = a / g, bg = b / g;
    SparseRow new_piv = combine(s, piv, t, row);
    SparseRow rest = combine(ag, row, -bg, piv);
    if (new_piv.front().second < 0)
      for (auto &e : new_piv)
        e.second = -e.second;
    piv = std::move(new_piv);
    row = std::move(rest);
  }
}

void EchelonLattice::reduce_tail(std::size_t pivot_col) {
  // Reduce the row at pivot_col against all later pivots.
  SparseRow &row = pivot_rows_[pivot_col];
  for (std::size_t k = 1; k < row.size(); ++k) {
    const std::size_t c = row[k].first;
    const SparseRow &piv = pivot_rows_[c];
    if (piv.empty())
      continue;
    Integer q = floor_div(row[k].second, piv.front().second);
    if (q == 0)
      continue;
    row = combine(1, row, -q, piv);
    k = 0; // entries shifted; rescan
  }
}

IntMatrix EchelonLattice::basis() const {
  IntMatrix m(0, cols_);
  for (const auto &r : pivot_rows_) {
    if (r.empty())
      continue;
    IntVector v(cols_);
    for (const auto &[c, x] : r)
      v[c] = x;
    m.append_row(v);
  }
  // Already echelon; hnf_rows only reduces above the pivots.
  IntMatrix h = hnf_rows(m);
  IntMatrix out(0, cols_);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    IntVector v = h.row(r);
    if (std::any_of(v.begin(), v.end(), [](const Integer &x) { return x != 0; }))
      out.append_row(v);
  }
  return out;
}

IntMatrix lattice_basis(const IntMatrix &m) {
  IntMatrix h = hnf_rows(m);
  IntMatrix out(0, m.cols());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    IntVector v = h.row(r);
    if (std::any_of(v.begin(), v.end(), [](const Integer &x) { return x != 0; }))
      out.append_row(v);
  }
  return out;
}

bool same_lattice(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols() != b.cols())
    throw DimensionError("same_lattice: column mismatch");
  return lattice_basis(a) == lattice_basis(b);
}

IntMatrix preimage_lattice(const IntMatrix &map, const IntMatrix &target_relations) {
  if (map.cols() != target_relations.cols())
    throw DimensionError("preimage_lattice: column mismatch");
  const std::size_t m = map.rows();
  const std::size_t r = target_relations.rows();
  // Left kernel of [map; -rel], projected to the first m coordinates.
  IntMatrix stacked(m + r, map.cols());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < map.cols(); ++c)
      stacked(i, c) = map(i, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < map.cols(); ++c)
      stacked(m + i, c) = -target_relations(i, c);
  IntMatrix proj(0, m);
  for (const auto &k : kernel_basis(stacked.transpose()))
    proj.append_row(IntVector(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(m)));
  return lattice_basis(proj);
}

AbelianInvariants AbelianPresentation::invariants() const {
  return cokernel_invariants(relations, n_gens);
}

InducedMapCheck check_induced_map(const AbelianPresentation &source, const AbelianPresentation &target,
                                  const IntMatrix &map) {
  if (map.rows() != source.n_gens || map.cols() != target.n_gens)
    throw DimensionError("check_induced_map: map has wrong shape");
  InducedMapCheck out;
  // Well defined: every source relation lands in the target relation lattice.
  IntMatrix pre = preimage_lattice(map, target.relations);
  IntMatrix src_rel = lattice_basis(source.relations);
  out.well_defined = same_lattice(vstack(pre, src_rel), pre);
  // Injective: the preimage of the target relations is exactly the source relations.
  out.injective = out.well_defined && same_lattice(pre, src_rel);
  // Surjective: image plus target relations spans everything.
  IntMatrix span = vstack(map, target.relations);
  out.surjective = same_lattice(span, IntMatrix::identity(target.n_gens));
  return out;
}

} // namespace nilcoset::exactla
