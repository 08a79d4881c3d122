#include "nilcoset/homology.hpp"

#include <algorithm>
#include <set>

namespace nilcoset::homology {

AbelianInvariants h1_fp(const fpgrp::FinitePresentation &pres) {
  return exactla::cokernel_invariants(fpgrp::abelianization_matrix(pres), pres.n_gens);
}

AbelianInvariants h1_perm(const PermGroup &g) { return permgrp::abelianization_finite(g); }

namespace {

using Row = std::vector<std::pair<std::size_t, long>>;

// Adds (col, coef) to a short row, merging repeated columns.
void add_term(Row &row, std::size_t col, long coef) {
  for (auto &e : row)
    if (e.first == col) {
      e.second += coef;
      return;
    }
  row.emplace_back(col, coef);
}

void flush(Row &row, std::size_t r, std::vector<exactla::Triplet> &out) {
  std::sort(row.begin(), row.end());
  for (const auto &[c, v] : row)
    if (v != 0)
      out.push_back({r, c, Integer(v)});
  row.clear();
}

} // namespace

BarComplexSlice::BarComplexSlice(const PermGroup &g, bool normalized, std::uint64_t max_order)
    : normalized_(normalized) {
  if (g.order() > static_cast<unsigned long>(max_order))
    throw OrderBoundExceeded("bar complex: group order " + g.order().get_str() + " exceeds bound " +
                             std::to_string(max_order));
  elements_ = g.elements(max_order);
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i)
    index_.emplace(elements_[i], i);
  mul_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      mul_[a * n + b] = static_cast<std::uint32_t>(index_.at(elements_[a] * elements_[b]));

  const std::size_t m = normalized ? n - 1 : n;
  const std::size_t off = normalized ? 1 : 0;
  auto pos1 = [&](std::size_t a) -> std::optional<std::size_t> {
    if (normalized && a == 0)
      return std::nullopt;
    return a - off;
  };

  std::vector<exactla::Triplet> t2, t3;
  Row row;
  for (std::size_t a = off; a < n; ++a)
    for (std::size_t b = off; b < n; ++b) {
      if (auto p = pos1(b))
        add_term(row, *p, 1);
      if (auto p = pos1(multiply(a, b)))
        add_term(row, *p, -1);
      if (auto p = pos1(a))
        add_term(row, *p, 1);
      flush(row, (a - off) * m + (b - off), t2);
    }
  for (std::size_t a = off; a < n; ++a)
    for (std::size_t b = off; b < n; ++b)
      for (std::size_t c = off; c < n; ++c) {
        if (auto p = chain2(b, c))
          add_term(row, *p, 1);
        if (auto p = chain2(multiply(a, b), c))
          add_term(row, *p, -1);
        if (auto p = chain2(a, multiply(b, c)))
          add_term(row, *p, 1);
        if (auto p = chain2(a, b))
          add_term(row, *p, -1);
        flush(row, ((a - off) * m + (b - off)) * m + (c - off), t3);
      }
  d2_ = SparseIntMatrix(m * m, m, std::move(t2));
  d3_ = SparseIntMatrix(m * m * m, m * m, std::move(t3));

  // d2 o d3 = 0, checked exactly.
  std::vector<std::size_t> start(m * m + 1, 0);
  for (const auto &e : d2_.entries())
    ++start[e.row + 1];
  for (std::size_t r = 0; r < m * m; ++r)
    start[r + 1] += start[r];
  std::vector<long> acc(m, 0);
  const auto &e3 = d3_.entries();
  for (std::size_t i = 0; i < e3.size();) {
    const std::size_t r = e3[i].row;
    std::fill(acc.begin(), acc.end(), 0);
    for (; i < e3.size() && e3[i].row == r; ++i) {
      const long v = e3[i].value.get_si();
      for (std::size_t k = start[e3[i].col]; k < start[e3[i].col + 1]; ++k) {
        const auto &e = d2_.entries()[k];
        acc[e.col] += v * e.value.get_si();
      }
    }
    if (std::any_of(acc.begin(), acc.end(), [](long x) { return x != 0; }))
      throw std::logic_error("bar complex: d2 o d3 != 0 at row " + std::to_string(r));
  }
}

std::size_t BarComplexSlice::index_of(const Permutation &x) const {
  auto it = index_.find(x);
  if (it == index_.end())
    throw std::invalid_argument("bar complex: element not in the group");
  return it->second;
}

std::optional<std::size_t> BarComplexSlice::chain2(std::size_t a, std::size_t b) const {
  const std::size_t n = elements_.size();
  if (!normalized_)
    return a * n + b;
  if (a == 0 || b == 0)
    return std::nullopt;
  return (a - 1) * (n - 1) + (b - 1);
}

std::pair<std::size_t, std::size_t> BarComplexSlice::tuple2(std::size_t position) const {
  const std::size_t n = elements_.size();
  if (!normalized_)
    return {position / n, position % n};
  return {position / (n - 1) + 1, position % (n - 1) + 1};
}

namespace {

// C2/im d3 of a normalized slice after eliminating every column (x|c) with x
// outside the generating set by the unit-pivot row (a|t|c), x = a t, which
// reads (at|c) = (t|c) + (a|tc) - (a|t). What remains are the columns (t|c).
AbelianInvariants tree_reduced_cokernel(const BarComplexSlice &bar, const PermGroup &g) {
  const std::size_t n = bar.elements().size();
  std::vector<std::size_t> gens;
  for (const auto &t : g.generators()) {
    const std::size_t i = bar.index_of(t);
    if (i != 0 && std::find(gens.begin(), gens.end(), i) == gens.end())
      gens.push_back(i);
  }
  std::vector<std::int64_t> gen_slot(n, -1);
  for (std::size_t k = 0; k < gens.size(); ++k)
    gen_slot[gens[k]] = static_cast<std::int64_t>(k);

  // Breadth-first tree: x = parent[x] * via[x].
  std::vector<std::size_t> parent(n, 0), via(n, 0), order{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (auto t : gens) {
      const std::size_t y = bar.multiply(order[q], t);
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = order[q];
        via[y] = t;
        order.push_back(y);
      }
    }

  using Sparse = std::vector<std::pair<std::uint32_t, std::int64_t>>;
  const std::size_t width = gens.size() * (n - 1);
  std::vector<Sparse> expansion(bar.dim2());
  std::vector<std::int64_t> acc(width, 0);
  std::vector<std::uint32_t> touched;
  std::vector<bool> marked(width, false);
  auto add = [&](const Sparse &v, std::int64_t k) {
    for (const auto &[c, x] : v) {
      if (!marked[c]) {
        marked[c] = true;
        touched.push_back(c);
      }
      acc[c] += k * x;
    }
  };
  auto harvest = [&]() {
    Sparse out;
    std::sort(touched.begin(), touched.end());
    for (auto c : touched) {
      if (acc[c] != 0)
        out.emplace_back(c, acc[c]);
      acc[c] = 0;
      marked[c] = false;
    }
    touched.clear();
    return out;
  };
  for (std::size_t q = 1; q < order.size(); ++q) {
    const std::size_t x = order[q];
    for (std::size_t c = 1; c < n; ++c) {
      const std::size_t pos = *bar.chain2(x, c);
      if (gen_slot[x] >= 0) {
        expansion[pos] = {{static_cast<std::uint32_t>(static_cast<std::size_t>(gen_slot[x]) * (n - 1) + c - 1), 1}};
        continue;
      }
      const std::size_t a = parent[x], t = via[x];
      if (auto p = bar.chain2(a, bar.multiply(t, c)))
        add(expansion[*p], 1);
      add(expansion[*bar.chain2(t, c)], 1);
      add(expansion[*bar.chain2(a, t)], -1);
      expansion[pos] = harvest();
    }
  }

  exactla::UnitPivotReducer reducer(width);
  std::set<Sparse> distinct;
  const auto &e = bar.d3().entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    add(expansion[e[i].col], e[i].value.get_si());
    if (i + 1 < e.size() && e[i + 1].row == e[i].row)
      continue;
    Sparse row = harvest();
    if (row.empty() || !distinct.insert(row).second)
      continue;
    exactla::UnitPivotReducer::Row r(row.begin(), row.end());
    reducer.add_row(r);
  }
  return AbelianInvariants::from_divisors(width, reducer.divisors(distinct.size()));
}

} // namespace

AbelianInvariants h2_finite_bar(const PermGroup &g, const H2Options &options) {
  const BarComplexSlice bar(g, options.normalized, options.max_order);
  const std::size_t c2 = bar.dim2();
  AbelianInvariants coker;
  if (bar.elements().size() <= 16)
    coker = exactla::cokernel_invariants(bar.d3().to_dense(), c2);
  else if (options.normalized) {
    try {
      coker = tree_reduced_cokernel(bar, g);
    } catch (const std::overflow_error &) {
      coker = exactla::cokernel_invariants(bar.d3(), c2);
    }
  } else
    coker = exactla::cokernel_invariants(bar.d3(), c2);
  // C2/im d3 = H_2 + C2/ker d2, and the second summand is free of rank rank(d2).
  const std::size_t r2 = exactla::rank(bar.d2().to_dense());
  if (coker.free_rank != r2)
    throw std::logic_error("h2_finite_bar: free rank " + std::to_string(coker.free_rank) + " of C2/im d3 differs from rank d2 = " +
                           std::to_string(r2));
  return AbelianInvariants{0, coker.torsion};
}

} // namespace nilcoset::homology
