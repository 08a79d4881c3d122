#include "nilcoset/homology.hpp"

#include <memory>
#include <random>
#include <sstream>

namespace nilcoset::homology {

using exactla::IntVector;

SmithCoordinates SmithCoordinates::of(const IntMatrix &relations, std::size_t n_gens) {
  SmithCoordinates s;
  if (relations.cols() != n_gens)
    throw exactla::DimensionError("SmithCoordinates: relation matrix has the wrong width");
  const exactla::SmithForm f = exactla::snf(relations);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n_gens; ++i) {
    const Integer d = i < f.divisors.size() ? Integer(abs(f.divisors[i])) : Integer(0);
    if (d == 1)
      continue;
    keep.push_back(i);
    s.orders.push_back(d);
  }
  s.to_smith = IntMatrix(n_gens, keep.size());
  s.from_smith = IntMatrix(keep.size(), n_gens);
  for (std::size_t j = 0; j < keep.size(); ++j)
    for (std::size_t i = 0; i < n_gens; ++i) {
      s.to_smith(i, j) = f.v(i, keep[j]);
      s.from_smith(j, i) = f.v_inverse(keep[j], i);
    }
  return s;
}

AbelianInvariants SmithCoordinates::invariants() const {
  std::size_t free = 0;
  std::vector<Integer> finite;
  for (const auto &o : orders) {
    if (o == 0)
      ++free;
    else
      finite.push_back(o);
  }
  return AbelianInvariants::from_cyclic_orders(free, finite);
}

IntMatrix SmithCoordinates::relations() const {
  IntMatrix r(0, orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) {
      IntVector row(orders.size());
      row[i] = orders[i];
      r.append_row(row);
    }
  return r;
}

IntVector SmithCoordinates::reduce(const IntVector &ambient) const {
  IntVector y = exactla::multiply_left(ambient, to_smith);
  for (std::size_t i = 0; i < y.size(); ++i)
    if (orders[i] != 0)
      mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), orders[i].get_mpz_t());
  return y;
}

AbelianQuotient::AbelianQuotient(const PermGroup &m, const PermGroup &k) : space_(m, k) {
  const auto &gens = m.generators();
  const std::size_t r = gens.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!k.contains(permgrp::commutator(gens[i], gens[j])))
        throw std::invalid_argument("AbelianQuotient: quotient is not abelian");

  const std::size_t idx = space_.index();
  coset_vectors_.assign(idx, {});
  std::vector<Permutation> rep(idx);
  std::vector<bool> seen(idx, false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  coset_vectors_[0] = IntVector(r);
  rep[0] = m.identity();
  exactla::EchelonLattice rel(r);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t c = queue[q];
    for (std::size_t j = 0; j < r; ++j) {
      Permutation y = rep[c] * gens[j];
      const std::size_t d = space_.coset_of(y);
      IntVector v = coset_vectors_[c];
      v[j] += 1;
      if (!seen[d]) {
        seen[d] = true;
        coset_vectors_[d] = std::move(v);
        rep[d] = std::move(y);
        queue.push_back(d);
      } else {
        std::vector<std::pair<std::size_t, Integer>> row;
        for (std::size_t i = 0; i < r; ++i)
          if (v[i] != coset_vectors_[d][i])
            row.emplace_back(i, v[i] - coset_vectors_[d][i]);
        if (!row.empty())
          rel.add_sparse_row(std::move(row));
      }
    }
  }
  smith_ = SmithCoordinates::of(rel.basis(), r);
  for (std::size_t s = 0; s < smith_.orders.size(); ++s) {
    Permutation x = m.identity();
    for (std::size_t j = 0; j < r; ++j) {
      const Integer &e = smith_.from_smith(s, j);
      if (e != 0)
        x = x * gens[j].pow(e.get_si());
    }
    lifts_.push_back(std::move(x));
  }
}

IntVector AbelianQuotient::coordinates_of(const Permutation &x) const {
  return smith_.reduce(coset_vectors_[space_.coset_of(x)]);
}

NModCommutators n_mod_commutators(const PermGroup &g, const PermGroup &n) {
  if (!n.is_subgroup_of(g) || !permgrp::is_normal(g, n))
    throw NotNormal("N is not a normal subgroup of G");
  const AbelianQuotient q(n, permgrp::commutator_subgroup(g, g, n));
  return {q.invariants(), q.generator_lifts()};
}

namespace {

// H_2 of a normalized bar slice with explicit cycles. H_2 is finite, so it
// is the torsion of Z^dim2 / im(d3), and every cycle lands in that torsion.
// Unit pivots of d3 are eliminated in 64-bit arithmetic; on overflow the
// exact kernel-basis route is used.
class CycleHomology {
public:
  explicit CycleHomology(const BarComplexSlice &bar) : dim_(bar.dim2()) {
    try {
      build_reduced(bar);
    } catch (const std::overflow_error &) {
      reducer_.reset();
      build_kernel(bar);
    }
  }

  const SmithCoordinates &smith() const { return smith_; }

  IntVector coordinates(const IntVector &cycle) const {
    if (!reducer_)
      return smith_.reduce(kernel_coordinates(cycle));
    std::vector<std::int64_t> v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!cycle[i].fits_slong_p())
        throw std::overflow_error("cycle entry exceeds 64 bits");
      v[i] = cycle[i].get_si();
    }
    const auto core = reducer_->core_coordinates(std::move(v));
    IntVector c(core.size());
    for (std::size_t k = 0; k < core.size(); ++k)
      c[k] = static_cast<long>(core[k]);
    return smith_.reduce(c);
  }

  IntVector lift(std::size_t s) const {
    IntVector z(dim_);
    if (reducer_) {
      const auto &cols = reducer_->core_columns();
      for (std::size_t k = 0; k < cols.size(); ++k)
        z[cols[k]] = smith_.from_smith(s, k);
      return z;
    }
    for (std::size_t k = 0; k < kernel_.size(); ++k) {
      const Integer &c = smith_.from_smith(s, k);
      if (c == 0)
        continue;
      for (std::size_t i = 0; i < dim_; ++i)
        z[i] += c * kernel_[k][i];
    }
    return z;
  }

private:
  void build_reduced(const BarComplexSlice &bar) {
    reducer_ = std::make_shared<exactla::UnitPivotReducer>(dim_);
    exactla::UnitPivotReducer::Row row;
    const auto &e = bar.d3().entries();
    for (std::size_t i = 0; i < e.size(); ++i) {
      row.emplace_back(e[i].col, e[i].value.get_si());
      if (i + 1 == e.size() || e[i + 1].row != e[i].row) {
        reducer_->add_row(row);
        row.clear();
      }
    }
    reducer_->finish();
    const std::size_t width = reducer_->core_columns().size();
    const SmithCoordinates all = SmithCoordinates::of(exactla::lattice_basis(reducer_->core_relations()), width);
    // Keep the torsion coordinates only.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < all.orders.size(); ++i)
      if (all.orders[i] != 0)
        keep.push_back(i);
    smith_.to_smith = IntMatrix(width, keep.size());
    smith_.from_smith = IntMatrix(keep.size(), width);
    for (std::size_t j = 0; j < keep.size(); ++j) {
      smith_.orders.push_back(all.orders[keep[j]]);
      for (std::size_t i = 0; i < width; ++i) {
        smith_.to_smith(i, j) = all.to_smith(i, keep[j]);
        smith_.from_smith(j, i) = all.from_smith(keep[j], i);
      }
    }
  }

  void build_kernel(const BarComplexSlice &bar) {
    for (auto &row : exactla::kernel_basis(bar.d2().to_dense().transpose())) {
      std::size_t p = 0;
      while (row[p] == 0)
        ++p;
      pivots_.push_back(p);
      kernel_.push_back(std::move(row));
    }
    exactla::EchelonLattice image(dim_);
    std::vector<std::pair<std::size_t, Integer>> row;
    const auto &e = bar.d3().entries();
    for (std::size_t i = 0; i < e.size(); ++i) {
      row.emplace_back(e[i].col, e[i].value);
      if (i + 1 == e.size() || e[i + 1].row != e[i].row) {
        image.add_sparse_row(std::move(row));
        row.clear();
      }
    }
    const IntMatrix b = image.basis();
    IntMatrix rel(0, kernel_.size());
    for (std::size_t r = 0; r < b.rows(); ++r)
      rel.append_row(kernel_coordinates(b.row(r)));
    smith_ = SmithCoordinates::of(rel, kernel_.size());
  }

  IntVector kernel_coordinates(IntVector v) const {
    IntVector c(kernel_.size());
    for (std::size_t k = 0; k < kernel_.size(); ++k) {
      const Integer &h = kernel_[k][pivots_[k]];
      if (v[pivots_[k]] == 0)
        continue;
      if (!mpz_divisible_p(v[pivots_[k]].get_mpz_t(), h.get_mpz_t()))
        throw std::logic_error("chain is not a cycle");
      c[k] = v[pivots_[k]] / h;
      for (std::size_t i = pivots_[k]; i < dim_; ++i)
        v[i] -= c[k] * kernel_[k][i];
    }
    for (const auto &x : v)
      if (x != 0)
        throw std::logic_error("chain is not a cycle");
    return c;
  }

  std::size_t dim_;
  std::shared_ptr<exactla::UnitPivotReducer> reducer_;
  std::vector<IntVector> kernel_;
  std::vector<std::size_t> pivots_;
  SmithCoordinates smith_;
};

IntVector add_reduced(const SmithCoordinates &s, IntVector a, const IntVector &b, const Integer &k) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] += k * b[i];
    if (s.orders[i] != 0)
      mpz_fdiv_r(a[i].get_mpz_t(), a[i].get_mpz_t(), s.orders[i].get_mpz_t());
  }
  return a;
}

bool composition_zero(const IntMatrix &f, const IntMatrix &g, const SmithCoordinates &target) {
  if (f.rows() == 0 || g.cols() == 0)
    return true;
  const IntMatrix fg = f * g;
  for (std::size_t r = 0; r < fg.rows(); ++r)
    for (std::size_t c = 0; c < fg.cols(); ++c) {
      const Integer &o = target.orders[c];
      if (o == 0 ? fg(r, c) != 0 : !mpz_divisible_p(fg(r, c).get_mpz_t(), o.get_mpz_t()))
        return false;
    }
  return true;
}

// im f = ker g inside B, as lattices containing the relations of B.
bool exact_at(const IntMatrix &f, const SmithCoordinates &b, const IntMatrix &g, const SmithCoordinates &c) {
  const IntMatrix image = exactla::vstack(f, b.relations());
  const IntMatrix kernel = exactla::preimage_lattice(g, c.relations());
  return exactla::same_lattice(image, kernel);
}

} // namespace

bool FiveTermReport::all_exact() const {
  return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; }) &&
         std::all_of(compositions_zero.begin(), compositions_zero.end(), [](bool b) { return b; });
}

std::string FiveTermReport::to_string() const {
  static const char *names[] = {"H_2(G)", "H_2(Q)", "N/[G,N]", "H_1(G)", "H_1(Q)"};
  static const char *at[] = {"H_2(Q)", "N/[G,N]", "H_1(G)"};
  std::ostringstream out;
  for (std::size_t i = 0; i < groups.size(); ++i)
    out << names[i] << " = " << groups[i].to_string() << "\n";
  for (std::size_t i = 0; i < exact.size(); ++i)
    out << "exact at " << at[i] << ": " << (exact[i] ? "yes" : "no") << "\n";
  return out.str();
}

FiveTermReport five_term_check(const PermGroup &g, const PermGroup &n, const FiveTermOptions &options) {
  if (g.order() > static_cast<unsigned long>(options.max_order))
    throw OrderBoundExceeded("five-term check: group order " + g.order().get_str() + " exceeds bound " +
                             std::to_string(options.max_order));
  if (!n.is_subgroup_of(g) || !permgrp::is_normal(g, n))
    throw NotNormal("N is not a normal subgroup of G");

  const permgrp::CosetSpace cosets(g, n);
  std::vector<Permutation> qgens;
  for (const auto &s : g.generators())
    qgens.push_back(cosets.action_of(s));
  const PermGroup q(cosets.index(), qgens);

  const BarComplexSlice bar_g(g, true, options.max_order), bar_q(q, true, options.max_order);
  const CycleHomology h2g(bar_g), h2q(bar_q);
  const AbelianQuotient nq(n, permgrp::commutator_subgroup(g, g, n));
  const AbelianQuotient h1g(g, permgrp::derived_subgroup(g));
  const AbelianQuotient h1q(q, permgrp::derived_subgroup(q));

  // Projection on element indices, and a section of it.
  const auto &eg = bar_g.elements();
  const auto &eq = bar_q.elements();
  std::vector<std::size_t> proj(eg.size());
  for (std::size_t i = 0; i < eg.size(); ++i)
    proj[i] = bar_q.index_of(cosets.action_of(eg[i]));
  std::vector<Permutation> section(eq.size());
  std::mt19937_64 rng(options.section_seed);
  const auto n_elements = n.elements();
  for (std::size_t i = 0; i < eq.size(); ++i) {
    section[i] = cosets.representatives()[eq[i][0]];
    if (options.section_seed != 0 && i != 0)
      section[i] = section[i] * n_elements[rng() % n_elements.size()];
  }

  FiveTermReport rep;
  rep.groups = {h2g.smith().invariants(), h2q.smith().invariants(), nq.invariants(), h1g.invariants(),
                h1q.invariants()};

  IntMatrix infl(h2g.smith().orders.size(), h2q.smith().orders.size());
  for (std::size_t s = 0; s < infl.rows(); ++s) {
    const IntVector z = h2g.lift(s);
    IntVector zq(bar_q.dim2());
    for (std::size_t p = 0; p < z.size(); ++p) {
      if (z[p] == 0)
        continue;
      const auto [a, b] = bar_g.tuple2(p);
      if (auto pq = bar_q.chain2(proj[a], proj[b]))
        zq[*pq] += z[p];
    }
    const IntVector c = h2q.coordinates(zq);
    for (std::size_t t = 0; t < c.size(); ++t)
      infl(s, t) = c[t];
  }

  const SmithCoordinates &sn = nq.coordinates();
  IntMatrix trans(h2q.smith().orders.size(), sn.orders.size());
  for (std::size_t s = 0; s < trans.rows(); ++s) {
    const IntVector z = h2q.lift(s);
    IntVector acc(sn.orders.size());
    for (std::size_t p = 0; p < z.size(); ++p) {
      if (z[p] == 0)
        continue;
      const auto [a, b] = bar_q.tuple2(p);
      const Permutation f = section[a] * section[b] * section[bar_q.multiply(a, b)].inverse();
      acc = add_reduced(sn, acc, nq.coordinates_of(f), z[p]);
    }
    for (std::size_t t = 0; t < acc.size(); ++t)
      trans(s, t) = acc[t];
  }

  IntMatrix incl(sn.orders.size(), h1g.coordinates().orders.size());
  for (std::size_t s = 0; s < incl.rows(); ++s) {
    const IntVector c = h1g.coordinates_of(nq.generator_lifts()[s]);
    for (std::size_t t = 0; t < c.size(); ++t)
      incl(s, t) = c[t];
  }

  IntMatrix pr(h1g.coordinates().orders.size(), h1q.coordinates().orders.size());
  for (std::size_t s = 0; s < pr.rows(); ++s) {
    const IntVector c = h1q.coordinates_of(cosets.action_of(h1g.generator_lifts()[s]));
    for (std::size_t t = 0; t < c.size(); ++t)
      pr(s, t) = c[t];
  }

  rep.maps = {infl, trans, incl, pr};
  rep.compositions_zero = {composition_zero(infl, trans, sn), composition_zero(trans, incl, h1g.coordinates()),
                           composition_zero(incl, pr, h1q.coordinates())};
  rep.exact = {exact_at(infl, h2q.smith(), trans, sn), exact_at(trans, sn, incl, h1g.coordinates()),
               exact_at(incl, h1g.coordinates(), pr, h1q.coordinates())};
  return rep;
}

} // namespace nilcoset::homology
