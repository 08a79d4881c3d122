#include "nilcoset/nilquot.hpp"

#include "overlap.hpp"

#include <algorithm>
#include <limits>

namespace nilcoset::nilquot {

namespace {

using exactla::EchelonLattice;
using exactla::IntMatrix;
using exactla::IntVector;

struct Tail {
  enum class Kind { power, commutator, image } kind;
  std::uint32_t a = 0; // power: i; commutator: j; image: x
  std::uint32_t b = 0; // commutator: i
  bool preferred = false;
};

ExpVec evaluate_relator(const Collector &col, const std::vector<ExpVec> &images, const fpgrp::Word &r) {
  ExpVec e = col.identity();
  for (const auto &s : r.syllables())
    e = col.product(e, col.power(images[s.gen], s.exp));
  return e;
}

std::int64_t to_int64(const Integer &x) {
  if (!x.fits_slong_p())
    throw ResourceLimit("layer coefficient does not fit in 64 bits");
  return x.get_si();
}

// One step of the tails method: N_c -> N_{c+1}.
PcPresentation extend(const PcPresentation &pc, const fpgrp::FinitePresentation &pres, std::size_t c,
                      const NqOptions &options) {
  const std::size_t n = pc.size();
  const int next = static_cast<int>(c + 1);

  std::vector<Tail> tails;
  std::vector<std::int64_t> power_tail(n, -1), image_tail(pc.n_orig, -1);
  std::vector<std::vector<std::int64_t>> comm_tail(n);
  std::vector<bool> defining_image(pc.n_orig, false);
  std::vector<std::vector<bool>> defining_comm(n);
  for (std::size_t k = 0; k < n; ++k) {
    comm_tail[k].assign(k, -1);
    defining_comm[k].assign(k, false);
  }
  for (const auto &d : pc.defs) {
    if (d.kind == Definition::Kind::image)
      defining_image[d.x] = true;
    else
      defining_comm[d.j][d.i] = true;
  }

  for (std::uint32_t i = 0; i < n; ++i)
    if (pc.rel_order[i] > 0) {
      power_tail[i] = static_cast<std::int64_t>(tails.size());
      tails.push_back({Tail::Kind::power, i, 0, false});
    }
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i) {
      if (defining_comm[j][i] || pc.weight[i] + pc.weight[j] > next)
        continue;
      comm_tail[j][i] = static_cast<std::int64_t>(tails.size());
      tails.push_back({Tail::Kind::commutator, j, i, pc.weight[j] == static_cast<int>(c) && pc.weight[i] == 1});
    }
  for (std::uint32_t x = 0; x < pc.n_orig; ++x)
    if (!defining_image[x]) {
      image_tail[x] = static_cast<std::int64_t>(tails.size());
      tails.push_back({Tail::Kind::image, x, 0, next == 1});
    }
  const std::size_t t_count = tails.size();
  if (n + t_count > 8 * options.max_generators + 64)
    throw ResourceLimit("nilpotent quotient: " + std::to_string(t_count) + " tails exceed the generator budget");
  if (t_count == 0)
    return pc;

  // P*: the old presentation with a central free tail on every relation.
  PcPresentation star = pc;
  for (std::size_t t = 0; t < t_count; ++t)
    star.add_generator(next, 0, {});
  for (std::size_t t = 0; t < t_count; ++t) {
    const auto g = static_cast<std::uint32_t>(n + t);
    const Tail &tl = tails[t];
    switch (tl.kind) {
    case Tail::Kind::power:
      star.power[tl.a].emplace_back(g, 1);
      break;
    case Tail::Kind::commutator:
      star.comm[tl.a][tl.b].emplace_back(g, 1);
      break;
    case Tail::Kind::image:
      star.images[tl.a].emplace_back(g, 1);
      break;
    }
  }
  const Collector col(star);

  // Columns: non-preferred tails first so that preferred ones survive.
  std::vector<std::size_t> column_of(t_count), tail_at(t_count);
  {
    std::size_t p = 0;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t t = 0; t < t_count; ++t)
        if (tails[t].preferred == (pass == 1)) {
          column_of[t] = p;
          tail_at[p] = t;
          ++p;
        }
  }
  EchelonLattice lattice(t_count);
  auto add_difference = [&](const ExpVec &lhs, const ExpVec &rhs, const std::string &what) {
    for (std::size_t k = 0; k < n; ++k)
      if (lhs[k] != rhs[k])
        throw std::logic_error("nilpotent quotient: class " + std::to_string(c) +
                               " presentation failed overlap test " + what);
    std::vector<std::pair<std::size_t, Integer>> row;
    for (std::size_t t = 0; t < t_count; ++t)
      if (lhs[n + t] != rhs[n + t])
        row.emplace_back(column_of[t], Integer(static_cast<long>(lhs[n + t])) - static_cast<long>(rhs[n + t]));
    if (!row.empty()) {
      std::sort(row.begin(), row.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
      lattice.add_sparse_row(std::move(row));
    }
  };

  overlap_tests(col, n, next, add_difference);

  std::vector<ExpVec> images;
  for (const auto &w : star.images)
    images.push_back(col.collect(w));
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    ExpVec e = evaluate_relator(col, images, pres.relators[r]);
    add_difference(e, col.identity(), "relator " + std::to_string(r + 1));
  }

  // Survivors become the new generators.
  const IntMatrix h = lattice.basis();
  std::vector<std::int64_t> pivot_row(t_count, -1);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t col_i = 0; col_i < t_count; ++col_i)
      if (h(r, col_i) != 0) {
        pivot_row[col_i] = static_cast<std::int64_t>(r);
        break;
      }
  std::vector<std::int64_t> new_index(t_count, -1); // by column
  std::vector<std::size_t> survivors;                // columns
  for (std::size_t p = 0; p < t_count; ++p) {
    if (pivot_row[p] >= 0 && h(static_cast<std::size_t>(pivot_row[p]), p) == 1)
      continue;
    if (!tails[tail_at[p]].preferred)
      throw std::logic_error("nilpotent quotient: a non-defining tail survived Hermite reduction");
    new_index[p] = static_cast<std::int64_t>(survivors.size());
    survivors.push_back(p);
  }
  const std::size_t s_count = survivors.size();
  if (n + s_count > options.max_generators)
    throw ResourceLimit("nilpotent quotient: more than " + std::to_string(options.max_generators) +
                        " pc generators");

  // Layer of weight c+1: Z^s modulo the rows with pivots > 1.
  std::vector<std::int64_t> order(s_count, 0);
  std::vector<ExpVec> layer_power(s_count, ExpVec(s_count, 0)); // raw right-hand sides
  for (std::size_t s = 0; s < s_count; ++s) {
    const std::size_t p = survivors[s];
    if (pivot_row[p] < 0)
      continue;
    const auto r = static_cast<std::size_t>(pivot_row[p]);
    order[s] = to_int64(h(r, p));
    for (std::size_t q = p + 1; q < t_count; ++q)
      if (h(r, q) != 0)
        layer_power[s][static_cast<std::size_t>(new_index[q])] = -to_int64(h(r, q));
  }
  auto normalize = [&](ExpVec &v) {
    for (std::size_t s = 0; s < s_count; ++s) {
      if (order[s] == 0 || v[s] == 0)
        continue;
      std::int64_t q = v[s] / order[s];
      if (v[s] % order[s] < 0)
        --q;
      if (q == 0)
        continue;
      v[s] -= q * order[s];
      for (std::size_t k = s + 1; k < s_count; ++k)
        if (layer_power[s][k]) {
          std::int64_t add;
          if (__builtin_mul_overflow(q, layer_power[s][k], &add) || __builtin_add_overflow(v[k], add, &v[k]))
            throw ResourceLimit("layer coefficient overflow");
        }
    }
  };
  for (std::size_t s = s_count; s-- > 0;)
    if (order[s] > 0)
      normalize(layer_power[s]);

  // Value of every tail in the new generators.
  std::vector<ExpVec> value(t_count, ExpVec(s_count, 0)); // by tail
  for (std::size_t p = 0; p < t_count; ++p) {
    ExpVec &v = value[tail_at[p]];
    if (new_index[p] >= 0) {
      v[static_cast<std::size_t>(new_index[p])] = 1;
      continue;
    }
    const auto r = static_cast<std::size_t>(pivot_row[p]);
    for (std::size_t q = p + 1; q < t_count; ++q)
      if (h(r, q) != 0) {
        if (new_index[q] < 0)
          throw std::logic_error("nilpotent quotient: Hermite form not reduced above a unit pivot");
        v[static_cast<std::size_t>(new_index[q])] = -to_int64(h(r, q));
      }
    normalize(v);
  }

  PcPresentation out = pc;
  for (std::size_t s = 0; s < s_count; ++s) {
    const Tail &tl = tails[tail_at[survivors[s]]];
    Definition d{};
    if (tl.kind == Tail::Kind::image)
      d = {Definition::Kind::image, tl.a, 0, 0};
    else
      d = {Definition::Kind::commutator, 0, tl.a, tl.b};
    out.add_generator(next, order[s], d);
  }
  auto append = [&](PcWord &w, std::size_t t) {
    for (std::size_t s = 0; s < s_count; ++s)
      if (value[t][s])
        w.emplace_back(static_cast<std::uint32_t>(n + s), value[t][s]);
  };
  for (std::size_t s = 0; s < s_count; ++s)
    if (order[s] > 0)
      for (std::size_t k = 0; k < s_count; ++k)
        if (layer_power[s][k])
          out.power[n + s].emplace_back(static_cast<std::uint32_t>(n + k), layer_power[s][k]);
  for (std::size_t t = 0; t < t_count; ++t) {
    const Tail &tl = tails[t];
    switch (tl.kind) {
    case Tail::Kind::power:
      append(out.power[tl.a], t);
      break;
    case Tail::Kind::commutator:
      append(out.comm[tl.a][tl.b], t);
      break;
    case Tail::Kind::image:
      append(out.images[tl.a], t);
      break;
    }
  }
  return out;
}

} // namespace

PcPresentation nilpotent_quotient(const fpgrp::FinitePresentation &pres, std::size_t class_c,
                                  const NqOptions &options) {
  pres.validate();
  PcPresentation pc = PcPresentation::trivial(pres.n_gens);
  pc.orig_names = pres.names;
  for (std::size_t c = 0; c < class_c; ++c)
    pc = extend(pc, pres, c, options);
  return pc;
}

PcPresentation truncate(const PcPresentation &pc, std::size_t j) {
  std::size_t cut = 0;
  while (cut < pc.size() && pc.weight[cut] <= static_cast<int>(j))
    ++cut;
  auto trim = [cut](const PcWord &w) {
    PcWord out;
    for (const auto &s : w)
      if (s.first < cut)
        out.push_back(s);
    return out;
  };
  PcPresentation out = PcPresentation::trivial(pc.n_orig);
  out.orig_names = pc.orig_names;
  for (std::size_t k = 0; k < cut; ++k) {
    out.add_generator(pc.weight[k], pc.rel_order[k], pc.defs[k]);
    out.power[k] = trim(pc.power[k]);
    for (std::size_t i = 0; i < k; ++i)
      out.comm[k][i] = trim(pc.comm[k][i]);
  }
  for (std::size_t x = 0; x < pc.n_orig; ++x)
    out.images[x] = trim(pc.images[x]);
  return out;
}

std::optional<std::string> consistency_failure(const PcPresentation &pc) {
  const Collector col(pc);
  std::optional<std::string> failure;
  overlap_tests(col, pc.size(), std::numeric_limits<int>::max(),
                [&](const ExpVec &lhs, const ExpVec &rhs, const std::string &what) {
                  if (!failure && lhs != rhs)
                    failure = what;
                });
  return failure;
}

} // namespace nilcoset::nilquot
