#include "nilcoset/fpgrp.hpp"

#include <algorithm>
#include <set>

namespace nilcoset::fpgrp {

namespace {

bool tree_edge(const CosetTable &t, std::size_t c, std::uint32_t g) {
  const std::size_t d = t.at(c, 2 * g);
  if (t.parent[d] == static_cast<std::int64_t>(c) && t.parent_col[d] == 2 * g)
    return true;
  return t.parent[c] == static_cast<std::int64_t>(d) && t.parent_col[c] == 2 * g + 1;
}

// Index of the Schreier generator on edge (coset, g), or -1 for tree edges.
std::vector<std::int64_t> schreier_index(const CosetTable &t, std::size_t &count) {
  std::vector<std::int64_t> idx(t.n_cosets * t.n_gens, -1);
  count = 0;
  for (std::size_t c = 0; c < t.n_cosets; ++c)
    for (std::uint32_t g = 0; g < t.n_gens; ++g)
      if (!tree_edge(t, c, g))
        idx[c * t.n_gens + g] = static_cast<std::int64_t>(count++);
  return idx;
}

void check_table(const FinitePresentation &pres, const CosetTable &t) {
  if (t.n_gens != pres.n_gens || t.parent.size() != t.n_cosets || t.table.size() != t.n_cosets * 2 * t.n_gens)
    throw PresentationError("coset table does not match the presentation");
  if (!t.verify(pres, {}))
    throw PresentationError("coset table is incomplete or incompatible with the relators");
}

} // namespace

FinitePresentation reidemeister_schreier(const FinitePresentation &pres, const CosetTable &table) {
  check_table(pres, table);
  std::size_t count = 0;
  const auto idx = schreier_index(table, count);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < table.n_cosets; ++c)
    for (std::uint32_t g = 0; g < table.n_gens; ++g)
      if (idx[c * table.n_gens + g] >= 0)
        names.push_back(pres.names[g] + "_" + std::to_string(c + 1));

  std::vector<Word> rels;
  std::set<std::vector<std::int32_t>> seen;
  for (std::size_t c = 0; c < table.n_cosets; ++c)
    for (const auto &r : pres.relators) {
      std::vector<Syllable> syl;
      std::uint32_t e = static_cast<std::uint32_t>(c);
      for (auto l : r.letters()) {
        if (l > 0) {
          const std::uint32_t g = static_cast<std::uint32_t>(l - 1);
          if (auto k = idx[e * table.n_gens + g]; k >= 0)
            syl.push_back({static_cast<std::uint32_t>(k), 1});
          e = table.at(e, 2 * g);
        } else {
          const std::uint32_t g = static_cast<std::uint32_t>(-l - 1);
          const std::uint32_t f = table.at(e, 2 * g + 1);
          if (auto k = idx[f * table.n_gens + g]; k >= 0)
            syl.push_back({static_cast<std::uint32_t>(k), -1});
          e = f;
        }
      }
      Word w(std::move(syl));
      if (w.empty() || !seen.insert(w.letters()).second)
        continue;
      rels.push_back(std::move(w));
    }
  return FinitePresentation(count, std::move(rels), std::move(names));
}

std::vector<Word> schreier_generator_words(const FinitePresentation &pres, const CosetTable &table) {
  check_table(pres, table);
  // Transversal words along the breadth-first tree.
  std::vector<Word> u(table.n_cosets);
  for (std::size_t d = 1; d < table.n_cosets; ++d) {
    const std::uint32_t col = table.parent_col[d];
    u[d] = u[static_cast<std::size_t>(table.parent[d])] * Word::generator(col / 2, col % 2 ? -1 : 1);
  }
  std::size_t count = 0;
  const auto idx = schreier_index(table, count);
  std::vector<Word> out;
  for (std::size_t c = 0; c < table.n_cosets; ++c)
    for (std::uint32_t g = 0; g < table.n_gens; ++g)
      if (idx[c * table.n_gens + g] >= 0)
        out.push_back(u[c] * Word::generator(g) * u[table.at(c, 2 * g)].inverse());
  return out;
}

} // namespace nilcoset::fpgrp
