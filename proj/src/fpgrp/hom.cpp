#include "nilcoset/fpgrp.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace nilcoset::fpgrp {

Permutation evaluate(const Word &w, const std::vector<Permutation> &images, std::size_t degree) {
  Permutation p(degree);
  for (const auto &s : w.syllables()) {
    if (s.gen >= images.size())
      throw PresentationError("evaluate: generator index out of range");
    p = p * images[s.gen].pow(s.exp);
  }
  return p;
}

PermHom::PermHom(FinitePresentation src, PermGroup tgt, std::vector<Permutation> imgs)
    : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
  if (images.size() != source.n_gens)
    throw HomError("homomorphism needs one image per source generator", 0);
  for (const auto &x : images)
    if (x.degree() != target.degree() || !target.contains(x))
      throw HomError("generator image " + x.to_cycle_string() + " is not in the target group", 0);
  for (std::size_t i = 0; i < source.relators.size(); ++i)
    if (!apply(source.relators[i]).is_identity())
      throw HomError("relator " + std::to_string(i + 1) + " (" + source.relators[i].to_string(source.names) +
                         ") does not map to the identity",
                     i);
}

PermGroup perm_image(const PermHom &hom) { return PermGroup(hom.target.degree(), hom.images); }

FpHom::FpHom(FinitePresentation src, FinitePresentation tgt, std::vector<Word> imgs)
    : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
  if (images.size() != source.n_gens)
    throw HomError("homomorphism needs one image per source generator", 0);
  for (const auto &w : images)
    if (!w.empty() && w.max_generator() >= target.n_gens)
      throw HomError("generator image uses an undeclared target generator", 0);
  const IntMatrix rel_t = abelianization_matrix(target).transpose();
  for (std::size_t i = 0; i < source.relators.size(); ++i) {
    const Word img = source.relators[i].substitute(images);
    if (img.empty())
      continue;
    check = FpHomCheck::abelianization_only;
    exactla::IntVector v(target.n_gens);
    for (const auto &s : img.syllables())
      v[s.gen] += static_cast<long>(s.exp);
    bool zero = std::all_of(v.begin(), v.end(), [](const exactla::Integer &x) { return x == 0; });
    if (!zero && (rel_t.cols() == 0 || !exactla::solve_integer(rel_t, v)))
      throw HomError("relator " + std::to_string(i + 1) + " does not map to the identity (nonzero in the " +
                         "target abelianization)",
                     i);
  }
}

FinitePresentation presentation_of(const PermGroup &g, const std::vector<std::string> &names) {
  const std::size_t n = g.generators().size();
  const auto order = g.order_u64();
  // Breadth-first words for every element.
  std::vector<Permutation> elems{g.identity()};
  std::vector<Word> words{Word()};
  std::unordered_map<Permutation, std::size_t, permgrp::PermutationHash> index{{elems[0], 0}};
  std::vector<Word> rels;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::uint32_t s = 0; s < n; ++s) {
      Permutation y = elems[i] * g.generators()[s];
      Word w = words[i] * Word::generator(s);
      auto it = index.find(y);
      if (it == index.end()) {
        index.emplace(y, elems.size());
        elems.push_back(std::move(y));
        words.push_back(std::move(w));
      } else {
        Word r = w * words[it->second].inverse();
        if (!r.empty())
          rels.push_back(std::move(r));
      }
    }
  // Cyclically reduce and keep one relator per rotation/inversion class.
  std::set<std::vector<std::int32_t>> classes;
  std::vector<Word> distinct;
  for (const auto &r : rels) {
    auto l = r.letters();
    std::size_t a = 0, b = l.size();
    while (b - a >= 2 && l[a] == -l[b - 1]) {
      ++a;
      --b;
    }
    std::vector<std::int32_t> core(l.begin() + static_cast<std::ptrdiff_t>(a), l.begin() + static_cast<std::ptrdiff_t>(b));
    std::vector<std::int32_t> inv(core.rbegin(), core.rend());
    for (auto &x : inv)
      x = -x;
    std::vector<std::int32_t> key = core;
    for (const auto *w : {&core, &inv})
      for (std::size_t k = 0; k < w->size(); ++k) {
        std::vector<std::int32_t> rot(w->begin() + static_cast<std::ptrdiff_t>(k), w->end());
        rot.insert(rot.end(), w->begin(), w->begin() + static_cast<std::ptrdiff_t>(k));
        key = std::min(key, rot);
      }
    if (classes.insert(key).second)
      distinct.push_back(Word::from_letters(core));
  }
  rels = std::move(distinct);
  std::stable_sort(rels.begin(), rels.end(), [](const Word &a, const Word &b) { return a.length() < b.length(); });
  auto nm = names.empty() ? default_names(n) : names;
  // Shortest prefix (by doubling) that already gives a group of order |G|.
  for (std::size_t k = 1; k < rels.size(); k *= 2) {
    FinitePresentation p(n, std::vector<Word>(rels.begin(), rels.begin() + static_cast<std::ptrdiff_t>(k)), nm);
    try {
      if (todd_coxeter(p, {}, 4 * order + 64).n_cosets == order)
        return p;
    } catch (const EnumerationLimit &) {
    }
  }
  return FinitePresentation(n, std::move(rels), std::move(nm));
}

} // namespace nilcoset::fpgrp
