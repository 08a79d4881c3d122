#include "nilcoset/permgrp.hpp"

#include <algorithm>

namespace nilcoset::permgrp {

std::vector<PermGroup> alt5_subgroup_classes(const PermGroup &g) {
  auto elems = g.elements();
  std::sort(elems.begin(), elems.end());
  std::vector<Permutation> threes;
  for (const auto &e : elems)
    if (e.order() == 3)
      threes.push_back(e);
  const auto classes = conjugacy_classes(g);

  std::vector<PermGroup> found;
  std::vector<PermGroup> seen; // every subgroup already tested, conjugate or not
  for (const auto &x : classes.representatives) {
    if (x.order() != 2)
      continue;
    for (const auto &y : threes) {
      if ((x * y).order() != 5)
        continue;
      if (std::any_of(seen.begin(), seen.end(), [&](const PermGroup &s) { return s.contains(x) && s.contains(y); }))
        continue;
      PermGroup l(g.degree(), {x, y});
      if (l.order() != 60)
        continue;
      seen.push_back(l);
      bool fresh = true;
      for (const auto &f : found)
        if (is_conjugate_subgroups(g, f, l).conjugate) {
          fresh = false;
          break;
        }
      if (fresh)
        found.push_back(std::move(l));
    }
  }
  return found;
}

ScottPair scott_pair() {
  PermGroup omega = psl2(29);
  auto reps = alt5_subgroup_classes(omega);
  if (reps.size() != 2)
    throw GroupError("scott_pair: expected 2 classes of Alt(5) in PSL(2,29), found " + std::to_string(reps.size()));
  return {omega, reps[0], reps[1]};
}

} // namespace nilcoset::permgrp
