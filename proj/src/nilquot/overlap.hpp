#pragma once

#include "nilcoset/nilquot.hpp"

#include <string>

namespace nilcoset::nilquot {

// Overlap tests on the first n generators of the collector's presentation.
// Triples are skipped when their weights add up beyond weight_cap.
template <class Check>
void overlap_tests(const Collector &col, std::size_t n, int weight_cap, Check &&check) {
  const PcPresentation &pc = col.presentation();
  auto unit = [&](std::uint32_t g, std::int64_t e) {
    ExpVec v = col.identity();
    v[g] = e;
    return v;
  };
  auto name = [](std::uint32_t g) { return "a" + std::to_string(g + 1); };

  for (std::uint32_t k = 0; k < n; ++k)
    for (std::uint32_t j = 0; j < k; ++j)
      for (std::uint32_t i = 0; i < j; ++i) {
        if (static_cast<long>(pc.weight[i]) + pc.weight[j] + pc.weight[k] > weight_cap)
          continue;
        const ExpVec lhs = col.product(col.collect({{k, 1}, {j, 1}}), unit(i, 1));
        ExpVec rhs = unit(k, 1);
        col.multiply(rhs, to_word(col.collect({{j, 1}, {i, 1}})));
        check(lhs, rhs, "(" + name(k) + " " + name(j) + ") " + name(i));
      }

  for (std::uint32_t j = 0; j < n; ++j) {
    const std::int64_t mj = pc.rel_order[j];
    if (mj > 0) {
      // a_j^m a_j = a_j a_j^m
      ExpVec lhs = col.collect(pc.power[j]);
      col.multiply(lhs, j, 1);
      ExpVec rhs = unit(j, 1);
      col.multiply(rhs, pc.power[j]);
      check(lhs, rhs, name(j) + "^" + std::to_string(mj + 1));
    }
    for (std::uint32_t i = 0; i < j; ++i) {
      const std::int64_t mi = pc.rel_order[i];
      if (mj > 0) {
        ExpVec lhs = col.collect(pc.power[j]);
        col.multiply(lhs, i, 1);
        ExpVec rhs = unit(j, mj - 1);
        col.multiply(rhs, to_word(col.collect({{j, 1}, {i, 1}})));
        check(lhs, rhs, name(j) + "^" + std::to_string(mj) + " " + name(i));
      } else {
        ExpVec lhs = unit(j, -1);
        col.multiply(lhs, to_word(col.collect({{j, 1}, {i, 1}})));
        check(lhs, unit(i, 1), name(j) + "^-1 (" + name(j) + " " + name(i) + ")");
      }
      if (mi > 0) {
        ExpVec lhs = col.collect({{j, 1}, {i, mi - 1}});
        col.multiply(lhs, i, 1);
        ExpVec rhs = unit(j, 1);
        col.multiply(rhs, pc.power[i]);
        check(lhs, rhs, name(j) + " " + name(i) + "^" + std::to_string(mi));
      } else {
        ExpVec lhs = col.collect({{j, 1}, {i, -1}});
        col.multiply(lhs, i, 1);
        check(lhs, unit(j, 1), "(" + name(j) + " " + name(i) + "^-1) " + name(i));
        if (mj == 0) {
          ExpVec l2 = col.collect({{j, -1}, {i, -1}});
          col.multiply(l2, i, 1);
          check(l2, unit(j, -1), "(" + name(j) + "^-1 " + name(i) + "^-1) " + name(i));
        }
      }
    }
  }
}

} // namespace nilcoset::nilquot
