#include "nilcoset/nilquot.hpp"

#include <sstream>

namespace nilcoset::nilquot {

std::vector<AbelianInvariants> layer_invariants(const PcPresentation &pc, std::size_t class_c) {
  const std::size_t top = std::max(class_c, pc.max_weight());
  std::vector<AbelianInvariants> out;
  for (std::size_t w = 1; w <= top; ++w) {
    std::size_t lo = 0;
    while (lo < pc.size() && pc.weight[lo] < static_cast<int>(w))
      ++lo;
    std::size_t hi = lo;
    while (hi < pc.size() && pc.weight[hi] == static_cast<int>(w))
      ++hi;
    exactla::IntMatrix rel(0, hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      if (pc.rel_order[k] == 0)
        continue;
      exactla::IntVector row(hi - lo);
      row[k - lo] = static_cast<long>(pc.rel_order[k]);
      for (const auto &[g, e] : pc.power[k])
        if (g >= lo && g < hi)
          row[g - lo] -= static_cast<long>(e);
      rel.append_row(row);
    }
    out.push_back(exactla::cokernel_invariants(rel, hi - lo));
  }
  return out;
}

OrderInfo order_or_hirsch(const PcPresentation &pc) {
  OrderInfo info;
  for (auto m : pc.rel_order) {
    if (m == 0) {
      info.finite = false;
      ++info.hirsch;
    } else {
      info.finite_relative_orders *= static_cast<long>(m);
    }
  }
  info.order = info.finite ? info.finite_relative_orders : Integer(0);
  return info;
}

std::string OrderInfo::to_string() const {
  if (finite)
    return "order " + order.get_str();
  return "infinite, Hirsch length " + std::to_string(hirsch) + ", finite relative orders " +
         finite_relative_orders.get_str();
}

namespace {

fpgrp::Word to_fp_word(const PcWord &w) {
  std::vector<fpgrp::Syllable> syl;
  for (const auto &[g, e] : w)
    syl.push_back({g, e});
  return fpgrp::Word(std::move(syl));
}

std::string vec_string(const PcWord &w, std::size_t n) {
  ExpVec v = to_expvec(w, n);
  std::string out = "(";
  for (std::size_t i = 0; i < n; ++i) {
    if (i)
      out += " ";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

} // namespace

fpgrp::FinitePresentation to_finite_presentation(const PcPresentation &pc) {
  const std::size_t n = pc.size();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k)
    names.push_back("a" + std::to_string(k + 1));
  std::vector<fpgrp::Word> rels;
  for (std::uint32_t k = 0; k < n; ++k)
    if (pc.rel_order[k] > 0)
      rels.push_back(fpgrp::Word::generator(k, pc.rel_order[k]) * to_fp_word(pc.power[k]).inverse());
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      rels.push_back(fpgrp::commutator(fpgrp::Word::generator(j), fpgrp::Word::generator(i)) *
                     to_fp_word(pc.comm[j][i]).inverse());
  return fpgrp::FinitePresentation(n, std::move(rels), std::move(names));
}

std::string dump(const PcPresentation &pc) {
  const std::size_t n = pc.size();
  std::ostringstream out;
  auto orig = [&](std::uint32_t x) {
    return x < pc.orig_names.size() ? pc.orig_names[x] : "x" + std::to_string(x + 1);
  };
  out << "pc-presentation class " << pc.max_weight() << "\n";
  out << "generators " << n << "\n";
  for (std::size_t k = 0; k < n; ++k) {
    out << "a" << k + 1 << " weight " << pc.weight[k] << " order ";
    if (pc.rel_order[k] == 0)
      out << "inf";
    else
      out << pc.rel_order[k];
    const Definition &d = pc.defs[k];
    if (d.kind == Definition::Kind::image)
      out << " def " << orig(d.x);
    else
      out << " def [a" << d.j + 1 << ",a" << d.i + 1 << "]";
    out << "\n";
  }
  out << "relations\n";
  for (std::size_t k = 0; k < n; ++k)
    if (pc.rel_order[k] > 0)
      out << "a" << k + 1 << "^" << pc.rel_order[k] << " = " << vec_string(pc.power[k], n) << "\n";
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!pc.comm[j][i].empty())
        out << "[a" << j + 1 << ",a" << i + 1 << "] = " << vec_string(pc.comm[j][i], n) << "\n";
  out << "images\n";
  for (std::uint32_t x = 0; x < pc.n_orig; ++x)
    out << orig(x) << " = " << vec_string(pc.images[x], n) << "\n";
  return out.str();
}

} // namespace nilcoset::nilquot
