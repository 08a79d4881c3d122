#pragma once

#include "nilcoset/harness.hpp"

namespace nilcoset::harness {

inline Json layer_json(const nilquot::PcPresentation &pc, std::size_t j) {
  Json out = Json::array();
  for (const auto &l : nilquot::layer_invariants(pc, j))
    out.push_back(l.to_string());
  return out;
}

inline std::string group_text(const PermGroup &g) { return permgrp::format_perm_group(g); }

} // namespace nilcoset::harness
