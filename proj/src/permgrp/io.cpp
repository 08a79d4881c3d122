#include "nilcoset/permgrp.hpp"

#include <fstream>
#include <sstream>

namespace nilcoset::permgrp {

PermGroup read_perm_group(std::istream &in) {
  std::string line;
  std::size_t degree = 0;
  bool have_degree = false;
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first))
      continue;
    if (!have_degree) {
      if (first != "degree" || !(ls >> degree))
        throw GroupError("permutation group file must start with \"degree n\"");
      have_degree = true;
      continue;
    }
    gens.push_back(Permutation::parse(line, degree));
  }
  if (!have_degree)
    throw GroupError("permutation group file is empty");
  return {degree, gens};
}

PermGroup read_perm_group_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw GroupError("cannot open " + path);
  return read_perm_group(in);
}

std::string format_perm_group(const PermGroup &g) {
  std::string out = "degree " + std::to_string(g.degree()) + "\n";
  for (const auto &x : g.generators())
    out += x.to_cycle_string() + "\n";
  return out;
}

} // namespace nilcoset::permgrp
