// Acceptance criteria, one PASS/FAIL line each.

#include "nilcoset/cosetequiv.hpp"
#include "nilcoset/harness.hpp"
#include "nilcoset/homology.hpp"
#include "nilcoset/nilquot.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace nilcoset;
using permgrp::Permutation;
using permgrp::PermGroup;

namespace {

const std::string data_dir = NILCOSET_DATA_DIR;
const std::string cli = NILCOSET_CLI;

struct Outcome {
  bool pass = false;
  std::string detail;
};

PermGroup read_group(const std::string &rel) { return permgrp::read_perm_group_file(data_dir + "/" + rel); }

PermGroup conjugate(const PermGroup &h, const Permutation &x) {
  std::vector<Permutation> gens;
  for (const auto &s : h.generators())
    gens.push_back(s.conjugate_by(x));
  return {h.degree(), gens};
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

long mobius(long n) {
  long m = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0)
        return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

long witt(long n, long j) {
  long s = 0;
  for (long d = 1; d <= j; ++d)
    if (j % d == 0) {
      long p = 1;
      for (long k = 0; k < j / d; ++k)
        p *= n;
      s += mobius(d) * p;
    }
  return s / j;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string &args, const std::string &stdout_path) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + stdout_path + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------

Outcome scott_pair_reproduced() {
  const auto t = std::chrono::steady_clock::now();
  const auto rep = harness::scott_demo(1, 0);
  const double s = seconds_since(t);
  const auto &p = rep.hypothesis_checks["product"];
  const auto &f = rep.hypothesis_checks["factor"];
  const bool ok = p["order"] == "12180" && p["index"] == "203" && f["conjugate"] == false &&
                  rep.comparisons[0]["gassmann"] == true && rep.verdict == harness::Verdict::consistent && s <= 60;
  return {ok, "order " + p["order"].get<std::string>() + ", index " + p["index"].get<std::string>() +
                  ", non-conjugate, Gassmann, " + fmt(s)};
}

Outcome witt_free_rank2() {
  const auto t = std::chrono::steady_clock::now();
  const auto pc = nilquot::nilpotent_quotient(fpgrp::FinitePresentation::free_group(2), 6);
  const auto layers = nilquot::layer_invariants(pc, 6);
  const double s = seconds_since(t);
  bool ok = layers.size() == 6 && s <= 10;
  std::string ranks;
  for (std::size_t j = 1; j <= layers.size(); ++j) {
    ok &= layers[j - 1].free_rank == static_cast<std::size_t>(witt(2, static_cast<long>(j))) &&
          layers[j - 1].torsion.empty();
    ranks += (j > 1 ? "," : "") + std::to_string(layers[j - 1].free_rank);
  }
  return {ok, "F2 class 6 ranks (" + ranks + "), " + fmt(s)};
}

Outcome schur_multipliers() {
  using namespace permgrp;
  struct Case {
    std::string name;
    PermGroup g;
    std::string expected;
  };
  std::vector<Case> cases;
  for (std::size_t n = 1; n <= 6; ++n)
    cases.push_back({"C" + std::to_string(n), cyclic(n), "0"});
  cases.push_back({"V4", dihedral(2), "Z/2"});
  cases.push_back({"D8", dihedral(4), "Z/2"});
  cases.push_back({"Q8", metacyclic(4, 2, 3, 2), "0"});
  bool ok = true;
  for (const auto &c : cases) {
    const auto norm = homology::h2_finite_bar(c.g, {60, true});
    const auto unnorm = homology::h2_finite_bar(c.g, {60, false});
    ok &= norm == unnorm && norm.to_string() == c.expected;
  }
  const auto t = std::chrono::steady_clock::now();
  const auto a5 = homology::h2_finite_bar(alternating(5), {60, true});
  const double s = seconds_since(t);
  ok &= a5.to_string() == "Z/2";
  return {ok, std::to_string(cases.size()) + " small groups match the unnormalized complex; H_2(A5) = " +
                  a5.to_string() + " in " + fmt(s)};
}

Outcome five_term_sweep() {
  const auto t = std::chrono::steady_clock::now();
  std::size_t pairs = 0, exact = 0, h2_agree = 0;
  for (const auto &e : harness::small_catalog()) {
    const auto h2g = homology::h2_finite_bar(e.group);
    for (const auto &n : harness::normal_subgroups(e.group)) {
      const auto r = homology::five_term_check(e.group, n);
      ++pairs;
      exact += r.all_exact() && r.compositions_zero == std::vector<bool>{true, true, true};
      h2_agree += r.groups[0] == h2g;
    }
  }
  const double s = seconds_since(t);
  return {exact == pairs && h2_agree == pairs && pairs > 0,
          std::to_string(exact) + "/" + std::to_string(pairs) + " (G, N) pairs exact, " + fmt(s)};
}

Outcome mackey_identity() {
  using namespace permgrp;
  const std::vector<PermGroup> omegas{symmetric(4), symmetric(5), alternating(5), psl2(7), dihedral(8),
                                      metacyclic(3, 4, 2, 0), alternating(4)};
  std::mt19937_64 rng(2024);
  std::uint64_t state = 99;
  std::size_t tested = 0, agree = 0;
  std::vector<std::vector<PermGroup>> subs;
  for (const auto &o : omegas) {
    std::vector<PermGroup> small_index;
    for (const auto &h : subgroups_up_to_conjugacy(o).representatives)
      if (o.order() / h.order() <= 30)
        small_index.push_back(h);
    subs.push_back(std::move(small_index));
  }
  while (tested < 25) {
    const std::size_t k = rng() % omegas.size();
    const auto &o = omegas[k];
    const auto gamma = conjugate(subs[k][rng() % subs[k].size()], o.random_element(state));
    const auto lambda = conjugate(subs[k][rng() % subs[k].size()], o.random_element(state));
    const auto dc = cosetequiv::double_cosets(o, gamma, lambda);
    const auto lattice = cosetequiv::intertwiner_lattice(o, gamma, lambda);
    ++tested;
    agree += dc.size() == lattice.size();
  }
  return {agree == tested, std::to_string(agree) + "/" + std::to_string(tested) +
                               " random triples: double cosets = intertwiner lattice rank"};
}

Outcome pair_search() {
  namespace fs = std::filesystem;
  std::vector<std::string> names;
  for (const auto &f : fs::directory_iterator(data_dir + "/catalog"))
    names.push_back(f.path().filename().string());
  std::sort(names.begin(), names.end());
  std::vector<PermGroup> catalog;
  for (const auto &n : names)
    catalog.push_back(read_group("catalog/" + n));
  const auto res = cosetequiv::gassmann_pair_search(catalog);
  bool ok = res.skipped.empty() && !res.pairs.empty();
  std::string where;
  const auto ka = read_group("groups/klein_a.grp"), kb = read_group("groups/klein_b.grp");
  bool klein_found = false;
  for (const auto &p : res.pairs) {
    ok &= names[p.catalog_index] == "sym6.grp";
    ok &= !permgrp::is_conjugate_subgroups(catalog[p.catalog_index], p.gamma, p.lambda).conjugate;
    ok &= cosetequiv::gassmann_equivalent(catalog[p.catalog_index], p.gamma, p.lambda);
    const auto &g = catalog[p.catalog_index];
    klein_found |= (permgrp::is_conjugate_subgroups(g, p.gamma, ka).conjugate &&
                    permgrp::is_conjugate_subgroups(g, p.lambda, kb).conjugate) ||
                   (permgrp::is_conjugate_subgroups(g, p.gamma, kb).conjugate &&
                    permgrp::is_conjugate_subgroups(g, p.lambda, ka).conjugate);
  }
  ok &= klein_found;
  return {ok, std::to_string(res.pairs.size()) + " pair(s) over " + std::to_string(catalog.size()) +
                  " groups, all in Sym(6), Klein-four pair present"};
}

struct DiamondTally {
  std::size_t reports = 0, counterexamples = 0, no_answers = 0, certified = 0;
};

void tally(DiamondTally &t, const harness::VerificationReport &rep) {
  ++t.reports;
  t.counterexamples += rep.verdict == harness::Verdict::counterexample_candidate;
  for (const auto &c : rep.comparisons)
    t.no_answers += c["isomorphic"] == "no";
  t.certified += rep.hypothesis == harness::Hypothesis::holds;
}

std::vector<std::pair<PermGroup, std::pair<PermGroup, PermGroup>>> conjugate_pairs(std::size_t count) {
  std::vector<PermGroup> omegas;
  for (const auto &e : harness::small_catalog())
    if (!e.group.is_abelian())
      omegas.push_back(e.group);
  omegas.push_back(permgrp::symmetric(4));
  omegas.push_back(permgrp::symmetric(5));
  std::vector<std::vector<PermGroup>> subs;
  for (const auto &o : omegas)
    subs.push_back(permgrp::subgroups_up_to_conjugacy(o).representatives);
  std::mt19937_64 rng(7);
  std::uint64_t state = 17;
  std::vector<std::pair<PermGroup, std::pair<PermGroup, PermGroup>>> out;
  while (out.size() < count) {
    const std::size_t k = rng() % omegas.size();
    const auto &h = subs[k][rng() % subs[k].size()];
    out.push_back({omegas[k], {h, conjugate(h, omegas[k].random_element(state))}});
  }
  return out;
}

Outcome diamond_checks() {
  const auto t = std::chrono::steady_clock::now();
  DiamondTally conj;
  std::mt19937_64 rng(11);
  for (const auto &[omega, pair] : conjugate_pairs(100))
    tally(conj, harness::verify_diamond(omega, pair.first, pair.second, 1 + rng() % 3));
  DiamondTally special;
  const auto s6 = harness::verify_diamond(read_group("groups/sym6.grp"), read_group("groups/klein_a.grp"),
                                          read_group("groups/klein_b.grp"), 3);
  tally(special, s6);
  const auto sp = permgrp::scott_pair();
  const auto scott = harness::verify_diamond(sp.omega, sp.l0, sp.l1, 4);
  tally(special, scott);
  const double s = seconds_since(t);
  const bool ok = conj.counterexamples == 0 && conj.no_answers == 0 && conj.certified == conj.reports &&
                  special.counterexamples == 0 && special.no_answers == 0 &&
                  s6.verdict == harness::Verdict::consistent && scott.verdict == harness::Verdict::consistent;
  return {ok, std::to_string(conj.certified) + "/100 conjugate pairs certified, no counterexamples; Sym(6) pair " +
                  harness::to_string(s6.hypothesis) + "/" + harness::to_string(s6.verdict) + ", Scott pair " +
                  harness::to_string(scott.hypothesis) + "/" + harness::to_string(scott.verdict) + ", " + fmt(s)};
}

Outcome rigidity_checks() {
  std::size_t checked = 0, consistent = 0, isomorphic = 0, certified = 0;
  for (const auto &[omega, pair] : conjugate_pairs(60)) {
    if (!permgrp::is_nilpotent(pair.second))
      continue;
    const auto rep = harness::corollary_rig_check(omega, pair.first, pair.second);
    ++checked;
    consistent += rep.verdict == harness::Verdict::consistent;
    certified += rep.hypothesis == harness::Hypothesis::holds;
    isomorphic += rep.comparisons.size() == 1 && rep.comparisons[0]["isomorphic"] == "yes";
  }
  const auto klein = harness::corollary_rig_check(read_group("groups/sym6.grp"), read_group("groups/klein_a.grp"),
                                                  read_group("groups/klein_b.grp"));
  const bool ok = checked > 0 && consistent == checked && certified == checked && isomorphic == checked &&
                  klein.verdict == harness::Verdict::consistent && klein.comparisons[0]["isomorphic"] == "yes";
  return {ok, std::to_string(isomorphic) + "/" + std::to_string(checked) +
                  " certified pairs with a nilpotent member are isomorphic; Sym(6) Klein pair " +
                  harness::to_string(klein.verdict)};
}

Outcome stallings_weight5() {
  const auto f2 = fpgrp::FinitePresentation::free_group(2);
  const auto target = fpgrp::read_presentation_file(data_dir + "/presentations/weight5.pres");
  const fpgrp::FpHom h(f2, target, {fpgrp::Word::generator(0), fpgrp::Word::generator(1)});
  const auto rep = harness::verify_stallings(h, 4);
  bool iso = rep.comparisons.size() == 4;
  for (const auto &c : rep.comparisons)
    iso &= c["induced_map"] == "isomorphism";
  const bool ok = rep.hypothesis_checks["H1"]["status"] == "holds" && iso &&
                  rep.verdict != harness::Verdict::counterexample_candidate;
  return {ok, "H1 " + rep.hypothesis_checks["H1"]["status"].get<std::string>() + ", H2 " +
                  rep.hypothesis_checks["H2_onto"]["status"].get<std::string>() + ", N_j iso for j <= 4: " +
                  (iso ? "yes" : "no") + ", verdict " + harness::to_string(rep.verdict)};
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("nilcoset_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::string> commands{
      "diamond --perm " + data_dir + "/groups/sym6.grp --sub1 " + data_dir + "/groups/klein_a.grp --sub2 " +
          data_dir + "/groups/klein_b.grp --class 2 --effort 200",
      "scott-demo --copies 1 --seed 3",
      "nq " + data_dir + "/presentations/heisenberg.pres --class 3",
      "fiveterm --perm " + data_dir + "/groups/q8.grp --normal " + data_dir + "/groups/q8_center.grp"};
  bool ok = true;
  std::size_t idx = 0;
  for (const auto &c : commands) {
    std::string outputs[2], jsons[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      const auto base = dir / ("run" + std::to_string(idx) + "_" + std::to_string(k));
      codes[k] = run(c + " --json \"" + base.string() + ".json\"", base.string() + ".out");
      outputs[k] = slurp(base.string() + ".out");
      jsons[k] = slurp(base.string() + ".json");
    }
    ok &= codes[0] == codes[1] && codes[0] != 3 && !jsons[0].empty() && jsons[0] == jsons[1] &&
          outputs[0] == outputs[1];
    ++idx;
  }
  fs::remove_all(dir);
  return {ok, std::to_string(commands.size()) + " CLI commands run twice with byte-identical JSON and output"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Scott pair in PSL(2,29)", scott_pair_reproduced},
      {"Witt formula for N_j(F2)", witt_free_rank2},
      {"Schur multipliers", schur_multipliers},
      {"five-term exactness sweep", five_term_sweep},
      {"Mackey rank identity", mackey_identity},
      {"Gassmann pair search", pair_search},
      {"diamond verification", diamond_checks},
      {"rigidity corollary", rigidity_checks},
      {"Stallings weight-5 example", stallings_weight5},
      {"deterministic CLI output", cli_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
