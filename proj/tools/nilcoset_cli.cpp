// Command-line front end. Exit codes: 0 consistent/true, 1 hypothesis
// failed/false, 2 inconclusive, 3 input error.

#include "nilcoset/cosetequiv.hpp"
#include "nilcoset/fpgrp.hpp"
#include "nilcoset/harness.hpp"
#include "nilcoset/homology.hpp"
#include "nilcoset/nilquot.hpp"
#include "nilcoset/permgrp.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nilcoset;
using harness::Json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json base(const std::string &command) {
  Json j;
  j["schema"] = harness::kSchemaVersion;
  j["command"] = command;
  return j;
}

void write_json(const std::string &path, const Json &j) {
  if (path.empty())
    return;
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json invariants_json(const exactla::AbelianInvariants &a) {
  Json t = Json::array();
  for (const auto &x : a.torsion)
    t.push_back(x.get_str());
  return {{"free_rank", a.free_rank}, {"torsion", t}, {"text", a.to_string()}};
}

permgrp::PermGroup read_subgroup(const std::string &path, const permgrp::PermGroup &omega) {
  auto h = permgrp::read_perm_group_file(path);
  if (h.degree() != omega.degree())
    throw InputError(path + ": degree " + std::to_string(h.degree()) + " differs from the ambient group");
  if (!h.is_subgroup_of(omega))
    throw InputError(path + ": not a subgroup of the ambient group");
  return h;
}

int report_out(const harness::VerificationReport &rep, const std::string &json_path) {
  const Json j = rep.to_json();
  std::cout << "scenario " << rep.scenario << "\n";
  std::cout << "hypothesis " << harness::to_string(rep.hypothesis) << "\n";
  std::cout << j.dump(2) << "\n";
  std::cout << "verdict " << harness::to_string(rep.verdict) << "\n";
  write_json(json_path, j);
  return rep.exit_code();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Nilpotent quotients, homology and coset equivalence"};
  app.require_subcommand(1);
  std::string json_path;

  // nq
  std::string pres_file;
  std::size_t class_c = 1;
  bool dump_pc = false;
  auto *nq = app.add_subcommand("nq", "nilpotent quotient of a finite presentation");
  nq->add_option("presentation", pres_file)->required();
  nq->add_option("--class", class_c)->required();
  nq->add_flag("--dump-pc", dump_pc);
  nq->add_option("--json", json_path);

  // h1
  std::string perm_file;
  auto *h1 = app.add_subcommand("h1", "abelianization");
  h1->add_option("presentation", pres_file);
  h1->add_option("--perm", perm_file);
  h1->add_option("--json", json_path);

  // h2
  std::uint64_t max_order = 60;
  auto *h2 = app.add_subcommand("h2", "Schur multiplier of a finite permutation group");
  h2->add_option("--perm", perm_file)->required();
  h2->add_option("--max-order", max_order);
  h2->add_option("--json", json_path);

  // fiveterm
  std::string normal_file;
  std::uint64_t seed = 0;
  auto *five = app.add_subcommand("fiveterm", "five-term exact sequence of an extension");
  five->add_option("--perm", perm_file)->required();
  five->add_option("--normal", normal_file)->required();
  five->add_option("--max-order", max_order);
  five->add_option("--seed", seed);
  five->add_option("--json", json_path);

  // gassmann / zcert / diamond
  std::string sub1, sub2;
  std::uint64_t effort = 2000;
  auto *gass = app.add_subcommand("gassmann", "Gassmann equivalence via permutation characters");
  auto *zcert = app.add_subcommand("zcert", "integral coset equivalence certificate search");
  auto *diamond = app.add_subcommand("diamond", "nilpotent quotients of a coset-equivalent pair");
  auto *rigid = app.add_subcommand("rigidity", "isomorphism of a certified pair with a nilpotent member");
  for (auto *sc : {gass, zcert, diamond, rigid}) {
    sc->add_option("--perm", perm_file)->required();
    sc->add_option("--sub1", sub1)->required();
    sc->add_option("--sub2", sub2)->required();
    sc->add_option("--json", json_path);
  }
  for (auto *sc : {zcert, diamond, rigid}) {
    sc->add_option("--effort", effort);
    sc->add_option("--seed", seed);
  }
  diamond->add_option("--class", class_c)->required();

  // stallings
  std::string source_file, target_file, images_file, h2_cert;
  auto *stall = app.add_subcommand("stallings", "check the hypotheses and conclusion of Stallings' theorem");
  stall->add_option("--source", source_file)->required();
  stall->add_option("--target", target_file)->required();
  stall->add_option("--images", images_file)->required();
  stall->add_option("--class", class_c)->required();
  stall->add_option("--h2", h2_cert, "H_2 surjectivity certificate: verified, assumed or failed")
      ->check(CLI::IsMember({"verified", "assumed", "failed"}));
  stall->add_option("--json", json_path);

  // search
  std::string catalog_dir;
  auto *search = app.add_subcommand("search", "non-conjugate Gassmann pairs in a catalog of groups");
  search->add_option("--catalog", catalog_dir)->required();
  search->add_option("--json", json_path);

  // scott-demo
  std::size_t copies = 1;
  auto *scott = app.add_subcommand("scott-demo", "products of Scott's pair in PSL(2,29)");
  scott->add_option("--copies", copies);
  scott->add_option("--seed", seed);
  scott->add_option("--json", json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*nq) {
      const auto pres = fpgrp::read_presentation_file(pres_file);
      const auto pc = nilquot::nilpotent_quotient(pres, class_c);
      Json j = base("nq");
      j["input"] = harness::fingerprint(slurp(pres_file));
      j["class"] = class_c;
      Json layers = Json::array();
      for (const auto &l : nilquot::layer_invariants(pc, class_c)) {
        layers.push_back(invariants_json(l));
        std::cout << "layer " << layers.size() << ": " << l.to_string() << "\n";
      }
      j["layers"] = layers;
      const auto info = nilquot::order_or_hirsch(pc);
      j["order"] = info.to_string();
      j["generators"] = pc.size();
      std::cout << info.to_string() << "\n";
      if (dump_pc) {
        const std::string d = nilquot::dump(pc);
        std::cout << d;
        j["pc"] = d;
      }
      write_json(json_path, j);
      return 0;
    }
    if (*h1) {
      if (pres_file.empty() == perm_file.empty())
        throw InputError("h1 needs either a presentation file or --perm");
      Json j = base("h1");
      exactla::AbelianInvariants a;
      if (!perm_file.empty()) {
        a = homology::h1_perm(permgrp::read_perm_group_file(perm_file));
        j["input"] = harness::fingerprint(slurp(perm_file));
      } else {
        a = homology::h1_fp(fpgrp::read_presentation_file(pres_file));
        j["input"] = harness::fingerprint(slurp(pres_file));
      }
      j["H1"] = invariants_json(a);
      std::cout << "H_1 = " << a.to_string() << "\n";
      write_json(json_path, j);
      return 0;
    }
    if (*h2) {
      const auto g = permgrp::read_perm_group_file(perm_file);
      homology::H2Options o;
      o.max_order = max_order;
      const auto a = homology::h2_finite_bar(g, o);
      Json j = base("h2");
      j["input"] = harness::fingerprint(slurp(perm_file));
      j["order"] = g.order().get_str();
      j["H2"] = invariants_json(a);
      std::cout << "H_2 = " << a.to_string() << "\n";
      write_json(json_path, j);
      return 0;
    }
    if (*five) {
      const auto g = permgrp::read_perm_group_file(perm_file);
      const auto n = read_subgroup(normal_file, g);
      homology::FiveTermOptions o;
      o.max_order = max_order;
      o.section_seed = seed;
      const auto r = homology::five_term_check(g, n, o);
      Json j = base("fiveterm");
      j["inputs"] = {{"group", harness::fingerprint(slurp(perm_file))}, {"normal", harness::fingerprint(slurp(normal_file))}};
      Json groups = Json::array();
      for (const auto &x : r.groups)
        groups.push_back(invariants_json(x));
      j["groups"] = groups;
      j["compositions_zero"] = r.compositions_zero;
      j["exact"] = r.exact;
      j["all_exact"] = r.all_exact();
      std::cout << r.to_string();
      write_json(json_path, j);
      return r.all_exact() ? 0 : 1;
    }
    if (*gass || *zcert || *diamond || *rigid) {
      const auto omega = permgrp::read_perm_group_file(perm_file);
      const auto a = read_subgroup(sub1, omega), b = read_subgroup(sub2, omega);
      cosetequiv::CertifyOptions co;
      co.effort = effort;
      co.seed = seed;
      if (*diamond || *rigid) {
        harness::DiamondOptions d;
        d.certify = co;
        auto rep = *diamond ? harness::verify_diamond(omega, a, b, class_c, d) : harness::corollary_rig_check(omega, a, b, d);
        return report_out(rep, json_path);
      }
      Json j = base(*gass ? "gassmann" : "zcert");
      j["inputs"] = {{"omega", harness::fingerprint(slurp(perm_file))},
                     {"sub1", harness::fingerprint(slurp(sub1))},
                     {"sub2", harness::fingerprint(slurp(sub2))}};
      if (*gass) {
        const auto ob = cosetequiv::gassmann_obstruction(omega, a, b);
        j["gassmann"] = !ob.has_value();
        if (ob)
          j["obstruction"] = ob->to_string();
        std::cout << "gassmann " << (ob ? "false: " + ob->to_string() : "true") << "\n";
        write_json(json_path, j);
        return ob ? 1 : 0;
      }
      const auto r = cosetequiv::z_coset_certify(omega, a, b, co);
      j["effort"] = effort;
      j["seed"] = seed;
      j["result"] = harness::certify_json(r);
      std::cout << "outcome " << cosetequiv::to_string(r.outcome) << "\n" << r.transcript.to_string();
      if (r.certificate) {
        std::cout << "coefficients";
        for (auto c : r.certificate->coefficients)
          std::cout << " " << c;
        std::cout << "\ndeterminant " << r.certificate->determinant.get_str() << "\n";
        j["result"]["verified"] = cosetequiv::verify_certificate(omega, a, b, *r.certificate);
      }
      if (r.obstruction)
        std::cout << r.obstruction->to_string() << "\n";
      write_json(json_path, j);
      return r.outcome == cosetequiv::CertifyResult::Outcome::certified    ? 0
             : r.outcome == cosetequiv::CertifyResult::Outcome::obstructed ? 1
                                                                            : 2;
    }
    if (*stall) {
      const auto src = fpgrp::read_presentation_file(source_file);
      const auto tgt = fpgrp::read_presentation_file(target_file);
      std::istringstream lines(slurp(images_file));
      std::vector<fpgrp::Word> imgs;
      std::string line;
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
          continue;
        imgs.push_back(fpgrp::parse_word(line, tgt.names));
      }
      std::optional<harness::H2Status> cert;
      if (h2_cert == "verified")
        cert = harness::H2Status::verified;
      else if (h2_cert == "failed")
        cert = harness::H2Status::failed;
      else if (h2_cert == "assumed")
        cert = harness::H2Status::assumed;
      const fpgrp::FpHom hom(src, tgt, imgs);
      return report_out(harness::verify_stallings(hom, class_c, cert), json_path);
    }
    if (*search) {
      std::vector<std::string> files;
      for (const auto &e : std::filesystem::directory_iterator(catalog_dir))
        if (e.is_regular_file())
          files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
      std::vector<permgrp::PermGroup> groups;
      for (const auto &f : files)
        groups.push_back(permgrp::read_perm_group_file(f));
      const auto res = cosetequiv::gassmann_pair_search(groups);
      Json j = base("search");
      Json entries = Json::array();
      for (std::size_t k = 0; k < files.size(); ++k) {
        Json e;
        e["file"] = std::filesystem::path(files[k]).filename().string();
        e["input"] = harness::fingerprint(slurp(files[k]));
        e["order"] = groups[k].order().get_str();
        Json pairs = Json::array();
        for (const auto &p : res.pairs)
          if (p.catalog_index == k)
            pairs.push_back({{"order", p.gamma.order().get_str()},
                             {"gamma", permgrp::format_perm_group(p.gamma)},
                             {"lambda", permgrp::format_perm_group(p.lambda)}});
        for (const auto &[idx, why] : res.skipped)
          if (idx == k)
            e["skipped"] = why;
        std::cout << e["file"].get<std::string>() << ": " << pairs.size() << " pair(s)"
                  << (e.contains("skipped") ? " [skipped: " + e["skipped"].get<std::string>() + "]" : "") << "\n";
        for (const auto &p : pairs)
          std::cout << "  order " << p["order"].get<std::string>() << "\n"
                    << p["gamma"].get<std::string>() << "  vs\n"
                    << p["lambda"].get<std::string>();
        e["pairs"] = pairs;
        entries.push_back(std::move(e));
      }
      j["catalog"] = entries;
      write_json(json_path, j);
      return 0;
    }
    if (*scott)
      return report_out(harness::scott_demo(copies, seed), json_path);
  } catch (const InputError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const fpgrp::PresentationError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const fpgrp::HomError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const permgrp::GroupError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
