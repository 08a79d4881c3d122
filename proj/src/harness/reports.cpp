#include "nilcoset/harness.hpp"

#include <cstdio>

namespace nilcoset::harness {

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::consistent:
    return "consistent-with-theorem";
  case Verdict::counterexample_candidate:
    return "counterexample-candidate";
  default:
    return "inconclusive";
  }
}

std::string to_string(Hypothesis h) {
  switch (h) {
  case Hypothesis::holds:
    return "holds";
  case Hypothesis::assumed:
    return "assumed";
  case Hypothesis::failed:
    return "failed";
  default:
    return "unverified";
  }
}

std::string to_string(H2Status s) {
  switch (s) {
  case H2Status::verified:
    return "verified";
  case H2Status::failed:
    return "failed";
  default:
    return "assumed";
  }
}

Json VerificationReport::to_json() const {
  Json j;
  j["schema"] = kSchemaVersion;
  j["scenario"] = scenario;
  j["inputs"] = inputs;
  j["hypothesis"] = to_string(hypothesis);
  j["hypothesis_checks"] = hypothesis_checks;
  j["comparisons"] = comparisons;
  j["verdict"] = to_string(verdict);
  j["budget"] = budget;
  j["notes"] = notes;
  return j;
}

int VerificationReport::exit_code() const {
  if (verdict == Verdict::counterexample_candidate || hypothesis == Hypothesis::failed)
    return 1;
  if (verdict == Verdict::inconclusive)
    return 2;
  return 0;
}

std::string fingerprint(const std::string &data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json certify_json(const cosetequiv::CertifyResult &r) {
  Json j;
  j["outcome"] = cosetequiv::to_string(r.outcome);
  if (r.certificate) {
    j["coefficients"] = r.certificate->coefficients;
    j["determinant"] = r.certificate->determinant.get_str();
  }
  if (r.obstruction)
    j["obstruction"] = r.obstruction->to_string();
  const auto &t = r.transcript;
  Json local = Json::array();
  for (const auto &l : t.local) {
    const char *status = l.status == cosetequiv::LocalCheck::Status::invertible_found ? "invertible found"
                         : l.status == cosetequiv::LocalCheck::Status::obstructed    ? "obstructed"
                                                                                     : "inconclusive";
    local.push_back({{"p", l.prime}, {"status", status}, {"exhaustive", l.exhaustive}, {"evaluations", l.evaluations}});
  }
  j["transcript"] = {{"index", t.index},
                     {"hecke_rank", t.hecke_rank},
                     {"local", local},
                     {"l1_shells_swept", t.box_bound},
                     {"sweep_evaluations", t.box_evaluations},
                     {"random_evaluations", t.random_evaluations},
                     {"exact_determinants", t.exact_determinants}};
  return j;
}

} // namespace nilcoset::harness
