#include <json.hpp>

#include "qball/verify.hpp"

namespace qball {

namespace {

using Json = nlohmann::ordered_json;

Json check_record(const RelationReport& r) {
  return Json{{"id", r.id}, {"headroom", r.headroom}, {"residual", r.residual}, {"pass", r.pass}};
}

}  // namespace

std::string to_json(const VerifyConfig& config, const CheckSuite& suite) {
  Json suites = Json::array();
  for (const auto& s : config.suites.empty() ? suite_names() : config.suites) suites.push_back(s);
  Json doc;
  doc["context"] = Json{{"n", config.n},           {"q", config.qs},       {"cutoff", config.cutoff},
                        {"tolerance", config.tol}, {"seed", config.seed},  {"suites", suites},
                        {"angles", config.angles}};
  Json checks = Json::array();
  for (const auto& r : suite.reports()) checks.push_back(check_record(r));
  doc["checks"] = std::move(checks);
  doc["pass"] = suite.all_pass();
  return doc.dump(2) + "\n";
}

std::string to_ndjson(const CheckSuite& suite) {
  std::string out;
  for (const auto& r : suite.reports()) {
    Json rec = check_record(r);
    rec["tolerance"] = r.tolerance;
    rec["n"] = r.context.n;
    rec["q"] = r.context.q;
    rec["cutoff"] = r.context.cutoff;
    rec["rep"] = r.context.rep;
    out += rec.dump() + "\n";
  }
  return out;
}

}  // namespace qball
