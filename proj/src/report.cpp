#include "wedgelab/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <Eigen/Core>

#include "wedgelab/random_state.hpp"

namespace wedgelab {

namespace {

// Non-finite doubles become null in JSON.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

bool RunReport::all_pass() const {
  if (error) return false;
  for (const auto& c : checks)
    if (!c.skipped && c.pass.has_value() && !*c.pass) return false;
  return true;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["kind"] = std::string(to_string(r.kind));
  j["params"] = {{"modes", r.modes}, {"particles", r.particles}, {"lambda", r.lambda_descriptor}};
  j["params"]["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["observed"] = number(r.observed);
  j["bound"] = number(r.bound);
  j["margin"] = number(r.margin);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass ? Json(*r.pass) : Json(nullptr);
  j["skipped"] = r.skipped;
  if (!r.note.empty()) j["note"] = r.note;
  Json d = Json::object();
  for (const auto& [k, v] : r.details) d[k] = number(v);
  j["details"] = std::move(d);
  return j;
}

Json to_json(const RunReport& r) {
  Json j;
  j["meta"] = {{"schema_version", kReportSchemaVersion},
               {"artifact", "wedgelab"},
               {"version", std::string(kArtifactVersion)},
               {"rng", std::string(kRngName)},
               {"environment", {{"compiler", __VERSION__},
                                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                              std::to_string(EIGEN_MINOR_VERSION)}}}};
  j["config"] = r.config;
  j["config"]["command"] = r.command;
  j["config"]["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["results"] = r.results;
  j["summary"] = {{"checks", r.checks.size()},
                  {"failed", std::count_if(r.checks.begin(), r.checks.end(),
                                           [](const auto& c) { return !c.skipped && c.pass && !*c.pass; })},
                  {"skipped", std::count_if(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.skipped; })},
                  {"all_pass", r.all_pass()}};
  j["timing"] = r.wall_seconds ? Json{{"enabled", true}, {"wall_seconds", *r.wall_seconds}}
                               : Json{{"enabled", false}};
  if (r.error) j["error"] = *r.error;
  return j;
}

std::string to_csv(const RunReport& r) {
  std::set<std::string> keys;
  for (const auto& c : r.checks)
    for (const auto& [k, v] : c.details) keys.insert(k);
  std::ostringstream out;
  out << "kind,modes,particles,lambda,seed,observed,bound,margin,tolerance,pass,skipped,note";
  for (const auto& k : keys) out << ',' << k;
  out << '\n';
  for (const auto& c : r.checks) {
    out << to_string(c.kind) << ',' << c.modes << ',' << c.particles << ',' << csv_escape(c.lambda_descriptor) << ','
        << (c.seed ? std::to_string(*c.seed) : std::string()) << ',' << csv_number(c.observed) << ','
        << csv_number(c.bound) << ',' << csv_number(c.margin) << ',' << csv_number(c.tolerance) << ','
        << (c.pass ? (*c.pass ? "true" : "false") : "") << ',' << (c.skipped ? "true" : "false") << ','
        << csv_escape(c.note);
    for (const auto& k : keys) {
      out << ',';
      if (auto it = c.details.find(k); it != c.details.end()) out << csv_number(it->second);
    }
    out << '\n';
  }
  return out.str();
}

void write_report(const RunReport& r, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path.string());
  if (path.extension() == ".csv")
    out << to_csv(r);
  else
    out << to_json(r).dump(2) << '\n';
}

}  // namespace wedgelab
