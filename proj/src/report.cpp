#include "lagbih/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lagbih {

using nlohmann::json;

double RunConfig::tol(const std::string& name) const {
  auto it = tolerances.find(name);
  if (it == tolerances.end()) throw std::invalid_argument("unknown tolerance: " + name);
  return it->second;
}

void RunConfig::validate() const {
  for (int count : grid)
    if (count < 4) throw std::invalid_argument("grid counts must be >= 4 per axis");
  for (const auto& [name, value] : tolerances)
    if (!(value > 0.0)) throw std::invalid_argument("tolerance " + name + " must be positive");
  if (mu_root && (*mu_root < 0 || *mu_root > 3))
    throw std::invalid_argument("mu_root index must be in 0..3");
  if (format != "json" && format != "csv")
    throw std::invalid_argument("format must be json or csv");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

void apply_config_line(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "immersion") {
    config.immersion = value;
  } else if (key == "m") {
    config.m = std::stoi(value);
  } else if (key == "mu_root" || key == "mu-root") {
    config.mu_root = std::stoi(value);
  } else if (key == "mu") {
    config.mu_value = std::stod(value);
  } else if (key == "grid") {
    config.grid.clear();
    for (const auto& item : split(value, ',')) config.grid.push_back(std::stoi(item));
  } else if (key == "criteria") {
    config.criteria = split(value, ',');
  } else if (key == "out") {
    config.out_path = value;
  } else if (key == "format") {
    config.format = value;
  } else if (key == "workers") {
    config.workers = std::stoi(value);
  } else if (key == "seed") {
    config.seed = std::stoull(value);
  } else if (key == "gauge_checks" || key == "gauge-checks") {
    config.gauge_checks = std::stoi(value);
  } else if (key.rfind("tol-", 0) == 0) {
    config.tolerances[key.substr(4)] = std::stod(value);
  } else if (key.rfind("tol.", 0) == 0) {
    config.tolerances[key.substr(4)] = std::stod(value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  RunConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config parse error at line " + std::to_string(lineno));
    apply_config_line(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

namespace {

json criterion_to_json(const CriterionRecord& c) {
  json j;
  j["tangential_abs"] = c.tangential_abs;
  j["normal_abs"] = c.normal_abs;
  j["tangential_rel"] = c.tangential_rel;
  j["normal_rel"] = c.normal_rel;
  j["scale"] = c.scale;
  j["applicable"] = c.applicable;
  if (!c.skip_reason.empty()) j["skip_reason"] = c.skip_reason;
  j["per_equation"] = c.per_equation;
  return j;
}

CriterionRecord criterion_from_json(const json& j) {
  CriterionRecord c;
  c.tangential_abs = j.at("tangential_abs").get<double>();
  c.normal_abs = j.at("normal_abs").get<double>();
  c.tangential_rel = j.at("tangential_rel").get<double>();
  c.normal_rel = j.at("normal_rel").get<double>();
  c.scale = j.at("scale").get<double>();
  c.applicable = j.at("applicable").get<bool>();
  if (j.contains("skip_reason")) c.skip_reason = j.at("skip_reason").get<std::string>();
  c.per_equation = j.at("per_equation").get<std::map<std::string, double>>();
  return c;
}

}  // namespace

std::string emit_json(const ResidualReport& report) {
  json j;
  j["config"] = report.config_echo;
  j["engine_version"] = report.engine_version;
  j["timestamp"] = report.timestamp;
  j["aggregates"]["max"] = report.aggregate_max;
  j["aggregates"]["mean"] = report.aggregate_mean;
  j["verdicts"] = report.verdicts;
  j["pass"] = report.pass;
  json pts = json::array();
  for (const auto& p : report.points) {
    json jp;
    jp["point"] = p.point;
    jp["defects"] = p.defects;
    json jc;
    for (const auto& [name, c] : p.criteria) jc[name] = criterion_to_json(c);
    jp["criteria"] = jc;
    pts.push_back(std::move(jp));
  }
  j["points"] = std::move(pts);
  return j.dump(2);
}

ResidualReport parse_json_report(const std::string& text) {
  const json j = json::parse(text);
  ResidualReport r;
  r.config_echo = j.at("config").get<std::map<std::string, std::string>>();
  r.engine_version = j.at("engine_version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.aggregate_max = j.at("aggregates").at("max").get<std::map<std::string, double>>();
  r.aggregate_mean = j.at("aggregates").at("mean").get<std::map<std::string, double>>();
  r.verdicts = j.at("verdicts").get<std::map<std::string, std::string>>();
  r.pass = j.at("pass").get<bool>();
  for (const auto& jp : j.at("points")) {
    PointRecord p;
    p.point = jp.at("point").get<std::vector<double>>();
    p.defects = jp.at("defects").get<std::map<std::string, double>>();
    for (const auto& [name, jc] : jp.at("criteria").items())
      p.criteria[name] = criterion_from_json(jc);
    r.points.push_back(std::move(p));
  }
  return r;
}

std::string emit_csv(const ResidualReport& report) {
  // Column set: point coordinates, then sorted defect names, then per
  // criterion the four residual columns. Deterministic given the report.
  std::vector<std::string> defect_names;
  std::vector<std::string> criterion_names;
  if (!report.points.empty()) {
    for (const auto& [name, value] : report.points.front().defects) defect_names.push_back(name);
    for (const auto& [name, c] : report.points.front().criteria) criterion_names.push_back(name);
  }
  std::ostringstream out;
  out.precision(17);
  size_t chart_dim = report.points.empty() ? 0 : report.points.front().point.size();
  for (size_t a = 0; a < chart_dim; ++a) out << (a ? "," : "") << "x" << a;
  for (const auto& name : defect_names) out << "," << name;
  for (const auto& name : criterion_names)
    out << "," << name << "_tangential_abs"
        << "," << name << "_normal_abs"
        << "," << name << "_tangential_rel"
        << "," << name << "_normal_rel";
  out << "\n";
  for (const auto& p : report.points) {
    for (size_t a = 0; a < p.point.size(); ++a) out << (a ? "," : "") << p.point[a];
    for (const auto& name : defect_names) out << "," << p.defects.at(name);
    for (const auto& name : criterion_names) {
      const auto& c = p.criteria.at(name);
      out << "," << c.tangential_abs << "," << c.normal_abs << "," << c.tangential_rel << ","
          << c.normal_rel;
    }
    out << "\n";
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write to " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace lagbih
