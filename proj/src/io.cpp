#include "tobitadf/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tobit {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_utc() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Series parse_series_csv(std::istream& in, const CsvOptions& options,
                        const std::string& origin) {
  Series series;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t comma = t.find(',');
    std::string date, value_str;
    if (comma == std::string::npos) {
      value_str = t;
    } else {
      date = trim(t.substr(0, comma));
      value_str = trim(t.substr(comma + 1));
      if (value_str.find(',') != std::string::npos)
        parse_fail(origin, line_no, "expected `value` or `date,value`");
    }
    double v;
    if (!parse_double(value_str, v)) {
      if (!saw_data && line_no == 1) continue;  // header line
      parse_fail(origin, line_no, "cannot parse value '" + value_str + "'");
    }
    if (options.apply_log) {
      if (v <= 0.0)
        parse_fail(origin, line_no, "nonpositive value under --log: " + value_str);
      v = std::log(v);
    }
    saw_data = true;
    series.values.push_back(v);
    if (!date.empty()) series.dates.push_back(date);
  }
  if (series.values.empty()) throw std::runtime_error(origin + ": no observations");
  if (!series.dates.empty() && series.dates.size() != series.values.size())
    throw std::runtime_error(origin + ": mixed dated and undated rows");
  if (options.bound) {
    double bound = *options.bound;
    if (options.bound_is_raw && options.apply_log) {
      if (bound <= 0.0) throw std::runtime_error(origin + ": raw bound must be positive under --log");
      bound = std::log(bound);
    }
    series.lower_bound = bound;
  }
  return series;
}

Series read_series_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_series_csv(in, options, path);
}

void write_series_csv(const Series& series, std::ostream& out) {
  const bool dated = !series.dates.empty();
  out << (dated ? "date,value\n" : "value\n");
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (dated) out << series.dates[i] << ',';
    out << format_full(series.values[i]) << '\n';
  }
}

void write_series_csv(const Series& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_series_csv(series, out);
}

void write_sim_output_csv(const SimOutput& sim, std::ostream& out) {
  out << "t,y,y_minus,u\n";
  for (std::size_t t = 0; t < sim.y.size(); ++t)
    out << (t + 1) << ',' << format_full(sim.y[t]) << ',' << format_full(sim.y_minus[t])
        << ',' << format_full(sim.innovations[t]) << '\n';
}

void write_cv_table_csv(const CvTable& table, std::ostream& out) {
  out << "ratio,q01,q05,q10\n";
  for (const auto& row : table.rows)
    out << format_full(row.ratio) << ',' << format_full(row.q[0]) << ','
        << format_full(row.q[1]) << ',' << format_full(row.q[2]) << '\n';
  out << "adf," << format_full(table.adf_row[0]) << ',' << format_full(table.adf_row[1])
      << ',' << format_full(table.adf_row[2]) << '\n';
}

CvTable read_cv_table_csv(std::istream& in, const std::string& origin) {
  CvTable table;
  table.source = origin;
  std::string line;
  std::size_t line_no = 0;
  bool have_adf = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::stringstream ss(t);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (fields.size() != 4) parse_fail(origin, line_no, "expected 4 columns");
    if (fields[0] == "ratio") continue;  // header
    double q[3];
    for (int i = 0; i < 3; ++i)
      if (!parse_double(fields[static_cast<std::size_t>(i) + 1], q[i]))
        parse_fail(origin, line_no, "cannot parse quantile");
    if (fields[0] == "adf") {
      table.adf_row = {q[0], q[1], q[2]};
      have_adf = true;
    } else {
      double ratio;
      if (!parse_double(fields[0], ratio)) parse_fail(origin, line_no, "cannot parse ratio");
      table.rows.push_back({ratio, {q[0], q[1], q[2]}});
    }
  }
  if (!have_adf) throw std::runtime_error(origin + ": missing adf row");
  table.validate();
  return table;
}

CvTable read_cv_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_cv_table_csv(in, path);
}

nlohmann::json to_json(const TestReport& r) {
  nlohmann::json j{
      {"schema", "tobitadf/v1/test_report"},
      {"k", r.k},
      {"sample_length", r.sample_length},
      {"t_alpha", r.t_alpha},
      {"t_beta", r.t_beta},
      {"alpha_hat", r.alpha_hat},
      {"beta_hat", r.beta_hat},
      {"b0_hat", r.b0_hat},
      {"phi1_hat", r.phi1_hat},
      {"sigma_hat", r.sigma_hat},
      {"ratio", r.ratio},
      {"bound", r.bound},
      {"critical_values",
       {{"1%", r.critical_values[0]}, {"5%", r.critical_values[1]}, {"10%", r.critical_values[2]}}},
      {"reject", {{"1%", r.reject[0]}, {"5%", r.reject[1]}, {"10%", r.reject[2]}}},
      {"p_value_table", r.p_value_table},
      {"p_table_below_range", r.p_table_below_range},
      {"p_table_above_range", r.p_table_above_range},
      {"b0_clamped", r.b0_clamped},
      {"ratio_clamped", r.ratio_clamped},
      {"used_adf_row", r.used_adf_row},
      {"backend", r.backend},
      {"seed", r.seed},
  };
  j["p_value_sim"] = r.p_value_sim ? nlohmann::json(*r.p_value_sim) : nlohmann::json();
  j["p_value_boot"] = r.p_value_boot ? nlohmann::json(*r.p_value_boot) : nlohmann::json();
  j["k_aic"] = r.k_aic ? nlohmann::json(*r.k_aic) : nlohmann::json();
  j["k_bic"] = r.k_bic ? nlohmann::json(*r.k_bic) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const OlsFit& f) {
  return nlohmann::json{
      {"schema", "tobitadf/v1/ols_fit"},
      {"k", f.k},
      {"t_eff", f.t_eff},
      {"alpha_hat", f.alpha_hat},
      {"beta_hat", f.beta_hat},
      {"phi_hat", f.phi_hat},
      {"phi1_hat", f.phi1_hat},
      {"sigma2_hat", f.sigma2_hat},
      {"gram", f.gram},
      {"gram_inv_diag", f.gram_inv_diag},
      {"t_alpha", f.tstats_defined ? nlohmann::json(f.t_alpha) : nlohmann::json()},
      {"t_beta", f.tstats_defined ? nlohmann::json(f.t_beta) : nlohmann::json()},
      {"tstats_defined", f.tstats_defined},
  };
}

nlohmann::json to_json(const JsrCertificate& c) {
  return nlohmann::json{
      {"schema", "tobitadf/v1/jsr_certificate"},
      {"lower", c.lower},
      {"upper", c.upper},
      {"depth", c.depth},
      {"conclusive", c.conclusive},
      {"notes", c.notes},
  };
}

nlohmann::json to_json(const ExplosionReport& r) {
  return nlohmann::json{
      {"schema", "tobitadf/v1/explosion_report"},
      {"replications", r.replications},
      {"explosive_fraction", r.explosive_fraction},
      {"classified_explosive", r.classified_explosive},
      {"growth_ratio_median",
       std::isfinite(r.growth_ratio_median) ? nlohmann::json(r.growth_ratio_median)
                                            : nlohmann::json("inf")},
      {"max_dy_median",
       std::isfinite(r.max_dy_median) ? nlohmann::json(r.max_dy_median) : nlohmann::json("inf")},
      {"max_dy_q90",
       std::isfinite(r.max_dy_q90) ? nlohmann::json(r.max_dy_q90) : nlohmann::json("inf")},
      {"threshold", r.threshold},
  };
}

nlohmann::json cv_table_provenance(const CvTable& table) {
  std::vector<double> ratios;
  for (const auto& row : table.rows) ratios.push_back(row.ratio);
  return nlohmann::json{
      {"schema", "tobitadf/v1/cv_table_meta"},
      {"sample_length", table.sample_length},
      {"replications", table.replications},
      {"seed", table.seed},
      {"innovation_law", to_string(table.law)},
      {"source", table.source},
      {"ratios", ratios},
  };
}

namespace {

bool type_matches(const nlohmann::json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "number") return doc.is_number();
  if (type == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  return false;
}

void validate_node(const nlohmann::json& doc, const nlohmann::json& schema,
                   const std::string& path, std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const auto& ty = schema["type"];
    bool ok = false;
    if (ty.is_string()) {
      ok = type_matches(doc, ty.get<std::string>());
    } else if (ty.is_array()) {
      for (const auto& alt : ty)
        if (type_matches(doc, alt.get<std::string>())) ok = true;
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch");
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"])
      if (v == doc) ok = true;
    if (!ok) errors.push_back(path + ": not in enum");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& req : schema["required"])
        if (!doc.contains(req.get<std::string>()))
          errors.push_back(path + ": missing required key " + req.get<std::string>());
    if (schema.contains("properties"))
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
        if (doc.contains(it.key()))
          validate_node(doc[it.key()], it.value(), path + "/" + it.key(), errors);
  }
  if (doc.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& el : doc) validate_node(el, schema["items"], path + "[" + std::to_string(i++) + "]", errors);
  }
}

}  // namespace

std::vector<std::string> validate_against_schema(const nlohmann::json& doc,
                                                 const nlohmann::json& schema) {
  std::vector<std::string> errors;
  validate_node(doc, schema, "", errors);
  return errors;
}

}  // namespace tobit
