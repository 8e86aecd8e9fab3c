#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "resonance/errors.hpp"
#include "resonance/extremes.hpp"

namespace resonance::ext {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(fmt15(v));
}

double get_num(const Json& j) { return j.is_null() ? NAN : j.get<double>(); }

Json cplx(std::complex<double> z) { return Json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

std::complex<double> get_cplx(const Json& j) { return {get_num(j.at("re")), get_num(j.at("im"))}; }

Json summary_json(const ZeroSummary& s) {
  return Json{{"index", s.index},
              {"gamma", num(s.gamma)},
              {"abs_zeta_prime", num(s.abs_zeta_prime)},
              {"abs_zeta_prime_gamma13", num(s.normalized)},
              {"weight", num(s.weight)}};
}

ZeroSummary summary_from(const Json& j) {
  ZeroSummary s;
  s.index = j.at("index").get<std::int64_t>();
  s.gamma = get_num(j.at("gamma"));
  s.abs_zeta_prime = get_num(j.at("abs_zeta_prime"));
  s.normalized = get_num(j.at("abs_zeta_prime_gamma13"));
  s.weight = get_num(j.at("weight"));
  return s;
}

Json check_json(const PredictionReport& r) {
  return Json{{"label", r.label},       {"numeric", num(r.numeric)},     {"predicted", num(r.predicted)},
              {"ratio", num(r.ratio)},  {"tolerance", num(r.tolerance)}, {"pass", r.pass},
              {"detail", r.detail}};
}

PredictionReport check_from(const Json& j) {
  PredictionReport r;
  r.label = j.at("label").get<std::string>();
  r.numeric = get_num(j.at("numeric"));
  r.predicted = get_num(j.at("predicted"));
  r.ratio = get_num(j.at("ratio"));
  r.tolerance = get_num(j.at("tolerance"));
  r.pass = j.at("pass").get<bool>();
  r.detail = j.at("detail").get<std::string>();
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const ExtremesReport& rep) {
  Json j;
  j["schema_version"] = rep.schema_version;
  j["mode"] = rep.mode;
  j["generated_at"] = rep.generated_at;
  j["config"] = Json{{"t1", num(rep.t1)},
                     {"t2", num(rep.t2)},
                     {"M", rep.M},
                     {"r", rep.r},
                     {"theta_effective", num(rep.theta_effective)},
                     {"coefficients", rep.coefficients}};
  j["zero_count"] = rep.zero_count;
  j["sums"] = Json{{"S1", cplx(rep.S1)}, {"S2", num(rep.S2)}, {"S3", cplx(rep.S3)}};
  j["predicted"] = Json{{"S1", num(rep.predicted_S1)}, {"S2", num(rep.predicted_S2)}, {"S3", num(rep.predicted_S3)}};
  j["bounds"] = Json{{"abs_S1_over_S2", num(rep.bound_S1)}, {"abs_S3_over_S2", num(rep.bound_S3)}};
  j["argmax"] = summary_json(rep.argmax);
  j["argmin"] = summary_json(rep.argmin);
  j["heaviest"] = summary_json(rep.heaviest);
  j["metadata"] = Json{{"c2_reference", num(rep.c2_reference)}, {"c3_reference", num(rep.c3_reference)}};
  j["checks"] = Json::array();
  for (const auto& c : rep.checks) j["checks"].push_back(check_json(c));
  j["criteria"] = Json::array();
  for (const auto& c : rep.criteria) {
    Json cj{{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"seconds", num(c.seconds)}, {"detail", c.detail}};
    cj["checks"] = Json::array();
    for (const auto& r : c.checks) cj["checks"].push_back(check_json(r));
    j["criteria"].push_back(std::move(cj));
  }
  j["all_pass"] = rep.all_pass();
  return j.dump(2) + "\n";
}

ExtremesReport from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("report: invalid JSON: ") + e.what());
  }
  if (!j.contains("schema_version")) throw std::invalid_argument("report: missing schema_version");
  ExtremesReport rep;
  rep.schema_version = j.at("schema_version").get<int>();
  if (rep.schema_version != 1) throw std::invalid_argument("report: unsupported schema_version");
  rep.mode = j.at("mode").get<std::string>();
  rep.generated_at = j.at("generated_at").get<std::string>();
  const auto& cfg = j.at("config");
  rep.t1 = get_num(cfg.at("t1"));
  rep.t2 = get_num(cfg.at("t2"));
  rep.M = cfg.at("M").get<std::uint64_t>();
  rep.r = cfg.at("r").get<int>();
  rep.theta_effective = get_num(cfg.at("theta_effective"));
  rep.coefficients = cfg.at("coefficients").get<std::string>();
  rep.zero_count = j.at("zero_count").get<std::uint64_t>();
  rep.S1 = get_cplx(j.at("sums").at("S1"));
  rep.S2 = get_num(j.at("sums").at("S2"));
  rep.S3 = get_cplx(j.at("sums").at("S3"));
  rep.predicted_S1 = get_num(j.at("predicted").at("S1"));
  rep.predicted_S2 = get_num(j.at("predicted").at("S2"));
  rep.predicted_S3 = get_num(j.at("predicted").at("S3"));
  rep.bound_S1 = get_num(j.at("bounds").at("abs_S1_over_S2"));
  rep.bound_S3 = get_num(j.at("bounds").at("abs_S3_over_S2"));
  rep.argmax = summary_from(j.at("argmax"));
  rep.argmin = summary_from(j.at("argmin"));
  rep.heaviest = summary_from(j.at("heaviest"));
  rep.c2_reference = get_num(j.at("metadata").at("c2_reference"));
  rep.c3_reference = get_num(j.at("metadata").at("c3_reference"));
  for (const auto& c : j.at("checks")) rep.checks.push_back(check_from(c));
  for (const auto& cj : j.at("criteria")) {
    CriterionResult c;
    c.id = cj.at("id").get<int>();
    c.name = cj.at("name").get<std::string>();
    c.pass = cj.at("pass").get<bool>();
    c.seconds = get_num(cj.at("seconds"));
    c.detail = cj.at("detail").get<std::string>();
    for (const auto& r : cj.at("checks")) c.checks.push_back(check_from(r));
    rep.criteria.push_back(std::move(c));
  }
  return rep;
}

std::string to_csv(const ExtremesReport& rep) {
  std::ostringstream out;
  if (rep.rows.empty() && !rep.criteria.empty()) {
    out << "id,name,pass,seconds,detail\n";
    for (const auto& c : rep.criteria) {
      out << c.id << ',' << c.name << ',' << (c.pass ? "pass" : "fail") << ',' << fmt15(c.seconds) << ','
          << csv_field(c.detail) << '\n';
    }
    return out.str();
  }
  out << "index,gamma,re_zeta_prime,im_zeta_prime,abs_zeta_prime,abs_zeta_prime_gamma13,weight\n";
  for (const auto& row : rep.rows) {
    const double a = std::abs(row.zeta_prime);
    out << row.index << ',' << fmt15(row.gamma) << ',' << fmt15(row.zeta_prime.real()) << ','
        << fmt15(row.zeta_prime.imag()) << ',' << fmt15(a) << ',' << fmt15(a * std::cbrt(row.gamma)) << ','
        << fmt15(row.weight) << '\n';
  }
  return out.str();
}

void emit_report(const ExtremesReport& report, Format format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report to " + path.string());
  out << (format == Format::Json ? to_json(report) : to_csv(report));
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace resonance::ext
