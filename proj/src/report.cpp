#include "capcond/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace capcond {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

} // namespace

Json config_json(const ExperimentConfig& cfg) {
  Json j;
  j["kind"] = kind_name(cfg.kind);
  j["m"] = cfg.m;
  j["n"] = cfg.n;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["h_table"] = cfg.h_table.empty() ? Json(nullptr) : Json(cfg.h_table);
  j["delta_mode"] = cfg.delta_mode == DeltaMode::Lemma ? "lemma" : "beta0-remark";
  j["N"] = cfg.N;
  j["seed"] = cfg.seed;
  j["center"] = cfg.center;
  j["t_grid"] = cfg.t_grid;
  j["k_values"] = cfg.k_values;
  j["phi"] = cfg.phi;
  if (cfg.kind != ExperimentKind::Wendel) {
    try {
      const auto p = cfg.params();
      j["sigma"] = p.sigma;
      j["H"] = p.H;
      j["C_norm"] = p.C_norm;
      j["c"] = p.c_exponent;
      j["delta_c"] = p.delta_c;
    } catch (const Error&) {
    }
  }
  return j;
}

Json summary_json(const ExperimentResult& res) {
  Json j;
  j["config"] = config_json(res.config);
  const auto& c = res.counts;
  j["counts"] = {{"sf", c.sf}, {"ip", c.ip}, {"if", c.inf}, {"overflow", c.overflow},
                 {"failed", c.failed}};
  if (c.failed > 0) {
    Json failed = Json::array();
    for (const auto& r : res.records) {
      if (r.failed) {
        failed.push_back(r.index);
      }
    }
    j["failed_indices"] = failed;
  }

  j["tail_table"] = nullptr;
  if (res.tail) {
    Json rows = Json::array();
    for (const auto& r : *res.tail) {
      rows.push_back({{"t", r.t},
                      {"emp_F", r.emp_F},
                      {"se_F", r.se_F},
                      {"bound_F", r.bound_F},
                      {"bound_F_display", std::min(r.bound_F, 1.0)},
                      {"vacuous_F", r.vacuous_F},
                      {"pass_F", optional_json(r.pass_F)},
                      {"emp_I", r.emp_I},
                      {"se_I", r.se_I},
                      {"bound_I", number_or_null(r.bound_I)},
                      {"vacuous_I", r.vacuous_I},
                      {"pass_I", r.pass_I},
                      {"covered", r.covered}});
    }
    j["tail_table"] = rows;
  }

  j["expectation"] = nullptr;
  if (res.expectation) {
    const auto& e = *res.expectation;
    j["expectation"] = {{"mean", e.mean},
                        {"se", number_or_null(e.se)},
                        {"bound", e.bound},
                        {"pass", optional_json(e.pass)},
                        {"informational", e.informational},
                        {"used", e.used},
                        {"overflow", e.overflow}};
  }

  j["wendel_table"] = nullptr;
  if (res.wendel) {
    Json rows = Json::array();
    for (const auto& r : res.wendel->rows) {
      rows.push_back({{"k", r.k},
                      {"N", r.N},
                      {"feasible", r.feasible},
                      {"p_hat", r.p_hat},
                      {"p_exact", r.p_exact.value()},
                      {"p_exact_rational", r.p_exact.str()},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
    }
    Json sums = Json::array();
    for (const auto& [k, v] : res.wendel->tail_partial_sums) {
      sums.push_back({{"K", k}, {"sum", v}});
    }
    j["wendel_table"] = {{"rows", rows}, {"tail_partial_sums", sums}};
  }

  j["tube_table"] = nullptr;
  if (res.tube) {
    Json rows = Json::array();
    for (const auto& r : *res.tube) {
      rows.push_back({{"label", r.config.label},
                      {"m", r.config.m},
                      {"alpha", r.config.alpha},
                      {"phi", r.config.phi},
                      {"cap_radius", r.config.cap_radius},
                      {"center_offset", r.config.center_offset},
                      {"eps", r.eps},
                      {"sigma", r.sigma},
                      {"bound", r.bound},
                      {"outer", r.outer},
                      {"se_outer", r.se_outer},
                      {"pass_outer", r.pass_outer},
                      {"inner", r.inner},
                      {"se_inner", r.se_inner},
                      {"pass_inner", r.pass_inner}});
    }
    j["tube_table"] = rows;
  }

  j["property_suite"] = nullptr;
  if (res.properties) {
    Json rows = Json::array();
    for (const auto& p : *res.properties) {
      rows.push_back({{"check", p.name},
                      {"attempted", p.attempted},
                      {"qualifying", p.qualifying},
                      {"violations", p.violations},
                      {"skipped", p.skipped},
                      {"worst_margin", number_or_null(p.worst_margin)},
                      {"status", verdict_name(p.verdict)}});
    }
    j["property_suite"] = rows;
  }

  j["sampler_check"] = nullptr;
  if (res.sampler) {
    const auto& s = *res.sampler;
    j["sampler_check"] = {{"N", s.N},
                          {"threshold", s.threshold},
                          {"ks_radial", s.ks_radial},
                          {"ks_direction", optional_json(s.ks_direction)},
                          {"ks_rejection", optional_json(s.ks_rejection)},
                          {"outside_cap", s.max_support_violation},
                          {"pass", s.pass}};
  }
  j["verdict"] = verdict_name(res.verdict);
  return j;
}

void write_samples_csv(std::ostream& out, const ExperimentResult& res) {
  out << "sample_index,seed_hi,seed_lo,class,rho,cond,ln_cond,ipm_proxy\n";
  for (const auto& r : res.records) {
    if (r.failed) {
      continue;
    }
    out << r.index << ',' << r.seed << ',' << r.index << ',' << class_code(r.cls) << ','
        << fmt(r.rho) << ',' << fmt(r.cond) << ',';
    if (const auto l = r.ln_cond()) {
      out << fmt(*l);
    }
    out << ',';
    if (const auto p = r.ipm_proxy(res.config.m, res.config.n)) {
      out << fmt(*p);
    }
    out << '\n';
  }
}

void persist(const ExperimentResult& res, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
  const auto csv_path = dir / "samples.csv";
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      throw IoError("cannot write '" + csv_path.string() + "'");
    }
    write_samples_csv(csv, res);
    if (!csv) {
      throw IoError("error while writing '" + csv_path.string() + "'");
    }
  }
  const auto json_path = dir / "summary.json";
  std::ofstream js(json_path, std::ios::binary);
  if (!js) {
    throw IoError("cannot write '" + json_path.string() + "'");
  }
  js << summary_json(res).dump(2) << '\n';
  if (!js) {
    throw IoError("error while writing '" + json_path.string() + "'");
  }
}

std::vector<std::string> validate_summary(const nlohmann::json& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object()) {
    return {"summary is not a JSON object"};
  }
  auto need = [&](const nlohmann::json& obj, const std::string& key, auto check,
                  const std::string& what) {
    if (!obj.contains(key)) {
      problems.push_back("missing key '" + key + "'");
      return false;
    }
    if (!check(obj.at(key))) {
      problems.push_back("key '" + key + "' is not " + what);
      return false;
    }
    return true;
  };
  auto is_object = [](const auto& v) { return v.is_object(); };
  auto array_or_null = [](const auto& v) { return v.is_null() || v.is_array(); };
  auto object_or_null = [](const auto& v) { return v.is_null() || v.is_object(); };
  auto is_count = [](const auto& v) { return v.is_number_unsigned(); };

  need(doc, "config", is_object, "an object");
  if (need(doc, "counts", is_object, "an object")) {
    for (const char* k : {"sf", "ip", "if", "overflow", "failed"}) {
      need(doc.at("counts"), k, is_count, "a count");
    }
  }
  if (need(doc, "tail_table", array_or_null, "an array or null") && doc.at("tail_table").is_array()) {
    for (const auto& row : doc.at("tail_table")) {
      for (const char* k : {"t", "emp_F", "se_F", "bound_F", "pass_F", "emp_I", "se_I", "bound_I",
                            "pass_I", "covered"}) {
        if (!row.contains(k)) {
          problems.push_back(std::string("tail_table row lacks '") + k + "'");
        }
      }
    }
  }
  if (need(doc, "expectation", object_or_null, "an object or null") &&
      doc.at("expectation").is_object()) {
    for (const char* k : {"mean", "se", "bound", "pass"}) {
      if (!doc.at("expectation").contains(k)) {
        problems.push_back(std::string("expectation lacks '") + k + "'");
      }
    }
  }
  need(doc, "wendel_table", object_or_null, "an object or null");
  need(doc, "tube_table", array_or_null, "an array or null");
  need(doc, "property_suite", array_or_null, "an array or null");
  return problems;
}

std::string describe(const ExperimentResult& res) {
  std::ostringstream out;
  const auto& c = res.counts;
  out << kind_name(res.config.kind) << ": " << verdict_name(res.verdict) << '\n';
  if (!res.records.empty()) {
    out << "  counts SF=" << c.sf << " IP=" << c.ip << " IF=" << c.inf
        << " overflow=" << c.overflow << " failed=" << c.failed << '\n';
  }
  char line[256];
  if (res.tail) {
    for (const auto& r : *res.tail) {
      std::snprintf(line, sizeof line,
                    "  t=%-12.6g F: %.3e (se %.1e) <= %.3e %s | I: %.3e (se %.1e) <= %.3e %s\n",
                    r.t, r.emp_F, r.se_F, r.bound_F,
                    !r.pass_F ? "not-covered" : (*r.pass_F ? "pass" : "FAIL"), r.emp_I, r.se_I,
                    r.bound_I, r.pass_I ? "pass" : "FAIL");
      out << line;
    }
  }
  if (res.expectation) {
    const auto& e = *res.expectation;
    std::snprintf(line, sizeof line, "  mean ln cond %.6g (se %.3g, %llu used, %llu overflow), bound %.6g%s\n",
                  e.mean, e.se, static_cast<unsigned long long>(e.used),
                  static_cast<unsigned long long>(e.overflow), e.bound,
                  e.informational ? " (informational)" : "");
    out << line;
  }
  if (res.wendel) {
    for (const auto& r : res.wendel->rows) {
      std::snprintf(line, sizeof line, "  k=%-3d p_hat=%.6f p=%s=%.6f tol=%.2e %s\n", r.k, r.p_hat,
                    r.p_exact.str().c_str(), r.p_exact.value(), r.tolerance,
                    r.pass ? "pass" : "FAIL");
      out << line;
    }
  }
  if (res.tube) {
    for (const auto& r : *res.tube) {
      std::snprintf(line, sizeof line,
                    "  %s m=%d: outer %.4e inner %.4e (se %.1e) <= %.4e %s\n",
                    r.config.label.c_str(), r.config.m, r.outer, r.inner,
                    std::max(r.se_outer, r.se_inner), r.bound,
                    r.pass_outer && r.pass_inner ? "pass" : "FAIL");
      out << line;
    }
  }
  if (res.properties) {
    for (const auto& p : *res.properties) {
      std::snprintf(line, sizeof line, "  %-20s qualifying=%-6llu violations=%-4llu %s\n",
                    p.name.c_str(), static_cast<unsigned long long>(p.qualifying),
                    static_cast<unsigned long long>(p.violations),
                    std::string(verdict_name(p.verdict)).c_str());
      out << line;
    }
  }
  if (res.sampler) {
    const auto& s = *res.sampler;
    std::snprintf(line, sizeof line, "  KS radial %.4g direction %s rejection %s (limit %.4g)\n",
                  s.ks_radial, s.ks_direction ? fmt(*s.ks_direction).c_str() : "-",
                  s.ks_rejection ? fmt(*s.ks_rejection).c_str() : "-", s.threshold);
    out << line;
  }
  return out.str();
}

} // namespace capcond
