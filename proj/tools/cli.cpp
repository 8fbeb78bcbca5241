#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "capcond/feasibility.hpp"
#include "capcond/instance_io.hpp"
#include "capcond/report.hpp"

namespace capcond::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Options {
  std::string instance;
  std::string method = "auto";
  std::string alpha = "piOver6";
  std::string t_grid;
  std::string k = "4,6,8";
  std::string delta_mode = "lemma";
  std::string out = "results";
  std::string sample_out = "-";
  std::string config;
  std::uint64_t index = 0;
  ExperimentConfig exp;
};

SicMethod parse_method(const std::string& s) {
  if (s == "auto") {
    return SicMethod::Auto;
  }
  if (s == "subgradient") {
    return SicMethod::Subgradient;
  }
  if (s == "brute") {
    return SicMethod::BruteForce;
  }
  throw ConfigError("--method must be auto, subgradient or brute");
}

DeltaMode parse_delta_mode(const std::string& s) {
  if (s == "lemma") {
    return DeltaMode::Lemma;
  }
  if (s == "beta0-remark") {
    return DeltaMode::Beta0Remark;
  }
  throw ConfigError("--delta-mode must be lemma or beta0-remark");
}

void add_instance_flags(CLI::App* sub, Options& o) {
  sub->add_option("--instance", o.instance, "Instance file: 'n m' then n unit rows")->required();
  sub->add_option("--method", o.method, "SIC method: auto, subgradient or brute");
}

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--m", o.exp.m, "Sphere dimension m");
  sub->add_option("--n", o.exp.n, "Number of rows n");
  sub->add_option("--alpha", o.alpha, "Cap radius in radians or piOverK");
  sub->add_option("--beta", o.exp.beta, "Pole order beta in [0, m)");
  sub->add_option("--h-table", o.exp.h_table, "Two-column (r, h(r)) file; default h = 1");
  sub->add_option("--seed", o.exp.seed, "Master seed");
  sub->add_option("--center", o.exp.center,
                  "Center instance: random, equal, great-circle or file:PATH");
  sub->add_option("--delta-mode", o.delta_mode, "Tolerance: lemma or beta0-remark");
}

void add_run_flags(CLI::App* sub, Options& o) {
  add_model_flags(sub, o);
  sub->add_option("--N", o.exp.N, "Sample count");
  sub->add_option("--out", o.out, "Output directory for samples.csv and summary.json");
  sub->add_option("--workers", o.exp.workers, "Worker threads, 0 for all");
}

void add_config_flag(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "key=value file; command-line flags take precedence");
}

int finish_experiment(const ExperimentResult& res, const Options& o, std::ostream& out) {
  persist(res, o.out);
  out << describe(res);
  out << "wrote " << (std::filesystem::path(o.out) / "summary.json").string() << '\n';
  switch (res.verdict) {
  case Verdict::Fail:
    return 2;
  case Verdict::Inconclusive:
    out << "warning: result is inconclusive (too few qualifying samples)\n";
    return 0;
  default:
    return 0;
  }
}

} // namespace

double parse_angle(const std::string& text) {
  const std::string t = trim(text);
  if (t.rfind("piOver", 0) == 0) {
    const std::string k = t.substr(6);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || !(value > 0.0)) {
      throw ConfigError("angle '" + text + "' is not of the form piOverK with K > 0");
    }
    return kPi / value;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size()) {
    throw ConfigError("angle '" + text + "' is neither a number nor piOverK");
  }
  return value;
}

std::vector<double> parse_t_grid(const std::string& text) {
  double lo = 0, hi = 0;
  int pts = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &pts, &extra) != 3 || !(lo > 0.0) ||
      !(hi > lo) || pts < 2) {
    throw ConfigError("--t-grid must be lo:hi:points with 0 < lo < hi and points >= 2");
  }
  std::vector<double> grid;
  for (int i = 0; i < pts; ++i) {
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (pts - 1)));
  }
  return grid;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  int a = 0, b = 0;
  char extra = 0;
  if (text.find(':') != std::string::npos) {
    if (std::sscanf(text.c_str(), "%d:%d%c", &a, &b, &extra) != 2 || b < a) {
      throw ConfigError("--k range must be lo:hi with lo <= hi");
    }
    for (int k = a; k <= b; ++k) {
      ks.push_back(k);
    }
    return ks;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = trim(text.substr(start, comma - start));
    if (std::sscanf(item.c_str(), "%d%c", &a, &extra) != 1) {
      throw ConfigError("--k must be lo:hi or a comma-separated list of integers");
    }
    ks.push_back(a);
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return ks;
}

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) != 0) {
      key = "--" + key;
    }
    if (key == "--config") {
      throw IoError(path + ":" + std::to_string(lineno) + ": config files cannot nest");
    }
    tokens.push_back(key);
    tokens.push_back(value);
  }
  return tokens;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Condition numbers of random linear feasibility problems on the sphere"};
  app.option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* classify = app.add_subcommand("classify", "Feasibility class of an instance");
  add_instance_flags(classify, o);
  auto* cond = app.add_subcommand("cond", "Class and GCC condition number of an instance");
  add_instance_flags(cond, o);
  auto* sic = app.add_subcommand("sic", "Smallest including cap of an instance");
  add_instance_flags(sic, o);
  auto* sample = app.add_subcommand("sample", "Draw one instance from the adversarial law");
  add_model_flags(sample, o);
  sample->add_option("--index", o.index, "Sample index within the master seed");
  sample->add_option("--out", o.sample_out, "Output instance file, - for standard output");

  auto* tail = app.add_subcommand("exp-tail", "Tail probabilities of cond against the feasible and infeasible bounds");
  add_run_flags(tail, o);
  tail->add_option("--t-grid", o.t_grid, "lo:hi:points; default 12 points from the threshold");
  auto* mean = app.add_subcommand("exp-mean", "Mean of ln cond against the explicit bound");
  add_run_flags(mean, o);
  auto* wendel = app.add_subcommand("exp-wendel", "Feasibility frequency of uniform points");
  add_run_flags(wendel, o);
  wendel->add_option("--k", o.k, "Point counts: lo:hi or a comma list");
  auto* tube = app.add_subcommand("exp-tube", "Relative volume of boundary neighborhoods");
  add_run_flags(tube, o);
  tube->add_option("--phi", o.exp.phi, "Neighborhood radius; 0 runs the built-in set");
  auto* props = app.add_subcommand("exp-properties", "Property checks AF, IF, CCine, multrva");
  add_run_flags(props, o);
  props->add_option("--phi", o.exp.phi, "Neighborhood radius for AF; 0 selects 0.5");
  auto* vsamp = app.add_subcommand("validate-sampler", "KS checks of the cap sampler");
  add_run_flags(vsamp, o);

  for (auto* sub : app.get_subcommands({})) {
    add_config_flag(sub, o);
  }
  o.exp.N = 100000;

  // Config-file values go right after the subcommand so later flags win.
  std::vector<std::string> args = args_in;
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      std::size_t width = 0;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        width = 2;
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        width = 1;
      }
      if (width == 0) {
        continue;
      }
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + width));
      const auto tokens = config_tokens(path);
      std::size_t at = 0;
      while (at < args.size() && args[at].rfind("-", 0) == 0) {
        ++at;
      }
      at = std::min(at + 1, args.size());
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), tokens.begin(), tokens.end());
      break;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    o.exp.alpha = parse_angle(o.alpha);
    o.exp.delta_mode = parse_delta_mode(o.delta_mode);
    if (classify->parsed() || cond->parsed() || sic->parsed()) {
      const auto method = parse_method(o.method);
      const Instance a = read_instance(o.instance);
      const auto r = compute_sic(a.rows(), method);
      if (classify->parsed()) {
        out << "class=" << class_code(r.cls) << '\n';
      } else if (cond->parsed()) {
        out << "class=" << class_code(r.cls) << " cond=" << fmt(r.cond) << '\n';
      } else {
        out << "rho=" << fmt(r.rho, "%.17g") << " center=";
        for (std::size_t j = 0; j < r.center.ambient_dim(); ++j) {
          out << (j ? "," : "") << fmt(r.center[j], "%.17g");
        }
        out << " support=";
        for (std::size_t j = 0; j < r.support.size(); ++j) {
          out << (j ? "," : "") << r.support[j] + 1;
        }
        out << " class=" << class_code(r.cls) << " cond=" << fmt(r.cond) << '\n';
      }
      return 0;
    }
    if (sample->parsed()) {
      ExperimentConfig cfg = o.exp;
      cfg.kind = ExperimentKind::Tail;
      validate(cfg);
      const InstanceSampler sampler(make_centers(cfg), cfg.params());
      const Instance a = sampler.sample(cfg.seed, o.index);
      if (o.sample_out == "-") {
        out << a.n() << ' ' << a.m() << '\n';
        for (const auto& row : a.rows()) {
          for (std::size_t j = 0; j < row.ambient_dim(); ++j) {
            out << (j ? " " : "") << fmt(row[j], "%.17g");
          }
          out << '\n';
        }
      } else {
        write_instance(o.sample_out, a.rows());
        out << "wrote " << o.sample_out << '\n';
      }
      return 0;
    }
    ExperimentConfig cfg = o.exp;
    if (tail->parsed()) {
      cfg.kind = ExperimentKind::Tail;
      if (!o.t_grid.empty()) {
        cfg.t_grid = parse_t_grid(o.t_grid);
      }
    } else if (mean->parsed()) {
      cfg.kind = ExperimentKind::Expectation;
    } else if (wendel->parsed()) {
      cfg.kind = ExperimentKind::Wendel;
      cfg.k_values = parse_k_list(o.k);
    } else if (tube->parsed()) {
      cfg.kind = ExperimentKind::Tube;
    } else if (props->parsed()) {
      cfg.kind = ExperimentKind::PropertySuite;
    } else {
      cfg.kind = ExperimentKind::SamplerCheck;
    }
    return finish_experiment(run_experiment(cfg), o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace capcond::cli
