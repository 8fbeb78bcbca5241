#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "capcond/sphere.hpp"
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = capcond::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "capcond_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string tri() {
  const double s = std::sqrt(3.0) / 2;
  std::ostringstream t;
  t.precision(17);
  t << "3 1\n1 0\n" << -0.5 << ' ' << s << '\n' << -0.5 << ' ' << -s << '\n';
  return write("tri.txt", t.str());
}

nlohmann::json summary(const fs::path& dir) {
  std::ifstream in(dir / "summary.json");
  return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("instance commands") {
  const auto r = run({"cond", "--instance", tri()});
  CHECK(r.code == 0);
  CHECK(r.out == "class=IF cond=2\n");
  CHECK(run({"classify", "--instance", tri()}).out == "class=IF\n");
  const auto s = run({"sic", "--instance", tri(), "--method", "brute"});
  CHECK(s.code == 0);
  CHECK(s.out.find("class=IF cond=2") != std::string::npos);
  CHECK(s.out.find("rho=2.094395102393") != std::string::npos);

  const auto bad = write("bad.txt", "4 2\n1 0 0\n0.5 0.8 0\n0 0 1\n0 1 0\n");
  const auto b = run({"classify", "--instance", bad});
  CHECK(b.code == 1);
  CHECK(b.err.find("row 2") != std::string::npos);
  CHECK(std::count(b.err.begin(), b.err.end(), '\n') == 1);

  CHECK(run({"cond", "--instance", (scratch() / "missing.txt").string()}).code == 1);
  CHECK(run({"cond"}).code == 1);
  CHECK(run({"cond", "--instance", tri(), "--bogus", "1"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("sample is reproducible") {
  const auto a = run({"sample", "--m", "2", "--n", "5", "--seed", "9", "--index", "3"});
  const auto b = run({"sample", "--m", "2", "--n", "5", "--seed", "9", "--index", "3"});
  const auto c = run({"sample", "--m", "2", "--n", "5", "--seed", "9", "--index", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.rfind("5 2\n", 0) == 0);
  const auto file = (scratch() / "sampled.txt").string();
  CHECK(run({"sample", "--seed", "9", "--index", "3", "--out", file}).code == 0);
  CHECK(run({"cond", "--instance", file}).code == 0);
}

TEST_CASE("help lists flags with defaults") {
  for (const char* sub : {"classify", "cond", "sic", "sample", "exp-tail", "exp-mean",
                          "exp-wendel", "exp-tube", "exp-properties", "validate-sampler"}) {
    const auto h = run({sub, "--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("--help") != std::string::npos);
  }
  const auto h = run({"exp-tail", "--help"});
  for (const char* flag : {"--m", "--n", "--alpha", "--beta", "--h-table", "--N", "--seed",
                           "--t-grid", "--center", "--out", "--workers", "--delta-mode",
                           "--config"}) {
    CHECK(h.out.find(flag) != std::string::npos);
  }
  CHECK(h.out.find("100000") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file and flag precedence") {
  struct Case {
    bool in_file, on_flag;
  };
  const std::vector<Case> matrix{{false, false}, {true, false}, {false, true}, {true, true}};
  int idx = 0;
  for (const auto& c : matrix) {
    std::string text = "# precedence\n";
    if (c.in_file) {
      text += "seed = 21\nN=300\nalpha=piOver4\n";
    }
    text += "t-grid=100:1000:3\n";
    const auto cfg = write("cfg" + std::to_string(idx) + ".txt", text);
    const auto out = scratch() / ("out" + std::to_string(idx++));
    std::vector<std::string> args{"exp-tail", "--config", cfg, "--out", out.string()};
    if (c.on_flag) {
      args.insert(args.end(), {"--seed", "33", "--N", "200", "--alpha", "0.3"});
    }
    if (!c.in_file && !c.on_flag) {
      args.insert(args.end(), {"--N", "150"});
    }
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto doc = summary(out)["config"];
    if (c.on_flag) {
      CHECK(doc["seed"] == 33);
      CHECK(doc["N"] == 200);
      CHECK(doc["alpha"].get<double>() == doctest::Approx(0.3));
    } else if (c.in_file) {
      CHECK(doc["seed"] == 21);
      CHECK(doc["N"] == 300);
      CHECK(doc["alpha"].get<double>() == doctest::Approx(capcond::kPi / 4));
    } else {
      CHECK(doc["seed"] == 1);
      CHECK(doc["N"] == 150);
      CHECK(doc["alpha"].get<double>() == doctest::Approx(capcond::kPi / 6));
    }
    CHECK(doc["t_grid"].size() == 3);
  }
  const auto bad = write("badcfg.txt", "no equals sign here\n");
  CHECK(run({"exp-tail", "--config", bad}).code == 1);
}

TEST_CASE("experiment commands") {
  const auto dir = scratch() / "wendel";
  const auto w = run({"exp-wendel", "--m", "2", "--k", "4:10", "--N", "100000", "--seed", "7",
                      "--out", dir.string()});
  CHECK(w.code == 0);
  const auto doc = summary(dir);
  CHECK(doc["wendel_table"]["rows"].size() == 7);
  CHECK(doc["verdict"] == "pass");

  const auto w1 = scratch() / "wendel-w1", w2 = scratch() / "wendel-w2";
  for (const auto& [d, workers] : {std::pair{w1, "1"}, std::pair{w2, "2"}}) {
    CHECK(run({"exp-wendel", "--m", "2", "--k", "4:6", "--N", "20000", "--seed", "7", "--out",
               d.string(), "--workers", workers})
              .code == 0);
  }
  std::ifstream f1(w1 / "summary.json"), f2(w2 / "summary.json");
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());

  CHECK(run({"exp-tube", "--phi", "0.5", "--N", "100", "--out", (scratch() / "t").string()})
            .code == 1);
  CHECK(run({"exp-tail", "--beta", "3", "--N", "10"}).code == 1);
  CHECK(run({"exp-tail", "--alpha", "piOverX", "--N", "10"}).code == 1);
  CHECK(run({"exp-mean", "--delta-mode", "sideways", "--N", "10"}).code == 1);

  const auto m = run({"exp-mean", "--N", "1", "--out", (scratch() / "mean1").string()});
  CHECK(m.code == 0);
  CHECK(m.out.find("warning") != std::string::npos);
}

TEST_CASE("argument parsers") {
  using namespace capcond::cli;
  CHECK(parse_angle("piOver6") == doctest::Approx(capcond::kPi / 6));
  CHECK(parse_angle("0.25") == 0.25);
  CHECK_THROWS(parse_angle("pi/6"));
  const auto g = parse_t_grid("10:1000:3");
  REQUIRE(g.size() == 3);
  CHECK(g[1] == doctest::Approx(100));
  CHECK_THROWS(parse_t_grid("10:5:3"));
  CHECK(parse_k_list("4:7") == std::vector<int>{4, 5, 6, 7});
  CHECK(parse_k_list("4,6,9") == std::vector<int>{4, 6, 9});
}
