// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "capcond/convex.hpp"
#include "capcond/experiments.hpp"
#include "capcond/feasibility.hpp"
#include "capcond/report.hpp"
#include "capcond/sic.hpp"

using namespace capcond;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SpherePoint random_point(std::mt19937_64& gen, std::size_t m) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(m + 1));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = normal(gen);
  }
  return SpherePoint::from_direction(v);
}

// Point at angular distance delta from a in a uniformly random direction.
SpherePoint displace(const SpherePoint& a, double delta, std::mt19937_64& gen) {
  Vector u = random_point(gen, a.dim()).coords();
  u -= u.dot(a.coords()) * a.coords();
  u.normalize();
  return SpherePoint::from_direction(std::cos(delta) * a.coords() + std::sin(delta) * u);
}

ExperimentConfig base(ExperimentKind kind, std::uint64_t N, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.N = N;
  cfg.seed = seed;
  return cfg;
}

// The 500 instances shared by criteria 2 and 3.
std::vector<Instance> mixed_instances() {
  std::mt19937_64 gen(20260501);
  std::vector<Instance> out;
  const double alphas[] = {kPi / 6, kPi / 4, kPi / 3};
  const double betas[] = {0.0, 0.5, 1.0};
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 2);
    const std::size_t n = m + 2 + static_cast<std::size_t>(gen() % (9 - m));
    if (t % 4 < 2) {
      out.emplace_back(uniform_points(n, m, 77, static_cast<std::uint64_t>(t)));
      continue;
    }
    std::vector<SpherePoint> centers;
    const auto c = random_point(gen, m);
    for (std::size_t i = 0; i < n; ++i) {
      // Half the center sets cluster, which gives feasible instances near the boundary.
      centers.push_back(t % 4 == 2 ? random_point(gen, m)
                                   : SpherePoint::from_direction(
                                         c.coords() + 0.7 * random_point(gen, m).coords()));
    }
    const auto p = make_adversarial_params(static_cast<int>(m), alphas[t % 3], betas[(t / 3) % 3]);
    out.push_back(sample_instance(Instance(centers), p, 78, static_cast<std::uint64_t>(t)));
  }
  return out;
}

Outcome wendel() {
  auto cfg = base(ExperimentKind::Wendel, 200000, 7);
  cfg.k_values = {4, 6, 8};
  const auto res = run_wendel_experiment(cfg);
  const Dyadic expected[] = {{7, 3}, {1, 1}, {29, 7}};
  bool ok = res.wendel->rows.size() == 3;
  std::string detail;
  for (std::size_t i = 0; i < res.wendel->rows.size(); ++i) {
    const auto& r = res.wendel->rows[i];
    ok = ok && r.pass && r.p_exact == expected[i] &&
         std::abs(r.p_hat - r.p_exact.value()) <= r.tolerance;
    detail += fmt("k=%d p=%s p_hat=%.5f tol=%.5f; ", r.k, r.p_exact.str().c_str(), r.p_hat,
                  r.tolerance);
  }
  return {ok, detail};
}

Outcome sic_equivalence(const std::vector<Instance>& inst) {
  std::size_t agree = 0;
  double worst = 0;
  for (const auto& a : inst) {
    const double diff = std::abs(sic_solve(a).rho - sic_bruteforce(a).rho);
    worst = std::max(worst, diff);
    agree += diff <= 1e-8;
  }
  return {agree == inst.size(),
          fmt("%zu/%zu instances within 1e-8, worst |diff| = %.3g", agree, inst.size(), worst)};
}

Outcome classification(const std::vector<Instance>& inst) {
  if (inst.size() != 500) {
    return {false, "instances unavailable"};
  }
  std::size_t outside = 0, agree = 0, band = 0;
  std::size_t sf = 0, inf = 0;
  for (const auto& a : inst) {
    const auto s = sic_bruteforce(a);
    if (std::abs(s.rho - kHalfPi) <= kIllPosedBand) {
      ++band;
      continue;
    }
    ++outside;
    sf += s.cls == FeasibilityClass::StrictlyFeasible;
    inf += s.cls == FeasibilityClass::Infeasible;
    agree += s.cls == gordan_classify(a);
  }
  return {agree == outside && band <= 1,
          fmt("%zu/%zu agree outside the band (SF %zu, IF %zu), band hits %zu", agree, outside,
              sf, inf, band)};
}

Outcome perturbation() {
  std::mt19937_64 gen(4);
  std::size_t violations = 0, trials = 0;
  double smallest = kPi;
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 2);
    std::vector<SpherePoint> rows;
    for (std::size_t i = 0; i < m + 3; ++i) {
      rows.push_back(random_point(gen, m));
    }
    const auto s = sic_bruteforce(rows);
    const double d = s.dist_to_sigma;
    smallest = std::min(smallest, d);
    for (int k = 0; k < 200; ++k) {
      std::vector<SpherePoint> moved;
      for (const auto& r : rows) {
        moved.push_back(displace(r, 0.9 * d, gen));
      }
      ++trials;
      violations += sic_bruteforce(moved).cls != s.cls;
    }
  }
  return {violations == 0, fmt("%zu perturbations, %zu class changes, smallest d(A, Sigma) = %.3g",
                               trials, violations, smallest)};
}

struct TailRuns {
  ExperimentResult beta0, beta1;
};

TailRuns tail_runs() {
  auto cfg = base(ExperimentKind::Tail, 100000, 1);
  TailRuns out{run_tail_experiment(cfg), {}};
  cfg.beta = 1.0;
  out.beta1 = run_tail_experiment(cfg);
  return out;
}

Outcome tail_F(const TailRuns& runs) {
  if (!runs.beta0.tail || !runs.beta1.tail) {
    return {false, "tail runs unavailable"};
  }
  bool ok = true;
  std::string detail;
  for (const auto* r : {&runs.beta0, &runs.beta1}) {
    std::size_t covered = 0, passed = 0;
    double worst = 0;
    for (const auto& row : *r->tail) {
      if (!row.covered) {
        continue;
      }
      ++covered;
      passed += row.pass_F.value_or(false);
      worst = std::max(worst, (row.emp_F - 3 * row.se_F) / row.bound_F);
    }
    ok = ok && covered > 0 && passed == covered;
    detail += fmt("beta=%g: %zu/%zu covered points pass, max (emp-3SE)/bound = %.3g; ",
                  r->config.beta, passed, covered, worst);
  }
  return {ok, detail};
}

Outcome tail_I(const TailRuns& runs) {
  if (!runs.beta0.tail || !runs.beta1.tail) {
    return {false, "tail runs unavailable"};
  }
  bool ok = true;
  std::string detail;
  for (const auto* r : {&runs.beta0, &runs.beta1}) {
    std::size_t points = 0, passed = 0;
    double worst = 0;
    for (const auto& row : *r->tail) {
      if (row.t < 1) {
        continue;
      }
      ++points;
      passed += row.pass_I;
      worst = std::max(worst, (row.emp_I - 3 * row.se_I) / row.bound_I);
    }
    ok = ok && points > 0 && passed == points;
    detail += fmt("beta=%g: %zu/%zu points pass, max (emp-3SE)/bound = %.3g; ", r->config.beta,
                  passed, points, worst);
  }
  return {ok, detail};
}

Outcome expectation() {
  bool ok = true;
  std::string detail;
  for (const char* center : {"random", "equal", "great-circle"}) {
    auto cfg = base(ExperimentKind::Expectation, 100000, 3);
    cfg.center = center;
    const auto res = run_expectation_experiment(cfg);
    const auto& e = *res.expectation;
    ok = ok && e.pass.value_or(false) && e.mean + 3 * e.se <= e.bound;
    detail += fmt("%s: mean %.4f + 3SE %.4f <= %.3f (overflow %llu); ", center, e.mean,
                  3 * e.se, e.bound, static_cast<unsigned long long>(e.overflow));
  }
  return {ok, detail};
}

Outcome duality() {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> unif;
  int caps = 0;
  double worst_cap = 0;
  while (caps < 1000) {
    const Cap k(random_point(gen, 2 + gen() % 3), unif(gen) * kHalfPi);
    const auto a = random_point(gen, k.center.dim());
    const double dc = angular_distance(a, k.center);
    if (dc <= k.radius || angular_distance(a, -k.center) <= kHalfPi - k.radius) {
      continue;
    }
    const auto d = cap_distance_suite(a, k);
    worst_cap = std::max(worst_cap, std::abs(d.to_set + d.to_dual - kHalfPi));
    ++caps;
  }
  int polys = 0;
  double worst_poly = 0;
  while (polys < 200) {
    const std::size_t m = 2 + gen() % 2;
    const auto c = random_point(gen, m);
    std::vector<SpherePoint> g;
    for (std::size_t i = 0; i < m + 2; ++i) {
      g.push_back(SpherePoint::from_direction(c.coords() + 0.6 * random_point(gen, m).coords()));
    }
    const SpherePolytope p(g);
    const auto a = random_point(gen, m);
    const double dk = distance_to_sconv(a, p);
    const double dd = distance_to_dual(a, p);
    if (dk < 1e-6 || dd < 1e-6) {
      continue;
    }
    worst_poly = std::max(worst_poly, std::abs(dk + dd - kHalfPi));
    ++polys;
  }
  return {worst_cap <= 1e-10 && worst_poly <= 1e-6,
          fmt("caps: %d cases, worst %.3g (tol 1e-10); polytopes: %d cases, worst %.3g (tol 1e-6)",
              caps, worst_cap, polys, worst_poly)};
}

Outcome tube() {
  bool ok = true;
  std::string detail;
  for (int m : {2, 3}) {
    auto cfg = base(ExperimentKind::Tube, 200000, 9);
    cfg.m = m;
    const auto res = run_tube_experiment(cfg);
    ok = ok && res.tube->size() == 3;
    for (const auto& r : *res.tube) {
      ok = ok && r.eps <= r.sigma / (2 * m) && r.pass_outer && r.pass_inner;
      detail += fmt("m=%d %s: outer %.4f inner %.4f bound %.4f; ", m, r.config.label.c_str(),
                    r.outer, r.inner, r.bound);
    }
  }
  return {ok, detail};
}

Outcome properties() {
  auto cfg = base(ExperimentKind::PropertySuite, 6000, 10);
  const auto res = run_property_suite(cfg);
  bool ok = true;
  std::string detail;
  for (const auto& c : *res.properties) {
    ok = ok && c.qualifying >= 200 && c.violations == 0 && c.verdict == Verdict::Pass;
    detail += fmt("%s %llu/%llu violations %llu; ", c.name.c_str(),
                  static_cast<unsigned long long>(c.qualifying),
                  static_cast<unsigned long long>(c.attempted),
                  static_cast<unsigned long long>(c.violations));
  }
  return {ok, detail};
}

Outcome sampler() {
  bool ok = true;
  std::string detail;
  for (double beta : {0.0, 0.5, 1.0}) {
    auto cfg = base(ExperimentKind::SamplerCheck, 100000, 11);
    cfg.beta = beta;
    const auto s = *run_sampler_check(cfg).sampler;
    const bool with_oracle = beta == 0.0;
    ok = ok && s.pass && s.ks_radial <= s.threshold && s.max_support_violation == 0 &&
         s.ks_rejection.has_value() == with_oracle &&
         (!with_oracle || *s.ks_rejection <= s.threshold);
    detail += fmt("beta=%g: radial %.4f", beta, s.ks_radial);
    if (s.ks_direction) {
      detail += fmt(" direction %.4f", *s.ks_direction);
    }
    if (s.ks_rejection) {
      detail += fmt(" rejection %.4f", *s.ks_rejection);
    }
    detail += fmt(" (limit %.4f); ", s.threshold);
  }
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const auto root = fs::temp_directory_path() / "capcond_acceptance_determinism";
  fs::remove_all(root);
  std::vector<ExperimentConfig> cfgs{base(ExperimentKind::Tail, 20000, 12),
                                     base(ExperimentKind::Expectation, 20000, 12),
                                     base(ExperimentKind::Wendel, 20000, 12),
                                     base(ExperimentKind::Tube, 20000, 12),
                                     base(ExperimentKind::PropertySuite, 2000, 12),
                                     base(ExperimentKind::SamplerCheck, 20000, 12)};
  cfgs[0].beta = 0.5;
  std::size_t identical = 0;
  std::string differing;
  for (auto cfg : cfgs) {
    const std::string name(kind_name(cfg.kind));
    for (int workers : {1, 2, 4}) {
      cfg.workers = workers;
      persist(run_experiment(cfg), root / name / std::to_string(workers));
    }
    bool same = true;
    for (const char* file : {"samples.csv", "summary.json"}) {
      const auto ref = slurp(root / name / "1" / file);
      for (const char* w : {"2", "4"}) {
        same = same && !ref.empty() && slurp(root / name / w / file) == ref;
      }
    }
    identical += same;
    if (!same) {
      differing += name + " ";
    }
  }
  fs::remove_all(root);
  return {identical == cfgs.size(),
          fmt("%zu/%zu experiment kinds byte-identical across 1, 2 and 4 workers%s%s", identical,
              cfgs.size(), differing.empty() ? "" : "; differing: ", differing.c_str())};
}

} // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %2d %s  %s [%.1fs]: %s\n", id, o.pass ? "PASS" : "FAIL", title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "Wendel exactness", wendel);
  std::vector<Instance> instances;
  report(2, "SIC solver vs brute force", [&] {
    instances = mixed_instances();
    return sic_equivalence(instances);
  });
  report(3, "SIC class vs Gordan LP class", [&] { return classification(instances); });
  report(4, "class stable under perturbations of 0.9 d(A, Sigma)", perturbation);
  TailRuns runs;
  report(5, "feasible tail bound", [&] {
    runs = tail_runs();
    return tail_F(runs);
  });
  report(6, "infeasible tail bound", [&] { return tail_I(runs); });
  report(7, "expectation bound for ln cond", expectation);
  report(8, "d(a, K) + d(a, K-dual) = pi/2", duality);
  report(9, "relative volume of boundary neighborhoods", tube);
  report(10, "property suite AF / IF / CCine / multrva", properties);
  report(11, "sampler fidelity", sampler);
  report(12, "determinism across worker counts", determinism);
  return failures == 0 ? 0 : 1;
}
