#include "capcond/sic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "capcond/combinations.hpp"
#include "capcond/rng.hpp"

namespace capcond {

namespace {

constexpr double kGramConditionLimit = 1e12;

struct Candidate {
  Vector center;
  double radius = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> support;
};

template <class Small>
bool equidistant_direction_impl(const Matrix& a, const Matrix& gram,
                                const std::vector<int>& subset, Vector& out) {
  const auto k = static_cast<Eigen::Index>(subset.size());
  Small g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g(i, j) = gram(subset[static_cast<std::size_t>(i)], subset[static_cast<std::size_t>(j)]);
    }
  }
  Eigen::LDLT<Small> ldlt(g);
  const auto diag = ldlt.vectorD().cwiseAbs().eval();
  const double dmin = diag.minCoeff();
  if (ldlt.info() != Eigen::Success || !(dmin > 0.0) ||
      diag.maxCoeff() / dmin >= kGramConditionLimit) {
    return false;
  }
  using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, Small::MaxRowsAtCompileTime, 1>;
  const SmallVec lambda = ldlt.solve(SmallVec::Ones(k));
  out.setZero(a.rows());
  for (Eigen::Index i = 0; i < k; ++i) {
    out += lambda[i] * a.col(subset[static_cast<std::size_t>(i)]);
  }
  const double norm = out.norm();
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    return false;
  }
  out /= norm;
  return true;
}

// Equidistant direction sum lambda_i a_i with G lambda = 1 over the subset.
bool equidistant_direction(const Matrix& a, const Matrix& gram, const std::vector<int>& subset,
                           Vector& out) {
  if (subset.size() <= 6) {
    return equidistant_direction_impl<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 6, 6>>(
        a, gram, subset, out);
  }
  return equidistant_direction_impl<Matrix>(a, gram, subset, out);
}

template <class Small>
bool subset_normal_impl(const Matrix& a, const std::vector<int>& subset, Vector& out) {
  const auto k = static_cast<Eigen::Index>(subset.size());
  const auto d = a.rows();
  Small cols(d, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    cols.col(r) = a.col(subset[static_cast<std::size_t>(r)]);
  }
  Eigen::ColPivHouseholderQR<Small> qr(cols);
  const auto& r = qr.matrixQR();
  if (std::abs(r(k - 1, k - 1)) <= 1e-10 * std::abs(r(0, 0))) {
    return false;
  }
  Small q = qr.householderQ();
  out = q.col(d - 1);
  return true;
}

// Unit normal of the hyperplane spanned by an m-subset (ambient dim m+1).
bool subset_normal(const Matrix& a, const std::vector<int>& subset, Vector& out) {
  if (a.rows() <= 7) {
    return subset_normal_impl<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 7, 7>>(
        a, subset, out);
  }
  return subset_normal_impl<Matrix>(a, subset, out);
}

void offer(Candidate& best, const Matrix& a, const Vector& center, double sign,
           const std::vector<int>& subset) {
  double lowest = 1.0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    lowest = std::min(lowest, sign * a.col(i).dot(center));
  }
  const double r = std::acos(std::clamp(lowest, -1.0, 1.0));
  if (r < best.radius) {
    best.center = sign * center;
    best.radius = r;
    best.support.assign(subset.begin(), subset.end());
  }
}

// Every circumcap (both signs) over subsets of `pool` of size 1..m+1, then
// the +-normals of m-subsets when nothing below pi/2 has turned up.
void enumerate_candidates(const Matrix& a, const Matrix& gram, const std::vector<int>& pool,
                          Candidate& best) {
  const int d = static_cast<int>(a.rows());
  const int pool_size = static_cast<int>(pool.size());
  Vector dir;
  std::vector<int> idx, subset;
  for (int size = 1; size <= std::min(d, pool_size); ++size) {
    idx.resize(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    do {
      subset.clear();
      for (int i : idx) {
        subset.push_back(pool[static_cast<std::size_t>(i)]);
      }
      if (!equidistant_direction(a, gram, subset, dir)) {
        continue;
      }
      offer(best, a, dir, 1.0, subset);
      offer(best, a, dir, -1.0, subset);
    } while (next_combination(idx, pool_size));
  }
  const int m = d - 1;
  if (best.radius < kHalfPi - 1e-6 || pool_size < m) {
    return;
  }
  idx.resize(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  do {
    subset.clear();
    for (int i : idx) {
      subset.push_back(pool[static_cast<std::size_t>(i)]);
    }
    if (!subset_normal(a, subset, dir)) {
      continue;
    }
    offer(best, a, dir, 1.0, subset);
    offer(best, a, dir, -1.0, subset);
  } while (next_combination(idx, pool_size));
}

// Reports as support every point on the boundary of the chosen cap.
SicResult finish(const Matrix& a, const Candidate& c) {
  if (!std::isfinite(c.radius)) {
    throw SicNonConvergence(0.0, kPi);
  }
  std::vector<std::size_t> support;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    const double d = std::acos(std::clamp(a.col(i).dot(c.center), -1.0, 1.0));
    if (std::abs(d - c.radius) <= 1e-8) {
      support.push_back(static_cast<std::size_t>(i));
    }
  }
  if (support.empty()) {
    support = c.support;
  }
  return {SpherePoint::from_direction(c.center), c.radius, std::move(support),
          class_from_radius(c.radius), cond_from_radius(c.radius),
          std::abs(kHalfPi - c.radius)};
}

void require_points(std::span<const SpherePoint> points) {
  if (points.empty()) {
    throw DomainError("smallest including cap needs at least one point");
  }
  as_columns(points);  // dimension check
}

SpherePoint random_start(std::size_t ambient, RngStream& rng) {
  Vector v(static_cast<Eigen::Index>(ambient));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = rng.normal();
  }
  return SpherePoint::from_direction(v);
}

} // namespace

SicNonConvergence::SicNonConvergence(double lower, double upper)
    : Error("SIC solver did not converge; radius bracket [" + std::to_string(lower) + ", " +
            std::to_string(upper) + "]"),
      lower_(lower), upper_(upper) {}

Cap circumcap(std::span<const SpherePoint> points, int sign) {
  if (points.empty() || points.size() > points.front().ambient_dim()) {
    throw DomainError("circumcap needs between 1 and m+1 points");
  }
  if (sign != 1 && sign != -1) {
    throw DomainError("circumcap sign must be +1 or -1");
  }
  const Matrix a = as_columns(points);
  const Matrix gram = a.transpose() * a;
  std::vector<int> all(points.size());
  std::iota(all.begin(), all.end(), 0);
  Vector dir;
  if (!equidistant_direction(a, gram, all, dir)) {
    throw DegenerateSubset("Gram matrix of the subset is numerically singular");
  }
  dir *= sign;
  const double c = a.col(0).dot(dir);
  return Cap(SpherePoint::from_direction(dir), std::acos(std::clamp(c, -1.0, 1.0)));
}

FeasibilityClass class_from_radius(double rho) {
  if (rho < kHalfPi - kIllPosedBand) {
    return FeasibilityClass::StrictlyFeasible;
  }
  if (rho > kHalfPi + kIllPosedBand) {
    return FeasibilityClass::Infeasible;
  }
  return FeasibilityClass::IllPosed;
}

double cond_from_radius(double rho) {
  if (std::abs(rho - kHalfPi) <= kIllPosedBand) {
    return std::numeric_limits<double>::infinity();
  }
  return 1.0 / std::abs(std::cos(rho));
}

SicResult sic_bruteforce(std::span<const SpherePoint> points) {
  require_points(points);
  const std::size_t d = points.front().ambient_dim();
  if (binomial(points.size(), std::min(d, points.size())) > kBruteForceSubsetLimit) {
    throw InstanceTooLarge("brute-force SIC would enumerate more than 1e7 subsets");
  }
  const Matrix a = as_columns(points);
  const Matrix gram = a.transpose() * a;
  std::vector<int> pool(points.size());
  std::iota(pool.begin(), pool.end(), 0);
  Candidate best;
  enumerate_candidates(a, gram, pool, best);
  return finish(a, best);
}

SicResult sic_bruteforce(const Instance& a) { return sic_bruteforce(a.rows()); }

SicResult sic_solve(std::span<const SpherePoint> points, const SubgradientOptions& opt) {
  require_points(points);
  const Matrix a = as_columns(points);
  const Matrix gram = a.transpose() * a;
  const auto n = static_cast<int>(points.size());
  const std::size_t d = points.front().ambient_dim();
  const int pool_size = std::min(n, static_cast<int>(d) + 2);

  std::vector<SpherePoint> starts;
  RngStream rng(opt.seed, 0);
  for (int r = 0; r < opt.random_restarts; ++r) {
    starts.push_back(random_start(d, rng));
  }
  starts.insert(starts.end(), points.begin(), points.end());

  Candidate overall;
  double upper = kPi;
  std::vector<int> order(static_cast<std::size_t>(n));
  for (const auto& start : starts) {
    Vector p = start.coords();
    Vector best_p = p;
    double best_f = (a.transpose() * p).minCoeff();
    for (int t = 1; t <= opt.iterations; ++t) {
      Eigen::Index low = 0;
      (a.transpose() * p).minCoeff(&low);
      const Vector g = a.col(low) - a.col(low).dot(p) * p;
      p += (opt.step / std::sqrt(static_cast<double>(t))) * g;
      p.normalize();
      const double f = (a.transpose() * p).minCoeff();
      if (f > best_f) {
        best_f = f;
        best_p = p;
      }
    }
    upper = std::min(upper, std::acos(std::clamp(best_f, -1.0, 1.0)));

    // Polish: exact candidates from the points closest to the cap boundary,
    // repeated while the radius keeps shrinking.
    Candidate local;
    Vector probe = best_p;
    for (int round = 0; round < 20; ++round) {
      const Vector dots = a.transpose() * probe;
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int i, int j) { return dots[i] < dots[j]; });
      int take = pool_size;
      while (take < n && dots[order[static_cast<std::size_t>(take)]] <=
                             dots[order[0]] + opt.support_slack) {
        ++take;
      }
      std::vector<int> pool(order.begin(), order.begin() + take);
      std::sort(pool.begin(), pool.end());
      const double before = local.radius;
      enumerate_candidates(a, gram, pool, local);
      if (!(local.radius < before)) {
        break;
      }
      probe = local.center;
    }
    if (local.radius < overall.radius) {
      overall = std::move(local);
    }
  }
  if (!std::isfinite(overall.radius)) {
    double lower = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        lower = std::max(lower, 0.5 * angular_distance(points[static_cast<std::size_t>(i)],
                                                       points[static_cast<std::size_t>(j)]));
      }
    }
    throw SicNonConvergence(lower, upper);
  }
  return finish(a, overall);
}

SicResult sic_solve(const Instance& a, const SubgradientOptions& options) {
  return sic_solve(a.rows(), options);
}

SicResult compute_sic(std::span<const SpherePoint> points, SicMethod method) {
  switch (method) {
  case SicMethod::BruteForce:
    return sic_bruteforce(points);
  case SicMethod::Subgradient:
    return sic_solve(points);
  case SicMethod::Auto: {
    const std::size_t d = points.empty() ? 0 : points.front().ambient_dim();
    std::uint64_t total = 0;
    for (std::size_t s = 1; s <= d; ++s) {
      total += binomial(points.size(), s);
    }
    return total <= 20000 ? sic_bruteforce(points) : sic_solve(points);
  }
  }
  return sic_solve(points);
}

CondSummary cond_and_class(const Instance& a, SicMethod method) {
  const auto r = compute_sic(a.rows(), method);
  return {r.cond, r.cls, r.dist_to_sigma};
}

std::vector<PrefixEntry> prefix_cond_profile(const Instance& a, SicMethod method) {
  std::vector<PrefixEntry> out;
  for (std::size_t k = a.m() + 2; k <= a.n(); ++k) {
    const auto s = cond_and_class(a.prefix(k), method);
    out.push_back({k, s.cond, s.cls});
  }
  return out;
}

} // namespace capcond
