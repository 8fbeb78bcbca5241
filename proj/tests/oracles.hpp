#pragma once

// Independent reference computations used by the tests. None of these call
// the code paths they are compared against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "capcond/simplex.hpp"
#include "capcond/sphere.hpp"

namespace oracle {

using capcond::Matrix;
using capcond::SpherePoint;
using capcond::Vector;

inline SpherePoint random_point(std::mt19937_64& gen, std::size_t m) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(m + 1));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = normal(gen);
  }
  return SpherePoint::from_direction(v);
}

/// Composite Simpson rule on a uniform grid.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) {
    ++panels;
  }
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  }
  return s * h / 3.0;
}

/// Numerator of sum_{i<=m} C(k-1, i) from Pascal's triangle, with denominator 2^{k-1}.
inline std::uint64_t pascal_wendel_numerator(int k, int m) {
  std::vector<std::uint64_t> row{1};
  for (int r = 1; r <= k - 1; ++r) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(r + 1), 1);
    for (int i = 1; i < r; ++i) {
      next[static_cast<std::size_t>(i)] =
          row[static_cast<std::size_t>(i - 1)] + row[static_cast<std::size_t>(i)];
    }
    row = std::move(next);
  }
  std::uint64_t sum = 0;
  for (int i = 0; i <= m && i < static_cast<int>(row.size()); ++i) {
    sum += row[static_cast<std::size_t>(i)];
  }
  return sum;
}

/// x in cone(generators), decided by a phase-one LP (no NNLS involved).
inline bool in_cone_lp(const Vector& x, const Matrix& gens) {
  capcond::SimplexProblem p;
  p.objective = Vector::Zero(gens.cols());
  p.equality = gens;
  p.rhs = x;
  return capcond::simplex_solve(p).status == capcond::LpStatus::Optimal;
}

/// Distance from an interior point of sconv(gens) in S^2 to its boundary:
/// the exit angle along a great circle is bisected for 4096 random tangent
/// directions, then the best direction is refined by golden-section search.
inline double dense_boundary_distance(const SpherePoint& x, const Matrix& gens, int directions,
                                      std::uint64_t seed) {
  const Vector& p = x.coords();
  Vector t1 = Vector::Zero(3);
  t1[std::abs(p[0]) < 0.9 ? 0 : 1] = 1.0;
  t1 -= t1.dot(p) * p;
  t1.normalize();
  const Vector t2 = Eigen::Vector3d(p[0], p[1], p[2]).cross(Eigen::Vector3d(t1[0], t1[1], t1[2]));
  auto exit_angle = [&](double psi) {
    const Vector u = std::cos(psi) * t1 + std::sin(psi) * t2;
    double lo = 0.0, hi = capcond::kPi;
    if (!in_cone_lp(std::cos(lo) * p, gens)) {
      return 0.0;
    }
    for (int it = 0; it < 45; ++it) {
      const double mid = 0.5 * (lo + hi);
      (in_cone_lp(std::cos(mid) * p + std::sin(mid) * u, gens) ? lo : hi) = mid;
    }
    return hi;
  };
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * capcond::kPi);
  double best = capcond::kPi, best_psi = 0.0;
  for (int d = 0; d < directions; ++d) {
    const double psi = angle(gen);
    const double v = exit_angle(psi);
    if (v < best) {
      best = v;
      best_psi = psi;
    }
  }
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_psi - 0.05, b = best_psi + 0.05;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = exit_angle(c), fd = exit_angle(d);
  for (int it = 0; it < 40; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = exit_angle(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = exit_angle(d);
    }
  }
  return std::min({best, fc, fd});
}

/// Brute-force minimum of d(x, normalize(sum w_i g_i)) over grids of weights
/// on the simplex: a full grid with the given number of steps, then local
/// grids of shrinking width around the best weights found so far.
inline double grid_distance_to_sconv(const SpherePoint& x, const std::vector<SpherePoint>& gens,
                                     int steps, int zoom_levels = 30) {
  const int k = static_cast<int>(gens.size());
  const auto K = static_cast<std::size_t>(k);
  double best = capcond::kPi;
  std::vector<double> best_w(K, 1.0 / k), w(K, 0.0);
  auto evaluate = [&] {
    Vector z = Vector::Zero(x.coords().size());
    for (std::size_t i = 0; i < K; ++i) {
      z += w[i] * gens[i].coords();
    }
    const double norm = z.norm();
    if (norm > 1e-12) {
      const double d = std::acos(std::clamp(x.coords().dot(z) / norm, -1.0, 1.0));
      if (d < best) {
        best = d;
        best_w = w;
      }
    }
  };
  // Free coordinates 0..k-2 range over center[i] + j * h, j in [-span, span];
  // the last weight is one minus the rest.
  std::function<void(int, double, const std::vector<double>&, double, int)> rec =
      [&](int idx, double used, const std::vector<double>& center, double h, int span) {
        if (idx == k - 1) {
          w[K - 1] = 1.0 - used;
          if (w[K - 1] >= -1e-15) {
            w[K - 1] = std::max(w[K - 1], 0.0);
            evaluate();
          }
          return;
        }
        for (int j = -span; j <= span; ++j) {
          const double v = center[static_cast<std::size_t>(idx)] + j * h;
          if (v < -1e-15 || used + v > 1.0 + 1e-15) {
            continue;
          }
          w[static_cast<std::size_t>(idx)] = std::max(v, 0.0);
          rec(idx + 1, used + w[static_cast<std::size_t>(idx)], center, h, span);
        }
      };
  rec(0, 0.0, std::vector<double>(K, 0.0), 1.0 / steps, steps);
  double h = 1.0 / steps;
  for (int level = 0; level < zoom_levels; ++level) {
    const std::vector<double> center = best_w;
    h *= 0.4;
    rec(0, 0.0, center, h, 8);
  }
  return best;
}

/// Distance on S^2 from x to sconv(gens). Outside the cone the nearest point
/// lies on the arc between two generators, so the minimum over all arcs is exact.
inline double arc_distance_to_sconv(const SpherePoint& x, const std::vector<SpherePoint>& gens) {
  Matrix g(3, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    g.col(static_cast<Eigen::Index>(i)) = gens[i].coords();
  }
  if (in_cone_lp(x.coords(), g)) {
    return 0.0;
  }
  const Eigen::Vector3d p(x[0], x[1], x[2]);
  double best = capcond::kPi;
  for (const auto& a : gens) {
    best = std::min(best, std::acos(std::clamp(p.dot(a.coords()), -1.0, 1.0)));
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Eigen::Vector3d a(gens[i][0], gens[i][1], gens[i][2]);
      const Eigen::Vector3d b(gens[j][0], gens[j][1], gens[j][2]);
      const Eigen::Vector3d n = a.cross(b).normalized();
      const Eigen::Vector3d q = p - p.dot(n) * n;
      if (q.norm() < 1e-14) {
        continue;
      }
      // q = s a + t b with s, t >= 0 means the foot lies on the arc.
      Eigen::Matrix2d m;
      m << a.dot(a), a.dot(b), a.dot(b), b.dot(b);
      const Eigen::Vector2d st = m.ldlt().solve(Eigen::Vector2d(a.dot(q), b.dot(q)));
      if (st[0] >= 0 && st[1] >= 0) {
        best = std::min(best, std::acos(std::clamp(q.norm(), -1.0, 1.0)));
      }
    }
  }
  return best;
}

/// Reference Philox4x64-10 outputs generated with numpy.random.Philox.
struct PhiloxVector {
  std::uint64_t key0, key1;
  std::uint64_t ctr0, ctr1;
  std::uint64_t out[4];
};

inline const std::vector<PhiloxVector>& philox_vectors() {
  static const std::vector<PhiloxVector> v{
      {0, 0, 1, 0, {0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
                    0x907d7a052fd5b4dcULL}},
      {0x0123456789abcdefULL, 0xfedcba9876543210ULL, 6, 7,
       {0xf813738104fcfe4eULL, 0x45466d81e93de89bULL, 0x7207733afccb142eULL,
        0xa8a97a2db9120b38ULL}},
      {0x0123456789abcdefULL, 0xfedcba9876543210ULL, 7, 7,
       {0xc16e0db06b1f8676ULL, 0xb444965a1380d153ULL, 0x1509b8bf99b965d5ULL,
        0xa4712eed08844829ULL}},
  };
  return v;
}

} // namespace oracle
