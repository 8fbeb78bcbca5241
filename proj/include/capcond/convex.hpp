#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "capcond/sphere.hpp"

namespace capcond {

/// sconv(b_1, ..., b_k) = cone(b_1, ..., b_k) intersected with S^m.
///
/// Facet normals are computed on first use and shared by copies. Each
/// normal n is outward: <n, b_i> <= 0 for every generator.
class SpherePolytope {
public:
  explicit SpherePolytope(std::vector<SpherePoint> generators);

  const std::vector<SpherePoint>& generators() const noexcept { return generators_; }
  const Matrix& generator_matrix() const noexcept { return matrix_; }
  std::size_t ambient_dim() const noexcept { return generators_.front().ambient_dim(); }
  /// Numerical rank of the generator matrix.
  int span_rank() const;
  bool full_dimensional() const { return span_rank() == static_cast<int>(ambient_dim()); }
  /// Properly convex, i.e. the cone is pointed: 0 is not in conv(generators).
  bool properly_convex() const;
  const std::vector<Vector>& facet_normals() const;

  /// -sconv(generators).
  SpherePolytope negated() const;

private:
  struct FacetCache {
    std::once_flag once;
    std::vector<Vector> normals;
  };

  std::vector<SpherePoint> generators_;
  Matrix matrix_;
  std::shared_ptr<FacetCache> facets_;
};

struct ConeProjection {
  Vector point;         ///< nearest point z of cone(generators)
  Vector coefficients;  ///< lambda >= 0 with z = sum lambda_i b_i
  double kkt_residual = 0.0;
};

/// Euclidean projection of x onto cone(generators) by nonnegative least squares.
ConeProjection project_onto_cone(const SpherePoint& x, const SpherePolytope& p);

/// Membership in sconv up to a residual of 1e-12.
bool in_sconv(const SpherePoint& x, const SpherePolytope& p);

/// min over y in sconv of d(x, y).
double distance_to_sconv(const SpherePoint& x, const SpherePolytope& p);
/// d(x, K-dual) where K-dual = {y : <y, b_i> <= 0 for all i}.
double distance_to_dual(const SpherePoint& x, const SpherePolytope& p);
/// d(x, boundary of sconv); requires a full-dimensional hull.
double distance_to_boundary(const SpherePoint& x, const SpherePolytope& p);

enum class NeighborhoodSide { Outer, Inner, Both };

/// Strict phi-neighborhood test of the boundary, restricted to the side.
bool in_neighborhood(const SpherePoint& x, const SpherePolytope& p, double phi,
                     NeighborhoodSide side);
bool in_neighborhood(const SpherePoint& x, const Cap& k, double phi, NeighborhoodSide side);

struct CapDistances {
  double to_set;       ///< d(x, K)
  double to_dual;      ///< d(x, K-dual), K-dual = B(-c, pi/2 - r)
  double to_boundary;  ///< d(x, boundary of K)
};

/// Closed-form distances for a cap of radius <= pi/2.
CapDistances cap_distance_suite(const SpherePoint& x, const Cap& k);

} // namespace capcond
