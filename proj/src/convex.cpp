#include "capcond/convex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "capcond/combinations.hpp"
#include "capcond/feasibility.hpp"
#include "capcond/nnls.hpp"

namespace capcond {

namespace {

constexpr double kMembershipTol = 1e-12;
constexpr double kZeroProjection = 1e-14;
constexpr double kFacetSideTol = 1e-10;
constexpr double kRankTol = 1e-10;

std::vector<Vector> enumerate_facets(const Matrix& g) {
  const auto d = static_cast<int>(g.rows());
  const auto k = static_cast<int>(g.cols());
  const int m = d - 1;
  std::vector<Vector> normals;
  if (k < m || m < 1) {
    return normals;
  }
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  Matrix rows(m, d);
  do {
    for (int r = 0; r < m; ++r) {
      rows.row(r) = g.col(idx[static_cast<std::size_t>(r)]).transpose();
    }
    Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[m - 1] <= kRankTol * sv[0]) {
      continue;
    }
    Vector normal = svd.matrixV().col(d - 1);
    const Vector side = g.transpose() * normal;
    if (side.maxCoeff() <= kFacetSideTol) {
      // already outward
    } else if (side.minCoeff() >= -kFacetSideTol) {
      normal = -normal;
    } else {
      continue;
    }
    const bool duplicate = std::any_of(normals.begin(), normals.end(), [&](const Vector& n) {
      return n.dot(normal) > 1.0 - 1e-12;
    });
    if (!duplicate) {
      normals.push_back(std::move(normal));
    }
  } while (next_combination(idx, k));
  return normals;
}

struct Placement {
  bool inside;
  double distance;  // to the boundary
};

Placement place(const SpherePoint& x, const SpherePolytope& p) {
  if (!p.full_dimensional()) {
    throw DegenerateHull("generators span fewer than m + 1 dimensions");
  }
  const auto& normals = p.facet_normals();
  if (normals.empty()) {
    throw DomainError("sconv of the generators is the whole sphere and has no boundary");
  }
  if (!in_sconv(x, p)) {
    return {false, distance_to_sconv(x, p)};
  }
  double best = kHalfPi;
  for (const auto& n : normals) {
    best = std::min(best, std::asin(std::clamp(std::abs(n.dot(x.coords())), 0.0, 1.0)));
  }
  return {true, best};
}

void check_phi(double phi) {
  if (!(phi > 0.0 && phi <= kHalfPi)) {
    throw DomainError("neighborhood radius phi must lie in (0, pi/2], got " + std::to_string(phi));
  }
}

bool side_matches(bool inside, double distance, double phi, NeighborhoodSide side) {
  if (!(distance < phi)) {
    return false;
  }
  switch (side) {
  case NeighborhoodSide::Outer:
    return !inside;
  case NeighborhoodSide::Inner:
    return inside;
  case NeighborhoodSide::Both:
    return true;
  }
  return false;
}

} // namespace

SpherePolytope::SpherePolytope(std::vector<SpherePoint> generators)
    : generators_(std::move(generators)), facets_(std::make_shared<FacetCache>()) {
  if (generators_.empty()) {
    throw DomainError("spherical polytope needs at least one generator");
  }
  matrix_ = as_columns(generators_);
}

int SpherePolytope::span_rank() const {
  Eigen::JacobiSVD<Matrix> svd(matrix_);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > kRankTol * sv[0]) {
      ++rank;
    }
  }
  return rank;
}

bool SpherePolytope::properly_convex() const { return !origin_in_conv(generators_); }

const std::vector<Vector>& SpherePolytope::facet_normals() const {
  std::call_once(facets_->once, [this] { facets_->normals = enumerate_facets(matrix_); });
  return facets_->normals;
}

SpherePolytope SpherePolytope::negated() const {
  std::vector<SpherePoint> neg;
  neg.reserve(generators_.size());
  for (const auto& g : generators_) {
    neg.push_back(-g);
  }
  return SpherePolytope(std::move(neg));
}

ConeProjection project_onto_cone(const SpherePoint& x, const SpherePolytope& p) {
  if (x.ambient_dim() != p.ambient_dim()) {
    throw DimensionMismatch("point and polytope live in different dimensions");
  }
  auto res = nnls(p.generator_matrix(), x.coords());
  return {std::move(res.fitted), std::move(res.coefficients), res.kkt_residual};
}

bool in_sconv(const SpherePoint& x, const SpherePolytope& p) {
  const auto proj = project_onto_cone(x, p);
  return (x.coords() - proj.point).norm() <= kMembershipTol;
}

double distance_to_sconv(const SpherePoint& x, const SpherePolytope& p) {
  const auto proj = project_onto_cone(x, p);
  const double along = proj.point.norm();
  if (along > kZeroProjection) {
    return std::atan2((x.coords() - proj.point).norm(), along);
  }
  // x lies in the polar cone; the ratio <x, y>/|y| is quasi-concave on the
  // cone so the nearest point of sconv is a generator.
  double best = kPi;
  for (const auto& g : p.generators()) {
    best = std::min(best, angular_distance(x, g));
  }
  return best;
}

double distance_to_dual(const SpherePoint& x, const SpherePolytope& p) {
  const auto proj = project_onto_cone(x, p);
  const Vector polar = x.coords() - proj.point;
  const double off = polar.norm();
  if (off > kZeroProjection) {
    return std::atan2(proj.point.norm(), off);
  }
  // x in the cone: the best dual point is an extreme ray of the polar cone,
  // which are the outward facet normals for a full-dimensional cone.
  if (!p.full_dimensional()) {
    return kHalfPi;
  }
  const auto& normals = p.facet_normals();
  if (normals.empty()) {
    throw EmptyDual("sconv of the generators is the whole sphere; its dual is empty");
  }
  double best = -1.0;
  for (const auto& n : normals) {
    best = std::max(best, n.dot(x.coords()));
  }
  return std::acos(std::clamp(best, -1.0, 1.0));
}

double distance_to_boundary(const SpherePoint& x, const SpherePolytope& p) {
  return place(x, p).distance;
}

bool in_neighborhood(const SpherePoint& x, const SpherePolytope& p, double phi,
                     NeighborhoodSide side) {
  check_phi(phi);
  const auto where = place(x, p);
  return side_matches(where.inside, where.distance, phi, side);
}

CapDistances cap_distance_suite(const SpherePoint& x, const Cap& k) {
  if (k.radius > kHalfPi) {
    throw DomainError("closed-form cap distances need radius <= pi/2, got " +
                      std::to_string(k.radius));
  }
  const double dc = angular_distance(x, k.center);
  return {std::max(0.0, dc - k.radius), std::max(0.0, kHalfPi + k.radius - dc),
          std::abs(dc - k.radius)};
}

bool in_neighborhood(const SpherePoint& x, const Cap& k, double phi, NeighborhoodSide side) {
  check_phi(phi);
  const auto d = cap_distance_suite(x, k);
  const bool inside = angular_distance(x, k.center) <= k.radius;
  return side_matches(inside, d.to_boundary, phi, side);
}

} // namespace capcond
