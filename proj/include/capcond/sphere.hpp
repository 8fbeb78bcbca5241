#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

#include "capcond/errors.hpp"

namespace capcond {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// A unit vector of R^{m+1}, i.e. a point of S^m with m >= 1.
///
/// Construction from raw coordinates accepts inputs whose norm is within
/// 1e-6 of one and renormalizes them; anything further from the sphere is
/// rejected. Use `from_direction` to normalize an arbitrary nonzero vector.
class SpherePoint {
public:
  static constexpr double kAcceptTolerance = 1e-6;

  explicit SpherePoint(Vector coords);
  SpherePoint(std::initializer_list<double> coords);

  /// Normalizes any nonzero vector onto the sphere.
  static SpherePoint from_direction(const Vector& v);
  /// Canonical basis vector e_{axis} of R^{ambient_dim}.
  static SpherePoint basis(std::size_t ambient_dim, std::size_t axis);

  const Vector& coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }
  /// Sphere dimension m (ambient dimension minus one).
  std::size_t dim() const noexcept { return static_cast<std::size_t>(coords_.size()) - 1; }
  std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(coords_.size()); }

  SpherePoint operator-() const;
  double dot(const SpherePoint& other) const;

private:
  struct Trusted {};
  SpherePoint(Vector coords, Trusted) : coords_(std::move(coords)) {}

  Vector coords_;
};

/// Closed spherical cap B(center, radius) = {x : <center, x> >= cos radius}.
struct Cap {
  SpherePoint center;
  double radius;

  Cap(SpherePoint c, double r);
  bool contains(const SpherePoint& x, double tol = 1e-12) const;
};

void require_same_dim(const SpherePoint& x, const SpherePoint& y);

/// Angular (geodesic) distance in [0, pi].
double angular_distance(const SpherePoint& x, const SpherePoint& y);
/// sin of the angular distance; vanishes iff x = +-y.
double projective_distance(const SpherePoint& x, const SpherePoint& y);

/// Proper rotation R (det +1) with R * source = target, built from two
/// Householder reflections. Deterministic in its inputs.
Matrix rotation_to(const SpherePoint& source, const SpherePoint& target);

/// Volume of S^m, 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_volume(int m);

/// Stacks points as columns of a (m+1) x n matrix.
Matrix as_columns(std::span<const SpherePoint> points);

} // namespace capcond
