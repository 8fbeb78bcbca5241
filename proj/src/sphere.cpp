#include "capcond/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace capcond {

SpherePoint::SpherePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw DomainError("sphere point needs ambient dimension >= 2, got " +
                      std::to_string(coords_.size()));
  }
  const double norm = coords_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kAcceptTolerance) {
    throw DomainError("vector is not unit length (norm " + std::to_string(norm) + ")");
  }
  coords_ /= norm;
}

SpherePoint::SpherePoint(std::initializer_list<double> coords)
    : SpherePoint(Vector(Eigen::Map<const Vector>(coords.begin(),
                                                  static_cast<Eigen::Index>(coords.size())))) {}

SpherePoint SpherePoint::from_direction(const Vector& v) {
  if (v.size() < 2) {
    throw DomainError("sphere point needs ambient dimension >= 2");
  }
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("cannot normalize a zero or non-finite vector");
  }
  return SpherePoint(Vector(v / norm), Trusted{});
}

SpherePoint SpherePoint::basis(std::size_t ambient_dim, std::size_t axis) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(ambient_dim));
  v[static_cast<Eigen::Index>(axis)] = 1.0;
  return SpherePoint(std::move(v), Trusted{});
}

SpherePoint SpherePoint::operator-() const { return SpherePoint(Vector(-coords_), Trusted{}); }

double SpherePoint::dot(const SpherePoint& other) const {
  require_same_dim(*this, other);
  return coords_.dot(other.coords_);
}

Cap::Cap(SpherePoint c, double r) : center(std::move(c)), radius(r) {
  if (!(r >= 0.0 && r <= kPi)) {
    throw DomainError("cap radius must lie in [0, pi], got " + std::to_string(r));
  }
}

bool Cap::contains(const SpherePoint& x, double tol) const {
  return center.dot(x) >= std::cos(radius) - tol;
}

void require_same_dim(const SpherePoint& x, const SpherePoint& y) {
  if (x.ambient_dim() != y.ambient_dim()) {
    throw DimensionMismatch("points live in R^" + std::to_string(x.ambient_dim()) + " and R^" +
                            std::to_string(y.ambient_dim()));
  }
}

double angular_distance(const SpherePoint& x, const SpherePoint& y) {
  return std::acos(std::clamp(x.dot(y), -1.0, 1.0));
}

double projective_distance(const SpherePoint& x, const SpherePoint& y) {
  // |x - y| and |x + y| give sin via the half-angle identities without the
  // cancellation of sqrt(1 - dot^2) near coincident points.
  require_same_dim(x, y);
  const double minus = (x.coords() - y.coords()).norm();
  const double plus = (x.coords() + y.coords()).norm();
  return std::min(1.0, 0.5 * minus * plus);
}

namespace {

Matrix householder(const Vector& u) {
  const auto n = u.size();
  return Matrix::Identity(n, n) - (2.0 / u.squaredNorm()) * u * u.transpose();
}

} // namespace

Matrix rotation_to(const SpherePoint& source, const SpherePoint& target) {
  require_same_dim(source, target);
  const Vector& s = source.coords();
  const Vector& t = target.coords();
  if (s.dot(t) >= 0.0) {
    // H_{s+t} sends s to -t, H_t sends -t back to t.
    return householder(t) * householder(s + t);
  }
  // H_{s-t} sends s to t; H_w with w orthogonal to t fixes t.
  Eigen::Index axis = 0;
  t.cwiseAbs().minCoeff(&axis);
  Vector w = -t[axis] * t;
  w[axis] += 1.0;
  return householder(w) * householder(s - t);
}

double sphere_volume(int m) {
  if (m < 0) {
    throw DomainError("sphere dimension must be >= 0");
  }
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

Matrix as_columns(std::span<const SpherePoint> points) {
  if (points.empty()) {
    return Matrix();
  }
  const auto d = static_cast<Eigen::Index>(points.front().ambient_dim());
  Matrix out(d, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].coords().size() != d) {
      throw DimensionMismatch("point " + std::to_string(j) + " has a different dimension");
    }
    out.col(static_cast<Eigen::Index>(j)) = points[j].coords();
  }
  return out;
}

} // namespace capcond
