#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "capcond/instance.hpp"
#include "capcond/rng.hpp"

namespace capcond {

/// Uniform point of S^m: m+1 standard normals, normalized.
SpherePoint uniform_sphere(std::size_t m, RngStream& rng);

/// The continuous factor h of the adversarial density, as a function of
/// r = sin(colatitude). Either identically one or a table of (r, h(r))
/// nodes with linear interpolation, held constant past the last node.
class HFunction {
public:
  HFunction() = default;
  static HFunction table(std::vector<std::pair<double, double>> nodes);
  /// Two-column text file of (r, h(r)), r ascending from 0.
  static HFunction read_table(const std::string& path);

  double operator()(double r) const;
  double sup() const;
  bool is_constant() const noexcept { return nodes_.empty(); }
  HFunction scaled(double factor) const;
  const std::vector<std::pair<double, double>>& nodes() const noexcept { return nodes_; }

private:
  std::vector<std::pair<double, double>> nodes_;
  double factor_ = 1.0;
};

enum class DeltaMode { Lemma, Beta0Remark };

/// Parameters of the radially symmetric law with density C r^{-beta} h(r)
/// on a cap of radius alpha, r = sin(colatitude).
struct AdversarialParams {
  int m = 2;
  double alpha = kPi / 6;
  double sigma = 0.5;
  double beta = 0.0;
  HFunction h;          ///< normalized so its mass matches I_{m-beta}(alpha)
  double H = 1.0;       ///< sup of the normalized h
  double C_norm = 1.0;  ///< I_m(alpha) / I_{m-beta}(alpha)
  double c_exponent = 0.5;
  double delta_c = 0.0;
  DeltaMode delta_mode = DeltaMode::Lemma;
};

/// Validates the ranges and fills sigma, the normalized h, H, C, c and delta_c.
AdversarialParams make_adversarial_params(int m, double alpha, double beta, HFunction h = {},
                                          DeltaMode mode = DeltaMode::Lemma);

/// (2/(pi m)) ((1/H) sqrt(1 - (2/(pi m))^{1/m}))^{1/c}.
double compute_delta_c(int m, double c, double H);
/// The tolerance 1/H^2 used in the simplified beta = 0 argument.
double compute_delta_beta0(double H);

/// Unnormalized colatitude density C (sin t)^{m-1-beta} h(sin t) on [0, alpha],
/// zero beyond alpha.
double radial_density(double theta, const AdversarialParams& p);

/// Inverse-CDF table of the colatitude on a 4096-node grid.
///
/// The grid is uniform in s = (theta/alpha)^kappa with kappa = min(1, m - beta),
/// which makes the CDF close to linear in s near a pole of the density.
class RadialCdf {
public:
  static constexpr int kNodes = 4096;

  explicit RadialCdf(const AdversarialParams& p);

  double alpha() const noexcept { return alpha_; }
  /// Tabulated CDF, linear in s between nodes.
  double cdf(double theta) const;
  double quantile(double u) const;
  /// Total unnormalized mass of radial_density over [0, alpha].
  double mass() const noexcept { return mass_; }

private:
  double alpha_;
  double kappa_;
  double mass_ = 0.0;
  std::vector<double> cum_;  // cum_[j] = CDF at s = j / (kNodes - 1)
};

/// Draws from the adversarial law centered at an arbitrary point. The
/// rotation taking the pole e_0 to the center is computed once.
class CapSampler {
public:
  CapSampler(const SpherePoint& center, std::shared_ptr<const RadialCdf> cdf);

  const SpherePoint& center() const noexcept { return center_; }
  SpherePoint sample(RngStream& rng) const;

private:
  SpherePoint center_;
  Matrix rotation_;
  std::shared_ptr<const RadialCdf> cdf_;
};

SpherePoint sample_cap(const SpherePoint& center, const RadialCdf& cdf, RngStream& rng);

/// Product law of caps around the rows of a center instance. Row i of
/// sample k is drawn from the stream (master, k, i).
class InstanceSampler {
public:
  InstanceSampler(const Instance& centers, const AdversarialParams& params);

  const Instance& centers() const noexcept { return centers_; }
  const AdversarialParams& params() const noexcept { return params_; }
  const RadialCdf& cdf() const noexcept { return *cdf_; }
  Instance sample(std::uint64_t master, std::uint64_t index) const;

private:
  Instance centers_;
  AdversarialParams params_;
  std::shared_ptr<const RadialCdf> cdf_;
  std::vector<CapSampler> rows_;
};

Instance sample_instance(const Instance& centers, const AdversarialParams& params,
                         std::uint64_t master, std::uint64_t index);

/// n uniform points of S^m drawn from the stream (master, index, 0).
std::vector<SpherePoint> uniform_points(std::size_t n, std::size_t m, std::uint64_t master,
                                        std::uint64_t index);

} // namespace capcond
