#include "capcond/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "capcond/quadrature.hpp"

namespace capcond {

SpherePoint uniform_sphere(std::size_t m, RngStream& rng) {
  if (m < 1) {
    throw DomainError("uniform_sphere needs m >= 1");
  }
  Vector v(static_cast<Eigen::Index>(m + 1));
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i] = rng.normal();
    }
    norm = v.norm();
  } while (!(norm > 1e-300));
  return SpherePoint::from_direction(v);
}

HFunction HFunction::table(std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty()) {
    throw ConfigError("h table is empty");
  }
  if (nodes.front().first != 0.0) {
    throw ConfigError("h table must start at r = 0");
  }
  if (!(nodes.front().second > 0.0)) {
    throw ConfigError("h table needs h(0) > 0");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [r, h] = nodes[i];
    if (!std::isfinite(r) || !std::isfinite(h) || h < 0.0 || r > 1.0) {
      throw ConfigError("h table entry " + std::to_string(i + 1) +
                        " must have r in [0, 1] and finite h >= 0");
    }
    if (i > 0 && !(r > nodes[i - 1].first)) {
      throw ConfigError("h table r values must be strictly ascending (entry " +
                        std::to_string(i + 1) + ")");
    }
  }
  HFunction out;
  out.nodes_ = std::move(nodes);
  return out;
}

HFunction HFunction::read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open h table '" + path + "'");
  }
  std::vector<std::pair<double, double>> nodes;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    double r, h;
    if (!(fields >> r)) {
      continue;
    }
    std::string extra;
    if (!(fields >> h) || (fields >> extra)) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected two numbers 'r h'");
    }
    nodes.emplace_back(r, h);
  }
  return table(std::move(nodes));
}

double HFunction::operator()(double r) const {
  if (nodes_.empty()) {
    return factor_;
  }
  if (r <= nodes_.front().first) {
    return factor_ * nodes_.front().second;
  }
  if (r >= nodes_.back().first) {
    return factor_ * nodes_.back().second;
  }
  const auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), r,
                                   [](double v, const auto& node) { return v < node.first; });
  const auto lo = hi - 1;
  const double w = (r - lo->first) / (hi->first - lo->first);
  return factor_ * ((1.0 - w) * lo->second + w * hi->second);
}

double HFunction::sup() const {
  if (nodes_.empty()) {
    return factor_;
  }
  double best = 0.0;
  for (const auto& node : nodes_) {
    best = std::max(best, node.second);
  }
  return factor_ * best;
}

HFunction HFunction::scaled(double factor) const {
  HFunction out = *this;
  out.factor_ *= factor;
  return out;
}

double compute_delta_c(int m, double c, double H) {
  const double q = 2.0 / (kPi * m);
  return q * std::pow(std::sqrt(1.0 - std::pow(q, 1.0 / m)) / H, 1.0 / c);
}

double compute_delta_beta0(double H) { return 1.0 / (H * H); }

AdversarialParams make_adversarial_params(int m, double alpha, double beta, HFunction h,
                                          DeltaMode mode) {
  if (m < 1) {
    throw ConfigError("m must be at least 1");
  }
  if (!(alpha > 0.0 && alpha <= kHalfPi)) {
    throw ConfigError("alpha must lie in (0, pi/2]");
  }
  if (!(beta >= 0.0 && beta < m)) {
    throw ConfigError("beta must satisfy 0 <= beta < m");
  }
  if (mode == DeltaMode::Beta0Remark && beta != 0.0) {
    throw ConfigError("the beta0-remark tolerance applies only to beta = 0");
  }
  AdversarialParams p;
  p.m = m;
  p.alpha = alpha;
  p.sigma = std::sin(alpha);
  p.beta = beta;
  p.delta_mode = mode;
  const double order = m - beta;
  const double target = integral_I(order, alpha);
  if (!h.is_constant()) {
    if (h.nodes().back().first < p.sigma - 1e-9) {
      throw ConfigError("h table must cover r in [0, sin(alpha)]");
    }
    const auto mass = integrate_sine_power(
        order - 1.0, [&](double t) { return h(std::sin(t)); }, alpha, 1e-14);
    h = h.scaled(target / mass.value);
  }
  p.h = std::move(h);
  p.H = p.h.sup();
  p.C_norm = integral_I(m, alpha) / target;
  p.c_exponent = 0.5 * (1.0 - beta / m);
  p.delta_c = mode == DeltaMode::Lemma ? compute_delta_c(m, p.c_exponent, p.H)
                                       : compute_delta_beta0(p.H);
  return p;
}

double radial_density(double theta, const AdversarialParams& p) {
  if (theta < 0.0) {
    throw DomainError("colatitude must be nonnegative");
  }
  if (theta > p.alpha) {
    return 0.0;
  }
  const double exponent = p.m - 1.0 - p.beta;
  const double s = std::sin(theta);
  if (s == 0.0) {
    if (exponent < 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    return exponent == 0.0 ? p.C_norm * p.h(0.0) : 0.0;
  }
  return p.C_norm * std::pow(s, exponent) * p.h(s);
}

RadialCdf::RadialCdf(const AdversarialParams& p) : alpha_(p.alpha) {
  if (!(p.beta < p.m)) {
    throw ConfigError("radial density is not integrable for beta >= m");
  }
  const double exponent = p.m - 1.0 - p.beta;
  kappa_ = std::min(1.0, exponent + 1.0);
  const double kappa = kappa_;
  const double alpha = alpha_;
  // Density in s-space: d theta = (alpha / kappa) s^{1/kappa - 1} ds. When
  // kappa = exponent + 1 the power of s cancels against sin^exponent.
  auto integrand = [&](double s) {
    const double t = alpha * std::pow(s, 1.0 / kappa);
    if (kappa < 1.0) {
      const double sinc = t > 0.0 ? std::sin(t) / t : 1.0;
      return p.C_norm * std::pow(alpha, kappa) / kappa * std::pow(sinc, exponent) *
             p.h(std::sin(t));
    }
    return alpha * radial_density(t, p);
  };
  cum_.assign(kNodes, 0.0);
  const double ds = 1.0 / (kNodes - 1);
  for (int j = 1; j < kNodes; ++j) {
    const double a = (j - 1) * ds;
    const double b = j == kNodes - 1 ? 1.0 : j * ds;
    cum_[j] = cum_[j - 1] + integrate(integrand, a, b, 1e-15, 50).value;
  }
  mass_ = cum_.back();
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) {
    throw ConfigError("radial density has no finite positive mass");
  }
  for (auto& v : cum_) {
    v /= mass_;
  }
  cum_.back() = 1.0;
}

double RadialCdf::cdf(double theta) const {
  if (theta <= 0.0) {
    return 0.0;
  }
  if (theta >= alpha_) {
    return 1.0;
  }
  const double x = std::pow(theta / alpha_, kappa_) * (kNodes - 1);
  const int j = std::min(static_cast<int>(x), kNodes - 2);
  const double w = x - j;
  return (1.0 - w) * cum_[j] + w * cum_[j + 1];
}

double RadialCdf::quantile(double u) const {
  if (u <= 0.0) {
    return 0.0;
  }
  if (u >= 1.0) {
    return alpha_;
  }
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  const int j = static_cast<int>(it - cum_.begin()) - 1;
  const double width = cum_[j + 1] - cum_[j];
  const double w = width > 0.0 ? (u - cum_[j]) / width : 0.0;
  const double s = (j + w) / (kNodes - 1);
  return std::min(alpha_, alpha_ * std::pow(s, 1.0 / kappa_));
}

CapSampler::CapSampler(const SpherePoint& center, std::shared_ptr<const RadialCdf> cdf)
    : center_(center),
      rotation_(rotation_to(SpherePoint::basis(center.ambient_dim(), 0), center)),
      cdf_(std::move(cdf)) {}

SpherePoint CapSampler::sample(RngStream& rng) const {
  const double theta = cdf_->quantile(rng.uniform());
  const auto m = center_.dim();
  Vector dir(static_cast<Eigen::Index>(m));
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < dir.size(); ++i) {
      dir[i] = rng.normal();
    }
    norm = dir.norm();
  } while (!(norm > 1e-300));
  Vector local(static_cast<Eigen::Index>(m + 1));
  local[0] = std::cos(theta);
  local.tail(static_cast<Eigen::Index>(m)) = (std::sin(theta) / norm) * dir;
  return SpherePoint::from_direction(rotation_ * local);
}

SpherePoint sample_cap(const SpherePoint& center, const RadialCdf& cdf, RngStream& rng) {
  return CapSampler(center, std::shared_ptr<const RadialCdf>(&cdf, [](const RadialCdf*) {}))
      .sample(rng);
}

InstanceSampler::InstanceSampler(const Instance& centers, const AdversarialParams& params)
    : centers_(centers), params_(params), cdf_(std::make_shared<const RadialCdf>(params)) {
  if (static_cast<int>(centers.m()) != params.m) {
    throw DimensionMismatch("center instance dimension differs from the sampler's m");
  }
  for (const auto& row : centers.rows()) {
    rows_.emplace_back(row, cdf_);
  }
}

Instance InstanceSampler::sample(std::uint64_t master, std::uint64_t index) const {
  std::vector<SpherePoint> rows;
  rows.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    RngStream rng(master, index, i);
    rows.push_back(rows_[i].sample(rng));
  }
  return Instance(std::move(rows));
}

Instance sample_instance(const Instance& centers, const AdversarialParams& params,
                         std::uint64_t master, std::uint64_t index) {
  return InstanceSampler(centers, params).sample(master, index);
}

std::vector<SpherePoint> uniform_points(std::size_t n, std::size_t m, std::uint64_t master,
                                        std::uint64_t index) {
  RngStream rng(master, index, 0);
  std::vector<SpherePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(uniform_sphere(m, rng));
  }
  return out;
}

} // namespace capcond
