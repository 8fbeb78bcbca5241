#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "capcond/instance.hpp"

namespace capcond {

/// Radii within this band of pi/2 are classified ill-posed with cond = inf.
inline constexpr double kIllPosedBand = 1e-8;
/// Instances whose (m+1)-subset count exceeds this are refused by brute force.
inline constexpr std::uint64_t kBruteForceSubsetLimit = 10'000'000;

/// Smallest including cap of a point set together with the GCC data it implies.
struct SicResult {
  SpherePoint center;
  double rho;                        ///< radius of the smallest including cap
  std::vector<std::size_t> support;  ///< indices of the points defining the cap
  FeasibilityClass cls;
  double cond;           ///< 1/|cos rho|, +inf inside the ill-posed band
  double dist_to_sigma;  ///< |pi/2 - rho|
};

/// Raised by sic_solve when no valid candidate cap was found.
class SicNonConvergence : public Error {
public:
  SicNonConvergence(double lower, double upper);
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

private:
  double lower_, upper_;
};

/// Cap centered at sign * normalize(sum lambda_i a_i) with G lambda = 1,
/// which is equidistant from all given points. Throws DegenerateSubset when
/// the Gram matrix is numerically singular (condition estimate >= 1e12).
Cap circumcap(std::span<const SpherePoint> points, int sign);

/// Feasibility class and condition number implied by a SIC radius.
FeasibilityClass class_from_radius(double rho);
double cond_from_radius(double rho);

/// Exhaustive SIC: every support subset of size 1..m+1 (both center signs)
/// plus the +-normals of m-subsets, which realize radius pi/2 when the
/// instance is ill-posed. Works for any number of points.
SicResult sic_bruteforce(std::span<const SpherePoint> points);
SicResult sic_bruteforce(const Instance& a);

struct SubgradientOptions {
  int random_restarts = 50;
  int iterations = 2000;
  double step = 0.5;            ///< gamma_t = step / sqrt(t)
  double support_slack = 1e-6;  ///< slack that marks a point as active
  std::uint64_t seed = 0x5eed5151c0debabeULL;
};

/// Projected subgradient ascent on p -> min_i <a_i, p> with multi-start and a
/// local combinatorial polish through circumcap.
SicResult sic_solve(std::span<const SpherePoint> points, const SubgradientOptions& options = {});
SicResult sic_solve(const Instance& a, const SubgradientOptions& options = {});

enum class SicMethod { Subgradient, BruteForce, Auto };

/// Auto picks brute force when it needs at most 20000 subsets.
SicResult compute_sic(std::span<const SpherePoint> points, SicMethod method);

struct CondSummary {
  double cond;
  FeasibilityClass cls;
  double dist_to_sigma;
};

CondSummary cond_and_class(const Instance& a, SicMethod method = SicMethod::Subgradient);

struct PrefixEntry {
  std::size_t k;
  double cond;
  FeasibilityClass cls;
};

/// cond and class of A_k for k = m+2, ..., n.
std::vector<PrefixEntry> prefix_cond_profile(const Instance& a,
                                             SicMethod method = SicMethod::Subgradient);

} // namespace capcond
