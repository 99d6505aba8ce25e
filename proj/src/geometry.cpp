#include "spdsphere/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "spdsphere/error.hpp"

namespace spdsphere {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxResamples = 1000;

bool antipodal_or_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a + b).norm() <= kAntipodalTolerance || (a - b).norm() <= kAntipodalTolerance;
}

}  // namespace

double canonical_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angular_distance(double a, double b) {
  const double d = std::fabs(canonical_angle(a) - canonical_angle(b));
  return std::min(d, kTwoPi - d);
}

SampledConfig sample_config(int m, int n_circle, int n_sphere, std::uint64_t seed) {
  if (m < 1) throw Error(ErrorCode::InvalidDimension, "sphere dimension must be >= 1");
  if (n_circle < 1 || n_sphere < 1) throw Error(ErrorCode::InvalidParameters, "point counts must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::normal_distribution<double> normal(0.0, 1.0);

  SampledConfig config;
  while (static_cast<int>(config.thetas.size()) < n_circle) {
    const double theta = canonical_angle(angle(rng));
    bool clash = false;
    for (double other : config.thetas) clash |= angular_distance(theta, other) <= kAngleTolerance;
    if (!clash) {
      config.thetas.push_back(theta);
    } else if (++config.resamples > kMaxResamples) {
      throw Error(ErrorCode::SamplingFailed, "could not sample distinct circle points");
    }
  }
  while (static_cast<int>(config.zs.size()) < n_sphere) {
    Eigen::VectorXd z(m + 1);
    for (Eigen::Index i = 0; i <= m; ++i) z(i) = normal(rng);
    const double norm = z.norm();
    bool bad = norm == 0.0;
    if (!bad) {
      z /= norm;
      for (const auto& other : config.zs) bad |= antipodal_or_equal(z, other);
    }
    if (!bad) {
      config.zs.push_back(std::move(z));
    } else if (++config.resamples > kMaxResamples) {
      throw Error(ErrorCode::SamplingFailed, "could not sample an antipodal-free sphere set");
    }
  }
  return config;
}

std::vector<ProductPoint> sample_product_points(int m, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidParameters, "point count must be >= 1");
  const SampledConfig config = sample_config(m, n, n, seed);
  std::vector<ProductPoint> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) points.push_back({config.thetas[i], config.zs[i]});
  return points;
}

std::vector<double> roots_of_unity(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameters, "need at least one root of unity");
  std::vector<double> thetas(static_cast<std::size_t>(n));
  for (int mu = 0; mu < n; ++mu) thetas[mu] = kTwoPi * mu / n;
  return thetas;
}

EnhancedSet::EnhancedSet(std::vector<double> thetas, std::vector<Eigen::VectorXd> zs)
    : thetas_(std::move(thetas)), zs_(std::move(zs)) {
  if (thetas_.empty() || zs_.empty()) throw Error(ErrorCode::InvalidGenerators, "need p, q >= 1");
  for (auto& theta : thetas_) theta = canonical_angle(theta);
  for (std::size_t i = 0; i < thetas_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (angular_distance(thetas_[i], thetas_[j]) <= kAngleTolerance)
        throw Error(ErrorCode::InvalidGenerators, "circle generators must be distinct");
  for (std::size_t mu = 0; mu < zs_.size(); ++mu) {
    if (std::fabs(zs_[mu].norm() - 1.0) > kUnitTolerance)
      throw Error(ErrorCode::InvalidGenerators, "sphere generators must be unit vectors");
    for (std::size_t nu = 0; nu < mu; ++nu)
      if (antipodal_or_equal(zs_[mu], zs_[nu]))
        throw Error(ErrorCode::InvalidGenerators, "sphere generators must be distinct and antipodal-free");
  }
  points_.reserve(2 * thetas_.size() * zs_.size());
  for (double sign : {1.0, -1.0})
    for (const auto& z : zs_)
      for (double theta : thetas_) points_.push_back({theta, sign * z});
}

EnhancedSet build_enhanced(std::vector<double> thetas, std::vector<Eigen::VectorXd> zs) {
  return EnhancedSet(std::move(thetas), std::move(zs));
}

SphericalHarmonicsS2::SphericalHarmonicsS2(int degree) : degree_(degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidParameters, "negative harmonic degree");
}

// Fully normalized associated Legendre functions by the standard column
// recurrences, without the Condon-Shortley phase.
Eigen::VectorXd SphericalHarmonicsS2::operator()(const Eigen::Vector3d& x) const {
  const int l = degree_;
  const double r = x.norm();
  const double ct = std::clamp(x.z() / r, -1.0, 1.0);
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = std::atan2(x.y(), x.x());

  Eigen::VectorXd out(2 * l + 1);
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int m = 0; m <= l; ++m) {
    if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st;
    double value = pmm;
    if (l > m) {
      double prev = pmm;
      double cur = std::sqrt(2.0 * m + 3.0) * ct * pmm;
      for (int n = m + 2; n <= l; ++n) {
        const double a = std::sqrt((4.0 * n * n - 1.0) / (double(n) * n - double(m) * m));
        const double b = std::sqrt(((n - 1.0) * (n - 1.0) - double(m) * m) / (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
        const double next = a * (ct * cur - b * prev);
        prev = cur;
        cur = next;
      }
      value = cur;
    }
    if (m == 0) {
      out(l) = value;
    } else {
      out(l + m) = std::sqrt(2.0) * value * std::cos(m * phi);
      out(l - m) = std::sqrt(2.0) * value * std::sin(m * phi);
    }
  }
  return out;
}

SphericalHarmonicsS2 sph_basis_s2(int degree) { return SphericalHarmonicsS2(degree); }

}  // namespace spdsphere
