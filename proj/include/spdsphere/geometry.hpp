#ifndef SPDSPHERE_GEOMETRY_HPP
#define SPDSPHERE_GEOMETRY_HPP

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace spdsphere {

inline constexpr double kAngleTolerance = 1e-12;
inline constexpr double kAntipodalTolerance = 1e-9;
inline constexpr double kUnitTolerance = 1e-12;

/// Angle reduced to [0, 2π).
double canonical_angle(double theta);

/// Distance between two angles on the circle, in [0, π].
double angular_distance(double a, double b);

/// Point (x, z) of S^1 x S^m; x = (cos θ, sin θ).
struct ProductPoint {
  double theta = 0.0;
  Eigen::VectorXd z;
};

struct SampledConfig {
  std::vector<double> thetas;
  std::vector<Eigen::VectorXd> zs;
  int resamples = 0;
};

/// Seeded circle angles (pairwise distinct) and sphere points of S^m
/// (normalized Gaussians, pairwise distinct and antipodal-free).
SampledConfig sample_config(int m, int n_circle, int n_sphere, std::uint64_t seed);

/// n product points with independent circle and sphere coordinates.
std::vector<ProductPoint> sample_product_points(int m, int n, std::uint64_t seed);

/// Circle angles 2πμ/n, μ = 0..n-1.
std::vector<double> roots_of_unity(int n);

/// The 2pq-point enhanced configuration generated by p circle points and q
/// antipodal-free sphere points, ordered
///   (x_1,z_1) .. (x_p,z_1), .., (x_1,z_q) .. (x_p,z_q),
///   (x_1,-z_1) .. (x_p,-z_1), .., (x_1,-z_q) .. (x_p,-z_q).
class EnhancedSet {
 public:
  EnhancedSet(std::vector<double> thetas, std::vector<Eigen::VectorXd> zs);

  int p() const { return static_cast<int>(thetas_.size()); }
  int q() const { return static_cast<int>(zs_.size()); }
  const std::vector<double>& thetas() const { return thetas_; }
  const std::vector<Eigen::VectorXd>& zs() const { return zs_; }
  const std::vector<ProductPoint>& points() const { return points_; }

 private:
  std::vector<double> thetas_;
  std::vector<Eigen::VectorXd> zs_;
  std::vector<ProductPoint> points_;
};

EnhancedSet build_enhanced(std::vector<double> thetas, std::vector<Eigen::VectorXd> zs);

/// Real orthonormal spherical harmonics of degree l on S^2 (2l+1 functions,
/// ordered j = -l..l; cos(jφ) for j > 0, sin(|j|φ) for j < 0).
class SphericalHarmonicsS2 {
 public:
  explicit SphericalHarmonicsS2(int degree);

  int degree() const { return degree_; }
  int dimension() const { return 2 * degree_ + 1; }

  Eigen::VectorXd operator()(const Eigen::Vector3d& x) const;

 private:
  int degree_;
};

SphericalHarmonicsS2 sph_basis_s2(int degree);

}  // namespace spdsphere

#endif  // SPDSPHERE_GEOMETRY_HPP
