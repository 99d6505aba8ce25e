#ifndef SPDSPHERE_KERNELS_HPP
#define SPDSPHERE_KERNELS_HPP

// Truncated isotropic kernels on S^1, S^m, S^1 x S^m and S^1 x M^d given by
// their expansion coefficients:
//
//   f(t, s) = sum_{k,l} a_{k,l} P_k^1(t) P_l(s)
//
// with P_l the Gegenbauer (spheres) or Jacobi (projective spaces) family.
// Coefficients are a positive rule restricted to a symbolic support and a
// (kmax, lmax) truncation window.

#include <Eigen/Core>

#include <string>
#include <variant>

#include "spdsphere/supportsets.hpp"

namespace spdsphere {

enum class SpaceKind { Circle, Sphere, CircleSphere, CircleTPH };
enum class TphFamily { RealProj, ComplexProj, QuatProj, Cayley };

const char* to_string(SpaceKind kind);
const char* to_string(TphFamily family);

class SpaceDescriptor {
 public:
  static SpaceDescriptor circle();
  static SpaceDescriptor sphere(int m);
  static SpaceDescriptor circle_sphere(int m);
  /// Compact two-point homogeneous space other than a sphere.
  static SpaceDescriptor circle_tph(TphFamily family, int d);

  SpaceKind kind() const { return kind_; }
  bool is_product() const { return kind_ == SpaceKind::CircleSphere || kind_ == SpaceKind::CircleTPH; }
  /// Sphere dimension m (Sphere, CircleSphere); 0 otherwise.
  int m() const { return m_; }
  TphFamily family() const { return family_; }
  /// Real dimension d of the projective space (CircleTPH); 0 otherwise.
  int d() const { return d_; }

  /// Jacobi parameters ((d-2)/2, beta) of a projective factor.
  double jacobi_alpha() const;
  double jacobi_beta() const;

  /// Zonal polynomials of the non-circle axis, degrees 0..n, at s.
  Eigen::VectorXd axis_polynomials(int n, double s) const;

  std::string describe() const;

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

 private:
  SpaceKind kind_ = SpaceKind::Circle;
  int m_ = 0;
  TphFamily family_ = TphFamily::RealProj;
  int d_ = 0;
};

struct CoefficientScheme {
  enum class Kind { Constant, Geometric };

  Kind kind = Kind::Geometric;
  double scale = 1.0;
  double ratio_k = 0.9;
  double ratio_l = 0.9;

  static CoefficientScheme constant(double c);
  static CoefficientScheme geometric(double ratio_k, double ratio_l, double c);

  /// a_{k,l} = c r_k^k r_l^l for the geometric rule, c for the constant one.
  double coefficient(Index k, Index l) const;

  friend bool operator==(const CoefficientScheme&, const CoefficientScheme&) = default;
};

struct Truncation {
  int kmax = 60;
  int lmax = 60;

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

using Support = std::variant<SupportSet1D, SupportSet2D>;

class KernelSpec {
 public:
  /// Single spaces take a SupportSet1D (l is unused), product spaces a SupportSet2D.
  KernelSpec(SpaceDescriptor space, Support support, CoefficientScheme scheme = {}, Truncation truncation = {});

  const SpaceDescriptor& space() const { return space_; }
  const Support& support() const { return support_; }
  const CoefficientScheme& scheme() const { return scheme_; }
  const Truncation& truncation() const { return truncation_; }

  /// Effective coefficients; (kmax+1) x (lmax+1) for product spaces and
  /// (kmax+1) x 1 for single spaces.
  const Eigen::MatrixXd& coefficients() const { return coefficients_; }

  /// True when no coefficient survives the truncation window.
  bool degenerate() const { return degenerate_; }

  /// f(1, 1).
  double value_at_identity() const { return value_at_identity_; }

 private:
  SpaceDescriptor space_;
  Support support_;
  CoefficientScheme scheme_;
  Truncation truncation_;
  Eigen::MatrixXd coefficients_;
  bool degenerate_ = true;
  double value_at_identity_ = 0.0;
};

/// f(t, s); s is ignored on single spaces. A degenerate spec evaluates to 0.
double eval_kernel(const KernelSpec& spec, double t, double s = 1.0);

/// f_l(t) = sum_k a_{k,l} P_k^1(t), for a product-space spec.
double eval_marginal(const KernelSpec& spec, int l, double t);

/// All marginals f_0(t) .. f_lmax(t).
Eigen::VectorXd eval_marginals(const KernelSpec& spec, double t);

/// Sum of f_l(t) over degrees l >= gamma in the parity class (Even or Odd).
double truncated_parity_sum(const KernelSpec& spec, Index gamma, Parity parity, double t);

/// Declared symbolic support (truncated = false) or the finite effective
/// support as singleton pairs (truncated = true). Single-space supports are
/// returned as pairs (k-term, one(0)).
SupportSet2D support_of(const KernelSpec& spec, bool truncated);

}  // namespace spdsphere

#endif  // SPDSPHERE_KERNELS_HPP
