#include "spdsphere/kernels.hpp"

#include <cmath>

#include "spdsphere/error.hpp"
#include "spdsphere/orthopoly.hpp"

namespace spdsphere {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::CircleSphere: return "circle_sphere";
    case SpaceKind::CircleTPH: return "circle_tph";
  }
  return "?";
}

const char* to_string(TphFamily family) {
  switch (family) {
    case TphFamily::RealProj: return "real_proj";
    case TphFamily::ComplexProj: return "complex_proj";
    case TphFamily::QuatProj: return "quat_proj";
    case TphFamily::Cayley: return "cayley";
  }
  return "?";
}

SpaceDescriptor SpaceDescriptor::circle() { return SpaceDescriptor{}; }

SpaceDescriptor SpaceDescriptor::sphere(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidDimension, "sphere dimension must be >= 2");
  SpaceDescriptor s;
  s.kind_ = SpaceKind::Sphere;
  s.m_ = m;
  return s;
}

SpaceDescriptor SpaceDescriptor::circle_sphere(int m) {
  SpaceDescriptor s = sphere(m);
  s.kind_ = SpaceKind::CircleSphere;
  return s;
}

SpaceDescriptor SpaceDescriptor::circle_tph(TphFamily family, int d) {
  bool ok = false;
  switch (family) {
    case TphFamily::RealProj: ok = d >= 2; break;
    case TphFamily::ComplexProj: ok = d >= 4 && d % 2 == 0; break;
    case TphFamily::QuatProj: ok = d >= 8 && d % 4 == 0; break;
    case TphFamily::Cayley: ok = d == 16; break;
  }
  if (!ok)
    throw Error(ErrorCode::InvalidDimension,
                std::string("dimension ") + std::to_string(d) + " is not allowed for " + to_string(family));
  SpaceDescriptor s;
  s.kind_ = SpaceKind::CircleTPH;
  s.family_ = family;
  s.d_ = d;
  return s;
}

double SpaceDescriptor::jacobi_alpha() const { return (d_ - 2) / 2.0; }

double SpaceDescriptor::jacobi_beta() const {
  switch (family_) {
    case TphFamily::RealProj: return -0.5;
    case TphFamily::ComplexProj: return 0.0;
    case TphFamily::QuatProj: return 1.0;
    case TphFamily::Cayley: return 3.0;
  }
  return 0.0;
}

Eigen::VectorXd SpaceDescriptor::axis_polynomials(int n, double s) const {
  switch (kind_) {
    case SpaceKind::Circle: return circle_poly_all(n, s);
    case SpaceKind::Sphere:
    case SpaceKind::CircleSphere: return gegenbauer_all(n, m_, s);
    case SpaceKind::CircleTPH: return jacobi_all(n, jacobi_alpha(), jacobi_beta(), s);
  }
  return {};
}

std::string SpaceDescriptor::describe() const {
  switch (kind_) {
    case SpaceKind::Circle: return "S^1";
    case SpaceKind::Sphere: return "S^" + std::to_string(m_);
    case SpaceKind::CircleSphere: return "S^1 x S^" + std::to_string(m_);
    case SpaceKind::CircleTPH:
      return std::string("S^1 x ") + to_string(family_) + "(d=" + std::to_string(d_) + ")";
  }
  return "?";
}

CoefficientScheme CoefficientScheme::constant(double c) {
  if (!(c > 0)) throw Error(ErrorCode::InvalidParameters, "constant coefficient must be > 0");
  CoefficientScheme s;
  s.kind = Kind::Constant;
  s.scale = c;
  return s;
}

CoefficientScheme CoefficientScheme::geometric(double ratio_k, double ratio_l, double c) {
  if (!(c > 0)) throw Error(ErrorCode::InvalidParameters, "geometric scale must be > 0");
  if (!(ratio_k > 0 && ratio_k < 1) || !(ratio_l > 0 && ratio_l < 1))
    throw Error(ErrorCode::InvalidParameters, "geometric ratios must lie in (0,1)");
  CoefficientScheme s;
  s.kind = Kind::Geometric;
  s.scale = c;
  s.ratio_k = ratio_k;
  s.ratio_l = ratio_l;
  return s;
}

double CoefficientScheme::coefficient(Index k, Index l) const {
  if (kind == Kind::Constant) return scale;
  return scale * std::pow(ratio_k, static_cast<double>(k)) * std::pow(ratio_l, static_cast<double>(l));
}

KernelSpec::KernelSpec(SpaceDescriptor space, Support support, CoefficientScheme scheme, Truncation truncation)
    : space_(space), support_(std::move(support)), scheme_(scheme), truncation_(truncation) {
  if (truncation_.kmax < 0 || truncation_.lmax < 0 || truncation_.kmax > kMaxDegree || truncation_.lmax > kMaxDegree)
    throw Error(ErrorCode::InvalidParameters, "truncation degrees must lie in [0, 10000]");
  if (space_.is_product() != std::holds_alternative<SupportSet2D>(support_))
    throw Error(ErrorCode::InvalidParameters,
                space_.is_product() ? "product spaces need a two-dimensional support"
                                    : "single spaces need a one-dimensional support");

  if (const auto* s2 = std::get_if<SupportSet2D>(&support_)) {
    coefficients_ = Eigen::MatrixXd::Zero(truncation_.kmax + 1, truncation_.lmax + 1);
    for (int k = 0; k <= truncation_.kmax; ++k)
      for (int l = 0; l <= truncation_.lmax; ++l)
        if (contains(*s2, k, l)) coefficients_(k, l) = scheme_.coefficient(k, l);
  } else {
    const auto& s1 = std::get<SupportSet1D>(support_);
    coefficients_ = Eigen::MatrixXd::Zero(truncation_.kmax + 1, 1);
    for (int k = 0; k <= truncation_.kmax; ++k)
      if (contains(s1, k)) coefficients_(k, 0) = scheme_.coefficient(k, 0);
  }
  degenerate_ = (coefficients_.array() == 0.0).all();
  value_at_identity_ = eval_kernel(*this, 1.0, 1.0);
}

double eval_kernel(const KernelSpec& spec, double t, double s) {
  const auto& a = spec.coefficients();
  const int kmax = spec.truncation().kmax;
  switch (spec.space().kind()) {
    case SpaceKind::Circle: return a.col(0).dot(circle_poly_all(kmax, t));
    case SpaceKind::Sphere: return a.col(0).dot(spec.space().axis_polynomials(kmax, t));
    default: break;
  }
  const Eigen::VectorXd pk = circle_poly_all(kmax, t);
  const Eigen::VectorXd pl = spec.space().axis_polynomials(spec.truncation().lmax, s);
  return pk.dot(a * pl);
}

Eigen::VectorXd eval_marginals(const KernelSpec& spec, double t) {
  if (!spec.space().is_product())
    throw Error(ErrorCode::Unsupported, "marginals are defined for product spaces only");
  return spec.coefficients().transpose() * circle_poly_all(spec.truncation().kmax, t);
}

double eval_marginal(const KernelSpec& spec, int l, double t) {
  const Eigen::VectorXd marginals = eval_marginals(spec, t);
  if (l < 0) throw Error(ErrorCode::InvalidParameters, "negative degree");
  return l < marginals.size() ? marginals(l) : 0.0;
}

double truncated_parity_sum(const KernelSpec& spec, Index gamma, Parity parity, double t) {
  if (parity == Parity::Any) throw Error(ErrorCode::InvalidParameters, "truncated sums split by even/odd degree");
  const Eigen::VectorXd marginals = eval_marginals(spec, t);
  const Index first_parity = parity == Parity::Odd ? 1 : 0;
  double sum = 0.0;
  for (Index l = first_parity; l < marginals.size(); l += 2)
    if (l >= gamma) sum += marginals(l);
  return sum;
}

SupportSet2D support_of(const KernelSpec& spec, bool truncated) {
  SupportSet2D out;
  if (!truncated) {
    if (const auto* s2 = std::get_if<SupportSet2D>(&spec.support())) return *s2;
    for (const auto& term : std::get<SupportSet1D>(spec.support()).terms)
      out.terms.push_back({term, Term1D::singleton(0)});
    return out;
  }
  const auto& a = spec.coefficients();
  for (Index k = 0; k < a.rows(); ++k)
    for (Index l = 0; l < a.cols(); ++l)
      if (a(k, l) > 0) out.terms.push_back({Term1D::singleton(k), Term1D::singleton(l)});
  return out;
}

}  // namespace spdsphere
