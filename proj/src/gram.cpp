#include "spdsphere/gram.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "spdsphere/error.hpp"
#include "spdsphere/orthopoly.hpp"

namespace spdsphere {

namespace {

constexpr double kBlockTolerance = 1e-12;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

double circle_cosine(double a, double b) { return std::cos(a - b); }

void require_product(const KernelSpec& spec, const char* what) {
  if (!spec.space().is_product())
    throw Error(ErrorCode::Unsupported, std::string(what) + " needs a product-space spec");
}

void require_point_model(const KernelSpec& spec) {
  if (spec.space().kind() == SpaceKind::CircleTPH)
    throw Error(ErrorCode::Unsupported, "no point model for projective spaces");
}

void require_distinct(const KernelSpec& spec, std::span<const ProductPoint> points) {
  const SpaceKind kind = spec.space().kind();
  const bool use_theta = kind != SpaceKind::Sphere;
  const bool use_z = kind != SpaceKind::Circle;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const bool same_theta = !use_theta || angular_distance(points[i].theta, points[j].theta) <= kAngleTolerance;
      const bool same_z = !use_z || (points[i].z - points[j].z).norm() <= kAngleTolerance;
      if (same_theta && same_z)
        throw Error(ErrorCode::InvalidConfiguration,
                    "points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
  }
}

// Kernel arguments (t, s) for a pair of points.
std::pair<double, double> arguments(const KernelSpec& spec, const ProductPoint& a, const ProductPoint& b) {
  switch (spec.space().kind()) {
    case SpaceKind::Circle: return {circle_cosine(a.theta, b.theta), 1.0};
    case SpaceKind::Sphere: return {clamp_unit(a.z.dot(b.z)), 1.0};
    default: return {circle_cosine(a.theta, b.theta), clamp_unit(a.z.dot(b.z))};
  }
}

Eigen::VectorXd unit_axis(int dim) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(dim);
  z(0) = 1.0;
  return z;
}

double quadratic_form(const SymMatrix& a, const Eigen::VectorXd& c) { return c.dot(a * c); }

// Parity class shared by every member of the set, if any. Empty sets count as even.
std::optional<Parity> single_parity(const SupportSet1D& set) {
  bool even = false;
  bool odd = false;
  for (const auto& term : set.terms) {
    even |= term.has_member_at_least(0, Parity::Even);
    odd |= term.has_member_at_least(0, Parity::Odd);
  }
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

}  // namespace

const char* to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::Parity: return "parity";
    case WitnessKind::Progression: return "progression";
    case WitnessKind::Composed: return "composed";
    case WitnessKind::Searched: return "searched";
  }
  return "?";
}

SymMatrix gram_matrix(const KernelSpec& spec, std::span<const ProductPoint> points) {
  require_point_model(spec);
  require_distinct(spec, points);
  const auto n = static_cast<Eigen::Index>(points.size());
  SymMatrix a(n, n);
  const double diag = spec.value_at_identity();
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = diag;
    for (Eigen::Index j = 0; j < i; ++j) {
      const auto [t, s] = arguments(spec, points[i], points[j]);
      a(i, j) = a(j, i) = eval_kernel(spec, t, s);
    }
  }
  return a;
}

SymMatrix circle_axis_gram(const KernelSpec& spec, std::span<const double> thetas) {
  const auto n = static_cast<Eigen::Index>(thetas.size());
  SymMatrix a(n, n);
  const double diag = spec.value_at_identity();
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = diag;
    for (Eigen::Index j = 0; j < i; ++j) a(i, j) = a(j, i) = eval_kernel(spec, circle_cosine(thetas[i], thetas[j]), 1.0);
  }
  return a;
}

PdCheck check_pd(const SymMatrix& a, double tol) {
  if (a.rows() == 0) return {true, std::numeric_limits<double>::infinity()};
  Eigen::SelfAdjointEigenSolver<SymMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalError, "symmetric eigensolve failed");
  const double lambda_min = solver.eigenvalues()(0);
  const double threshold = tol * std::max(1.0, a.diagonal().maxCoeff());
  return {lambda_min > threshold, lambda_min};
}

std::vector<std::pair<int, double>> lambda_min_curve(const SymMatrix& a) {
  std::vector<std::pair<int, double>> curve;
  for (Eigen::Index n = 1; n <= a.rows(); ++n) {
    Eigen::SelfAdjointEigenSolver<SymMatrix> solver(a.topLeftCorner(n, n), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalError, "symmetric eigensolve failed");
    curve.emplace_back(static_cast<int>(n), solver.eigenvalues()(0));
  }
  return curve;
}

SymMatrix layer_matrix(const KernelSpec& spec, std::span<const ProductPoint> points, int l) {
  require_product(spec, "layer_matrix");
  require_point_model(spec);
  if (l < 0 || l > spec.truncation().lmax) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (l < 0) throw Error(ErrorCode::InvalidParameters, "negative degree");
    return SymMatrix::Zero(n, n);
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  const int m = spec.space().m();
  SymMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto [t, s] = i == j ? std::pair{1.0, 1.0} : arguments(spec, points[i], points[j]);
      a(i, j) = a(j, i) = eval_marginal(spec, l, t) * gegenbauer(l, m, s);
    }
  }
  return a;
}

DegreeForms per_degree_forms(const KernelSpec& spec, std::span<const ProductPoint> points,
                             const Eigen::VectorXd& c) {
  require_product(spec, "per_degree_forms");
  require_point_model(spec);
  if (c.size() != static_cast<Eigen::Index>(points.size()))
    throw Error(ErrorCode::InvalidParameters, "coefficient vector and point count differ");
  const int lmax = spec.truncation().lmax;
  DegreeForms forms;
  forms.layers = Eigen::VectorXd::Zero(lmax + 1);
  const auto n = static_cast<Eigen::Index>(points.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto [t, s] = i == j ? std::pair{1.0, 1.0} : arguments(spec, points[i], points[j]);
      const double weight = (i == j ? 1.0 : 2.0) * c(i) * c(j);
      forms.layers += weight * eval_marginals(spec, t).cwiseProduct(spec.space().axis_polynomials(lmax, s));
    }
  }
  forms.total = forms.layers.sum();
  forms.gram_form = quadratic_form(gram_matrix(spec, points), c);
  return forms;
}

BlockReport enhanced_block_check(const KernelSpec& spec, const EnhancedSet& set, int l) {
  const SymMatrix layer = layer_matrix(spec, set.points(), l);
  const Eigen::Index half = set.p() * set.q();
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  const auto m11 = layer.topLeftCorner(half, half);
  BlockReport report;
  report.scale = spec.value_at_identity();
  report.diagonal_gap = (layer.bottomRightCorner(half, half) - m11).cwiseAbs().maxCoeff();
  report.off_diagonal_gap = std::max((layer.topRightCorner(half, half) - sign * m11).cwiseAbs().maxCoeff(),
                                     (layer.bottomLeftCorner(half, half) - sign * m11).cwiseAbs().maxCoeff());
  const double bound = kBlockTolerance * report.scale;
  report.holds = report.diagonal_gap <= bound && report.off_diagonal_gap <= bound;
  return report;
}

WitnessReport witness_parity_sphere(const KernelSpec& spec) {
  SupportSet1D axis;
  int m = spec.space().m();
  switch (spec.space().kind()) {
    case SpaceKind::Sphere: axis = std::get<SupportSet1D>(spec.support()); break;
    case SpaceKind::CircleSphere: axis = l_projection(std::get<SupportSet2D>(spec.support())); break;
    default: throw Error(ErrorCode::NotApplicable, "parity witness needs a sphere factor");
  }
  const auto parity = single_parity(axis);
  if (!parity) throw Error(ErrorCode::NotApplicable, "sphere-axis support has both parities");

  const Eigen::VectorXd z = unit_axis(m + 1);
  WitnessReport report;
  report.kind = WitnessKind::Parity;
  report.points = {{0.0, z}, {0.0, -z}};
  report.c = Eigen::Vector2d(1.0, *parity == Parity::Even ? -1.0 : 1.0);
  report.residual = quadratic_form(gram_matrix(spec, report.points), report.c);
  report.scale = spec.value_at_identity() * report.c.squaredNorm();
  report.note = std::string("sphere-axis support is ") + to_string(*parity) + "-only";
  return report;
}

WitnessReport witness_progression_circle(const KernelSpec& spec, const ProgressionWitness& witness) {
  SupportSet1D axis;
  switch (spec.space().kind()) {
    case SpaceKind::Circle: axis = std::get<SupportSet1D>(spec.support()); break;
    case SpaceKind::CircleSphere:
    case SpaceKind::CircleTPH: axis = k_projection(std::get<SupportSet2D>(spec.support())); break;
    default: throw Error(ErrorCode::NotApplicable, "progression witness needs a circle factor");
  }
  if (witness.modulus < 1 || !window_misses(axis, witness, kWitnessWindow))
    throw Error(ErrorCode::NotApplicable, "circle-axis support " + to_string(axis) + " meets ±(" +
                                              std::to_string(witness.modulus) + "Z+" +
                                              std::to_string(witness.residue) + ")");
  const int n = static_cast<int>(witness.modulus);
  const std::vector<double> thetas = roots_of_unity(n);
  WitnessReport report;
  report.kind = WitnessKind::Progression;
  report.c.resize(n);
  // Same residue mod n, smaller argument for cos.
  const double j = static_cast<double>(witness.residue % witness.modulus);
  for (int mu = 0; mu < n; ++mu) report.c(mu) = std::cos(j * thetas[mu]);
  const Eigen::VectorXd z = spec.space().kind() == SpaceKind::CircleSphere ? unit_axis(spec.space().m() + 1)
                                                                           : Eigen::VectorXd();
  for (double theta : thetas) report.points.push_back({theta, z});
  report.residual = quadratic_form(circle_axis_gram(spec, thetas), report.c);
  report.scale = spec.value_at_identity() * report.c.squaredNorm();
  report.note = "roots of unity of order " + std::to_string(n) + ", c = cos(" + std::to_string(witness.residue) +
                " theta)";
  return report;
}

WitnessReport witness_product(const KernelSpec& spec, const Certificate& cert, const SearchBudget& budget) {
  if (spec.space().kind() != SpaceKind::CircleSphere || cert.verdict != Verdict::NotSPD || !cert.counterexample ||
      !cert.counterexample->witness || !cert.counterexample->gamma || !cert.counterexample->parity ||
      *cert.counterexample->parity == Parity::Any)
    throw Error(ErrorCode::NotApplicable, "witness_product needs a NotSPD circle-sphere certificate");

  const auto& cx = *cert.counterexample;
  const int m = spec.space().m();
  const int n = static_cast<int>(cx.witness->modulus);

  if (*cx.gamma == 0) {
    // c1 = ±c2 = d cancels the layers of the other parity; the roots-of-unity
    // vector d cancels every surviving layer through the character sum.
    const EnhancedSet set = build_enhanced(roots_of_unity(n), {unit_axis(m + 1)});
    Eigen::VectorXd d(n);
    const double j = static_cast<double>(cx.witness->residue % cx.witness->modulus);
    for (int mu = 0; mu < n; ++mu) d(mu) = std::cos(j * set.thetas()[mu]);
    const double sign = *cx.parity == Parity::Even ? 1.0 : -1.0;
    WitnessReport report;
    report.kind = WitnessKind::Composed;
    report.points = set.points();
    report.c.resize(2 * n);
    report.c << d, sign * d;
    report.residual = quadratic_form(gram_matrix(spec, report.points), report.c);
    report.scale = spec.value_at_identity() * report.c.squaredNorm();
    report.note = std::string("enhanced set on ") + std::to_string(n) + " roots of unity x 1 sphere point; " +
                  to_string(*cx.parity) + "-set misses ±(" + std::to_string(n) + "Z+" +
                  std::to_string(cx.witness->residue) + ")";
    return report;
  }

  // No closed form is known past gamma = 0; look for small eigenvalues.
  if (budget.evaluations < 1 || budget.max_q < 1)
    throw Error(ErrorCode::InvalidParameters, "search budget must be positive");
  std::mt19937_64 rng(budget.seed);
  const std::vector<double> thetas = roots_of_unity(n);
  WitnessReport best;
  best.kind = WitnessKind::Searched;
  best.lambda_min = std::numeric_limits<double>::infinity();
  for (int eval = 0; eval < budget.evaluations; ++eval) {
    const int q = 1 + eval % budget.max_q;
    const SampledConfig config = sample_config(m, 1, q, rng());
    const EnhancedSet set = build_enhanced(thetas, config.zs);
    const SymMatrix a = gram_matrix(spec, set.points());
    Eigen::SelfAdjointEigenSolver<SymMatrix> solver(a);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalError, "symmetric eigensolve failed");
    if (solver.eigenvalues()(0) < *best.lambda_min) {
      best.lambda_min = solver.eigenvalues()(0);
      best.points = set.points();
      best.c = solver.eigenvectors().col(0);
      best.residual = quadratic_form(a, best.c);
    }
  }
  best.evaluations = budget.evaluations;
  best.scale = spec.value_at_identity() * best.c.squaredNorm();
  best.note = "searched enhanced sets on " + std::to_string(n) + " roots of unity; failure first at γ=" +
              std::to_string(*cx.gamma) + "; evidence only";
  return best;
}

}  // namespace spdsphere
