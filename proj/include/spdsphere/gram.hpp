#ifndef SPDSPHERE_GRAM_HPP
#define SPDSPHERE_GRAM_HPP

// Numerical side of the library: interpolation matrices of truncated
// kernels, positive definiteness checks, the per-degree split of quadratic
// forms, block identities on enhanced sets and explicit configurations whose
// quadratic form vanishes.
//
// Results on truncated kernels are evidence or falsification, not proof.

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spdsphere/certify.hpp"
#include "spdsphere/geometry.hpp"
#include "spdsphere/kernels.hpp"

namespace spdsphere {

/// Symmetric by construction: entry (i,j) is computed once and mirrored.
using SymMatrix = Eigen::MatrixXd;

/// A(i,j) = f(x_i . x_j, z_i . z_j) with an exact f(1,1) diagonal. Circle
/// specs read only theta, sphere specs only z. Projective factors have no
/// point model and are rejected.
SymMatrix gram_matrix(const KernelSpec& spec, std::span<const ProductPoint> points);

/// [f(cos(θ_i - θ_j), 1)]: every point shares one point of the second factor.
/// Valid for all space kinds.
SymMatrix circle_axis_gram(const KernelSpec& spec, std::span<const double> thetas);

struct PdCheck {
  bool positive_definite = false;
  double lambda_min = 0.0;
};

/// positive_definite iff lambda_min > tol * max(1, max diagonal entry).
PdCheck check_pd(const SymMatrix& a, double tol);

/// Smallest eigenvalue of each leading principal submatrix, n = 1..order.
std::vector<std::pair<int, double>> lambda_min_curve(const SymMatrix& a);

/// Degree-l layer [f_l(x_i . x_j) P_l(z_i . z_j)].
SymMatrix layer_matrix(const KernelSpec& spec, std::span<const ProductPoint> points, int l);

struct DegreeForms {
  /// Sum of the layers.
  double total = 0.0;
  /// layers(l) = c^T [f_l(x_i . x_j) P_l(z_i . z_j)] c, l = 0..lmax.
  Eigen::VectorXd layers;
  /// c^T A c with A from gram_matrix.
  double gram_form = 0.0;
};

DegreeForms per_degree_forms(const KernelSpec& spec, std::span<const ProductPoint> points,
                             const Eigen::VectorXd& c);

struct BlockReport {
  double diagonal_gap = 0.0;     // max |M22 - M11|
  double off_diagonal_gap = 0.0;  // max over |M12 - (-1)^l M11| and |M21 - (-1)^l M11|
  double scale = 0.0;            // f(1,1)
  bool holds = false;            // both gaps <= 1e-12 * scale
};

BlockReport enhanced_block_check(const KernelSpec& spec, const EnhancedSet& set, int l);

enum class WitnessKind { Parity, Progression, Composed, Searched };

const char* to_string(WitnessKind kind);

struct WitnessReport {
  WitnessKind kind = WitnessKind::Parity;
  std::vector<ProductPoint> points;
  Eigen::VectorXd c;
  /// c^T A c, reported verbatim.
  double residual = 0.0;
  /// f(1,1) * |c|^2.
  double scale = 0.0;
  /// Searched witnesses: smallest eigenvalue found and evaluations spent.
  std::optional<double> lambda_min;
  int evaluations = 0;
  std::string note;
};

/// z, -z with c = (1,-1) for an even-only sphere-axis support, c = (1,1) for
/// an odd-only one.
WitnessReport witness_parity_sphere(const KernelSpec& spec);

/// n-th roots of unity with c_mu = cos(j theta_mu), for a circle-axis support
/// missing ±(nZ + j).
WitnessReport witness_progression_circle(const KernelSpec& spec, const ProgressionWitness& witness);

struct SearchBudget {
  int evaluations = 10000;
  std::uint64_t seed = 0;
  int max_q = 4;
};

/// Witness for a NotSPD certificate of certify_circle_sphere. Failures at
/// gamma = 0 give a composed closed-form witness on an enhanced set; later
/// failures fall back to a seeded search over enhanced sets.
WitnessReport witness_product(const KernelSpec& spec, const Certificate& cert, const SearchBudget& budget = {});

}  // namespace spdsphere

#endif  // SPDSPHERE_GRAM_HPP
