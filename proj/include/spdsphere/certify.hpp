#ifndef SPDSPHERE_CERTIFY_HPP
#define SPDSPHERE_CERTIFY_HPP

// Exact decision procedures for strict positive definiteness of isotropic
// kernels, driven only by the symbolic support of the expansion
// coefficients.
//
// Characterizations return SPD or NotSPD. The two product sufficient tests
// return SufficientOnly or Inconclusive, never NotSPD.

#include <optional>
#include <string>
#include <vector>

#include "spdsphere/error.hpp"
#include "spdsphere/kernels.hpp"
#include "spdsphere/supportsets.hpp"

namespace spdsphere {

enum class Verdict { SPD, NotSPD, SufficientOnly, Inconclusive };

const char* to_string(Verdict verdict);

struct TraceEntry {
  std::string condition;
  bool outcome = false;
  std::optional<Index> gamma;
};

struct Counterexample {
  enum class Kind { Progression, ParityDeficit, QuadrantDeficit };

  Kind kind = Kind::Progression;
  std::optional<ProgressionWitness> witness;
  std::optional<Index> gamma;
  std::optional<Parity> parity;
  /// Set for two-sphere quadrant failures: parities of (k, l).
  std::optional<std::pair<Parity, Parity>> quadrant;
  std::string description;
};

struct Certificate {
  SpaceKind space = SpaceKind::Circle;
  Verdict verdict = Verdict::Inconclusive;
  std::string method;
  std::vector<TraceEntry> trace;
  std::optional<Counterexample> counterexample;
};

Certificate certify_circle(const SupportSet1D& support);

Certificate certify_sphere(const SupportSet1D& support, int m);

/// S^1 x S^m characterization: for every gamma, the odd and even derived
/// tail sets meet every arithmetic progression. gamma_max overrides the
/// stabilization bound when set.
Certificate certify_circle_sphere(const SupportSet2D& support, int m, std::optional<Index> gamma_max = {});

/// Same verdict through the truncated parity sums f_gamma^o, f_gamma^e: their
/// circle supports are rebuilt by enumerating sections over a periodic
/// window, then handed to certify_circle.
Certificate certify_circle_sphere_gamma_loop(const SupportSet2D& support, int m,
                                             std::optional<Index> gamma_max = {});

/// S^1 x M^d with M^d a projective space or the Cayley plane; no parity split.
Certificate certify_circle_tph(const SupportSet2D& support, const SpaceDescriptor& space,
                               std::optional<Index> gamma_max = {});

enum class OuterAxis { Circle, Sphere };

/// Sufficient conditions built from single-factor characterizations applied
/// to sections (OuterAxis::Circle) or columns (OuterAxis::Sphere).
Certificate sufficient_product(const SupportSet2D& support, int m, OuterAxis axis);

/// S^m x S^M, m, M >= 2: every parity quadrant must have unbounded k- and
/// l-projections.
Certificate certify_two_spheres(const SupportSet2D& support, int m, int big_m);

/// Runs the characterization matching the spec's space.
Certificate certify(const KernelSpec& spec, std::optional<Index> gamma_max = {});

/// Exact circle support {k : pred(k)} for a predicate that is eventually
/// periodic from `start` with period `period`: k < start become singletons and
/// k in [start, start+period) become progressions. Throws NumericalError if
/// pred(k) != pred(k+period) on the periodic window.
template <typename Pred>
SupportSet1D promote_periodic(Index start, Index period, Pred&& pred) {
  SupportSet1D out;
  for (Index k = 0; k < start; ++k)
    if (pred(k)) out.terms.push_back(Term1D::singleton(k));
  for (Index k = start; k < start + period; ++k) {
    const bool here = pred(k);
    if (here != pred(k + period))
      throw Error(ErrorCode::NumericalError, "section outcome is not periodic at k=" + std::to_string(k));
    if (here) out.terms.push_back(Term1D::progression(k, period));
  }
  return out;
}

}  // namespace spdsphere

#endif  // SPDSPHERE_CERTIFY_HPP
