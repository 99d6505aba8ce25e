#ifndef SPDSPHERE_SUPPORTSETS_HPP
#define SPDSPHERE_SUPPORTSETS_HPP

// Eventually periodic subsets of Z_+ and Z_+^2, built from finite unions of
// singletons and one-sided arithmetic progressions {a, a+n, a+2n, ...}.
// These describe where the expansion coefficients of a kernel are positive.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spdsphere {

using Index = std::int64_t;

enum class Parity { Even, Odd, Any };

const char* to_string(Parity parity);

class Term1D {
 public:
  enum class Kind { Singleton, Progression };

  static Term1D singleton(Index value);
  static Term1D progression(Index base, Index step);

  Kind kind() const { return kind_; }
  bool is_progression() const { return kind_ == Kind::Progression; }
  /// Singleton value, or the first member of a progression.
  Index base() const { return base_; }
  /// Progression step; 0 for singletons.
  Index step() const { return step_; }

  bool contains(Index v) const;
  /// True iff the term has infinitely many members of the given parity.
  bool infinitely_many(Parity parity) const;
  /// True iff the term has some member >= floor of the given parity.
  bool has_member_at_least(Index floor, Parity parity) const;

  friend bool operator==(const Term1D&, const Term1D&) = default;

 private:
  Term1D(Kind kind, Index base, Index step) : kind_(kind), base_(base), step_(step) {}

  Kind kind_;
  Index base_;
  Index step_;
};

struct SupportSet1D {
  std::vector<Term1D> terms;

  bool empty() const { return terms.empty(); }
  friend bool operator==(const SupportSet1D&, const SupportSet1D&) = default;
};

struct Term2D {
  Term1D k;
  Term1D l;

  friend bool operator==(const Term2D&, const Term2D&) = default;
};

struct SupportSet2D {
  std::vector<Term2D> terms;

  bool empty() const { return terms.empty(); }
  friend bool operator==(const SupportSet2D&, const SupportSet2D&) = default;
};

/// A residue class n*Z + residue (two-sided) missed by a symmetrized set.
struct ProgressionWitness {
  Index modulus = 1;
  Index residue = 0;

  friend bool operator==(const ProgressionWitness&, const ProgressionWitness&) = default;
};

bool contains(const SupportSet1D& set, Index v);
bool contains(const SupportSet2D& set, Index k, Index l);

/// Membership in ±S = {v in Z : |v| in S}.
bool symmetric_contains(const SupportSet1D& set, Index v);

/// {l : (k,l) in S2}.
SupportSet1D section(const SupportSet2D& set, Index k);

/// {k : (k,l) in S2}.
SupportSet1D column(const SupportSet2D& set, Index l);

/// Swaps the roles of k and l.
SupportSet2D transpose(const SupportSet2D& set);

/// Union of all k-parts (resp. l-parts).
SupportSet1D k_projection(const SupportSet2D& set);
SupportSet1D l_projection(const SupportSet2D& set);

bool has_infinitely_many(const SupportSet1D& set, Parity parity);

struct DerivedSet {
  SupportSet1D set;
  /// One past the largest l-singleton (0 when there is none); the derived set
  /// is the same for every gamma >= stabilization.
  Index stabilization = 0;
};

/// {k : section(S2,k) ∩ {gamma, gamma+1, ...} ∩ parity-class ≠ ∅}.
DerivedSet derived_parity_tail_set(const SupportSet2D& set, Index gamma, Parity parity);

/// Least common multiple of the steps of progression terms (1 if none).
Index progression_period(const SupportSet1D& set);

/// One past the largest base or singleton value (0 for the empty set).
/// Membership is periodic with period progression_period() from here on.
Index periodic_from(const SupportSet1D& set);

struct ProgressionVerdict {
  bool meets_all = false;
  std::optional<ProgressionWitness> witness;
};

/// Decides whether ±S intersects n*Z + j for every n >= 1 and every j.
/// A negative answer carries a witness class that has been rechecked by a
/// window scan over [-kWitnessWindow, kWitnessWindow].
ProgressionVerdict meets_every_progression(const SupportSet1D& set);

inline constexpr Index kWitnessWindow = 10000;

/// Window scan: true iff no v in [-radius, radius] with v ≡ residue (mod modulus)
/// belongs to ±S.
bool window_misses(const SupportSet1D& set, const ProgressionWitness& witness, Index radius);

std::string to_string(const Term1D& term);
std::string to_string(const SupportSet1D& set);
std::string to_string(const SupportSet2D& set);

}  // namespace spdsphere

#endif  // SPDSPHERE_SUPPORTSETS_HPP
