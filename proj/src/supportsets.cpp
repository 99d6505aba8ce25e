#include "spdsphere/supportsets.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "spdsphere/error.hpp"

namespace spdsphere {

namespace {

constexpr Index kMaxPeriod = Index{1} << 40;

bool parity_matches(Index v, Parity parity) {
  switch (parity) {
    case Parity::Even: return v % 2 == 0;
    case Parity::Odd: return v % 2 != 0;
    case Parity::Any: return true;
  }
  return false;
}

Index mod(Index v, Index n) {
  const Index r = v % n;
  return r < 0 ? r + n : r;
}

void push_unique(std::vector<Term1D>& terms, const Term1D& term) {
  if (std::find(terms.begin(), terms.end(), term) == terms.end()) terms.push_back(term);
}

std::vector<Index> divisors(Index n) {
  std::vector<Index> small;
  std::vector<Index> large;
  for (Index d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Residue classes hit by ±singletons modulo n.
std::vector<bool> singleton_hits(const std::vector<Index>& singles, Index n) {
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (Index v : singles) {
    hit[static_cast<std::size_t>(mod(v, n))] = true;
    hit[static_cast<std::size_t>(mod(-v, n))] = true;
  }
  return hit;
}

ProgressionWitness validated(const SupportSet1D& set, ProgressionWitness w) {
  if (!window_misses(set, w, kWitnessWindow))
    throw Error(ErrorCode::NumericalError,
                "progression witness " + std::to_string(w.modulus) + "Z+" + std::to_string(w.residue) +
                    " failed the window scan for " + to_string(set));
  return w;
}

}  // namespace

const char* to_string(Parity parity) {
  switch (parity) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Any: return "any";
  }
  return "?";
}

Term1D Term1D::singleton(Index value) {
  if (value < 0) throw Error(ErrorCode::InvalidParameters, "singleton value must be >= 0");
  return Term1D(Kind::Singleton, value, 0);
}

Term1D Term1D::progression(Index base, Index step) {
  if (base < 0) throw Error(ErrorCode::InvalidParameters, "progression base must be >= 0");
  if (step < 1) throw Error(ErrorCode::InvalidParameters, "progression step must be >= 1");
  return Term1D(Kind::Progression, base, step);
}

bool Term1D::contains(Index v) const {
  if (kind_ == Kind::Singleton) return v == base_;
  return v >= base_ && (v - base_) % step_ == 0;
}

bool Term1D::infinitely_many(Parity parity) const {
  if (kind_ == Kind::Singleton) return false;
  if (parity == Parity::Any || step_ % 2 != 0) return true;
  return parity_matches(base_, parity);
}

bool Term1D::has_member_at_least(Index floor, Parity parity) const {
  if (kind_ == Kind::Singleton) return base_ >= floor && parity_matches(base_, parity);
  return infinitely_many(parity);
}

bool contains(const SupportSet1D& set, Index v) {
  return std::any_of(set.terms.begin(), set.terms.end(), [v](const Term1D& t) { return t.contains(v); });
}

bool contains(const SupportSet2D& set, Index k, Index l) {
  return std::any_of(set.terms.begin(), set.terms.end(),
                     [k, l](const Term2D& t) { return t.k.contains(k) && t.l.contains(l); });
}

bool symmetric_contains(const SupportSet1D& set, Index v) { return contains(set, v < 0 ? -v : v); }

SupportSet1D section(const SupportSet2D& set, Index k) {
  SupportSet1D out;
  for (const auto& term : set.terms)
    if (term.k.contains(k)) push_unique(out.terms, term.l);
  return out;
}

SupportSet1D column(const SupportSet2D& set, Index l) { return section(transpose(set), l); }

SupportSet2D transpose(const SupportSet2D& set) {
  SupportSet2D out;
  out.terms.reserve(set.terms.size());
  for (const auto& term : set.terms) out.terms.push_back({term.l, term.k});
  return out;
}

SupportSet1D k_projection(const SupportSet2D& set) {
  SupportSet1D out;
  for (const auto& term : set.terms) push_unique(out.terms, term.k);
  return out;
}

SupportSet1D l_projection(const SupportSet2D& set) { return k_projection(transpose(set)); }

bool has_infinitely_many(const SupportSet1D& set, Parity parity) {
  return std::any_of(set.terms.begin(), set.terms.end(),
                     [parity](const Term1D& t) { return t.infinitely_many(parity); });
}

DerivedSet derived_parity_tail_set(const SupportSet2D& set, Index gamma, Parity parity) {
  if (gamma < 0) throw Error(ErrorCode::InvalidParameters, "gamma must be >= 0");
  DerivedSet out;
  for (const auto& term : set.terms) {
    if (!term.l.is_progression()) out.stabilization = std::max(out.stabilization, term.l.base() + 1);
    if (term.l.has_member_at_least(gamma, parity)) push_unique(out.set.terms, term.k);
  }
  return out;
}

Index progression_period(const SupportSet1D& set) {
  Index period = 1;
  for (const auto& term : set.terms) {
    if (!term.is_progression()) continue;
    period = std::lcm(period, term.step());
    if (period > kMaxPeriod) throw Error(ErrorCode::Unsupported, "progression steps have an lcm beyond 2^40");
  }
  return period;
}

Index periodic_from(const SupportSet1D& set) {
  Index bound = 0;
  for (const auto& term : set.terms) bound = std::max(bound, term.base() + 1);
  return bound;
}

bool window_misses(const SupportSet1D& set, const ProgressionWitness& witness, Index radius) {
  const Index n = witness.modulus;
  if (n < 1) return false;
  Index v = -radius + mod(witness.residue + radius, n);
  for (; v <= radius; v += n)
    if (symmetric_contains(set, v)) return false;
  return true;
}

ProgressionVerdict meets_every_progression(const SupportSet1D& set) {
  std::vector<Term1D> progressions;
  std::vector<Index> singles;
  for (const auto& term : set.terms) {
    if (term.is_progression())
      progressions.push_back(term);
    else
      singles.push_back(term.base());
  }

  if (progressions.empty()) {
    // Finite set: 2|S|+1 classes always leave one uncovered.
    for (Index n = 1;; ++n) {
      const auto hit = singleton_hits(singles, n);
      for (Index j = 0; j < n; ++j)
        if (!hit[static_cast<std::size_t>(j)]) return {false, validated(set, {n, j})};
    }
  }

  const Index period = progression_period(set);
  for (Index d : divisors(period)) {
    std::vector<bool> uncovered(static_cast<std::size_t>(d), false);
    bool any_uncovered = false;
    for (Index j = 0; j < d; ++j) {
      const bool covered = std::any_of(progressions.begin(), progressions.end(), [&](const Term1D& p) {
        const Index g = std::gcd(p.step(), d);
        return mod(j - p.base(), g) == 0 || mod(j + p.base(), g) == 0;
      });
      if (!covered) {
        uncovered[static_cast<std::size_t>(j)] = true;
        any_uncovered = true;
      }
    }
    if (!any_uncovered) continue;

    // Every lift of an uncovered class to a multiple of d stays uncovered by
    // the progressions; powers of d eventually outnumber the singletons.
    for (Index n = d; n <= kMaxPeriod; n *= d) {
      const auto hit = singleton_hits(singles, n);
      for (Index j = 0; j < n; ++j) {
        if (uncovered[static_cast<std::size_t>(j % d)] && !hit[static_cast<std::size_t>(j)])
          return {false, validated(set, {n, j})};
      }
    }
    throw Error(ErrorCode::NumericalError, "no progression witness found below 2^40");
  }
  return {true, std::nullopt};
}

std::string to_string(const Term1D& term) {
  if (term.is_progression())
    return "prog(" + std::to_string(term.base()) + "," + std::to_string(term.step()) + ")";
  return "one(" + std::to_string(term.base()) + ")";
}

std::string to_string(const SupportSet1D& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.terms.size(); ++i) {
    if (i) out += ", ";
    out += to_string(set.terms[i]);
  }
  return out + "}";
}

std::string to_string(const SupportSet2D& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.terms.size(); ++i) {
    if (i) out += ", ";
    out += to_string(set.terms[i].k) + "x" + to_string(set.terms[i].l);
  }
  return out + "}";
}

}  // namespace spdsphere
