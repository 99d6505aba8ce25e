#include "spdsphere/certify.hpp"

#include <algorithm>
#include <array>

namespace spdsphere {

namespace {

std::string progression_text(const ProgressionWitness& w) {
  return std::to_string(w.modulus) + "Z+" + std::to_string(w.residue);
}

std::string gamma_text(Index gamma) { return "γ=" + std::to_string(gamma); }

void check_sphere_dimension(int m) {
  if (m < 2) throw Error(ErrorCode::InvalidDimension, "sphere dimension must be >= 2");
}

Certificate not_spd(Certificate cert, Counterexample cx) {
  cert.verdict = Verdict::NotSPD;
  cert.counterexample = std::move(cx);
  return cert;
}

// Largest l-singleton + 1, scanned directly from the terms.
Index l_singleton_bound(const SupportSet2D& support) {
  Index bound = 0;
  for (const auto& term : support.terms)
    if (!term.l.is_progression()) bound = std::max(bound, term.l.base() + 1);
  return bound;
}

// Does the section contain some l >= gamma of the given parity? Progressions
// are probed member by member; two steps past max(base, gamma) reach both
// residues mod 2 whenever the progression has them.
bool section_has_tail(const SupportSet1D& section, Index gamma, Parity parity) {
  auto wanted = [parity](Index v) {
    return parity == Parity::Any || (parity == Parity::Even) == (v % 2 == 0);
  };
  for (const auto& term : section.terms) {
    if (!term.is_progression()) {
      if (term.base() >= gamma && wanted(term.base())) return true;
      continue;
    }
    const Index last = std::max(term.base(), gamma) + 2 * term.step();
    for (Index v = term.base(); v <= last; v += term.step())
      if (v >= gamma && wanted(v)) return true;
  }
  return false;
}

// Per-gamma failure of a derived circle support.
Counterexample derived_failure(Index gamma, Parity parity, const SupportSet1D& derived,
                               const ProgressionWitness& w) {
  Counterexample cx;
  cx.kind = Counterexample::Kind::Progression;
  cx.witness = w;
  cx.gamma = gamma;
  cx.parity = parity;
  const std::string name = parity == Parity::Any ? "derived set" : std::string(to_string(parity)) + "-set";
  cx.description = gamma_text(gamma) + " " + name +
                   (derived.empty() ? std::string(" empty") : " misses " + progression_text(w));
  return cx;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::SPD: return "SPD";
    case Verdict::NotSPD: return "NotSPD";
    case Verdict::SufficientOnly: return "SufficientOnly";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Certificate certify_circle(const SupportSet1D& support) {
  Certificate cert;
  cert.space = SpaceKind::Circle;
  cert.method = "circle: ±S meets every arithmetic progression";
  const auto result = meets_every_progression(support);
  cert.trace.push_back({"±" + to_string(support) + " meets every nZ+j", result.meets_all, std::nullopt});
  if (result.meets_all) {
    cert.verdict = Verdict::SPD;
    return cert;
  }
  Counterexample cx;
  cx.kind = Counterexample::Kind::Progression;
  cx.witness = result.witness;
  cx.description = "±S misses " + progression_text(*result.witness);
  return not_spd(std::move(cert), std::move(cx));
}

Certificate certify_sphere(const SupportSet1D& support, int m) {
  check_sphere_dimension(m);
  Certificate cert;
  cert.space = SpaceKind::Sphere;
  cert.method = "sphere: infinitely many even and odd degrees";
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    const bool ok = has_infinitely_many(support, parity);
    cert.trace.push_back({std::string("infinitely many ") + to_string(parity) + " degrees", ok, std::nullopt});
    if (!ok) {
      Counterexample cx;
      cx.kind = Counterexample::Kind::ParityDeficit;
      cx.parity = parity;
      cx.description = std::string("finitely many ") + to_string(parity) + " degrees";
      return not_spd(std::move(cert), std::move(cx));
    }
  }
  cert.verdict = Verdict::SPD;
  return cert;
}

Certificate certify_circle_sphere(const SupportSet2D& support, int m, std::optional<Index> gamma_max) {
  check_sphere_dimension(m);
  Certificate cert;
  cert.space = SpaceKind::CircleSphere;
  cert.method = "circle-sphere: parity tail sets meet every progression for all gamma";
  const Index last = gamma_max.value_or(derived_parity_tail_set(support, 0, Parity::Odd).stabilization);
  for (Index gamma = 0; gamma <= last; ++gamma) {
    for (Parity parity : {Parity::Odd, Parity::Even}) {
      const DerivedSet derived = derived_parity_tail_set(support, gamma, parity);
      const auto result = meets_every_progression(derived.set);
      cert.trace.push_back(
          {std::string("±") + to_string(parity) + "-set " + to_string(derived.set) + " meets every nZ+j",
           result.meets_all, gamma});
      if (!result.meets_all)
        return not_spd(std::move(cert), derived_failure(gamma, parity, derived.set, *result.witness));
    }
  }
  cert.verdict = Verdict::SPD;
  return cert;
}

Certificate certify_circle_sphere_gamma_loop(const SupportSet2D& support, int m, std::optional<Index> gamma_max) {
  check_sphere_dimension(m);
  Certificate cert;
  cert.space = SpaceKind::CircleSphere;
  cert.method = "circle-sphere: truncated parity sums are SPD on the circle for all gamma";
  const SupportSet1D ks = k_projection(support);
  const Index start = periodic_from(ks);
  const Index period = progression_period(ks);
  const Index last = gamma_max.value_or(l_singleton_bound(support));
  for (Index gamma = 0; gamma <= last; ++gamma) {
    for (Parity parity : {Parity::Odd, Parity::Even}) {
      const SupportSet1D circle = promote_periodic(
          start, period, [&](Index k) { return section_has_tail(section(support, k), gamma, parity); });
      const Certificate inner = certify_circle(circle);
      const bool ok = inner.verdict == Verdict::SPD;
      cert.trace.push_back({std::string("f_γ^") + (parity == Parity::Odd ? "o" : "e") + " circle support " +
                                to_string(circle) + " is SPD on S^1",
                            ok, gamma});
      if (!ok)
        return not_spd(std::move(cert),
                       derived_failure(gamma, parity, circle, *inner.counterexample->witness));
    }
  }
  cert.verdict = Verdict::SPD;
  return cert;
}

Certificate certify_circle_tph(const SupportSet2D& support, const SpaceDescriptor& space,
                               std::optional<Index> gamma_max) {
  if (space.kind() != SpaceKind::CircleTPH)
    throw Error(ErrorCode::WrongCertifier, "certify_circle_tph needs a projective space or the Cayley plane");
  Certificate cert;
  cert.space = SpaceKind::CircleTPH;
  cert.method = "circle-tph: tail sets meet every progression for all gamma";
  const Index last = gamma_max.value_or(derived_parity_tail_set(support, 0, Parity::Any).stabilization);
  for (Index gamma = 0; gamma <= last; ++gamma) {
    const DerivedSet derived = derived_parity_tail_set(support, gamma, Parity::Any);
    const auto result = meets_every_progression(derived.set);
    cert.trace.push_back({"±" + to_string(derived.set) + " meets every nZ+j", result.meets_all, gamma});
    if (!result.meets_all)
      return not_spd(std::move(cert), derived_failure(gamma, Parity::Any, derived.set, *result.witness));
  }
  cert.verdict = Verdict::SPD;
  return cert;
}

Certificate sufficient_product(const SupportSet2D& support, int m, OuterAxis axis) {
  check_sphere_dimension(m);
  Certificate cert;
  cert.space = SpaceKind::CircleSphere;
  Certificate outer;
  if (axis == OuterAxis::Circle) {
    cert.method = "sufficient: {k : section is SPD on S^m} is SPD on S^1";
    const SupportSet1D ks = k_projection(support);
    const SupportSet1D good = promote_periodic(periodic_from(ks), progression_period(ks), [&](Index k) {
      return certify_sphere(section(support, k), m).verdict == Verdict::SPD;
    });
    outer = certify_circle(good);
    cert.trace.push_back({"K* = " + to_string(good) + " is SPD on S^1", outer.verdict == Verdict::SPD, std::nullopt});
  } else {
    cert.method = "sufficient: {l : column is SPD on S^1} is SPD on S^m";
    const SupportSet2D flipped = transpose(support);
    const SupportSet1D ls = k_projection(flipped);
    const SupportSet1D good = promote_periodic(periodic_from(ls), progression_period(ls), [&](Index l) {
      return certify_circle(section(flipped, l)).verdict == Verdict::SPD;
    });
    outer = certify_sphere(good, m);
    cert.trace.push_back({"L* = " + to_string(good) + " is SPD on S^m", outer.verdict == Verdict::SPD, std::nullopt});
  }
  cert.verdict = outer.verdict == Verdict::SPD ? Verdict::SufficientOnly : Verdict::Inconclusive;
  return cert;
}

Certificate certify_two_spheres(const SupportSet2D& support, int m, int big_m) {
  check_sphere_dimension(m);
  check_sphere_dimension(big_m);
  Certificate cert;
  cert.space = SpaceKind::CircleSphere;
  cert.method = "two-spheres: each parity quadrant has unbounded k- and l-projections";
  cert.trace.push_back({"reading: both coordinate projections of S2 ∩ Q unbounded", true, std::nullopt});
  const std::array<std::pair<Parity, Parity>, 4> quadrants{{{Parity::Even, Parity::Even},
                                                            {Parity::Even, Parity::Odd},
                                                            {Parity::Odd, Parity::Even},
                                                            {Parity::Odd, Parity::Odd}}};
  for (const auto& [pk, pl] : quadrants) {
    bool k_unbounded = false;
    bool l_unbounded = false;
    for (const auto& term : support.terms) {
      const bool k_nonempty = term.k.has_member_at_least(0, pk);
      const bool l_nonempty = term.l.has_member_at_least(0, pl);
      k_unbounded |= term.k.infinitely_many(pk) && l_nonempty;
      l_unbounded |= term.l.infinitely_many(pl) && k_nonempty;
    }
    const bool ok = k_unbounded && l_unbounded;
    const std::string name = std::string(to_string(pk)) + " x " + to_string(pl);
    cert.trace.push_back({"quadrant " + name + " has unbounded projections", ok, std::nullopt});
    if (!ok) {
      Counterexample cx;
      cx.kind = Counterexample::Kind::QuadrantDeficit;
      cx.quadrant = std::make_pair(pk, pl);
      cx.description = "quadrant " + name + (k_unbounded ? " has bounded l-projection" : " has bounded k-projection");
      return not_spd(std::move(cert), std::move(cx));
    }
  }
  cert.verdict = Verdict::SPD;
  return cert;
}

Certificate certify(const KernelSpec& spec, std::optional<Index> gamma_max) {
  const auto& space = spec.space();
  switch (space.kind()) {
    case SpaceKind::Circle: return certify_circle(std::get<SupportSet1D>(spec.support()));
    case SpaceKind::Sphere: return certify_sphere(std::get<SupportSet1D>(spec.support()), space.m());
    case SpaceKind::CircleSphere:
      return certify_circle_sphere(std::get<SupportSet2D>(spec.support()), space.m(), gamma_max);
    case SpaceKind::CircleTPH:
      return certify_circle_tph(std::get<SupportSet2D>(spec.support()), space, gamma_max);
  }
  throw Error(ErrorCode::Unsupported, "unknown space kind");
}

}  // namespace spdsphere
