#ifndef SPDSPHERE_TOOLS_CLI_HPP
#define SPDSPHERE_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "spdsphere/certify.hpp"
#include "spdsphere/gram.hpp"
#include "spdsphere/kernels.hpp"

namespace spdsphere::cli {

// Process exit codes; the first three mirror certificate verdicts.
inline constexpr int kExitSpd = 0;
inline constexpr int kExitNotSpd = 1;
inline constexpr int kExitOther = 2;
inline constexpr int kExitSpecError = 64;
inline constexpr int kExitInternal = 70;

int exit_code(Verdict verdict);

/// Parsed kernel-spec file.
///
///   {
///     "space":      {"kind": "circle_sphere", "m": 2},
///     "support":    [{"k": {"type": "prog", "base": 0, "step": 1},
///                     "l": {"type": "one", "value": 3}}],
///     "scheme":     {"kind": "geometric", "params": {"r_k": 0.9, "r_l": 0.9, "c": 1}},
///     "truncation": {"kmax": 60, "lmax": 60},
///     "seed":       0
///   }
///
/// Space kinds: circle, sphere (m), circle_sphere (m), circle_tph (family, d)
/// with family one of real_proj, complex_proj, quat_proj, cayley. Single
/// spaces list terms with a "k" part only. scheme, truncation and seed are
/// optional.
struct SpecFile {
  SpaceDescriptor space;
  Support support;
  CoefficientScheme scheme;
  Truncation truncation;
  std::uint64_t seed = 0;

  friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

/// Throws Error(SpecError) with a line or field diagnostic.
SpecFile parse_spec(const std::string& text);
SpecFile load_spec(const std::string& path);

/// "circle", "sphere:M", "circle_sphere:M" or "circle_tph:FAMILY:D".
SpaceDescriptor parse_space(const std::string& text);

nlohmann::json to_json(const SpecFile& spec);
nlohmann::json to_json(const SpaceDescriptor& space);
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const WitnessReport& report);

KernelSpec make_kernel(const SpecFile& spec);

/// Entry point behind the executable; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spdsphere::cli

#endif  // SPDSPHERE_TOOLS_CLI_HPP
