#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "spdsphere/error.hpp"

namespace spdsphere::cli {

using nlohmann::json;

namespace {

[[noreturn]] void spec_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SpecError, where + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) spec_error(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) spec_error(where + "." + key, "missing field");
  return *it;
}

Index get_index(const json& obj, const std::string& key, const std::string& where, Index min) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) spec_error(where + "." + key, "expected an integer");
  const auto value = v.get<Index>();
  if (value < min) spec_error(where + "." + key, "must be >= " + std::to_string(min));
  return value;
}

double get_double(const json& obj, const std::string& key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number()) spec_error(where + "." + key, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) spec_error(where + "." + key, "expected a string");
  return v.get<std::string>();
}

Term1D parse_term(const json& j, const std::string& where) {
  const std::string type = get_string(j, "type", where);
  if (type == "prog") return Term1D::progression(get_index(j, "base", where, 0), get_index(j, "step", where, 1));
  if (type == "one") return Term1D::singleton(get_index(j, "value", where, 0));
  spec_error(where + ".type", "expected \"prog\" or \"one\", got \"" + type + "\"");
}

json term_json(const Term1D& term) {
  if (term.is_progression()) return {{"type", "prog"}, {"base", term.base()}, {"step", term.step()}};
  return {{"type", "one"}, {"value", term.base()}};
}

TphFamily parse_family(const std::string& name, const std::string& where) {
  if (name == "real_proj") return TphFamily::RealProj;
  if (name == "complex_proj") return TphFamily::ComplexProj;
  if (name == "quat_proj") return TphFamily::QuatProj;
  if (name == "cayley") return TphFamily::Cayley;
  spec_error(where, "unknown family \"" + name + "\"");
}

SpaceDescriptor parse_space_json(const json& j) {
  const std::string kind = get_string(j, "kind", "space");
  try {
    if (kind == "circle") return SpaceDescriptor::circle();
    if (kind == "sphere") return SpaceDescriptor::sphere(static_cast<int>(get_index(j, "m", "space", 2)));
    if (kind == "circle_sphere")
      return SpaceDescriptor::circle_sphere(static_cast<int>(get_index(j, "m", "space", 2)));
    if (kind == "circle_tph")
      return SpaceDescriptor::circle_tph(parse_family(get_string(j, "family", "space"), "space.family"),
                                         static_cast<int>(get_index(j, "d", "space", 2)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SpecError) throw;
    spec_error("space", e.what());
  }
  spec_error("space.kind", "unknown kind \"" + kind + "\"");
}

Support parse_support(const json& j, bool product) {
  if (!j.is_array()) spec_error("support", "expected an array of terms");
  SupportSet1D s1;
  SupportSet2D s2;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "support[" + std::to_string(i) + "]";
    const Term1D k = parse_term(field(j[i], "k", where), where + ".k");
    if (product) {
      s2.terms.push_back({k, parse_term(field(j[i], "l", where), where + ".l")});
    } else {
      if (j[i].contains("l")) spec_error(where + ".l", "single-space terms take a \"k\" part only");
      s1.terms.push_back(k);
    }
  }
  if (product) return s2;
  return s1;
}

CoefficientScheme parse_scheme(const json& j) {
  const std::string kind = get_string(j, "kind", "scheme");
  const json& params = field(j, "params", "scheme");
  try {
    if (kind == "constant") return CoefficientScheme::constant(get_double(params, "c", "scheme.params"));
    if (kind == "geometric")
      return CoefficientScheme::geometric(get_double(params, "r_k", "scheme.params"),
                                          get_double(params, "r_l", "scheme.params"),
                                          get_double(params, "c", "scheme.params"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SpecError) throw;
    spec_error("scheme.params", e.what());
  }
  spec_error("scheme.kind", "unknown kind \"" + kind + "\"");
}

std::string line_diagnostic(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
  return "line " + std::to_string(line);
}

std::string now_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json trace_json(const std::vector<TraceEntry>& trace) {
  json out = json::array();
  for (const auto& e : trace) {
    json entry = {{"condition", e.condition}, {"outcome", e.outcome}};
    entry["gamma"] = e.gamma ? json(*e.gamma) : json(nullptr);
    out.push_back(std::move(entry));
  }
  return out;
}

json points_json(const std::vector<ProductPoint>& points) {
  json out = json::array();
  for (const auto& p : points) {
    json z = json::array();
    for (Eigen::Index i = 0; i < p.z.size(); ++i) z.push_back(p.z(i));
    out.push_back({{"theta", p.theta}, {"z", z}});
  }
  return out;
}

// Options shared by every subcommand.
struct Options {
  std::string spec_path;
  std::string space;
  std::optional<Index> gamma_max;
  int points = 30;
  std::string trunc;
  double tol = 1e-10;
  std::optional<std::uint64_t> seed;
  std::string json_path;
  std::string csv_path;
  bool no_timestamp = false;
  double t = 1.0;
  double s = 1.0;
  int budget = 10000;
};

Truncation parse_trunc(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) spec_error("--trunc", "expected K,L");
  try {
    Truncation t{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    if (t.kmax < 0 || t.lmax < 0) spec_error("--trunc", "degrees must be >= 0");
    return t;
  } catch (const std::logic_error&) {
    spec_error("--trunc", "expected K,L integers");
  }
}

SpecFile resolve_spec(const Options& opt) {
  SpecFile spec = load_spec(opt.spec_path);
  if (!opt.space.empty()) {
    const SpaceDescriptor space = parse_space(opt.space);
    if (space.is_product() != spec.space.is_product())
      spec_error("--space", "support dimension does not match the overriding space");
    spec.space = space;
  }
  if (!opt.trunc.empty()) spec.truncation = parse_trunc(opt.trunc);
  if (opt.seed) spec.seed = *opt.seed;
  return spec;
}

void emit(const json& report, const Options& opt, std::ostream& out) {
  json copy = report;
  if (!opt.no_timestamp) copy["timestamp"] = now_utc();
  if (opt.json_path.empty()) {
    out << copy.dump(2) << "\n";
    return;
  }
  std::ofstream file(opt.json_path);
  if (!file) throw Error(ErrorCode::SpecError, "cannot write " + opt.json_path);
  file << copy.dump(2) << "\n";
}

json base_report(const std::string& command, const SpecFile& spec) {
  return {{"command", command}, {"space", to_json(spec.space)}, {"seed", spec.seed}};
}

void summarize(const Certificate& cert, const Options& opt, std::ostream& out) {
  if (opt.json_path.empty()) return;
  out << "verdict: " << to_string(cert.verdict) << " (" << cert.method << ")\n";
  if (cert.counterexample) out << "counterexample: " << cert.counterexample->description << "\n";
}

int cmd_certify(const Options& opt, std::ostream& out) {
  const SpecFile spec = resolve_spec(opt);
  const Certificate cert = certify(make_kernel(spec), opt.gamma_max);
  json report = base_report("certify", spec);
  report.update(to_json(cert));
  emit(report, opt, out);
  summarize(cert, opt, out);
  return exit_code(cert.verdict);
}

int cmd_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  const KernelSpec kernel = make_kernel(resolve_spec(opt));
  if (kernel.degenerate()) err << "warning: effective support is empty; kernel is identically 0\n";
  out << std::setprecision(17) << eval_kernel(kernel, opt.t, opt.s) << "\n";
  return 0;
}

int cmd_gram(const Options& opt, std::ostream& out) {
  const SpecFile spec = resolve_spec(opt);
  const KernelSpec kernel = make_kernel(spec);
  if (opt.points < 1) spec_error("--points", "must be >= 1");
  const int m = std::max(1, spec.space.m());
  const auto points = sample_product_points(m, opt.points, spec.seed);
  const SymMatrix a = gram_matrix(kernel, points);
  const PdCheck pd = check_pd(a, opt.tol);
  json report = base_report("gram", spec);
  report["points"] = opt.points;
  report["tol"] = opt.tol;
  report["lambda_min"] = pd.lambda_min;
  report["f11"] = kernel.value_at_identity();
  report["positive_definite"] = pd.positive_definite;
  if (!opt.csv_path.empty()) {
    std::ofstream csv(opt.csv_path);
    if (!csv) throw Error(ErrorCode::SpecError, "cannot write " + opt.csv_path);
    csv << "n,lambda_min\n" << std::setprecision(17);
    for (const auto& [n, lambda] : lambda_min_curve(a)) csv << n << "," << lambda << "\n";
  }
  emit(report, opt, out);
  if (!opt.json_path.empty())
    out << "lambda_min: " << pd.lambda_min << (pd.positive_definite ? " (positive definite)\n" : " (not PD)\n");
  return pd.positive_definite ? kExitSpd : kExitNotSpd;
}

int cmd_witness(const Options& opt, std::ostream& out) {
  const SpecFile spec = resolve_spec(opt);
  const KernelSpec kernel = make_kernel(spec);
  const Certificate cert = certify(kernel, opt.gamma_max);
  json report = base_report("witness", spec);
  report.update(to_json(cert));
  report["witness"] = nullptr;
  if (cert.verdict == Verdict::NotSPD) {
    const auto& cx = *cert.counterexample;
    std::optional<WitnessReport> witness;
    switch (spec.space.kind()) {
      case SpaceKind::Circle: witness = witness_progression_circle(kernel, *cx.witness); break;
      case SpaceKind::Sphere: witness = witness_parity_sphere(kernel); break;
      case SpaceKind::CircleSphere:
        witness = witness_product(kernel, cert, {opt.budget, spec.seed, 4});
        break;
      case SpaceKind::CircleTPH:
        if (cx.gamma && *cx.gamma == 0) witness = witness_progression_circle(kernel, *cx.witness);
        break;
    }
    if (witness) report["witness"] = to_json(*witness);
  }
  emit(report, opt, out);
  summarize(cert, opt, out);
  return exit_code(cert.verdict);
}

int cmd_crosscheck(const Options& opt, std::ostream& out, std::ostream& err) {
  const SpecFile spec = resolve_spec(opt);
  if (spec.space.kind() != SpaceKind::CircleSphere) spec_error("space", "crosscheck needs a circle_sphere spec");
  const auto& support = std::get<SupportSet2D>(spec.support);
  const int m = spec.space.m();
  const Certificate direct = certify_circle_sphere(support, m, opt.gamma_max);
  const Certificate loop = certify_circle_sphere_gamma_loop(support, m, opt.gamma_max);
  const Certificate circle_outer = sufficient_product(support, m, OuterAxis::Circle);
  const Certificate sphere_outer = sufficient_product(support, m, OuterAxis::Sphere);
  const bool agree = direct.verdict == loop.verdict;
  const bool sufficient = circle_outer.verdict == Verdict::SufficientOnly ||
                          sphere_outer.verdict == Verdict::SufficientOnly;
  const bool coherent = agree && (!sufficient || direct.verdict == Verdict::SPD);

  json report = base_report("crosscheck", spec);
  report.update(to_json(direct));
  report["crosscheck"] = {{"gamma_loop", to_json(loop)},
                          {"sufficient_circle_outer", to_json(circle_outer)},
                          {"sufficient_sphere_outer", to_json(sphere_outer)},
                          {"coherent", coherent}};
  emit(report, opt, out);
  summarize(direct, opt, out);
  if (!coherent) {
    err << "crosscheck failed: certifiers disagree or a sufficient test contradicts the characterization\n";
    return kExitInternal;
  }
  return exit_code(direct.verdict);
}

}  // namespace

int exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::SPD: return kExitSpd;
    case Verdict::NotSPD: return kExitNotSpd;
    default: return kExitOther;
  }
}

SpaceDescriptor parse_space(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto as_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      spec_error("--space", "expected an integer, got \"" + s + "\"");
    }
  };
  try {
    if (parts.size() == 1 && parts[0] == "circle") return SpaceDescriptor::circle();
    if (parts.size() == 2 && parts[0] == "sphere") return SpaceDescriptor::sphere(as_int(parts[1]));
    if (parts.size() == 2 && parts[0] == "circle_sphere") return SpaceDescriptor::circle_sphere(as_int(parts[1]));
    if (parts.size() == 3 && parts[0] == "circle_tph")
      return SpaceDescriptor::circle_tph(parse_family(parts[1], "--space"), as_int(parts[2]));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SpecError) throw;
    spec_error("--space", e.what());
  }
  spec_error("--space", "expected circle, sphere:M, circle_sphere:M or circle_tph:FAMILY:D");
}

SpecFile parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SpecError, line_diagnostic(text, e.byte) + ": " + e.what());
  }
  if (!j.is_object()) spec_error("spec", "expected a JSON object");

  SpecFile spec;
  spec.space = parse_space_json(field(j, "space", "spec"));
  spec.support = parse_support(field(j, "support", "spec"), spec.space.is_product());
  if (j.contains("scheme")) spec.scheme = parse_scheme(j["scheme"]);
  if (j.contains("truncation")) {
    const json& t = j["truncation"];
    spec.truncation.kmax = static_cast<int>(get_index(t, "kmax", "truncation", 0));
    spec.truncation.lmax = static_cast<int>(get_index(t, "lmax", "truncation", 0));
  }
  if (j.contains("seed")) spec.seed = static_cast<std::uint64_t>(get_index(j, "seed", "spec", 0));
  return spec;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SpecError, "cannot read spec file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

json to_json(const SpaceDescriptor& space) {
  json j = {{"kind", to_string(space.kind())}};
  switch (space.kind()) {
    case SpaceKind::Circle: break;
    case SpaceKind::Sphere:
    case SpaceKind::CircleSphere: j["m"] = space.m(); break;
    case SpaceKind::CircleTPH:
      j["family"] = to_string(space.family());
      j["d"] = space.d();
      break;
  }
  return j;
}

json to_json(const SpecFile& spec) {
  json support = json::array();
  if (const auto* s2 = std::get_if<SupportSet2D>(&spec.support)) {
    for (const auto& term : s2->terms) support.push_back({{"k", term_json(term.k)}, {"l", term_json(term.l)}});
  } else {
    for (const auto& term : std::get<SupportSet1D>(spec.support).terms) support.push_back({{"k", term_json(term)}});
  }
  json scheme;
  if (spec.scheme.kind == CoefficientScheme::Kind::Constant) {
    scheme = {{"kind", "constant"}, {"params", {{"c", spec.scheme.scale}}}};
  } else {
    scheme = {{"kind", "geometric"},
              {"params", {{"r_k", spec.scheme.ratio_k}, {"r_l", spec.scheme.ratio_l}, {"c", spec.scheme.scale}}}};
  }
  return {{"space", to_json(spec.space)},
          {"support", support},
          {"scheme", scheme},
          {"truncation", {{"kmax", spec.truncation.kmax}, {"lmax", spec.truncation.lmax}}},
          {"seed", spec.seed}};
}

json to_json(const Certificate& cert) {
  json j = {{"verdict", to_string(cert.verdict)}, {"method", cert.method}, {"trace", trace_json(cert.trace)}};
  if (!cert.counterexample) {
    j["counterexample"] = nullptr;
    return j;
  }
  const auto& cx = *cert.counterexample;
  json c = {{"description", cx.description}};
  switch (cx.kind) {
    case Counterexample::Kind::Progression: c["kind"] = "progression"; break;
    case Counterexample::Kind::ParityDeficit: c["kind"] = "parity_deficit"; break;
    case Counterexample::Kind::QuadrantDeficit: c["kind"] = "quadrant_deficit"; break;
  }
  if (cx.witness) {
    c["modulus"] = cx.witness->modulus;
    c["residue"] = cx.witness->residue;
  }
  if (cx.gamma) c["gamma"] = *cx.gamma;
  if (cx.parity) c["parity"] = to_string(*cx.parity);
  if (cx.quadrant) c["quadrant"] = {to_string(cx.quadrant->first), to_string(cx.quadrant->second)};
  j["counterexample"] = c;
  return j;
}

json to_json(const WitnessReport& report) {
  json c = json::array();
  for (Eigen::Index i = 0; i < report.c.size(); ++i) c.push_back(report.c(i));
  json j = {{"kind", to_string(report.kind)},
            {"points", points_json(report.points)},
            {"c", c},
            {"residual", report.residual},
            {"scale", report.scale},
            {"note", report.note}};
  if (report.lambda_min) {
    j["lambda_min"] = *report.lambda_min;
    j["evaluations"] = report.evaluations;
  }
  return j;
}

KernelSpec make_kernel(const SpecFile& spec) {
  try {
    return KernelSpec(spec.space, spec.support, spec.scheme, spec.truncation);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NumericalError) throw;
    throw Error(ErrorCode::SpecError, e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strict positive definiteness of isotropic kernels on S^1, S^m and products", "spdsphere"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("spec", opt.spec_path, "kernel-spec JSON file")->required();
    sub->add_option("--space", opt.space, "override space: circle | sphere:M | circle_sphere:M | circle_tph:FAMILY:D");
    sub->add_option("--trunc", opt.trunc, "override truncation K,L");
    sub->add_option("--seed", opt.seed, "override seed");
    sub->add_option("--json", opt.json_path, "write the JSON report here instead of stdout");
    sub->add_flag("--no-timestamp", opt.no_timestamp, "omit the report timestamp");
  };
  auto* certify_cmd = app.add_subcommand("certify", "decide strict positive definiteness from the support");
  auto* eval_cmd = app.add_subcommand("eval", "evaluate f(t, s)");
  auto* gram_cmd = app.add_subcommand("gram", "smallest eigenvalue of the Gram matrix at seeded points");
  auto* witness_cmd = app.add_subcommand("witness", "degenerate configuration for a NotSPD kernel");
  auto* cross_cmd = app.add_subcommand("crosscheck", "compare both circle-sphere certifiers and sufficient tests");
  for (auto* sub : {certify_cmd, eval_cmd, gram_cmd, witness_cmd, cross_cmd}) add_common(sub);
  for (auto* sub : {certify_cmd, witness_cmd, cross_cmd})
    sub->add_option("--gamma-max", opt.gamma_max, "override the gamma stabilization bound");
  eval_cmd->add_option("--t", opt.t, "circle argument in [-1,1]");
  eval_cmd->add_option("--s", opt.s, "second-factor argument in [-1,1]");
  gram_cmd->add_option("--points", opt.points, "number of seeded points");
  gram_cmd->add_option("--tol", opt.tol, "relative PD tolerance");
  gram_cmd->add_option("--csv", opt.csv_path, "write the (n, lambda_min) curve here");
  witness_cmd->add_option("--budget", opt.budget, "search evaluations for gamma > 0 failures");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitSpecError;
  }

  try {
    if (certify_cmd->parsed()) return cmd_certify(opt, out);
    if (eval_cmd->parsed()) return cmd_eval(opt, out, err);
    if (gram_cmd->parsed()) return cmd_gram(opt, out);
    if (witness_cmd->parsed()) return cmd_witness(opt, out);
    if (cross_cmd->parsed()) return cmd_crosscheck(opt, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NumericalError ? kExitInternal : kExitSpecError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitSpecError;
}

}  // namespace spdsphere::cli
