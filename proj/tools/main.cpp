#include "cli.hpp"

#include "tatekit/error.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using tatekit::Json;
using namespace tatekit::cli;

struct Options {
  std::string config_path;
  std::string check_path;
  std::string out;
  std::string field;
  std::string radius = "r1";
  std::optional<std::int64_t> precision;
  std::string series_text;
  std::string input_path;
  std::string kind;
  std::uint32_t prime = 2;
  std::string target;
  std::string center;
  std::string center_root;
  std::size_t depth = 3;
  std::optional<std::size_t> terms;
  std::int64_t n_max = 2;
  std::int64_t d_max = 3;
  double bound = 1e6;
  std::uint32_t tu_degree = 2;
  std::uint32_t t_degree = 4;
  std::optional<std::size_t> max_unknowns;
  std::uint64_t max_power = 6;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::string x_text;
  std::string y_text;
};

Json parse_text(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw tatekit::ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tatekit::ParseError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_text(s.str(), path.c_str());
}

std::optional<Json> series_input(const Options& o, const SessionConfig& config, const std::string& default_kind,
                                 Json& params) {
  Json series;
  if (!o.input_path.empty()) series = read_file(o.input_path);
  else if (!o.series_text.empty()) series = parse_text(o.series_text, "series");
  else return std::nullopt;
  if (!series.is_object()) throw tatekit::ParseError("malformed series: expected an object");
  if (!series.contains("radius")) series["radius"] = Json::array({o.radius});
  if (!series.contains("kind")) series["kind"] = o.kind.empty() ? default_kind : o.kind;
  Json radii = Json::array();
  for (const auto& id : series.at("radius")) {
    if (!id.is_string()) throw tatekit::ParseError("malformed series: radius ids must be strings");
    radii.push_back(tatekit::radius_to_json(config.radius(id.get<std::string>())));
  }
  params["radii"] = radii;
  return series;
}

Json require_series(const Options& o, const SessionConfig& config, const std::string& default_kind, Json& params) {
  auto s = series_input(o, config, default_kind, params);
  if (!s) throw tatekit::PreconditionFailed("no input series (use --series or --input)");
  return *s;
}

const std::map<std::string, std::string> kDescriptions{
    {"gauss-norm", "Gauss norm of a series"},
    {"spectral-radius", "Spectral radius of a Laurent series, checked against powers"},
    {"pth-root", "Certified p-th root of a scalar near 1 (or near a known root)"},
    {"tower", "Compatible system of iterated p-th roots"},
    {"sparse-series", "The sparse series sum T^{i_j} and its tail bound"},
    {"nonintegral-cert", "Certify that no low-degree polynomial relation kills f"},
    {"unbounded-demo", "Norm-ratio table of an unbounded homomorphism"},
    {"pbasis-cert", "p-independence of a series over F_p(u_1..u_N)((t))"},
    {"ffinite-decompose", "Decomposition f = sum f_{e,i}^p x_i T^e over F_q((t))"},
    {"sz-check", "Square-zero extension ring axioms and products"},
};

const char* default_field(const std::string& command) {
  if (command == "pbasis-cert") return "ratfun";
  if (command == "ffinite-decompose") return "f2";
  return "q3";
}

Json build_params(const std::string& command, const Options& o, const SessionConfig& config) {
  Json params;
  params["field"] = config.field(o.field.empty() ? default_field(command) : o.field, o.precision);
  params["support_cap"] = config.caps.support;
  params["refinement_depth"] = config.caps.refinement_depth;
  auto single_radius = [&] { params["radius"] = tatekit::radius_to_json(config.radius(o.radius)); };
  auto require = [](bool ok, const char* flag) {
    if (!ok) throw tatekit::PreconditionFailed(std::string("missing ") + flag);
  };

  if (command == "gauss-norm" || command == "ffinite-decompose") {
    params["series"] = require_series(o, config, "power", params);
  } else if (command == "spectral-radius") {
    params["series"] = require_series(o, config, "laurent", params);
    params["max_power"] = o.max_power;
  } else if (command == "pth-root" || command == "tower") {
    require(!o.target.empty(), "--target");
    params["prime"] = o.prime;
    params["target"] = o.target;
    params["max_steps"] = config.caps.max_steps;
    if (command == "tower") params["depth"] = o.depth;
    if (command == "pth-root" && !o.center.empty()) {
      require(!o.center_root.empty(), "--center-root");
      params["center"] = o.center;
      params["center_root"] = o.center_root;
    }
  } else if (command == "sparse-series") {
    single_radius();
    params["terms"] = o.terms.value_or(4);
  } else if (command == "nonintegral-cert") {
    single_radius();
    params["n_max"] = o.n_max;
    params["d_max"] = o.d_max;
    Json ignored;
    if (auto s = series_input(o, config, "power", ignored)) params["series"] = *s;
    else params["sparse_terms"] = o.terms.value_or(3);
  } else if (command == "unbounded-demo") {
    single_radius();
    params["terms"] = o.terms.value_or(4);
    params["bound"] = o.bound;
  } else if (command == "pbasis-cert") {
    single_radius();
    params["tu_degree"] = o.tu_degree;
    params["t_degree"] = o.t_degree;
    params["max_unknowns"] = o.max_unknowns.value_or(config.caps.certificate_unknowns);
    Json ignored;
    if (auto s = series_input(o, config, "power", ignored)) params["series"] = *s;
    else params["pbasis_terms"] = o.terms.value_or(4);
  } else if (command == "sz-check") {
    single_radius();
    params["kind"] = o.kind.empty() ? "power" : o.kind;
    params["samples"] = o.samples;
    params["seed"] = o.seed;
    if (!o.x_text.empty() || !o.y_text.empty()) {
      require(!o.x_text.empty() && !o.y_text.empty(), "--x and --y together");
      params["x"] = parse_text(o.x_text, "--x");
      params["y"] = parse_text(o.y_text, "--y");
    }
  }
  return params;
}

void emit(const Outcome& outcome, const std::string& name, const std::string& out) {
  std::cerr << outcome.summary << "\n";
  const auto text = dump(outcome.artifact);
  if (out == "-") {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(out);
  const auto path = std::filesystem::path(out) / (name + ".json");
  std::ofstream file(path);
  if (!file) throw tatekit::Error("cannot write '" + path.string() + "'");
  file << text;
  std::cerr << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-archimedean Tate algebra computations with checkable JSON artifacts"};
  Options o;
  app.add_option("--config", o.config_path, "Session config (JSON)");
  app.add_option("--check", o.check_path, "Replay a stored artifact or certificate and compare");
  app.add_option("--out", o.out, "Artifact directory, or - for stdout");
  app.require_subcommand(0, 1);

  std::vector<CLI::App*> subs;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--field", o.field, "Field id from the config");
    sub->add_option("--precision", o.precision, "Override the field's precision cap");
    sub->add_option("--out", o.out, "Artifact directory, or - for stdout");
    subs.push_back(sub);
    if (name == "gauss-norm" || name == "spectral-radius" || name == "ffinite-decompose" ||
        name == "nonintegral-cert" || name == "pbasis-cert") {
      sub->add_option("--series", o.series_text, "Series as JSON");
      sub->add_option("--input", o.input_path, "File holding the series JSON");
    }
    if (name != "pth-root" && name != "tower") sub->add_option("--radius", o.radius, "Radius id from the config");
    if (name == "gauss-norm" || name == "spectral-radius" || name == "ffinite-decompose" || name == "sz-check")
      sub->add_option("--kind", o.kind, "power or laurent")->check(CLI::IsMember({"power", "laurent"}));
    if (name == "pth-root" || name == "tower") {
      sub->add_option("--prime", o.prime, "Root degree p");
      sub->add_option("--target", o.target, "Scalar f, e.g. 4 or 13/4")->required();
    }
    if (name == "pth-root") {
      sub->add_option("--center", o.center, "Known g with |f - g| < |f|");
      sub->add_option("--center-root", o.center_root, "A p-th root of g");
    }
    if (name == "tower") sub->add_option("--depth", o.depth, "Number of successive roots");
    if (name == "sparse-series" || name == "nonintegral-cert" || name == "unbounded-demo" || name == "pbasis-cert")
      sub->add_option("--terms", o.terms, "Number of terms of the constructed series");
    if (name == "nonintegral-cert") {
      sub->add_option("--n-max", o.n_max, "Relation degree in X");
      sub->add_option("--d-max", o.d_max, "Coefficient degree in T");
    }
    if (name == "unbounded-demo") sub->add_option("--bound", o.bound, "Ratio the table must exceed");
    if (name == "pbasis-cert") {
      sub->add_option("--tu-degree", o.tu_degree, "Degree bound in t, u");
      sub->add_option("--t-degree", o.t_degree, "Degree bound in T");
      sub->add_option("--max-unknowns", o.max_unknowns, "Cap on the linear system size");
    }
    if (name == "spectral-radius") sub->add_option("--max-power", o.max_power, "Compare powers l = 1..N");
    if (name == "sz-check") {
      sub->add_option("--samples", o.samples, "Random triples");
      sub->add_option("--seed", o.seed, "Random seed");
      sub->add_option("--x", o.x_text, "Pair {\"a\": series, \"b\": series}");
      sub->add_option("--y", o.y_text, "Pair {\"a\": series, \"b\": series}");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    const auto config = o.config_path.empty() ? SessionConfig::defaults() : SessionConfig::load(o.config_path);
    const auto out = o.out.empty() ? config.out_dir : o.out;
    if (!o.check_path.empty()) {
      if (!app.get_subcommands().empty()) throw tatekit::PreconditionFailed("--check takes no subcommand");
      const auto outcome = check(read_file(o.check_path));
      emit(outcome, "check", out);
      return outcome.exit_code;
    }
    if (app.get_subcommands().empty()) throw tatekit::PreconditionFailed("no subcommand (see --help)");
    const auto name = app.get_subcommands().front()->get_name();
    const auto outcome = run(name, build_params(name, o, config));
    emit(outcome, name, out);
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
