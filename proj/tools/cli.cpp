#include "cli.hpp"

#include "tatekit/certificate.hpp"
#include "tatekit/error.hpp"
#include "tatekit/frobenius.hpp"
#include "tatekit/padic_value.hpp"
#include "tatekit/parse.hpp"
#include "tatekit/root_lift.hpp"
#include "tatekit/square_zero.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace tatekit::cli {

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

template <class F>
auto json_guard(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

// The field, radius context and limits shared by every command.
struct Setting {
  FieldSpec spec;
  std::shared_ptr<RadiusContext> radii;
  std::size_t support = 4096;
};

Setting setting_from(const Json& params) {
  return json_guard("params", [&] {
    const auto spec = field_from_json(params.at("field"));
    auto radii = std::make_shared<RadiusContext>(spec.residue_prime(), params.value("refinement_depth", 256));
    if (params.contains("radius")) radii->declare(radius_from_json(params.at("radius")));
    if (params.contains("radii"))
      for (const auto& r : params.at("radii")) radii->declare(radius_from_json(r));
    return Setting{spec, radii, params.value("support_cap", std::size_t{4096})};
  });
}

TateSeries series_param(const Json& params, const Setting& s, const char* key = "series") {
  if (!params.contains(key)) throw PreconditionFailed(std::string("missing input '") + key + "'");
  return series_from_json(params.at(key), s.spec, s.radii, s.support);
}

SeriesRingPtr single_ring(const Setting& s, const std::string& id, SeriesKind kind) {
  if (!s.radii->find(id)) throw PreconditionFailed("undeclared radius '" + id + "'");
  return std::make_shared<SeriesRing>(s.spec, s.radii, std::vector<std::string>{id}, kind, s.support);
}

Json norm_json(const NormEstimate& n, const RadiusContext& radii) {
  return Json{{"norm", lognorm_to_json(n.value)},
              {"exact", n.exact},
              {"bound", lognorm_to_json(n.bound)},
              {"approx_log10", n.value.is_zero() ? Json(nullptr) : Json(radii.approx_log10(n.value))}};
}

struct Computed {
  Json result;
  std::string verdict;
  int exit_code = kExitPass;
  std::string summary;
};

Computed gauss_norm_cmd(const Json& params) {
  const auto s = setting_from(params);
  const auto f = series_param(params, s);
  const auto n = gauss_norm(f);
  Computed out{norm_json(n, *s.radii), n.exact ? "EXACT" : "UPPER_BOUND", kExitPass, ""};
  out.summary = "gauss norm " + n.value.to_string() + (n.exact ? " (exact)" : " (bound " + n.bound.to_string() + ")");
  return out;
}

Computed spectral_radius_cmd(const Json& params) {
  const auto s = setting_from(params);
  const auto f = series_param(params, s);
  const auto rho = spectral_radius_laurent(f);
  Json result = norm_json(rho, *s.radii);
  Json powers = Json::array();
  bool holds = true;
  if (f.is_exact()) {
    const auto max_power = params.value("max_power", std::uint64_t{6});
    for (std::uint64_t l = 1; l <= max_power; ++l) {
      const auto est = spectral_power_estimate(f, l);
      const bool equal = est == rho.value;
      holds = holds && equal;
      powers.push_back(Json{{"l", l}, {"estimate", lognorm_to_json(est)}, {"equal", equal}});
    }
  }
  result["power_estimates"] = powers;
  result["formula_holds"] = f.is_exact() ? Json(holds) : Json(nullptr);
  Computed out{result, !f.is_exact() ? "ESTIMATE" : holds ? "FORMULA_HOLDS" : "FORMULA_FAILS",
               holds ? kExitPass : kExitNegative, ""};
  out.summary = "spectral radius " + rho.value.to_string() + ", " + std::to_string(powers.size()) +
                " power estimates, verdict " + out.verdict;
  return out;
}

// A small rational matching a p-adic value to its known precision, for display.
Json rational_form(const Scalar& x) {
  if (x.spec().kind() != FieldKind::Padic) return nullptr;
  const auto r = padic_rational_reconstruction(x.spec().padic_context(), x.padic());
  return r ? Json(to_string(*r)) : Json(nullptr);
}

Json trace_json(const RootTrace& t) {
  Json steps = Json::array();
  for (const auto& st : t.steps)
    steps.push_back(Json{{"m", st.m},
                         {"g", series_to_json(st.g)},
                         {"h", series_to_json(st.h)},
                         {"norm_g", lognorm_to_json(st.norm_g)},
                         {"norm_h", lognorm_to_json(st.norm_h)},
                         {"identity_holds", st.identity_holds},
                         {"g_contracts", st.g_contracts},
                         {"h_contracts", st.h_contracts}});
  return Json{{"p", t.p},
              {"norm_g1", lognorm_to_json(t.norm_g1)},
              {"g1_matches", t.g1_matches},
              {"tolerance", lognorm_to_json(t.tolerance)},
              {"steps", steps},
              {"root_near_one", t.root_near_one},
              {"certified", t.certified}};
}

Computed pth_root_cmd(const Json& params) {
  const auto s = setting_from(params);
  const auto p = json_guard("params", [&] { return params.at("prime").get<std::uint32_t>(); });
  const auto f = scalar_from_json(s.spec, params.at("target"));
  RootOptions options;
  options.max_steps = params.value("max_steps", options.max_steps);
  try {
    Json result;
    bool certified = false;
    std::string root;
    if (params.contains("center")) {
      const auto g = scalar_from_json(s.spec, params.at("center"));
      const auto g_root = scalar_from_json(s.spec, params.at("center_root"));
      const auto r = pth_root_near(f, g, g_root, p, options);
      root = r.root.to_string();
      certified = r.trace.certified && r.close_to_center;
      result = Json{{"root", root},
                    {"root_rational", rational_form(r.root)},
                    {"close_to_center", r.close_to_center},
                    {"trace", trace_json(r.trace)}};
      if (!result["root_rational"].is_null()) root = result["root_rational"].get<std::string>();
    } else {
      const auto r = pth_root_near_one(f, p, options);
      root = r.root.to_string();
      certified = r.trace.certified;
      result = Json{{"root", root}, {"root_rational", rational_form(r.root)}, {"trace", trace_json(r.trace)}};
      if (!result["root_rational"].is_null()) root = result["root_rational"].get<std::string>();
    }
    Computed out{result, certified ? "CERTIFIED" : "NOT_CERTIFIED", certified ? kExitPass : kExitNegative, ""};
    out.summary = "root " + root + " after " + std::to_string(result["trace"]["steps"].size()) + " steps, " +
                  out.verdict;
    return out;
  } catch (const MaxStepsExceeded& e) {
    Computed out{Json{{"root", nullptr}, {"trace", trace_json(e.trace())}}, "MAX_STEPS", kExitNegative, ""};
    out.summary = e.what();
    return out;
  }
}

Computed tower_cmd(const Json& params) {
  const auto s = setting_from(params);
  const auto p = json_guard("params", [&] { return params.at("prime").get<std::uint32_t>(); });
  const auto depth = json_guard("params", [&] { return params.at("depth").get<std::size_t>(); });
  const auto f = scalar_from_json(s.spec, params.at("target"));
  RootOptions options;
  options.max_steps = params.value("max_steps", options.max_steps);
  try {
    const auto tower = build_tower(f, p, depth, options);
    Json elements = Json::array(), rational = Json::array();
    for (const auto& x : tower.elements) {
      elements.push_back(x.to_string());
      rational.push_back(rational_form(x));
    }
    const bool ok = verify_tower(tower);
    Computed out{Json{{"elements", elements}, {"elements_rational", rational}, {"verified", ok}, {"obstruction", nullptr}},
                 ok ? "VERIFIED" : "FAILED", ok ? kExitPass : kExitNegative, ""};
    out.summary = "tower of depth " + std::to_string(tower.depth()) + ", " + out.verdict;
    return out;
  } catch (const TowerObstruction& e) {
    Computed out{Json{{"elements", nullptr}, {"verified", false}, {"obstruction", e.what()}}, "OBSTRUCTED",
                 kExitNegative, e.what()};
    return out;
  }
}

Computed sparse_series_cmd(const Json& params) {
  const auto s = setting_from(params);
  const auto id = json_guard("params", [&] { return params.at("radius").at("id").get<std::string>(); });
  const auto m = json_guard("params", [&] { return params.at("terms").get<std::size_t>(); });
  const auto f = sparse_series(m, single_ring(s, id, SeriesKind::Power));
  const auto n = gauss_norm(f.ideal());
  Computed out{Json{{"indices", f.spec.indices},
                    {"next_index", f.next_index},
                    {"series", series_to_json(f.ideal())},
                    {"ideal_tail", lognorm_to_json(f.ideal_tail)},
                    {"gauss_norm", norm_json(n, *s.radii)}},
               "OK", kExitPass, ""};
  out.summary = f.poly.to_string() + " + O(r^" + std::to_string(f.next_index) + ")";
  return out;
}

Computed certificate_cmd(CertificateKind kind, const Json& params) {
  const auto c = issue_certificate(kind, params);
  Computed out{certificate_to_json(c), c.verdict, c.positive ? kExitPass : kExitNegative, ""};
  std::ostringstream sum;
  sum << c.verdict;
  if (c.positive) sum << ": " << c.statement;
  else if (c.witness.contains("relation") && c.witness.at("relation").is_string())
    sum << ": " << c.witness.at("relation").get<std::string>();
  if (kind == CertificateKind::Unbounded) {
    for (const auto& row : c.witness.at("rows"))
      sum << "\n  n=" << row.at("n").get<std::size_t>() << "  ratio ~ 10^" << row.at("log10_ratio").get<double>()
          << "  exceeds bound: " << (row.at("exceeds_bound").get<bool>() ? "yes" : "no");
  }
  out.summary = sum.str();
  return out;
}

Computed ffinite_decompose_cmd(const Json& params) {
  const auto s = setting_from(params);
  const auto f = series_param(params, s);
  const PBasis basis(s.spec);
  const auto parts = series_decompose(f, basis);
  Json parts_json = Json::object();
  for (const auto& [key, part] : parts) parts_json[key.to_string()] = series_to_json(part);
  const bool round_trip = series_reconstruct(parts, basis, f.ring_ptr()) == f;
  bool coefficient_bounds = true;
  for (const auto& [nu, c] : f.terms()) coefficient_bounds = coefficient_bounds && verify_norm_bound(c, basis).pass;
  const bool termwise = termwise_bound_holds(f, basis);
  Json span = nullptr;
  bool span_ok = true;
  if (f.is_exact()) {
    span_ok = true;
    for (std::size_t v = 0; v < f.ring().nvars(); ++v) span_ok = span_ok && derivative_span_witness(f, basis, v);
    span = span_ok;
  }
  const bool pass = round_trip && coefficient_bounds && termwise && span_ok;
  Json basis_names = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) basis_names.push_back(basis.name(i));
  Computed out{Json{{"basis", basis_names},
                    {"parts", parts_json},
                    {"round_trip", round_trip},
                    {"coefficient_norm_bounds", coefficient_bounds},
                    {"termwise_bound", termwise},
                    {"derivative_span", span}},
               pass ? "PASS" : "FAIL", pass ? kExitPass : kExitNegative, ""};
  out.summary = std::to_string(parts.size()) + " parts, round trip " + (round_trip ? "exact" : "FAILED") +
                ", verdict " + out.verdict;
  return out;
}

TateSeries random_series(const SeriesRingPtr& ring, std::mt19937_64& rng) {
  const auto& spec = ring->spec();
  const int lo = ring->kind() == SeriesKind::Power ? 0 : -3;
  std::uniform_int_distribution<int> deg(lo, 6), small(-4, 4), coeff_deg(-2, 2);
  TateSeries out = TateSeries::zero(ring);
  const int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    Scalar c = spec.kind() == FieldKind::FqLaurent
                   ? Scalar::gf_monomial(spec, 1 + static_cast<std::uint32_t>(rng() % (spec.field_size() - 1)),
                                         coeff_deg(rng))
                   : Scalar::from_int(spec, small(rng)) * Scalar::uniformizer(spec).pow(coeff_deg(rng));
    out += TateSeries::monomial(ring, c, Exponent{deg(rng)});
  }
  return out;
}

Computed sz_check_cmd(const Json& params) {
  const auto s = setting_from(params);
  const auto id = json_guard("params", [&] { return params.at("radius").at("id").get<std::string>(); });
  const auto kind = params.value("kind", std::string("power")) == "laurent" ? SeriesKind::Laurent : SeriesKind::Power;
  const auto ring = single_ring(s, id, kind);
  const SquareZeroRing<TateSeries> sz(s.radii);
  const auto& radii = *s.radii;
  const auto zero = TateSeries::zero(ring);

  std::map<std::string, std::size_t> failures{
      {"associativity", 0}, {"distributivity", 0}, {"submultiplicativity", 0}, {"square_zero", 0}, {"isometry", 0}};
  auto check_triple = [&](const SquareZeroElem<TateSeries>& x, const SquareZeroElem<TateSeries>& y,
                          const SquareZeroElem<TateSeries>& z) {
    if (!sz.equal(sz.mul(sz.mul(x, y), z), sz.mul(x, sz.mul(y, z)))) ++failures["associativity"];
    if (!sz.equal(sz.mul(x, sz.add(y, z)), sz.add(sz.mul(x, y), sz.mul(x, z)))) ++failures["distributivity"];
    if (!ln_less_equal(sz.norm(sz.mul(x, y)), sz.norm(x) * sz.norm(y), radii)) ++failures["submultiplicativity"];
    const auto e = sz.make(zero, x.b);
    if (!sz.equal(sz.mul(e, e), sz.make(zero, zero))) ++failures["square_zero"];
    if (sz.norm(sz.section(x.a)) != gauss_norm(x.a).bound) ++failures["isometry"];
  };

  Json result = Json::object();
  if (params.contains("x") && params.contains("y")) {
    const auto x = sz_from_json(params.at("x"), ring);
    const auto y = sz_from_json(params.at("y"), ring);
    const auto xy = sz.mul(x, y);
    check_triple(x, y, sz.make(TateSeries::one(ring), zero));
    result["product"] = sz_to_json(xy);
    result["norms"] = Json{{"x", lognorm_to_json(sz.norm(x))},
                           {"y", lognorm_to_json(sz.norm(y))},
                           {"xy", lognorm_to_json(sz.norm(xy))}};
  }
  const auto samples = params.value("samples", std::size_t{100});
  std::mt19937_64 rng(params.value("seed", std::uint64_t{1}));
  for (std::size_t i = 0; i < samples; ++i) {
    auto draw = [&] { return sz.make(random_series(ring, rng), random_series(ring, rng)); };
    const auto x = draw(), y = draw(), z = draw();
    check_triple(x, y, z);
  }
  std::size_t total = 0;
  for (const auto& [name, n] : failures) total += n;
  result["samples"] = samples;
  result["failures"] = failures;
  Computed out{result, total == 0 ? "PASS" : "FAIL", total == 0 ? kExitPass : kExitNegative, ""};
  out.summary = std::to_string(samples) + " random triples, " + std::to_string(total) + " failures";
  return out;
}

using Handler = std::function<Computed(const Json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"gauss-norm", gauss_norm_cmd},
      {"spectral-radius", spectral_radius_cmd},
      {"pth-root", pth_root_cmd},
      {"tower", tower_cmd},
      {"sparse-series", sparse_series_cmd},
      {"nonintegral-cert", [](const Json& p) { return certificate_cmd(CertificateKind::NonIntegral, p); }},
      {"unbounded-demo", [](const Json& p) { return certificate_cmd(CertificateKind::Unbounded, p); }},
      {"pbasis-cert", [](const Json& p) { return certificate_cmd(CertificateKind::PIndependent, p); }},
      {"ffinite-decompose", ffinite_decompose_cmd},
      {"sz-check", sz_check_cmd},
  };
  return table;
}

}  // namespace

SessionConfig SessionConfig::defaults() {
  SessionConfig c;
  c.fields["q3"] = field_to_json(FieldSpec::padic(3));
  c.fields["f2"] = field_to_json(FieldSpec::fq_laurent(2, 2));
  c.fields["f4"] = field_to_json(FieldSpec::fq_laurent(2, 4));
  c.fields["ratfun"] = field_to_json(FieldSpec::ratfun_laurent(2, 3));
  c.radii = {default_radius("r1"), test_radius("rtest")};
  return c;
}

SessionConfig SessionConfig::from_json(const Json& j) {
  auto c = json_guard("config", [&] {
    SessionConfig c;
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
      throw ParseError("unsupported config schema_version");
    for (const auto& [id, f] : j.at("fields").items()) c.fields[id] = field_to_json(field_from_json(f));
    for (const auto& r : j.at("radii")) c.radii.push_back(radius_from_json(r));
    if (j.contains("caps")) {
      const auto& caps = j.at("caps");
      c.caps.support = caps.value("support", c.caps.support);
      c.caps.refinement_depth = caps.value("refinement_depth", c.caps.refinement_depth);
      c.caps.certificate_unknowns = caps.value("certificate_unknowns", c.caps.certificate_unknowns);
      c.caps.max_steps = caps.value("max_steps", c.caps.max_steps);
    }
    c.out_dir = j.value("out_dir", c.out_dir);
    return c;
  });
  c.validate();
  return c;
}

SessionConfig SessionConfig::load(const std::string& path) { return from_json(read_json_file(path)); }

Json SessionConfig::to_json() const {
  Json radii_json = Json::array();
  for (const auto& r : radii) radii_json.push_back(radius_to_json(r));
  return Json{{"schema_version", kSchemaVersion},
              {"fields", fields},
              {"radii", radii_json},
              {"caps", Json{{"support", caps.support},
                            {"refinement_depth", caps.refinement_depth},
                            {"certificate_unknowns", caps.certificate_unknowns},
                            {"max_steps", caps.max_steps}}},
              {"out_dir", out_dir}};
}

Json SessionConfig::field(const std::string& id, std::optional<std::int64_t> precision) const {
  const auto it = fields.find(id);
  if (it == fields.end()) throw PreconditionFailed("undeclared field '" + id + "'");
  if (!precision) return it->second;
  if (*precision <= 0) throw PreconditionFailed("precision must be positive");
  return field_to_json(field_from_json(it->second).with_precision(*precision));
}

const RadiusDecl& SessionConfig::radius(const std::string& id) const {
  for (const auto& r : radii)
    if (r.id() == id) return r;
  throw PreconditionFailed("undeclared radius '" + id + "'");
}

void SessionConfig::validate() const {
  if (caps.support == 0 || caps.refinement_depth == 0 || caps.certificate_unknowns == 0 || caps.max_steps == 0)
    throw PreconditionFailed("caps must be positive");
  for (const auto& [id, f] : fields)
    if (field_from_json(f).precision_cap() <= 0) throw PreconditionFailed("field '" + id + "' has no precision");
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t j = i + 1; j < radii.size(); ++j)
      if (radii[i].id() == radii[j].id()) throw PreconditionFailed("radius '" + radii[i].id() + "' declared twice");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

Outcome run(const std::string& command, const Json& params) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw PreconditionFailed("unknown command '" + command + "'");
  auto c = it->second(params);
  Outcome out;
  out.artifact = Json{{"schema_version", kSchemaVersion},
                      {"command", command},
                      {"params", params},
                      {"result", std::move(c.result)},
                      {"verdict", c.verdict}};
  out.summary = command + ": " + c.summary;
  out.exit_code = c.exit_code;
  return out;
}

Outcome check(const Json& stored) {
  Outcome out;
  if (stored.contains("witness") && stored.contains("kind")) {
    const auto r = recheck(certificate_from_json(stored));
    out.artifact = Json{{"schema_version", kSchemaVersion},
                        {"command", "check"},
                        {"reproduced", r.reproduced},
                        {"verdict", r.fresh.verdict}};
    out.summary = std::string("certificate ") + (r.reproduced ? "reproduced" : "NOT reproduced") + ": " + r.fresh.verdict;
    out.exit_code = r.reproduced ? kExitPass : kExitNegative;
    return out;
  }
  const auto [command, params] = json_guard("artifact", [&] {
    if (stored.at("schema_version").get<int>() != kSchemaVersion) throw ParseError("unsupported schema_version");
    return std::pair{stored.at("command").get<std::string>(), stored.at("params")};
  });
  const auto fresh = run(command, params);
  const bool same = fresh.artifact.at("result") == stored.at("result") &&
                    fresh.artifact.at("verdict") == stored.at("verdict");
  out.artifact = Json{{"schema_version", kSchemaVersion},
                      {"command", "check"},
                      {"checked_command", command},
                      {"reproduced", same},
                      {"verdict", fresh.artifact.at("verdict")}};
  out.summary = command + " artifact " + (same ? "reproduced" : "NOT reproduced") + ": " +
                fresh.artifact.at("verdict").get<std::string>();
  out.exit_code = same ? kExitPass : kExitNegative;
  return out;
}

std::string dump(const Json& artifact) { return artifact.dump(2) + "\n"; }

}  // namespace tatekit::cli
