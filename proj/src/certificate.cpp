#include "tatekit/certificate.hpp"

#include "tatekit/error.hpp"

namespace tatekit {

namespace {

struct Setting {
  FieldSpec spec;
  std::shared_ptr<RadiusContext> radii;
  SeriesRingPtr ring;
};

Setting setting_from(const Json& params) {
  auto spec = field_from_json(params.at("field"));
  auto radii = std::make_shared<RadiusContext>(spec.residue_prime());
  const auto decl = radius_from_json(params.at("radius"));
  const auto id = decl.id();
  radii->declare(decl);
  const auto ring = std::make_shared<SeriesRing>(spec, radii, std::vector<std::string>{id}, SeriesKind::Power,
                                                 params.value("support_cap", std::size_t{4096}));
  return {spec, radii, ring};
}

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::NonIntegral: return "NON_INTEGRAL";
    case CertificateKind::PIndependent: return "P_INDEPENDENT";
    case CertificateKind::Unbounded: return "UNBOUNDED";
  }
  return "?";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
  if (s == "NON_INTEGRAL") return CertificateKind::NonIntegral;
  if (s == "P_INDEPENDENT") return CertificateKind::PIndependent;
  if (s == "UNBOUNDED") return CertificateKind::Unbounded;
  throw ParseError("unknown certificate kind '" + s + "'");
}

Json certificate_to_json(const Certificate& c) {
  return Json{{"kind", to_string(c.kind)}, {"verdict", c.verdict}, {"positive", c.positive},
              {"statement", c.statement}, {"params", c.params},   {"witness", c.witness}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    c.verdict = j.at("verdict").get<std::string>();
    c.positive = j.at("positive").get<bool>();
    c.statement = j.value("statement", std::string());
    c.params = j.at("params");
    c.witness = j.at("witness");
    return c;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

Json nonintegral_witness(const NonIntegralResult& r) {
  return Json{{"series", series_to_json(r.f)},
              {"n_max", r.n_max},
              {"d_max", r.d_max},
              {"faithful_degree", r.faithful_degree},
              {"equations", r.equations},
              {"unknowns", r.unknowns},
              {"rank", r.rank},
              {"method", r.method},
              {"modulus", r.modulus},
              {"relation", r.relation ? Json(r.relation->to_string("X")) : Json(nullptr)}};
}

Json unbounded_witness(const UnboundedTable& t, const RadiusContext& radii) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    rows.push_back(Json{{"n", row.n},
                        {"next_index", row.next_index},
                        {"g_norm", lognorm_to_json(row.g_norm)},
                        {"g_norm_exact", row.g_norm_exact},
                        {"phi_norm", lognorm_to_json(row.phi_norm)},
                        {"ratio", lognorm_to_json(row.ratio)},
                        {"log10_ratio", row.log10_ratio},
                        {"log_q_ratio_lower", to_string(radii.log_interval(row.ratio, 32).lo)},
                        {"exceeds_bound", row.exceeds_bound}});
  }
  return Json{{"indices", t.spec.indices},
              {"radius", t.radius_id},
              {"bound", t.bound},
              {"rows", rows},
              {"strictly_increasing", t.strictly_increasing},
              {"first_exceeding", t.first_exceeding ? Json(*t.first_exceeding) : Json(nullptr)},
              {"transcendence", nonintegral_witness(t.transcendence)}};
}

Json pindependence_witness(const PIndependenceResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"generator", c.generator},
                          {"occurs_in_f", c.occurs_in_f},
                          {"unknowns", c.unknowns},
                          {"equations", c.equations},
                          {"rank", c.rank},
                          {"trivial", c.trivial},
                          {"relation", optional_string(c.relation)}});
  return Json{{"series", series_to_json(r.f)},
              {"tu_degree", r.bounds.tu_degree},
              {"t_degree", r.bounds.t_degree},
              {"checks", checks},
              {"relation", optional_string(r.witness)}};
}

Certificate issue_certificate(CertificateKind kind, const Json& params) {
  Certificate c;
  c.kind = kind;
  c.params = params;
  try {
    const auto s = setting_from(params);
    switch (kind) {
      case CertificateKind::NonIntegral: {
        const auto n = params.at("n_max").get<std::int64_t>(), d = params.at("d_max").get<std::int64_t>();
        const auto r = params.contains("series")
                           ? nonintegral_certificate(series_from_json(params.at("series"), s.ring), n, d)
                           : nonintegral_certificate(sparse_series(params.at("sparse_terms").get<std::size_t>(), s.ring), n, d);
        c.positive = r.non_integral;
        c.verdict = r.non_integral ? "NON_INTEGRAL" : "RELATION_FOUND";
        c.statement =
            "no relation h_0 f^n + ... + h_n = 0 with n <= n_max, deg h_i <= d_max holds on T-degrees up to the "
            "faithful degree, so f is not integral over k(T) at these degrees";
        c.witness = nonintegral_witness(r);
        break;
      }
      case CertificateKind::Unbounded: {
        const auto t = unboundedness_table(params.at("terms").get<std::size_t>(), s.ring, params.at("bound").get<double>());
        c.positive = t.unbounded;
        c.verdict = t.unbounded ? "UNBOUNDED" : "NOT_UNBOUNDED";
        c.statement =
            "the k[T]-derivation with delta(f) = 1 gives g -> (g, delta g) whose norm ratio on g_n = f - f_n "
            "is r^{-i_{n+1}}, strictly increasing past the bound, so the homomorphism is not bounded";
        c.witness = unbounded_witness(t, *s.radii);
        break;
      }
      case CertificateKind::PIndependent: {
        PIndependenceBounds b;
        b.tu_degree = params.value("tu_degree", b.tu_degree);
        b.t_degree = params.value("t_degree", b.t_degree);
        b.max_unknowns = params.value("max_unknowns", b.max_unknowns);
        const auto f = params.contains("series") ? series_from_json(params.at("series"), s.ring)
                                                 : pbasis_series(params.at("pbasis_terms").get<std::size_t>(), s.ring);
        const auto r = p_independence_certificate(f, b);
        c.positive = r.independent;
        c.verdict = r.independent ? "P_INDEPENDENT" : "P_DEPENDENT";
        c.statement =
            "no nonzero c with p-divisible lambda-exponents makes c f lie in the span of p-th powers times "
            "monomials avoiding lambda, for each p-basis generator lambda occurring in f, within the degree bounds";
        c.witness = pindependence_witness(r);
        break;
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed certificate parameters: ") + e.what());
  }
  return c;
}

RecheckResult recheck(const Certificate& c) {
  RecheckResult out{false, issue_certificate(c.kind, c.params)};
  out.reproduced = out.fresh.verdict == c.verdict && out.fresh.positive == c.positive && out.fresh.witness == c.witness;
  return out;
}

}  // namespace tatekit
