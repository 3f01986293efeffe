#include "tatekit/json_io.hpp"

#include "tatekit/error.hpp"
#include "tatekit/parse.hpp"

namespace tatekit {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

SeriesKind kind_from_string(const std::string& s) {
  if (s == "power") return SeriesKind::Power;
  if (s == "laurent") return SeriesKind::Laurent;
  throw ParseError("unknown series kind '" + s + "'");
}

}  // namespace

Json lognorm_to_json(const LogNorm& x) {
  if (x.is_zero()) return Json{{"zero", true}};
  Json radius = Json::array();
  for (const auto& e : x.radius_exps()) radius.push_back(to_string(e));
  return Json{{"e0", to_string(x.base_exp())}, {"radius", radius}};
}

LogNorm lognorm_from_json(const Json& j) {
  return guarded("norm", [&] {
    if (j.contains("zero")) {
      if (!j.at("zero").get<bool>()) throw ParseError("norm with \"zero\": false");
      return LogNorm::zero();
    }
    std::vector<Rational> radius;
    if (j.contains("radius"))
      for (const auto& e : j.at("radius")) radius.push_back(parse_rational(e.get<std::string>()));
    return LogNorm::of(parse_rational(j.at("e0").get<std::string>()), std::move(radius));
  });
}

Json scalar_to_json(const Scalar& x) { return x.to_string(); }

Scalar scalar_from_json(const FieldSpec& spec, const Json& j) {
  return guarded("scalar", [&] {
    if (j.is_number_integer()) return Scalar::from_int(spec, j.get<std::int64_t>());
    return parse_scalar(spec, j.get<std::string>());
  });
}

Json field_to_json(const FieldSpec& spec) {
  Json out{{"q", spec.residue_prime()}, {"precision", spec.precision_cap()}};
  switch (spec.kind()) {
    case FieldKind::Padic: out["kind"] = "padic"; break;
    case FieldKind::FqLaurent:
      out["kind"] = "fq_laurent";
      out["size"] = spec.field_size();
      break;
    case FieldKind::RatfunLaurent:
      out["kind"] = "ratfun_laurent";
      out["vars"] = spec.num_pbasis_vars();
      break;
  }
  return out;
}

FieldSpec field_from_json(const Json& j) {
  return guarded("field", [&] {
    const auto kind = j.at("kind").get<std::string>();
    const auto q = j.at("q").get<std::uint32_t>();
    if (kind == "padic") return FieldSpec::padic(q, j.value("precision", std::int64_t{40}));
    if (kind == "fq_laurent")
      return FieldSpec::fq_laurent(q, j.value("size", q), j.value("precision", std::int64_t{64}));
    if (kind == "ratfun_laurent")
      return FieldSpec::ratfun_laurent(q, j.at("vars").get<std::size_t>(), j.value("precision", std::int64_t{64}));
    throw ParseError("unknown field kind '" + kind + "'");
  });
}

Json radius_to_json(const RadiusDecl& decl) {
  return Json{{"id", decl.id()}, {"log_inv_radius", decl.log_inv_radius().to_string()},
              {"irrational", decl.asserts_irrational()}};
}

RadiusDecl radius_from_json(const Json& j) {
  return guarded("radius", [&] {
    return RadiusDecl(j.at("id").get<std::string>(), QuadraticSurd::parse(j.at("log_inv_radius").get<std::string>()),
                      j.value("irrational", true));
  });
}

Json series_to_json(const TateSeries& f) {
  const auto& ring = f.ring();
  Json terms = Json::array();
  for (const auto& [nu, c] : f.terms()) terms.push_back(Json{{"exp", nu}, {"coeff", scalar_to_json(c)}});
  return Json{{"kind", to_string(ring.kind())}, {"radius", ring.radius_ids()}, {"terms", terms},
              {"tail", lognorm_to_json(f.tail())}};
}

TateSeries series_from_json(const Json& j, const FieldSpec& spec, std::shared_ptr<const RadiusContext> radii,
                            std::size_t support_cap) {
  return guarded("series", [&] {
    const auto ids = j.at("radius").get<std::vector<std::string>>();
    for (const auto& id : ids)
      if (!radii->find(id)) throw PreconditionFailed("undeclared radius '" + id + "'");
    const auto ring = std::make_shared<SeriesRing>(spec, std::move(radii), ids,
                                                   kind_from_string(j.value("kind", std::string("power"))), support_cap);
    return series_from_json(j, ring);
  });
}

TateSeries series_from_json(const Json& j, const SeriesRingPtr& ring) {
  return guarded("series", [&] {
    if (j.contains("kind") && kind_from_string(j.at("kind").get<std::string>()) != ring->kind())
      throw ParseError("series kind does not match the ring");
    if (j.contains("radius") && j.at("radius").get<std::vector<std::string>>() != ring->radius_ids())
      throw ParseError("series radii do not match the ring");
    TateSeries out = TateSeries::zero(ring);
    for (const auto& term : j.at("terms")) {
      const auto nu = term.at("exp").get<Exponent>();
      if (nu.size() != ring->nvars()) throw ParseError("exponent has the wrong number of variables");
      if (!ring->admits(nu)) throw ParseError("negative exponent in a power series");
      out += TateSeries::monomial(ring, scalar_from_json(ring->spec(), term.at("coeff")), nu);
    }
    if (j.contains("tail")) out = out.with_tail(lognorm_from_json(j.at("tail")));
    return out;
  });
}

Json sz_to_json(const SquareZeroElem<TateSeries>& x) {
  return Json{{"a", series_to_json(x.a)}, {"b", series_to_json(x.b)}};
}

SquareZeroElem<TateSeries> sz_from_json(const Json& j, const SeriesRingPtr& ring) {
  return guarded("pair", [&] {
    return SquareZeroElem<TateSeries>{series_from_json(j.at("a"), ring), series_from_json(j.at("b"), ring)};
  });
}

}  // namespace tatekit
