#include <doctest.h>

#include "support/generators.hpp"
#include "tatekit/certificate.hpp"
#include "tatekit/error.hpp"
#include "tatekit/json_io.hpp"
#include "tatekit/parse.hpp"

using namespace tatekit;

namespace {

const FieldSpec kQ3 = FieldSpec::padic(3);
const FieldSpec kF2 = FieldSpec::fq_laurent(2, 2);
const FieldSpec kF4 = FieldSpec::fq_laurent(2, 4);
const FieldSpec kRat = FieldSpec::ratfun_laurent(2, 3);

Json base_params(const FieldSpec& spec) {
  return Json{{"field", field_to_json(spec)}, {"radius", radius_to_json(test_radius())}};
}

}  // namespace

TEST_CASE("scalar literals") {
  CHECK(parse_scalar(kQ3, "4") == Scalar::from_int(kQ3, 4));
  CHECK(parse_scalar(kQ3, "13/4*3^-2") == Scalar::from_rational(kQ3, parse_rational("13/36")));
  CHECK(parse_scalar(kQ3, "-2*3^0") == Scalar::from_int(kQ3, -2));
  CHECK(parse_scalar(kQ3, "5*3^1 + O(3^4)").absolute_precision() == std::int64_t{4});
  const auto t = Scalar::uniformizer(kF2);
  CHECK(parse_scalar(kF2, "t^3 + t^5") == t.pow(3) + t.pow(5));
  CHECK(parse_scalar(kF2, "t^-2") == t.pow(-2));
  const auto z = Scalar::residue_generator(kF4);
  CHECK(parse_scalar(kF4, "(z+1)*t^3 + O(t^7)") == ((z + Scalar::one(kF4)) * Scalar::uniformizer(kF4).pow(3)).truncated_to(7));
  const auto u1 = Scalar::pbasis_variable(kRat, 1), u2 = Scalar::pbasis_variable(kRat, 2);
  CHECK(parse_scalar(kRat, "(u1+u2)*t^-1") == (u1 + u2) * Scalar::uniformizer(kRat).inverse());
  CHECK(parse_scalar(kRat, "u1/u2") == u1 / u2);

  CHECK_THROWS_AS(parse_scalar(kQ3, "t"), ParseError);
  CHECK_THROWS_AS(parse_scalar(kRat, "u4"), ParseError);
  CHECK_THROWS_AS(parse_scalar(kF2, "z"), ParseError);
  CHECK_THROWS_AS(parse_scalar(kQ3, "1 +"), ParseError);
  CHECK_THROWS_AS(parse_scalar(kQ3, "(1"), ParseError);
  CHECK_THROWS_AS(parse_scalar(kQ3, "1/0"), ParseError);
  CHECK_THROWS_AS(parse_scalar(kQ3, "2 3"), ParseError);
}

TEST_CASE("printed scalars parse back") {
  std::mt19937_64 rng(17);
  for (const auto& spec : {kQ3, kF2, kF4, kRat}) {
    for (int rep = 0; rep < 200; ++rep) {
      auto a = testgen::random_scalar(spec, rng);
      if (rep % 3 == 0 && !a.is_zero()) a = a.truncated_to(a.val() + 3);
      const auto back = parse_scalar(spec, a.to_string());
      CHECK(back == a);
      CHECK(back.is_exact() == a.is_exact());
      CHECK(back.to_string() == a.to_string());
    }
  }
}

TEST_CASE("norm and field encodings") {
  CHECK(lognorm_to_json(LogNorm::zero()) == Json{{"zero", true}});
  const auto x = LogNorm::of(Rational(-1, 2), {Rational(3), Rational(0), Rational(-2, 7)});
  CHECK(lognorm_from_json(lognorm_to_json(x)) == x);
  CHECK(lognorm_from_json(Json::parse(R"({"e0": "2", "radius": ["1/3"]})")) == LogNorm::of(2, {Rational(1, 3)}));
  CHECK_THROWS_AS(lognorm_from_json(Json::parse(R"({"radius": []})")), ParseError);
  for (const auto& spec : {kQ3, kF2, kF4, kRat}) CHECK(field_from_json(field_to_json(spec)) == spec);
  for (const auto& decl : {default_radius(), test_radius()}) {
    const auto back = radius_from_json(radius_to_json(decl));
    CHECK(back.id() == decl.id());
    CHECK(back.log_inv_radius().to_string() == decl.log_inv_radius().to_string());
  }
}

TEST_CASE("series encoding round trip") {
  std::mt19937_64 rng(23);
  for (const auto& spec : {kQ3, kF2, kF4, kRat}) {
    for (const auto kind : {SeriesKind::Power, SeriesKind::Laurent}) {
      const auto ring = testgen::single_ring(spec, test_radius(), kind);
      for (int rep = 0; rep < 50; ++rep) {
        auto f = testgen::random_series(ring, rng);
        if (rep % 4 == 0) f = f.with_tail(ring->monomial_norm({9}));
        const auto j = series_to_json(f);
        CHECK(series_from_json(j, ring) == f);
        CHECK(series_from_json(j, spec, ring->radii_ptr()) == f);
        CHECK(series_to_json(series_from_json(j, ring)).dump() == j.dump());
      }
    }
  }
  const auto ring = testgen::single_ring(kQ3, test_radius(), SeriesKind::Power);
  CHECK(series_to_json(TateSeries::zero(ring)).dump() ==
        R"({"kind":"power","radius":["rtest"],"tail":{"zero":true},"terms":[]})");
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"radius":["r9"],"terms":[]})"), kQ3, ring->radii_ptr()),
                  PreconditionFailed);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"terms":[{"exp":[-1],"coeff":"1"}]})"), ring), ParseError);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"terms":[{"exp":[1]}]})"), ring), ParseError);

  const SquareZeroRing<TateSeries> sz(ring->radii_ptr());
  const auto pair = sz.make(TateSeries::power_of_t(ring, 2), TateSeries::one(ring));
  CHECK(sz.equal(sz_from_json(sz_to_json(pair), ring), pair));
}

TEST_CASE("certificates recheck from their parameters") {
  auto p = base_params(kQ3);
  p["sparse_terms"] = 3;
  p["n_max"] = 2;
  p["d_max"] = 3;
  const auto c = issue_certificate(CertificateKind::NonIntegral, p);
  CHECK(c.verdict == "NON_INTEGRAL");
  CHECK(c.positive);
  CHECK(c.witness["rank"] == 12);
  const auto back = certificate_from_json(Json::parse(certificate_to_json(c).dump()));
  CHECK(recheck(back).reproduced);

  auto tampered = back;
  tampered.witness["rank"] = 11;
  CHECK_FALSE(recheck(tampered).reproduced);
  tampered = back;
  tampered.params["d_max"] = 14;
  CHECK_FALSE(recheck(tampered).reproduced);

  auto planted = base_params(kQ3);
  planted["series"] = Json::parse(R"({"kind":"power","radius":["rtest"],"terms":[{"exp":[1],"coeff":"1"}]})");
  planted["n_max"] = 1;
  planted["d_max"] = 1;
  const auto rel = issue_certificate(CertificateKind::NonIntegral, planted);
  CHECK(rel.verdict == "RELATION_FOUND");
  CHECK(rel.witness["relation"] == "X - T");

  auto u = base_params(kQ3);
  u["terms"] = 4;
  u["bound"] = 1e6;
  const auto unb = issue_certificate(CertificateKind::Unbounded, u);
  CHECK(unb.verdict == "UNBOUNDED");
  CHECK(unb.witness["rows"].size() == 3);
  CHECK(unb.witness["first_exceeding"] == 3);
  CHECK(recheck(unb).reproduced);

  auto pi = base_params(kRat);
  pi["pbasis_terms"] = 4;
  pi["tu_degree"] = 2;
  pi["t_degree"] = 4;
  const auto ind = issue_certificate(CertificateKind::PIndependent, pi);
  CHECK(ind.verdict == "P_INDEPENDENT");
  CHECK(recheck(ind).reproduced);

  auto dep = base_params(kRat);
  dep["series"] = Json::parse(R"({"terms":[{"exp":[2],"coeff":"u1^2"}]})");
  const auto d = issue_certificate(CertificateKind::PIndependent, dep);
  CHECK(d.verdict == "P_DEPENDENT");
  CHECK(d.witness["relation"] == "f = (u1*T)^2*1");

  CHECK_THROWS_AS(issue_certificate(CertificateKind::Unbounded, base_params(kQ3)), ParseError);
  CHECK_THROWS_AS(certificate_from_json(Json::parse(R"({"kind":"NOPE"})")), ParseError);
}
