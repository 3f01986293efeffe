#include <doctest.h>

#include "oracles/pspan_oracle.hpp"
#include "oracles/relation_oracle.hpp"
#include "support/generators.hpp"
#include "tatekit/deriv_lab.hpp"
#include "tatekit/error.hpp"

#include <cmath>

using namespace tatekit;

namespace {

const FieldSpec kQ3 = FieldSpec::padic(3);

SeriesRingPtr q3_ring(RadiusDecl r = test_radius()) { return testgen::single_ring(kQ3, std::move(r), SeriesKind::Power); }

TateSeries T_pow(const SeriesRingPtr& ring, std::int64_t k) { return TateSeries::power_of_t(ring, k); }

oracle::IntPoly dense_of(const TateSeries& f) {
  oracle::IntPoly out(static_cast<std::size_t>(f.max_degree() + 1), 0);
  for (const auto& [nu, c] : f.terms()) out[static_cast<std::size_t>(nu[0])] = c.as_rational()->get_num();
  return out;
}

PolyInTF random_poly(const FieldSpec& spec, std::mt19937_64& rng, int max_t, int max_f) {
  PolyInTF out(spec);
  const int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    const auto c = Scalar::from_int(spec, static_cast<std::int64_t>(rng() % 9) - 4);
    out = out + PolyInTF::monomial(c, static_cast<std::int64_t>(rng() % (max_t + 1)),
                                   static_cast<std::int64_t>(rng() % (max_f + 1)));
  }
  return out;
}

SeriesRingPtr ratfun_ring(std::uint32_t p, std::size_t nvars) {
  return testgen::single_ring(FieldSpec::ratfun_laurent(p, nvars), test_radius(), SeriesKind::Power);
}

// f over F_p(u)((t)) as the oracle's exponent map (t, u_1..u_N, T).
oracle::PPoly ppoly_of(const TateSeries& f) {
  const auto& spec = f.spec();
  const auto n = spec.num_pbasis_vars();
  oracle::PPoly out;
  for (const auto& [nu, c] : f.terms()) {
    const auto& v = c.ratfun();
    for (std::size_t k = 0; k < v.unit.size(); ++k)
      for (const auto& [m, a] : v.unit[k].num().terms()) {
        oracle::Exps e(n + 2, 0);
        e[0] = static_cast<unsigned>(v.val + static_cast<std::int64_t>(k));
        for (std::size_t i = 0; i < n; ++i) e[i + 1] = m[i];
        e[n + 1] = static_cast<unsigned>(nu[0]);
        out[e] = a;
      }
  }
  return out;
}

}  // namespace

TEST_CASE("sparse indices follow the recurrence") {
  CHECK(sparse_indices(1).indices == std::vector<std::int64_t>{2});
  CHECK(sparse_indices(4).indices == std::vector<std::int64_t>{2, 4, 11, 37});
  CHECK(sparse_indices(5).indices == std::vector<std::int64_t>{2, 4, 11, 37, 153});
  const auto seven = sparse_indices(7).indices;
  CHECK(seven[5] == 771);
  CHECK(seven[6] == 4633);
  CHECK_THROWS_AS(sparse_indices(0), PreconditionFailed);
  CHECK_THROWS_AS(sparse_indices(40), CapExceeded);
}

TEST_CASE("sparse series") {
  const auto ring = q3_ring();
  const auto s2 = sparse_series(2, ring);
  CHECK(s2.poly == T_pow(ring, 2) + T_pow(ring, 4));
  CHECK(s2.next_index == 11);
  const auto s3 = sparse_series(3, ring);
  CHECK(s3.poly == T_pow(ring, 2) + T_pow(ring, 4) + T_pow(ring, 11));
  CHECK(s3.poly.is_exact());
  CHECK(s3.ideal_tail == ring->monomial_norm({37}));
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto g = gauss_norm(sparse_series(m, ring).ideal());
    CHECK(g.value == ring->monomial_norm({2}));
    CHECK(g.exact);
  }
  // rational radius and radius above one are rejected
  CHECK_THROWS_AS(sparse_series(3, q3_ring(RadiusDecl("half", QuadraticSurd::parse("1/2"), false))), PreconditionFailed);
  CHECK_THROWS_AS(sparse_series(3, q3_ring(RadiusDecl("big", QuadraticSurd::parse("0-sqrt(2)"), true))),
                  PreconditionFailed);
}

TEST_CASE("non-integrality of the sparse truncation") {
  const auto ring = q3_ring();
  const auto s3 = sparse_series(3, ring);
  const auto cert = nonintegral_certificate(s3, 2, 3);
  CHECK(cert.non_integral);
  CHECK(cert.unknowns == 12);
  CHECK(cert.rank == 12);
  CHECK(cert.faithful_degree == 36);
  CHECK(oracle::relation_rank(dense_of(s3.poly), 2, 3, 36) == 12);
  // degree gap: 2*11 + 15 = 37 is not below 37
  CHECK_THROWS_AS(nonintegral_certificate(s3, 2, 15), PreconditionFailed);
  // once d_max reaches i_m the truncation itself is a relation X - f_m
  const auto wide = nonintegral_certificate(s3, 2, 14);
  CHECK_FALSE(wide.non_integral);
  REQUIRE(wide.relation);
  CHECK(wide.relation->to_string("X") == "X - T^11 - T^4 - T^2");
  CHECK(nonintegral_certificate(s3, 2, 10).non_integral);
  CHECK(nonintegral_certificate(sparse_series(5, ring), 4, 5).non_integral);
}

TEST_CASE("planted relations are found") {
  const auto ring = q3_ring();
  const auto t1 = nonintegral_certificate(T_pow(ring, 1), 1, 1);
  CHECK_FALSE(t1.non_integral);
  REQUIRE(t1.relation);
  CHECK(t1.relation->to_string("X") == "X - T");
  CHECK(t1.relation->evaluate(T_pow(ring, 1)).is_zero());

  const auto t2 = nonintegral_certificate(T_pow(ring, 2), 1, 2);
  CHECK_FALSE(t2.non_integral);
  REQUIRE(t2.relation);
  CHECK(t2.relation->to_string("X") == "X - T^2");
  CHECK(t2.method == "exact-elimination");

  // f = 1 + T: f^2 - 2 T f ... has X - T - 1 as the smallest relation
  const auto g = TateSeries::one(ring) + T_pow(ring, 1);
  const auto rel = nonintegral_certificate(g, 2, 1);
  REQUIRE(rel.relation);
  CHECK(rel.relation->to_string("X") == "X - T - 1");
  CHECK(oracle::relation_rank(dense_of(g), 2, 1, 3) == rel.rank);
}

TEST_CASE("relation system rank agrees with the rational oracle") {
  const auto ring = q3_ring();
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 40; ++rep) {
    TateSeries::Terms terms;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i)
      terms.insert_or_assign(Exponent{static_cast<std::int64_t>(rng() % 5)},
                             Scalar::from_int(kQ3, static_cast<std::int64_t>(rng() % 7) - 3));
    const TateSeries f(ring, std::move(terms));
    if (f.terms().empty()) continue;
    const int nmax = 1 + static_cast<int>(rng() % 2), dmax = static_cast<int>(rng() % 3);
    const auto cert = nonintegral_certificate(f, nmax, dmax);
    const auto E = nmax * std::max<std::int64_t>(f.max_degree(), 0) + dmax;
    CHECK(cert.rank == oracle::relation_rank(dense_of(f), nmax, dmax, static_cast<int>(E)));
    if (cert.relation) CHECK(cert.relation->evaluate(f).is_zero());
  }
}

TEST_CASE("derivation on k[T][f]") {
  const auto ring = q3_ring();
  const auto s = sparse_series(5, ring);
  const auto cert = nonintegral_certificate(s, 5, 5);
  REQUIRE(cert.non_integral);
  const auto& f = s.poly;
  const auto T = PolyInTF::t(kQ3), F = PolyInTF::f(kQ3);

  CHECK(deriv_eval(T.pow(3), f, cert).is_zero());
  CHECK(deriv_eval(F, f, cert) == TateSeries::one(ring));
  CHECK(deriv_eval(T * F * F, f, cert) == (T_pow(ring, 1) * f).scaled(Scalar::from_int(kQ3, 2)));

  const auto one_T = phi(T, f, cert);
  CHECK(one_T.a == T_pow(ring, 1));
  CHECK(one_T.b.is_zero());
  const auto one_F = phi(F, f, cert);
  CHECK(one_F.a == f);
  CHECK(one_F.b == TateSeries::one(ring));
  const auto sq = phi(F * F, f, cert);
  CHECK(sq.a == f * f);
  CHECK(sq.b == f.scaled(Scalar::from_int(kQ3, 2)));

  // no certificate, or one that does not cover the degrees
  const auto planted = nonintegral_certificate(T_pow(ring, 1), 1, 1);
  CHECK_THROWS_AS(deriv_eval(F, T_pow(ring, 1), planted), PreconditionFailed);
  CHECK_THROWS_AS(deriv_eval(F.pow(6), f, cert), PreconditionFailed);
  CHECK_THROWS_AS(deriv_eval(F, f + T_pow(ring, 1), cert), PreconditionFailed);
}

TEST_CASE("Leibniz rule and phi is a ring homomorphism") {
  const auto ring = q3_ring();
  const auto s = sparse_series(5, ring);
  const auto cert = nonintegral_certificate(s, 5, 5);
  const auto& f = s.poly;
  const SquareZeroRing<TateSeries> sz(ring->radii_ptr());
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    const auto P = random_poly(kQ3, rng, 2, 2), Q = random_poly(kQ3, rng, 2, 2);
    const auto lhs = deriv_eval(P * Q, f, cert);
    const auto rhs = P.evaluate(f) * deriv_eval(Q, f, cert) + Q.evaluate(f) * deriv_eval(P, f, cert);
    CHECK(lhs == rhs);
    CHECK(sz.equal(phi(P * Q, f, cert), sz.mul(phi(P, f, cert), phi(Q, f, cert))));
    CHECK(sz.equal(phi(P + Q, f, cert), sz.add(phi(P, f, cert), phi(Q, f, cert))));
  }
}

TEST_CASE("unboundedness table with the test radius") {
  const auto ring = q3_ring();
  const auto table = unboundedness_table(4, ring, 1e6);
  REQUIRE(table.rows.size() == 3);
  const std::int64_t next[] = {4, 11, 37};
  const double expected_exp[] = {2.4, 6.6, 22.2};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& row = table.rows[i];
    CHECK(row.next_index == next[i]);
    CHECK(row.g_norm == ring->monomial_norm({next[i]}));
    CHECK(row.g_norm_exact);
    CHECK(row.phi_norm == LogNorm::identity());
    CHECK(row.ratio == ring->monomial_norm({-next[i]}));
    // rtest sits just above 0.6, so the exponents are a hair larger
    CHECK(row.log10_ratio / std::log10(3.0) == doctest::Approx(expected_exp[i]).epsilon(0.001));
  }
  CHECK_FALSE(table.rows[0].exceeds_bound);
  CHECK_FALSE(table.rows[1].exceeds_bound);
  CHECK(table.rows[2].exceeds_bound);
  CHECK(table.first_exceeding == std::size_t{3});
  CHECK(table.strictly_increasing);
  CHECK(table.unbounded);
  CHECK(table.transcendence.non_integral);
  CHECK_FALSE(unboundedness_table(4, ring, 1e20).unbounded);
}

TEST_CASE("unboundedness table with the default radius") {
  const auto ring = q3_ring(default_radius());
  const auto table = unboundedness_table(6, ring, 1e30);
  REQUIRE(table.rows.size() == 5);
  CHECK(table.rows[2].ratio == ring->monomial_norm({-37}));
  CHECK(ring->radii().exceeds(table.rows[2].ratio, 1e6));
  CHECK(table.rows[4].ratio == ring->monomial_norm({-771}));
  CHECK(table.rows[4].exceeds_bound);
  CHECK(table.unbounded);
}

TEST_CASE("p-basis series") {
  const auto ring = ratfun_ring(2, 3);
  const auto& spec = ring->spec();
  const auto f = pbasis_series(4, ring);
  const auto expected = TateSeries::monomial(ring, Scalar::uniformizer(spec), {0}) +
                        TateSeries::monomial(ring, Scalar::pbasis_variable(spec, 1), {1}) +
                        TateSeries::monomial(ring, Scalar::pbasis_variable(spec, 2), {2}) +
                        TateSeries::monomial(ring, Scalar::pbasis_variable(spec, 3), {3});
  CHECK(f == expected);
  CHECK(pbasis_series(1, ring) == TateSeries::monomial(ring, Scalar::uniformizer(spec), {0}));
  const auto full = pbasis_series(15, ring);
  for (const auto& [nu, c] : full.terms()) CHECK(ln_less_equal(c.norm(), LogNorm::identity(), ring->radii()));
  CHECK(pbasis_monomial_names(spec, 6) == std::vector<std::string>{"t", "u1", "u2", "u3", "t*u1", "t*u2"});
  CHECK_THROWS_AS(pbasis_series(16, ring), PreconditionFailed);
}

TEST_CASE("p-independence of the p-basis series") {
  const auto ring = ratfun_ring(2, 3);
  const auto f = pbasis_series(4, ring);
  const auto cert = p_independence_certificate(f, {2, 4, 4096});
  CHECK(cert.independent);
  CHECK_FALSE(cert.witness);
  REQUIRE(cert.checks.size() == 4);
  for (const auto& c : cert.checks) {
    CHECK(c.occurs_in_f);
    CHECK(c.trivial);
    CHECK(c.rank == c.unknowns);
  }
  CHECK_THROWS_AS(p_independence_certificate(f, {2, 4, 10}), CapExceeded);
}

TEST_CASE("planted p-th power controls") {
  const auto ring = ratfun_ring(2, 3);
  const auto& spec = ring->spec();
  const auto u1 = Scalar::pbasis_variable(spec, 1);
  const auto a = p_independence_certificate(TateSeries::monomial(ring, u1 * u1, {2}));
  CHECK_FALSE(a.independent);
  REQUIRE(a.witness);
  CHECK(*a.witness == "f = (u1*T)^2*1");

  const auto b = p_independence_certificate(TateSeries::power_of_t(ring, 1));
  CHECK_FALSE(b.independent);
  REQUIRE(b.witness);
  CHECK(*b.witness == "f = (1)^2*T");
}

TEST_CASE("p-independence agrees with exhaustive search on tiny bounds") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u}) {
    const auto ring = ratfun_ring(p, 1);
    const auto& spec = ring->spec();
    const auto t = Scalar::uniformizer(spec), u = Scalar::pbasis_variable(spec, 1);
    for (int rep = 0; rep < 25; ++rep) {
      TateSeries::Terms terms;
      const int n = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < n; ++i) {
        const auto c = Scalar::from_int(spec, 1 + static_cast<std::int64_t>(rng() % (p - 1))) *
                       t.pow(static_cast<std::int64_t>(rng() % 3)) * u.pow(static_cast<std::int64_t>(rng() % 3));
        terms.insert_or_assign(Exponent{static_cast<std::int64_t>(rng() % 3)}, c);
      }
      const TateSeries f(ring, std::move(terms));
      const PIndependenceBounds bounds{1, 1, 4096};
      const auto cert = p_independence_certificate(f, bounds);
      const auto poly = ppoly_of(f);
      for (std::size_t lambda = 0; lambda < cert.checks.size(); ++lambda)
        CHECK(cert.checks[lambda].trivial != oracle::brute_force_relation(poly, 3, lambda, p, 1, 1));
    }
  }
}
