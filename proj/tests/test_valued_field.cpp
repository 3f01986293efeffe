#include <doctest.h>

#include "oracles/hensel_oracle.hpp"
#include "support/generators.hpp"
#include "tatekit/error.hpp"
#include "tatekit/field.hpp"
#include "tatekit/padic_value.hpp"
#include "tatekit/radius.hpp"

#include <random>

using namespace tatekit;
using testgen::random_scalar;

namespace {

Scalar q3(const char* x) { return Scalar::from_rational(FieldSpec::padic(3), parse_rational(x)); }

}  // namespace

TEST_CASE("field_arith examples") {
  const auto s = FieldSpec::padic(3);
  const Scalar nine = field_arith(q3("3"), q3("6"), ScalarOp::Add);
  CHECK(nine.val() == 2);
  CHECK(nine.padic().unit == 1);
  CHECK(nine.is_exact());

  const Scalar one = field_arith(q3("1/3"), q3("3"), ScalarOp::Mul);
  CHECK(one == Scalar::one(s));
  CHECK(one.val() == 0);

  const auto f2 = FieldSpec::fq_laurent(2, 2);
  const Scalar t = Scalar::uniformizer(f2);
  const Scalar sum = field_arith(t + t.pow(2), t, ScalarOp::Add);
  CHECK(sum == t.pow(2));
  CHECK(sum.val() == 2);

  CHECK_THROWS_AS(field_arith(q3("1"), q3("0"), ScalarOp::Div), DivisionByZero);
}

TEST_CASE("cancellation of inexact values exhausts precision") {
  const auto s = FieldSpec::padic(3, 10);
  const Scalar x = scalar_pth_root(Scalar::from_int(s, 4), 2);
  CHECK_FALSE(x.is_exact());
  CHECK_THROWS_AS(x - x, PrecisionExhausted);
  // Exact cancellation is a genuine zero.
  CHECK((q3("5") - q3("5")).is_zero());

  const auto f2 = FieldSpec::fq_laurent(2, 2, 8);
  const Scalar inv = (Scalar::one(f2) + Scalar::uniformizer(f2)).inverse();
  CHECK_FALSE(inv.is_exact());
  CHECK(inv.relative_precision() == 8);
  CHECK_THROWS_AS(inv - inv, PrecisionExhausted);
}

TEST_CASE("norm examples") {
  CHECK(q3("9").norm() == LogNorm::of(2));
  CHECK(q3("1/3").norm() == LogNorm::of(-1));
  const auto f2 = FieldSpec::fq_laurent(2, 2);
  const Scalar t = Scalar::uniformizer(f2);
  CHECK((t.pow(3) + t.pow(5)).norm() == LogNorm::of(3));
  CHECK(q3("0").norm().is_zero());
}

TEST_CASE("check_aux_prime examples") {
  CHECK(check_aux_prime(FieldSpec::padic(3), 2));
  CHECK_FALSE(check_aux_prime(FieldSpec::padic(3), 3));
  CHECK(check_aux_prime(FieldSpec::fq_laurent(2, 2), 3));
  for (std::uint32_t p : {2u, 5u, 7u}) {
    const auto s = FieldSpec::padic(3);
    if (check_aux_prime(s, p)) CHECK(Scalar::from_int(s, p).norm() == LogNorm::identity());
  }
}

TEST_CASE("scalar_pth_root agrees with the digit-search oracle") {
  const auto s = FieldSpec::padic(3, 40);
  for (const char* a : {"4", "25", "1", "13/4", "7", "-2"}) {
    const Scalar x = Scalar::from_rational(s, parse_rational(a));
    const Scalar r = scalar_pth_root(x, 2);
    CHECK(r.pow(2) == x);
    const auto oracle = oracle::digit_root(parse_rational(a), 2, 3, 40, 1);
    REQUIRE(oracle.has_value());
    CHECK(r == Scalar::from_rational(s, Rational(*oracle)));
  }
  CHECK(scalar_pth_root(q3("4"), 2) == q3("-2"));
  CHECK(scalar_pth_root(q3("25"), 2) == q3("-5"));
  CHECK(scalar_pth_root(q3("1"), 2) == q3("1"));
  CHECK_THROWS_AS(scalar_pth_root(q3("3"), 2), NoRootInField);
  CHECK_THROWS_AS(scalar_pth_root(q3("2"), 2), NoRootInField);
  CHECK_THROWS_AS(scalar_pth_root(q3("4"), 3), PreconditionFailed);
}

TEST_CASE("scalar_pth_root over Laurent fields") {
  const auto f4 = FieldSpec::fq_laurent(2, 4, 30);
  const Scalar t = Scalar::uniformizer(f4);
  const Scalar a = (Scalar::one(f4) + t + Scalar::residue_generator(f4) * t.pow(3)) * t.pow(6);
  const Scalar r = scalar_pth_root(a, 3);
  CHECK(r.val() == 2);
  CHECK(r.pow(3) == a);

  const auto rf = FieldSpec::ratfun_laurent(3, 2, 20);
  const Scalar u1 = Scalar::pbasis_variable(rf, 1);
  const Scalar b = Scalar::one(rf) + u1 * Scalar::uniformizer(rf);
  CHECK(scalar_pth_root(b, 2).pow(2) == b);
  CHECK_THROWS_AS(scalar_pth_root(u1, 2), NoRootInField);
}

TEST_CASE("ultrametric inequality and multiplicativity on random scalars") {
  std::mt19937_64 rng(7);
  const RadiusContext none(3);
  for (const auto& spec : {FieldSpec::padic(3), FieldSpec::fq_laurent(2, 2), FieldSpec::fq_laurent(3, 9),
                           FieldSpec::ratfun_laurent(2, 2)}) {
    const RadiusContext ctx(spec.residue_prime());
    for (int i = 0; i < 200; ++i) {
      const Scalar x = random_scalar(spec, rng), y = random_scalar(spec, rng);
      const Scalar s = x + y;
      CHECK(ln_less_equal(s.norm(), ln_max(x.norm(), y.norm(), ctx), ctx));
      if (x.norm() != y.norm()) CHECK(s.norm() == ln_max(x.norm(), y.norm(), ctx));
      CHECK((x * y).norm() == ln_mul(x.norm(), y.norm()));
      if (!y.is_zero()) CHECK((x / y) * y == x);
    }
  }
}

TEST_CASE("rational function coefficients stay canonical") {
  const auto rf = FieldSpec::ratfun_laurent(2, 3);
  const Scalar u1 = Scalar::pbasis_variable(rf, 1), u2 = Scalar::pbasis_variable(rf, 2);
  const Scalar x = (u1 * u1 + u2 * u2) / (u1 + u2);
  CHECK(x == u1 + u2);  // char 2: u1^2 + u2^2 = (u1 + u2)^2
  CHECK(x.to_string() == "u1+u2");
  const Scalar y = (u1 + u2) / Scalar::uniformizer(rf);
  CHECK(y.to_string() == "(u1+u2)*t^-1");
}

TEST_CASE("rational reconstruction of capped p-adic values") {
  const auto spec = FieldSpec::padic(3, 40);
  const auto ctx = spec.padic_context();
  for (const char* x : {"-2", "-5", "7/11", "-13/4", "9/2", "1/27"}) {
    CAPTURE(x);
    const Rational r = parse_rational(x);
    const auto inexact = Scalar::from_rational(spec, r).truncated_to(40 + Scalar::from_rational(spec, r).val());
    REQUIRE_FALSE(inexact.is_exact());
    const auto back = padic_rational_reconstruction(ctx, inexact.padic());
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
  // a square root of 13/4 is irrational
  const auto root = scalar_pth_root(Scalar::from_rational(spec, Rational(13, 4)), 2);
  CHECK_FALSE(padic_rational_reconstruction(ctx, root.padic()).has_value());
  CHECK(padic_rational_reconstruction(ctx, Scalar::from_int(spec, 5).padic()) == Rational(5));
}
