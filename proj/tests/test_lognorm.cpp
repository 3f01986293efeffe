#include "support/printing.hpp"
#include <doctest.h>

#include "tatekit/error.hpp"
#include "tatekit/radius.hpp"

#include <random>

using namespace tatekit;

namespace {

LogNorm ln(const char* e0, std::vector<const char*> radius = {}) {
  std::vector<Rational> r;
  for (auto x : radius) r.push_back(parse_rational(x));
  return LogNorm::of(parse_rational(e0), r);
}

RadiusContext single(RadiusDecl decl) {
  RadiusContext ctx(3);
  ctx.declare(std::move(decl));
  return ctx;
}

}  // namespace

TEST_CASE("ln_mul examples") {
  CHECK(ln_mul(ln("1", {"0"}), ln("0", {"1"})) == ln("1", {"1"}));
  CHECK(ln_mul(LogNorm::zero(), ln("5", {"2"})).is_zero());
  CHECK(ln_mul(ln("1/2", {"3"}), ln("1/2", {"-3"})) == ln("1"));
}

TEST_CASE("ln_pow examples") {
  CHECK(ln_pow(ln("2"), Rational(1, 2)) == ln("1"));
  CHECK(ln_pow(ln("1", {"1"}), 3) == ln("3", {"3"}));
  CHECK(ln_pow(LogNorm::zero(), 2).is_zero());
  CHECK_THROWS_AS(ln_pow(LogNorm::zero(), 0), PreconditionFailed);
}

TEST_CASE("ln_compare examples") {
  const auto ctx = single(test_radius());
  CHECK(ln_compare(ln("0", {"0"}), ln("0", {"0"}), ctx) == Ordering::Equal);
  CHECK(ln_compare(ln("1"), ln("0", {"1"}), ctx) == Ordering::Less);
  CHECK(ln_compare(ln("1"), ln("0", {"2"}), ctx) == Ordering::Greater);
  CHECK(ln_compare(LogNorm::zero(), ln("100"), ctx) == Ordering::Less);
  CHECK(ln_compare(ln("0", {"-1"}), LogNorm::zero(), ctx) == Ordering::Greater);
}

TEST_CASE("ln_compare refuses rationally dependent radii at the depth limit") {
  RadiusContext ctx(3, 64);
  ctx.declare(default_radius("a"));
  ctx.declare(RadiusDecl("b", QuadraticSurd::parse("sqrt(2)"), true));
  CHECK_FALSE(ctx.affinely_independent());
  CHECK_THROWS_AS(ctx.check_pairwise_independent(), PreconditionFailed);
  // r_a^2 = r_b exactly, but the exponent vectors differ.
  CHECK_THROWS_AS(ln_compare(ln("0", {"2", "0"}), ln("0", {"0", "1"}), ctx), UndecidableAtDepth);
}

TEST_CASE("independent radii are accepted") {
  RadiusContext ctx(3);
  ctx.declare(default_radius("a"));
  ctx.declare(RadiusDecl("b", QuadraticSurd::parse("(1+sqrt(5))/4"), true));
  CHECK(ctx.affinely_independent());
  CHECK_NOTHROW(ctx.check_pairwise_independent());
  CHECK(ln_compare(ln("0", {"2", "0"}), ln("0", {"0", "1"}), ctx) != Ordering::Equal);
}

TEST_CASE("radius declarations") {
  CHECK_THROWS_AS(RadiusDecl("bad", QuadraticSurd::parse("3/5"), true), PreconditionFailed);
  CHECK_THROWS_AS(RadiusDecl("bad", QuadraticSurd::parse("sqrt(49)/10"), true), PreconditionFailed);
  const RadiusDecl rational("ok", QuadraticSurd::parse("3/5"), false);
  CHECK(rational.interval(8).width() == 0);
  const auto r = default_radius();
  const Interval x = r.interval(200);
  CHECK(x.lo < x.hi);
  CHECK(x.width() <= Rational(1, 2) * 0 + Rational(Integer(1), Integer(1) << 199));
  CHECK(x.lo * x.lo * 2 < 1);
  CHECK(x.hi * x.hi * 2 > 1);
  CHECK(r.below_one());
  CHECK(QuadraticSurd::parse("(1-sqrt(5))/2").enclose(40).hi < 0);
}

TEST_CASE("rational radii compare exactly") {
  const auto ctx = single(RadiusDecl("r", QuadraticSurd::parse("3/5"), false));
  // r^5 = 3^-3 exactly.
  CHECK(ln_compare(ln("0", {"5"}), ln("3"), ctx) == Ordering::Equal);
  CHECK(ln_compare(ln("0", {"5"}), ln("2"), ctx) == Ordering::Less);
}

TEST_CASE("in_value_group_rational examples") {
  CHECK(in_value_group_rational(ln("1/2", {"0"})));
  CHECK_FALSE(in_value_group_rational(ln("0", {"1"})));
  CHECK_FALSE(in_value_group_rational(ln("2", {"3/2"})));
  CHECK_THROWS_AS(in_value_group_rational(LogNorm::zero()), PreconditionFailed);
}

TEST_CASE("compare is a total order compatible with multiplication") {
  const auto ctx = single(default_radius());
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-12, 12);
  auto draw = [&] { return LogNorm::of(Rational(d(rng), 1 + rng() % 3), {Rational(d(rng), 1 + rng() % 2)}); };
  for (int i = 0; i < 300; ++i) {
    const LogNorm a = draw(), b = draw(), c = draw();
    const Ordering ab = ln_compare(a, b, ctx);
    CHECK(ab == (a == b ? Ordering::Equal : ab));
    if (a != b) CHECK(ab != Ordering::Equal);
    CHECK(ln_compare(b, a, ctx) == (ab == Ordering::Less ? Ordering::Greater
                                      : ab == Ordering::Greater ? Ordering::Less : Ordering::Equal));
    CHECK(ln_compare(ln_mul(a, c), ln_mul(b, c), ctx) == ab);
    Rational s(d(rng), 3), t(d(rng), 2);
    s.canonicalize();
    t.canonicalize();
    CHECK(ln_mul(ln_pow(a, s), ln_pow(a, t)) == ln_pow(a, s + t));
    if (ln_less(a, b, ctx) && ln_less(b, c, ctx)) CHECK(ln_less(a, c, ctx));
  }
}

TEST_CASE("rigorous numeric bounds") {
  const auto ctx = single(default_radius());
  // r^-37 = 3^{37/sqrt 2} ~ 3^26.16 ~ 3.1e12
  CHECK(ctx.exceeds(ln("0", {"-37"}), 1e6));
  CHECK(ctx.exceeds(ln("0", {"-37"}), 1e12));
  CHECK_FALSE(ctx.exceeds(ln("0", {"-37"}), 1e13));
  CHECK_FALSE(ctx.exceeds(ln("0", {"-4"}), 1e6));
  CHECK(ctx.approx_log10(ln("0", {"-37"})) == doctest::Approx(37 / std::sqrt(2.0) * std::log10(3.0)));
  CHECK(ctx.exceeds(ln("-13"), 1e6));  // 3^13 = 1594323
  CHECK_FALSE(ctx.exceeds(ln("-12"), 1e6));
}
