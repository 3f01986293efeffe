#pragma once

// A' = A (+) A/J with (a, b)(a', b') = (aa', pi(a) b' + pi(a') b) and the
// max norm. A/J is modelled by representatives in A, a projection pi and a
// quotient seminorm; J = 0 gives the dual numbers A[eps].

#include "tatekit/field.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/radius.hpp"
#include "tatekit/tate_series.hpp"

#include <functional>
#include <memory>
#include <utility>

namespace tatekit {

template <class A>
struct RingNorm;

template <>
struct RingNorm<Scalar> {
  static LogNorm of(const Scalar& x) { return x.norm(); }
  static Scalar zero_like(const Scalar& x) { return Scalar::zero(x.spec()); }
};

template <>
struct RingNorm<TateSeries> {
  static LogNorm of(const TateSeries& x) { return gauss_norm(x).bound; }
  static TateSeries zero_like(const TateSeries& x) { return TateSeries::zero(x.ring_ptr()); }
};

template <class A>
struct SquareZeroElem {
  A a;
  A b;
};

template <class A>
class SquareZeroRing {
 public:
  using Projection = std::function<A(const A&)>;
  using QuotientNorm = std::function<LogNorm(const A&)>;

  // J = 0.
  explicit SquareZeroRing(std::shared_ptr<const RadiusContext> radii)
      : SquareZeroRing(std::move(radii), [](const A& x) { return x; }, [](const A& x) { return RingNorm<A>::of(x); }) {}
  SquareZeroRing(std::shared_ptr<const RadiusContext> radii, Projection project, QuotientNorm quotient_norm)
      : radii_(std::move(radii)), project_(std::move(project)), qnorm_(std::move(quotient_norm)) {}

  const RadiusContext& radii() const { return *radii_; }

  SquareZeroElem<A> make(A a, A b) const { return {std::move(a), project_(b)}; }
  // a -> (a, 0)
  SquareZeroElem<A> section(const A& a) const { return {a, RingNorm<A>::zero_like(a)}; }
  // (0, 1) from a representative of 1.
  SquareZeroElem<A> epsilon(const A& one) const { return {RingNorm<A>::zero_like(one), project_(one)}; }

  SquareZeroElem<A> add(const SquareZeroElem<A>& x, const SquareZeroElem<A>& y) const {
    return {x.a + y.a, project_(x.b + y.b)};
  }
  SquareZeroElem<A> sub(const SquareZeroElem<A>& x, const SquareZeroElem<A>& y) const {
    return {x.a - y.a, project_(x.b - y.b)};
  }
  SquareZeroElem<A> mul(const SquareZeroElem<A>& x, const SquareZeroElem<A>& y) const {
    return {x.a * y.a, project_(project_(x.a) * y.b + project_(y.a) * x.b)};
  }

  LogNorm norm(const SquareZeroElem<A>& x) const { return ln_max(RingNorm<A>::of(x.a), qnorm_(x.b), *radii_); }
  const A& reduction(const SquareZeroElem<A>& x) const { return x.a; }

  bool equal(const SquareZeroElem<A>& x, const SquareZeroElem<A>& y) const {
    return x.a == y.a && project_(x.b) == project_(y.b);
  }

 private:
  std::shared_ptr<const RadiusContext> radii_;
  Projection project_;
  QuotientNorm qnorm_;
};

}  // namespace tatekit
