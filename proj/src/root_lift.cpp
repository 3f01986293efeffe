#include "tatekit/root_lift.hpp"

#include <memory>

namespace tatekit {

namespace {

constexpr std::int64_t kGuardDigits = 4;

std::int64_t ceil_to_int(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

SeriesRingPtr working_ring(const SeriesRing& ring, const LogNorm& tolerance) {
  std::int64_t digits = ring.spec().precision_cap();
  if (!tolerance.is_zero()) {
    // q^-digits must sit below the tolerance, radius factors included.
    const Interval log_tol = ring.radii().log_interval(tolerance, 32);
    digits = std::max(digits, ceil_to_int(-log_tol.lo) + kGuardDigits);
  }
  if (digits == ring.spec().precision_cap()) return nullptr;
  return std::make_shared<SeriesRing>(ring.spec().with_precision(digits), ring.radii_ptr(), ring.radius_ids(),
                                      ring.kind(), ring.support_cap());
}

SeriesRingPtr constant_ring(const FieldSpec& spec) {
  auto radii = std::make_shared<RadiusContext>(spec.residue_prime());
  radii->declare(default_radius());
  return std::make_shared<SeriesRing>(spec, radii, std::vector<std::string>{"r1"}, SeriesKind::Power);
}

// The constant coefficient, with digits below the tail bound dropped.
Scalar constant_of(const TateSeries& x) {
  Scalar c = x.coefficient(Exponent(x.ring().nvars(), 0));
  if (x.tail().is_zero() || c.is_zero()) return c;
  const std::int64_t known = ceil_to_int(x.tail().base_exp());
  return known > c.val() ? c.truncated_to(known) : c;
}

}  // namespace

RootTrace pth_root_near_one(const TateSeries& f, std::uint32_t p, const RootOptions& options) {
  const SeriesRing& ring = f.ring();
  const RadiusContext& radii = ring.radii();
  if (!check_aux_prime(ring.spec(), p)) throw PreconditionFailed("p is not a unit in the base field");
  const TateSeries one = TateSeries::one(f.ring_ptr());
  const NormEstimate dist = gauss_norm(f - one);
  if (!ln_less(dist.bound, LogNorm::identity(), radii)) throw PreconditionFailed("|f - 1| < 1 does not hold");

  RootTrace trace{p, f, dist.bound, true, LogNorm::zero(), {}, one, true, false};
  if ((f - one).is_zero()) {
    TateSeries zero = TateSeries::zero(f.ring_ptr());
    trace.norm_g1 = LogNorm::zero();
    trace.steps.push_back({1, zero, zero, LogNorm::zero(), LogNorm::zero(), true, true, true});
    trace.certified = true;
    return trace;
  }

  const LogNorm tol = options.tolerance ? *options.tolerance : ln_pow(dist.bound, 40);
  trace.tolerance = tol;
  SeriesRingPtr work = working_ring(ring, tol);
  if (!work) work = f.ring_ptr();
  const TateSeries fw = f.rebased(work);
  const TateSeries wone = TateSeries::one(work);
  const Scalar inv_p = Scalar::from_int(work->spec(), p).inverse();

  TateSeries g = (fw - wone).scaled(inv_p);
  trace.norm_g1 = gauss_norm(g).bound;
  trace.g1_matches = gauss_norm(g).exact && dist.exact && trace.norm_g1 == dist.value;
  TateSeries s = wone + g;
  bool all_hold = trace.g1_matches;
  for (std::size_t m = 1;; ++m) {
    const TateSeries sp = s.pow(p);
    const TateSeries h = (sp - fw).folded_below(tol);
    RootStep step{m, g.rebased(f.ring_ptr()), h.rebased(f.ring_ptr()), gauss_norm(g).bound, gauss_norm(h).bound,
                  false, false, false};
    step.identity_holds = ln_less_equal(gauss_norm(sp - (fw + h)).bound, tol, radii);
    step.g_contracts = ln_less_equal(step.norm_g, ln_pow(trace.norm_g1, static_cast<long>(m)), radii);
    step.h_contracts = ln_less_equal(step.norm_h, ln_pow(trace.norm_g1, static_cast<long>(m + 1)), radii);
    all_hold = all_hold && step.identity_holds && step.g_contracts && step.h_contracts;
    const bool done = ln_less_equal(step.norm_h, tol, radii);
    trace.steps.push_back(std::move(step));
    if (done) break;
    if (m >= options.max_steps) {
      trace.result = s.with_tail(ln_max(s.tail(), trace.steps.back().norm_h, radii)).rebased(f.ring_ptr());
      throw MaxStepsExceeded(std::move(trace));
    }
    g = (-h).scaled(inv_p);
    s = s + g;
  }
  trace.root_near_one = ln_less_equal(gauss_norm(s - wone).bound, dist.bound, radii);
  // s^p = f + h with |h| <= tol, so the true root is s up to |h|.
  trace.result = s.with_tail(ln_max(s.tail(), trace.steps.back().norm_h, radii)).rebased(f.ring_ptr());
  trace.certified = all_hold && trace.root_near_one;
  return trace;
}

ScalarRoot pth_root_near_one(const Scalar& f, std::uint32_t p, const RootOptions& options) {
  const SeriesRingPtr ring = constant_ring(f.spec());
  if (f.is_exact()) {
    RootTrace trace = pth_root_near_one(TateSeries::constant(ring, f), p, options);
    Scalar root = constant_of(trace.result);
    return {std::move(root), std::move(trace)};
  }
  // An inexact f fixes its root only to the same absolute precision (p is a
  // unit and |root| = 1), so the iteration runs on the known digits and stops
  // at that floor.
  const std::int64_t known = *f.absolute_precision();
  const LogNorm floor = LogNorm::of(known);
  const TateSeries fe = TateSeries::constant(ring, f.as_exact());
  RootOptions clamped = options;
  const LogNorm wanted = options.tolerance ? *options.tolerance : ln_pow(gauss_norm(fe - TateSeries::one(ring)).bound, 40);
  clamped.tolerance = ln_max(wanted, floor, ring->radii());
  RootTrace trace = pth_root_near_one(fe, p, clamped);
  Scalar root = constant_of(trace.result).truncated_to(known);
  return {std::move(root), std::move(trace)};
}

NearRoot pth_root_near(const Scalar& f, const Scalar& g, const Scalar& g_root, std::uint32_t p,
                       const RootOptions& options) {
  if (g.is_zero() || g_root.pow(p) != g) throw PreconditionFailed("g_root is not a p-th root of g");
  const Scalar diff = f - g;
  if (f.is_zero() || (!diff.is_zero() && !(diff.val() > f.val()))) {
    throw PreconditionFailed("|f - g| < |f| does not hold");
  }
  ScalarRoot near = pth_root_near_one(f / g, p, options);
  Scalar root = g_root * near.root;
  const Scalar gap = root - g_root;
  const bool close = gap.is_zero() || gap.val() > root.val();
  return {std::move(root), std::move(near.trace), close};
}

SeriesNearRoot pth_root_near(const TateSeries& f, const TateSeries& g, const TateSeries& g_root, std::uint32_t p,
                             const RootOptions& options) {
  const RadiusContext& radii = f.ring().radii();
  if (g_root.pow(p) != g) throw PreconditionFailed("g_root is not a p-th root of g");
  const NormEstimate fn = gauss_norm(f);
  if (!fn.exact || !ln_less(gauss_norm(f - g).bound, fn.value, radii)) {
    throw PreconditionFailed("|f - g| < |f| does not hold");
  }
  RootTrace trace = pth_root_near_one(f * g.inverse(), p, options);
  TateSeries root = g_root * trace.result;
  const bool close = ln_less(gauss_norm(root - g_root).bound, gauss_norm(root).value, radii);
  return {std::move(root), std::move(trace), close};
}

RootTower build_tower(const Scalar& f, std::uint32_t p, std::size_t depth, const RootOptions& options) {
  if (!check_aux_prime(f.spec(), p)) throw PreconditionFailed("p is not a unit in the base field");
  RootTower tower{p, {f}};
  for (std::size_t e = 1; e <= depth; ++e) {
    const Scalar& prev = tower.elements.back();
    if (prev.is_zero()) throw TowerObstruction(e, "zero has no compatible root system of units");
    if (prev.val() % static_cast<std::int64_t>(p) != 0) {
      throw TowerObstruction(e, "valuation " + std::to_string(prev.val()) + " is not divisible by " + std::to_string(p));
    }
    const auto rc = leading_recentering(prev, p);
    if (!rc) throw TowerObstruction(e, "leading coefficient has no p-th root in the residue field");
    NearRoot nr = pth_root_near(prev, rc->center, rc->center_root, p, options);
    if (!nr.trace.certified || !nr.close_to_center) throw TowerObstruction(e, "root iteration was not certified");
    tower.elements.push_back(std::move(nr.root));
  }
  return tower;
}

bool verify_tower(const RootTower& tower) {
  if (tower.elements.empty() || tower.p < 2) return false;
  for (std::size_t e = 0; e + 1 < tower.elements.size(); ++e) {
    const Scalar& a = tower.elements[e];
    const Scalar& b = tower.elements[e + 1];
    if (a.spec() != b.spec()) return false;
    try {
      if (b.pow(tower.p) != a) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace tatekit
