#pragma once

#include "tatekit/field.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/radius.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tatekit {

enum class SeriesKind { Power, Laurent };

std::string to_string(SeriesKind kind);

using Exponent = std::vector<std::int64_t>;

// The ambient algebra k{r^-1 T} (Power) or k{r^-1 T, r T^-1} (Laurent) in
// n variables, each attached to a named radius generator.
class SeriesRing {
 public:
  SeriesRing(FieldSpec spec, std::shared_ptr<const RadiusContext> radii, std::vector<std::string> radius_ids,
             SeriesKind kind, std::size_t support_cap = 4096);

  const FieldSpec& spec() const { return spec_; }
  const RadiusContext& radii() const { return *radii_; }
  const std::shared_ptr<const RadiusContext>& radii_ptr() const { return radii_; }
  const std::vector<std::string>& radius_ids() const { return ids_; }
  std::size_t nvars() const { return ids_.size(); }
  std::size_t generator(std::size_t var) const { return gens_.at(var); }
  SeriesKind kind() const { return kind_; }
  std::size_t support_cap() const { return cap_; }

  // r^nu
  LogNorm monomial_norm(const Exponent& nu) const;
  bool admits(const Exponent& nu) const;
  bool compatible(const SeriesRing& o) const;

 private:
  FieldSpec spec_;
  std::shared_ptr<const RadiusContext> radii_;
  std::vector<std::string> ids_;
  std::vector<std::size_t> gens_;
  SeriesKind kind_;
  std::size_t cap_;
};

using SeriesRingPtr = std::shared_ptr<const SeriesRing>;

// A norm value together with whether it is the true Gauss norm of every
// completion of the truncation (the stored maximum beats the tail bound).
struct NormEstimate {
  LogNorm value;
  bool exact = true;
  // max(value, tail): an upper bound in every case.
  LogNorm bound;
};

// Finite support plus a bound on the norm of everything omitted.
class TateSeries {
 public:
  using Terms = std::map<Exponent, Scalar>;

  explicit TateSeries(SeriesRingPtr ring);
  TateSeries(SeriesRingPtr ring, Terms terms, LogNorm tail = LogNorm::zero());

  static TateSeries zero(SeriesRingPtr ring) { return TateSeries(std::move(ring)); }
  static TateSeries constant(SeriesRingPtr ring, const Scalar& c);
  static TateSeries one(SeriesRingPtr ring);
  static TateSeries monomial(SeriesRingPtr ring, const Scalar& c, Exponent nu);
  // T^k in a single-variable ring.
  static TateSeries power_of_t(SeriesRingPtr ring, std::int64_t k);
  // T_var (0-based).
  static TateSeries variable(SeriesRingPtr ring, std::size_t var);

  const SeriesRing& ring() const { return *ring_; }
  const SeriesRingPtr& ring_ptr() const { return ring_; }
  const FieldSpec& spec() const { return ring_->spec(); }
  const Terms& terms() const { return terms_; }
  const LogNorm& tail() const { return tail_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty() && tail_.is_zero(); }
  // Polynomial with a ZERO tail.
  bool is_exact() const { return tail_.is_zero(); }
  Scalar coefficient(const Exponent& nu) const;
  std::int64_t max_degree() const;

  TateSeries operator-() const;
  TateSeries& operator+=(const TateSeries& o) { return *this = *this + o; }
  TateSeries& operator-=(const TateSeries& o) { return *this = *this - o; }
  TateSeries& operator*=(const TateSeries& o) { return *this = *this * o; }
  friend TateSeries operator+(const TateSeries& a, const TateSeries& b);
  friend TateSeries operator-(const TateSeries& a, const TateSeries& b);
  friend TateSeries operator*(const TateSeries& a, const TateSeries& b);
  TateSeries scaled(const Scalar& c) const;
  TateSeries pow(std::uint64_t e) const;
  // Inverse of a single exact term c T^nu (Laurent kind, or nu = 0).
  TateSeries inverse() const;
  // Formal partial derivative in variable var.
  TateSeries derivative(std::size_t var = 0) const;
  TateSeries with_tail(const LogNorm& tail) const;
  // Moves every term of norm <= floor into the tail bound.
  TateSeries folded_below(const LogNorm& floor) const;
  // The same terms in another ring over the same kind of field (precision
  // caps may differ); coefficients are re-read in the target field.
  TateSeries rebased(SeriesRingPtr ring) const;

  // Same stored terms (compared coefficientwise) and structurally equal tails.
  bool operator==(const TateSeries& o) const;
  bool operator!=(const TateSeries& o) const { return !(*this == o); }
  // f - g has no stored term and its tail is at most the given bound.
  bool agrees_within(const TateSeries& o, const LogNorm& bound) const;

  std::string to_string() const;

 private:
  void prune();

  SeriesRingPtr ring_;
  Terms terms_;
  LogNorm tail_ = LogNorm::zero();
};

// ts_arith
enum class SeriesOp { Add, Mul };
TateSeries ts_arith(const TateSeries& f, const TateSeries& g, SeriesOp op);

// max over stored terms of |a_nu| r^nu.
NormEstimate gauss_norm(const TateSeries& f);
// The spectral radius of a Laurent series, computed as max |a_nu| r^nu.
NormEstimate spectral_radius_laurent(const TateSeries& f);
// gauss_norm(f^l)^(1/l) for an exact f.
LogNorm spectral_power_estimate(const TateSeries& f, std::uint64_t l);

struct Truncation {
  TateSeries head;  // terms of total degree <= D, ZERO tail
  TateSeries rest;  // f - head
};
// Polynomial part of total degree <= D; nullopt means no bound.
Truncation truncate(const TateSeries& f, std::optional<std::int64_t> degree_bound);

}  // namespace tatekit
