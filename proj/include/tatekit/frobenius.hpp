#pragma once

// p-basis decomposition over F_{p^d}((t)): with basis 1, t, ..., t^{p-1}
// every a is sum_i a_i^p t^i, and a series splits as
// f = sum_{e,i} f_{e,i}^p x_i T^e.

#include "tatekit/field.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/tate_series.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace tatekit {

class PBasis {
 public:
  explicit PBasis(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t prime() const { return spec_.residue_prime(); }
  std::size_t size() const { return elements_.size(); }
  const Scalar& element(std::size_t i) const { return elements_.at(i); }
  std::string name(std::size_t i) const;

 private:
  FieldSpec spec_;
  std::vector<Scalar> elements_;
};

struct ScalarParts {
  std::vector<Scalar> coords;
  // Absolute precision of each coordinate; nullopt when exact. A coordinate
  // with no known digit is returned as 0 with its precision recorded here.
  std::vector<std::optional<std::int64_t>> abs_prec;
};

ScalarParts scalar_decompose(const Scalar& a, const PBasis& basis);
// sum_i a_i^p x_i
Scalar scalar_reconstruct(const std::vector<Scalar>& coords, const PBasis& basis);

struct NormBoundReport {
  LogNorm norm;            // |a|
  LogNorm weighted_max;    // max_i |a_i^p x_i|
  LogNorm plain_max;       // max_i |a_i^p|
  LogNorm observed;        // two-sided ratio of |a| and weighted_max, >= 1
  LogNorm declared;
  bool pass = false;
};

// C is a power of q given as a norm value >= 1; the default is 1.
NormBoundReport verify_norm_bound(const Scalar& a, const PBasis& basis, const LogNorm& declared = LogNorm::identity());

struct PartKey {
  Exponent e;
  std::size_t i = 0;

  bool operator<(const PartKey& o) const { return std::tie(e, i) < std::tie(o.e, o.i); }
  bool operator==(const PartKey& o) const { return e == o.e && i == o.i; }
  // "e,i", with the components of e joined by ':' for several variables.
  std::string to_string() const;
};

using SeriesParts = std::map<PartKey, TateSeries>;

// Every key (e in {0..p-1}^n, i < p) is present; parts live in f's ring.
// A recorded tail tau of f becomes tau^{1/p} |x_i|^{-1/p} r^{-e/p} on f_{e,i}.
SeriesParts series_decompose(const TateSeries& f, const PBasis& basis);
// sum_nu c_nu^p T^{p nu}
TateSeries frobenius_twist(const TateSeries& g);
TateSeries series_reconstruct(const SeriesParts& parts, const PBasis& basis, const SeriesRingPtr& ring);

// f' == sum_{e,i} frobenius_twist(f_{e,i}) x_i e T^{e-1} in the given variable.
bool derivative_span_witness(const TateSeries& f, const PBasis& basis, std::size_t var = 0);

// |a_{p nu'+e, i}^p x_i| r^{p nu'} <= C |a_{p nu'+e}| r^{p nu'+e} r^{-e} for every stored term.
bool termwise_bound_holds(const TateSeries& f, const PBasis& basis, const LogNorm& declared = LogNorm::identity());

}  // namespace tatekit
