#pragma once

#include "tatekit/field.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/mpoly.hpp"
#include "tatekit/square_zero.hpp"
#include "tatekit/tate_series.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tatekit {

// i_1 = 2, i_{j+1} = j (1 + i_j) + 1.
struct SparseSpec {
  std::vector<std::int64_t> indices;
  std::size_t terms() const { return indices.size(); }
};

SparseSpec sparse_indices(std::size_t m);

// sum_{j <= m} T^{i_j}, and the element it truncates: the same polynomial
// with tail bound r^{i_{m+1}}.
struct SparseSeries {
  SparseSpec spec;
  TateSeries poly;
  LogNorm ideal_tail;
  std::int64_t next_index = 0;  // i_{m+1}
  TateSeries ideal() const { return poly.with_tail(ideal_tail); }
};

// The ring must be a one-variable power series ring whose radius is declared
// irrational and below one.
SparseSeries sparse_series(std::size_t m, const SeriesRingPtr& ring);

// P(T, F) in k[T][F], standing for P(T, f).
class PolyInTF {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;  // (T-degree, F-degree)

  explicit PolyInTF(FieldSpec spec) : spec_(std::move(spec)) {}
  static PolyInTF constant(const Scalar& c);
  static PolyInTF t(const FieldSpec& spec);
  static PolyInTF f(const FieldSpec& spec);
  static PolyInTF monomial(const Scalar& c, std::int64_t t_degree, std::int64_t f_degree);
  // A polynomial in T given as a series with finite support.
  static PolyInTF from_t_polynomial(const TateSeries& g);

  const FieldSpec& spec() const { return spec_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t t_degree() const;
  std::int64_t f_degree() const;

  friend PolyInTF operator+(const PolyInTF& a, const PolyInTF& b);
  friend PolyInTF operator-(const PolyInTF& a, const PolyInTF& b);
  friend PolyInTF operator*(const PolyInTF& a, const PolyInTF& b);
  PolyInTF operator-() const;
  PolyInTF scaled(const Scalar& c) const;
  PolyInTF pow(std::uint32_t e) const;
  // d/dF
  PolyInTF derivative_f() const;
  TateSeries evaluate(const TateSeries& f) const;

  bool operator==(const PolyInTF& o) const;
  std::string to_string(const std::string& f_name = "F") const;

 private:
  void add_term(const Key& k, const Scalar& c);

  FieldSpec spec_;
  std::map<Key, Scalar> terms_;
};

// Search for h_0 X^n + ... + h_n with deg h_i <= d_max killing f, by linear
// algebra on the T-coefficients up to the faithful degree.
struct NonIntegralResult {
  explicit NonIntegralResult(TateSeries series) : f(std::move(series)) {}

  TateSeries f;
  std::int64_t n_max = 0;
  std::int64_t d_max = 0;
  std::int64_t faithful_degree = 0;  // equations cover T^0 .. T^faithful_degree
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::string method;           // "modular-rank" or "exact-elimination"
  std::uint32_t modulus = 0;    // for the modular route
  bool non_integral = false;    // only the trivial solution
  std::optional<PolyInTF> relation;  // in (T, X) when one exists
};

// For an exact polynomial f: every coefficient of the relation is an equation.
NonIntegralResult nonintegral_certificate(const TateSeries& f, std::int64_t n_max, std::int64_t d_max);
// For a sparse truncation: requires n_max * i_m + d_max < i_{m+1}.
NonIntegralResult nonintegral_certificate(const SparseSeries& f, std::int64_t n_max, std::int64_t d_max);

// delta(P(T, f)) = (dP/dF)(T, f), defined once f is certified transcendental at
// degrees covering P.
TateSeries deriv_eval(const PolyInTF& P, const TateSeries& f, const NonIntegralResult& certificate);
// g -> (g, delta g) in the dual numbers over the ring of f.
SquareZeroElem<TateSeries> phi(const PolyInTF& P, const TateSeries& f, const NonIntegralResult& certificate);

struct UnboundedRow {
  std::size_t n = 0;
  std::int64_t next_index = 0;  // i_{n+1}
  LogNorm g_norm;               // |f - f_n|
  bool g_norm_exact = false;
  LogNorm phi_norm;             // |phi(f - f_n)|
  LogNorm ratio;
  double log10_ratio = 0;       // display only
  bool exceeds_bound = false;   // rigorous
};

struct UnboundedTable {
  explicit UnboundedTable(NonIntegralResult cert) : transcendence(std::move(cert)) {}

  SparseSpec spec;
  std::string radius_id;
  double bound = 0;
  std::vector<UnboundedRow> rows;
  NonIntegralResult transcendence;
  bool strictly_increasing = false;
  std::optional<std::size_t> first_exceeding;
  bool unbounded = false;
};

// Rows n = 1 .. m-1 for g_n = f - truncate(f, i_n), f the m-term sparse series.
UnboundedTable unboundedness_table(std::size_t m, const SeriesRingPtr& ring, double bound);

// sum_{i < m} x_{lambda_i} T^i over F_p(u_1..u_N)((t)) with x_{lambda_0} = t,
// x_{lambda_i} = u_i, then products of generators with exponents below p.
TateSeries pbasis_series(std::size_t m, const SeriesRingPtr& ring);
std::vector<std::string> pbasis_monomial_names(const FieldSpec& spec, std::size_t m);

struct PIndependenceBounds {
  std::uint32_t tu_degree = 2;
  std::uint32_t t_degree = 4;
  std::size_t max_unknowns = 4096;
};

// For one generator lambda: is there c != 0, with lambda-exponents divisible by
// p, such that c f has all lambda-exponents divisible by p?
struct GeneratorCheck {
  std::string generator;
  bool occurs_in_f = false;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  bool trivial = false;
  std::optional<std::string> relation;
};

struct PIndependenceResult {
  explicit PIndependenceResult(TateSeries series) : f(std::move(series)) {}

  TateSeries f;
  PIndependenceBounds bounds;
  std::vector<GeneratorCheck> checks;
  bool independent = false;
  std::optional<std::string> witness;
};

PIndependenceResult p_independence_certificate(const TateSeries& f, const PIndependenceBounds& bounds = {});

}  // namespace tatekit
