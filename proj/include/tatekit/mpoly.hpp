#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tatekit {

// Sparse multivariate polynomial over the prime field F_p.
//
// Terms are kept in lexicographically descending monomial order, so the
// representation is canonical and iteration order is deterministic.
class MPoly {
 public:
  using Monomial = std::vector<std::uint32_t>;
  using Terms = std::map<Monomial, std::uint32_t, std::greater<Monomial>>;

  MPoly() = default;
  MPoly(std::uint32_t p, std::size_t nvars) : p_(p), nvars_(nvars) {}

  static MPoly constant(std::uint32_t p, std::size_t nvars, std::int64_t c);
  static MPoly variable(std::uint32_t p, std::size_t nvars, std::size_t index, std::uint32_t power = 1);
  static MPoly monomial(std::uint32_t p, Monomial exps, std::uint32_t coeff);

  std::uint32_t prime() const { return p_; }
  std::size_t num_vars() const { return nvars_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::uint32_t constant_term() const;
  std::uint32_t degree(std::size_t var) const;
  std::uint32_t total_degree() const;
  std::uint32_t leading_coefficient() const;
  std::uint32_t coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, std::uint32_t c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(std::uint32_t c) const;
  MPoly pow(std::uint32_t e) const;

  bool operator==(const MPoly& o) const { return p_ == o.p_ && nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly monic() const;

  // Quotient of an exact division; throws PreconditionFailed on a remainder.
  static MPoly divexact(const MPoly& a, const MPoly& b);
  // Monic greatest common divisor (zero only when both inputs are zero).
  static MPoly gcd(const MPoly& a, const MPoly& b);

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::uint32_t p_ = 2;
  std::size_t nvars_ = 0;
  Terms terms_;
};

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

}  // namespace tatekit
