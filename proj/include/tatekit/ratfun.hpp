#pragma once

#include "tatekit/mpoly.hpp"

#include <string>
#include <vector>

namespace tatekit {

// Element of F_p(u_1, ..., u_N) in canonical form: gcd(num, den) = 1 and den monic.
class RatFun {
 public:
  RatFun() = default;
  RatFun(std::uint32_t p, std::size_t nvars) : num_(p, nvars), den_(MPoly::constant(p, nvars, 1)) {}
  explicit RatFun(MPoly num);
  RatFun(MPoly num, MPoly den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  std::uint32_t prime() const { return num_.prime(); }
  std::size_t num_vars() const { return num_.num_vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  RatFun operator-() const { return RatFun(-num_, den_); }
  RatFun inverse() const;

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  std::string to_string() const;
  static std::vector<std::string> variable_names(std::size_t nvars);

 private:
  MPoly num_;
  MPoly den_;
};

}  // namespace tatekit
