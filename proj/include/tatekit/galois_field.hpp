#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tatekit {

// The finite field F_{q^d}, q prime, d >= 1, with q^d <= 2^16.
//
// Elements are encoded as integers in [0, q^d) whose base-q digits are the
// coefficients of a polynomial in the generator z modulo a primitive
// polynomial of degree d. Multiplication goes through log/exp tables.
class GaloisField {
 public:
  using Elem = std::uint32_t;

  GaloisField(std::uint32_t q, std::uint32_t size);

  std::uint32_t characteristic() const { return q_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t degree() const { return d_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem generator() const { return d_ == 1 ? exp_[1] : q_; }
  Elem from_int(std::int64_t n) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::int64_t e) const;

  // Inverse Frobenius x -> x^{1/q}; every element of a finite field has one.
  Elem frobenius_root(Elem a) const;
  // Smallest encoding r with r^p = a, if any.
  std::optional<Elem> root(Elem a, std::uint32_t p) const;

  bool in_prime_field(Elem a) const { return a < q_; }
  std::string to_string(Elem a) const;

 private:
  std::uint32_t q_;
  std::uint32_t size_;
  std::uint32_t d_;
  std::vector<Elem> exp_;          // exp_[k] = g^k, k in [0, 2(size-1))
  std::vector<std::uint32_t> log_; // log_[x] for x != 0
};

}  // namespace tatekit
