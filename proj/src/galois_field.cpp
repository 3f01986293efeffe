#include "tatekit/galois_field.hpp"

#include "tatekit/error.hpp"
#include "tatekit/rational.hpp"

#include <sstream>

namespace tatekit {

namespace {

using Digits = std::vector<std::uint32_t>;

Digits decode(std::uint32_t x, std::uint32_t q, std::uint32_t d) {
  Digits out(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    out[i] = x % q;
    x /= q;
  }
  return out;
}

std::uint32_t encode(const Digits& digits, std::uint32_t q) {
  std::uint32_t x = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) x = x * q + *it;
  return x;
}

// Multiply the residue x by z modulo the monic polynomial z^d - sum(tail_i z^i).
std::uint32_t times_z(std::uint32_t x, const Digits& reduction, std::uint32_t q) {
  const auto d = static_cast<std::uint32_t>(reduction.size());
  Digits digits = decode(x, q, d);
  const std::uint32_t top = digits[d - 1];
  for (std::uint32_t i = d - 1; i > 0; --i) digits[i] = digits[i - 1];
  digits[0] = 0;
  for (std::uint32_t i = 0; i < d; ++i) digits[i] = (digits[i] + top * reduction[i]) % q;
  return encode(digits, q);
}

}  // namespace

GaloisField::GaloisField(std::uint32_t q, std::uint32_t size) : q_(q), size_(size), d_(0) {
  if (!is_prime(q)) throw PreconditionFailed("field characteristic must be prime");
  if (size > (1u << 16)) throw CapExceeded("finite fields are limited to 2^16 elements");
  std::uint32_t s = 1;
  while (s < size) {
    s *= q;
    ++d_;
  }
  if (s != size || d_ == 0) throw PreconditionFailed("field size must be a positive power of the characteristic");

  const std::uint32_t order = size_ - 1;
  exp_.assign(2 * order + 1, 0);
  log_.assign(size_, 0);

  if (d_ == 1) {
    // Prime field: find a primitive root.
    for (std::uint32_t g = 1; g < q_; ++g) {
      std::vector<bool> seen(q_, false);
      std::uint64_t x = 1;
      bool ok = true;
      for (std::uint32_t k = 0; k < order; ++k) {
        if (seen[x]) {
          ok = false;
          break;
        }
        seen[x] = true;
        exp_[k] = static_cast<Elem>(x);
        x = x * g % q_;
      }
      if (ok && x == 1) break;
      if (g + 1 == q_) throw PreconditionFailed("no primitive root found");
    }
    if (q_ == 2) exp_[0] = 1;
  } else {
    // Search reductions z^d = sum(tail_i z^i) until z generates the unit group.
    const std::uint32_t candidates = size_;
    bool found = false;
    for (std::uint32_t c = 0; c < candidates && !found; ++c) {
      Digits reduction = decode(c, q_, d_);
      if (reduction[0] == 0) continue;
      std::vector<bool> seen(size_, false);
      std::uint32_t x = 1;
      bool ok = true;
      for (std::uint32_t k = 0; k < order; ++k) {
        if (x == 0 || seen[x]) {
          ok = false;
          break;
        }
        seen[x] = true;
        exp_[k] = x;
        x = times_z(x, reduction, q_);
      }
      found = ok && x == 1;
    }
    if (!found) throw PreconditionFailed("no primitive polynomial found");
  }
  for (std::uint32_t k = 0; k < order; ++k) {
    log_[exp_[k]] = k;
    exp_[k + order] = exp_[k];
  }
}

GaloisField::Elem GaloisField::from_int(std::int64_t n) const {
  return static_cast<Elem>(floor_mod(n, static_cast<std::int64_t>(q_)));
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (q_ == 2) return a ^ b;
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += ((a % q_ + b % q_) % q_) * scale;
    a /= q_;
    b /= q_;
    scale *= q_;
  }
  return out;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (q_ == 2) return a;
  Elem out = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += ((q_ - a % q_) % q_) * scale;
    a /= q_;
    scale *= q_;
  }
  return out;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw DivisionByZero();
  const std::uint32_t order = size_ - 1;
  return exp_[(order - log_[a]) % order];
}

GaloisField::Elem GaloisField::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw DivisionByZero();
    return e == 0 ? 1 : 0;
  }
  const auto order = static_cast<std::int64_t>(size_ - 1);
  const std::int64_t k = floor_mod(static_cast<std::int64_t>(log_[a]) * floor_mod(e, order), order);
  return exp_[k];
}

GaloisField::Elem GaloisField::frobenius_root(Elem a) const {
  // x^{1/q} = x^{q^{d-1}}
  std::int64_t e = 1;
  for (std::uint32_t i = 1; i < d_; ++i) e *= q_;
  return pow(a, e);
}

std::optional<GaloisField::Elem> GaloisField::root(Elem a, std::uint32_t p) const {
  if (a == 0) return Elem{0};
  if (a == 1) return Elem{1};
  for (Elem r = 1; r < size_; ++r)
    if (pow(r, p) == a) return r;
  return std::nullopt;
}

std::string GaloisField::to_string(Elem a) const {
  if (d_ == 1) return std::to_string(a);
  Digits digits = decode(a, q_, d_);
  std::ostringstream out;
  bool first = true;
  for (std::uint32_t i = d_; i-- > 0;) {
    if (digits[i] == 0) continue;
    if (!first) out << "+";
    first = false;
    if (i == 0) {
      out << digits[i];
    } else {
      if (digits[i] != 1) out << digits[i] << "*";
      out << "z";
      if (i > 1) out << "^" << i;
    }
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace tatekit
