#pragma once

// Independent Gauss-norm oracle for one-variable series, by dense
// convolution and a floating-point argmin of v(a_nu) + x * nu, where
// x = log_q(1/r) is irrational (so the minimiser is unique).

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

namespace oracle {

struct NormPoint {
  bool zero = true;
  std::int64_t v = 0;   // q-exponent
  std::int64_t nu = 0;  // radius exponent
};

inline std::int64_t qval(mpq_class x, unsigned long q) {
  std::int64_t v = 0;
  mpz_class n = x.get_num(), d = x.get_den();
  while (n % q == 0) { n /= q; ++v; }
  while (d % q == 0) { d /= q; --v; }
  return v;
}

// Q_q series: nu -> rational coefficient.
using RationalSeries = std::map<std::int64_t, mpq_class>;

inline RationalSeries multiply(const RationalSeries& a, const RationalSeries& b) {
  RationalSeries out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out[i + j] += x * y;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline NormPoint gauss(const RationalSeries& a, unsigned long q, double x) {
  NormPoint best;
  double best_log = 0;
  for (const auto& [nu, c] : a) {
    const std::int64_t v = qval(c, q);
    const double l = static_cast<double>(v) + x * static_cast<double>(nu);
    if (best.zero || l < best_log) {
      best = {false, v, nu};
      best_log = l;
    }
  }
  return best;
}

// F_2((t)) series: the set of (t-exponent, T-exponent) with coefficient 1.
using BinarySeries = std::set<std::pair<std::int64_t, std::int64_t>>;

inline BinarySeries multiply(const BinarySeries& a, const BinarySeries& b) {
  BinarySeries out;
  for (const auto& [k1, n1] : a)
    for (const auto& [k2, n2] : b) {
      const std::pair<std::int64_t, std::int64_t> key{k1 + k2, n1 + n2};
      if (!out.erase(key)) out.insert(key);
    }
  return out;
}

inline NormPoint gauss(const BinarySeries& a, double x) {
  NormPoint best;
  double best_log = 0;
  for (const auto& [k, nu] : a) {
    const double l = static_cast<double>(k) + x * static_cast<double>(nu);
    if (best.zero || l < best_log) {
      best = {false, k, nu};
      best_log = l;
    }
  }
  return best;
}

}  // namespace oracle
