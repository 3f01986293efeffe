#pragma once

// Exhaustive search over F_p for c != 0 with every lambda-exponent of c and
// of c*f divisible by p, for tiny degree bounds. Polynomials are maps from
// exponent vectors (t, u_1..u_N, T) to coefficients mod p.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Exps = std::vector<unsigned>;
using PPoly = std::map<Exps, unsigned>;

inline PPoly ppoly_mul(const PPoly& a, const PPoly& b, unsigned p) {
  PPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] = (out[e] + ca * cb) % p;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline bool lambda_divisible(const PPoly& a, std::size_t lambda, unsigned p) {
  for (const auto& [e, c] : a)
    if (e[lambda] % p != 0) return false;
  return true;
}

// True when some nonzero c (tu-degree <= tu, T-degree <= D) works for lambda.
inline bool brute_force_relation(const PPoly& f, std::size_t nvars_total, std::size_t lambda, unsigned p, unsigned tu,
                                 unsigned D) {
  std::vector<Exps> monos;
  Exps cur(nvars_total, 0);
  // every exponent vector over the first nvars_total-1 variables with sum <= tu
  std::vector<Exps> bases{Exps(nvars_total, 0)};
  for (std::size_t v = 0; v + 1 < nvars_total; ++v) {
    std::vector<Exps> next;
    for (const auto& b : bases) {
      unsigned used = 0;
      for (auto x : b) used += x;
      for (unsigned a = 0; used + a <= tu; ++a) {
        auto e = b;
        e[v] = a;
        next.push_back(e);
      }
    }
    bases = std::move(next);
  }
  for (const auto& b : bases) {
    if (b[lambda] % p != 0) continue;
    for (unsigned e = 0; e <= D; ++e) {
      auto m = b;
      m.back() = e;
      monos.push_back(m);
    }
  }
  const std::size_t k = monos.size();
  std::vector<unsigned> digits(k, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < k && ++digits[i] == p) digits[i++] = 0;
    if (i == k) return false;
    PPoly c;
    for (std::size_t j = 0; j < k; ++j)
      if (digits[j]) c[monos[j]] = digits[j];
    if (lambda_divisible(ppoly_mul(c, f, p), lambda, p)) return true;
  }
}

}  // namespace oracle
