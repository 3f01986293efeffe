#pragma once

#include "tatekit/lognorm.hpp"
#include "tatekit/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tatekit {

struct Interval {
  Rational lo;
  Rational hi;

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rational width() const { return hi - lo; }
};

// The real number (a + b*sqrt(d)) / c with c > 0 and d >= 0.
struct QuadraticSurd {
  Integer a = 0;
  Integer b = 0;
  Integer d = 0;
  Integer c = 1;

  static QuadraticSurd rational(const Rational& x);
  static QuadraticSurd parse(const std::string& text);

  bool is_rational() const;
  // Enclosure of width at most 2^-bits (exact when the surd is rational).
  Interval enclose(std::size_t bits) const;
  std::string to_string() const;
};

// A formal radius r, declared through x = log_q(1/r). x > 0 means r < 1.
class RadiusDecl {
 public:
  RadiusDecl(std::string id, QuadraticSurd log_inv_radius, bool asserts_irrational);

  const std::string& id() const { return id_; }
  const QuadraticSurd& log_inv_radius() const { return surd_; }
  bool asserts_irrational() const { return irrational_; }
  bool below_one() const;
  Interval interval(std::size_t bits) const { return surd_.enclose(bits); }

 private:
  std::string id_;
  QuadraticSurd surd_;
  bool irrational_;
};

// The radius generators of a session over a base field with residue prime q.
class RadiusContext {
 public:
  explicit RadiusContext(std::uint32_t q, std::size_t max_depth = 256) : q_(q), max_depth_(max_depth) {}

  std::uint32_t residue_prime() const { return q_; }
  std::size_t max_depth() const { return max_depth_; }
  void set_max_depth(std::size_t depth) { max_depth_ = depth; }

  std::size_t declare(RadiusDecl decl);
  std::size_t size() const { return decls_.size(); }
  const RadiusDecl& at(std::size_t j) const { return decls_.at(j); }
  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;

  // Enclosure of log_q of the norm value; the value must not be ZERO.
  Interval log_interval(const LogNorm& x, std::size_t bits) const;
  // Rigorous check that the value exceeds bound (> 0), refining up to max_depth.
  bool exceeds(const LogNorm& x, double bound) const;
  // Floating-point log10 of the value, for display only.
  double approx_log10(const LogNorm& x) const;

  // Declarations that claim irrationality are pairwise rationally independent
  // of each other and of 1. Throws PreconditionFailed otherwise.
  void check_pairwise_independent() const;
  // Exact check that {1, x_1, ..., x_g} is linearly independent over Q for the
  // irrational declarations, which makes every comparison decidable.
  bool affinely_independent() const;

 private:
  std::uint32_t q_;
  std::size_t max_depth_;
  std::vector<RadiusDecl> decls_;
};

// r = q^{-1/sqrt 2}: log_q(1/r) = 1/sqrt(2).
RadiusDecl default_radius(const std::string& id = "r1");
// log_q(1/r) = sqrt(3601)/100 = 0.60008..., an irrational just above 0.6.
RadiusDecl test_radius(const std::string& id = "rtest");

}  // namespace tatekit
