#pragma once

#include "tatekit/error.hpp"
#include "tatekit/field.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/tate_series.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tatekit {

// One step of s_m = 1 + g_1 + ... + g_m, h_m = s_m^p - f.
struct RootStep {
  std::size_t m = 0;
  TateSeries g;
  TateSeries h;
  LogNorm norm_g;  // upper bound
  LogNorm norm_h;  // upper bound
  bool identity_holds = false;  // s_m^p = f + h_m up to the folding floor
  bool g_contracts = false;     // |g_m| <= |g_1|^m
  bool h_contracts = false;     // |h_m| <= |g_1|^(m+1)
};

struct RootTrace {
  std::uint32_t p = 0;
  TateSeries target;
  LogNorm norm_g1;         // |g_1|
  bool g1_matches = false;  // |g_1| = |f - 1|
  LogNorm tolerance;
  std::vector<RootStep> steps;
  TateSeries result;
  bool root_near_one = false;  // |result - 1| <= |f - 1|
  bool certified = false;
};

class MaxStepsExceeded : public Error {
 public:
  explicit MaxStepsExceeded(RootTrace trace)
      : Error("root iteration did not reach its tolerance"), trace_(std::move(trace)) {}
  const RootTrace& trace() const { return trace_; }

 private:
  RootTrace trace_;
};

struct RootOptions {
  std::size_t max_steps = 64;
  // Defaults to |g_1|^40.
  std::optional<LogNorm> tolerance;
};

// The iteration g_1 = (f - 1)/p, g_{m+1} = -h_m/p, for |f - 1| < 1 and |p| = 1.
//
// Terms whose norm is at most the tolerance are folded into tail bounds, so
// every certified identity holds up to that floor. Over Q_q the coefficients
// are carried to the working precision implied by the tolerance: the exact
// rational iteration doubles the size of its denominators at every step.
RootTrace pth_root_near_one(const TateSeries& f, std::uint32_t p, const RootOptions& options = {});

struct ScalarRoot {
  Scalar root;
  RootTrace trace;
};
ScalarRoot pth_root_near_one(const Scalar& f, std::uint32_t p, const RootOptions& options = {});

// g_root * (g^-1 f)^(1/p) for |f - g| < |f|, with |root - g_root| < |root| checked.
struct NearRoot {
  Scalar root;
  RootTrace trace;
  bool close_to_center = false;
};
NearRoot pth_root_near(const Scalar& f, const Scalar& g, const Scalar& g_root, std::uint32_t p,
                       const RootOptions& options = {});

struct SeriesNearRoot {
  TateSeries root;
  RootTrace trace;
  bool close_to_center = false;
};
// g must be a single exact term with a known root.
SeriesNearRoot pth_root_near(const TateSeries& f, const TateSeries& g, const TateSeries& g_root, std::uint32_t p,
                             const RootOptions& options = {});

// [f, f^(1/p), ..., f^(1/p^E)] with (x_{e+1})^p = x_e.
struct RootTower {
  std::uint32_t p = 0;
  std::vector<Scalar> elements;
  std::size_t depth() const { return elements.empty() ? 0 : elements.size() - 1; }
};

RootTower build_tower(const Scalar& f, std::uint32_t p, std::size_t depth, const RootOptions& options = {});
bool verify_tower(const RootTower& tower);

}  // namespace tatekit
