#pragma once

// Machine-checkable verdict records. The params object is self-contained
// (field, radius, inputs, bounds), so recheck() can recompute the verdict and
// witness from it alone.

#include "tatekit/deriv_lab.hpp"
#include "tatekit/json_io.hpp"

#include <string>

namespace tatekit {

enum class CertificateKind { NonIntegral, PIndependent, Unbounded };

std::string to_string(CertificateKind kind);
CertificateKind certificate_kind_from_string(const std::string& s);

struct Certificate {
  CertificateKind kind = CertificateKind::NonIntegral;
  std::string verdict;  // NON_INTEGRAL / RELATION_FOUND, P_INDEPENDENT / P_DEPENDENT, UNBOUNDED / NOT_UNBOUNDED
  bool positive = false;
  std::string statement;
  Json params;
  Json witness;
};

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json nonintegral_witness(const NonIntegralResult& r);
Json unbounded_witness(const UnboundedTable& t, const RadiusContext& radii);
Json pindependence_witness(const PIndependenceResult& r);

// params:
//   NonIntegral   {field, radius, n_max, d_max, and sparse_terms or series}
//   Unbounded     {field, radius, terms, bound}
//   PIndependent  {field, radius, tu_degree, t_degree, max_unknowns, and pbasis_terms or series}
Certificate issue_certificate(CertificateKind kind, const Json& params);

struct RecheckResult {
  bool reproduced = false;  // verdict and witness both match
  Certificate fresh;
};

RecheckResult recheck(const Certificate& c);

}  // namespace tatekit
