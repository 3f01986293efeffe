#pragma once

#include "tatekit/field.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/radius.hpp"
#include "tatekit/square_zero.hpp"
#include "tatekit/tate_series.hpp"

#include <json.hpp>

#include <memory>

namespace tatekit {

using Json = nlohmann::json;

// {"zero": true} or {"e0": "p/q", "radius": ["p/q", ...]}
Json lognorm_to_json(const LogNorm& x);
LogNorm lognorm_from_json(const Json& j);

Json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const FieldSpec& spec, const Json& j);

// {"kind": "padic", "q": 3, "precision": 40} and the Laurent analogues with
// "size" or "vars".
Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

// {"id": "r1", "log_inv_radius": "(0+1*sqrt(2))/2", "irrational": true}
Json radius_to_json(const RadiusDecl& decl);
RadiusDecl radius_from_json(const Json& j);

// {"kind": "power|laurent", "radius": ["r1"], "terms": [{"exp": [2], "coeff": "1"}], "tail": <norm>}
Json series_to_json(const TateSeries& f);
// Every radius id must already be declared in the context.
TateSeries series_from_json(const Json& j, const FieldSpec& spec, std::shared_ptr<const RadiusContext> radii,
                            std::size_t support_cap = 4096);
// Reuses an existing ring; the kind and radius ids must match it.
TateSeries series_from_json(const Json& j, const SeriesRingPtr& ring);

// {"a": <series>, "b": <series>}
Json sz_to_json(const SquareZeroElem<TateSeries>& x);
SquareZeroElem<TateSeries> sz_from_json(const Json& j, const SeriesRingPtr& ring);

}  // namespace tatekit
