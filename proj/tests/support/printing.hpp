#pragma once

// Stream operators so failing checks print values.

#include "tatekit/field.hpp"
#include "tatekit/lognorm.hpp"
#include "tatekit/tate_series.hpp"

#include <ostream>

namespace tatekit {

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const LogNorm& x) { return os << x.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const TateSeries& x) { return os << x.to_string(); }

}  // namespace tatekit
