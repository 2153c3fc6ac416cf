#pragma once

#include <string>

#include <json.hpp>

#include "nrs/spaces.hpp"

namespace nrs {

using Json = nlohmann::ordered_json;

// Polynomial encoding: {"coeffs": [c0, c1, ...]} ascending degree, one entry
// per coefficient including the leading one.  Rational entries are "p/q"
// strings (plain JSON numbers are accepted and converted exactly); Gaussian
// entries are {"re": "p/q", "im": "p/q"}.

Json poly_to_json(const Poly<Rational>& p);
Json poly_to_json(const Poly<GaussRational>& p);
Poly<Rational> poly_from_json(const Json& j);
Poly<GaussRational> gauss_poly_from_json(const Json& j);

// System encoding:
//   {"family":"Poly_R","d":4,"m":2,"n":2,"polys":[[...],[...]]}
// with optional "degrees":[d1,...,dm] overriding "d" per slot.
Json system_to_json(const System& sys);
System system_from_json(const Json& j);

/// Numeric map outputs: coefficients as JSON numbers, tagged with the region
/// map version.
Json numeric_system_to_json(const NumericSystem& sys);

}  // namespace nrs
