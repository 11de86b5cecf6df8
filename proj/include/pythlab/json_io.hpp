#pragma once

#include <json.hpp>

#include "pythlab/linmap.hpp"
#include "pythlab/poly.hpp"

namespace pythlab {

using Json = nlohmann::json;

// [{"exps": [i, j(, k)], "num": "...", "den": "..."}, ...] in descending grlex order.
Json poly_to_json(const Poly& p);
// Throws std::invalid_argument on malformed input. Exponent list length sets nvars.
Poly poly_from_json(const Json& j);

Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);

// [["a", "b"], ["c", "d"]] with exact rational strings.
Json linmap_to_json(const LinMap& m);
LinMap linmap_from_json(const Json& j);

}  // namespace pythlab
