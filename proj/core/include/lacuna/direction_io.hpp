#pragma once

#include <string>
#include <string_view>

#include "lacuna/directions.hpp"

namespace lacuna {

// {"lambda": "p/q", "order": D, "root": [num, log2den],
//  "angles": [[num, log2den], ...], "tree": {"angle": [...], "children": [...]}}
// Uncertified sets carry null lambda, order and tree.
std::string direction_set_to_json(const DirectionSet& set);

// Structural problems raise ValidationError; the certificate itself is not
// verified here (see verify_order).
DirectionSet direction_set_from_json(std::string_view text);

}  // namespace lacuna
