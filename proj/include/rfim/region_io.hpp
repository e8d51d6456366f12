#pragma once

#include <json.hpp>

#include "rfim/lattice.hpp"

namespace rfim {

/// Region description used by experiment configs:
///   {"kind": "box", "center": [x, y], "L": n}
///   {"kind": "annulus", "center": [x, y], "l1": a, "l2": b}
///   {"kind": "explicit", "vertices": [[x, y], ...]}
Region region_from_json(const nlohmann::json& j);
nlohmann::json region_to_json(const Region& r);

}  // namespace rfim
