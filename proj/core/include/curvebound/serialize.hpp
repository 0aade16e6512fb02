#pragma once

#include <string>
#include <vector>

#include "curvebound/intpoly.hpp"
#include "curvebound/weil.hpp"

namespace curvebound {

// ["c0","c1",...] with decimal strings, lowest degree first.
std::string poly_to_json(const IntPoly& p);
IntPoly poly_from_json(const std::string& text);

// One JSON array per line.
std::string polys_to_json_lines(const std::vector<IntPoly>& polys);
std::vector<IntPoly> polys_from_json_lines(const std::string& text);

// {"q":..,"g":..,"h":[..],"R":[..],"P":[..]}
std::string profile_to_json(const WeilProfile& profile);
WeilProfile profile_from_json(const std::string& text);

}  // namespace curvebound
