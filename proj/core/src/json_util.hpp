#pragma once

#include <json.hpp>

#include "curvebound/intpoly.hpp"

namespace curvebound::detail {

// Coefficients lowest degree first, as decimal strings.
inline nlohmann::json poly_json(const IntPoly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

inline IntPoly poly_from_json(const nlohmann::json& a) {
  std::vector<mpz_class> coeffs;
  for (const auto& c : a) {
    if (c.is_string()) coeffs.emplace_back(c.get<std::string>());
    else if (c.is_number_integer()) coeffs.emplace_back(std::to_string(c.get<long long>()));
    else throw std::invalid_argument("polynomial coefficients must be integers or decimal strings");
  }
  return IntPoly(std::move(coeffs));
}

}  // namespace curvebound::detail
