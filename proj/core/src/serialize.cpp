#include "curvebound/serialize.hpp"

#include <sstream>

#include "json_util.hpp"

namespace curvebound {

namespace {

nlohmann::json parse(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

nlohmann::json int_array(const std::vector<mpz_class>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

}  // namespace

std::string poly_to_json(const IntPoly& p) { return detail::poly_json(p).dump(); }

IntPoly poly_from_json(const std::string& text) { return detail::poly_from_json(parse(text)); }

std::string polys_to_json_lines(const std::vector<IntPoly>& polys) {
  std::string out;
  for (const auto& p : polys) out += poly_to_json(p) + "\n";
  return out;
}

std::vector<IntPoly> polys_from_json_lines(const std::string& text) {
  std::vector<IntPoly> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(poly_from_json(line));
  }
  return out;
}

std::string profile_to_json(const WeilProfile& profile) {
  nlohmann::ordered_json j;
  j["q"] = profile.q;
  j["g"] = profile.g;
  j["h"] = detail::poly_json(profile.h);
  j["R"] = int_array(profile.R);
  j["P"] = int_array(profile.P);
  return j.dump();
}

WeilProfile profile_from_json(const std::string& text) {
  const auto j = parse(text);
  const long q = j.at("q").get<long>();
  const IntPoly h = detail::poly_from_json(j.at("h"));
  const int horizon = static_cast<int>(j.at("P").size());
  WeilProfile p = WeilProfile::make(h, q, horizon);
  if (p.g != j.at("g").get<int>()) throw std::invalid_argument("profile genus does not match deg h");
  for (int n = 1; n <= horizon; ++n) {
    if (p.R_n(n) != mpz_class(j.at("R").at(static_cast<size_t>(n - 1)).get<std::string>()) ||
        p.P_n(n) != mpz_class(j.at("P").at(static_cast<size_t>(n - 1)).get<std::string>())) {
      throw std::invalid_argument("profile counts do not match h at n = " + std::to_string(n));
    }
  }
  return p;
}

}  // namespace curvebound
