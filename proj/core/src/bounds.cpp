#include "curvebound/bounds.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace curvebound {

BoundsTable BoundsTable::from_json(const std::string& text, std::filesystem::path source) {
  BoundsTable t;
  t.source_ = std::move(source);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("bounds table " + t.source_.string() + ": " + e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw std::runtime_error("bounds table " + t.source_.string() + ": missing \"entries\" array");
  }
  for (const auto& e : doc["entries"]) {
    BoundEntry b;
    b.q = e.at("q").get<long>();
    b.genus = e.at("genus").get<int>();
    b.bound = e.at("bound").get<long>();
    b.citation = e.value("citation", "");
    t.insert(std::move(b));
  }
  return t;
}

BoundsTable BoundsTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bounds table " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return from_json(os.str(), path);
}

std::filesystem::path BoundsTable::default_path() {
  if (const char* env = std::getenv("CURVEBOUND_BOUNDS"); env && *env) return env;
  for (const char* candidate : {CURVEBOUND_INSTALLED_BOUNDS_PATH, CURVEBOUND_SOURCE_BOUNDS_PATH}) {
    std::error_code ec;
    if (std::filesystem::exists(candidate, ec)) return candidate;
  }
  return CURVEBOUND_SOURCE_BOUNDS_PATH;
}

BoundsTable BoundsTable::load_default() { return load(default_path()); }

const BoundEntry& BoundsTable::lookup(long q, int genus) const {
  auto it = entries_.find({q, genus});
  if (it == entries_.end()) throw MissingBound(q, genus);
  return it->second;
}

BoundsTable BoundsTable::without(long q, int genus) const {
  BoundsTable t = *this;
  t.entries_.erase({q, genus});
  return t;
}

void BoundsTable::insert(BoundEntry e) {
  auto key = std::make_pair(e.q, e.genus);
  entries_[key] = std::move(e);
}

std::vector<BoundEntry> BoundsTable::entries() const {
  std::vector<BoundEntry> out;
  for (const auto& [k, v] : entries_) out.push_back(v);
  return out;
}

}  // namespace curvebound
