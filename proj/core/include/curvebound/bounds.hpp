#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curvebound {

// Upper bound on the number of rational points of a genus-g curve over F_q,
// taken from the literature rather than computed.
struct BoundEntry {
  long q = 0;
  int genus = 0;
  long bound = 0;
  std::string citation;
};

class MissingBound : public std::runtime_error {
 public:
  MissingBound(long q, int genus)
      : std::runtime_error("no point-count bound for q = " + std::to_string(q) + ", genus " + std::to_string(genus) +
                           " in the bounds table"),
        q_(q),
        genus_(genus) {}
  long q() const { return q_; }
  int genus() const { return genus_; }

 private:
  long q_;
  int genus_;
};

class BoundsTable {
 public:
  BoundsTable() = default;

  static BoundsTable from_json(const std::string& text, std::filesystem::path source = {});
  static BoundsTable load(const std::filesystem::path& path);
  // $CURVEBOUND_BOUNDS, then the installed data file, then the source tree copy.
  static BoundsTable load_default();
  static std::filesystem::path default_path();

  const BoundEntry& lookup(long q, int genus) const;  // throws MissingBound
  bool contains(long q, int genus) const { return entries_.count({q, genus}) != 0; }
  BoundsTable without(long q, int genus) const;
  void insert(BoundEntry e);

  std::vector<BoundEntry> entries() const;
  const std::filesystem::path& source() const { return source_; }

 private:
  std::map<std::pair<long, int>, BoundEntry> entries_;
  std::filesystem::path source_;
};

}  // namespace curvebound
