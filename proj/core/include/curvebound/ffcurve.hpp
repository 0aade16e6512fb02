#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvebound/gf2m.hpp"
#include "curvebound/intpoly.hpp"

namespace curvebound {

// Polynomial over GF(2) as a bit mask, bit i = coefficient of x^i.
using F2Poly = std::uint64_t;

class LiftFailed : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class DegreeMismatch : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class InconsistentCounts : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Genus-2 curve D: y^2 + h(x) y = g(x) over GF(4) with deg h <= 3 and
// deg g <= 6, and the cyclic cover C: z^3 = f, f = f_y(x) y + f_0(x).
struct KummerCoverSpec {
  F2Poly h = 0b1011;      // x^3 + x + 1
  F2Poly g = 0b1110100;   // x^6 + x^5 + x^4 + x^2
  F2Poly f_y = 0b11;      // x + 1
  F2Poly f_0 = 0b100;     // x^2
  int cover_degree = 3;

  // Lines "key = c0 c1 c2 ..." (coefficients lowest degree first) with keys
  // h, g, f_y, f_0; '#' starts a comment; missing keys keep the defaults.
  static KummerCoverSpec parse(const std::string& text);
  std::string to_string() const;
  void validate() const;
};

enum class KummerBehavior { Split, Inert, Ramified };
std::string to_string(KummerBehavior b);

// A place of D.  Affine places are represented by a point (x, y) over
// GF(4^degree) = GF(2^(2 degree)); places at infinity by the root u of
// u^2 + u H(0) = G(0) in the chart u = y / x^3, v = 1 / x (x holds v = 0).
struct PlaceRecord {
  int degree = 1;
  bool at_infinity = false;
  GFElem x;
  GFElem y;
  std::string label;  // P0, P1, P2, Q1, Q2 when the place is one of those points
  int f_valuation = 0;
  GFElem f_unit;      // leading coefficient of f in a uniformizer defined over the residue field
  KummerBehavior behavior = KummerBehavior::Split;

  int field_degree() const { return 2 * degree; }
  std::string name() const;
};

struct LocalF {
  int valuation = 0;
  GFElem unit;
};

class KummerCover {
 public:
  static constexpr long kBaseField = 4;
  static constexpr int kGenusD = 2;

  explicit KummerCover(KummerCoverSpec spec = {});
  const KummerCoverSpec& spec() const { return spec_; }

  // Throws std::invalid_argument if D has a singular point over GF(4^k), k <= max_k.
  void check_nonsingular(int max_k = 3) const;

  // All places of D of degree <= max_degree (<= 8), sorted by degree then
  // representative; degree counts are checked against the zeta function of D.
  std::vector<PlaceRecord> places_D(int max_degree) const;
  // #D(GF(4^n)) by the trace criterion on every x plus the points at infinity.
  long count_points_D(int n) const;
  IntPoly real_weil_of_D() const;

  // Valuation and unit part of f at a point over GF(2^m).
  LocalF local_f(const GFContext& F, GFElem x, GFElem y, bool at_infinity) const;
  KummerBehavior kummer_place_behavior(const PlaceRecord& place) const;

  // The branch y(x) at P0 = (0, 0), coefficients of x^0 .. x^(order-1) over GF(4).
  std::vector<GFElem> local_series_y(int order) const;
  // f along the same branch.
  std::vector<GFElem> local_series_f(int order) const;

  // Zeros among places of degree <= max_zero_degree and the poles at
  // infinity.  Throws DegreeMismatch unless sum val * deg = 0.
  std::vector<std::pair<PlaceRecord, int>> divisor_of_f(int max_zero_degree = 6) const;

  long count_points_C(int n) const;
  // N_1(C) .. N_max(C) from one pass over the places of D.
  std::vector<long> point_counts_C(int max_n) const;
  int genus_C_rh() const;
  // From N_1 .. N_8; throws InconsistentCounts.
  IntPoly real_weil_of_C() const;

 private:
  KummerCoverSpec spec_;
  F2Poly H_;  // v^3 h(1/v)
  F2Poly G_;  // v^6 g(1/v)
};

// Riemann-Hurwitz for a tame cyclic cover of degree n totally ramified at
// places of the given degrees: 2 g - 2 = n (2 g_base - 2) + (n - 1) sum deg.
int genus_rh(int cover_degree, int genus_base, const std::vector<int>& ramified_degrees);

// Real Weil polynomial of a genus-g curve over F_q from N_1 .. N_g; checks
// that it reproduces every supplied count.  Throws InconsistentCounts.
IntPoly real_weil_from_point_counts(const std::vector<mpz_class>& counts, long q, int g);

// "x^2 + x^3 + O(x^7)"; GF(4) coefficients print as 1, w, w^2, others as hex.
std::string series_to_string(const GFContext& F, const std::vector<GFElem>& series);
// degree,label,chart,x,y,f_valuation,behavior
std::string places_to_csv(const std::vector<PlaceRecord>& places);

}  // namespace curvebound
