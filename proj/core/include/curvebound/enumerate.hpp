#pragma once

#include <optional>
#include <vector>

#include "curvebound/intpoly.hpp"
#include "curvebound/weil.hpp"

namespace curvebound {

// A partially determined real Weil polynomial h = sum a_j x^j.  At level k
// the coefficients a_g..a_k are fixed and `poly` is the normalized
// derivative h^(k) / k!, of degree g - k.
struct SearchNode {
  int level = 0;
  IntPoly poly;
  std::vector<mpz_class> top;  // a_g, a_{g-1}, ..., a_k
};

// Closed integer interval; empty when lo > hi.
struct CoeffRange {
  mpz_class lo = 0;
  mpz_class hi = -1;

  bool empty() const { return lo > hi; }
  mpz_class size() const { return empty() ? mpz_class(0) : mpz_class(hi - lo + 1); }
};

// Depth-first search over derivative levels.  Real-rootedness of h inside
// [-2 sqrt q, 2 sqrt q] implies the same for every derivative (Rolle), and
// P_n depends only on the top n coefficients of h, so both conditions prune
// partial nodes soundly.
class RealWeilSearch {
 public:
  explicit RealWeilSearch(ConstraintSet cs);

  const ConstraintSet& constraints() const { return cs_; }

  SearchNode root() const;
  // Admissible values of the coefficient a_{k-1} added when extending a node
  // at level k; every value outside the range yields a child that fails the
  // root-location test or a place-count condition.
  CoeffRange extension_range(const SearchNode& node) const;
  SearchNode child(const SearchNode& node, const mpz_class& coeff) const;
  bool admissible(const IntPoly& level_poly) const;

  std::vector<IntPoly> run(unsigned threads = 1) const;

  // Value of P_n for the top n coefficients of node extended by coeff = 0;
  // P_n itself equals this plus the chosen coefficient.
  mpz_class place_count_offset(const SearchNode& node) const;

 private:
  void descend(const SearchNode& node, std::vector<IntPoly>& out) const;
  CoeffRange place_count_window(const SearchNode& node) const;

  ConstraintSet cs_;
  RealInterval interval_;
  std::vector<std::vector<mpz_class>> binom_;
};

// All monic degree-g integer polynomials with every root real in
// [-2 sqrt q, 2 sqrt q] that satisfy the constraint set, sorted by
// coefficients from the top degree down.
std::vector<IntPoly> enumerate_real_weil(const ConstraintSet& cs, unsigned threads = 1);

}  // namespace curvebound
