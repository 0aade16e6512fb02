#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvebound/intpoly.hpp"

namespace curvebound {

enum class Argument { None, Resultant1, Resultant2, SupersingularFactor };

// "resultant-1", "resultant-2", "supersingular-factor", "none"
std::string to_string(Argument a);
Argument argument_from_string(const std::string& s);

// h = h1 * h2 with both factors monic and nonconstant.  The reduced
// resultant of the radicals bounds the gluing exponent of the two factors.
struct Splitting {
  IntPoly h1;
  IntPoly h2;
  mpz_class resultant;
  mpz_class reduced_resultant;  // of squarefree_part(h1), squarefree_part(h2)
};

class NotASquare : public std::invalid_argument {
 public:
  explicit NotASquare(long q) : std::invalid_argument("q = " + std::to_string(q) + " is not a perfect square") {}
};

struct CoverSolution {
  long split = 0;
  long inert = 0;
  long ramified = 0;
};

enum class CoverRefutation { None, Genus, PointCount, BaseEliminated, NoSolution };

// Accounting for a hypothetical degree-2 cover C -> D.
struct CoverAccounting {
  IntPoly hD;
  int g_C = 0;
  int g_D = 0;
  mpz_class N1_C;
  mpz_class N1_D;
  mpz_class P2_C;
  long different_budget = 0;     // 2 g_C - 2 - 2 (2 g_D - 2)
  int ramified_weight = 1;       // different contribution per ramified point
  std::optional<CoverSolution> solution;
  CoverRefutation refutation = CoverRefutation::None;
  std::optional<Splitting> base_splitting;  // for BaseEliminated
  std::string detail;

  bool refuted() const { return refutation != CoverRefutation::None; }
};

struct Witness {
  std::string summary;
  std::optional<mpz_class> value;         // resultant, or h2(-2s) for the supersingular test
  std::vector<CoverAccounting> covers;    // resultant-2: one entry per side
};

struct Verdict {
  IntPoly candidate;
  bool eliminated = false;
  Argument argument = Argument::None;
  std::optional<Splitting> splitting;
  Witness witness;
};

// Every unordered factorization h = h1 h2 into nonconstant monic factors,
// oriented with h1 <= h2 canonically and sorted by (h1, h2).
std::vector<Splitting> splittings(const IntPoly& h);

std::optional<Splitting> resultant_one_test(const IntPoly& h);

// h = (x + 2s)^e h2 with e maximal, deg h2 >= 1 and h2(-2s) squarefree and
// prime to the characteristic.  Throws NotASquare.
std::optional<Splitting> supersingular_factor_test(const IntPoly& h, long q);

CoverAccounting double_cover_feasible(const IntPoly& hC, const IntPoly& hD, long q);

// Tries resultant 1, then the supersingular factor test, then resultant 2
// (reduced resultant 2 with both factors refuted as double-cover bases).
Verdict eliminate(const IntPoly& h, long q);
// Verdicts in input order.
std::vector<Verdict> eliminate_all(const std::vector<IntPoly>& candidates, long q, unsigned threads = 1);

// index,h,argument,h1,h2
std::string verdicts_to_csv(const std::vector<Verdict>& verdicts);
std::string verdicts_to_json(const std::vector<Verdict>& verdicts, long q);
std::string verdicts_to_markdown(const std::vector<Verdict>& verdicts);

}  // namespace curvebound
