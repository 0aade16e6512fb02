#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvebound/intpoly.hpp"

namespace curvebound {

class NonIntegralPlaceCount : public std::runtime_error {
 public:
  explicit NonIntegralPlaceCount(int n)
      : std::runtime_error("n * P_n is not divisible by n for n = " + std::to_string(n)), n_(n) {}
  int n() const { return n_; }

 private:
  int n_;
};

// f(x) = x^g h(x + q/x).
IntPoly real_to_weil(const IntPoly& h, long q);
// Inverse of real_to_weil; throws std::invalid_argument when f is not of that shape.
IntPoly weil_to_real(const IntPoly& f, long q);

// Power sums s_1..s_{n_max} of the roots of a monic f, by Newton's identities.
std::vector<mpz_class> power_sums(const IntPoly& f, int n_max);

int mobius(int n);

// A real Weil polynomial together with its point and place counts.
// R[n-1] = R_n and P[n-1] = P_n for 1 <= n <= horizon.
struct WeilProfile {
  IntPoly h;
  long q = 0;
  int g = 0;
  IntPoly f;
  std::vector<mpz_class> R;
  std::vector<mpz_class> P;
  int horizon = 0;

  static WeilProfile make(const IntPoly& h, long q, int horizon);

  const mpz_class& R_n(int n) const { return R.at(static_cast<size_t>(n - 1)); }
  const mpz_class& P_n(int n) const { return P.at(static_cast<size_t>(n - 1)); }
};

// R_n = q^n + 1 - s_n for n = 1..n_max.
std::vector<mpz_class> point_counts(const WeilProfile& profile, int n_max);
// Moebius inversion of the point counts; throws NonIntegralPlaceCount.
std::vector<mpz_class> place_counts(const WeilProfile& profile, int n_max);
std::vector<mpz_class> place_counts_from_points(const std::vector<mpz_class>& R);

// (R_n - q^n - 1)^2 <= 4 g^2 q^n for every materialized n.
bool weil_bound_holds(const WeilProfile& profile);

// Smallest N such that P_n > 0 is forced for every n > N, for any degree-g
// real Weil polynomial with all roots in [-2 sqrt q, 2 sqrt q].
int nonneg_horizon(long q, int g);

struct ConstraintSet {
  long q = 0;
  int g = 0;
  std::map<int, long> prescribed;  // n -> required P_n
  // Also require h to be the real Weil polynomial of an isogeny class
  // (Honda-Tate multiplicities).
  bool isogeny_classes_only = true;

  void validate() const;
  // max(nonneg_horizon(q, g), largest prescribed n)
  int check_horizon() const;
};

struct ConstraintCheck {
  bool satisfied = false;
  std::string witness;  // first violated condition; empty when satisfied

  explicit operator bool() const { return satisfied; }
};

ConstraintCheck satisfies_constraints(const IntPoly& h, const ConstraintSet& cs);

// Honda-Tate exponent of an irreducible Weil polynomial g over F_q: the least
// e such that g^e is the Frobenius polynomial of a simple abelian variety.
// nullopt when the p-adic splitting is not visible from the Newton polygon
// and residual polynomials.
std::optional<int> honda_tate_exponent(const IntPoly& weil_factor, long q);

// Every irreducible factor of h appears with multiplicity divisible by the
// exponent of its Weil polynomial, i.e. h is the real Weil polynomial of an
// isogeny class.  Undetermined exponents are treated as 1.
ConstraintCheck isogeny_class_exists(const IntPoly& h, long q);

}  // namespace curvebound
