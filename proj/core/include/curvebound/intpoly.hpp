#pragma once

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curvebound {

// Polynomial with arbitrary-precision integer coefficients, stored lowest
// degree first.  The zero polynomial has no coefficients and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);
  explicit IntPoly(std::span<const long> coeffs);

  static IntPoly constant(const mpz_class& c);
  static IntPoly monomial(int degree);
  // x + c
  static IntPoly x_plus(const mpz_class& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  const mpz_class& lead() const;
  mpz_class coeff(int i) const;
  std::span<const mpz_class> coeffs() const { return coeffs_; }

  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;
  long double eval(long double x) const;

  IntPoly derivative() const;
  IntPoly pow(unsigned e) const;
  mpz_class content() const;
  // Content removed, leading coefficient made positive.
  IntPoly primitive_part() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const mpz_class& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& c) { return a *= c; }
  friend IntPoly operator-(IntPoly a);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  // "x^8 + 19x^7 - 3x + 2"
  std::string to_string() const;

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

// Canonical order: by degree, then coefficients compared from the top down.
std::strong_ordering canonical_compare(const IntPoly& a, const IntPoly& b);

struct CanonicalLess {
  bool operator()(const IntPoly& a, const IntPoly& b) const { return canonical_compare(a, b) < 0; }
};

// Order used for sorted candidate lists: coefficient sequences compared from
// the highest degree down (equal-degree monic inputs make this lexicographic).
bool high_to_low_less(const IntPoly& a, const IntPoly& b);

class NotDivisible : public std::runtime_error {
 public:
  NotDivisible() : std::runtime_error("polynomial division leaves a nonzero remainder") {}
};

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);

// Exact quotient a / b over the integers, or nullopt when b does not divide a.
std::optional<IntPoly> try_divexact(const IntPoly& a, const IntPoly& b);
// Throws NotDivisible.
IntPoly poly_divexact(const IntPoly& a, const IntPoly& b);

// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

// Resultant in the Sylvester convention lead(a)^deg(b) * prod b(alpha) over
// the roots alpha of a, computed as a fraction-free Sylvester determinant.
mpz_class resultant(const IntPoly& a, const IntPoly& b);

// Smallest positive integer in the ideal (a, b) of Z[x], or 0 when a and b
// share a root.  Divides resultant(a, b).  Requires a monic.
mpz_class reduced_resultant(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// p / gcd(p, p'), primitive.
IntPoly squarefree_part(const IntPoly& p);

// Yun decomposition of a primitive polynomial: pairs (s_i, i) with
// p = prod s_i^i, s_i squarefree and pairwise coprime.  Trivial s_i are omitted.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

bool is_squarefree_integer(const mpz_class& n);

// ---------------------------------------------------------------------------
// Exact real root location.

// A real number rational + sqrt_coeff * sqrt(radicand), compared exactly.
class ExactBound {
 public:
  ExactBound() = default;
  explicit ExactBound(mpq_class rational) : rational_(std::move(rational)) {}
  // coeff * sqrt(radicand); reduces to a rational when radicand is a square.
  static ExactBound sqrt_of(const mpz_class& radicand, const mpq_class& coeff = 1);

  bool is_rational() const { return sqrt_coeff_ == 0; }
  const mpq_class& rational() const { return rational_; }
  const mpq_class& sqrt_coeff() const { return sqrt_coeff_; }
  const mpz_class& radicand() const { return radicand_; }

  ExactBound operator-() const;
  long double approx() const;
  std::string to_string() const;

 private:
  mpq_class rational_ = 0;
  mpq_class sqrt_coeff_ = 0;
  mpz_class radicand_ = 0;
};

// Sign of p at an exact bound: -1, 0 or +1.
int sign_at(const IntPoly& p, const ExactBound& x);

struct RealInterval {
  ExactBound lo;
  ExactBound hi;

  // [-2 sqrt(q), 2 sqrt(q)], the interval holding the roots of real Weil polynomials.
  static RealInterval weil(long q);
  // Rational interval strictly containing every real root of p (Cauchy bound).
  static RealInterval enclosing(const IntPoly& p);
};

struct RootLocation {
  unsigned distinct_in = 0;      // distinct real roots in [lo, hi]
  unsigned squarefree_degree = 0;
  bool all_in = false;           // every complex root is real and in [lo, hi]
};

// Sturm-sequence count on the squarefree part of p.
RootLocation count_real_roots_in(const IntPoly& p, const RealInterval& interval);

// ---------------------------------------------------------------------------
// Factorization.

struct Factor {
  IntPoly poly;
  int multiplicity = 1;
};

struct FactorMultiset {
  std::vector<Factor> factors;  // canonical order

  IntPoly expand() const;
  int total_degree() const;
  // "(x + 2)^3 (x^2 + 5x + 5)"
  std::string to_string() const;
};

class FactorizationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complete factorization of a monic polynomial into monic irreducibles.
// Candidate factors come from subsets of numerically located roots and are
// accepted only after exact division; precision escalates when the numerics
// are ambiguous.
FactorMultiset factor_int_poly(const IntPoly& p, int max_degree = 16);

// Factored form of an arbitrary monic polynomial, e.g. for display.
std::string factored_string(const IntPoly& p);

}  // namespace curvebound
