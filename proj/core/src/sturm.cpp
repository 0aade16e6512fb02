#include <cmath>

#include "curvebound/intpoly.hpp"

namespace curvebound {

namespace {

int sign_of(const mpq_class& v) { return sgn(v); }

// Sign of a + b sqrt(m), m >= 0.
int sign_quadratic(const mpq_class& a, const mpq_class& b, const mpz_class& m) {
  const int sa = sign_of(a);
  const int sb = sign_of(b);
  if (sb == 0 || m == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const int c = cmp(mpq_class(a * a), mpq_class(b * b * m));
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

// Sturm chain of a squarefree primitive polynomial, every member scaled by a
// positive constant so that sign patterns are preserved.
std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  chain.push_back(p);
  if (p.degree() <= 0) return chain;
  chain.push_back(p.derivative().primitive_part());
  while (chain.back().degree() > 0) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    IntPoly r = pseudo_remainder(a, b);
    // prem multiplies the true remainder by lead(b)^(deg a - deg b + 1).
    const int power = a.degree() - b.degree() + 1;
    const bool flipped = b.lead() < 0 && (power % 2 == 1);
    if (r.is_zero()) break;
    mpz_class c = r.content();
    if (!flipped) c = -c;
    std::vector<mpz_class> scaled(r.coeffs().begin(), r.coeffs().end());
    for (auto& v : scaled) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    chain.emplace_back(std::move(scaled));
  }
  return chain;
}

unsigned sign_changes(const std::vector<IntPoly>& chain, const ExactBound& x) {
  unsigned changes = 0;
  int last = 0;
  for (const auto& poly : chain) {
    int s = sign_at(poly, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

ExactBound ExactBound::sqrt_of(const mpz_class& radicand, const mpq_class& coeff) {
  if (radicand < 0) throw std::domain_error("square root of a negative radicand");
  ExactBound b;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  if (root * root == radicand) {
    b.rational_ = coeff * root;
    b.rational_.canonicalize();
  } else {
    b.sqrt_coeff_ = coeff;
    b.radicand_ = radicand;
  }
  return b;
}

ExactBound ExactBound::operator-() const {
  ExactBound b = *this;
  b.rational_ = -b.rational_;
  b.sqrt_coeff_ = -b.sqrt_coeff_;
  return b;
}

long double ExactBound::approx() const {
  long double v = static_cast<long double>(rational_.get_d());
  if (!is_rational()) {
    v += static_cast<long double>(sqrt_coeff_.get_d()) *
         std::sqrt(static_cast<long double>(radicand_.get_d()));
  }
  return v;
}

std::string ExactBound::to_string() const {
  if (is_rational()) return rational_.get_str();
  std::string s;
  if (rational_ != 0) s = rational_.get_str() + (sqrt_coeff_ < 0 ? " - " : " + ");
  else if (sqrt_coeff_ < 0) s = "-";
  mpq_class mag = abs(sqrt_coeff_);
  if (mag != 1) s += mag.get_str() + "*";
  return s + "sqrt(" + radicand_.get_str() + ")";
}

int sign_at(const IntPoly& p, const ExactBound& x) {
  if (p.is_zero()) return 0;
  if (x.is_rational()) {
    const mpq_class& r = x.rational();
    if (r.get_den() == 1) return sgn(p.eval(mpz_class(r.get_num())));
    return sgn(p.eval(r));
  }
  // Horner in Q(sqrt m): (A + B s)(a + b s) = (Aa + Bbm) + (Ab + Ba) s.
  const mpq_class& a = x.rational();
  const mpq_class& b = x.sqrt_coeff();
  const mpz_class& m = x.radicand();
  mpq_class A = 0;
  mpq_class B = 0;
  auto coeffs = p.coeffs();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    mpq_class nA = A * a + B * b * m + *it;
    mpq_class nB = A * b + B * a;
    A = std::move(nA);
    B = std::move(nB);
  }
  return sign_quadratic(A, B, m);
}

RealInterval RealInterval::weil(long q) {
  if (q < 1) throw std::invalid_argument("weil interval: q must be positive");
  ExactBound hi = ExactBound::sqrt_of(mpz_class(4 * q));
  return {-hi, hi};
}

RealInterval RealInterval::enclosing(const IntPoly& p) {
  if (p.degree() <= 0) return {ExactBound(mpq_class(-1)), ExactBound(mpq_class(1))};
  mpq_class bound = 0;
  for (int i = 0; i < p.degree(); ++i) {
    mpq_class r(abs(p.coeff(i)), abs(p.lead()));
    r.canonicalize();
    if (r > bound) bound = r;
  }
  bound += 2;
  return {ExactBound(mpq_class(-bound)), ExactBound(bound)};
}

RootLocation count_real_roots_in(const IntPoly& p, const RealInterval& interval) {
  if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
  RootLocation loc;
  IntPoly sq = squarefree_part(p);
  loc.squarefree_degree = static_cast<unsigned>(std::max(sq.degree(), 0));
  if (sq.degree() <= 0) {
    loc.all_in = true;
    return loc;
  }
  auto chain = sturm_chain(sq);
  // With zero signs skipped, V(a) - V(b) counts the distinct roots in (a, b].
  const unsigned va = sign_changes(chain, interval.lo);
  const unsigned vb = sign_changes(chain, interval.hi);
  unsigned count = va >= vb ? va - vb : 0;
  if (sign_at(sq, interval.lo) == 0) ++count;
  loc.distinct_in = count;
  loc.all_in = count == loc.squarefree_degree;
  return loc;
}

}  // namespace curvebound
