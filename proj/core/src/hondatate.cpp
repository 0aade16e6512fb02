#include <numeric>

#include "curvebound/weil.hpp"

namespace curvebound {

namespace {

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
using Fp = std::vector<long>;

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long p) {
  long r = 1;
  long e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Fp fp_mod(Fp a, const Fp& m, long p) {
  const long inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const long f = a.back() * inv % p;
    const size_t shift = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - f * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& m, long p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return fp_mod(std::move(r), m, p);
}

Fp fp_gcd(Fp a, Fp b, long p) {
  while (!b.empty()) {
    Fp r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const long inv = inv_mod(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

Fp fp_sub(Fp a, const Fp& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

Fp fp_derivative(const Fp& a, long p) {
  Fp d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(static_cast<long>(i % static_cast<size_t>(p)) * a[i] % p);
  trim(d);
  return d;
}

Fp fp_divexact(Fp a, const Fp& b, long p) {
  const long inv = inv_mod(b.back(), p);
  Fp q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const long f = a.back() * inv % p;
    const size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - f * b[i]) % p + p) % p;
    trim(a);
  }
  return q;
}

// Degrees of the irreducible factors of a squarefree polynomial over F_p,
// by distinct-degree factorization; nullopt when the input is not squarefree.
std::optional<std::vector<int>> factor_degrees(Fp r, long p) {
  if (r.size() <= 1) return std::vector<int>{};
  if (fp_gcd(r, fp_derivative(r, p), p).size() > 1) return std::nullopt;
  std::vector<int> degrees;
  Fp xp{0, 1};  // x^(p^d) mod r
  for (int d = 1; 2 * d <= static_cast<int>(r.size()) - 1; ++d) {
    Fp base = xp;
    Fp acc{1};
    for (long e = p; e > 0; e >>= 1) {
      if (e & 1) acc = fp_mulmod(acc, base, r, p);
      base = fp_mulmod(base, base, r, p);
    }
    xp = acc;
    Fp g = fp_gcd(r, fp_sub(xp, Fp{0, 1}, p), p);
    const int found = static_cast<int>(g.size()) - 1;
    if (found > 0) {
      for (int i = 0; i < found / d; ++i) degrees.push_back(d);
      r = fp_divexact(r, g, p);
      xp = fp_mod(xp, r, p);
    }
  }
  if (r.size() > 1) degrees.push_back(static_cast<int>(r.size()) - 1);
  return degrees;
}

long valuation(const mpz_class& v, long p) {
  mpz_class t = v;
  long k = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++k;
  }
  return k;
}

std::pair<long, int> prime_power(long q) {
  long p = 2;
  while (q % p != 0) ++p;
  int a = 0;
  for (long t = q; t > 1; t /= p) ++a;
  return {p, a};
}

}  // namespace

namespace {

struct Segment {
  int s;
  long vs;
  int t;
  long vt;
};

// Lower convex hull of (i, v_p(c_i)), left to right.
std::vector<Segment> newton_polygon(const IntPoly& f, long p) {
  std::vector<std::pair<int, long>> hull;
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeff(i) == 0) continue;
    const std::pair<int, long> pt{i, valuation(f.coeff(i), p)};
    while (hull.size() >= 2) {
      const auto& [x1, y1] = hull[hull.size() - 2];
      const auto& [x2, y2] = hull.back();
      // Drop the middle point when it lies on or above the chord.
      if ((y2 - y1) * (pt.first - x1) >= (pt.second - y1) * (x2 - x1)) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  std::vector<Segment> out;
  for (size_t k = 0; k + 1 < hull.size(); ++k) out.push_back({hull[k].first, hull[k].second, hull[k + 1].first, hull[k + 1].second});
  return out;
}

// f(a y + b)
IntPoly compose_linear(const IntPoly& f, const mpz_class& a, const mpz_class& b) {
  const IntPoly lin(std::vector<mpz_class>{b, a});
  IntPoly r;
  for (int i = f.degree(); i >= 0; --i) r = r * lin + IntPoly::constant(f.coeff(i));
  return r;
}

// Local degrees [Q_p(pi) : Q_p] of the p-adic places whose roots lie on the
// segment.  A repeated residual factor of degree 1 on an integral-slope
// segment is resolved by recentring pi = p^h (c + y) and reading the
// polygon of y (second-order Newton polygon); other repeated residuals are
// left undetermined.
std::optional<std::vector<int>> segment_local_degrees(const IntPoly& f, const Segment& seg, long p, int depth) {
  const long rise = seg.vs - seg.vt;
  const long run = seg.t - seg.s;
  const long gg = std::gcd(rise, run);
  const long h = rise / gg;
  const long e = run / gg;
  Fp residual;
  for (long j = 0; seg.s + j * e <= seg.t; ++j) {
    const mpz_class& c = f.coeff(static_cast<int>(seg.s + j * e));
    const long want = seg.vs - j * h;
    if (c == 0 || valuation(c, p) != want) {
      residual.push_back(0);
      continue;
    }
    mpz_class u = c;
    for (long i = 0; i < want; ++i) mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
    residual.push_back(static_cast<long>(mpz_fdiv_ui(u.get_mpz_t(), static_cast<unsigned long>(p))));
  }
  trim(residual);
  std::vector<int> out;
  if (auto degrees = factor_degrees(residual, p)) {
    for (int d : *degrees) out.push_back(static_cast<int>(e) * d);
    return out;
  }
  if (e != 1 || depth > 16) return std::nullopt;
  // Split off the repeated roots in F_p; anything else stays undetermined.
  Fp rest = residual;
  for (long c = 0; c < p; ++c) {
    int mult = 0;
    while (rest.size() > 1 && fp_mod(rest, Fp{(p - c) % p, 1}, p).empty()) {
      rest = fp_divexact(rest, Fp{(p - c) % p, 1}, p);
      ++mult;
    }
    if (mult == 0) continue;
    if (mult == 1) {
      out.push_back(1);
      continue;
    }
    mpz_class ph;
    mpz_ui_pow_ui(ph.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(h));
    const IntPoly g = compose_linear(f, ph, ph * c);
    int found = 0;
    for (const auto& sg : newton_polygon(g, p)) {
      if (sg.vs <= sg.vt) break;  // remaining roots have v(y) = 0
      auto sub = segment_local_degrees(g, sg, p, depth + 1);
      if (!sub) return std::nullopt;
      for (int n : *sub) out.push_back(n);
      found += sg.t - sg.s;
    }
    if (found != mult) return std::nullopt;
  }
  if (rest.size() > 1) {
    auto degrees = factor_degrees(rest, p);
    if (!degrees) return std::nullopt;
    for (int d : *degrees) out.push_back(d);
  }
  return out;
}

}  // namespace

std::optional<int> honda_tate_exponent(const IntPoly& weil_factor, long q) {
  const auto [p, a] = prime_power(q);
  int exponent = 1;
  for (const auto& seg : newton_polygon(weil_factor, p)) {
    const long rise = seg.vs - seg.vt;
    const long run = seg.t - seg.s;
    const long gg = std::gcd(rise, run);
    const long h = rise / gg;
    const long e = run / gg;
    // Invariants h n / (e a) are integral for every local degree n when a | h.
    if (h % a == 0) continue;
    auto degrees = segment_local_degrees(weil_factor, seg, p, 0);
    if (!degrees) return std::nullopt;
    // A place of local degree n has invariant (h / e) n / a.
    for (int n : *degrees) {
      const long num = h * n;
      const long den = e * a;
      exponent = std::lcm(exponent, static_cast<int>(den / std::gcd(num, den)));
    }
  }
  return exponent;
}

ConstraintCheck isogeny_class_exists(const IntPoly& h, long q) {
  ConstraintCheck r;
  for (const auto& [factor, mult] : factor_int_poly(h).factors) {
    IntPoly f = real_to_weil(factor, q);
    // Real Frobenius roots: f is a square and always admissible.
    if (squarefree_part(f).degree() < f.degree()) continue;
    auto e = honda_tate_exponent(f, q);
    if (e && mult % *e != 0) {
      r.witness = "(" + factor.to_string() + ") has multiplicity " + std::to_string(mult) +
                  ", not a multiple of its Honda-Tate exponent " + std::to_string(*e);
      return r;
    }
  }
  r.satisfied = true;
  return r;
}

}  // namespace curvebound
