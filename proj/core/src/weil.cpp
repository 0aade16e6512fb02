#include "curvebound/weil.hpp"

#include <algorithm>

namespace curvebound {

namespace {

mpz_class ipow(long base, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

// Smallest integer >= sqrt(q^n).
mpz_class ceil_sqrt_pow(long q, int n) {
  mpz_class v = ipow(q, n);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  if (r * r < v) ++r;
  return r;
}

bool is_prime_power(long q) {
  if (q < 2) return false;
  long p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

IntPoly real_to_weil(const IntPoly& h, long q) {
  if (h.degree() < 1) throw std::invalid_argument("real_to_weil: h must have degree >= 1");
  const int g = h.degree();
  const IntPoly shift{q, 0, 1};  // x^2 + q
  IntPoly f;
  IntPoly power = IntPoly::constant(1);
  for (int j = 0; j <= g; ++j) {
    if (h.coeff(j) != 0) f += power * IntPoly::monomial(g - j) * h.coeff(j);
    power *= shift;
  }
  return f;
}

IntPoly weil_to_real(const IntPoly& f, long q) {
  if (f.degree() < 2 || f.degree() % 2 != 0) {
    throw std::invalid_argument("weil_to_real: degree must be even and positive");
  }
  const int g = f.degree() / 2;
  const IntPoly shift{q, 0, 1};
  std::vector<IntPoly> powers{IntPoly::constant(1)};
  for (int j = 1; j <= g; ++j) powers.push_back(powers.back() * shift);
  IntPoly rest = f;
  std::vector<mpz_class> h(static_cast<size_t>(g) + 1, 0);
  for (int j = g; j >= 0; --j) {
    mpz_class a = rest.coeff(g + j);
    h[static_cast<size_t>(j)] = a;
    if (a != 0) rest -= powers[static_cast<size_t>(j)] * IntPoly::monomial(g - j) * a;
  }
  if (!rest.is_zero()) throw std::invalid_argument("weil_to_real: f is not of the form x^g h(x + q/x)");
  return IntPoly(std::move(h));
}

std::vector<mpz_class> power_sums(const IntPoly& f, int n_max) {
  if (!f.is_monic()) throw std::invalid_argument("power_sums: polynomial must be monic");
  const int D = f.degree();
  // c_k is the coefficient of x^(D-k).
  auto c = [&](int k) -> mpz_class { return k > D ? mpz_class(0) : f.coeff(D - k); };
  std::vector<mpz_class> s(static_cast<size_t>(n_max) + 1, 0);
  for (int n = 1; n <= n_max; ++n) {
    mpz_class v = n <= D ? mpz_class(-c(n) * n) : mpz_class(0);
    for (int i = 1; i < n && i <= D; ++i) v -= c(i) * s[static_cast<size_t>(n - i)];
    s[static_cast<size_t>(n)] = v;
  }
  s.erase(s.begin());
  return s;
}

int mobius(int n) {
  if (n < 1) throw std::invalid_argument("mobius: n must be positive");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

std::vector<mpz_class> point_counts(const WeilProfile& profile, int n_max) {
  auto s = power_sums(profile.f, n_max);
  std::vector<mpz_class> R(static_cast<size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) R[static_cast<size_t>(n - 1)] = ipow(profile.q, n) + 1 - s[static_cast<size_t>(n - 1)];
  return R;
}

std::vector<mpz_class> place_counts_from_points(const std::vector<mpz_class>& R) {
  const int n_max = static_cast<int>(R.size());
  std::vector<mpz_class> P(static_cast<size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    mpz_class total = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      int mu = mobius(n / d);
      if (mu == 1) total += R[static_cast<size_t>(d - 1)];
      else if (mu == -1) total -= R[static_cast<size_t>(d - 1)];
    }
    if (!mpz_divisible_ui_p(total.get_mpz_t(), static_cast<unsigned long>(n))) throw NonIntegralPlaceCount(n);
    mpz_divexact_ui(total.get_mpz_t(), total.get_mpz_t(), static_cast<unsigned long>(n));
    P[static_cast<size_t>(n - 1)] = total;
  }
  return P;
}

std::vector<mpz_class> place_counts(const WeilProfile& profile, int n_max) {
  return place_counts_from_points(point_counts(profile, n_max));
}

WeilProfile WeilProfile::make(const IntPoly& h, long q, int horizon) {
  if (!h.is_monic() || h.degree() < 1) throw std::invalid_argument("WeilProfile: h must be monic of degree >= 1");
  if (horizon < 1) horizon = 1;
  WeilProfile p;
  p.h = h;
  p.q = q;
  p.g = h.degree();
  p.f = real_to_weil(h, q);
  p.horizon = horizon;
  p.R = point_counts(p, horizon);
  p.P = place_counts_from_points(p.R);
  return p;
}

bool weil_bound_holds(const WeilProfile& profile) {
  for (int n = 1; n <= profile.horizon; ++n) {
    mpz_class qn = ipow(profile.q, n);
    mpz_class dev = profile.R_n(n) - qn - 1;
    mpz_class lhs = dev * dev;
    mpz_class rhs = qn * 4 * profile.g * profile.g;
    if (lhs > rhs) return false;
  }
  return true;
}

int nonneg_horizon(long q, int g) {
  if (q < 2 || g < 1) throw std::invalid_argument("nonneg_horizon: need q >= 2 and g >= 1");
  // n P_n >= R_n - sum_{d | n, d < n} |R_d|, with R_n >= q^n + 1 - 2g q^(n/2)
  // and |R_d| <= q^d + 1 + 2g q^(d/2).  Square roots are rounded up, which
  // keeps the test sufficient.  Past the scan limit the left side outgrows
  // the right side by a factor of at least q^(n/2) / (4g + 4).
  const int limit = 16 * (g + 4);
  int last_failure = 0;
  for (int n = 1; n <= limit; ++n) {
    mpz_class lhs = ipow(q, n) + 1 - 2 * g * ceil_sqrt_pow(q, n);
    mpz_class rhs = 0;
    for (int d = 1; 2 * d <= n; ++d) rhs += ipow(q, d) + 1 + 2 * g * ceil_sqrt_pow(q, d);
    if (!(lhs > rhs)) last_failure = n;
  }
  return last_failure;
}

void ConstraintSet::validate() const {
  if (g < 1) throw std::invalid_argument("constraint set: genus must be >= 1");
  if (!is_prime_power(q)) throw std::invalid_argument("constraint set: q = " + std::to_string(q) + " is not a prime power");
  for (const auto& [n, v] : prescribed) {
    if (n < 1) throw std::invalid_argument("constraint set: prescribed index must be positive");
    if (v < 0) throw std::invalid_argument("constraint set: prescribed place counts must be >= 0");
  }
}

int ConstraintSet::check_horizon() const {
  int h = nonneg_horizon(q, g);
  if (!prescribed.empty()) h = std::max(h, prescribed.rbegin()->first);
  return h;
}

ConstraintCheck satisfies_constraints(const IntPoly& h, const ConstraintSet& cs) {
  ConstraintCheck r;
  if (!h.is_monic() || h.degree() != cs.g) {
    r.witness = "h is not monic of degree " + std::to_string(cs.g);
    return r;
  }
  if (!count_real_roots_in(h, RealInterval::weil(cs.q)).all_in) {
    r.witness = "roots not all real in [-2 sqrt(q), 2 sqrt(q)]";
    return r;
  }
  if (cs.isogeny_classes_only) {
    ConstraintCheck iso = isogeny_class_exists(h, cs.q);
    if (!iso) return iso;
  }
  const int horizon = cs.check_horizon();
  std::vector<mpz_class> P;
  try {
    P = WeilProfile::make(h, cs.q, horizon).P;
  } catch (const NonIntegralPlaceCount& e) {
    r.witness = e.what();
    return r;
  }
  for (const auto& [n, want] : cs.prescribed) {
    const mpz_class& got = P[static_cast<size_t>(n - 1)];
    if (got != want) {
      r.witness = "P_" + std::to_string(n) + " = " + got.get_str() + " != " + std::to_string(want);
      return r;
    }
  }
  for (int n = 1; n <= horizon; ++n) {
    if (P[static_cast<size_t>(n - 1)] < 0) {
      r.witness = "P_" + std::to_string(n) + " = " + P[static_cast<size_t>(n - 1)].get_str() + " < 0";
      return r;
    }
  }
  r.satisfied = true;
  return r;
}

}  // namespace curvebound
