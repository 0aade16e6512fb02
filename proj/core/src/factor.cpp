#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <cstdio>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "curvebound/intpoly.hpp"
#include "numeric_roots.hpp"

namespace curvebound {

namespace {

namespace bmp = boost::multiprecision;

template <class Complex>
struct Precision;

template <>
struct Precision<std::complex<long double>> {
  using Real = long double;
  static Real from(const mpz_class& v) { return std::strtold(v.get_str().c_str(), nullptr); }
  static Real epsilon() { return 64 * std::numeric_limits<long double>::epsilon(); }
  static Real tolerance() { return 1e-7L; }
  static Real reject_above() { return 1e-3L; }
  static long double to_ld(const Real& r) { return r; }
  static bool finite(const Real& r) { return std::isfinite(r); }
  static mpz_class to_mpz(const Real& rounded) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0Lf", rounded);
    return mpz_class(buf);
  }
};

template <unsigned Digits>
struct Precision<bmp::number<bmp::complex_adaptor<bmp::cpp_bin_float<Digits>>, bmp::et_off>> {
  using Real = bmp::number<bmp::cpp_bin_float<Digits>>;
  static Real from(const mpz_class& v) { return Real(v.get_str()); }
  static Real epsilon() { return 64 * std::numeric_limits<Real>::epsilon(); }
  static Real tolerance() { return pow(Real(10), -static_cast<int>(Digits) / 2); }
  static Real reject_above() { return pow(Real(10), -static_cast<int>(Digits) / 4); }
  static long double to_ld(const Real& r) { return r.template convert_to<long double>(); }
  static bool finite(const Real& r) { return boost::multiprecision::isfinite(r); }
  static mpz_class to_mpz(const Real& rounded) {
    std::string digits = rounded.str(0, std::ios::fixed);
    return mpz_class(digits.substr(0, digits.find('.')));
  }
};

enum class SearchOutcome { Done, Ambiguous, NoConvergence };

template <class Complex>
class RootSubsetFactorizer {
  using P = Precision<Complex>;
  using Real = typename P::Real;

 public:
  explicit RootSubsetFactorizer(const IntPoly& squarefree) : poly_(squarefree) {}

  std::vector<Complex> roots_only() const {
    std::vector<Complex> roots;
    if (poly_.degree() == 1) {
      roots.push_back(Complex(-P::from(poly_.coeff(0)) / P::from(poly_.coeff(1))));
    } else if (poly_.degree() > 1 && !aberth(poly_, roots)) {
      roots.clear();
    }
    return roots;
  }

  // Splits poly_ into irreducible factors, appended to out.
  SearchOutcome run(std::vector<IntPoly>& out) {
    std::vector<IntPoly> found;
    IntPoly rest = poly_;
    if (rest.degree() == 1) {
      out.push_back(rest);
      return SearchOutcome::Done;
    }
    std::vector<Complex> roots;
    if (!aberth(rest, roots)) return SearchOutcome::NoConvergence;

    for (int d = 1; 2 * d <= rest.degree(); ++d) {
      bool again = true;
      while (again && 2 * d <= rest.degree()) {
        again = false;
        std::vector<int> idx(static_cast<size_t>(d));
        std::iota(idx.begin(), idx.end(), 0);
        const int n = static_cast<int>(roots.size());
        do {
          auto candidate = candidate_from(roots, idx);
          if (candidate.ambiguous) return SearchOutcome::Ambiguous;
          if (!candidate.poly) continue;
          auto quotient = try_divexact(rest, *candidate.poly);
          if (!quotient) continue;
          found.push_back(*candidate.poly);
          rest = *quotient;
          for (auto it = idx.rbegin(); it != idx.rend(); ++it) roots.erase(roots.begin() + *it);
          again = true;
          break;
        } while (next_combination(idx, n));
      }
    }
    if (rest.degree() >= 1) found.push_back(rest);
    out.insert(out.end(), found.begin(), found.end());
    return SearchOutcome::Done;
  }

 private:
  struct Candidate {
    std::optional<IntPoly> poly;
    bool ambiguous = false;
  };

  static bool next_combination(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    return true;
  }

  // Classifies a real number as near an integer (ok), clearly not (reject) or
  // in between (ambiguous at this precision).  The reject threshold shrinks
  // with precision so that genuine non-integers are eventually rejected.
  enum class Near { Ok, Reject, Ambiguous };
  static Near near_integer(const Real& v, const Real& scale, mpz_class* out) {
    using std::abs;
    using std::round;
    if (!P::finite(v)) return Near::Reject;
    Real r = round(v);
    Real err = abs(v - r);
    if (err <= P::tolerance() * scale) {
      if (out) *out = P::to_mpz(r);
      return Near::Ok;
    }
    if (err > P::reject_above() * scale) return Near::Reject;
    return Near::Ambiguous;
  }

  Candidate candidate_from(const std::vector<Complex>& roots, const std::vector<int>& idx) const {
    using std::abs;
    Candidate c;
    // Quick rejection on the root sum before expanding the product.
    Complex sum(0);
    Real scale(1);
    for (int i : idx) {
      sum += roots[static_cast<size_t>(i)];
      scale += abs(roots[static_cast<size_t>(i)]);
    }
    Near ns = near_integer(sum.real(), scale, nullptr);
    Near ni = near_integer(sum.imag(), scale, nullptr);
    if (ns == Near::Reject || ni == Near::Reject) return c;

    std::vector<Complex> prod{Complex(1)};
    for (int i : idx) {
      const Complex& r = roots[static_cast<size_t>(i)];
      std::vector<Complex> next(prod.size() + 1, Complex(0));
      for (size_t j = 0; j < prod.size(); ++j) {
        next[j + 1] += prod[j];
        next[j] -= prod[j] * r;
      }
      prod = std::move(next);
    }
    Real coeff_scale(1);
    for (const auto& v : prod) coeff_scale = std::max<Real>(coeff_scale, Real(abs(v)));
    std::vector<mpz_class> coeffs(prod.size());
    bool ambiguous = false;
    for (size_t j = 0; j < prod.size(); ++j) {
      Near im = near_integer(prod[j].imag(), coeff_scale, nullptr);
      Near re = near_integer(prod[j].real(), coeff_scale, &coeffs[j]);
      if (im == Near::Reject || re == Near::Reject) return c;
      if (im == Near::Ambiguous || re == Near::Ambiguous) ambiguous = true;
    }
    if (ambiguous) {
      c.ambiguous = true;
      return c;
    }
    c.poly = IntPoly(std::move(coeffs));
    return c;
  }

  bool aberth(const IntPoly& p, std::vector<Complex>& z) const {
    using std::abs;
    const int n = p.degree();
    std::vector<Real> c(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[static_cast<size_t>(i)] = P::from(p.coeff(i));
    Real radius(1);
    for (int i = 0; i < n; ++i) radius = std::max<Real>(radius, Real(abs(c[static_cast<size_t>(i)])));
    radius = radius / 2 + 1;
    z.resize(static_cast<size_t>(n));
    const long double two_pi = 6.283185307179586476925286766559L;
    for (int k = 0; k < n; ++k) {
      long double angle = two_pi * k / n + 0.4L;
      z[static_cast<size_t>(k)] =
          Complex(radius * Real(std::cos(angle)), radius * Real(std::sin(angle)));
    }
    // A root is settled once |p(z)| is within rounding noise of the
    // evaluation, which also terminates on clustered roots.
    std::vector<bool> settled(static_cast<size_t>(n), false);
    for (int iter = 0; iter < 2000; ++iter) {
      bool all = true;
      for (int k = 0; k < n; ++k) {
        if (settled[static_cast<size_t>(k)]) continue;
        Complex& zk = z[static_cast<size_t>(k)];
        Complex val(c[static_cast<size_t>(n)]);
        Complex der(0);
        Real noise = abs(c[static_cast<size_t>(n)]);
        const Real mod = abs(zk);
        for (int i = n - 1; i >= 0; --i) {
          der = der * zk + val;
          val = val * zk + Complex(c[static_cast<size_t>(i)]);
          noise = noise * mod + abs(c[static_cast<size_t>(i)]);
        }
        if (abs(val) <= P::epsilon() * noise) {
          settled[static_cast<size_t>(k)] = true;
          continue;
        }
        all = false;
        Complex ratio = val / der;
        Complex repulsion(0);
        for (int j = 0; j < n; ++j) {
          if (j != k) repulsion += Complex(1) / (zk - z[static_cast<size_t>(j)]);
        }
        Complex step = ratio / (Complex(1) - ratio * repulsion);
        zk -= step;
        if (abs(step) <= P::epsilon() * (Real(1) + abs(zk))) settled[static_cast<size_t>(k)] = true;
      }
      if (all) return true;
    }
    return false;
  }

  IntPoly poly_;
};

template <class Complex>
SearchOutcome split_with(const IntPoly& s, std::vector<IntPoly>& out) {
  RootSubsetFactorizer<Complex> f(s);
  return f.run(out);
}

std::vector<IntPoly> split_squarefree(const IntPoly& s) {
  std::vector<IntPoly> out;
  if (split_with<std::complex<long double>>(s, out) == SearchOutcome::Done) return out;
  out.clear();
  if (split_with<bmp::cpp_complex_50>(s, out) == SearchOutcome::Done) return out;
  out.clear();
  if (split_with<bmp::cpp_complex_100>(s, out) == SearchOutcome::Done) return out;
  throw FactorizationFailed("precision escalation exhausted while factoring " + s.to_string());
}

}  // namespace

namespace detail {

std::vector<std::complex<long double>> approximate_roots(const IntPoly& squarefree) {
  return RootSubsetFactorizer<std::complex<long double>>(squarefree).roots_only();
}

}  // namespace detail

IntPoly FactorMultiset::expand() const {
  IntPoly r = IntPoly::constant(1);
  for (const auto& f : factors) r *= f.poly.pow(static_cast<unsigned>(f.multiplicity));
  return r;
}

int FactorMultiset::total_degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.poly.degree() * f.multiplicity;
  return d;
}

std::string FactorMultiset::to_string() const {
  if (factors.empty()) return "1";
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += " ";
    s += "(" + f.poly.to_string() + ")";
    if (f.multiplicity > 1) s += "^" + std::to_string(f.multiplicity);
  }
  return s;
}

FactorMultiset factor_int_poly(const IntPoly& p, int max_degree) {
  if (p.is_zero() || !p.is_monic()) throw std::invalid_argument("factor_int_poly: input must be monic");
  if (p.degree() > max_degree) {
    throw std::invalid_argument("factor_int_poly: degree " + std::to_string(p.degree()) +
                                " exceeds the configured maximum " + std::to_string(max_degree));
  }
  FactorMultiset result;
  for (const auto& [piece, mult] : squarefree_decomposition(p)) {
    for (auto& f : split_squarefree(piece)) result.factors.push_back({std::move(f), mult});
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const Factor& a, const Factor& b) { return CanonicalLess{}(a.poly, b.poly); });
  if (result.expand() != p) {
    throw FactorizationFailed("factor product does not reproduce " + p.to_string());
  }
  return result;
}

std::string factored_string(const IntPoly& p) { return factor_int_poly(p).to_string(); }

}  // namespace curvebound
