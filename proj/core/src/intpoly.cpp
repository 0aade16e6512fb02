#include "curvebound/intpoly.hpp"

#include <algorithm>
#include <sstream>

namespace curvebound {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly::IntPoly(std::span<const long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(int degree) {
  std::vector<mpz_class> c(static_cast<size_t>(degree) + 1, 0);
  c.back() = 1;
  return IntPoly(std::move(c));
}

IntPoly IntPoly::x_plus(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c, 1}); }

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& IntPoly::lead() const {
  if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

mpz_class IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  acc.canonicalize();
  return acc;
}

long double IntPoly::eval(long double x) const {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (lead() < 0) g = -g;
  IntPoly r = *this;
  for (auto& c : r.coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(c));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const mpz_class& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

IntPoly operator-(IntPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::strong_ordering canonical_compare(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    int c = cmp(a.coeffs()[static_cast<size_t>(i)], b.coeffs()[static_cast<size_t>(i)]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool high_to_low_less(const IntPoly& a, const IntPoly& b) {
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) { return a * b; }

std::optional<IntPoly> try_divexact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<mpz_class> rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<mpz_class> quot(static_cast<size_t>(a.degree() - db + 1), 0);
  const mpz_class& lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    mpz_class& top = rem[static_cast<size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    mpz_class qc;
    mpz_divexact(qc.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) {
      mpz_submul(rem[static_cast<size_t>(i - db + j)].get_mpz_t(), qc.get_mpz_t(),
                 b.coeffs()[static_cast<size_t>(j)].get_mpz_t());
    }
    quot[static_cast<size_t>(i - db)] = std::move(qc);
  }
  for (int i = 0; i < db; ++i) {
    if (rem[static_cast<size_t>(i)] != 0) return std::nullopt;
  }
  return IntPoly(std::move(quot));
}

IntPoly poly_divexact(const IntPoly& a, const IntPoly& b) {
  auto q = try_divexact(a, b);
  if (!q) throw NotDivisible();
  return *std::move(q);
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<mpz_class> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  const mpz_class& lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    mpz_class top = r[static_cast<size_t>(i)];
    for (auto& c : r) c *= lb;
    if (top != 0) {
      for (int j = 0; j <= db; ++j) {
        mpz_submul(r[static_cast<size_t>(i - db + j)].get_mpz_t(), top.get_mpz_t(),
                   b.coeffs()[static_cast<size_t>(j)].get_mpz_t());
      }
    }
    r[static_cast<size_t>(i)] = 0;
  }
  r.resize(static_cast<size_t>(db));
  return IntPoly(std::move(r));
}

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("resultant of the zero polynomial");
  const int m = a.degree();
  const int n = b.degree();
  const int size = m + n;
  if (size == 0) return 1;
  // Sylvester matrix: n rows of a's coefficients, then m rows of b's, each
  // written from the top coefficient down and shifted one column per row.
  std::vector<std::vector<mpz_class>> mat(static_cast<size_t>(size),
                                          std::vector<mpz_class>(static_cast<size_t>(size), 0));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j <= m; ++j) mat[r][r + j] = a.coeffs()[static_cast<size_t>(m - j)];
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) mat[n + r][r + j] = b.coeffs()[static_cast<size_t>(n - j)];
  }
  // Bareiss fraction-free elimination.
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (mat[k][k] == 0) {
      int swap = -1;
      for (int i = k + 1; i < size; ++i) {
        if (mat[i][k] != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      std::swap(mat[k], mat[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        mpz_class v = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
        mpz_divexact(mat[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      mat[i][k] = 0;
    }
    prev = mat[k][k];
  }
  mpz_class det = mat[size - 1][size - 1];
  return sign < 0 ? mpz_class(-det) : det;
}

mpz_class reduced_resultant(const IntPoly& a, const IntPoly& b) {
  if (!a.is_monic() || b.is_zero()) throw std::invalid_argument("reduced_resultant: a must be monic and b nonzero");
  const int m = a.degree();
  if (m == 0) return 1;
  // Z[x]/(a, b) is the cokernel of multiplication by b on Z[x]/(a); its
  // exponent is the lcm of the denominators of that matrix's inverse.
  std::vector<std::vector<mpq_class>> mat(static_cast<size_t>(m), std::vector<mpq_class>(static_cast<size_t>(2 * m), 0));
  IntPoly col = b;
  const IntPoly x = IntPoly::monomial(1);
  for (int j = 0; j < m; ++j) {
    if (col.degree() >= m) col = pseudo_remainder(col, a);  // a is monic: exact remainder
    for (int i = 0; i < m; ++i) mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.coeff(i);
    mat[static_cast<size_t>(j)][static_cast<size_t>(m + j)] = 1;
    col *= x;
  }
  for (int k = 0; k < m; ++k) {
    int pivot = -1;
    for (int i = k; i < m; ++i) {
      if (mat[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return 0;
    std::swap(mat[static_cast<size_t>(k)], mat[static_cast<size_t>(pivot)]);
    const mpq_class inv = 1 / mpq_class(mat[static_cast<size_t>(k)][static_cast<size_t>(k)]);
    for (auto& v : mat[static_cast<size_t>(k)]) v *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == k || mat[static_cast<size_t>(i)][static_cast<size_t>(k)] == 0) continue;
      const mpq_class f = mat[static_cast<size_t>(i)][static_cast<size_t>(k)];
      for (int j = 0; j < 2 * m; ++j) {
        mat[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * mat[static_cast<size_t>(k)][static_cast<size_t>(j)];
      }
    }
  }
  mpz_class exponent = 1;
  for (int i = 0; i < m; ++i) {
    for (int j = m; j < 2 * m; ++j) {
      mpz_lcm(exponent.get_mpz_t(), exponent.get_mpz_t(), mat[static_cast<size_t>(i)][static_cast<size_t>(j)].get_den_mpz_t());
    }
  }
  return exponent;
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPoly u = a.primitive_part();
  IntPoly v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPoly r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.is_zero() ? IntPoly{} : r.primitive_part();
  }
  return u.primitive_part();
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p.primitive_part();
  IntPoly g = poly_gcd(p, p.derivative());
  return poly_divexact(p.primitive_part(), g).primitive_part();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  std::vector<std::pair<IntPoly, int>> out;
  IntPoly pp = p.primitive_part();
  if (pp.degree() <= 0) return out;
  IntPoly dp = pp.derivative();
  IntPoly a0 = poly_gcd(pp, dp);
  IntPoly b = poly_divexact(pp, a0).primitive_part();
  IntPoly c = poly_divexact(dp, a0);
  IntPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    IntPoly a = poly_gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    b = poly_divexact(b, a).primitive_part();
    c = poly_divexact(d, a);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

bool is_squarefree_integer(const mpz_class& n) {
  if (n == 0) throw std::invalid_argument("is_squarefree_integer: zero input");
  mpz_class m = abs(n);
  for (mpz_class p = 2; p * p <= m; ++p) {
    if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) return false;
    }
  }
  return true;
}

}  // namespace curvebound
