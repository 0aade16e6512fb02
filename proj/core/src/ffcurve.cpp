#include "curvebound/ffcurve.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "curvebound/weil.hpp"

namespace curvebound {

namespace {

using Series = std::vector<GFElem>;

constexpr int kLiftOrder = 40;

int degree_of(F2Poly p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

F2Poly derivative(F2Poly p) { return (p >> 1) & 0x5555555555555555ULL; }

// v^d p(1/v)
F2Poly reverse(F2Poly p, int d) {
  F2Poly r = 0;
  for (int i = 0; i <= d; ++i) {
    if (p >> i & 1) r |= F2Poly{1} << (d - i);
  }
  return r;
}

GFElem eval(const GFContext& F, F2Poly p, GFElem a) {
  GFElem r = F.zero();
  for (int i = degree_of(p); i >= 0; --i) {
    r = F.mul(r, a);
    if (p >> i & 1) r = F.add(r, F.one());
  }
  return r;
}

// Truncated power series in a uniformizer t over GF(2^m).
struct Ring {
  const GFContext& F;
  int N;

  Series constant(GFElem c) const {
    Series s(static_cast<size_t>(N), F.zero());
    s[0] = c;
    return s;
  }
  Series shifted(GFElem c) const {  // c + t
    Series s = constant(c);
    if (N > 1) s[1] = F.one();
    return s;
  }
  Series add(const Series& a, const Series& b) const {
    Series r(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) r[static_cast<size_t>(i)] = F.add(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]);
    return r;
  }
  Series mul(const Series& a, const Series& b) const {
    Series r(static_cast<size_t>(N), F.zero());
    for (int i = 0; i < N; ++i) {
      if (a[static_cast<size_t>(i)].is_zero()) continue;
      for (int j = 0; i + j < N; ++j) {
        r[static_cast<size_t>(i + j)] =
            F.add(r[static_cast<size_t>(i + j)], F.mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]));
      }
    }
    return r;
  }
  Series inv(const Series& a) const {
    if (a[0].is_zero()) throw LiftFailed("series is not a unit");
    Series b(static_cast<size_t>(N), F.zero());
    const GFElem i0 = F.inv(a[0]);
    b[0] = i0;
    for (int k = 1; k < N; ++k) {
      GFElem s = F.zero();
      for (int i = 1; i <= k; ++i) s = F.add(s, F.mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(k - i)]));
      b[static_cast<size_t>(k)] = F.mul(i0, s);
    }
    return b;
  }
  Series eval(F2Poly p, const Series& x) const {
    Series r = constant(F.zero());
    for (int i = degree_of(p); i >= 0; --i) {
      r = mul(r, x);
      if (p >> i & 1) r[0] = F.add(r[0], F.one());
    }
    return r;
  }
  static int ord(const Series& s) {
    for (size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_zero()) return static_cast<int>(i);
    }
    return -1;
  }
};

// Y^2 + H(X) Y + G(X) along a branch.
Series chart_equation(const Ring& R, F2Poly H, F2Poly G, const Series& X, const Series& Y) {
  return R.add(R.add(R.mul(Y, Y), R.mul(R.eval(H, X), Y)), R.eval(G, X));
}

struct Branch {
  Series X;
  Series Y;
};

// Local branch of Y^2 + H(X) Y = G(X) through the smooth point (x0, y0).
// X - x0 is the uniformizer when H(x0) != 0, else Y - y0.
Branch lift(const GFContext& F, F2Poly H, F2Poly G, GFElem x0, GFElem y0, int N) {
  const Ring R{F, N};
  if (!F.add(F.add(F.mul(y0, y0), F.mul(eval(F, H, x0), y0)), eval(F, G, x0)).is_zero()) {
    throw LiftFailed("point is not on the curve");
  }
  Branch b;
  if (!eval(F, H, x0).is_zero()) {
    b.X = R.shifted(x0);
    b.Y = R.constant(y0);
    const Series dY = R.inv(R.eval(H, b.X));
    for (int it = 0; it <= N; ++it) {
      Series r = chart_equation(R, H, G, b.X, b.Y);
      if (Ring::ord(r) < 0) return b;
      b.Y = R.add(b.Y, R.mul(r, dY));
    }
  } else {
    b.X = R.constant(x0);
    b.Y = R.shifted(y0);
    for (int it = 0; it <= N; ++it) {
      Series r = chart_equation(R, H, G, b.X, b.Y);
      if (Ring::ord(r) < 0) return b;
      Series dX = R.add(R.mul(R.eval(derivative(H), b.X), b.Y), R.eval(derivative(G), b.X));
      if (dX[0].is_zero()) throw LiftFailed("singular point at x = " + F.to_string(x0));
      b.X = R.add(b.X, R.mul(r, R.inv(dX)));
    }
  }
  throw LiftFailed("Newton lifting did not converge");
}

// Roots of z^2 + a z + b over F.
std::vector<GFElem> quadratic_roots(const GFContext& F, GFElem a, GFElem b) {
  if (a.is_zero()) return {F.sqrt(b)};
  auto z = F.solve_artin_schreier(F.div(b, F.mul(a, a)));
  if (!z) return {};
  return {F.mul(a, *z), F.mul(a, F.add(*z, F.one()))};
}

long quadratic_root_count(const GFContext& F, GFElem a, GFElem b) {
  if (a.is_zero()) return 1;
  return F.trace(F.div(b, F.mul(a, a))) == 0 ? 2 : 0;
}

std::vector<int> parse_bits(std::istream& in, const std::string& key) {
  std::vector<int> bits;
  int c;
  while (in >> c) {
    if (c != 0 && c != 1) throw std::invalid_argument("coefficient of " + key + " must be 0 or 1");
    bits.push_back(c);
  }
  if (!in.eof()) throw std::invalid_argument("malformed coefficient list for " + key);
  if (bits.size() > 64) throw std::invalid_argument("polynomial " + key + " has degree above 63");
  return bits;
}

std::string bits_string(F2Poly p) {
  std::string s;
  for (int i = 0; i <= std::max(degree_of(p), 0); ++i) s += (i ? " " : "") + std::to_string(p >> i & 1);
  return s;
}

}  // namespace

KummerCoverSpec KummerCoverSpec::parse(const std::string& text) {
  KummerCoverSpec spec;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = line.substr(0, line.find('#'));
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw std::invalid_argument("expected 'key = coefficients', got '" + line + "'");
      }
      continue;
    }
    std::istringstream keyin(line.substr(0, eq));
    std::string key;
    keyin >> key;
    std::istringstream valin(line.substr(eq + 1));
    F2Poly p = 0;
    const auto bits = parse_bits(valin, key);
    for (size_t i = 0; i < bits.size(); ++i) p |= F2Poly(bits[i]) << i;
    if (key == "h") spec.h = p;
    else if (key == "g") spec.g = p;
    else if (key == "f_y") spec.f_y = p;
    else if (key == "f_0") spec.f_0 = p;
    else throw std::invalid_argument("unknown key '" + key + "' (expected h, g, f_y or f_0)");
  }
  spec.validate();
  return spec;
}

std::string KummerCoverSpec::to_string() const {
  return "h = " + bits_string(h) + "\ng = " + bits_string(g) + "\nf_y = " + bits_string(f_y) + "\nf_0 = " +
         bits_string(f_0) + "\n";
}

void KummerCoverSpec::validate() const {
  if (h == 0) throw std::invalid_argument("h must be nonzero in characteristic 2");
  if (degree_of(h) > 3 || degree_of(g) > 6) throw std::invalid_argument("genus-2 model needs deg h <= 3, deg g <= 6");
  if (degree_of(h) < 3 && degree_of(g) < 5) throw std::invalid_argument("model has genus below 2");
  if (f_y == 0 && f_0 == 0) throw std::invalid_argument("f must be nonzero");
  if (cover_degree != 3) throw std::invalid_argument("only cyclic triple covers are supported");
}

std::string to_string(KummerBehavior b) {
  switch (b) {
    case KummerBehavior::Split: return "split";
    case KummerBehavior::Inert: return "inert";
    case KummerBehavior::Ramified: return "ramified";
  }
  return "?";
}

std::string PlaceRecord::name() const {
  if (!label.empty()) return label;
  const GFContext& F = GFContext::get(field_degree());
  if (at_infinity) return "inf(u=" + F.to_string(y) + ")";
  return "(" + F.to_string(x) + "," + F.to_string(y) + ")/deg" + std::to_string(degree);
}

KummerCover::KummerCover(KummerCoverSpec spec) : spec_(spec) {
  spec_.validate();
  H_ = reverse(spec_.h, 3);
  G_ = reverse(spec_.g, 6);
  check_nonsingular();
}

void KummerCover::check_nonsingular(int max_k) const {
  for (int k = 1; k <= max_k; ++k) {
    const GFContext& F = GFContext::get(2 * k);
    for (std::uint32_t b = 0; b < F.size(); ++b) {
      const GFElem x{b};
      if (!eval(F, spec_.h, x).is_zero()) continue;
      const GFElem y = F.sqrt(eval(F, spec_.g, x));
      const GFElem fx = F.add(F.mul(eval(F, derivative(spec_.h), x), y), eval(F, derivative(spec_.g), x));
      if (fx.is_zero()) throw std::invalid_argument("D is singular at x = " + F.to_string(x) + " over GF(4^" + std::to_string(k) + ")");
    }
  }
  if ((H_ & 1) == 0) {
    const GFContext& F = GFContext::get(2);
    const GFElem u = F.sqrt(GFElem{static_cast<std::uint32_t>(G_ & 1)});
    const GFElem fv = F.add(F.mul(GFElem{static_cast<std::uint32_t>(H_ >> 1 & 1)}, u),
                            GFElem{static_cast<std::uint32_t>(G_ >> 1 & 1)});
    if (fv.is_zero()) throw std::invalid_argument("D is singular at infinity");
  }
}

LocalF KummerCover::local_f(const GFContext& F, GFElem x, GFElem y, bool at_infinity) const {
  const Ring R{F, kLiftOrder};
  if (!at_infinity) {
    const GFElem v = F.add(F.mul(eval(F, spec_.f_y, x), y), eval(F, spec_.f_0, x));
    if (!v.is_zero()) return {0, v};
    const Branch b = lift(F, spec_.h, spec_.g, x, y, kLiftOrder);
    const Series f = R.add(R.mul(R.eval(spec_.f_y, b.X), b.Y), R.eval(spec_.f_0, b.X));
    const int o = Ring::ord(f);
    if (o < 0) throw LiftFailed("f vanishes to the working order");
    return {o, f[static_cast<size_t>(o)]};
  }
  // x = 1/v, y = u/v^3:  v^k f = v^(k-a-3) rev_a(f_y)(v) u + v^(k-b) rev_b(f_0)(v).
  const int a = degree_of(spec_.f_y);
  const int bdeg = degree_of(spec_.f_0);
  const int k = std::max(spec_.f_y ? a + 3 : 0, spec_.f_0 ? bdeg : 0);
  const F2Poly A = spec_.f_y ? reverse(spec_.f_y, a) << (k - a - 3) : 0;
  const F2Poly B = spec_.f_0 ? reverse(spec_.f_0, bdeg) << (k - bdeg) : 0;
  const Branch br = lift(F, H_, G_, x, y, kLiftOrder);
  const Series s = R.add(R.mul(R.eval(A, br.X), br.Y), R.eval(B, br.X));
  const int os = Ring::ord(s);
  const int ov = Ring::ord(br.X);
  if (os < 0 || ov < 0) throw LiftFailed("f vanishes to the working order at infinity");
  const GFElem lead_v = F.pow(br.X[static_cast<size_t>(ov)], static_cast<std::uint64_t>(k));
  return {os - k * ov, F.div(s[static_cast<size_t>(os)], lead_v)};
}

KummerBehavior KummerCover::kummer_place_behavior(const PlaceRecord& place) const {
  if (place.f_valuation % spec_.cover_degree != 0) return KummerBehavior::Ramified;
  const GFContext& F = GFContext::get(place.field_degree());
  return F.is_cube(place.f_unit) ? KummerBehavior::Split : KummerBehavior::Inert;
}

long KummerCover::count_points_D(int n) const {
  if (n < 1 || 2 * n > GFContext::kMaxDegree) throw std::invalid_argument("extension degree must be in [1, 8]");
  const GFContext& F = GFContext::get(2 * n);
  long count = 0;
  for (std::uint32_t b = 0; b < F.size(); ++b) {
    const GFElem x{b};
    count += quadratic_root_count(F, eval(F, spec_.h, x), eval(F, spec_.g, x));
  }
  count += quadratic_root_count(F, GFElem{static_cast<std::uint32_t>(H_ & 1)}, GFElem{static_cast<std::uint32_t>(G_ & 1)});
  return count;
}

IntPoly KummerCover::real_weil_of_D() const {
  return real_weil_from_point_counts({count_points_D(1), count_points_D(2)}, kBaseField, kGenusD);
}

std::vector<PlaceRecord> KummerCover::places_D(int max_degree) const {
  if (max_degree < 1 || 2 * max_degree > GFContext::kMaxDegree) {
    throw std::invalid_argument("place degree must be in [1, 8]");
  }
  std::vector<PlaceRecord> out;
  for (int d = 1; d <= max_degree; ++d) {
    const GFContext& F = GFContext::get(2 * d);
    auto frob4 = [&](GFElem a) { return F.frobenius(F.frobenius(a)); };
    auto consider = [&](GFElem x, GFElem y, bool inf) {
      GFElem cx = x;
      GFElem cy = y;
      for (int k = 1; k <= d; ++k) {
        cx = frob4(cx);
        cy = frob4(cy);
        const bool back = cx == x && cy == y;
        if (back && k < d) return;  // smaller orbit
        if (!back && std::pair(cx.bits, cy.bits) < std::pair(x.bits, y.bits)) return;  // not the representative
      }
      PlaceRecord p;
      p.degree = d;
      p.at_infinity = inf;
      p.x = x;
      p.y = y;
      const LocalF lf = local_f(F, x, y, inf);
      p.f_valuation = lf.valuation;
      p.f_unit = lf.unit;
      p.behavior = kummer_place_behavior(p);
      if (d == 1) {
        const GFElem w = F.omega();
        const GFElem w2 = F.mul(w, w);
        if (inf) p.label = y == w ? "Q1" : (y == w2 ? "Q2" : "");
        else if (x.is_zero() && y.is_zero()) p.label = "P0";
        else if (x == w && y == F.one()) p.label = "P1";
        else if (x == w2 && y == F.one()) p.label = "P2";
      }
      out.push_back(std::move(p));
    };
    for (std::uint32_t b = 0; b < F.size(); ++b) {
      const GFElem x{b};
      for (GFElem y : quadratic_roots(F, eval(F, spec_.h, x), eval(F, spec_.g, x))) consider(x, y, false);
    }
    for (GFElem u : quadratic_roots(F, GFElem{static_cast<std::uint32_t>(H_ & 1)}, GFElem{static_cast<std::uint32_t>(G_ & 1)})) {
      consider(F.zero(), u, true);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const PlaceRecord& a, const PlaceRecord& b) {
    return std::tuple(a.degree, a.at_infinity, a.x.bits, a.y.bits) < std::tuple(b.degree, b.at_infinity, b.x.bits, b.y.bits);
  });

  const WeilProfile zeta = WeilProfile::make(real_weil_of_D(), kBaseField, max_degree);
  for (int d = 1; d <= max_degree; ++d) {
    const auto n = std::count_if(out.begin(), out.end(), [d](const PlaceRecord& p) { return p.degree == d; });
    if (zeta.P_n(d) != static_cast<long>(n)) {
      throw std::logic_error("degree-" + std::to_string(d) + " place count " + std::to_string(n) +
                             " disagrees with the zeta function of D (" + zeta.P_n(d).get_str() + ")");
    }
  }
  return out;
}

std::vector<GFElem> KummerCover::local_series_y(int order) const {
  if (order < 1 || order > 32) throw std::invalid_argument("series order must be in [1, 32]");
  const GFContext& F = GFContext::get(2);
  if (eval(F, spec_.h, F.zero()).is_zero() || !eval(F, spec_.g, F.zero()).is_zero()) {
    throw LiftFailed("x is not a uniformizer at (0, 0) or (0, 0) is not on D");
  }
  return lift(F, spec_.h, spec_.g, F.zero(), F.zero(), order).Y;
}

std::vector<GFElem> KummerCover::local_series_f(int order) const {
  const GFContext& F = GFContext::get(2);
  const Ring R{F, order};
  const Series y = local_series_y(order);
  const Series x = R.shifted(F.zero());
  return R.add(R.mul(R.eval(spec_.f_y, x), y), R.eval(spec_.f_0, x));
}

std::vector<std::pair<PlaceRecord, int>> KummerCover::divisor_of_f(int max_zero_degree) const {
  std::vector<std::pair<PlaceRecord, int>> div;
  long total = 0;
  for (auto& p : places_D(max_zero_degree)) {
    if (p.f_valuation == 0) continue;
    total += static_cast<long>(p.f_valuation) * p.degree;
    const int v = p.f_valuation;
    div.emplace_back(std::move(p), v);
  }
  if (total != 0) {
    throw DegreeMismatch("divisor of f has degree " + std::to_string(total) + " over places of degree <= " +
                         std::to_string(max_zero_degree));
  }
  return div;
}

std::vector<long> KummerCover::point_counts_C(int max_n) const {
  const long n3 = spec_.cover_degree;
  std::vector<long> counts(static_cast<size_t>(max_n), 0);
  for (const auto& p : places_D(max_n)) {
    for (int n = 1; n <= max_n; ++n) {
      const long d = p.degree;
      long add = 0;
      switch (p.behavior) {
        case KummerBehavior::Split: add = n % d == 0 ? n3 * d : 0; break;
        case KummerBehavior::Inert: add = n % (n3 * d) == 0 ? n3 * d : 0; break;
        case KummerBehavior::Ramified: add = n % d == 0 ? d : 0; break;
      }
      counts[static_cast<size_t>(n - 1)] += add;
    }
  }
  return counts;
}

long KummerCover::count_points_C(int n) const { return point_counts_C(n).back(); }

int genus_rh(int cover_degree, int genus_base, const std::vector<int>& ramified_degrees) {
  long twice = static_cast<long>(cover_degree) * (2L * genus_base - 2);
  for (int d : ramified_degrees) twice += static_cast<long>(cover_degree - 1) * d;
  if (twice % 2 != 0) throw std::logic_error("Riemann-Hurwitz gives an odd 2g - 2");
  return static_cast<int>((twice + 2) / 2);
}

int KummerCover::genus_C_rh() const {
  std::vector<int> degrees;
  for (const auto& [p, v] : divisor_of_f()) {
    if (v % spec_.cover_degree != 0) degrees.push_back(p.degree);
  }
  return genus_rh(spec_.cover_degree, kGenusD, degrees);
}

IntPoly real_weil_from_point_counts(const std::vector<mpz_class>& counts, long q, int g) {
  if (g < 1 || counts.size() < static_cast<size_t>(g)) {
    throw InconsistentCounts("need N_1 .. N_" + std::to_string(g) + " to reconstruct a genus-" + std::to_string(g) + " zeta function");
  }
  std::vector<mpz_class> s(static_cast<size_t>(g) + 1);
  mpz_class qn = 1;
  for (int n = 1; n <= g; ++n) {
    qn *= q;
    s[static_cast<size_t>(n)] = qn + 1 - counts[static_cast<size_t>(n - 1)];
  }
  // Newton's identities: k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} s_i.
  std::vector<mpz_class> e(static_cast<size_t>(g) + 1);
  e[0] = 1;
  for (int k = 1; k <= g; ++k) {
    mpz_class acc = 0;
    for (int i = 1; i <= k; ++i) {
      const mpz_class term = e[static_cast<size_t>(k - i)] * s[static_cast<size_t>(i)];
      acc += (i % 2 == 1) ? term : mpz_class(-term);
    }
    if (acc % k != 0) throw InconsistentCounts("e_" + std::to_string(k) + " is not an integer");
    e[static_cast<size_t>(k)] = acc / k;
  }
  std::vector<mpz_class> c(2 * static_cast<size_t>(g) + 1);
  mpz_class qpow = 1;
  for (int j = g; j >= 0; --j) {
    const mpz_class top = (j % 2 == 0) ? e[static_cast<size_t>(j)] : mpz_class(-e[static_cast<size_t>(j)]);
    c[static_cast<size_t>(2 * g - j)] = top;
    if (j < g) c[static_cast<size_t>(j)] = qpow * top;
    qpow *= q;
  }
  IntPoly h;
  try {
    h = weil_to_real(IntPoly(std::move(c)), q);
  } catch (const std::invalid_argument& ex) {
    throw InconsistentCounts(std::string("counts do not give a real Weil polynomial: ") + ex.what());
  }
  const WeilProfile prof = WeilProfile::make(h, q, static_cast<int>(counts.size()));
  for (size_t n = 1; n <= counts.size(); ++n) {
    if (prof.R_n(static_cast<int>(n)) != counts[n - 1]) {
      throw InconsistentCounts("reconstruction gives N_" + std::to_string(n) + " = " + prof.R_n(static_cast<int>(n)).get_str() +
                               ", expected " + counts[n - 1].get_str());
    }
  }
  return h;
}

IntPoly KummerCover::real_weil_of_C() const {
  const int g = genus_C_rh();
  constexpr int kCounts = 8;
  if (g > kCounts) throw InconsistentCounts("genus " + std::to_string(g) + " needs more than 8 point counts");
  const auto n = point_counts_C(kCounts);
  std::vector<mpz_class> counts(n.begin(), n.end());
  const IntPoly h = real_weil_from_point_counts(counts, kBaseField, g);
  ConstraintSet cs;
  cs.q = kBaseField;
  cs.g = g;
  cs.prescribed = {{1, n[0]}};
  const ConstraintCheck check = satisfies_constraints(h, cs);
  if (!check) throw InconsistentCounts("reconstructed polynomial fails the constraint test: " + check.witness);
  return h;
}

std::string series_to_string(const GFContext& F, const std::vector<GFElem>& series) {
  std::string out;
  for (size_t k = 0; k < series.size(); ++k) {
    const GFElem c = series[k];
    if (c.is_zero()) continue;
    std::string coeff;
    if (F.m() == 2) {
      const GFElem w = F.omega();
      coeff = c == F.one() ? "1" : (c == w ? "w" : "w^2");
    } else {
      coeff = F.to_string(c);
    }
    std::string mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
    std::string term = mono.empty() ? coeff : (coeff == "1" ? mono : coeff + "*" + mono);
    out += (out.empty() ? "" : " + ") + term;
  }
  out += (out.empty() ? "" : " + ") + std::string("O(x^") + std::to_string(series.size()) + ")";
  return out;
}

std::string places_to_csv(const std::vector<PlaceRecord>& places) {
  std::string out = "degree,label,chart,x,y,f_valuation,behavior\n";
  for (const auto& p : places) {
    const GFContext& F = GFContext::get(p.field_degree());
    out += std::to_string(p.degree) + "," + p.label + "," + (p.at_infinity ? "infinity" : "affine") + "," +
           F.to_string(p.x) + "," + F.to_string(p.y) + "," + std::to_string(p.f_valuation) + "," +
           to_string(p.behavior) + "\n";
  }
  return out;
}

}  // namespace curvebound
