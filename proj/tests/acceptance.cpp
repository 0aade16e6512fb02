// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "curvebound/coverproof.hpp"
#include "curvebound/eliminate.hpp"
#include "curvebound/enumerate.hpp"
#include "curvebound/ffcurve.hpp"
#include "curvebound/weil.hpp"
#include "reference_tables.hpp"

using namespace curvebound;

namespace {

struct Check {
  std::ostringstream why;
  bool ok = true;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) why << msg;
    ok = ok && cond;
  }
};

std::vector<IntPoly> sorted_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<IntPoly> v;
  for (const auto& r : rows) v.emplace_back(std::span<const long>(r));
  std::sort(v.begin(), v.end(), high_to_low_less);
  return v;
}

std::vector<std::vector<long>> p1_24_rows() {
  std::vector<std::vector<long>> rows;
  for (const auto& r : reference::genus8_p1_24()) rows.push_back(r.h);
  return rows;
}

long box_bound(int g, int k, long q) {
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(g), static_cast<unsigned long>(k));
  mpz_class fq;
  mpz_ui_pow_ui(fq.get_mpz_t(), static_cast<unsigned long>(4 * q), static_cast<unsigned long>(k));
  mpz_class r = binom * binom * fq;
  mpz_sqrt(r.get_mpz_t(), r.get_mpz_t());
  return r.get_si();
}

std::vector<IntPoly> brute_force(const ConstraintSet& cs) {
  const int g = cs.g;
  std::vector<long> bound(static_cast<size_t>(g));
  for (int k = 1; k <= g; ++k) bound[static_cast<size_t>(g - k)] = box_bound(g, k, cs.q);
  std::vector<long> c(static_cast<size_t>(g) + 1, 1);
  for (int j = 0; j < g; ++j) c[static_cast<size_t>(j)] = -bound[static_cast<size_t>(j)];
  std::vector<IntPoly> out;
  while (true) {
    IntPoly h{std::span<const long>(c)};
    if (satisfies_constraints(h, cs)) out.push_back(h);
    int j = 0;
    while (j < g && c[static_cast<size_t>(j)] == bound[static_cast<size_t>(j)]) {
      c[static_cast<size_t>(j)] = -bound[static_cast<size_t>(j)];
      ++j;
    }
    if (j == g) break;
    ++c[static_cast<size_t>(j)];
  }
  std::sort(out.begin(), out.end(), high_to_low_less);
  return out;
}

IntPoly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<long> coef(-12, 12);
  const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_degree));
  std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
  for (auto& x : c) x = coef(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

Check criterion1() {
  Check c;
  ConstraintSet cs{4, 8, {{1, 24}}};
  const auto got = enumerate_real_weil(cs);
  c.require(got.size() == 26, "expected 26 candidates, got " + std::to_string(got.size()));
  c.require(got == sorted_rows(p1_24_rows()), "candidate list differs from the reference table");
  return c;
}

Check criterion2() {
  Check c;
  std::vector<IntPoly> polys;
  for (const auto& r : reference::genus8_p1_24()) polys.emplace_back(std::span<const long>(r.h));
  const auto verdicts = eliminate_all(polys, 4);
  for (size_t i = 0; i < verdicts.size(); ++i) {
    const auto& ref = reference::genus8_p1_24()[i];
    const std::string row = "row " + std::to_string(i + 1) + ": ";
    c.require(verdicts[i].eliminated == (i != 0), row + "wrong eliminated/survives status");
    c.require(verdicts[i].argument == ref.argument,
              row + "argument " + to_string(verdicts[i].argument) + " != " + to_string(ref.argument));
  }
  return c;
}

Check criterion3() {
  Check c;
  ConstraintSet cs{4, 8, {{1, 16}, {2, 8}, {3, 32}}};
  const auto got = enumerate_real_weil(cs);
  c.require(got.size() == 44, "expected 44 candidates, got " + std::to_string(got.size()));
  c.require(got == sorted_rows(reference::genus8_resolvent()), "candidate list differs from the reference table");
  for (const auto& h : got) c.require(!try_divexact(h, IntPoly{3, 1}), h.to_string() + " is divisible by x + 3");
  return c;
}

Check criterion4() {
  Check c;
  try {
    const Certificate cert = replay_theorem2(4, BoundsTable::load(CURVEBOUND_TEST_BOUNDS));
    for (const auto& s : cert.steps) c.require(s.passed, "step " + s.name + " failed");
    auto expect = [&](const std::string& step, const std::string& key, const std::string& v) {
      const std::string got = cert.value(step, key);
      c.require(got == v, step + "/" + key + " = " + got + ", expected " + v);
    };
    expect("galois-contradiction", "different degree", "14");
    expect("galois-contradiction", "P7(C)", "2496");
    expect("galois-contradiction", "residue mod 3", "0");
    expect("galois-contradiction", "required residue", "1");
    expect("exclude-inertia-C3", "g_D", "15");
    expect("exclude-inertia-C3", "N1(D)", "48");
    expect("exclude-inertia-C3", "bound N_q(g_D)", "37");
    expect("resolvent-place-counts", "P1(F)", "16");
    expect("resolvent-place-counts", "P2(F)", "8");
    expect("resolvent-place-counts", "P3(F)", "32");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
  return c;
}

Check criterion5() {
  Check c;
  const KummerCover cover;
  c.require(cover.count_points_C(1) == 22, "N_1(C) = " + std::to_string(cover.count_points_C(1)));
  c.require(cover.genus_C_rh() == 8, "genus " + std::to_string(cover.genus_C_rh()));
  std::map<std::string, int> div;
  for (const auto& [p, v] : cover.divisor_of_f()) div[p.name()] = v;
  c.require(div == std::map<std::string, int>{{"P0", 6}, {"P1", 1}, {"P2", 1}, {"Q1", -4}, {"Q2", -4}},
            "unexpected divisor of f");
  const std::string series = series_to_string(GFContext::get(2), cover.local_series_y(7));
  c.require(series == "x^2 + x^3 + x^4 + x^5 + O(x^7)", "y = " + series);
  return c;
}

Check criterion6() {
  Check c;
  for (auto [q, g] : {std::pair(2L, 1), std::pair(2L, 2), std::pair(4L, 1), std::pair(4L, 2)}) {
    ConstraintSet cs{q, g, {}};
    c.require(enumerate_real_weil(cs) == brute_force(cs), "unconstrained mismatch");
    for (long p1 = 0; p1 <= q + 1 + box_bound(g, 1, q) + 1; ++p1) {
      cs.prescribed = {{1, p1}};
      c.require(enumerate_real_weil(cs) == brute_force(cs),
                "mismatch at q=" + std::to_string(q) + " g=" + std::to_string(g) + " P1=" + std::to_string(p1));
    }
  }
  return c;
}

Check criterion7() {
  Check c;
  std::mt19937 rng(20121);

  // Moebius consistency on random products of elliptic factors.
  const long qs[] = {2, 3, 4, 5, 7, 8, 9, 16, 25};
  for (int trial = 0; trial < 1000; ++trial) {
    const long q = qs[rng() % 9];
    long b = 0;
    while ((b + 1) * (b + 1) <= 4 * q) ++b;
    std::uniform_int_distribution<long> t(-b, b);
    IntPoly h{1};
    const int g = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < g; ++i) h *= IntPoly{-t(rng), 1};
    const WeilProfile p = WeilProfile::make(h, q, 10);
    for (int n = 1; n <= 10; ++n) {
      mpz_class sum = 0;
      for (int d = 1; d <= n; ++d) {
        if (n % d == 0) sum += d * p.P_n(d);
      }
      c.require(sum == p.R_n(n), "Moebius identity fails for " + h.to_string());
    }
  }

  // Weil bound on enumerated candidates.
  for (const auto& rows : {p1_24_rows(), reference::genus8_resolvent()}) {
    for (const auto& h : sorted_rows(rows)) c.require(weil_bound_holds(WeilProfile::make(h, 4, 8)), "Weil bound");
  }

  // Resultant multiplicativity and swap sign.
  for (int trial = 0; trial < 300; ++trial) {
    const IntPoly a = random_poly(rng, 5);
    const IntPoly b = random_poly(rng, 5);
    const IntPoly d = random_poly(rng, 5);
    c.require(resultant(a * b, d) == resultant(a, d) * resultant(b, d), "multiplicativity");
    const int sign = (a.degree() * b.degree()) % 2 == 0 ? 1 : -1;
    c.require(resultant(a, b) == sign * resultant(b, a), "swap sign");
  }

  // Factorisation: product reproduces the input, factors have no proper
  // rational-root or quadratic divisors of small size.
  for (int trial = 0; trial < 300; ++trial) {
    IntPoly p = random_poly(rng, 4);
    std::vector<mpz_class> m(p.coeffs().begin(), p.coeffs().end());
    m.back() = 1;
    p = IntPoly(std::move(m));
    if (p.degree() < 1) continue;
    const FactorMultiset fm = factor_int_poly(p);
    c.require(fm.expand() == p, "factor product differs for " + p.to_string());
    for (const auto& f : fm.factors) {
      if (f.poly.degree() < 2) continue;
      const mpz_class c0 = abs(f.poly.coeff(0));
      for (long r = -c0.get_si(); r <= c0.get_si(); ++r) {
        c.require(f.poly.eval(mpz_class(r)) != 0, "factor " + f.poly.to_string() + " has a rational root");
      }
    }
  }

  // Places of D against the point counts over GF(4^n), n <= 8.
  const KummerCover cover;
  const auto places = cover.places_D(8);
  for (int n = 1; n <= 8; ++n) {
    long sum = 0;
    for (const auto& p : places) {
      if (n % p.degree == 0) sum += p.degree;
    }
    c.require(sum == cover.count_points_D(n), "place count mismatch at n = " + std::to_string(n));
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"genus-8 enumeration with P1 = 24 (26 candidates)", criterion1},
      {"verdicts and argument labels for the 26 candidates", criterion2},
      {"resolvent enumeration (44 candidates, none divisible by x+3)", criterion3},
      {"genus-8 nonexistence certificate", criterion4},
      {"Kummer cover: N_1 = 22, genus 8, divisor, local series", criterion5},
      {"enumeration equals brute force on small (q, g)", criterion6},
      {"invariant suites", criterion7},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first;
    std::cout.precision(1);
    std::cout << std::fixed << " (" << secs << " s)";
    if (!c.ok) std::cout << " -- " << c.why.str();
    std::cout << std::endl;
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
