#include <gtest/gtest.h>

#include <random>

#include "curvebound/serialize.hpp"
#include "curvebound/weil.hpp"
#include "reference_tables.hpp"

using namespace curvebound;

namespace {

IntPoly survivor() { return IntPoly(std::span<const long>(reference::genus8_p1_24()[0].h)); }

// R_n for h = prod (x - t_i), from the recurrence u_n = t u_{n-1} - q u_{n-2}
// for pi^n + (q/pi)^n, u_0 = 2, u_1 = t.
std::vector<mpz_class> linear_product_counts(const std::vector<long>& traces, long q, int n_max) {
  struct State {
    long t;
    mpz_class prev;
    mpz_class cur;
  };
  std::vector<State> st;
  for (long t : traces) st.push_back({t, 2, t});
  std::vector<mpz_class> R;
  mpz_class qn = 1;
  for (int n = 1; n <= n_max; ++n) {
    qn *= q;
    mpz_class s = 0;
    for (auto& x : st) {
      s += x.cur;
      mpz_class next = x.t * x.cur - q * x.prev;
      x.prev = x.cur;
      x.cur = next;
    }
    R.push_back(qn + 1 - s);
  }
  return R;
}

}  // namespace

TEST(Weil, RealToWeilExamples) {
  EXPECT_EQ(real_to_weil({3, 1}, 4), IntPoly({4, 3, 1}));
  EXPECT_EQ(real_to_weil({0, 1}, 4), IntPoly({4, 0, 1}));
  const IntPoly f = real_to_weil(survivor(), 4);
  EXPECT_EQ(f.degree(), 16);
  EXPECT_EQ(weil_to_real(f, 4), survivor());
  EXPECT_THROW(weil_to_real({1, 1, 1, 1}, 4), std::invalid_argument);
}

TEST(Weil, RoundTripRandom) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long> coef(-9, 9);
  const long qs[] = {2, 3, 4, 5, 8, 9, 16};
  for (int trial = 0; trial < 200; ++trial) {
    const int g = 1 + static_cast<int>(rng() % 16);
    std::vector<mpz_class> c(static_cast<size_t>(g) + 1);
    for (auto& x : c) x = coef(rng);
    c.back() = 1;
    const IntPoly h(std::move(c));
    const long q = qs[rng() % 7];
    EXPECT_EQ(weil_to_real(real_to_weil(h, q), q), h);
  }
}

TEST(Weil, PointAndPlaceCountsOfTheElliptic8PointCurve) {
  const WeilProfile E = WeilProfile::make({3, 1}, 4, 3);
  EXPECT_EQ(E.R_n(1), 8);
  EXPECT_EQ(E.R_n(2), 16);
  EXPECT_EQ(E.R_n(3), 56);
  EXPECT_EQ(E.P_n(1), 8);
  EXPECT_EQ(E.P_n(2), 4);
  EXPECT_EQ(E.P_n(3), 16);
  EXPECT_EQ(WeilProfile::make({0, 1}, 4, 1).R_n(1), 5);
}

TEST(Weil, SurvivorPlaceCounts) {
  const WeilProfile C = WeilProfile::make(survivor(), 4, 7);
  EXPECT_EQ(C.R_n(1), 24);
  EXPECT_EQ(C.P_n(1), 24);
  EXPECT_EQ(C.P_n(2), 0);
  EXPECT_EQ(C.P_n(3), 0);
  EXPECT_EQ(C.P_n(7), 2496);
}

TEST(Weil, EllipticRecurrenceMatchesNewton) {
  for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 16L}) {
    for (long t = -20; t <= 20; ++t) {
      if (t * t > 4 * q) continue;
      const WeilProfile p = WeilProfile::make({-t, 1}, q, 12);
      const auto R = linear_product_counts({t}, q, 12);
      for (int n = 1; n <= 12; ++n) EXPECT_EQ(p.R_n(n), R[static_cast<size_t>(n - 1)]) << "q=" << q << " t=" << t;
    }
  }
}

TEST(Weil, MoebiusConsistencyOnRandomProfiles) {
  std::mt19937 rng(2718);
  const long qs[] = {2, 3, 4, 5, 7, 8, 9, 16, 25};
  for (int trial = 0; trial < 1000; ++trial) {
    const long q = qs[rng() % 9];
    long bound = 0;
    while ((bound + 1) * (bound + 1) <= 4 * q) ++bound;
    std::uniform_int_distribution<long> trace(-bound, bound);
    const int g = 1 + static_cast<int>(rng() % 6);
    std::vector<long> traces;
    IntPoly h{1};
    for (int i = 0; i < g; ++i) {
      traces.push_back(trace(rng));
      h *= IntPoly{-traces.back(), 1};
    }
    const int horizon = 10;
    const WeilProfile p = WeilProfile::make(h, q, horizon);
    const auto R = linear_product_counts(traces, q, horizon);
    ASSERT_TRUE(weil_bound_holds(p));
    for (int n = 1; n <= horizon; ++n) {
      ASSERT_EQ(p.R_n(n), R[static_cast<size_t>(n - 1)]);
      mpz_class sum = 0;
      for (int d = 1; d <= n; ++d) {
        if (n % d == 0) sum += d * p.P_n(d);
      }
      ASSERT_EQ(sum, p.R_n(n)) << h.to_string() << " q=" << q << " n=" << n;
    }
  }
}

TEST(Weil, MoebiusFunction) {
  const int expect[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(mobius(n), expect[n - 1]) << n;
}

TEST(Weil, NonIntegralPlaceCountIsAnError) {
  EXPECT_THROW(place_counts_from_points({mpz_class(3), mpz_class(4)}), NonIntegralPlaceCount);
}

TEST(Weil, NonnegHorizon) {
  EXPECT_LE(nonneg_horizon(4, 8), 10);
  EXPECT_LE(nonneg_horizon(4, 1), 3);
  EXPECT_GE(nonneg_horizon(2, 1), 1);
  EXPECT_LE(nonneg_horizon(2, 1), 4);
}

TEST(Weil, SatisfiesConstraints) {
  ConstraintSet cs;
  cs.q = 4;
  cs.g = 8;
  cs.prescribed = {{1, 24}};
  EXPECT_TRUE(satisfies_constraints(survivor(), cs));
  const auto bad = satisfies_constraints(IntPoly{4, 1}.pow(8), cs);
  EXPECT_FALSE(bad);
  EXPECT_EQ(bad.witness, "P_1 = 37 != 24");

  ConstraintSet t3;
  t3.q = 4;
  t3.g = 8;
  t3.prescribed = {{1, 16}, {2, 8}, {3, 32}};
  for (const auto& h : reference::genus8_resolvent()) EXPECT_TRUE(satisfies_constraints(IntPoly(std::span<const long>(h)), t3));

  EXPECT_FALSE(satisfies_constraints({-17, 0, 1}, ConstraintSet{4, 2, {}}));
}

TEST(Weil, ConstraintSetValidation) {
  EXPECT_THROW((ConstraintSet{6, 2, {}}).validate(), std::invalid_argument);
  EXPECT_THROW((ConstraintSet{4, 0, {}}).validate(), std::invalid_argument);
  EXPECT_THROW((ConstraintSet{4, 2, {{0, 1}}}).validate(), std::invalid_argument);
  EXPECT_THROW((ConstraintSet{4, 2, {{1, -1}}}).validate(), std::invalid_argument);
  EXPECT_EQ((ConstraintSet{4, 8, {{1, 16}, {2, 8}, {3, 32}}}).check_horizon(), std::max(3, nonneg_horizon(4, 8)));
}

// Waterhouse's classification of elliptic curve traces decides the exponent
// of x - t: exponent 1 exactly when t is the trace of an elliptic curve.
TEST(Weil, HondaTateExponentsOfLinearFactors) {
  struct Case {
    long q;
    long t;
    int exponent;
  };
  const Case cases[] = {
      {4, 0, 1},    // p = 2, not 1 mod 4
      {4, 2, 1},    // t = sqrt q, p = 2 not 1 mod 3
      {4, 3, 1},    // ordinary
      {25, 0, 2},   // p = 5 is 1 mod 4
      {25, 5, 1},   // p = 5 not 1 mod 3
      {49, 7, 2},   // p = 7 is 1 mod 3
      {49, 0, 1},   // p = 7 is 3 mod 4
      {9, 3, 1},    // p = 3
      {5, 0, 1},    // q = p
      {2, 2, 1},    // p = 2, t^2 = 2q
      {8, 4, 1},    // p = 2, t^2 = 2q
      {27, 9, 1},   // p = 3, t^2 = 3q
      {16, 0, 1},   // q = 2^4
      {16, 4, 1},
      {81, 9, 1},
      {125, 0, 1},
      {8, 0, 1},    // odd exponent of p
      {32, 0, 1},
      {64, 0, 1},   // p = 2, repeated residual
      {64, 8, 1},   // t = sqrt q, p = 2 not 1 mod 3
      {9, 0, 1},    // p = 3 is 3 mod 4
      {121, 0, 1},  // p = 11 is 3 mod 4
      {169, 0, 2},  // p = 13 is 1 mod 4
      {169, 13, 2}, // p = 13 is 1 mod 3
  };
  for (const auto& c : cases) {
    const IntPoly f = real_to_weil({-c.t, 1}, c.q);
    const auto e = honda_tate_exponent(f, c.q);
    ASSERT_TRUE(e.has_value()) << "q=" << c.q << " t=" << c.t;
    EXPECT_EQ(*e, c.exponent) << "q=" << c.q << " t=" << c.t;
  }
  // Ordinary factors always have exponent 1.
  EXPECT_EQ(honda_tate_exponent(real_to_weil({5, 5, 1}, 4), 4), 1);
}

TEST(Weil, IsogenyClassFilter) {
  EXPECT_FALSE(isogeny_class_exists({0, 1}, 25));
  EXPECT_TRUE(isogeny_class_exists(IntPoly{0, 1}.pow(2), 25));
  EXPECT_TRUE(isogeny_class_exists({3, 1}, 4));
  // x^2 + 4x + 2 at q = 4 needs exponent 2.
  EXPECT_FALSE(isogeny_class_exists({2, 4, 1}, 4));
  EXPECT_TRUE(isogeny_class_exists(IntPoly{2, 4, 1}.pow(2), 4));
  EXPECT_TRUE(isogeny_class_exists(survivor(), 4));
}

TEST(Weil, ProfileJsonRoundTrip) {
  const WeilProfile p = WeilProfile::make(survivor(), 4, 7);
  const std::string js = profile_to_json(p);
  EXPECT_NE(js.find("\"P\":[\"24\",\"0\",\"0\""), std::string::npos);
  const WeilProfile back = profile_from_json(js);
  EXPECT_EQ(back.h, p.h);
  EXPECT_EQ(back.P, p.P);
  EXPECT_EQ(poly_to_json({8, 6, 1}), R"(["8","6","1"])");
  EXPECT_EQ(poly_from_json(R"(["8","6","1"])"), IntPoly({8, 6, 1}));
  EXPECT_THROW(poly_from_json("[1.5]"), std::invalid_argument);
  EXPECT_EQ(polys_from_json_lines(polys_to_json_lines({{1, 1}, {2, 0, 1}})).size(), 2u);
}
