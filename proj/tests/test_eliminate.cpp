#include <gtest/gtest.h>

#include <set>

#include "curvebound/eliminate.hpp"
#include "reference_tables.hpp"

using namespace curvebound;

namespace {

IntPoly row(size_t i) { return IntPoly(std::span<const long>(reference::genus8_p1_24()[i - 1].h)); }

std::vector<IntPoly> p1_24_polys() {
  std::vector<IntPoly> v;
  for (const auto& r : reference::genus8_p1_24()) v.emplace_back(std::span<const long>(r.h));
  return v;
}

// Number of unordered pairs {h1, h2} from distributing the multiplicities of
// the irreducible factors, computed by counting divisors.
size_t expected_splitting_count(const IntPoly& h) {
  const FactorMultiset fm = factor_int_poly(h);
  size_t divisors = 1;
  for (const auto& f : fm.factors) divisors *= static_cast<size_t>(f.multiplicity) + 1;
  const size_t proper = divisors - 2;
  // A divisor equal to its cofactor is counted once.
  bool square = true;
  for (const auto& f : fm.factors) square = square && f.multiplicity % 2 == 0;
  return square ? (proper - 1) / 2 + 1 : proper / 2;
}

}  // namespace

TEST(Eliminate, SplittingsOfSmallProducts) {
  const auto s = splittings(IntPoly{2, 1} * IntPoly{4, 1});
  ASSERT_EQ(s.size(), 1u);
  const std::set<IntPoly, CanonicalLess> got{s[0].h1, s[0].h2};
  const std::set<IntPoly, CanonicalLess> want{IntPoly{2, 1}, IntPoly{4, 1}};
  EXPECT_TRUE(got == want);

  const auto sq = splittings(IntPoly{2, 1}.pow(2));
  ASSERT_EQ(sq.size(), 1u);
  EXPECT_EQ(sq[0].h1, IntPoly({2, 1}));
  EXPECT_EQ(sq[0].h2, IntPoly({2, 1}));

  EXPECT_TRUE(splittings(IntPoly{1, 1, 1}).empty());
}

TEST(Eliminate, SplittingsAreExactAndComplete) {
  for (const auto& h : p1_24_polys()) {
    const auto all = splittings(h);
    EXPECT_EQ(all.size(), expected_splitting_count(h)) << h.to_string();
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& s : all) {
      EXPECT_EQ(s.h1 * s.h2, h);
      EXPECT_GE(s.h1.degree(), 1);
      EXPECT_GE(s.h2.degree(), 1);
      EXPECT_TRUE(s.h1.is_monic() && s.h2.is_monic());
      EXPECT_EQ(s.resultant, resultant(s.h1, s.h2));
      EXPECT_EQ(s.reduced_resultant, reduced_resultant(squarefree_part(s.h1), squarefree_part(s.h2)));
      const std::string a = s.h1.to_string();
      const std::string b = s.h2.to_string();
      EXPECT_TRUE(seen.insert({a, b}).second) << "duplicate splitting";
      EXPECT_FALSE(a != b && seen.count({b, a})) << "both orientations present";
    }
  }
}

TEST(Eliminate, EntryOneHasTheLinearSplitting) {
  const IntPoly h2 = IntPoly{0, 1} * IntPoly{2, 1}.pow(4) * IntPoly{4, 1}.pow(2);
  const auto all = splittings(row(1));
  const bool found = std::any_of(all.begin(), all.end(), [&](const Splitting& s) {
    return (s.h1 == IntPoly{3, 1} && s.h2 == h2) || (s.h2 == IntPoly{3, 1} && s.h1 == h2);
  });
  EXPECT_TRUE(found);
  EXPECT_EQ(abs(resultant(IntPoly{3, 1}, h2)), 3);
}

TEST(Eliminate, ResultantOne) {
  const auto s = resultant_one_test(row(2));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(abs(s->resultant), 1);
  EXPECT_EQ(s->h1 * s->h2, row(2));
  EXPECT_FALSE(resultant_one_test(row(1)).has_value());

  const auto lin = resultant_one_test(IntPoly{2, 1} * IntPoly{3, 1});
  ASSERT_TRUE(lin.has_value());
  EXPECT_EQ(abs(lin->resultant), 1);
}

TEST(Eliminate, ListedResultantOneSplittingsHaveUnitResultant) {
  for (const auto& r : reference::genus8_p1_24()) {
    if (r.argument != Argument::Resultant1) continue;
    const IntPoly h1{std::span<const long>(r.h1)};
    const IntPoly h2{std::span<const long>(r.h2)};
    EXPECT_EQ(h1 * h2, IntPoly(std::span<const long>(r.h)));
    EXPECT_EQ(abs(resultant(h1, h2)), 1);
  }
}

TEST(Eliminate, SupersingularFactor) {
  const auto s = supersingular_factor_test(row(10), 4);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->h1, IntPoly({4, 1}));
  EXPECT_EQ(s->h2.eval(mpz_class(-4)), -15);
  EXPECT_TRUE(is_squarefree_integer(-15));

  EXPECT_FALSE(supersingular_factor_test(row(1), 4).has_value());
  EXPECT_FALSE(supersingular_factor_test(IntPoly{3, 1} * IntPoly{2, 1}, 4).has_value());
  EXPECT_THROW(supersingular_factor_test(row(1), 2), NotASquare);
  EXPECT_THROW(supersingular_factor_test(row(1), 8), NotASquare);
}

TEST(Eliminate, SupersingularExponentIsMaximal) {
  // (x+4)^2 (x+1): h2 = x + 1 and h2(-4) = -3.
  const auto s = supersingular_factor_test(IntPoly{4, 1}.pow(2) * IntPoly{1, 1}, 4);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->h1, (IntPoly{4, 1}.pow(2)));
  EXPECT_EQ(s->h2, IntPoly({1, 1}));
  // h2(-4) = 12 is not squarefree.
  EXPECT_FALSE(supersingular_factor_test(IntPoly{4, 1} * IntPoly{-8, 1}, 4).has_value());
  // h2(-4) = 2 = p is rejected.
  EXPECT_FALSE(supersingular_factor_test(IntPoly{4, 1} * IntPoly{6, 1}, 4).has_value());
}

TEST(Eliminate, DoubleCoverAccounting) {
  const IntPoly hD6 = IntPoly{2, 1}.pow(2) * IntPoly{1, 4, 1};
  const CoverAccounting a = double_cover_feasible(row(6), hD6, 4);
  EXPECT_EQ(a.refutation, CoverRefutation::NoSolution);
  EXPECT_EQ(a.g_C, 8);
  EXPECT_EQ(a.g_D, 4);
  EXPECT_EQ(a.N1_D, 13);
  EXPECT_EQ(a.N1_C, 24);
  EXPECT_EQ(a.different_budget, 2);
  EXPECT_FALSE(a.solution.has_value());

  const IntPoly hD13 = IntPoly{4, 1}.pow(2) * IntPoly{1, 6, 5, 1};
  const CoverAccounting b = double_cover_feasible(row(13), hD13, 4);
  EXPECT_EQ(b.g_D, 5);
  EXPECT_EQ(b.refutation, CoverRefutation::Genus);

  const CoverAccounting c = double_cover_feasible(row(13), IntPoly{2, 1}.pow(3), 4);
  EXPECT_EQ(c.N1_D, 11);
  EXPECT_EQ(c.refutation, CoverRefutation::PointCount);
}

TEST(Eliminate, DoubleCoverSolutionSatisfiesTheSystem) {
  // A genus-2 class with 10 points over the 8-point elliptic class.
  const CoverAccounting a = double_cover_feasible(IntPoly{2, 1} * IntPoly{3, 1}, IntPoly{3, 1}, 4);
  ASSERT_FALSE(a.refuted()) << a.detail;
  ASSERT_TRUE(a.solution.has_value());
  const auto& s = *a.solution;
  EXPECT_EQ(s.split + s.inert + s.ramified, a.N1_D);
  EXPECT_EQ(2 * s.split + s.ramified, a.N1_C);
  EXPECT_LE(mpz_class(s.inert), a.P2_C);
  EXPECT_LE(a.ramified_weight * s.ramified, a.different_budget);
}

TEST(Eliminate, Genus8Verdicts) {
  const auto verdicts = eliminate_all(p1_24_polys(), 4);
  ASSERT_EQ(verdicts.size(), 26u);
  for (size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    const auto& expect = reference::genus8_p1_24()[i];
    EXPECT_EQ(v.candidate, IntPoly(std::span<const long>(expect.h)));
    EXPECT_EQ(v.argument, expect.argument) << "row " << i + 1;
    EXPECT_EQ(v.eliminated, i != 0) << "row " << i + 1;
    if (v.eliminated) {
      ASSERT_TRUE(v.splitting.has_value());
      EXPECT_EQ(v.splitting->h1 * v.splitting->h2, v.candidate);
      EXPECT_FALSE(v.witness.summary.empty());
    }
    if (v.argument == Argument::Resultant2) {
      EXPECT_EQ(abs(v.splitting->reduced_resultant), 2);
      ASSERT_EQ(v.witness.covers.size(), 2u);
      for (const auto& c : v.witness.covers) EXPECT_TRUE(c.refuted());
    }
  }
  EXPECT_EQ(verdicts[0].argument, Argument::None);
}

TEST(Eliminate, LinearCandidateSurvives) {
  const Verdict v = eliminate({3, 1}, 4);
  EXPECT_FALSE(v.eliminated);
  EXPECT_EQ(v.argument, Argument::None);
}

TEST(Eliminate, ArgumentNames) {
  for (Argument a : {Argument::None, Argument::Resultant1, Argument::Resultant2, Argument::SupersingularFactor}) {
    EXPECT_EQ(argument_from_string(to_string(a)), a);
  }
  EXPECT_EQ(to_string(Argument::SupersingularFactor), "supersingular-factor");
  EXPECT_THROW(argument_from_string("resultant-3"), std::invalid_argument);
}

TEST(Eliminate, ExportFormats) {
  const auto verdicts = eliminate_all(p1_24_polys(), 4);
  const std::string csv = verdicts_to_csv(verdicts);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,h,argument,h1,h2");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 27);
  EXPECT_NE(csv.find("\n1,"), std::string::npos);
  EXPECT_NE(csv.find(",none,,"), std::string::npos);
  EXPECT_NE(csv.find("\n10,"), std::string::npos);

  const std::string js = verdicts_to_json(verdicts, 4);
  EXPECT_NE(js.find("\"supersingular-factor\""), std::string::npos);
  const std::string md = verdicts_to_markdown(verdicts);
  EXPECT_EQ(md.find("|"), 0u);
}

TEST(Eliminate, DeterministicAcrossThreadCounts) {
  const auto polys = p1_24_polys();
  const std::string one = verdicts_to_json(eliminate_all(polys, 4, 1), 4);
  EXPECT_EQ(verdicts_to_json(eliminate_all(polys, 4, 4), 4), one);
}
