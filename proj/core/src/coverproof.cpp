#include "curvebound/coverproof.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "curvebound/eliminate.hpp"
#include "curvebound/enumerate.hpp"
#include "curvebound/weil.hpp"
#include "json_util.hpp"

namespace curvebound {

namespace {

constexpr int kCoverDegree = 3;

std::string str(long v) { return std::to_string(v); }
std::string str(const mpz_class& v) { return v.get_str(); }

long characteristic(long q) {
  long p = 2;
  while (q % p != 0) ++p;
  return p;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Multisets of integers >= 1 summing to n that avoid the forbidden parts.
void partitions(int n, int max_part, const std::vector<int>& forbidden, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    if (contains(forbidden, p)) continue;
    cur.push_back(p);
    partitions(n - p, p, forbidden, cur, out);
    cur.pop_back();
  }
}

std::string join(const std::vector<int>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "}";
}

int contribution_factor(Contribution c, int m_P) {
  switch (c) {
    case Contribution::Zero: return 0;
    case Contribution::TwiceDegree: return 2;
    case Contribution::MDegree: return m_P;
  }
  return 0;
}

// Places of C over a place of E of degree d, as residue degrees (f * d) of
// the places with ramification index e.
std::vector<int> place_degrees_over(const SplittingRow& row, int d) {
  std::vector<int> out;
  for (const auto& [e, f] : row.places_over_P) out.push_back(f * d);
  return out;
}

// Degree-d places of E compatible with C having no places of the degrees in
// `absent` and every degree-1 place splitting completely.
std::vector<const SplittingRow*> admissible_rows(int d, const std::vector<int>& absent, bool split_completely) {
  std::vector<const SplittingRow*> rows;
  for (const auto& row : s3_splitting_table()) {
    if (split_completely) {
      bool all_rational = row.places_over_P.size() == kCoverDegree;
      for (const auto& [e, f] : row.places_over_P) all_rational = all_rational && e == 1 && f == 1;
      if (all_rational) rows.push_back(&row);
      continue;
    }
    bool ok = true;
    for (int deg : place_degrees_over(row, d)) {
      if (contains(absent, deg)) ok = false;
    }
    if (ok) rows.push_back(&row);
  }
  return rows;
}

[[noreturn]] void fail(CertificateStep step, const Certificate& partial) {
  step.passed = false;
  throw StepFailed(std::move(step), partial);
}

// Degrees d such that no place of E of degree d ramifies in C: a ramified
// place of degree d always leaves a place of C of degree d, and degree-1
// places split completely when P1(C) = 3 P1(E).
std::vector<int> unramifiable_degrees(const WeilProfile& C, bool rational_split, int max_degree) {
  std::vector<int> out;
  for (int d = 1; d <= max_degree; ++d) {
    if ((d == 1 && rational_split) || C.P_n(d) == 0) out.push_back(d);
  }
  return out;
}

}  // namespace

std::string to_string(Group g) {
  switch (g) {
    case Group::S3: return "S3";
    case Group::C3: return "C3";
    case Group::C2: return "C2";
    case Group::C1: return "C1";
  }
  return "?";
}

std::string to_string(Contribution c) {
  switch (c) {
    case Contribution::Zero: return "0";
    case Contribution::TwiceDegree: return "2 deg P";
    case Contribution::MDegree: return "m_P deg P";
  }
  return "?";
}

SplittingRow::LBehaviour SplittingRow::in_resolvent() const {
  // L is the fixed field of C3: P ramifies in L iff its inertia group is not
  // inside C3, and otherwise splits iff its decomposition group is.
  auto inside_c3 = [](Group g) { return g == Group::C3 || g == Group::C1; };
  if (!inside_c3(inertia)) return LBehaviour::Ramified;
  return inside_c3(decomposition) ? LBehaviour::Split : LBehaviour::Inert;
}

const std::vector<SplittingRow>& s3_splitting_table() {
  static const std::vector<SplittingRow> table = {
      {Group::S3, Group::C3, {{3, 1}}, Contribution::TwiceDegree, Contribution::Zero, 0},
      {Group::C3, Group::C3, {{3, 1}}, Contribution::TwiceDegree, Contribution::Zero, 0},
      {Group::C3, Group::C1, {{1, 3}}, Contribution::Zero, Contribution::Zero, 0},
      {Group::C2, Group::C2, {{2, 1}, {1, 1}}, Contribution::MDegree, Contribution::MDegree, 2},
      {Group::C2, Group::C1, {{1, 2}, {1, 1}}, Contribution::Zero, Contribution::Zero, 0},
      {Group::C1, Group::C1, {{1, 1}, {1, 1}, {1, 1}}, Contribution::Zero, Contribution::Zero, 0},
  };
  return table;
}

const CertificateStep& Certificate::step(const std::string& name) const {
  for (const auto& s : steps) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("certificate has no step named '" + name + "'");
}

std::string Certificate::value(const std::string& step_name, const std::string& key) const {
  for (const auto& [k, v] : step(step_name).values) {
    if (k == key) return v;
  }
  throw std::out_of_range("step '" + step_name + "' has no value '" + key + "'");
}

std::string Certificate::to_json() const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["statement"] = statement;
  doc["q"] = q;
  ordered_json arr = ordered_json::array();
  for (const auto& s : steps) {
    ordered_json j;
    j["name"] = s.name;
    j["claim"] = s.claim;
    ordered_json in = ordered_json::object();
    for (const auto& [k, v] : s.inputs) in[k] = v;
    ordered_json vals = ordered_json::object();
    for (const auto& [k, v] : s.values) vals[k] = v;
    j["inputs"] = std::move(in);
    j["values"] = std::move(vals);
    j["passed"] = s.passed;
    if (!s.citation.empty()) j["citation"] = s.citation;
    arr.push_back(std::move(j));
  }
  doc["steps"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string Certificate::to_markdown() const {
  std::ostringstream os;
  os << "# " << statement << "\n\n";
  int i = 0;
  for (const auto& s : steps) {
    os << "## " << ++i << ". " << s.name << (s.passed ? "" : " (FAILED)") << "\n\n" << s.claim << "\n\n";
    if (!s.citation.empty()) os << "*Cited:* " << s.citation << "\n\n";
    for (const auto& [k, v] : s.inputs) os << "- input `" << k << "` = " << v << "\n";
    for (const auto& [k, v] : s.values) os << "- `" << k << "` = " << v << "\n";
    os << "\n";
  }
  return os.str();
}

CertificateStep galois_contradiction(const IntPoly& hC, const IntPoly& hE, long q, const ReplayOptions& options) {
  CertificateStep step;
  step.name = "galois-contradiction";
  step.inputs = {{"hC", hC.to_string()}, {"hE", hE.to_string()}, {"q", str(q)}};

  const int gC = hC.degree();
  const int gE = hE.degree();
  const long different = (2L * gC - 2) - kCoverDegree * (2L * gE - 2);
  const int half = static_cast<int>(different / 2);  // each tame ramified place P contributes 2 deg P
  const WeilProfile C = WeilProfile::make(hC, q, std::max(half, 3));
  const WeilProfile E = WeilProfile::make(hE, q, 3);

  step.values.emplace_back("P1(C)", str(C.P_n(1)));
  step.values.emplace_back("P1(E)", str(E.P_n(1)));
  if (C.P_n(1) != kCoverDegree * E.P_n(1)) {
    step.claim = "P1(C) = 3 P1(E) fails, so rational places of E need not split";
    return step;
  }
  const std::vector<int> forbidden = unramifiable_degrees(C, true, std::min(half, C.horizon));
  step.values.emplace_back("P2(C)", str(C.P_n(2)));
  step.values.emplace_back("P3(C)", str(C.P_n(3)));
  step.values.emplace_back("different degree", str(different));
  step.values.emplace_back("unramifiable degrees", join(forbidden));

  if (different <= 0 || different % 2 != 0 || characteristic(q) == kCoverDegree) {
    step.claim = "tame cyclic triple cover accounting does not apply";
    return step;
  }
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions(half, half, forbidden, cur, parts);
  std::string listed;
  for (const auto& p : parts) listed += (listed.empty() ? "" : " ") + join(p);
  step.values.emplace_back("ramified degree partitions", listed.empty() ? "none" : listed);
  if (parts.size() != 1 || parts[0].size() != 1) {
    step.claim = "ramification is not forced onto a single place";
    return step;
  }
  const int deg = parts[0][0];
  if (deg % kCoverDegree == 0) {
    step.claim = "inert places also contribute places of the ramified degree";
    return step;
  }
  step.values.emplace_back("ramified place degree", str(static_cast<long>(deg)));

  mpz_class pd = C.P_n(deg);
  if (options.p7_override && deg == 7) pd = *options.p7_override;
  // Degree-deg places of C: three over each split place, one over the
  // ramified one, none over inert ones (they give degree 3 deg).
  const long required = 1 % kCoverDegree;
  const long residue = mpz_fdiv_ui(pd.get_mpz_t(), kCoverDegree);
  step.values.emplace_back("P" + str(static_cast<long>(deg)) + "(C)", str(pd));
  step.values.emplace_back("residue mod 3", str(residue));
  step.values.emplace_back("required residue", str(required));
  step.passed = residue != required;
  step.claim = step.passed ? "a Galois triple cover would force P" + str(static_cast<long>(deg)) +
                                 "(C) = 1 mod 3; the computed count is " + str(residue) + " mod 3, so the cover is not Galois"
                           : "P" + str(static_cast<long>(deg)) + "(C) = 1 mod 3 is consistent with a Galois triple cover";
  return step;
}

ResolventConstraints resolvent_constraints(const IntPoly& hC, const IntPoly& hE, long q, const BoundsTable& bounds,
                                           std::vector<CertificateStep>& steps) {
  auto partial = [&] {
    Certificate c;
    c.q = q;
    c.steps = steps;
    return c;
  };
  const int gC = hC.degree();
  const int gE = hE.degree();
  const WeilProfile C = WeilProfile::make(hC, q, 3);
  const WeilProfile E = WeilProfile::make(hE, q, 3);
  const long different = (2L * gC - 2) - kCoverDegree * (2L * gE - 2);

  const bool rational_split = C.P_n(1) == kCoverDegree * E.P_n(1);
  const std::vector<int> absent = unramifiable_degrees(C, false, 3);

  CertificateStep ram;
  ram.name = "single-ramified-place";
  ram.inputs = {{"different degree", str(different)}, {"P1(C)", str(C.P_n(1))}, {"P1(E)", str(E.P_n(1))}};
  int min_factor = 0;
  for (const auto& row : s3_splitting_table()) {
    if (!row.ramified()) continue;
    int f = contribution_factor(row.contribution_C, row.m_P_lower_bound);
    if (min_factor == 0 || f < min_factor) min_factor = f;
  }
  const int max_degree = static_cast<int>(std::max<long>(different / std::max(min_factor, 1), 1));
  const WeilProfile Cwide = WeilProfile::make(hC, q, max_degree);
  const std::vector<int> forbidden = unramifiable_degrees(Cwide, rational_split, max_degree);
  int min_degree = 1;
  while (contains(forbidden, min_degree)) ++min_degree;
  const long per_place = static_cast<long>(min_factor) * min_degree;
  ram.values = {{"unramifiable degrees", join(forbidden)},
                {"minimum contribution per ramified place", str(per_place)}};
  if (different <= 0 || 2 * per_place <= different) {
    ram.claim = "the different leaves room for more than one ramified place";
    steps.push_back(ram);
    fail(ram, partial());
  }
  // One place of degree d contributing c d = different with c >= min_factor.
  std::vector<int> degrees;
  for (int d = min_degree; d <= max_degree; ++d) {
    if (!contains(forbidden, d) && different % d == 0 && different / d >= min_factor) degrees.push_back(d);
  }
  ram.values.emplace_back("possible degrees of the ramified place", join(degrees));
  if (degrees.size() != 1) {
    ram.claim = "the degree of the ramified place is not determined";
    steps.push_back(ram);
    fail(ram, partial());
  }
  const int deg_P = degrees[0];
  const long m_P = different / deg_P;
  ram.values.emplace_back("deg P", str(static_cast<long>(deg_P)));
  ram.values.emplace_back("m_P if inertia is C2", str(m_P));
  ram.passed = true;
  ram.claim = "exactly one place of E ramifies in C, of degree " + std::to_string(deg_P);
  steps.push_back(ram);

  // Inertia C3: L/k(E) unramified, so M/k(C) is unramified of degree 2.
  CertificateStep c3;
  c3.name = "exclude-inertia-C3";
  const int gD = 2 * gC - 1;  // 2 g_D - 2 = 2 (2 g_C - 2)
  // Rational places of E split completely in C, hence in the degree-6 closure M = D.
  const mpz_class pointsD = rational_split ? mpz_class(2 * kCoverDegree * E.P_n(1)) : mpz_class(0);
  c3.inputs = {{"g_C", str(static_cast<long>(gC))}, {"P1(E)", str(E.P_n(1))}};
  c3.values = {{"g_D", str(static_cast<long>(gD))}, {"N1(D)", str(pointsD)}};
  const BoundEntry& bD = bounds.lookup(q, gD);
  c3.values.emplace_back("bound N_q(g_D)", str(bD.bound));
  c3.citation = bD.citation;
  c3.passed = pointsD > bD.bound;
  c3.claim = c3.passed ? "inertia C3 would give an unramified double cover D of C of genus " + std::to_string(gD) +
                             " with " + pointsD.get_str() + " points, above the bound " + std::to_string(bD.bound)
                       : "inertia C3 is not excluded by the point bound";
  steps.push_back(c3);
  if (!c3.passed) fail(c3, partial());

  // Inertia C2: deg diff_L = deg diff_C, then Riemann-Hurwitz for L/k(E).
  CertificateStep gf;
  gf.name = "resolvent-genus";
  const SplittingRow* c2row = nullptr;
  for (const auto& row : s3_splitting_table()) {
    if (row.decomposition == Group::C2 && row.inertia == Group::C2) c2row = &row;
  }
  const long diff_L = c2row && c2row->contribution_L == c2row->contribution_C ? different : -1;
  const long twice_gF = 2 * (2L * gE - 2) + diff_L + 2;  // 2 g_F - 2 = 2 (2 g_E - 2) + deg diff_L
  gf.values = {{"deg diff_L", str(diff_L)}, {"g_F", str(twice_gF / 2)}};
  gf.passed = diff_L >= 0 && twice_gF % 2 == 0;
  gf.claim = "with inertia C2 the resolvent curve F has genus " + str(twice_gF / 2);
  steps.push_back(gf);
  if (!gf.passed) fail(gf, partial());

  // Low-degree places of F: split places of E give two places, inert ones one
  // place of twice the degree.
  CertificateStep pc;
  pc.name = "resolvent-place-counts";
  std::vector<long> split(4, 0);
  std::vector<long> inert(4, 0);
  for (int d = 1; d <= 3; ++d) {
    auto rows = admissible_rows(d, absent, d == 1 && rational_split);
    std::vector<SplittingRow::LBehaviour> behaviours;
    for (const auto* r : rows) {
      if (r->ramified()) continue;
      behaviours.push_back(r->in_resolvent());
    }
    behaviours.erase(std::unique(behaviours.begin(), behaviours.end()), behaviours.end());
    if (behaviours.size() != 1) {
      pc.claim = "behaviour in L of degree-" + std::to_string(d) + " places is not determined";
      steps.push_back(pc);
      fail(pc, partial());
    }
    const long count = E.P_n(d).get_si();
    pc.inputs.emplace_back("P" + std::to_string(d) + "(E)", str(count));
    if (behaviours[0] == SplittingRow::LBehaviour::Split) split[static_cast<size_t>(d)] = count;
    else inert[static_cast<size_t>(d)] = count;
    pc.values.emplace_back("degree-" + std::to_string(d) + " places of E", behaviours[0] == SplittingRow::LBehaviour::Split ? "split" : "inert");
  }
  ResolventConstraints rc;
  rc.genus_F = static_cast<int>(twice_gF / 2);
  rc.a1 = 2 * split[1];
  rc.a2 = 2 * split[2] + inert[1];
  rc.a3 = 2 * split[3];
  pc.values.emplace_back("P1(F)", str(rc.a1));
  pc.values.emplace_back("P2(F)", str(rc.a2));
  pc.values.emplace_back("P3(F)", str(rc.a3));
  pc.passed = true;
  pc.claim = "F has " + str(rc.a1) + " places of degree 1, " + str(rc.a2) + " of degree 2 and " + str(rc.a3) +
             " of degree 3";
  steps.push_back(pc);
  return rc;
}

CertificateStep resolvent_filter(const ResolventConstraints& constraints, const IntPoly& hE, long q,
                                 const ReplayOptions& options) {
  CertificateStep step;
  step.name = "resolvent-filter";
  step.inputs = {{"g_F", str(static_cast<long>(constraints.genus_F))},
                 {"P1(F)", str(constraints.a1)},
                 {"P2(F)", str(constraints.a2)},
                 {"P3(F)", str(constraints.a3)},
                 {"hE", hE.to_string()}};
  ConstraintSet cs;
  cs.q = q;
  cs.g = constraints.genus_F;
  cs.prescribed = {{1, constraints.a1}, {2, constraints.a2}, {3, constraints.a3}};
  const auto candidates = enumerate_real_weil(cs, options.threads);
  long divisible = 0;
  std::string first;
  for (const auto& h : candidates) {
    if (try_divexact(h, hE)) {
      if (divisible++ == 0) first = h.to_string();
    }
  }
  step.values = {{"candidates", str(static_cast<long>(candidates.size()))}, {"divisible by hE", str(divisible)}};
  if (!first.empty()) step.values.emplace_back("first divisible candidate", first);
  const bool count_ok = !options.expected_filter_count || candidates.size() == *options.expected_filter_count;
  if (options.expected_filter_count) {
    step.values.emplace_back("published count", str(static_cast<long>(*options.expected_filter_count)));
  }
  step.passed = divisible == 0 && count_ok;
  if (!count_ok) step.claim = "candidate count differs from the published list";
  else if (divisible) step.claim = "a candidate for F is divisible by hE, so F may cover E";
  else step.claim = "no candidate for F is divisible by (" + hE.to_string() + "), so F cannot be a double cover of E";
  return step;
}

Certificate replay_theorem2(long q, const BoundsTable& bounds, const ReplayOptions& options) {
  constexpr int kGenus = 8;
  Certificate cert;
  cert.q = q;
  const BoundEntry& bC = bounds.lookup(q, kGenus);
  cert.statement = "No genus-" + std::to_string(kGenus) + " curve over F_" + std::to_string(q) + " has " +
                   std::to_string(bC.bound) + " rational points";

  auto push = [&](CertificateStep s) {
    cert.steps.push_back(s);
    if (!s.passed) throw StepFailed(std::move(s), cert);
  };

  // 1. Candidates for C.
  ConstraintSet cs;
  cs.q = q;
  cs.g = kGenus;
  cs.prescribed = {{1, bC.bound}};
  const auto candidates = enumerate_real_weil(cs, options.threads);
  CertificateStep en;
  en.name = "enumerate";
  en.inputs = {{"q", str(q)}, {"g", str(static_cast<long>(kGenus))}, {"P1", str(bC.bound)}};
  en.values = {{"candidates", str(static_cast<long>(candidates.size()))}};
  en.citation = bC.citation;
  en.passed = !candidates.empty();
  en.claim = std::to_string(candidates.size()) + " isogeny classes pass the place-count test";
  push(en);

  // 2. Eliminations.
  const auto verdicts = eliminate_all(candidates, q, options.threads);
  CertificateStep el;
  el.name = "eliminate";
  std::vector<IntPoly> survivors;
  long by[4] = {0, 0, 0, 0};
  for (const auto& v : verdicts) {
    if (!v.eliminated) survivors.push_back(v.candidate);
    else ++by[static_cast<int>(v.argument)];
  }
  el.values = {{"eliminated", str(static_cast<long>(candidates.size() - survivors.size()))},
               {"resultant-1", str(by[static_cast<int>(Argument::Resultant1)])},
               {"resultant-2", str(by[static_cast<int>(Argument::Resultant2)])},
               {"supersingular-factor", str(by[static_cast<int>(Argument::SupersingularFactor)])},
               {"survivors", str(static_cast<long>(survivors.size()))}};
  el.passed = survivors.size() == 1;
  if (el.passed) el.values.emplace_back("hC", survivors[0].to_string());
  el.claim = el.passed ? "exactly one candidate survives" : "the eliminations do not leave a single candidate";
  push(el);
  const IntPoly hC = survivors[0];

  // 3. Triple-cover premise.
  CertificateStep tc;
  tc.name = "triple-cover-premise";
  tc.citation =
      "Howe and Lauter, New methods for bounding the number of points on curves over finite fields "
      "(2012), Propositions 2.5 and 2.8: a splitting with resultant +-3 and an elliptic factor gives a "
      "degree-3 map to that elliptic curve";
  std::optional<Splitting> premise;
  for (const auto& s : splittings(hC)) {
    const IntPoly* lin = s.h1.degree() == 1 ? &s.h1 : (s.h2.degree() == 1 ? &s.h2 : nullptr);
    if (lin && abs(s.resultant) == kCoverDegree) {
      premise = s;
      if (lin != &s.h1) std::swap(premise->h1, premise->h2);
      break;
    }
  }
  if (premise) {
    const WeilProfile E = WeilProfile::make(premise->h1, q, 1);
    tc.values = {{"hE", premise->h1.to_string()},
                 {"h2", factored_string(premise->h2)},
                 {"Res(hE, h2)", str(premise->resultant)},
                 {"P1(E)", str(E.P_n(1))}};
    tc.passed = true;
    tc.claim = "C admits a degree-3 map to the elliptic curve E with " + E.P_n(1).get_str() + " points (cited deduction)";
  } else {
    tc.claim = "no elliptic factor with resultant +-3";
  }
  push(tc);
  const IntPoly hE = premise->h1;

  // 4. The triple cover is not Galois.
  CertificateStep gc = galois_contradiction(hC, hE, q, options);
  push(gc);

  // 5. Resolvent analysis.
  std::vector<CertificateStep> rs;
  ResolventConstraints rc;
  try {
    rc = resolvent_constraints(hC, hE, q, bounds, rs);
  } catch (const StepFailed& e) {
    for (auto& s : rs) cert.steps.push_back(s);
    throw StepFailed(e.step(), cert);
  }
  for (auto& s : rs) push(s);

  // 6. Final filter.
  push(resolvent_filter(rc, hE, q, options));
  return cert;
}

}  // namespace curvebound
