#include "curvebound/eliminate.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "curvebound/weil.hpp"
#include "json_util.hpp"

namespace curvebound {

namespace {

std::optional<long> exact_sqrt(long q) {
  if (q < 0) return std::nullopt;
  mpz_class r;
  mpz_class v(q);
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  if (r * r != v) return std::nullopt;
  return r.get_si();
}

long characteristic(long q) {
  long p = 2;
  while (q % p != 0) ++p;
  return p;
}

// N_1 = q + 1 + a_{g-1} for a monic real Weil polynomial of degree g.
mpz_class rational_points(const IntPoly& h, long q) { return mpz_class(q + 1) + h.coeff(h.degree() - 1); }

const char* refutation_name(CoverRefutation r) {
  switch (r) {
    case CoverRefutation::None: return "feasible";
    case CoverRefutation::Genus: return "genus";
    case CoverRefutation::PointCount: return "point-count";
    case CoverRefutation::BaseEliminated: return "base-eliminated";
    case CoverRefutation::NoSolution: return "no-solution";
  }
  return "?";
}

}  // namespace

std::string to_string(Argument a) {
  switch (a) {
    case Argument::None: return "none";
    case Argument::Resultant1: return "resultant-1";
    case Argument::Resultant2: return "resultant-2";
    case Argument::SupersingularFactor: return "supersingular-factor";
  }
  return "none";
}

Argument argument_from_string(const std::string& s) {
  for (Argument a : {Argument::None, Argument::Resultant1, Argument::Resultant2, Argument::SupersingularFactor}) {
    if (to_string(a) == s) return a;
  }
  throw std::invalid_argument("unknown elimination argument '" + s + "'");
}

std::vector<Splitting> splittings(const IntPoly& h) {
  if (h.degree() < 2) return {};
  const auto factors = factor_int_poly(h).factors;
  const size_t n = factors.size();
  std::vector<int> take(n, 0);
  std::vector<Splitting> out;
  // Odometer over 0 <= take[i] <= multiplicity[i].
  while (true) {
    IntPoly h1 = IntPoly::constant(1);
    for (size_t i = 0; i < n; ++i) h1 *= factors[i].poly.pow(static_cast<unsigned>(take[i]));
    if (h1.degree() >= 1 && h1.degree() < h.degree()) {
      IntPoly h2 = poly_divexact(h, h1);
      if (CanonicalLess{}(h2, h1)) std::swap(h1, h2);
      out.push_back({h1, h2, 0, 0});
    }
    size_t i = 0;
    while (i < n && take[i] == factors[i].multiplicity) take[i++] = 0;
    if (i == n) break;
    ++take[i];
  }
  std::sort(out.begin(), out.end(), [](const Splitting& a, const Splitting& b) {
    auto c = canonical_compare(a.h1, b.h1);
    if (c != 0) return c < 0;
    return canonical_compare(a.h2, b.h2) < 0;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Splitting& a, const Splitting& b) { return a.h1 == b.h1 && a.h2 == b.h2; }),
            out.end());
  for (auto& s : out) {
    s.resultant = resultant(s.h1, s.h2);
    s.reduced_resultant = reduced_resultant(squarefree_part(s.h1), squarefree_part(s.h2));
  }
  return out;
}

std::optional<Splitting> resultant_one_test(const IntPoly& h) {
  for (auto& s : splittings(h)) {
    if (abs(s.resultant) == 1) return s;
  }
  return std::nullopt;
}

std::optional<Splitting> supersingular_factor_test(const IntPoly& h, long q) {
  auto s = exact_sqrt(q);
  if (!s) throw NotASquare(q);
  const IntPoly lin = IntPoly::x_plus(2 * *s);
  IntPoly h1 = IntPoly::constant(1);
  IntPoly h2 = h;
  while (auto next = try_divexact(h2, lin)) {
    h2 = std::move(*next);
    h1 *= lin;
  }
  if (h1.degree() < 1 || h2.degree() < 1) return std::nullopt;
  mpz_class v = h2.eval(mpz_class(-2 * *s));
  if (v == 0 || !is_squarefree_integer(abs(v))) return std::nullopt;
  if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(characteristic(q)))) return std::nullopt;
  return Splitting{h1, h2, resultant(h1, h2), reduced_resultant(lin, squarefree_part(h2))};
}

CoverAccounting double_cover_feasible(const IntPoly& hC, const IntPoly& hD, long q) {
  if (!hC.is_monic() || !hD.is_monic() || hC.degree() < 1 || hD.degree() < 1) {
    throw std::invalid_argument("double_cover_feasible: hC and hD must be monic and nonconstant");
  }
  CoverAccounting acc;
  acc.hD = hD;
  acc.g_C = hC.degree();
  acc.g_D = hD.degree();
  acc.N1_C = rational_points(hC, q);
  acc.N1_D = rational_points(hD, q);
  acc.P2_C = WeilProfile::make(hC, q, 2).P_n(2);
  acc.different_budget = (2L * acc.g_C - 2) - 2L * (2L * acc.g_D - 2);
  // In characteristic 2 every ramified point of a double cover is wild and
  // contributes at least 2 to the different.
  acc.ramified_weight = characteristic(q) == 2 ? 2 : 1;

  if (acc.different_budget < 0) {
    acc.refutation = CoverRefutation::Genus;
    acc.detail = "Riemann-Hurwitz: 2*" + std::to_string(acc.g_C) + " - 2 < 2*(2*" + std::to_string(acc.g_D) + " - 2)";
    return acc;
  }
  if (2 * acc.N1_D < acc.N1_C) {
    acc.refutation = CoverRefutation::PointCount;
    acc.detail = "N1(D) = " + acc.N1_D.get_str() + " but a double cover with " + acc.N1_C.get_str() +
                 " points needs at least " + mpz_class((acc.N1_C + 1) / 2).get_str();
    return acc;
  }
  if (hD.degree() >= 2) {
    if (auto s = resultant_one_test(hD)) {
      acc.refutation = CoverRefutation::BaseEliminated;
      acc.base_splitting = s;
      acc.detail = "base is eliminated by resultant 1: (" + factored_string(s->h1) + ") x (" +
                   factored_string(s->h2) + ")";
      return acc;
    }
  }
  const long n1c = acc.N1_C.get_si();
  const long n1d = acc.N1_D.get_si();
  const long p2c = acc.P2_C.get_si();
  for (long r = 0; r <= n1d; ++r) {
    if ((n1c - r) < 0 || (n1c - r) % 2 != 0) continue;
    const long s = (n1c - r) / 2;
    const long i = n1d - s - r;
    if (i < 0 || i > p2c) continue;
    if (acc.ramified_weight * r > acc.different_budget) continue;
    acc.solution = CoverSolution{s, i, r};
    acc.detail = "split " + std::to_string(s) + ", inert " + std::to_string(i) + ", ramified " + std::to_string(r);
    return acc;
  }
  acc.refutation = CoverRefutation::NoSolution;
  std::ostringstream os;
  os << "no (split, inert, ramified) with s + i + r = " << n1d << ", 2s + r = " << n1c << ", i <= " << p2c << ", "
     << acc.ramified_weight << "r <= " << acc.different_budget;
  acc.detail = os.str();
  return acc;
}

Verdict eliminate(const IntPoly& h, long q) {
  Verdict v;
  v.candidate = h;
  if (h.degree() < 2) return v;

  const auto all = splittings(h);
  for (const auto& s : all) {
    if (abs(s.resultant) == 1) {
      v.eliminated = true;
      v.argument = Argument::Resultant1;
      v.splitting = s;
      v.witness.value = s.resultant;
      v.witness.summary = "Res(h1, h2) = " + s.resultant.get_str();
      return v;
    }
  }
  if (exact_sqrt(q)) {
    if (auto s = supersingular_factor_test(h, q)) {
      const long root = -2 * *exact_sqrt(q);
      v.eliminated = true;
      v.argument = Argument::SupersingularFactor;
      v.witness.value = s->h2.eval(mpz_class(root));
      v.witness.summary = "h2(" + std::to_string(root) + ") = " + v.witness.value->get_str() + " is squarefree and prime to p";
      v.splitting = std::move(s);
      return v;
    }
  }
  for (const auto& s : all) {
    if (s.reduced_resultant != 2) continue;
    CoverAccounting a = double_cover_feasible(h, s.h1, q);
    if (!a.refuted()) continue;
    CoverAccounting b = double_cover_feasible(h, s.h2, q);
    if (!b.refuted()) continue;
    v.eliminated = true;
    v.argument = Argument::Resultant2;
    v.splitting = s;
    v.witness.value = s.reduced_resultant;
    v.witness.summary = "reduced resultant of the radicals = 2; no double cover of either factor";
    v.witness.covers = {std::move(a), std::move(b)};
    return v;
  }
  v.witness.summary = "no argument applies";
  return v;
}

std::vector<Verdict> eliminate_all(const std::vector<IntPoly>& candidates, long q, unsigned threads) {
  std::vector<Verdict> out(candidates.size());
  if (threads <= 1 || candidates.size() < 2) {
    for (size_t i = 0; i < candidates.size(); ++i) out[i] = eliminate(candidates[i], q);
    return out;
  }
  std::atomic<size_t> cursor{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (size_t i = cursor++; i < candidates.size(); i = cursor++) out[i] = eliminate(candidates[i], q);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string verdicts_to_csv(const std::vector<Verdict>& verdicts) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  std::ostringstream os;
  os << "index,h,argument,h1,h2\n";
  for (size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    os << i + 1 << ',' << quote(v.candidate.to_string()) << ',' << to_string(v.argument) << ',';
    if (v.splitting) os << quote(factored_string(v.splitting->h1)) << ',' << quote(factored_string(v.splitting->h2));
    else os << ',';
    os << '\n';
  }
  return os.str();
}

std::string verdicts_to_json(const std::vector<Verdict>& verdicts, long q) {
  using nlohmann::json;
  json rows = json::array();
  for (size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    json row;
    row["index"] = i + 1;
    row["h"] = detail::poly_json(v.candidate);
    row["status"] = v.eliminated ? "eliminated" : "survives";
    row["argument"] = to_string(v.argument);
    if (v.splitting) {
      row["splitting"] = {{"h1", detail::poly_json(v.splitting->h1)},
                          {"h2", detail::poly_json(v.splitting->h2)},
                          {"resultant", v.splitting->resultant.get_str()},
                          {"reduced_resultant", v.splitting->reduced_resultant.get_str()}};
    }
    json w;
    w["summary"] = v.witness.summary;
    if (v.witness.value) w["value"] = v.witness.value->get_str();
    json covers = json::array();
    for (const auto& c : v.witness.covers) {
      json cj{{"hD", detail::poly_json(c.hD)},
              {"g_C", c.g_C},
              {"g_D", c.g_D},
              {"N1_C", c.N1_C.get_str()},
              {"N1_D", c.N1_D.get_str()},
              {"P2_C", c.P2_C.get_str()},
              {"different_budget", c.different_budget},
              {"refutation", refutation_name(c.refutation)},
              {"detail", c.detail}};
      covers.push_back(std::move(cj));
    }
    if (!covers.empty()) w["covers"] = std::move(covers);
    row["witness"] = std::move(w);
    rows.push_back(std::move(row));
  }
  return json{{"q", q}, {"verdicts", std::move(rows)}}.dump(2) + "\n";
}

std::string verdicts_to_markdown(const std::vector<Verdict>& verdicts) {
  std::ostringstream os;
  os << "| # | h | argument | h1 | h2 |\n|---|---|---|---|---|\n";
  for (size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    os << "| " << i + 1 << " | " << v.candidate.to_string() << " | " << to_string(v.argument) << " | ";
    if (v.splitting) os << factored_string(v.splitting->h1) << " | " << factored_string(v.splitting->h2) << " |\n";
    else os << " |  |\n";
  }
  return os.str();
}

}  // namespace curvebound
