#include "curvebound/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "numeric_roots.hpp"

namespace curvebound {

namespace {

mpz_class floor_ld(long double v) {
  return mpz_class(std::to_string(static_cast<long long>(std::floor(v))));
}

mpz_class ceil_ld(long double v) {
  return mpz_class(std::to_string(static_cast<long long>(std::ceil(v))));
}

// Guard against estimates so large that long long conversion overflows.
constexpr long double kEstimateCap = 1e15L;

}  // namespace

RealWeilSearch::RealWeilSearch(ConstraintSet cs) : cs_(std::move(cs)), interval_(RealInterval::weil(cs_.q)) {
  cs_.validate();
  binom_.assign(static_cast<size_t>(cs_.g) + 1, {});
  for (int n = 0; n <= cs_.g; ++n) {
    auto& row = binom_[static_cast<size_t>(n)];
    row.assign(static_cast<size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k) {
      row[static_cast<size_t>(k)] =
          binom_[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] + binom_[static_cast<size_t>(n - 1)][static_cast<size_t>(k)];
    }
  }
}

SearchNode RealWeilSearch::root() const {
  SearchNode n;
  n.level = cs_.g;
  n.poly = IntPoly::constant(1);
  n.top = {mpz_class(1)};
  return n;
}

SearchNode RealWeilSearch::child(const SearchNode& node, const mpz_class& coeff) const {
  if (node.level <= 0) throw std::logic_error("child: node is already a leaf");
  SearchNode c;
  c.level = node.level - 1;
  c.top = node.top;
  c.top.push_back(coeff);
  const int k = c.level;
  // poly = sum_{j >= k} C(j, k) a_j x^(j - k), with a_j = top[g - j].
  std::vector<mpz_class> coeffs(static_cast<size_t>(cs_.g - k) + 1);
  for (int j = k; j <= cs_.g; ++j) {
    coeffs[static_cast<size_t>(j - k)] =
        binom_[static_cast<size_t>(j)][static_cast<size_t>(k)] * c.top[static_cast<size_t>(cs_.g - j)];
  }
  c.poly = IntPoly(std::move(coeffs));
  return c;
}

bool RealWeilSearch::admissible(const IntPoly& level_poly) const {
  if (level_poly.degree() <= 0) return true;
  return count_real_roots_in(level_poly, interval_).all_in;
}

mpz_class RealWeilSearch::place_count_offset(const SearchNode& node) const {
  const int n = cs_.g - node.level + 1;
  std::vector<mpz_class> h(static_cast<size_t>(cs_.g) + 1, 0);
  for (size_t i = 0; i < node.top.size(); ++i) h[static_cast<size_t>(cs_.g) - i] = node.top[i];
  WeilProfile profile = WeilProfile::make(IntPoly(std::move(h)), cs_.q, n);
  return profile.P_n(n);
}

CoeffRange RealWeilSearch::place_count_window(const SearchNode& node) const {
  const int n = cs_.g - node.level + 1;
  mpz_class offset = place_count_offset(node);
  CoeffRange w;
  auto it = cs_.prescribed.find(n);
  if (it != cs_.prescribed.end()) {
    w.lo = mpz_class(it->second) - offset;
    w.hi = w.lo;
    return w;
  }
  w.lo = -offset;  // P_n >= 0; no upper limit
  w.hi = mpz_class(std::numeric_limits<long>::max());
  return w;
}

CoeffRange RealWeilSearch::extension_range(const SearchNode& node) const {
  const IntPoly& parent = node.poly;
  const IntPoly base = child(node, 0).poly;
  const int child_degree = base.degree();

  long double lo_est = -kEstimateCap;
  long double hi_est = kEstimateCap;
  auto at_least = [&](long double v) { lo_est = std::max(lo_est, v); };
  auto at_most = [&](long double v) { hi_est = std::min(hi_est, v); };

  const long double right = interval_.hi.approx();
  const long double left = interval_.lo.approx();
  // G(right) >= 0 and (-1)^deg G G(left) >= 0 for G = base + c.
  at_least(-base.eval(right));
  if (child_degree % 2 == 0) at_least(-base.eval(left));
  else at_most(-base.eval(left));

  // Critical values of G are the values at roots of the parent (G' = k * parent).
  if (parent.degree() >= 1) {
    struct Crit {
      long double x;
      int mult;
    };
    std::vector<Crit> crits;
    bool converged = true;
    for (const auto& [piece, mult] : squarefree_decomposition(parent)) {
      auto roots = detail::approximate_roots(piece);
      if (roots.empty()) converged = false;
      for (const auto& z : roots) crits.push_back({z.real(), mult});
    }
    if (!converged) {
      // G vanishes somewhere in the interval, so c <= -min F; a sampled
      // minimum is close enough for the exact scan below to start from.
      crits.clear();
      long double lowest = std::numeric_limits<long double>::max();
      constexpr int kSamples = 4096;
      for (int i = 0; i <= kSamples; ++i) {
        lowest = std::min(lowest, base.eval(left + (right - left) * i / kSamples));
      }
      at_most(-lowest + 1);
    }
    std::sort(crits.begin(), crits.end(), [](const Crit& a, const Crit& b) { return a.x > b.x; });
    int parity_right = 0;  // total multiplicity of roots to the right
    for (const auto& cr : crits) {
      const long double v = -base.eval(cr.x);
      if (cr.mult >= 2) {
        at_least(v);
        at_most(v);
      } else if (parity_right % 2 == 0) {
        at_most(v);  // parent changes from - to +: local minimum of G
      } else {
        at_least(v);  // local maximum of G
      }
      parity_right += cr.mult;
    }
  }

  CoeffRange window = place_count_window(node);
  mpz_class a = ceil_ld(lo_est - 0.5L);
  mpz_class b = floor_ld(hi_est + 0.5L);
  if (a < window.lo) a = window.lo;
  if (b > window.hi) b = window.hi;

  auto valid = [&](const mpz_class& c) {
    return c >= window.lo && c <= window.hi && admissible(child(node, c).poly);
  };

  CoeffRange r;
  bool found = false;
  for (mpz_class c = a; c <= b; ++c) {
    if (!valid(c)) continue;
    if (!found) r.lo = c;
    r.hi = c;
    found = true;
  }
  if (!found) return CoeffRange{};
  while (valid(r.lo - 1)) --r.lo;
  while (valid(r.hi + 1)) ++r.hi;
  return r;
}

void RealWeilSearch::descend(const SearchNode& node, std::vector<IntPoly>& out) const {
  if (node.level == 0) {
    if (satisfies_constraints(node.poly, cs_)) out.push_back(node.poly);
    return;
  }
  CoeffRange range = extension_range(node);
  for (mpz_class c = range.lo; c <= range.hi; ++c) {
    SearchNode next = child(node, c);
    if (!admissible(next.poly)) continue;
    descend(next, out);
  }
}

std::vector<IntPoly> RealWeilSearch::run(unsigned threads) const {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<IntPoly> out;

  std::vector<SearchNode> frontier{root()};
  if (threads > 1) {
    // Breadth-first expansion until there is enough work to share.
    const size_t want = 8 * static_cast<size_t>(threads);
    while (frontier.size() < want && frontier.front().level > 0) {
      std::vector<SearchNode> next;
      for (const auto& node : frontier) {
        CoeffRange range = extension_range(node);
        for (mpz_class c = range.lo; c <= range.hi; ++c) {
          SearchNode ch = child(node, c);
          if (admissible(ch.poly)) next.push_back(std::move(ch));
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
  }

  if (threads <= 1 || frontier.size() <= 1) {
    for (const auto& node : frontier) descend(node, out);
  } else {
    std::atomic<size_t> cursor{0};
    std::mutex merge;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        std::vector<IntPoly> local;
        for (size_t i = cursor++; i < frontier.size(); i = cursor++) descend(frontier[i], local);
        std::lock_guard<std::mutex> lock(merge);
        out.insert(out.end(), local.begin(), local.end());
      });
    }
    for (auto& th : pool) th.join();
  }

  std::sort(out.begin(), out.end(), high_to_low_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<IntPoly> enumerate_real_weil(const ConstraintSet& cs, unsigned threads) {
  return RealWeilSearch(cs).run(threads);
}

}  // namespace curvebound
