#include "curvebound/gf2m.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <memory>

namespace curvebound {

namespace {

constexpr std::array<std::uint32_t, GFContext::kMaxDegree + 1> kModuli = {
    0,      0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x83,   0x11d,
    0x211,  0x409,  0x805,  0x1053, 0x201b, 0x402b, 0x8003, 0x1002d};

int degree_of(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t gf2_mod(std::uint32_t a, std::uint32_t b) {
  const int db = degree_of(b);
  for (int da = degree_of(a); da >= db; da = degree_of(a)) a ^= b << (da - db);
  return a;
}

}  // namespace

std::uint32_t gf2m_modulus(int m) {
  if (m < 1 || m > GFContext::kMaxDegree) {
    throw std::invalid_argument("binary field degree must be in [1, 16], got " + std::to_string(m));
  }
  return kModuli[static_cast<size_t>(m)];
}

bool gf2_irreducible(std::uint32_t poly) {
  const int d = degree_of(poly);
  if (d < 1) return false;
  for (std::uint32_t div = 2; degree_of(div) <= d / 2; ++div) {
    if (gf2_mod(poly, div) == 0) return false;
  }
  return true;
}

GFContext::GFContext(int m) : m_(m), modulus_(gf2m_modulus(m)), order_((1u << m) - 1) {
  if (!gf2_irreducible(modulus_)) throw std::logic_error("binary field modulus is reducible");
  exp_.resize(2 * static_cast<size_t>(order_));
  log_.assign(size(), 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order_; ++i) {
    if (i > 0 && x == 1) throw std::logic_error("binary field modulus is not primitive");
    exp_[i] = {x};
    log_[x] = i;
    if (m > 1) {
      x <<= 1;
      if (x >> m & 1) x ^= modulus_;
    }
  }
  for (std::uint32_t i = order_; i < 2 * order_; ++i) exp_[i] = exp_[i - order_];
  for (std::uint32_t b = 1; b < size(); ++b) {
    if (trace({b}) == 1) {
      trace_one_ = {b};
      break;
    }
  }
}

const GFContext& GFContext::get(int m) {
  static const auto table = [] {
    std::array<std::unique_ptr<GFContext>, kMaxDegree + 1> t;
    for (int k = 1; k <= kMaxDegree; ++k) t[static_cast<size_t>(k)] = std::make_unique<GFContext>(k);
    return t;
  }();
  gf2m_modulus(m);
  return *table[static_cast<size_t>(m)];
}

GFElem GFContext::from_bits(std::uint32_t bits) const {
  if (bits >= size()) throw std::invalid_argument("bit pattern outside GF(2^" + std::to_string(m_) + ")");
  return {bits};
}

GFElem GFContext::mul(GFElem a, GFElem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  return exp_[log_[a.bits] + log_[b.bits]];
}

GFElem GFContext::inv(GFElem a) const {
  if (a.is_zero()) throw DivisionByZero();
  return exp_[(order_ - log_[a.bits]) % order_];
}

GFElem GFContext::pow(GFElem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.is_zero()) return zero();
  return exp_[(static_cast<std::uint64_t>(log_[a.bits]) * (e % order_)) % order_];
}

int GFContext::trace(GFElem a) const {
  GFElem t = a;
  GFElem s = a;
  for (int i = 1; i < m_; ++i) {
    s = frobenius(s);
    t = add(t, s);
  }
  return static_cast<int>(t.bits);
}

std::optional<GFElem> GFContext::solve_artin_schreier(GFElem c) const {
  if (trace(c) != 0) return std::nullopt;
  // z = sum_{i < m-1} (sum_{j > i} d^(2^j)) c^(2^i) with trace(d) = 1.
  std::vector<GFElem> dpow(static_cast<size_t>(m_));
  dpow[0] = trace_one_;
  for (int j = 1; j < m_; ++j) dpow[static_cast<size_t>(j)] = frobenius(dpow[static_cast<size_t>(j - 1)]);
  GFElem z = zero();
  GFElem tail = zero();
  for (int j = 1; j < m_; ++j) tail = add(tail, dpow[static_cast<size_t>(j)]);
  GFElem cp = c;
  for (int i = 0; i + 1 < m_; ++i) {
    z = add(z, mul(tail, cp));
    tail = add(tail, dpow[static_cast<size_t>(i + 1)]);
    cp = frobenius(cp);
  }
  if (add(frobenius(z), z) != c) throw std::logic_error("Artin-Schreier solve failed");
  return z;
}

bool GFContext::is_cube(GFElem a) const {
  if (a.is_zero()) throw DivisionByZero();
  if (order_ % 3 != 0) return true;
  return log_[a.bits] % 3 == 0;
}

GFElem GFContext::omega() const {
  if (m_ % 2 != 0) throw std::invalid_argument("GF(2^" + std::to_string(m_) + ") does not contain GF(4)");
  return exp_[order_ / 3];
}

bool GFContext::in_subfield(GFElem a, int k) const {
  if (k <= 0 || m_ % k != 0) throw std::invalid_argument("not a subfield degree");
  return pow(a, std::uint64_t{1} << k) == a;
}

std::string GFContext::to_string(GFElem a) const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", a.bits);
  return buf;
}

}  // namespace curvebound
