#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvebound {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("inverse of zero in a binary field") {}
};

// Element of GF(2^m) in the polynomial basis: bit i is the coefficient of a^i.
struct GFElem {
  std::uint32_t bits = 0;

  bool is_zero() const { return bits == 0; }
  auto operator<=>(const GFElem&) const = default;
};

// GF(2^m) = GF(2)[a] / (modulus), 1 <= m <= 16.  The modulus is the
// lexicographically least primitive polynomial of degree m (see
// gf2m_modulus), so a generates the multiplicative group.
class GFContext {
 public:
  static constexpr int kMaxDegree = 16;

  explicit GFContext(int m);
  // Shared immutable instance.
  static const GFContext& get(int m);

  int m() const { return m_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t size() const { return 1u << m_; }

  GFElem zero() const { return {0}; }
  GFElem one() const { return {1}; }
  GFElem generator() const { return exp_[m_ == 1 ? 0 : 1]; }
  GFElem from_bits(std::uint32_t bits) const;

  GFElem add(GFElem a, GFElem b) const { return {a.bits ^ b.bits}; }
  GFElem mul(GFElem a, GFElem b) const;
  GFElem inv(GFElem a) const;  // throws DivisionByZero
  GFElem div(GFElem a, GFElem b) const { return mul(a, inv(b)); }
  GFElem pow(GFElem a, std::uint64_t e) const;
  GFElem frobenius(GFElem a) const { return mul(a, a); }
  GFElem sqrt(GFElem a) const { return pow(a, std::uint64_t{1} << (m_ - 1)); }

  // Absolute trace to GF(2).
  int trace(GFElem a) const;
  // A root of z^2 + z = c, or nullopt when trace(c) = 1.  The other root is z + 1.
  std::optional<GFElem> solve_artin_schreier(GFElem c) const;
  // For a != 0: whether a is a cube in GF(2^m)^*.
  bool is_cube(GFElem a) const;
  // The fixed root of x^2 + x + 1 (m even): generator^((2^m - 1) / 3).
  GFElem omega() const;
  // Whether a lies in the subfield GF(2^k), k | m.
  bool in_subfield(GFElem a, int k) const;

  std::string to_string(GFElem a) const;  // hex of the bit pattern

 private:
  int m_;
  std::uint32_t modulus_;
  std::vector<GFElem> exp_;          // exp_[i] = a^i, 0 <= i < 2 (2^m - 1)
  std::vector<std::uint32_t> log_;   // log_[0] unused
  std::uint32_t order_;              // 2^m - 1
  GFElem trace_one_ = {1};
};

// Frozen modulus table (bit i = coefficient of x^i).
std::uint32_t gf2m_modulus(int m);

// Exhaustive irreducibility test over GF(2) by trial division.
bool gf2_irreducible(std::uint32_t poly);

}  // namespace curvebound
