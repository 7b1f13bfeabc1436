#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dsn/error.hpp"

namespace dsn {

/// Raw field symbol. Interpreted as a polynomial over GF(2), bit i = coefficient of x^i.
using Symbol = std::uint16_t;

/// Arithmetic in GF(2^theta), 2 <= theta <= 16, with a fixed reduction polynomial.
///
/// Multiplication and inversion go through log/antilog tables built from a
/// primitive element found at construction; the reduction polynomial only has
/// to be irreducible, not primitive (0x11B for theta = 8 is not).
class FieldContext {
 public:
  static constexpr unsigned min_theta = 2;
  static constexpr unsigned max_theta = 16;

  explicit FieldContext(unsigned theta);
  FieldContext(unsigned theta, std::uint32_t modulus);

  unsigned theta() const noexcept { return theta_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t q() const noexcept { return q_; }

  bool contains(std::uint32_t value) const noexcept { return value < q_; }

  Symbol add(Symbol a, Symbol b) const noexcept { return static_cast<Symbol>(a ^ b); }
  Symbol sub(Symbol a, Symbol b) const noexcept { return static_cast<Symbol>(a ^ b); }
  Symbol mul(Symbol a, Symbol b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

  /// First `count` elements in canonical (integer) order 0, 1, 2, ...
  std::vector<Symbol> enumerate_elements(std::size_t count) const;

  /// Same field iff same exponent and same reduction polynomial.
  bool operator==(const FieldContext& other) const noexcept {
    return theta_ == other.theta_ && modulus_ == other.modulus_;
  }

  static std::uint32_t default_modulus(unsigned theta);
  static bool is_irreducible(std::uint32_t poly, unsigned degree);

 private:
  unsigned theta_;
  std::uint32_t modulus_;
  std::uint32_t q_;
  std::vector<Symbol> exp_;          // 2 * (q - 1) entries, avoids a modulo in mul
  std::vector<std::uint32_t> log_;   // log_[0] unused
};

using FieldPtr = std::shared_ptr<const FieldContext>;

inline FieldPtr make_field(unsigned theta) { return std::make_shared<const FieldContext>(theta); }
inline FieldPtr make_field(unsigned theta, std::uint32_t modulus) {
  return std::make_shared<const FieldContext>(theta, modulus);
}

/// A symbol bound to its field. Mixing elements of different fields throws.
class FieldElement {
 public:
  FieldElement(const FieldContext& ctx, std::uint32_t value);

  Symbol value() const noexcept { return value_; }
  const FieldContext& context() const noexcept { return *ctx_; }

  FieldElement inverse() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return *a.ctx_ == *b.ctx_ && a.value_ == b.value_;
  }

 private:
  const FieldContext* ctx_;
  Symbol value_;
};

}  // namespace dsn
