#include "dsn/field.hpp"

#include <array>
#include <bit>
#include <sstream>

namespace dsn {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::context_mismatch: return "context_mismatch";
    case ErrorCode::division_by_zero: return "division_by_zero";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::not_irreducible: return "not_irreducible";
    case ErrorCode::distinctness: return "distinctness";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::schema: return "schema";
    case ErrorCode::coop_not_subset: return "coop_not_subset";
    case ErrorCode::delta_not_below_r: return "delta_not_below_r";
    case ErrorCode::empty_coop: return "empty_coop";
    case ErrorCode::unknown_node: return "unknown_node";
    case ErrorCode::self_loop: return "self_loop";
    case ErrorCode::bad_latency: return "bad_latency";
    case ErrorCode::duplicate_edge: return "duplicate_edge";
    case ErrorCode::unreachable: return "unreachable";
    case ErrorCode::malformed_cycle: return "malformed_cycle";
    case ErrorCode::level_too_small: return "level_too_small";
    case ErrorCode::position_conflict: return "position_conflict";
    case ErrorCode::missing_gamma: return "missing_gamma";
    case ErrorCode::incompatible_graph: return "incompatible_graph";
    case ErrorCode::field_too_small: return "field_too_small";
    case ErrorCode::negative_local_capability: return "negative_local_capability";
    case ErrorCode::padding_overflow: return "padding_overflow";
    case ErrorCode::parameter: return "parameter";
    case ErrorCode::domain: return "domain";
    case ErrorCode::inconsistent: return "inconsistent";
    case ErrorCode::io: return "io";
    case ErrorCode::format: return "format";
  }
  return "unknown";
}

namespace {

// Degree of a nonzero GF(2) polynomial.
int degree(std::uint32_t p) { return 31 - std::countl_zero(p); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = degree(m);
  while (a != 0 && degree(a) >= dm) a ^= m << (degree(a) - dm);
  return a;
}

// Table of irreducible polynomials, theta = 2..16.
constexpr std::array<std::uint32_t, 17> kDefaultModuli = {
    0,       0,       0x7,     0xB,     0x13,    0x25,    0x43,    0x89,   0x11B,
    0x211,   0x409,   0x805,   0x1053,  0x201B,  0x4443,  0x8003,  0x1100B,
};

}  // namespace

std::uint32_t FieldContext::default_modulus(unsigned theta) {
  if (theta < min_theta || theta > max_theta) {
    throw Error(ErrorCode::parameter, "field exponent must be in [2, 16], got " + std::to_string(theta));
  }
  return kDefaultModuli[theta];
}

bool FieldContext::is_irreducible(std::uint32_t poly, unsigned deg) {
  if (poly == 0 || degree(poly) != static_cast<int>(deg)) return false;
  // Any factorization has a factor of degree <= deg / 2.
  const std::uint32_t limit = 1u << (deg / 2 + 1);
  for (std::uint32_t d = 2; d < limit; ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

FieldContext::FieldContext(unsigned theta) : FieldContext(theta, default_modulus(theta)) {}

FieldContext::FieldContext(unsigned theta, std::uint32_t modulus)
    : theta_(theta), modulus_(modulus), q_(0) {
  if (theta < min_theta || theta > max_theta) {
    throw Error(ErrorCode::parameter, "field exponent must be in [2, 16], got " + std::to_string(theta));
  }
  if (!is_irreducible(modulus, theta)) {
    std::ostringstream os;
    os << "modulus 0x" << std::hex << modulus << " is not an irreducible polynomial of degree "
       << std::dec << theta;
    throw Error(ErrorCode::not_irreducible, os.str());
  }
  q_ = 1u << theta;
  const std::uint32_t order = q_ - 1;

  auto mulmod = [&](std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0;
    while (b != 0) {
      if (b & 1u) r ^= a;
      b >>= 1;
      a <<= 1;
      if (a & q_) a ^= modulus_;
    }
    return r;
  };

  // Smallest generator of the multiplicative group.
  for (std::uint32_t g = 2; g < q_; ++g) {
    std::vector<Symbol> powers;
    powers.reserve(order);
    std::uint32_t x = 1;
    bool ok = true;
    for (std::uint32_t e = 0; e < order; ++e) {
      if (e > 0 && x == 1) {
        ok = false;
        break;
      }
      powers.push_back(static_cast<Symbol>(x));
      x = mulmod(x, g);
    }
    if (!ok || x != 1) continue;
    exp_.resize(2 * static_cast<std::size_t>(order));
    log_.assign(q_, 0);
    for (std::uint32_t e = 0; e < order; ++e) {
      exp_[e] = powers[e];
      exp_[e + order] = powers[e];
      log_[powers[e]] = e;
    }
    return;
  }
  // The multiplicative group of a field is cyclic, so the search cannot fall through.
  throw std::logic_error("no generator found for GF(2^" + std::to_string(theta) + ")");
}

Symbol FieldContext::inv(Symbol a) const {
  if (a == 0) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

std::vector<Symbol> FieldContext::enumerate_elements(std::size_t count) const {
  if (count > q_) {
    throw Error(ErrorCode::capacity, "requested " + std::to_string(count) + " distinct elements, field has " +
                                         std::to_string(q_));
  }
  std::vector<Symbol> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<Symbol>(i);
  return out;
}

FieldElement::FieldElement(const FieldContext& ctx, std::uint32_t value) : ctx_(&ctx), value_(0) {
  if (!ctx.contains(value)) {
    throw Error(ErrorCode::domain, "value " + std::to_string(value) + " outside GF(" + std::to_string(ctx.q()) + ")");
  }
  value_ = static_cast<Symbol>(value);
}

FieldElement FieldElement::inverse() const { return FieldElement(*ctx_, ctx_->inv(value_)); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (!(*a.ctx_ == *b.ctx_)) throw Error(ErrorCode::context_mismatch, "elements from different fields");
  return FieldElement(*a.ctx_, a.ctx_->add(a.value_, b.value_));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (!(*a.ctx_ == *b.ctx_)) throw Error(ErrorCode::context_mismatch, "elements from different fields");
  return FieldElement(*a.ctx_, a.ctx_->mul(a.value_, b.value_));
}

}  // namespace dsn
