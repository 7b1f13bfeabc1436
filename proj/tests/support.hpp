#pragma once

#include <string>
#include <vector>

#include "dsn/container.hpp"
#include "dsn/oracle.hpp"
#include "dsn/rng.hpp"

namespace testing {

using namespace dsn;

inline Config config(const std::string& name) {
  return load_config_file(std::string(DSN_CONFIG_DIR) + "/" + name + ".json");
}

inline CodeInstance mesh12_gf16() { return build_code(config("mesh12_gf16"), ConstructionKind::single_level); }

inline MessageSet random_messages(const CodeInstance& code, Rng& rng) {
  MessageSet m;
  for (int i = 1; i <= code.size(); ++i) {
    Message v(code.topology().node(i).k);
    for (auto& s : v) s = static_cast<Symbol>(rng.below(code.field()->q()));
    m.push_back(std::move(v));
  }
  return m;
}

inline CodewordSet damage(CodewordSet cw, const ErasurePattern& pat) {
  for (std::size_t i = 0; i < cw.size(); ++i)
    for (std::size_t c = 0; c < cw[i].size(); ++c)
      if (pat.erased[i][c]) cw[i][c] = 0;
  return cw;
}

inline ErasurePattern erase_node(ErasurePattern pat, NodeId i, const std::vector<std::size_t>& coords0) {
  for (auto c : coords0) pat.erase(i, c + 1);
  return pat;
}

// Reference arithmetic, deliberately table-free: shift-and-add with reduction.
inline std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, unsigned theta, std::uint32_t modulus) {
  std::uint32_t acc = 0;
  while (b) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> theta & 1) a ^= modulus;
  }
  return acc;
}

inline std::uint32_t slow_inv(std::uint32_t a, unsigned theta, std::uint32_t modulus) {
  for (std::uint32_t x = 1; x < (1u << theta); ++x)
    if (slow_mul(a, x, theta, modulus) == 1) return x;
  return 0;
}

// Rank by plain elimination on a copy, using the reference arithmetic.
inline std::size_t slow_rank(std::vector<std::vector<std::uint32_t>> m, unsigned theta, std::uint32_t modulus) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::uint32_t inv = slow_inv(m[rank][c], theta, modulus);
    for (auto& x : m[rank]) x = slow_mul(x, inv, theta, modulus);
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && m[r][c]) {
        const std::uint32_t f = m[r][c];
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= slow_mul(f, m[rank][k], theta, modulus);
      }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<std::uint32_t>> to_rows(const Matrix& m) {
  std::vector<std::vector<std::uint32_t>> out(m.rows(), std::vector<std::uint32_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace testing
