#include <doctest.h>

#include "support.hpp"

using namespace dsn;
using testing::slow_inv;
using testing::slow_rank;
using testing::to_rows;

namespace {

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Symbol>(rng.below(f->q()));
  return m;
}

}  // namespace

TEST_CASE("cauchy entries are 1/(a_i - b_j)") {
  const auto f = make_field(4);
  const std::vector<Symbol> a = {0, 1, 2}, b = {3, 4, 5, 6};
  const Matrix y = cauchy(f, a, b);
  REQUIRE(y.rows() == 3);
  REQUIRE(y.cols() == 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(y(i, j) == slow_inv(a[i] ^ b[j], 4, 0x13));
}

TEST_CASE("cauchy rejects repeated or out-of-field parameters") {
  const auto f = make_field(4);
  const std::vector<Symbol> a = {0, 1}, b = {1, 2}, big = {16};
  CHECK_THROWS_AS(cauchy(f, a, b), Error);
  try {
    cauchy(f, a, b);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::distinctness);
  }
  try {
    cauchy(f, big, a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("every square submatrix of a 4x4 cauchy matrix over GF(16) is invertible") {
  const auto f = make_field(4);
  const std::vector<Symbol> a = {0, 1, 2, 3}, b = {4, 5, 6, 7};
  const Matrix y = cauchy(f, a, b);
  std::size_t count = 0;
  for (std::size_t s = 1; s <= 4; ++s)
    for (const auto& rs : testing::subsets(4, s))
      for (const auto& cs : testing::subsets(4, s)) {
        const Matrix sub = y.select_rows(rs).select_columns(cs);
        REQUIRE(slow_rank(to_rows(sub), 4, 0x13) == s);
        REQUIRE(rank(sub) == s);
        ++count;
      }
  CHECK(count == 69);
}

TEST_CASE("random square cauchy submatrices over GF(256) are invertible") {
  const auto f = make_field(8);
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    auto picks = rng.subset(256, 40);
    for (std::size_t i = picks.size(); i > 1; --i) std::swap(picks[i - 1], picks[rng.below(i)]);
    std::vector<Symbol> a, b;
    for (std::size_t i = 0; i < 20; ++i) a.push_back(static_cast<Symbol>(picks[i]));
    for (std::size_t i = 20; i < 40; ++i) b.push_back(static_cast<Symbol>(picks[i]));
    const Matrix y = cauchy(f, a, b);
    const std::size_t s = 1 + rng.below(20);
    const Matrix sub = y.select_rows(rng.subset(20, s)).select_columns(rng.subset(20, s));
    REQUIRE(rank(sub) == s);
    if (t % 50 == 0) REQUIRE(slow_rank(to_rows(sub), 8, 0x11B) == s);
  }
}

TEST_CASE("rank agrees with the reference elimination") {
  const auto f = make_field(5);
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng.below(7), c = 1 + rng.below(7);
    Matrix m = random_matrix(f, r, c, rng);
    if (t % 3 == 0 && r > 1) m.set_block(r - 1, 0, m.block(0, 0, 1, c));  // force a repeated row
    REQUIRE(rank(m) == slow_rank(to_rows(m), 5, f->modulus()));
  }
}

TEST_CASE("matrix products are associative and distribute over addition") {
  const auto f = make_field(6);
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const Matrix x = random_matrix(f, 3, 4, rng), y = random_matrix(f, 4, 5, rng), z = random_matrix(f, 5, 2, rng);
    const Matrix y2 = random_matrix(f, 4, 5, rng);
    CHECK(mat_mul(mat_mul(x, y), z) == mat_mul(x, mat_mul(y, z)));
    CHECK(mat_mul(x, mat_add(y, y2)) == mat_add(mat_mul(x, y), mat_mul(x, y2)));
  }
  CHECK(mat_mul(Matrix::identity(f, 3), random_matrix(f, 3, 3, rng)).rows() == 3);
}

TEST_CASE("null space basis spans the kernel") {
  const auto f = make_field(4);
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng.below(6), c = 1 + rng.below(8);
    Matrix m = random_matrix(f, r, c, rng);
    if (t % 4 == 0) m = Matrix(f, r, c);
    const Matrix n = null_space_basis(m);
    REQUIRE(n.cols() == c);
    REQUIRE(n.rows() == c - rank(m));
    if (n.rows()) {
      CHECK(mat_mul(m, n.transpose()).is_zero());
      CHECK(rank(n) == n.rows());
    }
  }
}

TEST_CASE("solve classifies unique, underdetermined and inconsistent systems") {
  const auto f = make_field(4);
  const Matrix a(f, {{1, 2}, {3, 4}});
  const Matrix x(f, {{5}, {6}});
  const Matrix rhs = mat_mul(a, x);
  const auto out = solve(a, rhs);
  REQUIRE(std::holds_alternative<Unique>(out));
  CHECK(std::get<Unique>(out).solution == x);

  const Matrix wide(f, {{1, 1, 0}});
  const auto under = solve(wide, Matrix(f, {{1}}));
  REQUIRE(std::holds_alternative<Underdetermined>(under));
  CHECK(!std::get<Underdetermined>(under).free_columns.empty());

  const Matrix dup(f, {{1, 2}, {1, 2}});
  CHECK(std::holds_alternative<Inconsistent>(solve(dup, Matrix(f, {{1}, {2}}))));
}

TEST_CASE("partial solutions pin down exactly the kernel-free unknowns") {
  const auto f = make_field(4);
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    const Matrix m = random_matrix(f, r, c, rng);
    std::vector<Symbol> x(c);
    for (auto& s : x) s = static_cast<Symbol>(rng.below(16));
    const auto rhs = vec_mul(x, m.transpose());
    const PartialSolution ps = solve_partial(m, rhs);
    REQUIRE(ps.consistent);
    const Matrix n = null_space_basis(m);
    for (std::size_t i = 0; i < c; ++i) {
      bool free = false;
      for (std::size_t b = 0; b < n.rows(); ++b) free = free || n(b, i) != 0;
      REQUIRE(ps.determined[i] == !free);
      if (ps.determined[i]) REQUIRE(ps.values[i] == x[i]);
    }
  }
  const Matrix dup(f, {{1, 2}, {1, 2}});
  const std::vector<Symbol> bad = {1, 2};
  CHECK(!solve_partial(dup, bad).consistent);
}

TEST_CASE("dimension and field checks") {
  const auto f4 = make_field(4), f8 = make_field(8);
  CHECK_THROWS_AS(mat_mul(Matrix(f4, 2, 3), Matrix(f4, 2, 3)), Error);
  try {
    mat_add(Matrix(f4, 2, 2), Matrix(f8, 2, 2));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::context_mismatch);
  }
  try {
    hstack(Matrix(f4, 2, 2), Matrix(f4, 3, 2));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension);
  }
}
