#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

#include "dsn/field.hpp"

namespace dsn {

/// Dense row-major matrix over a shared GF(2^theta) context.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::initializer_list<std::initializer_list<unsigned>> rows);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix row_vector(FieldPtr field, std::span<const Symbol> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  const FieldContext& field() const noexcept { return *field_; }

  Symbol operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Symbol& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Symbol> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Symbol> data() const noexcept { return data_; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& src);
  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_columns(std::span<const std::size_t> idx) const;
  bool is_zero() const noexcept;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> data_;
};

/// Cauchy matrix Y(a; b) with entry (i, j) = 1 / (a_i - b_j). All of a ++ b must be distinct.
Matrix cauchy(FieldPtr field, std::span<const Symbol> a, std::span<const Symbol> b);

Matrix mat_mul(const Matrix& x, const Matrix& y);
Matrix mat_add(const Matrix& x, const Matrix& y);
Matrix hstack(const Matrix& x, const Matrix& y);
Matrix vstack(const Matrix& x, const Matrix& y);

/// Row vector times matrix: v (len = m.rows()) -> v * m (len = m.cols()).
std::vector<Symbol> vec_mul(std::span<const Symbol> v, const Matrix& m);

std::size_t rank(const Matrix& x);

/// Basis of {v : x * v^T = 0}, one basis vector per row (x.cols() columns).
Matrix null_space_basis(const Matrix& x);

struct Unique {
  Matrix solution;  // coeff.cols() x rhs.cols()
};
struct Underdetermined {
  std::vector<std::size_t> free_columns;
};
struct Inconsistent {};

using SolveOutcome = std::variant<Unique, Underdetermined, Inconsistent>;

/// Solve coeff * X = rhs exactly. Pivot = first nonzero entry scanning down the column.
SolveOutcome solve(const Matrix& coeff, const Matrix& rhs);

/// Solution of coeff * x = rhs where only some unknowns may be pinned down.
struct PartialSolution {
  bool consistent = false;
  std::vector<Symbol> values;   // particular solution, meaningful where determined[i]
  std::vector<bool> determined; // true iff x[i] is identical across the whole solution set
};

/// Single right-hand side. An unknown is determined iff the null space of coeff
/// has zero support on it.
PartialSolution solve_partial(const Matrix& coeff, std::span<const Symbol> rhs);

}  // namespace dsn
