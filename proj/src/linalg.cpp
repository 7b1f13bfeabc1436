#include "dsn/linalg.hpp"

#include <algorithm>
#include <string>

namespace dsn {

namespace {

void require_same_field(const Matrix& x, const Matrix& y) {
  if (!(x.field() == y.field())) throw Error(ErrorCode::context_mismatch, "matrices over different fields");
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

// Gauss-Jordan over the first `ncols` columns; trailing columns ride along.
// Returns pivot columns; pivot k lives in row k.
std::vector<std::size_t> rref_in_place(Matrix& m, std::size_t ncols) {
  const FieldContext& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < ncols && prow < m.rows(); ++c) {
    std::size_t r = prow;
    while (r < m.rows() && m(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    if (r != prow) {
      auto a = m.row(r);
      auto b = m.row(prow);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto pr = m.row(prow);
    const Symbol scale = f.inv(pr[c]);
    for (auto& v : pr) v = f.mul(v, scale);
    for (std::size_t rr = 0; rr < m.rows(); ++rr) {
      if (rr == prow) continue;
      const Symbol factor = m(rr, c);
      if (factor == 0) continue;
      auto row = m.row(rr);
      for (std::size_t cc = c; cc < m.cols(); ++cc) row[cc] = f.sub(row[cc], f.mul(factor, pr[cc]));
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field, std::initializer_list<std::initializer_list<unsigned>> rows)
    : field_(std::move(field)), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::dimension, "ragged matrix literal");
    for (unsigned v : r) {
      if (!field_->contains(v)) throw Error(ErrorCode::domain, "matrix literal entry outside field");
      data_.push_back(static_cast<Symbol>(v));
    }
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::row_vector(FieldPtr field, std::span<const Symbol> values) {
  Matrix m(std::move(field), 1, values.size());
  std::copy(values.begin(), values.end(), m.data_.begin());
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::dimension, "block out of range of " + shape(*this));
  Matrix out(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
  if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_)
    throw Error(ErrorCode::dimension, "set_block out of range of " + shape(*this));
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(field_, idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= rows_) throw Error(ErrorCode::dimension, "row index out of range");
    auto src = row(idx[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> idx) const {
  Matrix out(field_, rows_, idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c) {
    if (idx[c] >= cols_) throw Error(ErrorCode::dimension, "column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, c) = (*this)(r, idx[c]);
  }
  return out;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Symbol s) { return s == 0; });
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field() == b.field() && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix cauchy(FieldPtr field, std::span<const Symbol> a, std::span<const Symbol> b) {
  std::vector<Symbol> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  for (Symbol s : all)
    if (!field->contains(s)) throw Error(ErrorCode::domain, "Cauchy parameter outside field");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error(ErrorCode::distinctness, "Cauchy parameters must be pairwise distinct");
  Matrix m(field, a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = field->inv(field->sub(a[i], b[j]));
  return m;
}

Matrix mat_mul(const Matrix& x, const Matrix& y) {
  require_same_field(x, y);
  if (x.cols() != y.rows())
    throw Error(ErrorCode::dimension, "mat_mul " + shape(x) + " * " + shape(y));
  const FieldContext& f = x.field();
  Matrix out(x.field_ptr(), x.rows(), y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto orow = out.row(r);
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const Symbol a = x(r, k);
      if (a == 0) continue;
      auto yrow = y.row(k);
      for (std::size_t c = 0; c < y.cols(); ++c) orow[c] = f.add(orow[c], f.mul(a, yrow[c]));
    }
  }
  return out;
}

Matrix mat_add(const Matrix& x, const Matrix& y) {
  require_same_field(x, y);
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(ErrorCode::dimension, "mat_add " + shape(x) + " + " + shape(y));
  Matrix out = x;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = x.field().add(x(r, c), y(r, c));
  return out;
}

Matrix hstack(const Matrix& x, const Matrix& y) {
  require_same_field(x, y);
  if (x.rows() != y.rows()) throw Error(ErrorCode::dimension, "hstack " + shape(x) + " | " + shape(y));
  Matrix out(x.field_ptr(), x.rows(), x.cols() + y.cols());
  out.set_block(0, 0, x);
  out.set_block(0, x.cols(), y);
  return out;
}

Matrix vstack(const Matrix& x, const Matrix& y) {
  require_same_field(x, y);
  if (x.cols() != y.cols()) throw Error(ErrorCode::dimension, "vstack " + shape(x) + " / " + shape(y));
  Matrix out(x.field_ptr(), x.rows() + y.rows(), x.cols());
  out.set_block(0, 0, x);
  out.set_block(x.rows(), 0, y);
  return out;
}

std::vector<Symbol> vec_mul(std::span<const Symbol> v, const Matrix& m) {
  if (v.size() != m.rows())
    throw Error(ErrorCode::dimension, "vector of length " + std::to_string(v.size()) + " times " + shape(m));
  const FieldContext& f = m.field();
  std::vector<Symbol> out(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    auto row = m.row(k);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = f.add(out[c], f.mul(v[k], row[c]));
  }
  return out;
}

std::size_t rank(const Matrix& x) {
  Matrix m = x;
  return rref_in_place(m, m.cols()).size();
}

Matrix null_space_basis(const Matrix& x) {
  Matrix m = x;
  const auto pivots = rref_in_place(m, m.cols());
  std::vector<bool> is_pivot(x.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < x.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(x.field_ptr(), free_cols.size(), x.cols());
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    const std::size_t fc = free_cols[b];
    basis(b, fc) = 1;
    // x_p + R[p][fc] * x_fc = 0, and -1 = 1 in characteristic 2.
    for (std::size_t k = 0; k < pivots.size(); ++k) basis(b, pivots[k]) = m(k, fc);
  }
  return basis;
}

SolveOutcome solve(const Matrix& coeff, const Matrix& rhs) {
  require_same_field(coeff, rhs);
  if (coeff.rows() != rhs.rows())
    throw Error(ErrorCode::dimension, "solve " + shape(coeff) + " with rhs " + shape(rhs));
  Matrix aug = hstack(coeff, rhs);
  const auto pivots = rref_in_place(aug, coeff.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    for (std::size_t c = coeff.cols(); c < aug.cols(); ++c)
      if (aug(r, c) != 0) return Inconsistent{};
  if (pivots.size() < coeff.cols()) {
    Underdetermined u;
    std::size_t k = 0;
    for (std::size_t c = 0; c < coeff.cols(); ++c) {
      if (k < pivots.size() && pivots[k] == c) {
        ++k;
        continue;
      }
      u.free_columns.push_back(c);
    }
    return u;
  }
  return Unique{aug.block(0, coeff.cols(), coeff.cols(), rhs.cols())};
}

PartialSolution solve_partial(const Matrix& coeff, std::span<const Symbol> rhs) {
  if (coeff.rows() != rhs.size())
    throw Error(ErrorCode::dimension, "solve_partial " + shape(coeff) + " with rhs of length " +
                                          std::to_string(rhs.size()));
  Matrix aug(coeff.field_ptr(), coeff.rows(), coeff.cols() + 1);
  aug.set_block(0, 0, coeff);
  for (std::size_t r = 0; r < rhs.size(); ++r) aug(r, coeff.cols()) = rhs[r];
  const auto pivots = rref_in_place(aug, coeff.cols());

  PartialSolution out;
  out.values.assign(coeff.cols(), 0);
  out.determined.assign(coeff.cols(), false);
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (aug(r, coeff.cols()) != 0) return out;
  out.consistent = true;

  std::vector<bool> is_pivot(coeff.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    out.values[pivots[k]] = aug(k, coeff.cols());
    bool pinned = true;
    for (std::size_t c = 0; c < coeff.cols(); ++c) {
      if (!is_pivot[c] && aug(k, c) != 0) {
        pinned = false;
        break;
      }
    }
    out.determined[pivots[k]] = pinned;
  }
  return out;
}

}  // namespace dsn
