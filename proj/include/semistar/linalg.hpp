#pragma once

#include "semistar/numeric.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace semistar {

// Row Hermite normal form on the leading `pivot_cols` columns.
// Positive pivots, entries above a pivot reduced into [0, pivot).
// Rows at and after the returned rank vanish on those columns.
template <typename Int>
Index hnf_in_place(Mat<Int>& a, Index pivot_cols, std::vector<Index>* pivots = nullptr) {
  Index row = 0;
  const Index rows = a.rows();
  if (pivots) pivots->clear();
  for (Index col = 0; col < pivot_cols && row < rows; ++col) {
    while (true) {
      Index best = -1;
      for (Index r = row; r < rows; ++r)
        if (a(r, col) != 0 && (best < 0 || abs(a(r, col)) < abs(a(best, col)))) best = r;
      if (best < 0) break;
      if (best != row) a.row(best).swap(a.row(row));
      bool clean = true;
      for (Index r = row + 1; r < rows; ++r) {
        if (a(r, col) == 0) continue;
        Int q = a(r, col) / a(row, col);
        if (q != 0)
          for (Index j = col; j < a.cols(); ++j) a(r, j) -= q * a(row, j);
        if (a(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) a.row(row) = -a.row(row).eval();
    for (Index r = 0; r < row; ++r) {
      Int q = floor_div(a(r, col), a(row, col));
      if (q != 0)
        for (Index j = col; j < a.cols(); ++j) a(r, j) -= q * a(row, j);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return row;
}

// Canonical HNF basis (nonzero rows only) of the row span of `a`.
template <typename Int>
Mat<Int> hnf(Mat<Int> a) {
  Index r = hnf_in_place(a, a.cols());
  return a.topRows(r).eval();
}

// Integer basis (in HNF) of {u in Z^m : u * a = 0}.
template <typename Int>
Mat<Int> integer_left_kernel(const Mat<Int>& a) {
  const Index m = a.rows(), k = a.cols();
  Mat<Int> aug = Mat<Int>::Zero(m, k + m);
  aug.leftCols(k) = a;
  for (Index i = 0; i < m; ++i) aug(i, k + i) = 1;
  Index r = hnf_in_place(aug, k);
  Mat<Int> ker = aug.block(r, k, m - r, m);
  return hnf(ker);
}

// Reduced row echelon form over a field; returns pivot columns.
template <typename F>
std::vector<Index> rref_in_place(Mat<F>& a) {
  std::vector<Index> piv;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index sel = -1;
    for (Index r = row; r < a.rows(); ++r)
      if (a(r, col) != 0) { sel = r; break; }
    if (sel < 0) continue;
    if (sel != row) a.row(sel).swap(a.row(row));
    F inv = F(1) / a(row, col);
    for (Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      F f = a(r, col);
      for (Index j = col; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

template <typename F>
Index rank_of(Mat<F> a) {
  return static_cast<Index>(rref_in_place(a).size());
}

// Basis rows of the row space in RREF.
template <typename F>
Mat<F> row_space(Mat<F> a) {
  auto piv = rref_in_place(a);
  return a.topRows(static_cast<Index>(piv.size())).eval();
}

// Columns spanning {x : a x = 0}.
template <typename F>
Mat<F> right_nullspace(Mat<F> a) {
  auto piv = rref_in_place(a);
  const Index n = a.cols();
  std::vector<bool> is_piv(n, false);
  for (Index p : piv) is_piv[p] = true;
  Mat<F> out = Mat<F>::Zero(n, n - static_cast<Index>(piv.size()));
  Index c = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    out(free, c) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) out(piv[i], c) = -a(static_cast<Index>(i), free);
    ++c;
  }
  return out;
}

// Rows spanning {y : y a = 0}.
template <typename F>
Mat<F> left_nullspace(const Mat<F>& a) {
  return right_nullspace<F>(a.transpose().eval()).transpose().eval();
}

// Solves y * phi = x row by row; phi must have full row rank and x in its row space.
template <typename F>
Mat<F> solve_left(const Mat<F>& phi, const Mat<F>& x) {
  const Index k = phi.rows(), d = phi.cols();
  Mat<F> aug(d, k + x.rows());
  aug.leftCols(k) = phi.transpose();
  aug.rightCols(x.rows()) = x.transpose();
  auto piv = rref_in_place(aug);
  for (Index i = 0; i < k; ++i)
    if (i >= static_cast<Index>(piv.size()) || piv[i] != i)
      throw std::invalid_argument("solve_left: map is not injective");
  for (std::size_t i = static_cast<std::size_t>(k); i < piv.size(); ++i)
    if (piv[i] >= k) throw std::invalid_argument("solve_left: target outside image");
  return aug.block(0, k, k, x.rows()).transpose().eval();
}

}  // namespace semistar
