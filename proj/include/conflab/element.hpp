#pragma once

// Coefficient vectors over a finite C[d]-basis and polynomial matrices.

#include <map>
#include <string>
#include <vector>

#include "conflab/poly.hpp"

namespace conflab {

// An element of a free C[d]-module of finite rank with polynomial
// coefficients, possibly depending on lambda-slots (an element of
// R[x0, x1, ...]). With no slot variables it is a plain element of R.
class LambdaExpr {
 public:
  LambdaExpr() = default;
  explicit LambdaExpr(std::size_t rank) : coeffs_(rank) {}
  explicit LambdaExpr(std::vector<MultiPoly> coeffs) : coeffs_(std::move(coeffs)) {}
  static LambdaExpr basis(std::size_t rank, std::size_t i, const MultiPoly& coeff = MultiPoly(1L));

  std::size_t rank() const { return coeffs_.size(); }
  MultiPoly& operator[](std::size_t i) { return coeffs_[i]; }
  const MultiPoly& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<MultiPoly>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  int total_degree() const;
  int degree_in(VarId v) const;
  int max_slot() const;
  bool contains(VarId v) const;

  LambdaExpr& operator+=(const LambdaExpr& o);
  LambdaExpr& operator-=(const LambdaExpr& o);
  LambdaExpr& operator*=(const MultiPoly& p);
  LambdaExpr operator-() const;
  friend LambdaExpr operator+(LambdaExpr a, const LambdaExpr& b) { return a += b; }
  friend LambdaExpr operator-(LambdaExpr a, const LambdaExpr& b) { return a -= b; }
  friend LambdaExpr operator*(const MultiPoly& p, LambdaExpr a) { return a *= p; }
  friend LambdaExpr operator*(LambdaExpr a, const MultiPoly& p) { return a *= p; }
  bool operator==(const LambdaExpr& o) const { return coeffs_ == o.coeffs_; }

  LambdaExpr substitute(VarId v, const MultiPoly& r) const;
  LambdaExpr substitute(const std::map<VarId, MultiPoly>& subs) const;
  // Coefficient of v^k in every component.
  LambdaExpr coefficient_of(VarId v, unsigned k) const;

  // `p1*name1 + p2*name2`, components with compound coefficients are
  // parenthesised; zero prints as `0`.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<MultiPoly> coeffs_;
};

using ConformalElement = LambdaExpr;

// r x c matrix of polynomials. As an operator on coefficient vectors,
// (A x)_i = sum_j A(i, j) x_j, so column j holds the image of basis element j.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static PolyMatrix identity(std::size_t n);
  static PolyMatrix diagonal(const std::vector<MultiPoly>& d);
  static PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  MultiPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const MultiPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  LambdaExpr apply(const LambdaExpr& x) const;
  bool operator==(const PolyMatrix& o) const = default;

  MultiPoly determinant() const;
  // Adjugate: adj(A) * A = det(A) * I.
  PolyMatrix adjugate() const;
  // det is a nonzero rational constant.
  bool is_unimodular() const;
  // Inverse over Q[d]; throws NonInvertibleAlpha unless unimodular.
  PolyMatrix inverse() const;
  // Integer power; negative powers need a unimodular matrix.
  PolyMatrix power(int n) const;
  int max_degree() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MultiPoly> data_;
};

}  // namespace conflab
