#include "conflab/element.hpp"

#include <algorithm>

#include "conflab/errors.hpp"

namespace conflab {

LambdaExpr LambdaExpr::basis(std::size_t rank, std::size_t i, const MultiPoly& coeff) {
  LambdaExpr e(rank);
  e[i] = coeff;
  return e;
}

bool LambdaExpr::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

int LambdaExpr::total_degree() const {
  int d = -1;
  for (const auto& p : coeffs_) d = std::max(d, p.total_degree());
  return d;
}

int LambdaExpr::degree_in(VarId v) const {
  int d = -1;
  for (const auto& p : coeffs_) d = std::max(d, p.degree_in(v));
  return d;
}

int LambdaExpr::max_slot() const {
  int s = -1;
  for (const auto& p : coeffs_) s = std::max(s, p.max_slot());
  return s;
}

bool LambdaExpr::contains(VarId v) const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [v](const MultiPoly& p) { return p.contains(v); });
}

LambdaExpr& LambdaExpr::operator+=(const LambdaExpr& o) {
  if (coeffs_.size() != o.coeffs_.size()) throw RankMismatch("adding elements of different rank");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

LambdaExpr& LambdaExpr::operator-=(const LambdaExpr& o) {
  if (coeffs_.size() != o.coeffs_.size()) throw RankMismatch("subtracting elements of different rank");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

LambdaExpr& LambdaExpr::operator*=(const MultiPoly& p) {
  for (auto& c : coeffs_) c *= p;
  return *this;
}

LambdaExpr LambdaExpr::operator-() const {
  LambdaExpr r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LambdaExpr LambdaExpr::substitute(VarId v, const MultiPoly& r) const {
  return substitute(std::map<VarId, MultiPoly>{{v, r}});
}

LambdaExpr LambdaExpr::substitute(const std::map<VarId, MultiPoly>& subs) const {
  LambdaExpr r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = coeffs_[i].substitute(subs);
  return r;
}

LambdaExpr LambdaExpr::coefficient_of(VarId v, unsigned k) const {
  LambdaExpr r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = coeffs_[i].coefficient_of(v, k);
  return r;
}

std::string LambdaExpr::to_string(const std::vector<std::string>& names) const {
  std::string out;
  for (std::size_t i = 0; i < rank(); ++i) {
    const MultiPoly& c = coeffs_[i];
    if (c.is_zero()) continue;
    const std::string& name = i < names.size() ? names[i] : "e" + std::to_string(i + 1);
    bool negative = false;
    std::string body;
    if (c.size() == 1) {
      std::string s = c.to_string();
      negative = s.front() == '-';
      if (negative) s.erase(0, 1);
      body = s == "1" ? name : s + "*" + name;
    } else {
      body = "(" + c.to_string() + ")*" + name;
    }
    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = MultiPoly(1L);
  return m;
}

PolyMatrix PolyMatrix::diagonal(const std::vector<MultiPoly>& d) {
  PolyMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

PolyMatrix PolyMatrix::block_diagonal(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw RankMismatch("matrix product dimension mismatch");
  PolyMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const MultiPoly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

LambdaExpr PolyMatrix::apply(const LambdaExpr& x) const {
  if (x.rank() != cols_) throw RankMismatch("matrix/vector dimension mismatch");
  LambdaExpr r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !x[j].is_zero()) r[i] += (*this)(i, j) * x[j];
  return r;
}

namespace {

MultiPoly det_rec(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  const std::size_t n = m.rows();
  if (row == n) return MultiPoly(1L);
  MultiPoly acc;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    const MultiPoly& entry = m(row, c);
    if (!entry.is_zero()) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      MultiPoly minor = det_rec(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      MultiPoly term = entry * minor;
      if (sign > 0)
        acc += term;
      else
        acc -= term;
    }
    sign = -sign;
  }
  return acc;
}

PolyMatrix minor_matrix(const PolyMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  PolyMatrix r(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, ri = 0; i < m.rows(); ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, rj = 0; j < m.cols(); ++j) {
      if (j == skip_col) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

}  // namespace

MultiPoly PolyMatrix::determinant() const {
  if (rows_ != cols_) throw RankMismatch("determinant of a non-square matrix");
  std::vector<std::size_t> cols(cols_);
  for (std::size_t j = 0; j < cols_; ++j) cols[j] = j;
  return det_rec(*this, cols, 0);
}

PolyMatrix PolyMatrix::adjugate() const {
  if (rows_ != cols_) throw RankMismatch("adjugate of a non-square matrix");
  const std::size_t n = rows_;
  PolyMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = MultiPoly(1L);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly c = minor_matrix(*this, i, j).determinant();
      adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

bool PolyMatrix::is_unimodular() const {
  if (rows_ != cols_) return false;
  const MultiPoly det = determinant();
  return det.is_constant() && !det.is_zero();
}

PolyMatrix PolyMatrix::inverse() const {
  if (rows_ != cols_) throw NonInvertibleAlpha();
  const MultiPoly det = determinant();
  if (!det.is_constant() || det.is_zero()) throw NonInvertibleAlpha();
  PolyMatrix inv = adjugate();
  const Rational scale = 1 / det.constant_term();
  for (auto& e : inv.data_) e *= scale;
  return inv;
}

PolyMatrix PolyMatrix::power(int n) const {
  if (n < 0) return inverse().power(-n);
  PolyMatrix result = identity(rows_);
  PolyMatrix base = *this;
  auto e = static_cast<unsigned>(n);
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

int PolyMatrix::max_degree() const {
  int d = -1;
  for (const auto& e : data_) d = std::max(d, e.total_degree());
  return d;
}

}  // namespace conflab
