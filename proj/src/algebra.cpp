#include "conflab/algebra.hpp"

#include <array>

#include "conflab/errors.hpp"
#include "conflab/parallel.hpp"
#include "conflab/system.hpp"

namespace conflab {

namespace {

void require_square_table(const StructureTable& t, std::size_t rows, std::size_t cols, std::size_t out_rank,
                          const char* what) {
  if (t.size() != rows) throw RankMismatch(std::string(what) + ": wrong number of table rows");
  for (const auto& row : t) {
    if (row.size() != cols) throw RankMismatch(std::string(what) + ": wrong number of table columns");
    for (const auto& e : row)
      if (e.rank() != out_rank) throw RankMismatch(std::string(what) + ": table entry has wrong rank");
  }
}

const MultiPoly& slot0_poly() {
  static const MultiPoly x0 = xpoly(0);
  return x0;
}

}  // namespace

HomConformalAlgebra::HomConformalAlgebra(std::string name, std::vector<std::string> basis_names,
                                         StructureTable bracket, PolyMatrix alpha)
    : name_(std::move(name)),
      basis_names_(std::move(basis_names)),
      bracket_(std::move(bracket)),
      alpha_(std::move(alpha)) {
  const std::size_t r = basis_names_.size();
  require_square_table(bracket_, r, r, r, "algebra");
  if (alpha_.rows() != r || alpha_.cols() != r) throw RankMismatch("alpha must be rank x rank");
}

HomConformalAlgebra HomConformalAlgebra::abelian(std::string name, std::vector<std::string> basis_names,
                                                 PolyMatrix alpha) {
  const std::size_t r = basis_names.size();
  StructureTable t(r, std::vector<LambdaExpr>(r, LambdaExpr(r)));
  return HomConformalAlgebra(std::move(name), std::move(basis_names), std::move(t), std::move(alpha));
}

LambdaExpr HomConformalAlgebra::alpha_apply(const LambdaExpr& x, int power) const {
  if (power == 1) return alpha_.apply(x);
  if (power == 0) return x;
  return alpha_.power(power).apply(x);
}

HomConformalAlgebra HomConformalAlgebra::with_structure(std::size_t i, std::size_t j, LambdaExpr value) const {
  HomConformalAlgebra copy = *this;
  if (value.rank() != rank()) throw RankMismatch("structure constant has wrong rank");
  copy.bracket_.at(i).at(j) = std::move(value);
  return copy;
}

HomConformalAlgebra HomConformalAlgebra::with_name(std::string name) const {
  HomConformalAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

HomConformalAlgebra HomConformalAlgebra::with_alpha(PolyMatrix alpha) const {
  return HomConformalAlgebra(name_, basis_names_, bracket_, std::move(alpha));
}

ConformalModule::ConformalModule(std::string name, std::vector<std::string> basis_names, StructureTable action,
                                 PolyMatrix beta)
    : name_(std::move(name)),
      basis_names_(std::move(basis_names)),
      action_(std::move(action)),
      beta_(std::move(beta)) {
  const std::size_t m = basis_names_.size();
  const std::size_t r = action_.size();
  require_square_table(action_, r, m, m, "module");
  if (beta_.rows() != m || beta_.cols() != m) throw RankMismatch("beta must be rank x rank");
}

LambdaExpr ConformalModule::beta_apply(const LambdaExpr& v, int power) const {
  if (power == 1) return beta_.apply(v);
  if (power == 0) return v;
  return beta_.power(power).apply(v);
}

LambdaExpr sesquilinear_extend(const StructureTable& table, std::size_t out_rank, const LambdaExpr& x,
                               const LambdaExpr& y, const MultiPoly& slot) {
  if (x.rank() != table.size()) throw RankMismatch("left argument rank does not match the table");
  LambdaExpr result(out_rank);
  const MultiPoly neg_slot = -slot;
  const MultiPoly shifted = dpoly() + slot;
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (x[i].is_zero()) continue;
    const MultiPoly left = x[i].substitute(kPartial, neg_slot);
    if (y.rank() != table[i].size()) throw RankMismatch("right argument rank does not match the table");
    for (std::size_t j = 0; j < y.rank(); ++j) {
      if (y[j].is_zero()) continue;
      const LambdaExpr& entry = table[i][j];
      if (entry.is_zero()) continue;
      const MultiPoly factor = left * y[j].substitute(kPartial, shifted);
      const bool plain_slot = slot == slot0_poly();
      for (std::size_t k = 0; k < out_rank; ++k) {
        if (entry[k].is_zero()) continue;
        const MultiPoly c = plain_slot ? entry[k] : entry[k].substitute(VarId::slot(0), slot);
        result[k] += factor * c;
      }
    }
  }
  return result;
}

LambdaExpr extend_bracket(const HomConformalAlgebra& A, const LambdaExpr& x, const LambdaExpr& y,
                          const MultiPoly& slot) {
  if (x.rank() != A.rank() || y.rank() != A.rank()) throw RankMismatch("bracket arguments must have algebra rank");
  return sesquilinear_extend(A.table(), A.rank(), x, y, slot);
}

LambdaExpr module_act(const ConformalModule& M, const LambdaExpr& a, const LambdaExpr& v, const MultiPoly& slot) {
  if (a.rank() != M.algebra_rank() || v.rank() != M.rank()) throw RankMismatch("module action rank mismatch");
  return sesquilinear_extend(M.table(), M.rank(), a, v, slot);
}

LambdaExpr substitute_skew(const HomConformalAlgebra& A, std::size_t i, std::size_t j, VarId lambda) {
  const VarId mu = VarId::slot(lambda.is_slot() ? lambda.slot_index() + 1 : 1);
  const LambdaExpr in_mu = A.structure(j, i).substitute(VarId::slot(0), MultiPoly::var(mu));
  return -in_mu.substitute(mu, -dpoly() - MultiPoly::var(lambda));
}

LambdaExpr hom_jacobi_residual(const HomConformalAlgebra& A, std::size_t i, std::size_t j, std::size_t k) {
  const MultiPoly lam = xpoly(0);
  const MultiPoly mu = xpoly(1);
  const LambdaExpr ai = A.alpha_apply(A.basis_element(i));
  const LambdaExpr aj = A.alpha_apply(A.basis_element(j));
  const LambdaExpr ak = A.alpha_apply(A.basis_element(k));
  // [alpha(a)_l [b_m c]]
  const LambdaExpr bc = A.structure(j, k).substitute(VarId::slot(0), mu);
  LambdaExpr lhs = extend_bracket(A, ai, bc, lam);
  // [[a_l b]_{l+m} alpha(c)]
  const LambdaExpr ab = A.structure(i, j);
  lhs -= extend_bracket(A, ab, ak, lam + mu);
  // [alpha(b)_m [a_l c]]
  const LambdaExpr ac = A.structure(i, k);
  lhs -= extend_bracket(A, aj, ac, mu);
  return lhs;
}

AlgebraReport check_algebra(const HomConformalAlgebra& A) {
  AlgebraReport rep;
  const std::size_t r = A.rank();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      rep.skew.record({i, j}, A.structure(i, j) - substitute_skew(A, i, j, VarId::slot(0)));

  std::vector<LambdaExpr> jac(r * r * r);
  parallel_for(jac.size(), [&](std::size_t idx) {
    jac[idx] = hom_jacobi_residual(A, idx / (r * r), (idx / r) % r, idx % r);
  });
  for (std::size_t idx = 0; idx < jac.size(); ++idx)
    rep.hom_jacobi.record({idx / (r * r), (idx / r) % r, idx % r}, jac[idx]);

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const LambdaExpr lhs = A.alpha_apply(A.structure(i, j));
      const LambdaExpr rhs =
          extend_bracket(A, A.alpha_apply(A.basis_element(i)), A.alpha_apply(A.basis_element(j)), VarId::slot(0));
      rep.multiplicative.record({i, j}, lhs - rhs);
    }

  rep.alpha_determinant = A.alpha().determinant();
  rep.regular = rep.alpha_determinant.is_constant() && !rep.alpha_determinant.is_zero();
  return rep;
}

ModuleReport check_module(const HomConformalAlgebra& A, const ConformalModule& M) {
  if (M.algebra_rank() != A.rank()) throw RankMismatch("module is over an algebra of different rank");
  ModuleReport rep;
  const std::size_t r = A.rank();
  const std::size_t m = M.rank();
  const MultiPoly lam = xpoly(0);
  const MultiPoly mu = xpoly(1);
  const MultiPoly d = dpoly();

  std::vector<LambdaExpr> compatibility(r * r * m);
  parallel_for(compatibility.size(), [&](std::size_t idx) {
    const std::size_t i = idx / (r * m);
    const std::size_t j = (idx / m) % r;
    const std::size_t v = idx % m;
    const LambdaExpr ai = A.alpha_apply(A.basis_element(i));
    const LambdaExpr aj = A.alpha_apply(A.basis_element(j));
    const LambdaExpr fv = LambdaExpr::basis(m, v);
    LambdaExpr res = module_act(M, ai, M.action(j, v).substitute(VarId::slot(0), mu), lam);
    res -= module_act(M, aj, M.action(i, v), mu);
    res -= module_act(M, A.structure(i, j), M.beta_apply(fv), lam + mu);
    compatibility[idx] = std::move(res);
  });
  for (std::size_t idx = 0; idx < compatibility.size(); ++idx)
    rep.compatibility.record({idx / (r * m), (idx / m) % r, idx % m}, compatibility[idx]);

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t v = 0; v < m; ++v) {
      const LambdaExpr& base = M.action(i, v);
      const LambdaExpr fv = LambdaExpr::basis(m, v);
      // (d a)_l v = -l a_l v and a_l (d v) = (d + l) a_l v
      rep.sesquilinear.record({i, v, 0}, module_act(M, A.basis_element(i, d), fv, lam) + lam * base);
      rep.sesquilinear.record({i, v, 1}, module_act(M, A.basis_element(i), LambdaExpr::basis(m, v, d), lam) - (d + lam) * base);
      // beta(a_l v) = alpha(a)_l beta(v)
      rep.twist.record({i, v, 0},
                     M.beta_apply(base) - module_act(M, A.alpha_apply(A.basis_element(i)), M.beta_apply(fv), lam));
    }
  for (std::size_t v = 0; v < m; ++v) {
    const LambdaExpr dv = LambdaExpr::basis(m, v, d);
    rep.twist.record({v, 1}, M.beta_apply(dv) - d * M.beta_apply(LambdaExpr::basis(m, v)));
  }
  return rep;
}

ConformalModule adjoint_module(const HomConformalAlgebra& A) {
  return ConformalModule(A.name() + "-adjoint", A.basis_names(), A.table(), A.alpha());
}

ConformalModule alpha_power_adjoint(const HomConformalAlgebra& A, int s) {
  if (s == 0) return adjoint_module(A);
  if (s < 0 && !A.alpha().is_unimodular()) throw NonInvertibleAlpha();
  const std::size_t r = A.rank();
  const PolyMatrix as = A.alpha().power(s);
  StructureTable act(r, std::vector<LambdaExpr>(r));
  for (std::size_t i = 0; i < r; ++i) {
    const LambdaExpr ai = as.apply(A.basis_element(i));
    for (std::size_t j = 0; j < r; ++j) act[i][j] = extend_bracket(A, ai, A.basis_element(j), VarId::slot(0));
  }
  return ConformalModule(A.name() + "-alpha^" + std::to_string(s), A.basis_names(), std::move(act), A.alpha());
}

HomConformalAlgebra semidirect_sum(const HomConformalAlgebra& A, const ConformalModule& M) {
  const AlgebraReport ar = check_algebra(A);
  if (!ar.passes()) throw PreconditionFailed("semidirect sum needs a multiplicative Hom-Lie conformal algebra");
  if (!check_module(A, M).passes()) throw PreconditionFailed("semidirect sum needs a valid module");

  const std::size_t r = A.rank();
  const std::size_t m = M.rank();
  const std::size_t n = r + m;
  auto embed = [n](const LambdaExpr& x, std::size_t offset) {
    LambdaExpr out(n);
    for (std::size_t k = 0; k < x.rank(); ++k) out[offset + k] = x[k];
    return out;
  };
  const MultiPoly reflected = -dpoly() - xpoly(0);
  StructureTable t(n, std::vector<LambdaExpr>(n, LambdaExpr(n)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) t[i][j] = embed(A.structure(i, j), 0);
    for (std::size_t v = 0; v < m; ++v) {
      t[i][r + v] = embed(M.action(i, v), r);
      t[r + v][i] = -embed(M.action(i, v).substitute(VarId::slot(0), reflected), r);
    }
  }
  std::vector<std::string> names = A.basis_names();
  for (const auto& s : M.basis_names()) names.push_back(s + "'");
  return HomConformalAlgebra(A.name() + "+" + M.name(), std::move(names), std::move(t),
                             PolyMatrix::block_diagonal(A.alpha(), M.beta()));
}

std::vector<LambdaExpr> n_products(const HomConformalAlgebra& A, const LambdaExpr& x, const LambdaExpr& y,
                                   unsigned N) {
  const LambdaExpr br = extend_bracket(A, x, y, VarId::slot(0));
  std::vector<LambdaExpr> out;
  Rational factorial = 1;
  for (unsigned n = 0; n <= N; ++n) {
    if (n > 0) factorial *= n;
    LambdaExpr c = br.coefficient_of(VarId::slot(0), n);
    c *= MultiPoly(factorial);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LambdaExpr> element_slice_basis(std::size_t rank, unsigned degree_bound) {
  std::vector<LambdaExpr> out;
  for (std::size_t i = 0; i < rank; ++i)
    for (unsigned a = 0; a <= degree_bound; ++a) out.push_back(LambdaExpr::basis(rank, i, dpoly().pow(a)));
  return out;
}

std::vector<LambdaExpr> center(const HomConformalAlgebra& A, unsigned degree_bound) {
  const std::vector<LambdaExpr> slice = element_slice_basis(A.rank(), degree_bound);
  const auto kernel = solve_homogeneous(slice.size(), [&](std::size_t u) {
    std::vector<LambdaExpr> parts;
    for (std::size_t j = 0; j < A.rank(); ++j)
      parts.push_back(extend_bracket(A, slice[u], A.basis_element(j), VarId::slot(0)));
    return parts;
  });
  std::vector<LambdaExpr> out;
  for (const auto& v : kernel) out.push_back(combine(slice, v, LambdaExpr(A.rank())));
  return out;
}

}  // namespace conflab
