#include "conflab/cochain.hpp"

#include <algorithm>

#include "conflab/errors.hpp"
#include "conflab/linalg.hpp"
#include "conflab/parallel.hpp"
#include "conflab/system.hpp"

namespace conflab {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<MultiPoly> default_slots(std::size_t n) {
  std::vector<MultiPoly> s;
  for (std::size_t q = 0; q < n; ++q) s.push_back(xpoly(static_cast<unsigned>(q)));
  return s;
}

// Entry of gamma at a basis tuple with its slots renamed.
LambdaExpr entry_with_slots(const Cochain& gamma, const std::vector<std::size_t>& tuple,
                            const std::vector<MultiPoly>& slots) {
  const LambdaExpr& e = gamma.at(tuple);
  std::map<VarId, MultiPoly> subs;
  for (std::size_t q = 0; q < slots.size(); ++q) {
    const VarId v = VarId::slot(static_cast<unsigned>(q));
    if (!(slots[q] == MultiPoly::var(v))) subs.emplace(v, slots[q]);
  }
  return subs.empty() ? e : e.substitute(subs);
}

template <class Act>
Cochain differential_impl(const HomConformalAlgebra& A, std::size_t module_rank, const Cochain& gamma, Act&& act) {
  const std::size_t n = gamma.arity();
  const std::size_t r = A.rank();
  Cochain out(n + 1, r, module_rank);
  std::vector<LambdaExpr> alpha1(r);
  for (std::size_t i = 0; i < r; ++i) alpha1[i] = A.alpha_apply(A.basis_element(i));

  parallel_for(out.num_tuples(), [&](std::size_t flat) {
    const std::vector<std::size_t> a = out.tuple_of(flat);
    LambdaExpr acc(module_rank);
    for (std::size_t i = 0; i <= n; ++i) {
      std::vector<std::size_t> rest;
      std::vector<MultiPoly> slots;
      for (std::size_t q = 0; q <= n; ++q)
        if (q != i) {
          rest.push_back(a[q]);
          slots.push_back(xpoly(static_cast<unsigned>(q)));
        }
      const LambdaExpr value = entry_with_slots(gamma, rest, slots);
      if (value.is_zero()) continue;
      LambdaExpr term = act(a[i], value, xpoly(static_cast<unsigned>(i)));
      if (i % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const LambdaExpr br = A.structure(a[i], a[j]).substitute(VarId::slot(0), xpoly(static_cast<unsigned>(i)));
        if (br.is_zero()) continue;
        std::vector<LambdaExpr> args{br};
        std::vector<MultiPoly> slots{xpoly(static_cast<unsigned>(i)) + xpoly(static_cast<unsigned>(j))};
        for (std::size_t q = 0; q <= n; ++q)
          if (q != i && q != j) {
            args.push_back(alpha1[a[q]]);
            slots.push_back(xpoly(static_cast<unsigned>(q)));
          }
        LambdaExpr term = evaluate(gamma, args, slots);
        if ((i + j) % 2 == 0)
          acc += term;
        else
          acc -= term;
      }
    out.entry(flat) = std::move(acc);
  });
  return out;
}

// Splits every component into the part of total degree <= bound and the rest.
void split_degree(const std::vector<LambdaExpr>& parts, unsigned bound, std::vector<LambdaExpr>& low,
                  std::vector<LambdaExpr>& high) {
  low.clear();
  high.clear();
  for (const auto& p : parts) {
    LambdaExpr lo(p.rank()), hi(p.rank());
    for (std::size_t c = 0; c < p.rank(); ++c)
      for (const auto& [m, q] : p[c].terms()) {
        if (m.total_degree() <= bound)
          lo[c] += MultiPoly::term(q, m);
        else
          hi[c] += MultiPoly::term(q, m);
      }
    low.push_back(std::move(lo));
    high.push_back(std::move(hi));
  }
}

// dim of span{ sum_k v_k low_k : sum_k v_k high_k = 0 }.
std::size_t dim_low_part_of_span(const std::vector<std::vector<LambdaExpr>>& images, unsigned bound) {
  std::vector<std::vector<LambdaExpr>> lows(images.size()), highs(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) split_degree(images[k], bound, lows[k], highs[k]);
  Flattener hf;
  std::vector<SparseVec> hcols;
  for (const auto& h : highs) hcols.push_back(hf.flatten(h));
  const auto combos = nullspace(hcols);
  Flattener lf;
  std::vector<SparseVec> lcols;
  for (const auto& l : lows) lcols.push_back(lf.flatten(l));
  std::vector<SparseVec> vecs;
  for (const auto& c : combos) {
    SparseVec v;
    for (const auto& [k, q] : c) v = axpy(v, q, lcols[k]);
    vecs.push_back(std::move(v));
  }
  return rank_of(vecs);
}

}  // namespace

Cochain::Cochain(std::size_t arity, std::size_t algebra_rank, std::size_t module_rank)
    : arity_(arity),
      algebra_rank_(algebra_rank),
      module_rank_(module_rank),
      entries_(ipow(algebra_rank, arity), LambdaExpr(module_rank)) {}

Cochain Cochain::from_element(std::size_t algebra_rank, const LambdaExpr& v) {
  Cochain c(0, algebra_rank, v.rank());
  c.entries_[0] = v;
  return c;
}

std::size_t Cochain::index_of(const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != arity_) throw RankMismatch("tuple length does not match cochain arity");
  std::size_t idx = 0;
  for (std::size_t i : tuple) {
    if (i >= algebra_rank_) throw RankMismatch("basis index out of range");
    idx = idx * algebra_rank_ + i;
  }
  return idx;
}

std::vector<std::size_t> Cochain::tuple_of(std::size_t flat) const {
  std::vector<std::size_t> t(arity_);
  for (std::size_t q = arity_; q-- > 0;) {
    t[q] = flat % algebra_rank_;
    flat /= algebra_rank_;
  }
  return t;
}

bool Cochain::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const LambdaExpr& e) { return e.is_zero(); });
}

int Cochain::total_degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.total_degree());
  return d;
}

Cochain& Cochain::operator+=(const Cochain& o) {
  if (arity_ != o.arity_ || entries_.size() != o.entries_.size()) throw RankMismatch("adding cochains of different shape");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  if (arity_ != o.arity_ || entries_.size() != o.entries_.size())
    throw RankMismatch("subtracting cochains of different shape");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Cochain& Cochain::operator*=(const MultiPoly& p) {
  for (auto& e : entries_) e *= p;
  return *this;
}

Cochain Cochain::operator-() const {
  Cochain c = *this;
  for (auto& e : c.entries_) e = -e;
  return c;
}

LambdaExpr evaluate(const Cochain& gamma, const std::vector<LambdaExpr>& args, const std::vector<MultiPoly>& slots) {
  const std::size_t n = gamma.arity();
  if (args.size() != n || slots.size() != n) throw RankMismatch("cochain evaluated on the wrong number of arguments");
  if (n == 0) return gamma.entry(0);
  const std::size_t r = gamma.algebra_rank();
  std::vector<std::vector<MultiPoly>> sub(n, std::vector<MultiPoly>(r));
  for (std::size_t q = 0; q < n; ++q) {
    if (args[q].rank() != r) throw RankMismatch("cochain argument has wrong rank");
    const MultiPoly neg = -slots[q];
    for (std::size_t i = 0; i < r; ++i)
      if (!args[q][i].is_zero()) sub[q][i] = args[q][i].substitute(kPartial, neg);
  }
  std::map<VarId, MultiPoly> rename;
  for (std::size_t q = 0; q < n; ++q) {
    const VarId v = VarId::slot(static_cast<unsigned>(q));
    if (!(slots[q] == MultiPoly::var(v))) rename.emplace(v, slots[q]);
  }
  LambdaExpr result(gamma.module_rank());
  for (std::size_t flat = 0; flat < gamma.num_tuples(); ++flat) {
    const LambdaExpr& e = gamma.entry(flat);
    if (e.is_zero()) continue;
    const std::vector<std::size_t> t = gamma.tuple_of(flat);
    MultiPoly factor(1L);
    bool zero = false;
    for (std::size_t q = 0; q < n && !zero; ++q) {
      if (sub[q][t[q]].is_zero())
        zero = true;
      else
        factor *= sub[q][t[q]];
    }
    if (zero) continue;
    result += factor * (rename.empty() ? e : e.substitute(rename));
  }
  return result;
}

LambdaExpr evaluate(const Cochain& gamma, const std::vector<LambdaExpr>& args) {
  return evaluate(gamma, args, default_slots(gamma.arity()));
}

namespace {

// Residuals in a fixed layout: skew residuals for every (tuple, position)
// followed by commutativity residuals for every tuple.
std::vector<LambdaExpr> cochain_residuals(const HomConformalAlgebra& A, const ConformalModule& M,
                                          const Cochain& gamma) {
  const std::size_t n = gamma.arity();
  const std::size_t T = gamma.num_tuples();
  const std::size_t skew_per = n > 0 ? n - 1 : 0;
  std::vector<LambdaExpr> res(T * skew_per + T, LambdaExpr(gamma.module_rank()));
  std::vector<LambdaExpr> alpha1(A.rank());
  for (std::size_t i = 0; i < A.rank(); ++i) alpha1[i] = A.alpha_apply(A.basis_element(i));
  for (std::size_t flat = 0; flat < T; ++flat) {
    const std::vector<std::size_t> t = gamma.tuple_of(flat);
    for (std::size_t q = 0; q + 1 < n; ++q) {
      std::vector<std::size_t> s = t;
      std::swap(s[q], s[q + 1]);
      const LambdaExpr& other = gamma.at(s);
      const LambdaExpr& self = gamma.entry(flat);
      if (other.is_zero() && self.is_zero()) continue;
      const VarId a = VarId::slot(static_cast<unsigned>(q));
      const VarId b = VarId::slot(static_cast<unsigned>(q + 1));
      res[flat * skew_per + q] = other.substitute({{a, MultiPoly::var(b)}, {b, MultiPoly::var(a)}}) + self;
    }
  }
  for (std::size_t flat = 0; flat < T; ++flat) {
    const std::vector<std::size_t> t = gamma.tuple_of(flat);
    std::vector<LambdaExpr> args;
    for (std::size_t i : t) args.push_back(alpha1[i]);
    res[T * skew_per + flat] = M.beta_apply(gamma.entry(flat)) - evaluate(gamma, args);
  }
  return res;
}

}  // namespace

CochainReport check_cochain(const HomConformalAlgebra& A, const ConformalModule& M, const Cochain& gamma) {
  if (gamma.algebra_rank() != A.rank() || gamma.module_rank() != M.rank())
    throw ModuleMismatch("cochain does not match the algebra/module pair");
  CochainReport rep;
  const std::size_t n = gamma.arity();
  const std::size_t T = gamma.num_tuples();
  const std::size_t skew_per = n > 0 ? n - 1 : 0;
  const std::vector<LambdaExpr> res = cochain_residuals(A, M, gamma);
  for (std::size_t flat = 0; flat < T; ++flat)
    for (std::size_t q = 0; q < skew_per; ++q) {
      std::vector<std::size_t> idx = gamma.tuple_of(flat);
      idx.push_back(q);
      rep.skew.record(idx, res[flat * skew_per + q]);
    }
  for (std::size_t flat = 0; flat < T; ++flat) rep.commutativity.record(gamma.tuple_of(flat), res[T * skew_per + flat]);
  return rep;
}

Cochain differential(const HomConformalAlgebra& A, const ConformalModule& M, const Cochain& gamma) {
  if (gamma.algebra_rank() != A.rank() || gamma.module_rank() != M.rank() || M.algebra_rank() != A.rank())
    throw ModuleMismatch("cochain does not match the algebra/module pair");
  const int n = static_cast<int>(gamma.arity());
  std::vector<LambdaExpr> alpha_n(A.rank());
  const PolyMatrix an = A.alpha().power(n);
  for (std::size_t i = 0; i < A.rank(); ++i) alpha_n[i] = an.apply(A.basis_element(i));
  return differential_impl(A, M.rank(), gamma, [&](std::size_t i, const LambdaExpr& v, const MultiPoly& slot) {
    return module_act(M, alpha_n[i], v, slot);
  });
}

Cochain differential_s(const HomConformalAlgebra& A, const Cochain& gamma, int s) {
  if (gamma.algebra_rank() != A.rank() || gamma.module_rank() != A.rank())
    throw ModuleMismatch("cochain does not take values in the alpha^s-adjoint module");
  const int power = static_cast<int>(gamma.arity()) + s;
  if (power < 0 && !A.alpha().is_unimodular()) throw NonInvertibleAlpha();
  const PolyMatrix ap = A.alpha().power(power);
  std::vector<LambdaExpr> images(A.rank());
  for (std::size_t i = 0; i < A.rank(); ++i) images[i] = ap.apply(A.basis_element(i));
  return differential_impl(A, A.rank(), gamma, [&](std::size_t i, const LambdaExpr& v, const MultiPoly& slot) {
    return extend_bracket(A, images[i], v, slot);
  });
}

Cochain partial_action(const Cochain& gamma) {
  MultiPoly factor = dpoly();
  for (std::size_t q = 0; q < gamma.arity(); ++q) factor += xpoly(static_cast<unsigned>(q));
  Cochain out = gamma;
  out *= factor;
  return out;
}

std::vector<Cochain> cochain_space_basis(const HomConformalAlgebra& A, const ConformalModule& M, std::size_t n,
                                         unsigned degree_bound) {
  std::vector<VarId> vars{kPartial};
  for (std::size_t q = 0; q < n; ++q) vars.push_back(VarId::slot(static_cast<unsigned>(q)));
  const std::vector<Monomial> monos = monomials_up_to(vars, degree_bound);
  const Cochain zero(n, A.rank(), M.rank());
  const std::size_t m = M.rank();
  const std::size_t per_tuple = m * monos.size();
  const std::size_t unknowns = zero.num_tuples() * per_tuple;

  auto unit = [&](std::size_t u) {
    Cochain c = zero;
    const std::size_t flat = u / per_tuple;
    const std::size_t comp = (u % per_tuple) / monos.size();
    c.entry(flat)[comp] = MultiPoly::term(Rational(1), monos[u % monos.size()]);
    return c;
  };

  const auto kernel =
      solve_homogeneous(unknowns, [&](std::size_t u) { return cochain_residuals(A, M, unit(u)); });
  std::vector<Cochain> out;
  out.reserve(kernel.size());
  for (const auto& v : kernel) {
    Cochain c = zero;
    for (const auto& [u, q] : v) {
      const std::size_t flat = u / per_tuple;
      const std::size_t comp = (u % per_tuple) / monos.size();
      c.entry(flat)[comp] += MultiPoly::term(q, monos[u % monos.size()]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Cochain random_cochain(const std::vector<Cochain>& basis, std::mt19937_64& rng, std::size_t arity,
                       std::size_t algebra_rank, std::size_t module_rank) {
  std::uniform_int_distribution<int> coord(-3, 3);
  Cochain c(arity, algebra_rank, module_rank);
  for (const auto& b : basis) {
    const int k = coord(rng);
    if (k == 0) continue;
    Cochain term = b;
    term *= MultiPoly(static_cast<long>(k));
    c += term;
  }
  return c;
}

namespace {

std::vector<std::vector<LambdaExpr>> differentials_of(const HomConformalAlgebra& A, const ConformalModule& M,
                                                      const std::vector<Cochain>& cs) {
  std::vector<std::vector<LambdaExpr>> out(cs.size());
  for (std::size_t k = 0; k < cs.size(); ++k) out[k] = differential(A, M, cs[k]).entries();
  return out;
}

int max_degree(const std::vector<std::vector<LambdaExpr>>& images) {
  int d = -1;
  for (const auto& img : images)
    for (const auto& e : img) d = std::max(d, e.total_degree());
  return d;
}

}  // namespace

CohomologyDims cohomology_dims(const HomConformalAlgebra& A, const ConformalModule& M, std::size_t n,
                               unsigned degree_bound, bool reduced) {
  CohomologyDims out;
  out.n = n;
  out.degree_bound = degree_bound;
  out.reduced = reduced;
  const std::vector<Cochain> C = cochain_space_basis(A, M, n, degree_bound);
  out.dim_cochains = C.size();
  const auto dC = differentials_of(A, M, C);

  if (!reduced) {
    out.truncation = "cochains of total degree <= " + std::to_string(degree_bound) +
                     "; image counts d(C^{n-1}) of the same bound that lands in the slice";
    Flattener f;
    std::vector<SparseVec> cols;
    for (const auto& img : dC) cols.push_back(f.flatten(img));
    out.dim_kernel = nullspace(cols).size();
    if (n > 0) {
      const std::vector<Cochain> B = cochain_space_basis(A, M, n - 1, degree_bound);
      out.dim_image_from_below = dim_low_part_of_span(differentials_of(A, M, B), degree_bound);
    }
    out.dim_h = out.dim_kernel - out.dim_image_from_below;
    return out;
  }

  out.truncation = "reduced complex: slice of total degree <= " + std::to_string(degree_bound) +
                   " modulo d-multiples (d_M + sum of slots) of the degree <= " +
                   std::to_string(static_cast<int>(degree_bound) - 1) +
                   " slice; d-exactness tested against cochains of the degree needed to match";
  const std::size_t dim_p = degree_bound == 0 ? 0 : cochain_space_basis(A, M, n, degree_bound - 1).size();

  // Kernel: gamma with d(gamma) = partial(eta) for some (n+1)-cochain eta.
  const int w = max_degree(dC);
  std::size_t dim_k = C.size();
  if (w >= 0) {
    const std::vector<Cochain> E =
        w >= 1 ? cochain_space_basis(A, M, n + 1, static_cast<unsigned>(w - 1)) : std::vector<Cochain>{};
    const auto ker = solve_homogeneous(C.size() + E.size(), [&](std::size_t u) {
      if (u < C.size()) return dC[u];
      return (-partial_action(E[u - C.size()])).entries();
    });
    Flattener f;
    std::vector<SparseVec> proj;
    for (const auto& v : ker) {
      SparseVec p;
      for (const auto& [u, q] : v)
        if (u < C.size()) p.emplace(u, q);
      proj.push_back(std::move(p));
    }
    dim_k = rank_of(proj);
  }
  out.dim_kernel = dim_k - dim_p;

  if (n > 0) {
    const std::vector<Cochain> Z = cochain_space_basis(A, M, n - 1, degree_bound);
    const auto dZ = differentials_of(A, M, Z);
    const int wz = max_degree(dZ);
    const unsigned eta_bound = static_cast<unsigned>(std::max<int>(wz - 1, static_cast<int>(degree_bound) - 1));
    std::vector<std::vector<LambdaExpr>> images = dZ;
    if (degree_bound > 0 || wz >= 1)
      for (const auto& e : cochain_space_basis(A, M, n, eta_bound)) images.push_back(partial_action(e).entries());
    out.dim_image_from_below = dim_low_part_of_span(images, degree_bound) - dim_p;
  }
  out.dim_h = out.dim_kernel - out.dim_image_from_below;
  return out;
}

}  // namespace conflab
