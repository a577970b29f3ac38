#!/usr/bin/env python3
"""Independent sympy reference computations.

Writes tests/unit/oracle_values.hpp. Everything here is computed from the
defining formulas with sympy; nothing is read from the C++ library.

    python3 tests/oracles/oracle.py
"""

import itertools
import pathlib
import sys

import sympy as sp

d = sp.Symbol("d")
t = sp.Symbol("t")
X = sp.symbols("x0:8")


class Algebra:
    def __init__(self, names, table, alpha):
        self.names = names
        self.r = len(names)
        self.table = {k: [sp.sympify(e) for e in v] for k, v in table.items()}  # (i, j) -> exprs in d, x0
        self.alpha = alpha  # sympy Matrix, column j = alpha(e_j)

    def c(self, i, j):
        return self.table.get((i, j), zero(self.r))


def zero(r):
    return [sp.Integer(0)] * r


def basis(r, i, coeff=1):
    v = zero(r)
    v[i] = sp.sympify(coeff)
    return v


def add(u, v):
    return [sp.expand(a + b) for a, b in zip(u, v)]


def sub(u, v):
    return [sp.expand(a - b) for a, b in zip(u, v)]


def scale(p, u):
    return [sp.expand(p * a) for a in u]


def is_zero(u):
    return all(sp.expand(a) == 0 for a in u)


def bracket(A, x, y, s):
    """[x_s y] for elements with coefficients in d and passive slot symbols."""
    out = zero(A.r)
    for i in range(A.r):
        if x[i] == 0:
            continue
        xi = x[i].subs(d, -s)
        for j in range(A.r):
            if y[j] == 0:
                continue
            yj = y[j].subs(d, d + s)
            cij = [e.subs(X[0], s) for e in A.c(i, j)]
            out = add(out, scale(xi * yj, cij))
    return out


def alpha_apply(A, x, power=1):
    M = A.alpha ** power if power >= 0 else A.alpha.inv() ** (-power)
    return [sp.expand(e) for e in (M * sp.Matrix(x))]


def jacobi_residual(A, i, j, k):
    lam, mu = X[0], X[1]
    a, b, c = basis(A.r, i), basis(A.r, j), basis(A.r, k)
    aa, ab, ac = alpha_apply(A, a), alpha_apply(A, b), alpha_apply(A, c)
    lhs = bracket(A, aa, bracket(A, b, c, mu), lam)
    r1 = bracket(A, bracket(A, a, b, lam), ac, lam + mu)
    r2 = bracket(A, ab, bracket(A, a, c, lam), mu)
    return sub(sub(lhs, r1), r2)


def skew_residual(A, i, j):
    lam = X[0]
    rhs = [sp.expand(-e.subs(X[0], -d - lam)) for e in A.c(j, i)]
    return sub(A.c(i, j), rhs)


def multiplicative_residual(A, i, j):
    lhs = alpha_apply(A, A.c(i, j))
    rhs = bracket(A, alpha_apply(A, basis(A.r, i)), alpha_apply(A, basis(A.r, j)), X[0])
    return sub(lhs, rhs)


def algebra_ok(A):
    rng = range(A.r)
    return (all(is_zero(skew_residual(A, i, j)) for i in rng for j in rng)
            and all(is_zero(jacobi_residual(A, i, j, k)) for i in rng for j in rng for k in rng)
            and all(is_zero(multiplicative_residual(A, i, j)) for i in rng for j in rng))


def monomials(vars_, deg):
    out = []
    for total in range(deg + 1):
        for exps in itertools.product(range(total + 1), repeat=len(vars_)):
            if sum(exps) == total:
                out.append(sp.Mul(*[v ** e for v, e in zip(vars_, exps)]))
    return out


def coeff_equations(exprs, vars_):
    eqs = []
    for e in exprs:
        e = sp.expand(e)
        if e == 0:
            continue
        eqs.extend(sp.Poly(e, *vars_).coeffs())
    return eqs


def nullspace_dim(eqs, unknowns):
    if not eqs:
        return len(unknowns), [sp.Matrix([1 if u == v else 0 for u in unknowns]) for v in unknowns]
    M = sp.Matrix([[sp.diff(e, u) for u in unknowns] for e in eqs])
    ns = M.nullspace()
    return len(ns), ns


ALL_VARS = [d, t] + list(X)


# ---------- cochains ----------

def cochain_unknowns(A, m_rank, n, D):
    slots = list(X[:n])
    monos = monomials([d] + slots, D)
    unknowns, entries = [], {}
    for tup in itertools.product(range(A.r), repeat=n):
        comps = []
        for c in range(m_rank):
            expr = 0
            for mono in monos:
                u = sp.Symbol("u%d" % len(unknowns))
                unknowns.append(u)
                expr += u * mono
            comps.append(expr)
        entries[tup] = comps
    return unknowns, entries


def eval_cochain(entries, n, args, slots):
    """gamma_{slots}(args): antilinear in every argument."""
    m_rank = len(next(iter(entries.values())))
    out = zero(m_rank)
    r = len(args[0]) if args else 0
    if n == 0:
        return [sp.expand(e) for e in entries[()]]
    for tup in itertools.product(range(r), repeat=n):
        coeff = 1
        for q, i in enumerate(tup):
            a = args[q][i]
            if a == 0:
                coeff = 0
                break
            coeff *= a.subs(d, -slots[q])
        if coeff == 0:
            continue
        ent = [e.subs({X[q]: slots[q] for q in range(n)}, simultaneous=True) for e in entries[tup]]
        out = add(out, scale(coeff, ent))
    return out


def cochain_conditions(A, M, n, entries):
    """Skew-symmetry and beta o gamma = gamma o alpha^{x n}."""
    eqs = []
    for tup in itertools.product(range(A.r), repeat=n):
        for q in range(n - 1):
            perm = list(range(n))
            perm[q], perm[q + 1] = perm[q + 1], perm[q]
            swapped = tuple(tup[p] for p in perm)
            lhs = [e.subs({X[q]: X[q + 1], X[q + 1]: X[q]}, simultaneous=True) for e in entries[swapped]]
            eqs += coeff_equations(add(lhs, entries[tup]), ALL_VARS)
        args = [alpha_apply(A, basis(A.r, i)) for i in tup]
        rhs = eval_cochain(entries, n, args, list(X[:n])) if n else entries[()]
        lhs = [sp.expand(e) for e in (M["beta"] * sp.Matrix(entries[tup]))]
        eqs += coeff_equations(sub(lhs, rhs), ALL_VARS)
    return eqs


def module_act(A, M, a, v, s):
    out = zero(M["rank"])
    for i in range(A.r):
        if a[i] == 0:
            continue
        ai = a[i].subs(d, -s)
        for u in range(M["rank"]):
            if v[u] == 0:
                continue
            vu = v[u].subs(d, d + s)
            act = [e.subs(X[0], s) for e in M["action"].get((i, u), zero(M["rank"]))]
            out = add(out, scale(ai * vu, act))
    return out


def differential(A, M, n, entries):
    """(d gamma) as entries over (n+1)-tuples in slots x0..xn."""
    out = {}
    slots = list(X[: n + 1])
    for tup in itertools.product(range(A.r), repeat=n + 1):
        total = zero(M["rank"])
        for i in range(n + 1):
            rest = [basis(A.r, tup[k]) for k in range(n + 1) if k != i]
            rest_slots = [slots[k] for k in range(n + 1) if k != i]
            val = eval_cochain(entries, n, rest, rest_slots) if n else [sp.expand(e) for e in entries[()]]
            ai = alpha_apply(A, basis(A.r, tup[i]), n)
            term = module_act(A, M, ai, val, slots[i])
            total = add(total, scale((-1) ** i, term))
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                br = [e.subs(X[0], slots[i]) for e in A.c(tup[i], tup[j])]
                rest = [alpha_apply(A, basis(A.r, tup[k])) for k in range(n + 1) if k not in (i, j)]
                rest_slots = [slots[k] for k in range(n + 1) if k not in (i, j)]
                val = eval_cochain(entries, n, [br] + rest, [slots[i] + slots[j]] + rest_slots)
                total = add(total, scale((-1) ** (i + j), val))
        out[tup] = total
    return out


def total_degree(e):
    e = sp.expand(e)
    if e == 0:
        return -1
    return sp.Poly(e, *ALL_VARS).total_degree()


def cohomology(A, M, n, D):
    """dim C^n_D, dim ker d, dim d(C^{n-1}_D) restricted to degree <= D."""
    unk, ent = cochain_unknowns(A, M["rank"], n, D)
    dim_c, ns = nullspace_dim(cochain_conditions(A, M, n, ent), unk)
    basis_c = [{k: [sp.expand(e.subs(dict(zip(unk, v)))) for e in comps] for k, comps in ent.items()} for v in ns]
    # kernel of d on the slice
    coeffs = sp.symbols("k0:%d" % max(1, dim_c))[:dim_c]
    gen = {k: [sp.expand(sum(c * b[k][q] for c, b in zip(coeffs, basis_c))) for q in range(M["rank"])] for k in ent}
    dg = differential(A, M, n, gen) if dim_c else {}
    eqs = []
    for comps in dg.values():
        eqs += coeff_equations(comps, ALL_VARS)
    dim_k, _ = nullspace_dim(eqs, list(coeffs)) if dim_c else (0, [])
    # image from C^{n-1}_D intersected with degree <= D
    dim_img = 0
    if n > 0:
        unk0, ent0 = cochain_unknowns(A, M["rank"], n - 1, D)
        dim0, ns0 = nullspace_dim(cochain_conditions(A, M, n - 1, ent0), unk0)
        imgs = []
        for v in ns0:
            g = {k: [sp.expand(e.subs(dict(zip(unk0, v)))) for e in comps] for k, comps in ent0.items()}
            imgs.append(differential(A, M, n - 1, g))
        z = sp.symbols("z0:%d" % max(1, dim0))[:dim0]
        combo_high, combo_all = [], []
        for k in (imgs[0].keys() if imgs else []):
            for q in range(M["rank"]):
                e = sp.expand(sum(c * im[k][q] for c, im in zip(z, imgs)))
                if e == 0:
                    continue
                for mono, cf in sp.Poly(e, *ALL_VARS).terms():
                    combo_all.append(cf)
                    if sum(mono) > D:
                        combo_high.append(cf)
        _, low_ns = nullspace_dim(combo_high, list(z)) if dim0 else (0, [])
        if low_ns:
            # rank of the images of the admissible combinations
            rows = []
            for v in low_ns:
                rows.append([cf.subs(dict(zip(z, v))) for cf in combo_all])
            dim_img = sp.Matrix(rows).rank() if rows and rows[0] else 0
    return dim_c, dim_k, dim_img


# ---------- maps ----------

def map_unknowns(r, D, tag):
    monos = monomials([d, X[0]], D)
    unknowns, images = [], []
    for i in range(r):
        comps = []
        for c in range(r):
            expr = 0
            for mono in monos:
                u = sp.Symbol("%s%d" % (tag, len(unknowns)))
                unknowns.append(u)
                expr += u * mono
            comps.append(expr)
        images.append(comps)
    return unknowns, images


def apply_linear(images, x, mu):
    """D_mu(x) with D_mu(p(d) e_i) = p(d + mu) D_mu(e_i), param x0 -> mu."""
    r = len(x)
    out = zero(r)
    for i in range(r):
        if x[i] == 0:
            continue
        img = [e.subs(X[0], mu) for e in images[i]]
        out = add(out, scale(x[i].subs(d, d + mu), img))
    return out


def omega_equations(A, images):
    eqs = []
    for i in range(A.r):
        lhs = alpha_apply(A, images[i])
        rhs = apply_linear(images, alpha_apply(A, basis(A.r, i)), X[0])
        eqs += coeff_equations(sub(lhs, rhs), ALL_VARS)
    return eqs


def gder_equations(A, D, D1, D2, k):
    mu, lam = X[0], X[1]
    eqs = []
    for a in range(A.r):
        for b in range(A.r):
            ak_a = alpha_apply(A, basis(A.r, a), k)
            ak_b = alpha_apply(A, basis(A.r, b), k)
            lhs = bracket(A, apply_linear(D, basis(A.r, a), mu), ak_b, lam + mu) if D else zero(A.r)
            if D1:
                lhs = add(lhs, bracket(A, ak_a, apply_linear(D1, basis(A.r, b), mu), lam))
            cab = [e.subs(X[0], lam) for e in A.c(a, b)]
            rhs = apply_linear(D2, cab, mu) if D2 else zero(A.r)
            eqs += coeff_equations(sub(lhs, rhs), ALL_VARS)
    return eqs


def projected_dim(ns, unknowns, head):
    if not ns:
        return 0
    idx = [unknowns.index(u) for u in head]
    return sp.Matrix([[v[i] for i in idx] for v in ns]).rank()


def space_dims(A, k, D):
    out = {}
    u0, d0 = map_unknowns(A.r, D, "p")
    u1, d1 = map_unknowns(A.r, D, "q")
    u2, d2 = map_unknowns(A.r, D, "s")
    om0, om1, om2 = omega_equations(A, d0), omega_equations(A, d1), omega_equations(A, d2)
    _, ns = nullspace_dim(om0 + om1 + om2 + gder_equations(A, d0, d1, d2, k), u0 + u1 + u2)
    out["GDer"] = projected_dim(ns, u0 + u1 + u2, u0)
    _, ns = nullspace_dim(om0 + om1 + gder_equations(A, d0, d0, d1, k), u0 + u1)
    out["QDer"] = projected_dim(ns, u0 + u1, u0)
    out["Der"], _ = nullspace_dim(om0 + gder_equations(A, d0, d0, d0, k), u0)
    # centroid: both sides equal D([a b])
    mu, lam = X[0], X[1]
    c_eqs, qc_eqs, z_eqs = [], [], []
    for a in range(A.r):
        for b in range(A.r):
            ak_a = alpha_apply(A, basis(A.r, a), k)
            ak_b = alpha_apply(A, basis(A.r, b), k)
            left = bracket(A, apply_linear(d0, basis(A.r, a), mu), ak_b, lam + mu)
            right = bracket(A, ak_a, apply_linear(d0, basis(A.r, b), mu), lam)
            mid = apply_linear(d0, [e.subs(X[0], lam) for e in A.c(a, b)], mu)
            c_eqs += coeff_equations(sub(left, mid), ALL_VARS) + coeff_equations(sub(right, mid), ALL_VARS)
            qc_eqs += coeff_equations(sub(left, right), ALL_VARS)
            z_eqs += coeff_equations(left, ALL_VARS) + coeff_equations(mid, ALL_VARS)
    out["C"], _ = nullspace_dim(om0 + c_eqs, u0)
    out["QC"], _ = nullspace_dim(om0 + qc_eqs, u0)
    out["ZDer"], _ = nullspace_dim(om0 + z_eqs, u0)
    return out


def center_dim(A, D):
    unknowns, x = [], zero(A.r)
    for i in range(A.r):
        for a in range(D + 1):
            u = sp.Symbol("c%d" % len(unknowns))
            unknowns.append(u)
            x[i] += u * d ** a
    eqs = []
    for j in range(A.r):
        eqs += coeff_equations(bracket(A, x, basis(A.r, j), X[0]), ALL_VARS)
    return nullspace_dim(eqs, unknowns)[0]


# ---------- Nijenhuis ----------

def apply_anti_minus_d(images, x):
    """f_{-d}(x) for the antilinear extension f_s(p(d) e_i) = p(-s) f_s(e_i)."""
    out = zero(len(x))
    for i in range(len(x)):
        if x[i] == 0:
            continue
        img = [e.subs(X[0], -d) for e in images[i]]
        out = add(out, scale(x[i], img))
    return out


def nijenhuis_bracket(A, f, i, j):
    lam = X[0]
    e_i, e_j = basis(A.r, i), basis(A.r, j)
    out = bracket(A, f[i], e_j, lam)
    out = add(out, bracket(A, e_i, apply_anti_minus_d(f, e_j), lam))
    return sub(out, apply_anti_minus_d(f, A.c(i, j)))


def deformed_t1_jacobi(A, P):
    """t^1 coefficient of the Hom-Jacobi residual of c + t*P."""
    T = Algebra(A.names, {k: [sp.expand(c + t * p) for c, p in zip(A.c(*k), P.get(k, zero(A.r)))]
                          for k in set(A.table) | set(P)}, A.alpha)
    out = {}
    for i, j, k in itertools.product(range(A.r), repeat=3):
        res = jacobi_residual(T, i, j, k)
        out[(i, j, k)] = [sp.expand(sp.Poly(e, t).coeff_monomial(t)) if e != 0 else 0 for e in res]
    return out


# ---------- printing ----------

def poly_str(e):
    s = str(sp.expand(e)).replace("**", "^")
    return s


def elem_str(v, names):
    parts = []
    for c, n in zip(v, names):
        c = sp.expand(c)
        if c != 0:
            parts.append("(%s)*%s" % (poly_str(c), n))
    return " + ".join(parts) if parts else "0"


# ---------- fixtures ----------

def virasoro():
    return Algebra(["L"], {(0, 0): [d + 2 * X[0]]}, sp.Matrix([[1]]))


def rank2():
    return Algebra(["e1", "e2"], {(0, 1): [0, 1], (1, 0): [0, -1]}, sp.diag(1, 2))


def abelian(r, alpha):
    return Algebra(["a%d" % i for i in range(r)], {}, alpha)


def adjoint(A, s=0):
    act = {}
    for i in range(A.r):
        ai = alpha_apply(A, basis(A.r, i), s)
        for j in range(A.r):
            act[(i, j)] = bracket(A, ai, basis(A.r, j), X[0])
    return {"rank": A.r, "action": act, "beta": A.alpha}


def main():
    V, R2 = virasoro(), rank2()
    values = []

    def emit(name, value):
        if isinstance(value, bool):
            values.append("inline constexpr bool %s = %s;" % (name, "true" if value else "false"))
        elif isinstance(value, int):
            values.append("inline constexpr std::size_t %s = %d;" % (name, value))
        else:
            values.append('inline constexpr const char* %s = "%s";' % (name, value))

    emit("kVirasoroAxioms", algebra_ok(V))
    emit("kRank2Axioms", algebra_ok(R2))

    broken = Algebra(["L"], {(0, 0): [d + 3 * X[0]]}, sp.Matrix([[1]]))
    emit("kBrokenSkewResidual", elem_str(skew_residual(broken, 0, 0), ["L"]))
    emit("kBrokenJacobiResidual", elem_str(jacobi_residual(broken, 0, 0, 0), ["L"]))

    M1 = adjoint(R2, 1)
    emit("kRank2Alpha1Action12", elem_str(M1["action"][(0, 1)], R2.names))
    emit("kRank2NProduct0", elem_str(R2.c(0, 1), R2.names))

    emit("kVirasoroCenterBound3", center_dim(V, 3))
    emit("kRank2CenterBound2", center_dim(R2, 2))
    emit("kAbelian2CenterBound1", center_dim(abelian(2, sp.eye(2)), 1))

    for n in range(3):
        c, k, im = cohomology(V, adjoint(V), n, 2)
        emit("kVirasoroCochainsN%dB2" % n, c)
        emit("kVirasoroKernelN%dB2" % n, k)
        emit("kVirasoroImageN%dB2" % n, im)
    zero_mod = {"rank": 1, "action": {}, "beta": sp.Matrix([[1]])}
    A1 = abelian(1, sp.Matrix([[2]]))
    c, k, im = cohomology(A1, {"rank": 1, "action": {}, "beta": sp.Matrix([[2]])}, 1, 1)
    emit("kAbelian1CochainsN1B1", c)
    emit("kAbelian1KernelN1B1", k)
    A3 = abelian(3, sp.diag(1, -1, 3))
    c, k, im = cohomology(A3, zero_mod, 1, 1)
    emit("kAbelian3ZeroCochainsN1B1", c)
    emit("kAbelian3ZeroKernelN1B1", k)

    emit("kAbelian1DerK0B1", space_dims(A1, 0, 1)["Der"])
    for k in (0, 1):
        dims = space_dims(V, k, 2)
        for name in ("GDer", "QDer", "Der", "C", "QC", "ZDer"):
            emit("kVirasoro%sK%dB2" % (name, k), dims[name])
    dims = space_dims(R2, 0, 2)
    for name in ("GDer", "QDer", "Der", "C", "QC", "ZDer"):
        emit("kRank2%sK0B2" % name, dims[name])

    # Nijenhuis bracket of f = id on the rank-2 example
    f = [basis(2, 0), basis(2, 1)]
    for i in range(2):
        for j in range(2):
            emit("kRank2IdNijenhuis%d%d" % (i + 1, j + 1), elem_str(nijenhuis_bracket(R2, f, i, j), R2.names))

    # t^1 Jacobi defect on Virasoro for psi(L, L) = (x0 - x1)^3 L specialized at x1 = -d - x0
    P = {(0, 0): [sp.expand(((X[0] - X[1]) ** 3).subs(X[1], -d - X[0]))]}
    emit("kVirasoroPsiSpecialized", elem_str(P[(0, 0)], ["L"]))
    emit("kVirasoroPsiT1Jacobi", elem_str(deformed_t1_jacobi(V, P)[(0, 0, 0)], ["L"]))

    header = [
        "#pragma once",
        "",
        "// Generated by tests/oracles/oracle.py; do not edit.",
        "",
        "#include <cstddef>",
        "",
        "namespace oracle {",
        "",
    ] + values + ["", "}  // namespace oracle", ""]
    out = pathlib.Path(__file__).resolve().parents[1] / "unit" / "oracle_values.hpp"
    out.write_text("\n".join(header))
    print("\n".join(values))


if __name__ == "__main__":
    sys.exit(main())
