#pragma once

// Derived algebras: the smash product A#kG for a G-action, the dual smash
// B#kG* for a G-grading (the covering construction), trivial extensions
// R + DR, and the repetitive quotients R_n = (TR)#kC_n^* with their Nakayama
// C_n-action.  Basis order of every product construction is lexicographic,
// algebra index major, group index minor.

#include <optional>
#include <string>
#include <vector>

#include "hhsmash/algebra.hpp"

namespace hhsmash {

// ----------------------------------------------------------------- A # kG

template <class F>
struct SmashAlgebra {
    FinAlgebra<F> alg;  // carries the canonical G-grading (A.alpha in degree alpha)
    FinAlgebra<F> base; // A
    FinGroup group;
    GroupAction<F> action; // on A

    int pair_index(int i, int alpha) const { return i * group.order() + alpha; }
    int dim() const { return alg.dim(); }
};

// (a alpha)(b beta) = (a . ^alpha b)(alpha beta)
template <class F>
SmashAlgebra<F> build_smash(const FinAlgebra<F>& a, const FinGroup& g,
                            const GroupAction<F>& act) {
    const F& f = a.field;
    {
        auto rep = validate_action(f, act, &a);
        if (!rep.ok()) throw StructuralError("invalid action: " + rep.joined());
    }
    int dA = a.dim(), n = g.order(), d = dA * n;
    std::vector<std::string> labels(d);
    std::vector<int> degree(d);
    for (int i = 0; i < dA; ++i)
        for (int al = 0; al < n; ++al) {
            labels[i * n + al] = a.basis_labels[i] + "#" + g.labels[al];
            degree[i * n + al] = al;
        }
    std::vector<SparseCol<F>> mult(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < dA; ++i)
        for (int al = 0; al < n; ++al)
            for (int j = 0; j < dA; ++j)
                for (int be = 0; be < n; ++be) {
                    Vec<F> ej(dA, f.zero());
                    ej[j] = f.one();
                    auto twisted = mat_apply(f, act.of(al), ej);
                    Vec<F> prod(dA, f.zero());
                    for (int t = 0; t < dA; ++t) {
                        if (f.is_zero(twisted[t])) continue;
                        for (const auto& [k, v] : a.basis_product(i, t))
                            prod[k] = f.add(prod[k], f.mul(twisted[t], v));
                    }
                    int gi = g.mul(al, be);
                    SparseCol<F> out;
                    for (int k = 0; k < dA; ++k)
                        if (!f.is_zero(prod[k])) out.emplace_back(k * n + gi, prod[k]);
                    mult[(i * n + al) * static_cast<std::size_t>(d) + (j * n + be)] =
                        std::move(out);
                }
    Vec<F> unit(d, f.zero());
    for (int i = 0; i < dA; ++i) unit[i * n + g.identity] = a.unit[i];
    auto alg = make_algebra(f, std::move(labels), std::move(mult), std::move(unit),
                            AlgebraGrading{g, std::move(degree)});
    {
        auto rep = validate_algebra(alg);
        if (!rep.ok()) throw StructuralError("smash product failed validation: " + rep.joined());
    }
    return SmashAlgebra<F>{std::move(alg), a, g, act};
}

// ---------------------------------------------------------------- B # kG*

template <class F>
struct DualSmashAlgebra {
    FinAlgebra<F> alg;
    FinAlgebra<F> base; // graded B
    FinGroup group;
    GroupAction<F> natural_action; // ^alpha (b p_beta) = b p_{beta alpha^{-1}}

    int pair_index(int i, int alpha) const { return i * group.order() + alpha; }
    int dim() const { return alg.dim(); }
};

// (a p_alpha)(b p_beta) = (a b_{alpha beta^{-1}}) p_beta
template <class F>
DualSmashAlgebra<F> build_dual_smash(const FinAlgebra<F>& b) {
    const F& f = b.field;
    if (!b.grading) throw StructuralError("dual smash needs a graded algebra");
    {
        auto rep = validate_algebra(b);
        if (!rep.ok())
            throw StructuralError("graded algebra failed validation: " + rep.joined());
    }
    const FinGroup& g = b.grading->group;
    const auto& deg = b.grading->degree;
    int dB = b.dim(), n = g.order(), d = dB * n;
    std::vector<std::string> labels(d);
    for (int i = 0; i < dB; ++i)
        for (int al = 0; al < n; ++al)
            labels[i * n + al] = b.basis_labels[i] + "@" + g.labels[al];
    std::vector<SparseCol<F>> mult(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < dB; ++i)
        for (int al = 0; al < n; ++al)
            for (int j = 0; j < dB; ++j)
                for (int be = 0; be < n; ++be) {
                    SparseCol<F> out;
                    if (deg[j] == g.mul(al, g.inv(be)))
                        for (const auto& [k, v] : b.basis_product(i, j))
                            out.emplace_back(k * n + be, v);
                    mult[(i * n + al) * static_cast<std::size_t>(d) + (j * n + be)] =
                        std::move(out);
                }
    Vec<F> unit(d, f.zero());
    for (int i = 0; i < dB; ++i)
        for (int al = 0; al < n; ++al) unit[i * n + al] = b.unit[i];
    auto alg = make_algebra(f, std::move(labels), std::move(mult), std::move(unit));
    {
        auto rep = validate_algebra(alg);
        if (!rep.ok())
            throw StructuralError("dual smash failed validation: " + rep.joined());
    }
    // natural action permutes the idempotent components
    GroupAction<F> act{g, d, {}};
    for (int al = 0; al < n; ++al) {
        MatBuilder<F> mb(f, d, d);
        for (int i = 0; i < dB; ++i)
            for (int be = 0; be < n; ++be)
                mb.add(i * n + g.mul(be, g.inv(al)), i * n + be, f.one());
        act.mats.push_back(mb.finish());
    }
    {
        auto rep = validate_action(f, act, &alg);
        if (!rep.ok())
            throw StructuralError("natural action failed validation: " + rep.joined());
    }
    return DualSmashAlgebra<F>{std::move(alg), b, g, std::move(act)};
}

// A grading is C_q-singular when components outside the p'-part H multiply
// to zero; this is the hypothesis of the canonical certificate.
template <class F>
bool is_cq_singular(const FinAlgebra<F>& b, const std::vector<int>& subgroup_h) {
    if (!b.grading) throw ContractError("singularity test needs a graded algebra");
    auto in_h = [&](int a) {
        return std::find(subgroup_h.begin(), subgroup_h.end(), a) != subgroup_h.end();
    };
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) {
            if (in_h(b.grading->degree[i]) || in_h(b.grading->degree[j])) continue;
            if (!b.basis_product(i, j).empty()) return false;
        }
    return true;
}

// ------------------------------------------------------------------ R + DR

template <class F>
struct TrivialExtension {
    FinAlgebra<F> alg;
    FinAlgebra<F> base; // R
    std::vector<int> z_degree; // 0 on R, 1 on DR

    int dim() const { return alg.dim(); }
};

// (a,u)(b,v) = (ab, a.v + u.b) with DR the dual bimodule.
template <class F>
TrivialExtension<F> build_trivial_extension(const FinAlgebra<F>& r) {
    const F& f = r.field;
    {
        auto rep = validate_algebra(r);
        if (!rep.ok()) throw StructuralError("invalid base algebra: " + rep.joined());
    }
    int n = r.dim(), d = 2 * n;
    std::vector<std::string> labels(d);
    std::vector<int> zdeg(d);
    for (int i = 0; i < n; ++i) {
        labels[i] = r.basis_labels[i];
        labels[n + i] = r.basis_labels[i] + "^";
        zdeg[i] = 0;
        zdeg[n + i] = 1;
    }
    std::vector<SparseCol<F>> mult(static_cast<std::size_t>(d) * d);
    auto at = [&](int i, int j) -> SparseCol<F>& {
        return mult[i * static_cast<std::size_t>(d) + j];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // R x R: as in R
            at(i, j) = r.basis_product(i, j);
            // a . v-hat: (r_i . r_j*)(x) = r_j*(x r_i), so the r_t* coefficient
            // is the r_j coordinate of r_t r_i
            SparseCol<F> lv;
            for (int t = 0; t < n; ++t)
                for (const auto& [k, v] : r.basis_product(t, i))
                    if (k == j) lv.emplace_back(n + t, v);
            at(i, n + j) = std::move(lv);
            // u-hat . b: (r_i* . r_j)(x) = r_i*(r_j x)
            SparseCol<F> rv;
            for (int t = 0; t < n; ++t)
                for (const auto& [k, v] : r.basis_product(j, t))
                    if (k == i) rv.emplace_back(n + t, v);
            at(n + i, j) = std::move(rv);
            // DR x DR = 0
        }
    Vec<F> unit(d, f.zero());
    for (int i = 0; i < n; ++i) unit[i] = r.unit[i];
    auto alg = make_algebra(f, std::move(labels), std::move(mult), std::move(unit));
    {
        auto rep = validate_algebra(alg);
        if (!rep.ok())
            throw StructuralError("trivial extension failed validation: " + rep.joined());
    }
    // the associated symmetric form <x,y> = eps(xy) with eps(a,u) = u(1_R)
    // must be nondegenerate
    Vec<F> eps(d, f.zero());
    for (int i = 0; i < n; ++i) {
        // u(1_R): the r_i* functional evaluated at the unit
        eps[n + i] = r.unit[i];
    }
    MatBuilder<F> gram(f, d, d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            auto s = f.zero();
            for (const auto& [k, v] : alg.basis_product(x, y)) s = f.add(s, f.mul(v, eps[k]));
            gram.add(x, y, s);
        }
    if (rank(f, gram.finish(), "trivial extension pairing") != d)
        throw StructuralError("trivial extension pairing is degenerate");
    return TrivialExtension<F>{std::move(alg), r, std::move(zdeg)};
}

// ------------------------------------------------------- R_n = TR # kC_n^*

template <class F>
struct RepetitiveQuotient {
    DualSmashAlgebra<F> cover; // (TR) # kC_n^*
    TrivialExtension<F> tr;
    GroupAction<F> cn_action; // C_n generated by the Nakayama automorphism
    int n = 1;
    std::vector<int> z_degree; // inherited {0,1} grading on the R_n basis

    const FinAlgebra<F>& alg() const { return cover.alg; }
    int dim() const { return cover.alg.dim(); }
};

template <class F>
RepetitiveQuotient<F> build_repetitive_quotient(const FinAlgebra<F>& r, int n) {
    if (n < 1) throw StructuralError("repetitive quotient needs n >= 1");
    const F& f = r.field;
    auto tr = build_trivial_extension(r);
    // collapse the Z-grading to C_n
    FinGroup cn = FinGroup::cyclic(n, "c");
    FinAlgebra<F> graded = tr.alg;
    std::vector<int> deg(graded.dim());
    for (int i = 0; i < graded.dim(); ++i) deg[i] = tr.z_degree[i] % n;
    graded.grading = AlgebraGrading{cn, std::move(deg)};
    auto cover = build_dual_smash(graded);
    int d = cover.dim();
    // nu_n(x p_alpha) = x p_{alpha - 1}
    MatBuilder<F> nu(f, d, d);
    for (int i = 0; i < graded.dim(); ++i)
        for (int al = 0; al < n; ++al)
            nu.add(cover.pair_index(i, (al + n - 1) % n), cover.pair_index(i, al), f.one());
    auto act = complete_action(f, cn, d, {{n == 1 ? 0 : 1, nu.finish()}});
    {
        auto rep = validate_action(f, act, &cover.alg);
        if (!rep.ok())
            throw StructuralError("Nakayama action failed validation: " + rep.joined());
    }
    std::vector<int> zdeg(d);
    for (int i = 0; i < graded.dim(); ++i)
        for (int al = 0; al < n; ++al) zdeg[cover.pair_index(i, al)] = tr.z_degree[i];
    return RepetitiveQuotient<F>{std::move(cover), std::move(tr), std::move(act), n,
                                 std::move(zdeg)};
}

// ------------------------------------------------- restriction along phi

// phi: A^eG -> (AG)^e, (a x b) alpha |-> a.alpha x alpha^{-1}.b.  Pulling an
// (AG)-bimodule back along phi gives an A-bimodule with G-action
// ^alpha x = alpha.x.alpha^{-1}.
template <class F>
EquivariantBimodule<F> restrict_along_phi(const SmashAlgebra<F>& ag,
                                          const std::vector<SparseMat<F>>& left_ag,
                                          const std::vector<SparseMat<F>>& right_ag, int dim_m,
                                          std::optional<InternalMult<F>> internal = std::nullopt) {
    const F& f = ag.base.field;
    const FinGroup& g = ag.group;
    int dA = ag.base.dim(), n = g.order();
    if (static_cast<int>(left_ag.size()) != ag.dim() ||
        static_cast<int>(right_ag.size()) != ag.dim())
        throw StructuralError("AG-bimodule tensors have wrong arity");
    auto combo = [&](const std::vector<SparseMat<F>>& mats, const Vec<F>& coeffs) {
        MatBuilder<F> b(f, dim_m, dim_m);
        for (int i = 0; i < ag.dim(); ++i) {
            if (f.is_zero(coeffs[i])) continue;
            for (int j = 0; j < dim_m; ++j)
                for (const auto& [rr, v] : mats[i].col[j]) b.add(rr, j, f.mul(coeffs[i], v));
        }
        return b.finish();
    };
    auto embed_a = [&](int i, int alpha) {
        Vec<F> v(ag.dim(), f.zero());
        v[ag.pair_index(i, alpha)] = f.one();
        return v;
    };
    EquivariantBimodule<F> m;
    m.dim = dim_m;
    for (int i = 0; i < dA; ++i) {
        m.left.push_back(combo(left_ag, embed_a(i, g.identity)));
        m.right.push_back(combo(right_ag, embed_a(i, g.identity)));
    }
    // ^alpha x = (1_A alpha) x (1_A alpha^{-1})
    GroupAction<F> act{g, dim_m, {}};
    for (int al = 0; al < n; ++al) {
        Vec<F> ua(ag.dim(), f.zero()), uainv(ag.dim(), f.zero());
        for (int i = 0; i < dA; ++i) {
            ua[ag.pair_index(i, al)] = ag.base.unit[i];
            uainv[ag.pair_index(i, g.inv(al))] = ag.base.unit[i];
        }
        act.mats.push_back(mat_mul(f, combo(left_ag, ua), combo(right_ag, uainv)));
    }
    m.action = std::move(act);
    m.algebra = std::move(internal);
    return m;
}

// The A^eG-module algebra M = AG itself.
template <class F>
EquivariantBimodule<F> smash_regular_module(const SmashAlgebra<F>& ag) {
    std::vector<SparseMat<F>> left, right;
    for (int i = 0; i < ag.dim(); ++i) {
        left.push_back(ag.alg.left_mult_matrix(i));
        right.push_back(ag.alg.right_mult_matrix(i));
    }
    return restrict_along_phi(ag, left, right, ag.dim(),
                              std::optional<InternalMult<F>>{InternalMult<F>{ag.alg.mult, ag.alg.unit}});
}

// ------------------------------------------------------------ group algebra

template <class F>
FinAlgebra<F> group_algebra(const F& f, const FinGroup& g) {
    int n = g.order();
    std::vector<SparseCol<F>> mult(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mult[a * n + b] = {{g.mul(a, b), f.one()}};
    Vec<F> unit(n, f.zero());
    unit[g.identity] = f.one();
    return make_algebra(f, g.labels, std::move(mult), std::move(unit));
}

} // namespace hhsmash
