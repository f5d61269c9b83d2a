#pragma once

// Core semantic objects: finite groups, finite-dimensional unital algebras
// by structure constants, group actions by automorphisms, equivariant
// bimodules, and the cyclic-quotient extension data (H normal, G/H cyclic
// of prime-power order q).  Validation is exhaustive at these sizes and
// report-valued: every failed axiom names its witnessing indices.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hhsmash/errors.hpp"
#include "hhsmash/field.hpp"
#include "hhsmash/linalg.hpp"

namespace hhsmash {

struct ValidationReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    void require(bool cond, const std::string& what) {
        if (!cond) failures.push_back(what);
    }
    std::string joined() const {
        std::string s;
        for (const auto& f : failures) {
            if (!s.empty()) s += "; ";
            s += f;
        }
        return s;
    }
};

// ------------------------------------------------------------------ groups

struct FinGroup {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table; // table[a][b] = index of a*b
    int identity = 0;
    std::vector<int> inverse;

    int order() const { return static_cast<int>(labels.size()); }
    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const { return inverse[a]; }

    int element_index(const std::string& label) const {
        for (int i = 0; i < order(); ++i)
            if (labels[i] == label) return i;
        throw StructuralError("unknown group element '" + label + "'");
    }

    static FinGroup from_table(std::vector<std::string> labels,
                               std::vector<std::vector<int>> table) {
        FinGroup g;
        g.labels = std::move(labels);
        g.table = std::move(table);
        int n = g.order();
        if (n == 0) throw StructuralError("empty group");
        if (static_cast<int>(g.table.size()) != n)
            throw StructuralError("group table row count mismatch");
        for (const auto& row : g.table) {
            if (static_cast<int>(row.size()) != n)
                throw StructuralError("group table column count mismatch");
            for (int v : row)
                if (v < 0 || v >= n) throw StructuralError("group table index out of range");
        }
        // identity
        g.identity = -1;
        for (int e = 0; e < n; ++e) {
            bool works = true;
            for (int a = 0; a < n && works; ++a)
                works = g.table[e][a] == a && g.table[a][e] == a;
            if (works) {
                g.identity = e;
                break;
            }
        }
        if (g.identity < 0) throw StructuralError("group table has no identity");
        // inverses
        g.inverse.assign(n, -1);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                if (g.table[a][b] == g.identity && g.table[b][a] == g.identity) {
                    g.inverse[a] = b;
                    break;
                }
            if (g.inverse[a] < 0)
                throw StructuralError("group element " + g.labels[a] + " has no inverse");
        }
        // associativity and latin-square property
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
                        throw StructuralError("group table not associative at (" +
                                              g.labels[a] + "," + g.labels[b] + "," +
                                              g.labels[c] + ")");
        for (int a = 0; a < n; ++a) {
            std::set<int> row(g.table[a].begin(), g.table[a].end());
            if (static_cast<int>(row.size()) != n)
                throw StructuralError("group table row " + g.labels[a] + " is not a permutation");
        }
        return g;
    }

    static FinGroup cyclic(int n, const std::string& gen_name = "g") {
        if (n < 1) throw StructuralError("cyclic group order must be positive");
        std::vector<std::string> labels(n);
        for (int i = 0; i < n; ++i)
            labels[i] = i == 0 ? "e" : (i == 1 ? gen_name : gen_name + std::to_string(i));
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
        return from_table(std::move(labels), std::move(t));
    }

    static FinGroup product(const FinGroup& g1, const FinGroup& g2) {
        int n1 = g1.order(), n2 = g2.order();
        std::vector<std::string> labels;
        for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n2; ++b) labels.push_back(g1.labels[a] + "." + g2.labels[b]);
        std::vector<std::vector<int>> t(n1 * n2, std::vector<int>(n1 * n2));
        for (int a1 = 0; a1 < n1; ++a1)
            for (int b1 = 0; b1 < n2; ++b1)
                for (int a2 = 0; a2 < n1; ++a2)
                    for (int b2 = 0; b2 < n2; ++b2)
                        t[a1 * n2 + b1][a2 * n2 + b2] =
                            g1.table[a1][a2] * n2 + g2.table[b1][b2];
        return from_table(std::move(labels), std::move(t));
    }

    int element_order(int a) const {
        int x = a, n = 1;
        while (x != identity) {
            x = mul(x, a);
            ++n;
        }
        return n;
    }
};

// ----------------------------------------------------------------- algebras

struct AlgebraGrading {
    FinGroup group;
    std::vector<int> degree; // basis index -> group element index
};

template <class F>
struct FinAlgebra {
    F field;
    std::vector<std::string> basis_labels;
    std::vector<SparseCol<F>> mult; // mult[i*dim+j] = coordinates of b_i * b_j
    Vec<F> unit;
    std::optional<AlgebraGrading> grading;

    int dim() const { return static_cast<int>(basis_labels.size()); }

    const SparseCol<F>& basis_product(int i, int j) const { return mult[i * dim() + j]; }

    Vec<F> mul_vec(const Vec<F>& x, const Vec<F>& y) const {
        Vec<F> out(dim(), field.zero());
        for (int i = 0; i < dim(); ++i) {
            if (field.is_zero(x[i])) continue;
            for (int j = 0; j < dim(); ++j) {
                if (field.is_zero(y[j])) continue;
                auto c = field.mul(x[i], y[j]);
                for (const auto& [k, v] : basis_product(i, j))
                    out[k] = field.add(out[k], field.mul(c, v));
            }
        }
        return out;
    }

    // matrix of left multiplication by basis element i
    SparseMat<F> left_mult_matrix(int i) const {
        MatBuilder<F> b(field, dim(), dim());
        for (int j = 0; j < dim(); ++j)
            for (const auto& [k, v] : basis_product(i, j)) b.add(k, j, v);
        return b.finish();
    }

    SparseMat<F> right_mult_matrix(int i) const {
        MatBuilder<F> b(field, dim(), dim());
        for (int j = 0; j < dim(); ++j)
            for (const auto& [k, v] : basis_product(j, i)) b.add(k, j, v);
        return b.finish();
    }
};

template <class F>
FinAlgebra<F> make_algebra(const F& field, std::vector<std::string> labels,
                           std::vector<SparseCol<F>> mult, Vec<F> unit,
                           std::optional<AlgebraGrading> grading = std::nullopt) {
    FinAlgebra<F> a{field, std::move(labels), std::move(mult), std::move(unit),
                    std::move(grading)};
    if (a.dim() == 0) throw StructuralError("zero-dimensional algebra rejected");
    if (a.mult.size() != static_cast<std::size_t>(a.dim()) * a.dim())
        throw StructuralError("structure-constant table has wrong size");
    if (static_cast<int>(a.unit.size()) != a.dim())
        throw StructuralError("unit vector has wrong size");
    return a;
}

template <class F>
ValidationReport validate_algebra(const FinAlgebra<F>& a) {
    ValidationReport rep;
    const F& f = a.field;
    int d = a.dim();
    // associativity on basis triples
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Vec<F> lhs(d, f.zero()), rhs(d, f.zero());
                for (const auto& [m, v] : a.basis_product(i, j))
                    for (const auto& [t, w] : a.basis_product(m, k))
                        lhs[t] = f.add(lhs[t], f.mul(v, w));
                for (const auto& [m, v] : a.basis_product(j, k))
                    for (const auto& [t, w] : a.basis_product(i, m))
                        rhs[t] = f.add(rhs[t], f.mul(v, w));
                if (lhs != rhs) {
                    rep.require(false, "associativity fails at (" + a.basis_labels[i] + "," +
                                           a.basis_labels[j] + "," + a.basis_labels[k] + ")");
                    if (rep.failures.size() > 8) return rep;
                }
            }
    // unit
    for (int j = 0; j < d; ++j) {
        Vec<F> ej(d, f.zero());
        ej[j] = f.one();
        rep.require(a.mul_vec(a.unit, ej) == ej,
                    "unit fails on the left of " + a.basis_labels[j]);
        rep.require(a.mul_vec(ej, a.unit) == ej,
                    "unit fails on the right of " + a.basis_labels[j]);
    }
    // grading
    if (a.grading) {
        const auto& gr = *a.grading;
        if (static_cast<int>(gr.degree.size()) != d) {
            rep.require(false, "grading map has wrong size");
            return rep;
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                int target = gr.group.mul(gr.degree[i], gr.degree[j]);
                for (const auto& [k, v] : a.basis_product(i, j)) {
                    (void)v;
                    if (gr.degree[k] != target)
                        rep.require(false, "grading violated by " + a.basis_labels[i] + "*" +
                                               a.basis_labels[j] + " component " +
                                               a.basis_labels[k]);
                }
            }
    }
    return rep;
}

// ------------------------------------------------------------ group actions

template <class F>
struct GroupAction {
    FinGroup group;
    int dim = 0;
    std::vector<SparseMat<F>> mats; // one per group element, in element order

    const SparseMat<F>& of(int alpha) const { return mats[alpha]; }
};

// Completes generator matrices to all of G by BFS over the multiplication
// table; consistency on revisit is the redundancy cross-check.
template <class F>
GroupAction<F> complete_action(const F& f, const FinGroup& g, int dim,
                               const std::vector<std::pair<int, SparseMat<F>>>& generators) {
    std::vector<std::optional<SparseMat<F>>> known(g.order());
    known[g.identity] = mat_identity(f, dim);
    for (const auto& [idx, m] : generators) {
        if (m.rows != dim || m.cols != dim)
            throw StructuralError("action matrix for " + g.labels[idx] + " has wrong size");
        if (known[idx] && !(known[idx]->col == m.col))
            throw StructuralError("conflicting matrices for generator " + g.labels[idx]);
        known[idx] = m;
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (int a = 0; a < g.order(); ++a) {
            if (!known[a]) continue;
            for (const auto& [gidx, gm] : generators) {
                int t = g.mul(gidx, a);
                auto prod = mat_mul(f, gm, *known[a]);
                if (!known[t]) {
                    known[t] = std::move(prod);
                    progress = true;
                } else if (!(known[t]->col == prod.col)) {
                    throw StructuralError("generator matrices are inconsistent at element " +
                                          g.labels[t]);
                }
            }
        }
    }
    GroupAction<F> act{g, dim, {}};
    for (int a = 0; a < g.order(); ++a) {
        if (!known[a])
            throw StructuralError("given generators do not generate the group (missing " +
                                  g.labels[a] + ")");
        act.mats.push_back(std::move(*known[a]));
    }
    return act;
}

template <class F>
GroupAction<F> trivial_action(const F& f, const FinGroup& g, int dim) {
    GroupAction<F> act{g, dim, {}};
    for (int a = 0; a < g.order(); ++a) act.mats.push_back(mat_identity(f, dim));
    return act;
}

// Checks the homomorphism property on all pairs and, against an algebra,
// the automorphism property (products and unit preserved).
template <class F>
ValidationReport validate_action(const F& f, const GroupAction<F>& act,
                                 const FinAlgebra<F>* algebra = nullptr) {
    ValidationReport rep;
    const FinGroup& g = act.group;
    if (static_cast<int>(act.mats.size()) != g.order()) {
        rep.require(false, "action has wrong number of matrices");
        return rep;
    }
    rep.require(act.of(g.identity).col == mat_identity(f, act.dim).col,
                "identity element does not act as the identity matrix");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
            auto prod = mat_mul(f, act.of(a), act.of(b));
            if (!(prod.col == act.of(g.mul(a, b)).col))
                rep.require(false, "action is not a homomorphism at (" + g.labels[a] + "," +
                                       g.labels[b] + ")");
        }
    if (algebra) {
        const auto& A = *algebra;
        if (act.dim != A.dim()) {
            rep.require(false, "action dimension differs from algebra dimension");
            return rep;
        }
        for (int a = 0; a < g.order(); ++a) {
            auto au = mat_apply(f, act.of(a), A.unit);
            if (au != A.unit)
                rep.require(false, "unit not preserved by " + g.labels[a]);
            for (int i = 0; i < A.dim(); ++i)
                for (int j = 0; j < A.dim(); ++j) {
                    Vec<F> ei(A.dim(), f.zero()), ej(A.dim(), f.zero());
                    ei[i] = f.one();
                    ej[j] = f.one();
                    auto lhs = A.mul_vec(mat_apply(f, act.of(a), ei), mat_apply(f, act.of(a), ej));
                    Vec<F> prod(A.dim(), f.zero());
                    for (const auto& [k, v] : A.basis_product(i, j)) prod[k] = v;
                    auto rhs = mat_apply(f, act.of(a), prod);
                    if (lhs != rhs) {
                        rep.require(false, "element " + g.labels[a] + " is not multiplicative at (" +
                                               A.basis_labels[i] + "," + A.basis_labels[j] + ")");
                        if (rep.failures.size() > 8) return rep;
                    }
                }
        }
    }
    return rep;
}

// Basis of the subspace fixed by the listed group elements.
template <class F>
std::vector<Vec<F>> invariant_subspace(const F& f, const GroupAction<F>& act,
                                       const std::vector<int>& elements) {
    MatBuilder<F> stack(f, act.dim * static_cast<int>(elements.size()), act.dim);
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto& m = act.of(elements[e]);
        for (int j = 0; j < m.cols; ++j) {
            for (const auto& [r, v] : m.col[j])
                stack.add(static_cast<int>(e) * act.dim + r, j, v);
            stack.add(static_cast<int>(e) * act.dim + j, j, f.neg(f.one()));
        }
    }
    auto ki = kernel_image(f, stack.finish(), "invariant subspace system");
    return rref_canonicalize(f, std::move(ki.kernel));
}

// ----------------------------------------------------- equivariant bimodules

template <class F>
struct InternalMult {
    std::vector<SparseCol<F>> table; // table[i*dim+j] = coordinates of x_i * x_j
    Vec<F> unit;
};

// An A-bimodule with a compatible G-action; optionally an algebra itself.
template <class F>
struct EquivariantBimodule {
    int dim = 0;
    std::vector<SparseMat<F>> left;  // indexed by A-basis, each dim x dim
    std::vector<SparseMat<F>> right;
    GroupAction<F> action; // G-action on module coordinates
    std::optional<InternalMult<F>> algebra;

    Vec<F> mul_internal(const F& f, const Vec<F>& x, const Vec<F>& y) const {
        if (!algebra) throw ContractError("module has no internal multiplication");
        Vec<F> out(dim, f.zero());
        for (int i = 0; i < dim; ++i) {
            if (f.is_zero(x[i])) continue;
            for (int j = 0; j < dim; ++j) {
                if (f.is_zero(y[j])) continue;
                auto c = f.mul(x[i], y[j]);
                for (const auto& [k, v] : algebra->table[i * dim + j])
                    out[k] = f.add(out[k], f.mul(c, v));
            }
        }
        return out;
    }
};

// The regular bimodule M = A with a validated G-action on A.
template <class F>
EquivariantBimodule<F> regular_bimodule(const FinAlgebra<F>& a, const GroupAction<F>& act) {
    EquivariantBimodule<F> m;
    m.dim = a.dim();
    for (int i = 0; i < a.dim(); ++i) {
        m.left.push_back(a.left_mult_matrix(i));
        m.right.push_back(a.right_mult_matrix(i));
    }
    m.action = act;
    m.algebra = InternalMult<F>{a.mult, a.unit};
    return m;
}

template <class F>
ValidationReport validate_bimodule(const FinAlgebra<F>& a, const EquivariantBimodule<F>& m) {
    ValidationReport rep;
    const F& f = a.field;
    int dA = a.dim(), dM = m.dim;
    if (static_cast<int>(m.left.size()) != dA || static_cast<int>(m.right.size()) != dA) {
        rep.require(false, "bimodule action tensors have wrong arity");
        return rep;
    }
    auto act_of = [&](const std::vector<SparseMat<F>>& mats, const Vec<F>& coeffs) {
        MatBuilder<F> b(f, dM, dM);
        for (int i = 0; i < dA; ++i) {
            if (f.is_zero(coeffs[i])) continue;
            for (int j = 0; j < dM; ++j)
                for (const auto& [r, v] : mats[i].col[j]) b.add(r, j, f.mul(coeffs[i], v));
        }
        return b.finish();
    };
    // unit acts as identity
    rep.require(act_of(m.left, a.unit).col == mat_identity(f, dM).col,
                "1_A does not act as identity on the left");
    rep.require(act_of(m.right, a.unit).col == mat_identity(f, dM).col,
                "1_A does not act as identity on the right");
    // (ab)x = a(bx), x(ab) = (xa)b, (ax)b = a(xb)
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j) {
            Vec<F> prod(dA, f.zero());
            for (const auto& [k, v] : a.basis_product(i, j)) prod[k] = v;
            auto lhs = act_of(m.left, prod);
            auto rhs = mat_mul(f, m.left[i], m.left[j]);
            if (!(lhs.col == rhs.col))
                rep.require(false, "left action not associative at (" + a.basis_labels[i] + "," +
                                       a.basis_labels[j] + ")");
            auto lhs2 = act_of(m.right, prod);
            auto rhs2 = mat_mul(f, m.right[j], m.right[i]);
            if (!(lhs2.col == rhs2.col))
                rep.require(false, "right action not associative at (" + a.basis_labels[i] + "," +
                                       a.basis_labels[j] + ")");
            auto lr = mat_mul(f, m.left[i], m.right[j]);
            auto rl = mat_mul(f, m.right[j], m.left[i]);
            if (!(lr.col == rl.col))
                rep.require(false, "left and right actions do not commute at (" +
                                       a.basis_labels[i] + "," + a.basis_labels[j] + ")");
            if (rep.failures.size() > 8) return rep;
        }
    // (compatibility with a G-action on A is validated by
    // validate_equivariance, which needs that action as an argument)
    const FinGroup& g = m.action.group;
    if (m.algebra) {
        const auto& im = *m.algebra;
        if (static_cast<int>(im.table.size()) != dM * dM ||
            static_cast<int>(im.unit.size()) != dM) {
            rep.require(false, "internal multiplication tables have wrong size");
            return rep;
        }
        FinAlgebra<F> as_alg{f, std::vector<std::string>(dM, "m"), im.table, im.unit, {}};
        for (int i = 0; i < dM; ++i) as_alg.basis_labels[i] = "m" + std::to_string(i);
        auto inner = validate_algebra(as_alg);
        for (auto& fl : inner.failures) rep.failures.push_back("internal algebra: " + fl);
        // G acts multiplicatively on M
        for (int al = 0; al < g.order(); ++al) {
            for (int i = 0; i < dM && rep.failures.size() <= 8; ++i)
                for (int j = 0; j < dM; ++j) {
                    Vec<F> xi(dM, f.zero()), xj(dM, f.zero());
                    xi[i] = f.one();
                    xj[j] = f.one();
                    auto lhs = m.mul_internal(f, mat_apply(f, m.action.of(al), xi),
                                              mat_apply(f, m.action.of(al), xj));
                    Vec<F> prod(dM, f.zero());
                    for (const auto& [k, v] : im.table[i * dM + j]) prod[k] = v;
                    auto rhs = mat_apply(f, m.action.of(al), prod);
                    if (lhs != rhs) {
                        rep.require(false, "group element " + g.labels[al] +
                                               " is not multiplicative on the module");
                        break;
                    }
                }
        }
        // left/right actions factor through the unit embedding a -> a.1_M
        for (int i = 0; i < dA; ++i) {
            Vec<F> emb = mat_apply(f, m.left[i], im.unit);
            for (int j = 0; j < dM; ++j) {
                Vec<F> xj(dM, f.zero());
                xj[j] = f.one();
                auto viaemb = m.mul_internal(f, emb, xj);
                auto direct = mat_apply(f, m.left[i], xj);
                if (viaemb != direct) {
                    rep.require(false, "left action of " + a.basis_labels[i] +
                                           " does not factor through the unit embedding");
                    break;
                }
                Vec<F> embr = mat_apply(f, m.right[i], im.unit);
                auto viaembr = m.mul_internal(f, xj, embr);
                auto directr = mat_apply(f, m.right[i], xj);
                if (viaembr != directr) {
                    rep.require(false, "right action of " + a.basis_labels[i] +
                                           " does not factor through the unit embedding");
                    break;
                }
            }
        }
    }
    return rep;
}

// Compatibility of the module action with a declared action on A:
// T_alpha L_a T_alpha^{-1} = L_{^alpha a} (and the right-hand analogue).
template <class F>
ValidationReport validate_equivariance(const FinAlgebra<F>& a, const GroupAction<F>& base_action,
                                       const EquivariantBimodule<F>& m) {
    ValidationReport rep;
    const F& f = a.field;
    const FinGroup& g = m.action.group;
    int dA = a.dim(), dM = m.dim;
    for (int al = 0; al < g.order(); ++al) {
        const auto& tm = m.action.of(al);
        const auto& tminv = m.action.of(g.inv(al));
        for (int i = 0; i < dA; ++i) {
            Vec<F> ei(dA, f.zero());
            ei[i] = f.one();
            Vec<F> ai = mat_apply(f, base_action.of(al), ei); // ^alpha b_i in A-coords
            MatBuilder<F> lb(f, dM, dM), rb(f, dM, dM);
            for (int t = 0; t < dA; ++t) {
                if (f.is_zero(ai[t])) continue;
                for (int j = 0; j < dM; ++j) {
                    for (const auto& [r, v] : m.left[t].col[j]) lb.add(r, j, f.mul(ai[t], v));
                    for (const auto& [r, v] : m.right[t].col[j]) rb.add(r, j, f.mul(ai[t], v));
                }
            }
            auto conj_left = mat_mul(f, tm, mat_mul(f, m.left[i], tminv));
            auto conj_right = mat_mul(f, tm, mat_mul(f, m.right[i], tminv));
            if (!(conj_left.col == lb.finish().col))
                rep.require(false, "left compatibility fails for (" + g.labels[al] + "," +
                                       a.basis_labels[i] + ")");
            if (!(conj_right.col == rb.finish().col))
                rep.require(false, "right compatibility fails for (" + g.labels[al] + "," +
                                       a.basis_labels[i] + ")");
            if (rep.failures.size() > 8) return rep;
        }
    }
    return rep;
}

// ---------------------------------------------------------- subgroup view

// A subgroup as a group in its own right; to_parent[i] is the index in the
// ambient group of the i-th subgroup element.
struct SubgroupView {
    FinGroup group;
    std::vector<int> to_parent;
};

inline SubgroupView subgroup_view(const FinGroup& g, const std::vector<int>& elements) {
    std::vector<int> elems = elements;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto position = [&](int parent) {
        auto it = std::lower_bound(elems.begin(), elems.end(), parent);
        if (it == elems.end() || *it != parent)
            throw StructuralError("subgroup view: set is not closed under multiplication");
        return static_cast<int>(it - elems.begin());
    };
    SubgroupView out;
    out.to_parent = elems;
    int n = static_cast<int>(elems.size());
    if (n == 0) throw StructuralError("subgroup view: empty element set");
    for (int e : elems)
        if (e < 0 || e >= g.order()) throw StructuralError("subgroup view: element out of range");
    out.group.labels.reserve(n);
    for (int e : elems) out.group.labels.push_back(g.labels[e]);
    out.group.table.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.group.table[i][j] = position(g.mul(elems[i], elems[j]));
    out.group.identity = position(g.identity);
    out.group.inverse.resize(n);
    for (int i = 0; i < n; ++i) out.group.inverse[i] = position(g.inv(elems[i]));
    return out;
}

// ------------------------------------------------------- extension data

struct CqExtensionData {
    FinGroup group;
    std::vector<int> subgroup; // indices of H, sorted
    int q = 1;                 // order of G/H, a power of char p
    int rho_lift;              // element of G generating G/H

    bool in_subgroup(int a) const {
        return std::binary_search(subgroup.begin(), subgroup.end(), a);
    }
};

inline bool is_power_of(std::uint64_t q, std::uint64_t p) {
    if (q == 1) return true;
    while (q % p == 0) q /= p;
    return q == 1;
}

// Group-theoretic part of the validation (no action needed): subgroup
// axioms, normality, characteristic constraints, quotient cyclicity.
inline ValidationReport validate_extension_group(const CqExtensionData& ext,
                                                 std::uint64_t p) {
    ValidationReport rep;
    const FinGroup& g = ext.group;
    const auto& H = ext.subgroup;
    rep.require(!H.empty() && std::is_sorted(H.begin(), H.end()), "H must be sorted, nonempty");
    // subgroup axioms
    rep.require(ext.in_subgroup(g.identity), "H does not contain the identity");
    for (int a : H) {
        rep.require(ext.in_subgroup(g.inv(a)), "H not closed under inverse at " + g.labels[a]);
        for (int b : H)
            rep.require(ext.in_subgroup(g.mul(a, b)),
                        "H not closed under product at (" + g.labels[a] + "," + g.labels[b] + ")");
    }
    // normality
    for (int a = 0; a < g.order(); ++a)
        for (int h : H)
            rep.require(ext.in_subgroup(g.mul(g.mul(a, h), g.inv(a))),
                        "H is not normal (conjugate of " + g.labels[h] + " by " + g.labels[a] +
                            " escapes)");
    if (!rep.ok()) return rep;
    // characteristic constraints
    rep.require(p > 0, "extension machinery needs prime characteristic");
    if (p > 0) {
        rep.require(H.size() % p != 0, "|H| must not be divisible by p");
        rep.require(is_power_of(ext.q, p), "q must be a power of p");
    }
    // the quotient is computed explicitly and must be cyclic of order q,
    // generated by the image of rho_lift
    int index = g.order() / static_cast<int>(H.size());
    rep.require(index == ext.q, "q differs from [G:H]");
    // order of rho H in G/H: smallest t with rho^t in H
    int x = ext.rho_lift, t = 1;
    while (!ext.in_subgroup(x)) {
        x = g.mul(x, ext.rho_lift);
        ++t;
    }
    rep.require(t == ext.q, "image of the lift does not generate the quotient (order " +
                                std::to_string(t) + " of " + std::to_string(ext.q) + ")");
    return rep;
}

// Full validation; the action is needed to enforce that the choice of lift
// is immaterial on the H-invariant subspace.
template <class F>
ValidationReport validate_extension(const F& f, const CqExtensionData& ext,
                                    const GroupAction<F>& act) {
    ValidationReport rep = validate_extension_group(ext, f.characteristic());
    if (!rep.ok()) return rep;
    const FinGroup& g = ext.group;
    const auto& H = ext.subgroup;
    // lift independence on H-invariants: any other lift rho.h acts the same
    auto inv_basis = invariant_subspace(f, act, H);
    for (int h : H) {
        int other = g.mul(ext.rho_lift, h);
        for (const auto& v : inv_basis) {
            auto a1 = mat_apply(f, act.of(ext.rho_lift), v);
            auto a2 = mat_apply(f, act.of(other), v);
            if (a1 != a2) {
                rep.require(false, "lifts " + g.labels[ext.rho_lift] + " and " + g.labels[other] +
                                       " act differently on an H-invariant vector");
                return rep;
            }
        }
    }
    return rep;
}

} // namespace hhsmash
