#pragma once

// Hochschild cochains C^n(A, M) = Hom_k(A^{tensor n}, M) for an equivariant
// bimodule M, with the group action on cochains, the invariant subcomplex,
// the comparison map Theta from invariant cohomology to invariant classes,
// cup and circle products, and a net-degree blocked engine for algebras
// carrying an integer grading.
//
// Index conventions, used consistently everywhere:
//   - a basis cochain is (t, mu): t encodes the argument tuple with the FIRST
//     factor most significant (t = sum of digit_l * dA^(n-1-l)), mu is an
//     M-basis index; its column number is t*dM + mu;
//   - the coboundary (delta f)(a_0,..,a_n) = a_0 f(a_1..a_n)
//     + sum_i (-1)^i f(.., a_{i-1} a_i, ..) + (-1)^{n+1} f(a_0..a_{n-1}) a_n.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hhsmash/algebra.hpp"
#include "hhsmash/constructions.hpp"

namespace hhsmash {

// ------------------------------------------------------------ preparation

template <class F>
struct BarPrep {
    FinAlgebra<F> a;
    EquivariantBimodule<F> m;
    // factors[k] lists (u, v, c) with b_u b_v containing c * b_k
    std::vector<std::vector<std::tuple<int, int, typename F::Elt>>> factors;
};

template <class F>
BarPrep<F> bar_prep(const FinAlgebra<F>& a, const EquivariantBimodule<F>& m) {
    int dA = a.dim();
    if (static_cast<int>(m.left.size()) != dA || static_cast<int>(m.right.size()) != dA)
        throw StructuralError("bimodule arity does not match the algebra");
    BarPrep<F> p{a, m, {}};
    p.factors.resize(dA);
    for (int u = 0; u < dA; ++u)
        for (int v = 0; v < dA; ++v)
            for (const auto& [k, c] : a.basis_product(u, v)) p.factors[k].emplace_back(u, v, c);
    return p;
}

template <class F>
long long cochain_dim(const BarPrep<F>& p, int n) {
    long long d = p.m.dim;
    for (int l = 0; l < n; ++l) {
        d *= p.a.dim();
        if (d > (1LL << 62) / p.a.dim()) throw ResourceError("cochain space overflows");
    }
    return d;
}

inline std::vector<int> tuple_digits(long long t, int n, int dA) {
    std::vector<int> digs(n);
    for (int l = n - 1; l >= 0; --l) {
        digs[l] = static_cast<int>(t % dA);
        t /= dA;
    }
    return digs;
}

namespace detail {

inline int checked_row(long long r, const char* what) {
    if (r > INT32_MAX) throw ResourceError(std::string(what) + ": row index overflows");
    return static_cast<int>(r);
}

template <class F>
SparseCol<F> fold_entries(const F& f, std::vector<std::pair<int, typename F::Elt>> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseCol<F> out;
    for (auto& [r, v] : raw) {
        if (!out.empty() && out.back().first == r)
            out.back().second = f.add(out.back().second, v);
        else
            out.emplace_back(r, v);
    }
    std::erase_if(out, [&](const auto& e) { return f.is_zero(e.second); });
    return out;
}

} // namespace detail

// -------------------------------------------------------- the coboundary

// One column of delta: C^n -> C^{n+1}, rows in C^{n+1} coordinates.
template <class F>
SparseCol<F> bar_delta_column(const BarPrep<F>& p, int n, long long col) {
    const F& f = p.a.field;
    int dA = p.a.dim(), dM = p.m.dim;
    long long t = col / dM;
    int mu = static_cast<int>(col % dM);
    long long powN = 1;
    for (int l = 0; l < n; ++l) powN *= dA;
    std::vector<std::pair<int, typename F::Elt>> raw;
    // new first argument
    for (int a0 = 0; a0 < dA; ++a0) {
        long long s = a0 * powN + t;
        for (const auto& [nu, c] : p.m.left[a0].col[mu])
            raw.emplace_back(detail::checked_row(s * dM + nu, "coboundary"), c);
    }
    // interior multiplications
    long long pw = powN; // dA^(n-i+1) as i advances
    for (int i = 1; i <= n; ++i) {
        pw /= dA; // dA^(n-i)
        bool negate = (i % 2) != 0;
        long long low = t % pw;
        int k = static_cast<int>((t / pw) % dA);
        long long high = t / (pw * dA);
        for (const auto& [u, v, c] : p.factors[k]) {
            long long s = ((high * dA + u) * dA + v) * pw + low;
            raw.emplace_back(detail::checked_row(s * dM + mu, "coboundary"),
                             negate ? f.neg(c) : c);
        }
    }
    // trailing argument
    bool neg_last = ((n + 1) % 2) != 0;
    for (int b = 0; b < dA; ++b) {
        long long s = t * dA + b;
        for (const auto& [nu, c] : p.m.right[b].col[mu])
            raw.emplace_back(detail::checked_row(s * dM + nu, "coboundary"),
                             neg_last ? f.neg(c) : c);
    }
    return detail::fold_entries(f, std::move(raw));
}

template <class F>
SparseMat<F> hochschild_differential(const BarPrep<F>& p, int n) {
    long long cols = cochain_dim(p, n), rows = cochain_dim(p, n + 1);
    detail::checked_row(rows, "coboundary");
    SparseMat<F> out{static_cast<int>(rows), static_cast<int>(cols), {}};
    out.col.reserve(cols);
    std::size_t nnz = 0;
    for (long long c = 0; c < cols; ++c) {
        out.col.push_back(bar_delta_column(p, n, c));
        nnz += out.col.back().size();
        if ((c & 0xfff) == 0)
            MemoryGuard::instance().charge(nnz * sizeof(std::pair<int, typename F::Elt>),
                                           "coboundary degree " + std::to_string(n));
    }
    return out;
}

template <class F>
SparseMat<F> hochschild_differential(const FinAlgebra<F>& a, const EquivariantBimodule<F>& m,
                                     int n) {
    return hochschild_differential(bar_prep(a, m), n);
}

// Cohomology of the truncated complex in degrees 0..N.
template <class F>
std::vector<SubquotientBasis<F>> hochschild_cohomology(const FinAlgebra<F>& a,
                                                       const EquivariantBimodule<F>& m, int N) {
    auto p = bar_prep(a, m);
    std::vector<SubquotientBasis<F>> out;
    SparseMat<F> din{static_cast<int>(cochain_dim(p, 0)), 0, {}};
    for (int n = 0; n <= N; ++n) {
        auto dout = hochschild_differential(p, n);
        out.push_back(subquotient(a.field, din, dout, "cochain degree " + std::to_string(n)));
        din = std::move(dout);
    }
    return out;
}

template <class F>
std::vector<int> hh_dims(const FinAlgebra<F>& a, const EquivariantBimodule<F>& m, int N) {
    std::vector<int> dims;
    for (const auto& s : hochschild_cohomology(a, m, N)) dims.push_back(s.dim());
    return dims;
}

// --------------------------------------------------- group action on C^n

// (^alpha f)(a_1..a_n) = ^alpha (f(^{alpha^{-1}} a_1, .., ^{alpha^{-1}} a_n)).
template <class F>
struct CochainActionPrep {
    FinGroup group;
    std::vector<SparseMat<F>> arows; // arows[alpha] = transpose of A-action of alpha^{-1}
    std::vector<SparseMat<F>> mact;  // module action of alpha
};

template <class F>
CochainActionPrep<F> cochain_action_prep(const BarPrep<F>& p, const GroupAction<F>& act_a) {
    const F& f = p.a.field;
    if (act_a.dim != p.a.dim()) throw StructuralError("algebra action has wrong dimension");
    if (p.m.action.group.order() != act_a.group.order() ||
        p.m.action.group.table != act_a.group.table)
        throw StructuralError("module and algebra actions use different groups");
    CochainActionPrep<F> out{act_a.group, {}, p.m.action.mats};
    for (int al = 0; al < act_a.group.order(); ++al)
        out.arows.push_back(mat_transpose(f, act_a.of(act_a.group.inv(al))));
    return out;
}

template <class F>
SparseCol<F> cochain_action_column(const BarPrep<F>& p, const CochainActionPrep<F>& cp,
                                   int alpha, int n, long long col) {
    const F& f = p.a.field;
    int dA = p.a.dim(), dM = p.m.dim;
    long long t = col / dM;
    int mu = static_cast<int>(col % dM);
    auto digs = tuple_digits(t, n, dA);
    std::vector<std::pair<int, typename F::Elt>> raw;
    const auto& mcol = cp.mact[alpha].col[mu];
    // expand the tensor product of rows digit by digit
    std::vector<std::pair<long long, typename F::Elt>> partial{{0, f.one()}};
    for (int l = 0; l < n; ++l) {
        std::vector<std::pair<long long, typename F::Elt>> next;
        for (const auto& [s, c] : partial)
            for (const auto& [sl, cl] : cp.arows[alpha].col[digs[l]])
                next.emplace_back(s * dA + sl, f.mul(c, cl));
        partial = std::move(next);
    }
    for (const auto& [s, c] : partial)
        for (const auto& [nu, cm] : mcol)
            raw.emplace_back(detail::checked_row(s * dM + nu, "cochain action"), f.mul(c, cm));
    return detail::fold_entries(f, std::move(raw));
}

template <class F>
SparseMat<F> cochain_module_action(const BarPrep<F>& p, const CochainActionPrep<F>& cp,
                                   int alpha, int n) {
    long long d = cochain_dim(p, n);
    detail::checked_row(d, "cochain action");
    SparseMat<F> out{static_cast<int>(d), static_cast<int>(d), {}};
    out.col.reserve(d);
    for (long long c = 0; c < d; ++c)
        out.col.push_back(cochain_action_column(p, cp, alpha, n, c));
    return out;
}

// Apply the alpha-action to a cochain without materializing the matrix.
template <class F>
Vec<F> twist_cochain(const BarPrep<F>& p, const CochainActionPrep<F>& cp, int alpha, int n,
                     const Vec<F>& fvec) {
    const F& f = p.a.field;
    Vec<F> out(fvec.size(), f.zero());
    for (long long c = 0; c < static_cast<long long>(fvec.size()); ++c) {
        if (f.is_zero(fvec[c])) continue;
        for (const auto& [r, v] : cochain_action_column(p, cp, alpha, n, c))
            out[r] = f.add(out[r], f.mul(v, fvec[c]));
    }
    return out;
}

// ---------------------------------------------------- invariant subcomplex

template <class F>
struct InvariantBasis {
    long long ambient_dim = 0;
    std::vector<SparseCol<F>> vecs; // sorted by lead row, lead coefficient 1
    std::vector<int> net;           // net degree per vector when blocked, else empty

    int size() const { return static_cast<int>(vecs.size()); }
};

namespace detail {

template <class F>
bool columns_monomial(const SparseMat<F>& m) {
    for (const auto& c : m.col)
        if (c.size() != 1) return false;
    return true;
}

} // namespace detail

// Basis of the G-invariant cochains in degree n.  When every group element
// acts by a monomial matrix on A and on M the basis consists of weighted
// orbit sums; otherwise it is the kernel of the stacked (T_alpha - 1).
template <class F>
InvariantBasis<F> invariant_cochain_basis(const BarPrep<F>& p, const CochainActionPrep<F>& cp,
                                          int n) {
    const F& f = p.a.field;
    const FinGroup& g = cp.group;
    int dA = p.a.dim(), dM = p.m.dim;
    long long D = cochain_dim(p, n);
    detail::checked_row(D, "invariant basis");
    InvariantBasis<F> out;
    out.ambient_dim = D;
    if (g.order() == 1) {
        for (long long c = 0; c < D; ++c) out.vecs.push_back({{static_cast<int>(c), f.one()}});
        return out;
    }

    // fast path: all actions monomial (exactly one entry per row of the
    // algebra action and per column of the module action)
    bool monomial = true;
    for (int al = 0; al < g.order() && monomial; ++al) {
        if (al == g.identity) continue;
        monomial = detail::columns_monomial(cp.arows[al]) && detail::columns_monomial(cp.mact[al]);
    }

    if (monomial) {
        MemoryGuard::instance().charge(static_cast<std::size_t>(D) * 2, "invariant orbit scan");
        // image of basis cochain c under alpha: digits map through arows
        // (single entry per column), mu through the module action
        auto image = [&](long long c, int al) -> std::pair<long long, typename F::Elt> {
            long long t = c / dM;
            int mu = static_cast<int>(c % dM);
            auto digs = tuple_digits(t, n, dA);
            long long s = 0;
            auto coeff = f.one();
            for (int l = 0; l < n; ++l) {
                const auto& e = cp.arows[al].col[digs[l]];
                s = s * dA + e[0].first;
                coeff = f.mul(coeff, e[0].second);
            }
            const auto& em = cp.mact[al].col[mu];
            return {s * dM + em[0].first, f.mul(coeff, em[0].second)};
        };
        std::vector<char> seen(D, 0);
        std::vector<typename F::Elt> lam(D, f.zero());
        std::vector<long long> stack, members;
        for (long long root = 0; root < D; ++root) {
            if (seen[root]) continue;
            members.clear();
            stack.assign(1, root);
            seen[root] = 1;
            lam[root] = f.one();
            bool consistent = true;
            while (!stack.empty()) {
                long long c = stack.back();
                stack.pop_back();
                members.push_back(c);
                for (int al = 0; al < g.order(); ++al) {
                    if (al == g.identity) continue;
                    auto [c2, co] = image(c, al);
                    auto want = f.mul(lam[c], co);
                    if (!seen[c2]) {
                        seen[c2] = 1;
                        lam[c2] = want;
                        stack.push_back(c2);
                    } else if (!(lam[c2] == want)) {
                        consistent = false;
                    }
                }
            }
            if (!consistent) continue;
            std::sort(members.begin(), members.end());
            // normalize so the lead (= root = min index) has coefficient 1
            auto scale = f.inv(lam[members.front()]);
            SparseCol<F> vec;
            vec.reserve(members.size());
            for (long long c : members)
                vec.emplace_back(static_cast<int>(c), f.mul(lam[c], scale));
            out.vecs.push_back(std::move(vec));
        }
        std::sort(out.vecs.begin(), out.vecs.end(),
                  [](const auto& a, const auto& b) { return a.front().first < b.front().first; });
        return out;
    }

    // general path: kernel of the stacked (T_alpha - 1) over all alpha
    int nontriv = g.order() - 1;
    if (D > INT32_MAX / nontriv)
        throw ResourceError("invariant basis: stacked action matrix too large");
    Eliminator<F> elim(f, static_cast<int>(D) * nontriv, static_cast<int>(D), true,
                       "invariant cochains degree " + std::to_string(n));
    for (long long c = 0; c < D; ++c) {
        std::vector<std::pair<int, typename F::Elt>> raw;
        int blk = 0;
        for (int al = 0; al < g.order(); ++al) {
            if (al == g.identity) continue;
            for (const auto& [r, v] : cochain_action_column(p, cp, al, n, c))
                raw.emplace_back(blk * static_cast<int>(D) + r, v);
            raw.emplace_back(blk * static_cast<int>(D) + static_cast<int>(c), f.neg(f.one()));
            ++blk;
        }
        elim.add_col(detail::fold_entries(f, std::move(raw)));
    }
    auto kern = rref_canonicalize(f, elim.kernel_basis());
    for (const auto& v : kern) out.vecs.push_back(to_sparse_col(f, v));
    return out;
}

namespace detail {

// Subtract multiples of lead-normalized basis vectors until v vanishes,
// returning the coefficients; a surviving lead outside the basis is an error.
template <class F>
SparseCol<F> express_in_leads(const F& f, const std::vector<SparseCol<F>>& basis,
                              const std::unordered_map<int, int>& lead_to_index, SparseCol<F> v,
                              const char* what) {
    SparseCol<F> coords;
    while (!v.empty()) {
        auto [r, c] = v.front();
        auto it = lead_to_index.find(r);
        if (it == lead_to_index.end())
            throw StructuralError(std::string(what) + ": vector leaves the subspace");
        const auto& b = basis[it->second];
        coords.emplace_back(it->second, c);
        // v -= c * b, merging sorted columns
        SparseCol<F> merged;
        merged.reserve(v.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < v.size() || j < b.size()) {
            if (j == b.size() || (i < v.size() && v[i].first < b[j].first)) {
                merged.push_back(v[i++]);
            } else if (i == v.size() || b[j].first < v[i].first) {
                merged.emplace_back(b[j].first, f.neg(f.mul(c, b[j].second)));
                ++j;
            } else {
                auto s = f.sub(v[i].second, f.mul(c, b[j].second));
                if (!f.is_zero(s)) merged.emplace_back(v[i].first, s);
                ++i, ++j;
            }
        }
        v = std::move(merged);
    }
    std::sort(coords.begin(), coords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return coords;
}

template <class F>
std::unordered_map<int, int> lead_index(const std::vector<SparseCol<F>>& basis) {
    std::unordered_map<int, int> m;
    m.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) m.emplace(basis[i].front().first, i);
    return m;
}

template <class F>
SparseCol<F> accumulate_image(const F& f, const BarPrep<F>& p, int n, const SparseCol<F>& v) {
    std::vector<std::pair<int, typename F::Elt>> raw;
    for (const auto& [c, coeff] : v)
        for (const auto& [r, val] : bar_delta_column(p, n, c))
            raw.emplace_back(r, f.mul(coeff, val));
    return fold_entries(f, std::move(raw));
}

} // namespace detail

// Matrix of the coboundary restricted to the invariant subcomplex, in the
// given bases.  Verifies that the image really lies in the span.
template <class F>
SparseMat<F> restricted_differential(const BarPrep<F>& p, int n, const InvariantBasis<F>& bn,
                                     const InvariantBasis<F>& bn1) {
    const F& f = p.a.field;
    auto leads = detail::lead_index<F>(bn1.vecs);
    SparseMat<F> out{bn1.size(), bn.size(), {}};
    for (const auto& v : bn.vecs)
        out.col.push_back(detail::express_in_leads(f, bn1.vecs, leads,
                                                   detail::accumulate_image(f, p, n, v),
                                                   "restricted coboundary"));
    return out;
}

// ------------------------------------------------------- comparison report

struct ComparisonRow {
    int degree = 0;
    int hh = 0;         // dim H^n(C)
    int hh_inv = 0;     // dim H^n(C^G), the invariant subcomplex
    int hh_classes = 0; // dim (H^n(C))^G, invariant classes
    int ker_theta = 0;
    int im_theta = 0;
    int coker_theta = 0;
};

// Dense coordinates of cocycle vectors relative to [boundaries | reps]; the
// last block gives the class coordinates.
template <class F>
std::vector<Vec<F>> class_coordinates(const F& f, const SubquotientBasis<F>& sq,
                                      const std::vector<Vec<F>>& vectors) {
    int nb = static_cast<int>(sq.boundary_basis.size());
    int s = sq.dim();
    Eliminator<F> elim(f, sq.ambient_dim, nb + s, true, "class coordinates");
    for (const auto& b : sq.boundary_basis) elim.add_col(to_sparse_col(f, b));
    for (const auto& r : sq.representatives) elim.add_col(to_sparse_col(f, r));
    std::vector<Vec<F>> out;
    for (const auto& v : vectors) {
        auto got = elim.express(to_sparse_col(f, v));
        if (!got) throw StructuralError("class coordinates: vector is not a cocycle mod boundaries");
        Vec<F> cls(s, f.zero());
        for (int i = 0; i < s; ++i) cls[i] = (*got)[nb + i];
        out.push_back(std::move(cls));
    }
    return out;
}

// Action of each group element on cohomology classes, as dense matrices in
// the representative basis of sq.
template <class F>
std::vector<std::vector<Vec<F>>> class_action(const BarPrep<F>& p, const CochainActionPrep<F>& cp,
                                              int n, const SubquotientBasis<F>& sq) {
    const F& f = p.a.field;
    std::vector<std::vector<Vec<F>>> mats;
    for (int al = 0; al < cp.group.order(); ++al) {
        std::vector<Vec<F>> imgs;
        for (const auto& r : sq.representatives) imgs.push_back(twist_cochain(p, cp, al, n, r));
        mats.push_back(class_coordinates(f, sq, imgs)); // columns of rho_alpha
    }
    return mats;
}

// Dimension of the fixed space of a class-level action given by columns.
template <class F>
int invariant_class_dim(const F& f, const FinGroup& g,
                        const std::vector<std::vector<Vec<F>>>& mats) {
    int s = mats.empty() || mats[0].empty() ? 0 : static_cast<int>(mats[0].size());
    if (s == 0) return 0;
    int nontriv = g.order() - 1;
    if (nontriv == 0) return s;
    MatBuilder<F> stack(f, s * nontriv, s);
    int blk = 0;
    for (int al = 0; al < g.order(); ++al) {
        if (al == g.identity) continue;
        for (int c = 0; c < s; ++c) {
            for (int r = 0; r < s; ++r) stack.add(blk * s + r, c, mats[al][c][r]);
            stack.add(blk * s + c, c, f.neg(f.one()));
        }
        ++blk;
    }
    auto ki = kernel_image(f, stack.finish(), "class invariants");
    return static_cast<int>(ki.kernel.size());
}

// The full comparison between the cohomology of the invariant subcomplex and
// the invariant classes of the full complex, degree by degree.
template <class F>
std::vector<ComparisonRow> invariant_comparison(const FinAlgebra<F>& a,
                                                const GroupAction<F>& act_a,
                                                const EquivariantBimodule<F>& m, int N) {
    const F& f = a.field;
    auto p = bar_prep(a, m);
    auto cp = cochain_action_prep(p, act_a);
    std::vector<ComparisonRow> rows;

    std::vector<InvariantBasis<F>> inv;
    for (int n = 0; n <= N + 1; ++n) inv.push_back(invariant_cochain_basis(p, cp, n));

    SparseMat<F> din{static_cast<int>(cochain_dim(p, 0)), 0, {}};
    SparseMat<F> rdin{inv[0].size(), 0, {}};
    for (int n = 0; n <= N; ++n) {
        auto dout = hochschild_differential(p, n);
        auto rdout = restricted_differential(p, n, inv[n], inv[n + 1]);
        auto sq = subquotient(f, din, dout, "cochain degree " + std::to_string(n));
        auto rsq = subquotient(f, rdin, rdout, "invariant degree " + std::to_string(n));

        ComparisonRow row;
        row.degree = n;
        row.hh = sq.dim();
        row.hh_inv = rsq.dim();

        // ker Theta = dim(Z_inv meet B) - dim B_inv
        //           = dim Z_inv + rank B - rank [B | Z_inv] - dim B_inv
        Eliminator<F> bz(f, sq.ambient_dim, static_cast<int>(sq.boundary_basis.size()) +
                                                static_cast<int>(rsq.cycle_basis.size()),
                         false, "boundaries with invariant cocycles");
        for (const auto& b : sq.boundary_basis) bz.add_col(to_sparse_col(f, b));
        int rank_b = bz.rank();
        for (const auto& zc : rsq.cycle_basis) {
            // expand invariant coordinates to the ambient space
            std::vector<std::pair<int, typename F::Elt>> raw;
            for (int i = 0; i < inv[n].size(); ++i) {
                if (f.is_zero(zc[i])) continue;
                for (const auto& [r, v] : inv[n].vecs[i]) raw.emplace_back(r, f.mul(zc[i], v));
            }
            bz.add_col(detail::fold_entries(f, std::move(raw)));
        }
        row.ker_theta = static_cast<int>(rsq.cycle_basis.size()) + rank_b - bz.rank() -
                        static_cast<int>(rsq.boundary_basis.size());
        row.im_theta = row.hh_inv - row.ker_theta;

        row.hh_classes = invariant_class_dim(f, cp.group, class_action(p, cp, n, sq));
        row.coker_theta = row.hh_classes - row.im_theta;
        rows.push_back(row);

        din = std::move(dout);
        rdin = std::move(rdout);
    }
    return rows;
}

// ----------------------------------------------------------------- products

// (f cup g)(x, y) = f(x) g(y) via the internal multiplication of M.
template <class F>
Vec<F> cup_product(const FinAlgebra<F>& a, const EquivariantBimodule<F>& m, int i, int j,
                   const Vec<F>& fv, const Vec<F>& gv) {
    const F& f = a.field;
    if (!m.algebra) throw ContractError("cup product needs internal multiplication on M");
    int dA = a.dim(), dM = m.dim;
    long long di = 1, dj = 1;
    for (int l = 0; l < i; ++l) di *= dA;
    for (int l = 0; l < j; ++l) dj *= dA;
    if (static_cast<long long>(fv.size()) != di * dM ||
        static_cast<long long>(gv.size()) != dj * dM)
        throw StructuralError("cup product: cochain sizes do not match degrees");
    Vec<F> out(di * dj * dM, f.zero());
    for (long long cf = 0; cf < static_cast<long long>(fv.size()); ++cf) {
        if (f.is_zero(fv[cf])) continue;
        long long tf = cf / dM;
        int muf = static_cast<int>(cf % dM);
        for (long long cg = 0; cg < static_cast<long long>(gv.size()); ++cg) {
            if (f.is_zero(gv[cg])) continue;
            long long tg = cg / dM;
            int mug = static_cast<int>(cg % dM);
            auto coeff = f.mul(fv[cf], gv[cg]);
            long long s = tf * dj + tg;
            for (const auto& [nu, c] :
                 m.algebra->table[static_cast<std::size_t>(muf) * dM + mug])
                out[s * dM + nu] = f.add(out[s * dM + nu], f.mul(coeff, c));
        }
    }
    return out;
}

// Circle product on C(A, A#kG): g's values are inserted into f's arguments;
// the group part of the inserted value twists the arguments to its right.
// For cocycles f, g with g homogeneous of group degree gamma this satisfies
//   delta(f o g) = -(g cup ^{gamma^{-1}} f) + (-1)^{ij} (f cup g).
template <class F>
Vec<F> circle_product(const SmashAlgebra<F>& ag, int i, int j, const Vec<F>& fv,
                      const Vec<F>& gv) {
    const F& f = ag.base.field;
    int dA = ag.base.dim(), n = ag.group.order(), dM = ag.dim();
    long long di = 1, dj = 1, dr = 1;
    for (int l = 0; l < i; ++l) di *= dA;
    for (int l = 0; l < j; ++l) dj *= dA;
    for (int l = 0; l < i + j - 1; ++l) dr *= dA;
    if (static_cast<long long>(fv.size()) != di * dM ||
        static_cast<long long>(gv.size()) != dj * dM)
        throw StructuralError("circle product: cochain sizes do not match degrees");
    if (i < 1 || j < 1) throw ContractError("circle product needs positive degrees");
    // group the entries of g by the A-part of their value
    std::vector<std::vector<std::tuple<long long, int, typename F::Elt>>> gby(dA);
    for (long long cg = 0; cg < static_cast<long long>(gv.size()); ++cg) {
        if (f.is_zero(gv[cg])) continue;
        long long tg = cg / dM;
        int mug = static_cast<int>(cg % dM);
        gby[mug / n].emplace_back(tg, mug % n, gv[cg]); // (tuple, gamma, coeff)
    }
    // rows of the A-action of gamma, for the twisted trailing arguments
    std::vector<SparseMat<F>> arows;
    for (int al = 0; al < n; ++al) arows.push_back(mat_transpose(f, ag.action.of(al)));
    Vec<F> out(dr * dM, f.zero());
    for (long long cf = 0; cf < static_cast<long long>(fv.size()); ++cf) {
        if (f.is_zero(fv[cf])) continue;
        long long tf = cf / dM;
        int muf = static_cast<int>(cf % dM);
        int bf = muf / n, beta = muf % n;
        auto digs = tuple_digits(tf, i, dA);
        for (int k = 1; k <= i; ++k) {
            bool neg = ((j - 1) * k) % 2 != 0;
            for (const auto& [tg, gamma, cg] : gby[digs[k - 1]]) {
                auto base = f.mul(fv[cf], cg);
                if (neg) base = f.neg(base);
                int nu = bf * n + ag.group.mul(beta, gamma);
                // prefix digits, then g's tuple, then the twisted trailing part
                long long prefix = 0;
                for (int l = 0; l < k - 1; ++l) prefix = prefix * dA + digs[l];
                long long head = prefix * dj + tg;
                std::vector<std::pair<long long, typename F::Elt>> partial{{head, base}};
                for (int l = k; l < i; ++l) {
                    std::vector<std::pair<long long, typename F::Elt>> next;
                    for (const auto& [s, c] : partial)
                        for (const auto& [sl, cl] : arows[gamma].col[digs[l]])
                            next.emplace_back(s * dA + sl, f.mul(c, cl));
                    partial = std::move(next);
                }
                for (const auto& [s, c] : partial)
                    out[s * dM + nu] = f.add(out[s * dM + nu], c);
            }
        }
    }
    return out;
}

// Membership in the image of the degree-(n-1) coboundary.
template <class F>
bool is_coboundary(const BarPrep<F>& p, int n, const Vec<F>& v) {
    const F& f = p.a.field;
    if (n == 0) {
        for (const auto& x : v)
            if (!f.is_zero(x)) return false;
        return true;
    }
    long long cols = cochain_dim(p, n - 1);
    Eliminator<F> elim(f, static_cast<int>(v.size()), static_cast<int>(cols), false,
                       "coboundary membership");
    for (long long c = 0; c < cols; ++c) elim.add_col(bar_delta_column(p, n - 1, c));
    return elim.in_span(to_sparse_col(f, v));
}

// ------------------------------------------------------ net-degree blocking

// For an algebra and module carrying integer gradings compatible with all
// structure maps, the coboundary preserves the net degree
//   net(t, mu) = sum_l zdeg_a(t_l) - zdeg_m(mu),
// so ranks and cohomology split into blocks, computed here one at a time.

template <class F>
struct BlockedLevel {
    long long dim = 0;
    std::vector<int> net;           // per column
    std::vector<int> local;         // index within its block
    std::map<int, int> block_size;  // net -> count
};

template <class F>
BlockedLevel<F> blocked_level(const BarPrep<F>& p, const std::vector<int>& zdeg_a,
                              const std::vector<int>& zdeg_m, int n) {
    int dA = p.a.dim(), dM = p.m.dim;
    BlockedLevel<F> lvl;
    lvl.dim = cochain_dim(p, n);
    detail::checked_row(lvl.dim, "blocked level");
    MemoryGuard::instance().charge(static_cast<std::size_t>(lvl.dim) * 8, "blocked level index");
    lvl.net.resize(lvl.dim);
    lvl.local.resize(lvl.dim);
    for (long long c = 0; c < lvl.dim; ++c) {
        long long t = c / dM;
        int mu = static_cast<int>(c % dM);
        int net = -zdeg_m[mu];
        for (int l = 0; l < n; ++l) {
            net += zdeg_a[static_cast<int>(t % dA)];
            t /= dA;
        }
        lvl.net[c] = net;
        lvl.local[c] = lvl.block_size[net]++;
    }
    return lvl;
}

// Per-net ranks of the coboundary C^n -> C^{n+1}.
template <class F>
std::map<int, int> blocked_delta_ranks(const BarPrep<F>& p, const BlockedLevel<F>& src,
                                       const BlockedLevel<F>& dst, int n) {
    const F& f = p.a.field;
    std::map<int, int> ranks;
    for (const auto& [net, count] : src.block_size) {
        auto rows_it = dst.block_size.find(net);
        int nrows = rows_it == dst.block_size.end() ? 0 : rows_it->second;
        if (nrows == 0) {
            // every column must map to zero; check and record rank 0
            for (long long c = 0; c < src.dim; ++c)
                if (src.net[c] == net && !bar_delta_column(p, n, c).empty())
                    throw StructuralError("grading is not preserved by the coboundary");
            ranks[net] = 0;
            continue;
        }
        Eliminator<F> elim(f, nrows, count, false,
                           "blocked coboundary degree " + std::to_string(n) + " net " +
                               std::to_string(net));
        for (long long c = 0; c < src.dim; ++c) {
            if (src.net[c] != net) continue;
            SparseCol<F> loc;
            for (const auto& [r, v] : bar_delta_column(p, n, c)) {
                if (dst.net[r] != net)
                    throw StructuralError("grading is not preserved by the coboundary");
                loc.emplace_back(dst.local[r], v);
            }
            std::sort(loc.begin(), loc.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            elim.add_col(loc);
        }
        ranks[net] = elim.rank();
    }
    return ranks;
}

struct BlockedDims {
    std::vector<int> total;                  // per degree
    std::vector<std::map<int, int>> by_net;  // per degree, net -> dim
};

// Hochschild dimensions computed block by block.
template <class F>
BlockedDims blocked_hh_dims(const FinAlgebra<F>& a, const EquivariantBimodule<F>& m,
                            const std::vector<int>& zdeg_a, const std::vector<int>& zdeg_m,
                            int N) {
    auto p = bar_prep(a, m);
    BlockedDims out;
    auto prev = blocked_level(p, zdeg_a, zdeg_m, 0);
    std::map<int, int> rank_in; // ranks of the incoming coboundary
    for (int n = 0; n <= N; ++n) {
        auto next = blocked_level(p, zdeg_a, zdeg_m, n + 1);
        auto rank_out = blocked_delta_ranks(p, prev, next, n);
        std::map<int, int> dims;
        int total = 0;
        for (const auto& [net, count] : prev.block_size) {
            int d = count - rank_out[net] - (rank_in.count(net) ? rank_in[net] : 0);
            if (d != 0) dims[net] = d;
            total += d;
        }
        out.total.push_back(total);
        out.by_net.push_back(std::move(dims));
        rank_in = std::move(rank_out);
        prev = std::move(next);
    }
    return out;
}

// Blocked form of the invariant comparison (without the class-level columns,
// which stay feasible only on small complexes): per degree the dimensions of
// H^n, H^n of the invariant subcomplex, and ker/im of Theta.
struct BlockedComparisonRow {
    int degree = 0;
    int hh = 0;
    int hh_inv = 0;
    int ker_theta = 0;
    int im_theta = 0;
};

template <class F>
std::vector<BlockedComparisonRow> blocked_invariant_comparison(
    const FinAlgebra<F>& a, const GroupAction<F>& act_a, const EquivariantBimodule<F>& m,
    const std::vector<int>& zdeg_a, const std::vector<int>& zdeg_m, int N) {
    const F& f = a.field;
    auto p = bar_prep(a, m);
    auto cp = cochain_action_prep(p, act_a);

    auto tag_nets = [&](InvariantBasis<F>& ib, const BlockedLevel<F>& lvl) {
        ib.net.resize(ib.vecs.size());
        for (std::size_t i = 0; i < ib.vecs.size(); ++i) {
            int net = lvl.net[ib.vecs[i].front().first];
            for (const auto& [r, v] : ib.vecs[i])
                if (lvl.net[r] != net)
                    throw StructuralError("group action does not preserve the grading");
            ib.net[i] = net;
        }
    };

    std::vector<BlockedComparisonRow> rows;
    auto prev = blocked_level(p, zdeg_a, zdeg_m, 0);
    auto inv_prev = invariant_cochain_basis(p, cp, 0);
    tag_nets(inv_prev, prev);
    std::map<int, int> rank_in, inv_rank_in;
    // ambient boundary columns of the previous degree, per net, for [B | Z]
    std::map<int, std::vector<SparseCol<F>>> bnd_prev;

    for (int n = 0; n <= N; ++n) {
        auto next = blocked_level(p, zdeg_a, zdeg_m, n + 1);
        auto inv_next = invariant_cochain_basis(p, cp, n + 1);
        tag_nets(inv_next, next);

        auto rank_out = blocked_delta_ranks(p, prev, next, n);
        auto rdelta = restricted_differential(p, n, inv_prev, inv_next);

        // restricted ranks and kernels per net; kernel coordinates refer to
        // the net's own column list
        std::map<int, std::vector<int>> net_cols;
        for (int c = 0; c < rdelta.cols; ++c) net_cols[inv_prev.net[c]].push_back(c);
        std::map<int, int> inv_rank_out, inv_count;
        std::map<int, std::vector<Vec<F>>> zg;
        for (const auto& [net, idxs] : net_cols) {
            inv_count[net] = static_cast<int>(idxs.size());
            Eliminator<F> e(f, rdelta.rows, static_cast<int>(idxs.size()), true,
                            "restricted coboundary degree " + std::to_string(n) + " net " +
                                std::to_string(net));
            for (int c : idxs) e.add_col(rdelta.col[c]);
            inv_rank_out[net] = e.rank();
            for (auto& k : e.kernel_basis()) zg[net].push_back(std::move(k));
        }

        BlockedComparisonRow row;
        row.degree = n;
        for (const auto& [net, count] : prev.block_size) {
            int rin = rank_in.count(net) ? rank_in[net] : 0;
            row.hh += count - rank_out[net] - rin;
        }
        for (const auto& [net, count] : inv_count) {
            int rin = inv_rank_in.count(net) ? inv_rank_in[net] : 0;
            row.hh_inv += count - inv_rank_out[net] - rin;
        }
        // ker Theta per net: dim Z_inv + rank B - rank [B | Z_inv] - dim B_inv
        for (const auto& [net, zvecs] : zg) {
            if (zvecs.empty()) continue;
            int rb = rank_in.count(net) ? rank_in[net] : 0;
            int rbg = inv_rank_in.count(net) ? inv_rank_in[net] : 0;
            const auto& idxs = net_cols.at(net);
            Eliminator<F> bz(f, prev.block_size.at(net),
                             rb + static_cast<int>(zvecs.size()), false,
                             "boundaries with invariant cocycles net " + std::to_string(net));
            if (bnd_prev.count(net))
                for (const auto& c : bnd_prev.at(net)) bz.add_col(c);
            if (bz.rank() != rb)
                throw StructuralError("blocked boundary rank mismatch");
            for (const auto& zc : zvecs) {
                std::vector<std::pair<int, typename F::Elt>> raw;
                for (std::size_t k = 0; k < idxs.size(); ++k) {
                    if (f.is_zero(zc[k])) continue;
                    for (const auto& [r, v] : inv_prev.vecs[idxs[k]])
                        raw.emplace_back(prev.local[r], f.mul(zc[k], v));
                }
                bz.add_col(detail::fold_entries(f, std::move(raw)));
            }
            row.ker_theta += static_cast<int>(zvecs.size()) + rb - bz.rank() - rbg;
        }
        row.im_theta = row.hh_inv - row.ker_theta;
        rows.push_back(row);

        // stash the boundary columns for the next degree's [B | Z]
        bnd_prev.clear();
        for (long long c = 0; c < prev.dim; ++c) {
            auto img = bar_delta_column(p, n, c);
            if (img.empty()) continue;
            int net = prev.net[c];
            SparseCol<F> loc;
            for (const auto& [r, v] : img) loc.emplace_back(next.local[r], v);
            std::sort(loc.begin(), loc.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            bnd_prev[net].push_back(std::move(loc));
        }
        rank_in = std::move(rank_out);
        inv_rank_in = std::move(inv_rank_out);
        prev = std::move(next);
        inv_prev = std::move(inv_next);
    }
    return rows;
}

} // namespace hhsmash
