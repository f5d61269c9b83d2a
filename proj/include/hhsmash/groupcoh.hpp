#pragma once

// Group cohomology over kG.  Two concrete projective resolutions of the
// trivial module are supported: the bar resolution (free, degree-n basis
// G^{n+1}, the leftmost tensor factor carries the action) and, for a
// C_q-extension with p-regular kernel H, the periodic resolution with
// Q_n = (kG)e_H in the coset basis b_t = rho^t e_H.  Hom_{kG}(Q_n, M) is
// taken through the structural isomorphism of each kind (free basis /
// e_H-image), so computing cohomology with both models and comparing dims
// is a genuine resolution-independence check rather than a tautology.
// Cup products route mechanically through the stored comultiplication.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhsmash/algebra.hpp"
#include "hhsmash/constructions.hpp"
#include "hhsmash/errors.hpp"
#include "hhsmash/field.hpp"
#include "hhsmash/hochschild.hpp"
#include "hhsmash/linalg.hpp"

namespace hhsmash {

// ------------------------------------------------------------ e_H projector

// e_H = (sum_{alpha in H} alpha)/|H| acting through the given module.
template <class F>
SparseMat<F> averaging_idempotent(const F& f, const GroupAction<F>& act,
                                  const std::vector<int>& subgroup) {
    if (subgroup.empty()) throw ContractError("averaging over an empty subgroup");
    auto p = f.characteristic();
    if (p > 0 && subgroup.size() % p == 0)
        throw ContractError("e_H = (sum over H)/|H| is undefined: characteristic " +
                            std::to_string(p) + " divides |H| = " +
                            std::to_string(subgroup.size()));
    auto scale = f.inv(f.from_int(static_cast<long long>(subgroup.size())));
    MatBuilder<F> b(f, act.dim, act.dim);
    for (int alpha : subgroup) {
        const auto& m = act.of(alpha);
        for (int j = 0; j < m.cols; ++j)
            for (const auto& [r, v] : m.col[j]) b.add(r, j, f.mul(scale, v));
    }
    return b.finish();
}

// -------------------------------------------------------------- resolutions

// A projective resolution of the trivial module, concrete enough to hand to
// Hom_{kG}(-, M): per-degree dims, G-permutation on the distinguished basis,
// differentials, augmentation and a comultiplication.  The periodic kind
// stores only the extension data; matrices expand lazily per degree.
template <class F>
struct KGResolution {
    enum class Kind { bar, periodic };
    Kind kind = Kind::bar;
    F field;
    FinGroup group;
    int up_to = 0;
    std::vector<long long> dims; // module dim of Q_n for n = 0..up_to

    // periodic data
    std::optional<CqExtensionData> ext;
    std::vector<int> coset_of; // group element -> j with gamma in rho^j H
    std::vector<int> rho_pow;  // t -> element index of rho^t, t = 0..q-1

    long long module_dim(int n) const {
        if (n < 0) throw ContractError("negative resolution degree");
        if (kind == Kind::periodic) return ext->q;
        if (n > up_to) throw ContractError("resolution degree exceeds the stored window");
        return dims[n];
    }

    // permutation action of gamma on the degree-n basis
    long long act_on_basis(int gamma, int n, long long idx) const {
        if (kind == Kind::periodic)
            return coset_of[group.mul(gamma, rho_pow[static_cast<int>(idx)])];
        long long pw = module_dim(n) / group.order();
        int a0 = static_cast<int>(idx / pw);
        return static_cast<long long>(group.mul(gamma, a0)) * pw + idx % pw;
    }

    SparseMat<F> differential(int n) const;
    Vec<F> augmentation() const; // functional on Q_0; all ones in both kinds
    // component of Delta landing in Q_i (x) Q_{n-i}; rows indexed a*dim(n-i)+b
    SparseMat<F> comultiplication(int n, int i) const;
};

template <class F>
SparseMat<F> KGResolution<F>::differential(int n) const {
    const F& f = field;
    if (n < 1) throw ContractError("differential needs degree >= 1");
    if (kind == Kind::periodic) {
        // d(b_t[n]) = N b_t for even n, (1 - rho) b_t for odd n
        int q = ext->q;
        MatBuilder<F> b(f, q, q);
        if (n % 2 == 0) {
            for (int t = 0; t < q; ++t)
                for (int i = 0; i < q; ++i) b.add((t + i) % q, t, f.one());
        } else {
            for (int t = 0; t < q; ++t) {
                b.add(t, t, f.one());
                b.add((t + 1) % q, t, f.neg(f.one()));
            }
        }
        return b.finish();
    }
    if (n > up_to) throw ContractError("resolution degree exceeds the stored window");
    int go = group.order();
    long long cols = dims[n], rows = dims[n - 1];
    detail::checked_row(cols, "resolution differential");
    MatBuilder<F> b(f, static_cast<int>(rows), static_cast<int>(cols));
    for (long long c = 0; c < cols; ++c) {
        auto digs = tuple_digits(c, n + 1, go);
        // adjacent multiplications, then the drop of the last factor
        for (int i = 0; i < n; ++i) {
            long long r = 0;
            for (int l = 0; l < i; ++l) r = r * go + digs[l];
            r = r * go + group.mul(digs[i], digs[i + 1]);
            for (int l = i + 2; l <= n; ++l) r = r * go + digs[l];
            auto v = (i % 2 == 0) ? f.one() : f.neg(f.one());
            b.add(static_cast<int>(r), static_cast<int>(c), v);
        }
        auto v = (n % 2 == 0) ? f.one() : f.neg(f.one());
        b.add(static_cast<int>(c / go), static_cast<int>(c), v);
    }
    return b.finish();
}

template <class F>
Vec<F> KGResolution<F>::augmentation() const {
    // sum_alpha p_alpha: every distinguished basis vector of Q_0 maps to 1
    return Vec<F>(static_cast<std::size_t>(module_dim(0)), field.one());
}

template <class F>
SparseMat<F> KGResolution<F>::comultiplication(int n, int i) const {
    const F& f = field;
    if (n < 0 || i < 0 || i > n) throw ContractError("bad comultiplication component");
    int j = n - i;
    long long dimL = module_dim(i), dimR = module_dim(j);
    long long rows = dimL * dimR;
    detail::checked_row(rows, "comultiplication");
    long long cols = module_dim(n);
    detail::checked_row(cols, "comultiplication");
    MatBuilder<F> b(f, static_cast<int>(rows), static_cast<int>(cols));
    if (kind == Kind::periodic) {
        int q = ext->q;
        // terms on the generator column b_0, as rho-exponent pairs
        std::vector<std::pair<int, int>> terms;
        if (i % 2 == 0 && j % 2 == 0) {
            terms.emplace_back(0, 0);
        } else if (i % 2 == 1 && j % 2 == 1) {
            // even total degree: strictly decreasing exponent pairs
            for (int hi = 0; hi < q; ++hi)
                for (int lo = 0; lo < hi; ++lo) terms.emplace_back(hi, lo);
        } else if (i % 2 == 0) {
            // even (x) odd: rho sits on the even factor
            terms.emplace_back(1, 0);
        } else {
            terms.emplace_back(0, 0);
        }
        for (int t = 0; t < q; ++t)
            for (auto [x, y] : terms)
                b.add(((x + t) % q) * q + ((y + t) % q), t, f.one());
        return b.finish();
    }
    int go = group.order();
    for (long long c = 0; c < cols; ++c) {
        auto digs = tuple_digits(c, n + 1, go);
        long long left = 0;
        int prod = digs[0];
        for (int l = 0; l <= i; ++l) {
            left = left * go + digs[l];
            if (l > 0) prod = group.mul(prod, digs[l]);
        }
        long long right = prod;
        for (int l = i + 1; l <= n; ++l) right = right * go + digs[l];
        b.add(detail::checked_row(left * dimR + right, "comultiplication"),
              static_cast<int>(c), f.one());
    }
    return b.finish();
}

template <class F>
KGResolution<F> bar_resolution_trivial(const F& f, const FinGroup& g, int up_to) {
    if (up_to < 0) throw ContractError("resolution length must be nonnegative");
    KGResolution<F> res{KGResolution<F>::Kind::bar, f, g, up_to, {}, {}, {}, {}};
    long long d = 1;
    std::size_t entry = sizeof(std::pair<int, typename F::Elt>);
    for (int n = 0; n <= up_to; ++n) {
        if (d > (1LL << 40) / g.order())
            throw ResourceError("bar resolution degree " + std::to_string(n) + " overflows");
        d *= g.order();
        res.dims.push_back(d);
        // densest stored object per degree: the differential, n+1 entries/col
        MemoryGuard::instance().charge(static_cast<std::size_t>(d) * (n + 1) * entry,
                                       "bar resolution degree " + std::to_string(n));
    }
    return res;
}

template <class F>
KGResolution<F> periodic_resolution(const F& f, const CqExtensionData& ext, int up_to) {
    if (up_to < 0) throw ContractError("resolution length must be nonnegative");
    auto p = f.characteristic();
    if (p > 0 && ext.subgroup.size() % p == 0)
        throw ContractError("e_H = (sum over H)/|H| is undefined: characteristic " +
                            std::to_string(p) + " divides |H| = " +
                            std::to_string(ext.subgroup.size()));
    auto rep = validate_extension_group(ext, p);
    if (!rep.ok()) throw StructuralError("invalid extension data: " + rep.joined());
    KGResolution<F> res{KGResolution<F>::Kind::periodic, f,  ext.group, up_to,
                        {},                              ext, {},        {}};
    res.dims.assign(up_to + 1, ext.q);
    // coset decomposition along powers of the lift
    res.rho_pow.assign(ext.q, ext.group.identity);
    for (int t = 1; t < ext.q; ++t)
        res.rho_pow[t] = ext.group.mul(res.rho_pow[t - 1], ext.rho_lift);
    res.coset_of.assign(ext.group.order(), -1);
    for (int t = 0; t < ext.q; ++t)
        for (int h : ext.subgroup) {
            int e = ext.group.mul(res.rho_pow[t], h);
            if (res.coset_of[e] >= 0 && res.coset_of[e] != t)
                throw StructuralError("coset decomposition is inconsistent (internal)");
            res.coset_of[e] = t;
        }
    for (int e = 0; e < ext.group.order(); ++e)
        if (res.coset_of[e] < 0)
            throw StructuralError("coset decomposition does not cover the group (internal)");
    return res;
}

// ------------------------------------------------- resolution-level checks

namespace detail {

// (X (x) 1) applied to a component matrix whose rows are indexed a*dimR + b
template <class F>
SparseMat<F> kron_left_apply(const F& f, const SparseMat<F>& x, long long dim_r,
                             const SparseMat<F>& comp, bool negate) {
    MatBuilder<F> b(f, static_cast<int>(x.rows * dim_r), comp.cols);
    for (int c = 0; c < comp.cols; ++c)
        for (const auto& [rc, v] : comp.col[c]) {
            long long a = rc / dim_r, rest = rc % dim_r;
            for (const auto& [a2, xv] : x.col[static_cast<int>(a)]) {
                auto val = f.mul(v, xv);
                b.add(static_cast<int>(a2 * dim_r + rest), c, negate ? f.neg(val) : val);
            }
        }
    return b.finish();
}

template <class F>
SparseMat<F> kron_right_apply(const F& f, long long dim_l, const SparseMat<F>& y,
                              const SparseMat<F>& comp, bool negate) {
    MatBuilder<F> b(f, static_cast<int>(dim_l * y.rows), comp.cols);
    for (int c = 0; c < comp.cols; ++c)
        for (const auto& [rc, v] : comp.col[c]) {
            long long a = rc / y.cols, rest = rc % y.cols;
            for (const auto& [b2, yv] : y.col[static_cast<int>(rest)]) {
                auto val = f.mul(v, yv);
                b.add(static_cast<int>(a * y.rows + b2), c, negate ? f.neg(val) : val);
            }
        }
    return b.finish();
}

} // namespace detail

// Checks d.d = 0, mu.d_1 = 0, G-equivariance of d, exactness by rank
// counting, the counit identity, and the chain-map identity for the stored
// comultiplication with the tensor differential
// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy.
template <class F>
ValidationReport validate_resolution(const KGResolution<F>& res, int deg_cap = -1) {
    ValidationReport rep;
    const F& f = res.field;
    int N = deg_cap < 0 ? res.up_to : std::min(deg_cap, res.up_to);
    Vec<F> mu = res.augmentation();
    bool mu_nonzero = false;
    for (const auto& v : mu)
        if (!f.is_zero(v)) mu_nonzero = true;
    rep.require(mu_nonzero, "augmentation vanishes");
    std::vector<SparseMat<F>> d(1); // d[n] for n >= 1
    for (int n = 1; n <= N; ++n) d.push_back(res.differential(n));
    if (N >= 1) {
        bool ok = true;
        for (int c = 0; c < d[1].cols && ok; ++c) {
            auto acc = f.zero();
            for (const auto& [r, v] : d[1].col[c]) acc = f.add(acc, f.mul(mu[r], v));
            ok = f.is_zero(acc);
        }
        rep.require(ok, "augmentation does not annihilate d_1");
    }
    for (int n = 2; n <= N; ++n)
        rep.require(mat_is_zero(mat_mul(f, d[n - 1], d[n])),
                    "d.d is nonzero entering degree " + std::to_string(n));
    // equivariance: gamma . d(col) = d(gamma . col) on basis permutations
    for (int n = 1; n <= N; ++n) {
        bool ok = true;
        for (int gamma = 0; gamma < res.group.order() && ok; ++gamma)
            for (long long c = 0; c < d[n].cols && ok; ++c) {
                SparseCol<F> moved;
                for (const auto& [r, v] : d[n].col[c])
                    moved.emplace_back(
                        static_cast<int>(res.act_on_basis(gamma, n - 1, r)), v);
                std::sort(moved.begin(), moved.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                long long cp = res.act_on_basis(gamma, n, c);
                ok = moved == d[n].col[cp];
            }
        rep.require(ok, "differential is not equivariant at degree " + std::to_string(n));
    }
    // exactness by rank counting (resolutions are checked, not assumed)
    std::vector<int> rk(1, 0);
    for (int n = 1; n <= N; ++n)
        rk.push_back(rank(f, d[n], "resolution differential " + std::to_string(n)));
    if (N >= 1)
        rep.require(rk[1] == res.module_dim(0) - 1,
                    "complex is not exact at degree 0 (augmentation kernel mismatch)");
    for (int n = 1; n + 1 <= N; ++n)
        rep.require(rk[n + 1] == res.module_dim(n) - rk[n],
                    "complex is not exact at degree " + std::to_string(n));
    // counit: (mu (x) mu) . Delta_(0,0) = mu
    {
        auto comp = res.comultiplication(0, 0);
        long long d0 = res.module_dim(0);
        bool ok = true;
        for (int c = 0; c < comp.cols && ok; ++c) {
            auto acc = f.zero();
            for (const auto& [r, v] : comp.col[c])
                acc = f.add(acc, f.mul(f.mul(mu[r / d0], mu[r % d0]), v));
            ok = acc == mu[c];
        }
        rep.require(ok, "counit identity fails");
    }
    // chain map, component against component
    for (int n = 1; n <= N; ++n)
        for (int i = 0; i + 1 <= n; ++i) {
            auto lhs = mat_mul(f, res.comultiplication(n - 1, i), d[n]);
            SparseMat<F> rhs{static_cast<int>(res.module_dim(i) * res.module_dim(n - 1 - i)),
                             static_cast<int>(res.module_dim(n)),
                             {}};
            rhs.col.assign(rhs.cols, {});
            bool neg = (i % 2) != 0; // Koszul sign rides the x (x) dy term
            rhs = mat_add(f, rhs,
                          detail::kron_left_apply(f, d[i + 1], res.module_dim(n - 1 - i),
                                                  res.comultiplication(n, i + 1), false));
            rhs = mat_add(f, rhs,
                          detail::kron_right_apply(f, res.module_dim(i), d[n - i],
                                                   res.comultiplication(n, i), neg));
            rep.require(lhs.col == rhs.col, "comultiplication chain identity fails at (" +
                                                std::to_string(n) + "," + std::to_string(i) +
                                                ")");
            if (!rep.ok() && rep.failures.size() > 16) return rep;
        }
    return rep;
}

// ------------------------------------------------------------ cochain model

// Hom_{kG}(Q_n, M) through the structural isomorphism of the resolution
// kind.  bar: M-valued functions on G^n, index t*dim(M)+mu with the leftmost
// argument as the most significant digit.  periodic: the subspace e_H M
// (equal to M^H), in a canonical basis.  Degrees beyond the stored window
// are fine: the cochain differentials come from closed formulas.
template <class F>
struct GroupCochainModel {
    KGResolution<F> res;
    GroupAction<F> module;
    std::vector<Vec<F>> fixed_basis; // periodic only: basis of e_H M
    std::optional<BarPrep<F>> prep;  // bar only

    bool periodic() const { return res.kind == KGResolution<F>::Kind::periodic; }

    long long dim(int n) const {
        if (periodic()) return static_cast<long long>(fixed_basis.size());
        long long d = module.dim;
        for (int l = 0; l < n; ++l) {
            if (d > (1LL << 40) / res.group.order())
                throw ResourceError("group cochain space overflows");
            d *= res.group.order();
        }
        return d;
    }

    SparseMat<F> delta(int n) const {
        const F& f = res.field;
        if (!periodic()) return hochschild_differential(*prep, n);
        // operators alternate 1 - rho and the norm along the lift powers;
        // both preserve M^H because H is normal
        int dm = module.dim;
        int q = res.ext->q;
        Eliminator<F> basis(f, dm, static_cast<int>(fixed_basis.size()), true,
                            "invariant basis");
        for (const auto& v : fixed_basis) {
            SparseCol<F> col;
            for (int r = 0; r < dm; ++r)
                if (!f.is_zero(v[r])) col.emplace_back(r, v[r]);
            basis.add_col(col);
        }
        MatBuilder<F> out(f, static_cast<int>(fixed_basis.size()),
                          static_cast<int>(fixed_basis.size()));
        for (std::size_t c = 0; c < fixed_basis.size(); ++c) {
            Vec<F> w(dm, f.zero());
            if (n % 2 == 0) {
                auto rv = mat_apply(f, module.of(res.ext->rho_lift), fixed_basis[c]);
                for (int r = 0; r < dm; ++r) w[r] = f.sub(fixed_basis[c][r], rv[r]);
            } else {
                for (int t = 0; t < q; ++t) {
                    auto rv = mat_apply(f, module.of(res.rho_pow[t]), fixed_basis[c]);
                    for (int r = 0; r < dm; ++r) w[r] = f.add(w[r], rv[r]);
                }
            }
            SparseCol<F> col;
            for (int r = 0; r < dm; ++r)
                if (!f.is_zero(w[r])) col.emplace_back(r, w[r]);
            auto coords = basis.express(col);
            if (!coords)
                throw StructuralError("operator escapes the H-invariant subspace (internal)");
            for (std::size_t r = 0; r < coords->size(); ++r)
                if (!f.is_zero((*coords)[r]))
                    out.add(static_cast<int>(r), static_cast<int>(c), (*coords)[r]);
        }
        return out.finish();
    }

    // value of the cochain u on the degree-n basis vector of Q_n, in M-coords
    Vec<F> value_at(int n, const Vec<F>& u, long long basis_idx) const {
        const F& f = res.field;
        int dm = module.dim;
        if (periodic()) {
            Vec<F> val(dm, f.zero());
            for (std::size_t c = 0; c < fixed_basis.size(); ++c)
                for (int r = 0; r < dm; ++r)
                    val[r] = f.add(val[r], f.mul(u[c], fixed_basis[c][r]));
            return mat_apply(f, module.of(res.rho_pow[static_cast<int>(basis_idx)]), val);
        }
        long long pw = dim(n) / dm; // |G|^n
        int a0 = static_cast<int>(basis_idx / pw);
        long long t = basis_idx % pw;
        Vec<F> val(dm, f.zero());
        for (int muc = 0; muc < dm; ++muc) val[muc] = u[t * dm + muc];
        return mat_apply(f, module.of(a0), val);
    }

    // express an M-vector known to lie in e_H M in the fixed basis
    Vec<F> invariant_coords(const Vec<F>& val) const {
        const F& f = res.field;
        Eliminator<F> basis(f, module.dim, static_cast<int>(fixed_basis.size()), true,
                            "invariant basis");
        for (const auto& v : fixed_basis) {
            SparseCol<F> col;
            for (int r = 0; r < module.dim; ++r)
                if (!f.is_zero(v[r])) col.emplace_back(r, v[r]);
            basis.add_col(col);
        }
        SparseCol<F> col;
        for (int r = 0; r < module.dim; ++r)
            if (!f.is_zero(val[r])) col.emplace_back(r, val[r]);
        auto coords = basis.express(col);
        if (!coords) throw StructuralError("vector is not H-invariant");
        return *coords;
    }
};

template <class F>
GroupCochainModel<F> group_cochain_model(const KGResolution<F>& res,
                                         const GroupAction<F>& module) {
    if (module.group.table != res.group.table)
        throw ContractError("module group differs from the resolution group");
    GroupCochainModel<F> m{res, module, {}, {}};
    const F& f = res.field;
    if (res.kind == KGResolution<F>::Kind::periodic) {
        auto eh = averaging_idempotent(f, module, res.ext->subgroup);
        auto ki = kernel_image(f, eh, "e_H image");
        m.fixed_basis = rref_canonicalize(f, std::move(ki.image));
    } else {
        // the induced coboundary on M-valued functions of group tuples is the
        // bar coboundary with: left = the module action, interior = the group
        // multiplication table, trailing coefficient action = identity
        auto kg = group_algebra(f, res.group);
        EquivariantBimodule<F> bim;
        bim.dim = module.dim;
        for (int a = 0; a < res.group.order(); ++a) {
            bim.left.push_back(module.of(a));
            bim.right.push_back(mat_identity(f, module.dim));
        }
        bim.action = trivial_action(f, res.group, module.dim);
        m.prep = bar_prep(kg, bim);
    }
    return m;
}

// -------------------------------------------------------------- cohomology

template <class F>
struct GroupCohomologySlice {
    int degree = 0;
    SubquotientBasis<F> space;
};

template <class F>
std::vector<GroupCohomologySlice<F>> group_cohomology(const KGResolution<F>& res,
                                                      const GroupAction<F>& module,
                                                      int up_to) {
    auto model = group_cochain_model(res, module);
    std::vector<GroupCohomologySlice<F>> out;
    SparseMat<F> din{static_cast<int>(model.dim(0)), 0, {}};
    for (int n = 0; n <= up_to; ++n) {
        auto dout = model.delta(n);
        out.push_back({n, subquotient(res.field, din, dout,
                                      "group cochain degree " + std::to_string(n))});
        din = std::move(dout);
    }
    return out;
}

template <class F>
std::vector<int> group_coh_dims(const KGResolution<F>& res, const GroupAction<F>& module,
                                int up_to) {
    std::vector<int> dims;
    for (const auto& s : group_cohomology(res, module, up_to)) dims.push_back(s.space.dim());
    return dims;
}

// --------------------------------------------------------------------- cup

// f smile g = mul . (f (x) g) . Delta, through the stored comultiplication.
// mul is a binary operation on M-coordinate vectors (the module-algebra
// multiplication; any bilinear map works and need not be associative).
template <class F, class Mul>
Vec<F> group_cup(const GroupCochainModel<F>& model, int n1, const Vec<F>& u, int n2,
                 const Vec<F>& v, Mul&& mul) {
    const F& f = model.res.field;
    int n = n1 + n2;
    auto comp = model.res.comultiplication(n, n1);
    long long dim_r = model.res.module_dim(n2);
    if (model.periodic()) {
        // the value on the generator b_0 determines the invariant cochain
        Vec<F> val(model.module.dim, f.zero());
        for (const auto& [r, cv] : comp.col[0]) {
            auto prod = mul(model.value_at(n1, u, r / dim_r), model.value_at(n2, v, r % dim_r));
            for (int t = 0; t < model.module.dim; ++t)
                val[t] = f.add(val[t], f.mul(cv, prod[t]));
        }
        return model.invariant_coords(val);
    }
    int dm = model.module.dim;
    long long pw = 1;
    for (int l = 0; l < n; ++l) pw *= model.res.group.order();
    Vec<F> out(static_cast<std::size_t>(model.dim(n)), f.zero());
    for (long long t = 0; t < pw; ++t) {
        long long col = static_cast<long long>(model.res.group.identity) * pw + t;
        for (const auto& [r, cv] : comp.col[col]) {
            auto prod = mul(model.value_at(n1, u, r / dim_r), model.value_at(n2, v, r % dim_r));
            for (int muc = 0; muc < dm; ++muc)
                out[t * dm + muc] = f.add(out[t * dm + muc], f.mul(cv, prod[muc]));
        }
    }
    return out;
}

} // namespace hhsmash
