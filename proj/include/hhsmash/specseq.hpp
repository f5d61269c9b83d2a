#pragma once

// Double complex attached to a finite group acting on algebra cochains, and
// the two spectral sequences of its filtrations.
//
// Grid coordinates are (i, j) = (algebra degree, group degree).  Two cell
// models share one interface:
//   bar       cell(i,j) = C^j(G, C^i(A,M)), group tuple digits most
//             significant, so a cell vector is |G|^j stacked algebra cochains;
//   periodic  cell(i,j) = C^i(A,M)^H in a fixed echelon basis, one copy per
//             j (requires cyclic-quotient extension data).
// The vertical differential carries the sign (-1)^i; with that convention
// dh^2 = dv^2 = dh dv + dv dh = 0 exactly and the total differential is
// dh + dv with no further signs.
//
// Pages are computed from the grid directly: the page-r space at (p, q) is
// lead(Z_r)/lead(B_r) where both spans come from joint zigzag systems along
// the diagonal.  Stepwise lifting is not sound (solvability of step t+1
// depends on the choice at step t), so every lift here solves one stacked
// linear system.  Cells outside the window are treated as zero and every
// entry that touched one is flagged unsafe; flagged numbers are the values
// for the truncated rectangle, not for the full complex.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hhsmash/algebra.hpp"
#include "hhsmash/constructions.hpp"
#include "hhsmash/errors.hpp"
#include "hhsmash/hochschild.hpp"
#include "hhsmash/linalg.hpp"

namespace hhsmash {

enum class CellModel { bar, periodic };

// Filtration by group degree (first index = group direction) or by algebra
// degree (first index = algebra direction).
enum class Filtration { by_group, by_algebra };

inline std::string filtration_name(Filtration fi) {
    return fi == Filtration::by_group ? "I" : "II";
}

// ------------------------------------------------------------------- grid

template <class F>
struct DoubleComplexGrid {
    CellModel model = CellModel::bar;
    FinAlgebra<F> a;
    EquivariantBimodule<F> m;
    GroupAction<F> act_a;
    std::optional<CqExtensionData> ext; // periodic model only
    int i_max = 0, j_max = 0;           // inclusive window bounds

    std::vector<std::vector<int>> dims;           // [i][j]
    std::vector<std::vector<SparseMat<F>>> horiz; // [i][j], i < i_max
    std::vector<std::vector<SparseMat<F>>> vert;  // [i][j], j < j_max

    BarPrep<F> prep;
    CochainActionPrep<F> cp; // action of the full group on algebra cochains
    std::vector<InvariantBasis<F>> inv; // periodic: H-invariant basis per i
    std::vector<std::unordered_map<int, int>> inv_leads;

    const F& field() const { return a.field; }
    const FinGroup& group() const { return act_a.group; }

    bool cell_known(int i, int j) const { return i < 0 || j < 0 || (i <= i_max && j <= j_max); }

    int cell_dim(int i, int j) const {
        if (i < 0 || j < 0) return 0;
        if (i > i_max || j > j_max)
            throw WindowError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                              ") lies outside the window");
        return dims[i][j];
    }

    // periodic coordinates <-> ambient cochain vectors
    Vec<F> expand(int i, const Vec<F>& coords) const {
        const F& f = field();
        if (model != CellModel::periodic) return coords;
        if (static_cast<int>(coords.size()) != inv[i].size())
            throw StructuralError("invariant coordinate size mismatch");
        Vec<F> out(static_cast<std::size_t>(inv[i].ambient_dim), f.zero());
        for (int k = 0; k < inv[i].size(); ++k) {
            if (f.is_zero(coords[k])) continue;
            for (const auto& [r, v] : inv[i].vecs[k]) out[r] = f.add(out[r], f.mul(coords[k], v));
        }
        return out;
    }

    Vec<F> restrict_to_cell(int i, const Vec<F>& ambient) const {
        const F& f = field();
        if (model != CellModel::periodic) return ambient;
        auto coords = detail::express_in_leads(f, inv[i].vecs, inv_leads[i],
                                               to_sparse_col(f, ambient), "invariant restriction");
        Vec<F> out(inv[i].size(), f.zero());
        for (const auto& [k, v] : coords) out[k] = v;
        return out;
    }
};

namespace detail {

template <class F>
SparseMat<F> mat_scale_sign(const F& f, SparseMat<F> m, bool negate) {
    if (!negate) return m;
    for (auto& c : m.col)
        for (auto& [r, v] : c) v = f.neg(v);
    return m;
}

template <class F>
void check_grid_identities(const DoubleComplexGrid<F>& g) {
    const F& f = g.field();
    auto at = [](int i, int j) {
        return " at cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (int i = 0; i + 2 <= g.i_max; ++i)
        for (int j = 0; j <= g.j_max; ++j)
            if (!mat_is_zero(mat_mul(f, g.horiz[i + 1][j], g.horiz[i][j])))
                throw StructuralError("horizontal differential fails to square to zero" + at(i, j));
    for (int i = 0; i <= g.i_max; ++i)
        for (int j = 0; j + 2 <= g.j_max; ++j)
            if (!mat_is_zero(mat_mul(f, g.vert[i][j + 1], g.vert[i][j])))
                throw StructuralError("vertical differential fails to square to zero" + at(i, j));
    for (int i = 0; i + 1 <= g.i_max; ++i)
        for (int j = 0; j + 1 <= g.j_max; ++j) {
            auto mixed = mat_add(f, mat_mul(f, g.vert[i + 1][j], g.horiz[i][j]),
                                 mat_mul(f, g.horiz[i][j + 1], g.vert[i][j]));
            if (!mat_is_zero(mixed))
                throw StructuralError("differentials fail to anticommute" + at(i, j));
        }
}

template <class F>
void check_grid_inputs(const FinAlgebra<F>& a, const GroupAction<F>& act_a,
                       const EquivariantBimodule<F>& m, int i_max, int j_max) {
    if (i_max < 0 || j_max < 0) throw ContractError("window bounds must be nonnegative");
    auto rep = validate_bimodule(a, m);
    if (!rep.ok()) throw ContractError("invalid coefficient bimodule: " + rep.joined());
    rep = validate_action(a.field, act_a, &a);
    if (!rep.ok()) throw ContractError("invalid algebra action: " + rep.joined());
    rep = validate_equivariance(a, act_a, m);
    if (!rep.ok()) throw ContractError("module action is not compatible: " + rep.joined());
}

} // namespace detail

// Bar cell model: cell(i,j) = C^j(G, C^i(A,M)).  The vertical differential
// is the group coboundary with coefficients in the cochain module, realized
// as the coboundary of kG with left action ^gamma and trivial right action.
template <class F>
DoubleComplexGrid<F> build_double_complex(const FinAlgebra<F>& a, const GroupAction<F>& act_a,
                                          const EquivariantBimodule<F>& m, int i_max, int j_max) {
    const F& f = a.field;
    detail::check_grid_inputs(a, act_a, m, i_max, j_max);
    auto prep = bar_prep(a, m);
    auto cp = cochain_action_prep(prep, act_a);
    DoubleComplexGrid<F> g{CellModel::bar, a,  m,  act_a,           std::nullopt,  i_max, j_max,
                           {},             {}, {}, std::move(prep), std::move(cp), {},    {}};
    const FinGroup& grp = g.group();
    int n = grp.order();

    g.dims.assign(i_max + 1, std::vector<int>(j_max + 1, 0));
    long long pw = 1;
    std::vector<long long> gpow(j_max + 1);
    for (int j = 0; j <= j_max; ++j) {
        gpow[j] = pw;
        if (pw > (1LL << 40)) throw ResourceError("group degree window is too deep");
        pw *= n;
    }
    for (int i = 0; i <= i_max; ++i) {
        long long di = cochain_dim(g.prep, i);
        for (int j = 0; j <= j_max; ++j) {
            long long d = di * gpow[j];
            int dd = detail::checked_row(d, "grid cell");
            MemoryGuard::instance().charge(static_cast<std::size_t>(d) * 32,
                                           "cell (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") of dimension " +
                                               std::to_string(d));
            g.dims[i][j] = dd;
        }
    }

    // horizontal: the algebra coboundary on each group-tuple slice
    g.horiz.assign(std::max(i_max, 0), {});
    for (int i = 0; i < i_max; ++i) {
        auto block = hochschild_differential(g.prep, i);
        for (int j = 0; j <= j_max; ++j) {
            SparseMat<F> d{g.dims[i + 1][j], g.dims[i][j], {}};
            d.col.reserve(d.cols);
            for (long long t = 0; t < gpow[j]; ++t) {
                long long shift = t * block.rows;
                for (const auto& c : block.col) {
                    SparseCol<F> sc;
                    sc.reserve(c.size());
                    for (const auto& [r, v] : c)
                        sc.emplace_back(detail::checked_row(r + shift, "horizontal block"), v);
                    d.col.push_back(std::move(sc));
                }
            }
            g.horiz[i].push_back(std::move(d));
        }
    }

    // vertical: coboundary of kG with coefficients in C^i(A,M), sign (-1)^i
    auto kg = group_algebra(f, grp);
    g.vert.assign(i_max + 1, {});
    for (int i = 0; i <= i_max; ++i) {
        long long di = cochain_dim(g.prep, i);
        int did = detail::checked_row(di, "cochain module");
        EquivariantBimodule<F> coeff;
        coeff.dim = did;
        for (int al = 0; al < n; ++al) {
            coeff.left.push_back(cochain_module_action(g.prep, g.cp, al, i));
            coeff.right.push_back(mat_identity(f, did));
        }
        coeff.action = trivial_action(f, grp, did);
        auto vprep = bar_prep(kg, coeff);
        for (int j = 0; j < j_max; ++j)
            g.vert[i].push_back(
                detail::mat_scale_sign(f, hochschild_differential(vprep, j), i % 2 != 0));
    }

    detail::check_grid_identities(g);
    return g;
}

// Periodic cell model: cell(i,j) = C^i(A,M)^H, constant in j.  Vertical
// differential alternates (1 - rho) and the rho-norm on invariant
// coordinates, with the sign (-1)^i.
template <class F>
DoubleComplexGrid<F> build_double_complex(const FinAlgebra<F>& a, const GroupAction<F>& act_a,
                                          const EquivariantBimodule<F>& m,
                                          const CqExtensionData& ext, int i_max, int j_max) {
    const F& f = a.field;
    detail::check_grid_inputs(a, act_a, m, i_max, j_max);
    if (ext.group.table != act_a.group.table)
        throw ContractError("extension data group differs from the acting group");
    auto rep = validate_extension_group(ext, f.characteristic());
    if (!rep.ok()) throw StructuralError("invalid extension data: " + rep.joined());

    auto prep = bar_prep(a, m);
    auto cp = cochain_action_prep(prep, act_a);
    DoubleComplexGrid<F> g{CellModel::periodic, a,  m,  act_a,           ext,           i_max,
                           j_max,              {}, {}, {},              std::move(prep),
                           std::move(cp),      {}, {}};
    const FinGroup& grp = g.group();

    auto sub = subgroup_view(grp, ext.subgroup);
    CochainActionPrep<F> cph{sub.group, {}, {}};
    for (int t : sub.to_parent) {
        cph.arows.push_back(g.cp.arows[t]);
        cph.mact.push_back(g.cp.mact[t]);
    }

    g.dims.assign(i_max + 1, std::vector<int>(j_max + 1, 0));
    for (int i = 0; i <= i_max; ++i) {
        g.inv.push_back(invariant_cochain_basis(g.prep, cph, i));
        g.inv_leads.push_back(detail::lead_index<F>(g.inv[i].vecs));
        MemoryGuard::instance().charge(static_cast<std::size_t>(g.inv[i].ambient_dim) * 32,
                                       "invariant cell of algebra degree " + std::to_string(i));
        for (int j = 0; j <= j_max; ++j) g.dims[i][j] = g.inv[i].size();
    }

    g.horiz.assign(std::max(i_max, 0), {});
    for (int i = 0; i < i_max; ++i) {
        auto d = restricted_differential(g.prep, i, g.inv[i], g.inv[i + 1]);
        for (int j = 0; j <= j_max; ++j) g.horiz[i].push_back(d);
    }

    // rho powers act on invariant coordinates; rho^q lies in H so the norm
    // truncates at q terms
    int q = ext.q;
    std::vector<int> rho_pow(q);
    rho_pow[0] = grp.identity;
    for (int t = 1; t < q; ++t) rho_pow[t] = grp.mul(rho_pow[t - 1], ext.rho_lift);
    g.vert.assign(i_max + 1, {});
    for (int i = 0; i <= i_max; ++i) {
        int s = g.inv[i].size();
        std::vector<SparseMat<F>> tw; // action of rho^t in invariant coordinates
        for (int t = 0; t < q; ++t) {
            SparseMat<F> mt{s, s, {}};
            for (int k = 0; k < s; ++k) {
                Vec<F> amb(static_cast<std::size_t>(g.inv[i].ambient_dim), f.zero());
                for (const auto& [r, v] : g.inv[i].vecs[k]) amb[r] = v;
                auto twisted = twist_cochain(g.prep, g.cp, rho_pow[t], i, amb);
                mt.col.push_back(detail::express_in_leads(f, g.inv[i].vecs, g.inv_leads[i],
                                                          to_sparse_col(f, twisted),
                                                          "invariant twist"));
            }
            tw.push_back(std::move(mt));
        }
        SparseMat<F> even{s, s, {}}; // 1 - rho
        SparseMat<F> odd{s, s, {}};  // norm
        even = q > 1 ? mat_add(f, mat_identity(f, s), detail::mat_scale_sign(f, tw[1], true))
                     : SparseMat<F>{s, s, std::vector<SparseCol<F>>(s)};
        odd = mat_identity(f, s);
        for (int t = 1; t < q; ++t) odd = mat_add(f, odd, tw[t]);
        for (int j = 0; j < j_max; ++j)
            g.vert[i].push_back(
                detail::mat_scale_sign(f, j % 2 == 0 ? even : odd, i % 2 != 0));
    }

    detail::check_grid_identities(g);
    return g;
}

// ------------------------------------------------------------------ pages

template <class F>
struct PageEntry {
    int i = 0, j = 0; // (filtration degree, complementary degree)
    bool safe = true; // false when the truncated rectangle differs from the full complex
    SubquotientBasis<F> space;

    int dim() const { return space.dim(); }

    Vec<F> lift(const F& f, const Vec<F>& coords) const {
        if (static_cast<int>(coords.size()) != dim())
            throw StructuralError("page class has wrong coordinate size");
        Vec<F> out(static_cast<std::size_t>(space.ambient_dim), f.zero());
        for (int k = 0; k < dim(); ++k)
            for (int r = 0; r < space.ambient_dim; ++r)
                out[r] = f.add(out[r], f.mul(coords[k], space.representatives[k][r]));
        return out;
    }
};

template <class F>
struct PageTable {
    int r = 0;
    Filtration filtration = Filtration::by_group;
    std::map<std::pair<int, int>, PageEntry<F>> entries;
    // d_r: (i,j) -> (i+r, j-r+1); one dense column of target class
    // coordinates per source representative.  Absent when either side is
    // unknown or not window-safe.
    std::map<std::pair<int, int>, std::vector<Vec<F>>> differentials;

    const PageEntry<F>* entry(int i, int j) const {
        auto it = entries.find({i, j});
        return it == entries.end() ? nullptr : &it->second;
    }
    const std::vector<Vec<F>>* differential(int i, int j) const {
        auto it = differentials.find({i, j});
        return it == differentials.end() ? nullptr : &it->second;
    }
};

namespace detail {

// Page coordinates: p = filtration degree, q = complement.  D0 keeps p and
// raises q; D1 raises p.  Both signs already live in the grid matrices.
template <class F>
struct FiltrationView {
    const DoubleComplexGrid<F>* g;
    Filtration filt;

    int pmax() const { return filt == Filtration::by_group ? g->j_max : g->i_max; }
    int qmax() const { return filt == Filtration::by_group ? g->i_max : g->j_max; }
    bool known(int p, int q) const {
        return p < 0 || q < 0 || (p <= pmax() && q <= qmax());
    }
    int dim_clamped(int p, int q, bool& safe) const {
        if (p < 0 || q < 0) return 0;
        if (p > pmax() || q > qmax()) {
            safe = false;
            return 0;
        }
        auto [i, j] = grid_of(p, q);
        return g->dims[i][j];
    }
    std::pair<int, int> grid_of(int p, int q) const {
        return filt == Filtration::by_group ? std::pair<int, int>{q, p}
                                            : std::pair<int, int>{p, q};
    }
    // valid only when source and target are inside the window
    const SparseMat<F>& d0(int p, int q) const {
        auto [i, j] = grid_of(p, q);
        return filt == Filtration::by_group ? g->horiz[i][j] : g->vert[i][j];
    }
    const SparseMat<F>& d1(int p, int q) const {
        auto [i, j] = grid_of(p, q);
        return filt == Filtration::by_group ? g->vert[i][j] : g->horiz[i][j];
    }
};

template <class F>
void add_block(MatBuilder<F>& b, const SparseMat<F>& m, int row_off, int col_off) {
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.col[c]) b.add(row_off + r, col_off + c, v);
}

// Joint zigzag system: variables x_t in cell (p0+t, q0-t) for 0 <= t < len,
// equations D0 x_0 = 0 (optional) and D1 x_t + D0 x_{t+1} = 0.  Returns the
// projections of the kernel onto x_0 and, if wanted, D1 applied to the final
// component x_{len-1}.
template <class F>
struct ZigzagSpans {
    std::vector<Vec<F>> leads;
    std::vector<Vec<F>> end_images;
};

template <class F>
ZigzagSpans<F> zigzag_spans(const FiltrationView<F>& view, int p0, int q0, int len,
                            bool lead_cycle_eq, bool want_end_images, bool& safe) {
    const F& f = view.g->field();
    ZigzagSpans<F> out;
    if (len <= 0) return out;
    std::vector<int> vdim(len), voff(len);
    int vars = 0;
    for (int t = 0; t < len; ++t) {
        vdim[t] = view.dim_clamped(p0 + t, q0 - t, safe);
        voff[t] = vars;
        vars += vdim[t];
    }
    struct Eq {
        int p, q, rows, off;
    };
    std::vector<Eq> eqs;
    int rows = 0;
    auto push_eq = [&](int p, int q) -> int {
        if (!view.known(p, q)) {
            safe = false;
            return -1;
        }
        bool dummy = true;
        int d = view.dim_clamped(p, q, dummy);
        if (d == 0) return -1;
        eqs.push_back({p, q, d, rows});
        rows += d;
        return static_cast<int>(eqs.size()) - 1;
    };

    MemoryGuard::instance().charge(static_cast<std::size_t>(vars) * 64, "zigzag system");
    std::vector<std::tuple<int, int, const SparseMat<F>*>> blocks; // (eq, var, matrix)
    if (lead_cycle_eq && vdim[0] > 0) {
        int e = push_eq(p0, q0 + 1);
        if (e >= 0) blocks.emplace_back(e, 0, &view.d0(p0, q0));
    }
    for (int t = 0; t + 1 < len; ++t) {
        if (vdim[t] == 0 && vdim[t + 1] == 0) continue;
        int e = push_eq(p0 + t + 1, q0 - t);
        if (e < 0) continue;
        if (vdim[t] > 0) blocks.emplace_back(e, t, &view.d1(p0 + t, q0 - t));
        if (vdim[t + 1] > 0) blocks.emplace_back(e, t + 1, &view.d0(p0 + t + 1, q0 - t - 1));
    }

    MatBuilder<F> sys(f, std::max(rows, 1), vars);
    for (const auto& [e, t, mat] : blocks) add_block(sys, *mat, eqs[e].off, voff[t]);
    auto ki = kernel_image(f, sys.finish(), "zigzag system");

    // end images need the arrow out of the final cell
    const SparseMat<F>* dlast = nullptr;
    if (want_end_images && vdim[len - 1] > 0) {
        int pe = p0 + len - 1, qe = q0 - len + 1;
        if (!view.known(pe + 1, qe)) {
            safe = false;
        } else if (view.known(pe, qe) && pe + 1 <= view.pmax() && qe <= view.qmax() && qe >= 0) {
            bool dummy = true;
            if (view.dim_clamped(pe + 1, qe, dummy) > 0) dlast = &view.d1(pe, qe);
        }
    }
    for (const auto& k : ki.kernel) {
        if (vdim[0] > 0) {
            Vec<F> lead(vdim[0]);
            for (int r = 0; r < vdim[0]; ++r) lead[r] = k[r];
            out.leads.push_back(std::move(lead));
        }
        if (dlast) {
            Vec<F> tail(vdim[len - 1]);
            for (int r = 0; r < vdim[len - 1]; ++r) tail[r] = k[voff[len - 1] + r];
            out.end_images.push_back(mat_apply(f, *dlast, tail));
        }
    }
    return out;
}

} // namespace detail

// All entries of pages E_0..E_R for one filtration, with representative
// cosets, per-entry window flags, and the page differentials where both
// endpoints are known and safe.
template <class F>
std::vector<PageTable<F>> compute_pages(const DoubleComplexGrid<F>& grid, Filtration filt,
                                        int up_to_page) {
    const F& f = grid.field();
    if (up_to_page < 0) throw ContractError("page bound must be nonnegative");
    detail::FiltrationView<F> view{&grid, filt};
    std::vector<PageTable<F>> out;
    for (int r = 0; r <= up_to_page; ++r) {
        PageTable<F> page;
        page.r = r;
        page.filtration = filt;
        for (int p = 0; p <= view.pmax(); ++p) {
            for (int q = 0; q <= view.qmax(); ++q) {
                PageEntry<F> e;
                e.i = p;
                e.j = q;
                bool safe = true;
                bool dummy = true;
                int cd = view.dim_clamped(p, q, dummy);
                std::string label = "page " + std::to_string(r) + " entry (" +
                                    std::to_string(p) + "," + std::to_string(q) + ")";
                std::vector<Vec<F>> zspan, bspan;
                if (r == 0) {
                    for (int k = 0; k < cd; ++k) {
                        Vec<F> v(cd, f.zero());
                        v[k] = f.one();
                        zspan.push_back(std::move(v));
                    }
                } else {
                    auto z = detail::zigzag_spans(view, p, q, r, true, false, safe);
                    zspan = std::move(z.leads);
                    if (r >= 2) {
                        auto b = detail::zigzag_spans(view, p - r + 1, q + r - 2, r - 1, true,
                                                      true, safe);
                        bspan = std::move(b.end_images);
                    }
                    bool bsafe = true;
                    int below = view.dim_clamped(p, q - 1, bsafe);
                    if (below > 0) {
                        const auto& d = view.d0(p, q - 1);
                        for (int c = 0; c < d.cols; ++c) {
                            Vec<F> v(cd, f.zero());
                            for (const auto& [row, val] : d.col[c]) v[row] = val;
                            bspan.push_back(std::move(v));
                        }
                    }
                }
                e.space = subquotient_spans(f, cd, zspan, bspan, label);
                e.safe = safe;
                page.entries.emplace(std::make_pair(p, q), std::move(e));
            }
        }

        // differentials d_r: (p,q) -> (p+r, q-r+1)
        for (auto& [key, src] : page.entries) {
            auto [p, q] = key;
            if (!src.safe || src.dim() == 0) continue;
            int tp = p + r, tq = q - r + 1;
            const PageEntry<F>* tgt = nullptr;
            int tdim = 0;
            if (tq >= 0) {
                tgt = page.entry(tp, tq);
                if (!tgt) continue; // beyond the window: unknown target
                if (!tgt->safe) continue;
                tdim = tgt->dim();
            }
            // The lift solves the rectangle's own equations (cells outside
            // the window contribute nothing); when source and target are both
            // safe this is also the differential of the full complex.
            std::vector<Vec<F>> cols;
            for (const auto& rep : src.space.representatives) {
                Vec<F> image; // ambient vector at the target cell
                if (tq < 0) {
                    cols.emplace_back();
                    continue;
                }
                if (r == 0) {
                    bool dummy2 = true;
                    image = view.dim_clamped(p, q + 1, dummy2) > 0
                                ? mat_apply(f, view.d0(p, q), rep)
                                : Vec<F>();
                } else if (r == 1) {
                    bool dummy2 = true;
                    image = view.dim_clamped(p + 1, q, dummy2) > 0
                                ? mat_apply(f, view.d1(p, q), rep)
                                : Vec<F>();
                } else {
                    // solve the zigzag jointly with x_0 = rep fixed
                    std::vector<int> vdim(r), voff(r);
                    int vars = 0;
                    bool dummy2 = true;
                    for (int t = 1; t < r; ++t) {
                        vdim[t] = view.dim_clamped(p + t, q - t, dummy2);
                        voff[t] = vars;
                        vars += vdim[t];
                    }
                    int rows = 0;
                    std::vector<std::array<int, 3>> eqcell; // (p, q, offset)
                    for (int t = 0; t + 1 < r; ++t) {
                        int d = view.dim_clamped(p + t + 1, q - t, dummy2);
                        eqcell.push_back({p + t + 1, q - t, rows});
                        rows += d;
                    }
                    MatBuilder<F> sys(f, std::max(rows, 1), vars);
                    Vec<F> rhs(static_cast<std::size_t>(std::max(rows, 1)), f.zero());
                    for (int t = 0; t + 1 < r; ++t) {
                        auto [ep, eq_, off] = eqcell[t];
                        int d = view.dim_clamped(ep, eq_, dummy2);
                        if (d == 0) continue;
                        if (t == 0) {
                            auto img = mat_apply(f, view.d1(p, q), rep);
                            for (int rr = 0; rr < d; ++rr) rhs[off + rr] = f.neg(img[rr]);
                        } else if (vdim[t] > 0) {
                            detail::add_block(sys, view.d1(p + t, q - t), off, voff[t]);
                        }
                        if (vdim[t + 1] > 0)
                            detail::add_block(sys, view.d0(p + t + 1, q - t - 1), off,
                                              voff[t + 1]);
                    }
                    auto sol = solve_linear(f, sys.finish(), rhs, "page differential lift");
                    if (!sol.feasible())
                        throw StructuralError("page differential: representative does not lift");
                    if (vdim[r - 1] > 0 && view.dim_clamped(p + r, q - r + 1, dummy2) > 0) {
                        Vec<F> last(vdim[r - 1]);
                        for (int rr = 0; rr < vdim[r - 1]; ++rr)
                            last[rr] = (*sol.x)[voff[r - 1] + rr];
                        image = mat_apply(f, view.d1(p + r - 1, q - r + 1), last);
                    }
                }
                if (image.empty()) {
                    cols.push_back(Vec<F>(static_cast<std::size_t>(tdim), f.zero()));
                } else {
                    cols.push_back(class_coordinates(f, tgt->space, {image})[0]);
                }
            }
            page.differentials.emplace(std::make_pair(p, q), std::move(cols));
        }
        out.push_back(std::move(page));
    }
    return out;
}

// First page from which the entry (p, q) can no longer move: incoming
// differentials start below the first column and outgoing ones end below the
// first row.
inline int stable_page(int p, int q) { return std::max(q + 2, p + 1); }

// ---------------------------------------------------------------- products

// Cup on cells: cell(i1,j1) x cell(i2,j2) -> cell(i1+i2, j1+j2) in grid
// coordinates.  The interchange past the group factor contributes
// (-1)^{j1 i2}; the group part twists the right factor.
template <class F>
Vec<F> bicomplex_cup(const DoubleComplexGrid<F>& g, int i1, int j1, int i2, int j2,
                     const Vec<F>& fv, const Vec<F>& gv) {
    const F& f = g.field();
    if (i1 < 0 || j1 < 0 || i2 < 0 || j2 < 0) throw ContractError("cup degrees must be nonnegative");
    if (!g.cell_known(i1 + i2, j1 + j2))
        throw WindowError("cup product target lies outside the window");
    if (static_cast<int>(fv.size()) != g.cell_dim(i1, j1) ||
        static_cast<int>(gv.size()) != g.cell_dim(i2, j2))
        throw StructuralError("cup factor sizes do not match their cells");
    if (!g.m.algebra) throw ContractError("cup product needs internal multiplication on M");
    bool neg = (j1 % 2 != 0) && (i2 % 2 != 0);

    if (g.model == CellModel::periodic) {
        const auto& ext = *g.ext;
        int q = ext.q;
        Vec<F> fa = g.expand(i1, fv), ga = g.expand(i2, gv);
        std::vector<std::pair<int, int>> terms; // rho exponents on (left, right)
        if (j1 % 2 == 0 && j2 % 2 == 0) {
            terms.emplace_back(0, 0);
        } else if (j1 % 2 == 1 && j2 % 2 == 1) {
            for (int hi = 0; hi < q; ++hi)
                for (int lo = 0; lo < hi; ++lo) terms.emplace_back(hi, lo);
        } else if (j1 % 2 == 0) {
            terms.emplace_back(1, 0);
        } else {
            terms.emplace_back(0, 0);
        }
        std::vector<int> rho_pow(q);
        rho_pow[0] = g.group().identity;
        for (int t = 1; t < q; ++t) rho_pow[t] = g.group().mul(rho_pow[t - 1], ext.rho_lift);
        Vec<F> acc(static_cast<std::size_t>(cochain_dim(g.prep, i1 + i2)), f.zero());
        for (auto [x, y] : terms) {
            const Vec<F>& lf =
                x == 0 ? fa : twist_cochain(g.prep, g.cp, rho_pow[x % q], i1, fa);
            const Vec<F>& rg =
                y == 0 ? ga : twist_cochain(g.prep, g.cp, rho_pow[y % q], i2, ga);
            auto cup = cup_product(g.a, g.m, i1, i2, lf, rg);
            for (std::size_t r = 0; r < acc.size(); ++r) acc[r] = f.add(acc[r], cup[r]);
        }
        if (neg)
            for (auto& v : acc) v = f.neg(v);
        return g.restrict_to_cell(i1 + i2, acc);
    }

    int n = g.group().order();
    long long d1 = cochain_dim(g.prep, i1), d2 = cochain_dim(g.prep, i2);
    long long dt = cochain_dim(g.prep, i1 + i2);
    long long pw1 = 1, pw2 = 1;
    for (int l = 0; l < j1; ++l) pw1 *= n;
    for (int l = 0; l < j2; ++l) pw2 *= n;
    Vec<F> out(static_cast<std::size_t>(g.cell_dim(i1 + i2, j1 + j2)), f.zero());
    std::vector<Vec<F>> gslices(pw2);
    for (long long t2 = 0; t2 < pw2; ++t2) {
        gslices[t2].assign(gv.begin() + t2 * d2, gv.begin() + (t2 + 1) * d2);
    }
    std::map<int, std::vector<Vec<F>>> twisted; // alpha -> twisted right slices
    for (long long t1 = 0; t1 < pw1; ++t1) {
        Vec<F> fslice(fv.begin() + t1 * d1, fv.begin() + (t1 + 1) * d1);
        bool zero = true;
        for (const auto& v : fslice)
            if (!f.is_zero(v)) {
                zero = false;
                break;
            }
        if (zero) continue;
        int alpha = g.group().identity;
        for (int dig : tuple_digits(t1, j1, n)) alpha = g.group().mul(alpha, dig);
        auto it = twisted.find(alpha);
        if (it == twisted.end()) {
            std::vector<Vec<F>> tws(pw2);
            for (long long t2 = 0; t2 < pw2; ++t2)
                tws[t2] = alpha == g.group().identity
                              ? gslices[t2]
                              : twist_cochain(g.prep, g.cp, alpha, i2, gslices[t2]);
            it = twisted.emplace(alpha, std::move(tws)).first;
        }
        for (long long t2 = 0; t2 < pw2; ++t2) {
            auto cup = cup_product(g.a, g.m, i1, i2, fslice, it->second[t2]);
            long long base = (t1 * pw2 + t2) * dt;
            for (long long r = 0; r < dt; ++r) {
                auto v = neg ? f.neg(cup[r]) : cup[r];
                out[base + r] = f.add(out[base + r], v);
            }
        }
    }
    return out;
}

// A class on a page: entry coordinates plus coordinates in the entry's
// representative basis.
template <class F>
struct PageClass {
    int i = 0, j = 0;
    Vec<F> coords;
};

template <class F>
PageClass<F> page_product(const DoubleComplexGrid<F>& grid, const PageTable<F>& page,
                          const PageClass<F>& x, const PageClass<F>& y) {
    const F& f = grid.field();
    const PageEntry<F>* ex = page.entry(x.i, x.j);
    const PageEntry<F>* ey = page.entry(y.i, y.j);
    if (!ex || !ey) throw ContractError("page product: factor entry is not on the page");
    const PageEntry<F>* et = page.entry(x.i + y.i, x.j + y.j);
    if (!et) throw WindowError("page product: target entry lies outside the window");
    if (!ex->safe || !ey->safe || !et->safe)
        throw WindowError("page product: entries are not window-safe");
    Vec<F> vx = ex->lift(f, x.coords);
    Vec<F> vy = ey->lift(f, y.coords);
    detail::FiltrationView<F> view{&grid, page.filtration};
    auto [ia, ja] = view.grid_of(x.i, x.j);
    auto [ib, jb] = view.grid_of(y.i, y.j);
    Vec<F> w = bicomplex_cup(grid, ia, ja, ib, jb, vx, vy);
    return PageClass<F>{x.i + y.i, x.j + y.j, class_coordinates(f, et->space, {w})[0]};
}

// The class of 1_M at the corner entry; multiplying by it is the identity.
template <class F>
PageClass<F> unit_page_class(const DoubleComplexGrid<F>& grid, const PageTable<F>& page) {
    const F& f = grid.field();
    if (!grid.m.algebra) throw ContractError("unit class needs internal multiplication on M");
    const PageEntry<F>* e = page.entry(0, 0);
    if (!e) throw WindowError("unit class: corner entry is missing");
    Vec<F> unit = grid.m.algebra->unit;
    if (grid.model == CellModel::periodic) unit = grid.restrict_to_cell(0, unit);
    return PageClass<F>{0, 0, class_coordinates(f, e->space, {unit})[0]};
}

// ------------------------------------------------------------- convergence

struct ConvergenceDiagonal {
    int n = 0;
    std::optional<int> seq_by_group;   // sum over the stable diagonal
    std::optional<int> seq_by_algebra; //
    std::optional<int> oracle;         // independent Hochschild dimensions
    bool agree = true;                 // among the values present
};

struct ConvergenceReport {
    std::vector<ConvergenceDiagonal> diagonals;
    bool ok = true;
};

// dim HH^n(AG, M) computed with no group theory at all: the coboundary
// complex of the smash algebra itself.  Ground truth for both sequences.
template <class F>
std::vector<int> direct_oracle(const SmashAlgebra<F>& ag, const EquivariantBimodule<F>& m_ag,
                               int up_to) {
    if (m_ag.action.group.order() != 1)
        throw ContractError("direct oracle expects plain bimodule coefficients");
    auto rep = validate_bimodule(ag.alg, m_ag);
    if (!rep.ok()) throw ContractError("invalid oracle coefficients: " + rep.joined());
    long long d = m_ag.dim;
    for (int l = 0; l <= up_to; ++l) {
        d *= ag.dim();
        if (d > (1LL << 28))
            throw ResourceError("direct oracle: cochain space in degree " + std::to_string(l + 1) +
                                " has dimension " + std::to_string(d) +
                                "; use a smaller degree bound");
    }
    return hh_dims(ag.alg, m_ag, up_to);
}

template <class F>
std::vector<int> direct_oracle(const SmashAlgebra<F>& ag, int up_to) {
    const F& f = ag.base.field;
    auto m = regular_bimodule(ag.alg, trivial_action(f, FinGroup::cyclic(1), ag.dim()));
    return direct_oracle(ag, m, up_to);
}

// Sum of the stable diagonal per total degree for both filtrations, against
// the oracle.  A diagonal is reported only when every entry on it is
// window-safe at its stable page.
template <class F>
ConvergenceReport convergence_report(const std::vector<PageTable<F>>& pages_by_group,
                                     const std::vector<PageTable<F>>& pages_by_algebra,
                                     const std::vector<int>& oracle_dims, int up_to_n) {
    auto diagonal_sum = [](const std::vector<PageTable<F>>& pages, int n) -> std::optional<int> {
        int sum = 0;
        for (int p = 0; p <= n; ++p) {
            int q = n - p;
            int r = stable_page(p, q);
            if (r >= static_cast<int>(pages.size())) return std::nullopt;
            const PageEntry<F>* e = pages[r].entry(p, q);
            if (!e || !e->safe) return std::nullopt;
            sum += e->dim();
        }
        return sum;
    };
    ConvergenceReport out;
    for (int n = 0; n <= up_to_n; ++n) {
        ConvergenceDiagonal d;
        d.n = n;
        if (!pages_by_group.empty()) d.seq_by_group = diagonal_sum(pages_by_group, n);
        if (!pages_by_algebra.empty()) d.seq_by_algebra = diagonal_sum(pages_by_algebra, n);
        if (n < static_cast<int>(oracle_dims.size())) d.oracle = oracle_dims[n];
        std::vector<int> present;
        for (const auto& v : {d.seq_by_group, d.seq_by_algebra, d.oracle})
            if (v) present.push_back(*v);
        for (int v : present)
            if (v != present.front()) d.agree = false;
        if (!d.agree) out.ok = false;
        out.diagonals.push_back(d);
    }
    return out;
}

// ------------------------------------------------------------------ export

template <class F>
std::string page_table_json(const PageTable<F>& page) {
    std::ostringstream os;
    os << "{\"page\":" << page.r << ",\"filtration\":\"" << filtration_name(page.filtration)
       << "\",\"entries\":[";
    bool first = true;
    for (const auto& [key, e] : page.entries) {
        if (!first) os << ",";
        first = false;
        os << "{\"i\":" << e.i << ",\"j\":" << e.j << ",\"dim\":" << e.dim() << ",\"safe\":"
           << (e.safe ? "true" : "false") << "}";
    }
    os << "]}";
    return os.str();
}

template <class F>
std::string pages_json(const std::vector<PageTable<F>>& pages) {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < pages.size(); ++k) {
        if (k) os << ",";
        os << page_table_json(pages[k]);
    }
    os << "]";
    return os.str();
}

} // namespace hhsmash
