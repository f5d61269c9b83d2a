#pragma once

// Shared fixture algebras, groups and actions used across the test suite.
// Every algebra here is small enough to be checked by hand; the interesting
// ones are the coverings (dual smash products of graded local algebras) and
// the repetitive quotients, which drive the comparison-map machinery.

#include <array>

#include "hhsmash/constructions.hpp"
#include "hhsmash/hochschild.hpp"

namespace fixtures {

using namespace hhsmash;

inline FinAlgebra<FpField> one_dim(const FpField& f) {
    return make_algebra(f, {"1"}, {SparseCol<FpField>{{0, 1}}}, Vec<FpField>{1});
}

inline FinAlgebra<FpField> kxk(const FpField& f) {
    std::vector<SparseCol<FpField>> mult(4);
    mult[0] = {{0, 1}};
    mult[3] = {{1, 1}};
    return make_algebra(f, {"e0", "e1"}, std::move(mult), Vec<FpField>{1, 1});
}

// k x k x k, three orthogonal idempotents
inline FinAlgebra<FpField> kxkxk(const FpField& f) {
    std::vector<SparseCol<FpField>> mult(9);
    mult[0] = {{0, 1}};
    mult[4] = {{1, 1}};
    mult[8] = {{2, 1}};
    return make_algebra(f, {"e0", "e1", "e2"}, std::move(mult), Vec<FpField>{1, 1, 1});
}

inline FinAlgebra<FpField> dual_numbers(const FpField& f) {
    std::vector<SparseCol<FpField>> mult(4);
    mult[0] = {{0, 1}};
    mult[1] = {{1, 1}};
    mult[2] = {{1, 1}};
    return make_algebra(f, {"1", "x"}, std::move(mult), Vec<FpField>{1, 0});
}

// k[x]/(x^2) graded by C_n with deg x = 1
inline FinAlgebra<FpField> dual_numbers_graded(const FpField& f, int n) {
    std::vector<SparseCol<FpField>> mult(4);
    mult[0] = {{0, 1}};
    mult[1] = {{1, 1}};
    mult[2] = {{1, 1}};
    return make_algebra(f, {"1", "x"}, std::move(mult), Vec<FpField>{1, 0},
                        AlgebraGrading{FinGroup::cyclic(n), {0, 1}});
}

// k<x,y>/(x,y)^2, radical square zero on two generators
inline FinAlgebra<FpField> three_dim(const FpField& f, std::optional<AlgebraGrading> gr = {}) {
    std::vector<SparseCol<FpField>> mult(9);
    mult[0] = {{0, 1}};
    mult[1] = {{1, 1}};
    mult[3] = {{1, 1}};
    mult[2] = {{2, 1}};
    mult[6] = {{2, 1}};
    return make_algebra(f, {"1", "x", "y"}, std::move(mult), Vec<FpField>{1, 0, 0},
                        std::move(gr));
}

// commutative local k[x,y]/(x^2 - y^2, xy), basis 1, x, y, z with z the socle
inline FinAlgebra<FpField> equal_squares(const FpField& f, std::optional<AlgebraGrading> gr = {}) {
    std::vector<SparseCol<FpField>> mult(16);
    mult[0 * 4 + 0] = {{0, 1}};
    mult[0 * 4 + 1] = {{1, 1}};
    mult[1 * 4 + 0] = {{1, 1}};
    mult[0 * 4 + 2] = {{2, 1}};
    mult[2 * 4 + 0] = {{2, 1}};
    mult[0 * 4 + 3] = {{3, 1}};
    mult[3 * 4 + 0] = {{3, 1}};
    mult[1 * 4 + 1] = {{3, 1}};
    mult[2 * 4 + 2] = {{3, 1}};
    return make_algebra(f, {"1", "x", "y", "z"}, std::move(mult), Vec<FpField>{1, 0, 0, 0},
                        std::move(gr));
}

// same shape but x^2 = 0: the generator outside the trivial degree squares
// to zero, which is what the canonical certificate construction needs
inline FinAlgebra<FpField> mixed_squares(const FpField& f, std::optional<AlgebraGrading> gr = {}) {
    std::vector<SparseCol<FpField>> mult(16);
    mult[0 * 4 + 0] = {{0, 1}};
    mult[0 * 4 + 1] = {{1, 1}};
    mult[1 * 4 + 0] = {{1, 1}};
    mult[0 * 4 + 2] = {{2, 1}};
    mult[2 * 4 + 0] = {{2, 1}};
    mult[0 * 4 + 3] = {{3, 1}};
    mult[3 * 4 + 0] = {{3, 1}};
    mult[2 * 4 + 2] = {{3, 1}};
    return make_algebra(f, {"1", "x", "y", "z"}, std::move(mult), Vec<FpField>{1, 0, 0, 0},
                        std::move(gr));
}

// two vertices e0 e1, arrows x0: 0->1, x1: 1->0, loops y0, y1, socle w0, w1;
// written as an explicit table (products compose right to left)
inline FinAlgebra<FpField> two_vertex_quiver(const FpField& f) {
    const int e0 = 0, e1 = 1, x0 = 2, x1 = 3, y0 = 4, y1 = 5, w0 = 6, w1 = 7;
    std::vector<SparseCol<FpField>> mult(64);
    auto s = [&](int a, int b, int c) { mult[a * 8 + b] = {{c, 1}}; };
    s(e0, e0, e0);
    s(e1, e1, e1);
    s(e1, x0, x0);
    s(x0, e0, x0);
    s(e0, x1, x1);
    s(x1, e1, x1);
    s(e0, y0, y0);
    s(y0, e0, y0);
    s(e1, y1, y1);
    s(y1, e1, y1);
    s(e0, w0, w0);
    s(w0, e0, w0);
    s(e1, w1, w1);
    s(w1, e1, w1);
    s(x1, x0, w0);
    s(x0, x1, w1);
    s(y0, y0, w0);
    s(y1, y1, w1);
    Vec<FpField> unit(8, 0);
    unit[e0] = 1;
    unit[e1] = 1;
    return make_algebra(f, {"e0", "e1", "x0", "x1", "y0", "y1", "w0", "w1"}, std::move(mult),
                        std::move(unit));
}

inline FinGroup s3() {
    // symmetric group on 3 letters; index 1 is a 3-cycle, index 3 a transposition
    auto compose = [](std::array<int, 3> a, std::array<int, 3> b) {
        return std::array<int, 3>{a[b[0]], a[b[1]], a[b[2]]};
    };
    std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                          {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    std::vector<std::string> labels{"e", "c", "c2", "t0", "t1", "t2"};
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            auto p = compose(perms[a], perms[b]);
            for (int c = 0; c < 6; ++c)
                if (p == perms[c]) table[a][b] = c;
        }
    return FinGroup::from_table(labels, table);
}

// ------------------------------------------------------ action helpers

// permutation matrix: basis a goes to basis perm[a]
inline SparseMat<FpField> perm_matrix(const FpField& f, const std::vector<int>& perm) {
    MatBuilder<FpField> b(f, static_cast<int>(perm.size()), static_cast<int>(perm.size()));
    for (int a = 0; a < static_cast<int>(perm.size()); ++a) b.add(perm[a], a, f.one());
    return b.finish();
}

inline std::vector<int> pairs_perm(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (auto [i, j] : pairs) {
        perm[i] = j;
        perm[j] = i;
    }
    return perm;
}

inline GroupAction<FpField> trivial_action(const FpField& f, int dim) {
    return GroupAction<FpField>{FinGroup::cyclic(1), dim, {mat_identity(f, dim)}};
}

inline GroupAction<FpField> trivial_action_of(const FpField& f, const FinGroup& g, int dim) {
    GroupAction<FpField> act{g, dim, {}};
    for (int al = 0; al < g.order(); ++al) act.mats.push_back(mat_identity(f, dim));
    return act;
}

// cyclic group of order q acting through a single permutation of the basis
inline GroupAction<FpField> cyclic_perm_action(const FpField& f, int q,
                                               const std::vector<int>& perm) {
    auto g = FinGroup::cyclic(q);
    if (q == 1) return trivial_action(f, static_cast<int>(perm.size()));
    return complete_action(f, g, static_cast<int>(perm.size()),
                           {{1, perm_matrix(f, perm)}});
}

// left translation on the group algebra: e_h goes to e_{gamma h}
inline GroupAction<FpField> regular_module_action(const FpField& f, const FinGroup& g) {
    GroupAction<FpField> act{g, g.order(), {}};
    for (int gamma = 0; gamma < g.order(); ++gamma) {
        MatBuilder<FpField> b(f, g.order(), g.order());
        for (int h = 0; h < g.order(); ++h) b.add(g.mul(gamma, h), h, f.one());
        act.mats.push_back(b.finish());
    }
    return act;
}

// conjugation on the group algebra: e_h goes to e_{gamma h gamma^{-1}}
inline GroupAction<FpField> conjugation_action(const FpField& f, const FinGroup& g) {
    GroupAction<FpField> act{g, g.order(), {}};
    for (int gamma = 0; gamma < g.order(); ++gamma) {
        MatBuilder<FpField> b(f, g.order(), g.order());
        for (int h = 0; h < g.order(); ++h)
            b.add(g.mul(g.mul(gamma, h), g.inv(gamma)), h, f.one());
        act.mats.push_back(b.finish());
    }
    return act;
}

// M = A with the trivial group acting; the plain Hochschild setting
inline EquivariantBimodule<FpField> plain_regular(const FinAlgebra<FpField>& a) {
    return regular_bimodule(a, trivial_action(a.field, a.dim()));
}

// the augmentation module k of a group algebra: every basis element acts as 1
inline EquivariantBimodule<FpField> augmentation_module(const FinAlgebra<FpField>& a) {
    const FpField& f = a.field;
    EquivariantBimodule<FpField> m;
    m.dim = 1;
    MatBuilder<FpField> onem(f, 1, 1);
    onem.add(0, 0, f.one());
    auto one = onem.finish();
    for (int i = 0; i < a.dim(); ++i) {
        m.left.push_back(one);
        m.right.push_back(one);
    }
    m.action = trivial_action(f, 1);
    return m;
}

} // namespace fixtures
