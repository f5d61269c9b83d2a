#include <catch2/catch_amalgamated.hpp>

#include "hhsmash/constructions.hpp"

using namespace hhsmash;

namespace {

FinAlgebra<FpField> kxk(const FpField& f) {
    std::vector<SparseCol<FpField>> mult(4);
    mult[0] = {{0, 1}};
    mult[3] = {{1, 1}};
    return make_algebra(f, {"e0", "e1"}, std::move(mult), Vec<FpField>{1, 1});
}

FinAlgebra<FpField> dual_numbers_graded(const FpField& f) {
    // k[x]/(x^2) with deg x the generator of C2
    auto c2 = FinGroup::cyclic(2);
    std::vector<SparseCol<FpField>> mult(4);
    mult[0] = {{0, 1}};
    mult[1] = {{1, 1}};
    mult[2] = {{1, 1}};
    return make_algebra(f, {"1", "x"}, std::move(mult), Vec<FpField>{1, 0},
                        AlgebraGrading{c2, {0, 1}});
}

GroupAction<FpField> swap_action(const FpField& f, const FinGroup& c2) {
    MatBuilder<FpField> swap(f, 2, 2);
    swap.add(0, 1, 1);
    swap.add(1, 0, 1);
    return complete_action(f, c2, 2, {{1, swap.finish()}});
}

} // namespace

TEST_CASE("smash of the ground field recovers the group algebra", "[constructions]") {
    FpField f(7);
    auto c3 = FinGroup::cyclic(3);
    std::vector<SparseCol<FpField>> mult{{{0, 1}}};
    auto k = make_algebra(f, {"1"}, std::move(mult), Vec<FpField>{1});
    auto sm = build_smash(k, c3, trivial_action(f, c3, 1));
    auto kg = group_algebra(f, c3);
    REQUIRE(sm.dim() == 3);
    REQUIRE(validate_algebra(kg).ok());
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            REQUIRE(sm.alg.basis_product(a, b) == kg.basis_product(a, b));
    // canonical grading by the group component
    REQUIRE(sm.alg.grading.has_value());
    REQUIRE(sm.alg.grading->degree == std::vector<int>{0, 1, 2});
}

TEST_CASE("smash of two points with the swap", "[constructions]") {
    FpField f(2);
    auto c2 = FinGroup::cyclic(2);
    auto a = kxk(f);
    auto sm = build_smash(a, c2, swap_action(f, c2));
    REQUIRE(sm.dim() == 4);
    // (e0#g)(e0#e) = (e0 . ^g e0)#g = (e0 e1)#g = 0
    REQUIRE(sm.alg.basis_product(sm.pair_index(0, 1), sm.pair_index(0, 0)).empty());
    // (e0#g)(e1#e) = (e0 . e0)#g = e0#g
    REQUIRE(sm.alg.basis_product(sm.pair_index(0, 1), sm.pair_index(1, 0)) ==
            SparseCol<FpField>{{sm.pair_index(0, 1), 1}});
    // unit is 1#e
    Vec<FpField> unit(4, 0);
    unit[sm.pair_index(0, 0)] = 1;
    unit[sm.pair_index(1, 0)] = 1;
    REQUIRE(sm.alg.unit == unit);

    // a non-automorphism is rejected up front
    MatBuilder<FpField> proj(f, 2, 2);
    proj.add(0, 0, 1);
    GroupAction<FpField> bad{c2, 2, {mat_identity(f, 2), proj.finish()}};
    REQUIRE_THROWS_AS(build_smash(a, c2, bad), StructuralError);
}

TEST_CASE("dual smash of the graded dual numbers", "[constructions]") {
    FpField f(2);
    auto b = dual_numbers_graded(f);
    auto ds = build_dual_smash(b);
    REQUIRE(ds.dim() == 4);
    // (1@al)(1@be) = [al == be] 1@al
    REQUIRE(ds.alg.basis_product(ds.pair_index(0, 0), ds.pair_index(0, 0)) ==
            SparseCol<FpField>{{ds.pair_index(0, 0), 1}});
    REQUIRE(ds.alg.basis_product(ds.pair_index(0, 0), ds.pair_index(0, 1)).empty());
    // (1@g)(x@e) = x@e since deg x = g = g.e^{-1}
    REQUIRE(ds.alg.basis_product(ds.pair_index(0, 1), ds.pair_index(1, 0)) ==
            SparseCol<FpField>{{ds.pair_index(1, 0), 1}});
    // (1@e)(x@e) = 0 since deg x != e
    REQUIRE(ds.alg.basis_product(ds.pair_index(0, 0), ds.pair_index(1, 0)).empty());
    // natural action sends 1@e to 1@g
    Vec<FpField> v(4, 0);
    v[ds.pair_index(0, 0)] = 1;
    auto moved = mat_apply(f, ds.natural_action.of(1), v);
    Vec<FpField> want(4, 0);
    want[ds.pair_index(0, 1)] = 1;
    REQUIRE(moved == want);

    // a grading is required
    FpField f3(3);
    REQUIRE_THROWS_AS(build_dual_smash(kxk(f3)), StructuralError);
}

TEST_CASE("component-vanishing test outside the modular part", "[constructions]") {
    FpField f(2);
    // x.x = 0 in degree g.g: singular over H = {e}
    REQUIRE(is_cq_singular(dual_numbers_graded(f), {0}));
    // the group algebra kC2 graded by itself has g.g = e nonzero
    auto c2 = FinGroup::cyclic(2);
    auto kg = group_algebra(f, c2);
    kg.grading = AlgebraGrading{c2, {0, 1}};
    REQUIRE(validate_algebra(kg).ok());
    REQUIRE_FALSE(is_cq_singular(kg, {0}));
}

TEST_CASE("trivial extension of the ground field", "[constructions]") {
    FpField f(3);
    std::vector<SparseCol<FpField>> mult{{{0, 1}}};
    auto k = make_algebra(f, {"1"}, std::move(mult), Vec<FpField>{1});
    auto tr = build_trivial_extension(k);
    REQUIRE(tr.dim() == 2);
    REQUIRE(tr.z_degree == std::vector<int>{0, 1});
    // 1 . 1^ = 1^, 1^ . 1^ = 0
    REQUIRE(tr.alg.basis_product(0, 1) == SparseCol<FpField>{{1, 1}});
    REQUIRE(tr.alg.basis_product(1, 1).empty());
}

TEST_CASE("trivial extension of two points", "[constructions]") {
    FpField f(2);
    auto tr = build_trivial_extension(kxk(f));
    REQUIRE(tr.dim() == 4);
    // e0 . e0^ = e0^, e1 . e0^ = 0, e0^ . e0 = e0^
    REQUIRE(tr.alg.basis_product(0, 2) == SparseCol<FpField>{{2, 1}});
    REQUIRE(tr.alg.basis_product(1, 2).empty());
    REQUIRE(tr.alg.basis_product(2, 0) == SparseCol<FpField>{{2, 1}});
    REQUIRE(tr.alg.basis_product(2, 3).empty());
}

TEST_CASE("repetitive quotient at n = 1 is the trivial extension", "[constructions]") {
    FpField f(2);
    std::vector<SparseCol<FpField>> mult{{{0, 1}}};
    auto k = make_algebra(f, {"1"}, std::move(mult), Vec<FpField>{1});
    auto rq = build_repetitive_quotient(k, 1);
    REQUIRE(rq.dim() == 2);
    auto tr = build_trivial_extension(k);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            REQUIRE(rq.alg().basis_product(i, j) == tr.alg.basis_product(i, j));
}

TEST_CASE("repetitive quotient dimensions and Nakayama action", "[constructions]") {
    FpField f(2);
    auto rq = build_repetitive_quotient(kxk(f), 2);
    REQUIRE(rq.dim() == 8); // 2 . dim(k x k) . 2
    REQUIRE(rq.cn_action.mats.size() == 2);
    // nu shifts the idempotent index down by one
    Vec<FpField> v(8, 0);
    v[rq.cover.pair_index(0, 0)] = 1;
    auto moved = mat_apply(f, rq.cn_action.of(1), v);
    Vec<FpField> want(8, 0);
    want[rq.cover.pair_index(0, 1)] = 1;
    REQUIRE(moved == want);
    // inherited grading marks the dual half
    for (int i = 0; i < 8; ++i) {
        int tri = i / 2;
        REQUIRE(rq.z_degree[i] == rq.tr.z_degree[tri]);
    }
    // the underlying graded algebra is singular off degree zero
    REQUIRE(is_cq_singular(rq.cover.base, {0}));

    FpField f3(3);
    auto rq3 = build_repetitive_quotient(kxk(f3), 3);
    REQUIRE(rq3.dim() == 12);
    REQUIRE(rq3.cn_action.group.order() == 3);
}

TEST_CASE("restriction of the smash regular bimodule", "[constructions]") {
    FpField f(2);
    auto c2 = FinGroup::cyclic(2);
    auto a = kxk(f);
    auto sm = build_smash(a, c2, swap_action(f, c2));
    auto m = smash_regular_module(sm);
    REQUIRE(m.dim == 4);
    REQUIRE(validate_bimodule(a, m).ok());
    REQUIRE(validate_equivariance(a, sm.action, m).ok());
    // conjugation: ^g(e0#e) = e1#e
    Vec<FpField> v(4, 0);
    v[sm.pair_index(0, 0)] = 1;
    auto moved = mat_apply(f, m.action.of(1), v);
    Vec<FpField> want(4, 0);
    want[sm.pair_index(1, 0)] = 1;
    REQUIRE(moved == want);
    // ^g(e0#g) = (1#g)(e0#g)(1#g) = e1#g
    Vec<FpField> w(4, 0);
    w[sm.pair_index(0, 1)] = 1;
    auto moved2 = mat_apply(f, m.action.of(1), w);
    Vec<FpField> want2(4, 0);
    want2[sm.pair_index(1, 1)] = 1;
    REQUIRE(moved2 == want2);
}
