#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "hhsmash/groupcoh.hpp"

using namespace hhsmash;
using namespace fixtures;

namespace {

int mat_rank(const FpField& f, const SparseMat<FpField>& m) {
    Eliminator<FpField> e(f, m.rows, m.cols, false, "rank");
    for (const auto& c : m.col) e.add_col(c);
    return e.rank();
}

bool in_image(const FpField& f, const SparseMat<FpField>& m, const Vec<FpField>& v) {
    Eliminator<FpField> e(f, m.rows, m.cols + 1, false, "image membership");
    for (const auto& c : m.col) e.add_col(c);
    SparseCol<FpField> col;
    for (int r = 0; r < static_cast<int>(v.size()); ++r)
        if (!f.is_zero(v[r])) col.emplace_back(r, v[r]);
    return e.in_span(col);
}

bool is_zero_vec(const FpField& f, const Vec<FpField>& v) {
    for (const auto& x : v)
        if (!f.is_zero(x)) return false;
    return true;
}

Vec<FpField> basis_vec(const FpField& f, long long dim, long long idx) {
    Vec<FpField> v(static_cast<std::size_t>(dim), f.zero());
    v[idx] = f.one();
    return v;
}

CqExtensionData ext_of(const FinGroup& g, std::vector<int> h, int q, int rho) {
    return CqExtensionData{g, std::move(h), q, rho};
}

// the truncated polynomial algebra k[y]/(y^3) with the order-3 automorphism
// y -> y + y^2; a C_3-module algebra in characteristic 3
std::pair<FinAlgebra<FpField>, GroupAction<FpField>> truncated_cubic(const FpField& f) {
    std::vector<SparseCol<FpField>> mult(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i + j <= 2) mult[i * 3 + j] = {{i + j, f.one()}};
    Vec<FpField> unit = {f.one(), f.zero(), f.zero()};
    auto a = make_algebra(f, {"1", "y", "y2"}, std::move(mult), std::move(unit));
    MatBuilder<FpField> rho(f, 3, 3);
    rho.add(0, 0, f.one());
    rho.add(1, 1, f.one());
    rho.add(2, 1, f.one());
    rho.add(2, 2, f.one());
    auto act = complete_action(f, FinGroup::cyclic(3), 3, {{1, rho.finish()}});
    REQUIRE(validate_action(f, act, &a).ok());
    return {a, act};
}

} // namespace

TEST_CASE("bar resolution of the trivial module", "[groupcoh]") {
    FpField f2(2), f3(3);

    SECTION("dims are |G|^{n+1} and the small differential is the textbook one") {
        auto g = FinGroup::cyclic(2);
        auto res = bar_resolution_trivial(f2, g, 3);
        REQUIRE(res.dims == std::vector<long long>{2, 4, 8, 16});
        // d(a0 (x) a1) = a0 a1 - a0, columns indexed a0*2+a1
        auto d1 = res.differential(1);
        REQUIRE(d1.col[0].empty());                         // e(x)e
        REQUIRE(d1.col[1] == SparseCol<FpField>{{0, 1}, {1, 1}}); // e(x)g: g - e
        REQUIRE(d1.col[2].empty());                         // g(x)e
        REQUIRE(d1.col[3] == SparseCol<FpField>{{0, 1}, {1, 1}}); // g(x)g: e - g
    }

    SECTION("signed differential over F3") {
        auto g = FinGroup::cyclic(3);
        auto res = bar_resolution_trivial(f3, g, 2);
        auto d1 = res.differential(1);
        // col (g (x) g) = e_{g^2} - e_g
        REQUIRE(d1.col[1 * 3 + 1] == SparseCol<FpField>{{1, 2}, {2, 1}});
    }

    SECTION("full validation, including the comultiplication identities") {
        REQUIRE(validate_resolution(bar_resolution_trivial(f2, FinGroup::cyclic(2), 4)).ok());
        REQUIRE(validate_resolution(bar_resolution_trivial(f3, FinGroup::cyclic(3), 3)).ok());
        REQUIRE(validate_resolution(bar_resolution_trivial(f2, s3(), 3)).ok());
        REQUIRE(validate_resolution(bar_resolution_trivial(f3, s3(), 2)).ok());
    }

    SECTION("trivial group collapses") {
        auto res = bar_resolution_trivial(f2, FinGroup::cyclic(1), 4);
        REQUIRE(res.dims == std::vector<long long>{1, 1, 1, 1, 1});
        REQUIRE(validate_resolution(res).ok());
        auto m = trivial_action_of(f2, FinGroup::cyclic(1), 1);
        REQUIRE(group_coh_dims(res, m, 3) == std::vector<int>{1, 0, 0, 0});
    }

    SECTION("resource guard rejects absurd windows") {
        REQUIRE_THROWS_AS(bar_resolution_trivial(f2, s3(), 20), ResourceError);
    }
}

TEST_CASE("periodic resolution for cyclic quotients", "[groupcoh]") {
    FpField f2(2), f3(3);

    SECTION("C2: both step matrices coincide over F2") {
        auto res = periodic_resolution(f2, ext_of(FinGroup::cyclic(2), {0}, 2, 1), 6);
        auto odd = res.differential(1), even = res.differential(2);
        REQUIRE(odd.col == even.col);
        REQUIRE(odd.col[0] == SparseCol<FpField>{{0, 1}, {1, 1}});
        REQUIRE(odd.col[1] == SparseCol<FpField>{{0, 1}, {1, 1}});
        REQUIRE(validate_resolution(res).ok());
    }

    SECTION("C4 and C3: alternating norm and 1 - rho steps") {
        auto res4 = periodic_resolution(f2, ext_of(FinGroup::cyclic(4), {0}, 4, 1), 6);
        auto odd = res4.differential(3);
        REQUIRE(odd.col[0] == SparseCol<FpField>{{0, 1}, {1, 1}});
        REQUIRE(mat_rank(f2, odd) == 3);
        REQUIRE(mat_rank(f2, res4.differential(2)) == 1);
        REQUIRE(validate_resolution(res4).ok());

        auto res3 = periodic_resolution(f3, ext_of(FinGroup::cyclic(3), {0}, 3, 1), 6);
        REQUIRE(res3.differential(1).col[0] == SparseCol<FpField>{{0, 1}, {1, 2}});
        REQUIRE(validate_resolution(res3).ok());
    }

    SECTION("nontrivial kernels: C6 both ways and S3 over F2") {
        auto c6 = FinGroup::cyclic(6);
        REQUIRE(validate_resolution(periodic_resolution(f2, ext_of(c6, {0, 2, 4}, 2, 1), 5)).ok());
        REQUIRE(validate_resolution(periodic_resolution(f3, ext_of(c6, {0, 3}, 3, 1), 5)).ok());
        REQUIRE(validate_resolution(periodic_resolution(f2, ext_of(s3(), {0, 1, 2}, 2, 3), 5)).ok());
    }

    SECTION("degenerate quotient q = 1 is allowed when p does not divide |G|") {
        auto res = periodic_resolution(f3, ext_of(FinGroup::cyclic(2), {0, 1}, 1, 0), 4);
        REQUIRE(res.module_dim(0) == 1);
        REQUIRE(validate_resolution(res).ok());
    }

    SECTION("augmentation is the coefficient sum") {
        auto res = periodic_resolution(f2, ext_of(s3(), {0, 1, 2}, 2, 3), 2);
        REQUIRE(res.augmentation() == Vec<FpField>{1, 1});
    }

    SECTION("rejections") {
        // characteristic divides |H|
        REQUIRE_THROWS_AS(
            periodic_resolution(f2, ext_of(FinGroup::cyclic(4), {0, 2}, 2, 1), 3),
            ContractError);
        // H not normal in S3
        REQUIRE_THROWS_AS(periodic_resolution(f3, ext_of(s3(), {0, 3}, 3, 1), 3),
                          StructuralError);
        // q not a power of p
        REQUIRE_THROWS_AS(
            periodic_resolution(f3, ext_of(FinGroup::cyclic(2), {0}, 2, 1), 3),
            StructuralError);
    }
}

TEST_CASE("group cohomology dims and resolution independence", "[groupcoh]") {
    FpField f2(2), f3(3);
    const std::vector<int> ones{1, 1, 1, 1, 1};

    SECTION("trivial coefficients, bar resolution") {
        auto run = [&](const FpField& f, const FinGroup& g) {
            auto res = bar_resolution_trivial(f, g, 4);
            return group_coh_dims(res, trivial_action_of(f, g, 1), 4);
        };
        REQUIRE(run(f2, FinGroup::cyclic(2)) == ones);
        REQUIRE(run(f3, FinGroup::cyclic(3)) == ones);
        REQUIRE(run(f2, FinGroup::cyclic(4)) == ones);
        REQUIRE(run(f2, FinGroup::cyclic(6)) == ones);
        REQUIRE(run(f2, s3()) == ones);
        REQUIRE(run(f3, s3()) == std::vector<int>{1, 0, 0, 1, 1});
    }

    SECTION("periodic model agrees with the bar model") {
        auto both = [&](const FpField& f, const CqExtensionData& ext,
                        const GroupAction<FpField>& m, int up_to) {
            auto bar = group_coh_dims(bar_resolution_trivial(f, ext.group, up_to), m, up_to);
            auto per = group_coh_dims(periodic_resolution(f, ext, up_to), m, up_to);
            REQUIRE(bar == per);
            return bar;
        };
        auto c6 = FinGroup::cyclic(6);
        REQUIRE(both(f2, ext_of(FinGroup::cyclic(2), {0}, 2, 1),
                     trivial_action_of(f2, FinGroup::cyclic(2), 1), 4) == ones);
        REQUIRE(both(f2, ext_of(FinGroup::cyclic(4), {0}, 4, 1),
                     trivial_action_of(f2, FinGroup::cyclic(4), 1), 4) == ones);
        REQUIRE(both(f3, ext_of(FinGroup::cyclic(3), {0}, 3, 1),
                     trivial_action_of(f3, FinGroup::cyclic(3), 1), 4) == ones);
        both(f2, ext_of(c6, {0, 2, 4}, 2, 1), trivial_action_of(f2, c6, 1), 4);
        both(f3, ext_of(c6, {0, 3}, 3, 1), trivial_action_of(f3, c6, 1), 4);
        REQUIRE(both(f2, ext_of(s3(), {0, 1, 2}, 2, 3), trivial_action_of(f2, s3(), 1), 4) ==
                ones);
        // free coefficients are acyclic in both models
        REQUIRE(both(f2, ext_of(FinGroup::cyclic(4), {0}, 4, 1),
                     regular_module_action(f2, FinGroup::cyclic(4)), 4) ==
                std::vector<int>{1, 0, 0, 0, 0});
        // conjugation coefficients with a nontrivial kernel H
        both(f2, ext_of(s3(), {0, 1, 2}, 2, 3), conjugation_action(f2, s3()), 3);
        // coprime order through the degenerate q = 1 resolution
        REQUIRE(both(f3, ext_of(FinGroup::cyclic(2), {0, 1}, 1, 0),
                     cyclic_perm_action(f3, 2, {1, 0}), 4) ==
                std::vector<int>{1, 0, 0, 0, 0});
    }

    SECTION("semisimple coefficients vanish in positive degrees") {
        auto c3 = FinGroup::cyclic(3);
        REQUIRE(group_coh_dims(bar_resolution_trivial(f2, c3, 3),
                               trivial_action_of(f2, c3, 1), 3) ==
                std::vector<int>{1, 0, 0, 0});
        REQUIRE(group_coh_dims(bar_resolution_trivial(f2, s3(), 3),
                               regular_module_action(f2, s3()), 3) ==
                std::vector<int>{1, 0, 0, 0});
    }

    SECTION("degree zero is the invariant subspace; periodicity over C_q") {
        // a C4-module that factors through an order-2 unipotent matrix
        MatBuilder<FpField> jb(f2, 2, 2);
        jb.add(0, 0, f2.one());
        jb.add(0, 1, f2.one());
        jb.add(1, 1, f2.one());
        auto c4 = FinGroup::cyclic(4);
        auto act = complete_action(f2, c4, 2, {{1, jb.finish()}});
        auto bar = group_coh_dims(bar_resolution_trivial(f2, c4, 4), act, 4);
        auto per = group_coh_dims(periodic_resolution(f2, ext_of(c4, {0}, 4, 1), 4), act, 4);
        REQUIRE(bar == per);
        REQUIRE(bar[0] == static_cast<int>(invariant_subspace(f2, act, {1}).size()));
        for (int n = 2; n <= 4; ++n) REQUIRE(bar[n] == bar[1]);
    }

    SECTION("representatives are cocycles in both models") {
        auto g = s3();
        auto module = conjugation_action(f2, g);
        for (bool periodic : {false, true}) {
            auto res = periodic ? periodic_resolution(f2, ext_of(g, {0, 1, 2}, 2, 3), 3)
                                : bar_resolution_trivial(f2, g, 3);
            auto model = group_cochain_model(res, module);
            auto slices = group_cohomology(res, module, 2);
            for (const auto& s : slices) {
                auto d = model.delta(s.degree);
                for (const auto& rep : s.space.representatives)
                    REQUIRE(is_zero_vec(f2, mat_apply(f2, d, rep)));
            }
        }
    }
}

TEST_CASE("averaging idempotent", "[groupcoh]") {
    FpField f2(2), f3(3);

    SECTION("idempotent, central for a normal subgroup, image of coset size") {
        auto g = s3();
        auto act = regular_module_action(f2, g);
        auto eh = averaging_idempotent(f2, act, {0, 1, 2});
        REQUIRE(mat_mul(f2, eh, eh).col == eh.col);
        REQUIRE(mat_rank(f2, eh) == 2);
        for (int gamma = 0; gamma < g.order(); ++gamma)
            REQUIRE(mat_mul(f2, eh, act.of(gamma)).col ==
                    mat_mul(f2, act.of(gamma), eh).col);
    }

    SECTION("a non-normal subgroup fails centrality") {
        auto g = s3();
        auto act = regular_module_action(f3, g);
        auto eh = averaging_idempotent(f3, act, {0, 3});
        REQUIRE(mat_mul(f3, eh, eh).col == eh.col);
        bool central = true;
        for (int gamma = 0; gamma < g.order(); ++gamma)
            if (!(mat_mul(f3, eh, act.of(gamma)).col == mat_mul(f3, act.of(gamma), eh).col))
                central = false;
        REQUIRE_FALSE(central);
    }

    SECTION("undefined when the characteristic divides |H|") {
        auto c6 = FinGroup::cyclic(6);
        auto act = regular_module_action(f2, c6);
        REQUIRE_THROWS_AS(averaging_idempotent(f2, act, {0, 3}), ContractError);
    }
}

TEST_CASE("cup products on group cohomology", "[groupcoh]") {
    FpField f2(2), f3(3);
    auto scalar_mul = [](const FpField& f) {
        return [&f](const Vec<FpField>& a, const Vec<FpField>& b) {
            return Vec<FpField>{f.mul(a[0], b[0])};
        };
    };

    SECTION("H^*(C2, k) over F2 is polynomial: the degree-1 square survives") {
        auto g = FinGroup::cyclic(2);
        auto k = trivial_action_of(f2, g, 1);
        for (bool periodic : {false, true}) {
            auto res = periodic ? periodic_resolution(f2, ext_of(g, {0}, 2, 1), 4)
                                : bar_resolution_trivial(f2, g, 4);
            auto model = group_cochain_model(res, k);
            auto slices = group_cohomology(res, k, 2);
            REQUIRE(slices[1].space.dim() == 1);
            const auto& u1 = slices[1].space.representatives[0];
            auto sq = group_cup(model, 1, u1, 1, u1, scalar_mul(f2));
            REQUIRE(is_zero_vec(f2, mat_apply(f2, model.delta(2), sq)));
            REQUIRE_FALSE(in_image(f2, model.delta(1), sq));
        }
    }

    SECTION("H^*(C4, k) over F2 has an exterior degree-1 class instead") {
        auto g = FinGroup::cyclic(4);
        auto k = trivial_action_of(f2, g, 1);
        for (bool periodic : {false, true}) {
            auto res = periodic ? periodic_resolution(f2, ext_of(g, {0}, 4, 1), 4)
                                : bar_resolution_trivial(f2, g, 4);
            auto model = group_cochain_model(res, k);
            auto slices = group_cohomology(res, k, 2);
            const auto& u1 = slices[1].space.representatives[0];
            auto sq = group_cup(model, 1, u1, 1, u1, scalar_mul(f2));
            REQUIRE(in_image(f2, model.delta(1), sq));
        }
    }

    SECTION("odd classes square to zero over F3; odd and even classes commute") {
        auto g = FinGroup::cyclic(3);
        auto k = trivial_action_of(f3, g, 1);
        for (bool periodic : {false, true}) {
            auto res = periodic ? periodic_resolution(f3, ext_of(g, {0}, 3, 1), 4)
                                : bar_resolution_trivial(f3, g, 4);
            auto model = group_cochain_model(res, k);
            auto slices = group_cohomology(res, k, 3);
            const auto& u1 = slices[1].space.representatives[0];
            const auto& u2 = slices[2].space.representatives[0];
            auto sq = group_cup(model, 1, u1, 1, u1, scalar_mul(f3));
            REQUIRE(in_image(f3, model.delta(1), sq));
            auto uv = group_cup(model, 1, u1, 2, u2, scalar_mul(f3));
            auto vu = group_cup(model, 2, u2, 1, u1, scalar_mul(f3));
            Vec<FpField> diff(uv.size());
            for (std::size_t i = 0; i < uv.size(); ++i) diff[i] = f3.sub(uv[i], vu[i]);
            REQUIRE(is_zero_vec(f3, mat_apply(f3, model.delta(3), uv)));
            REQUIRE(in_image(f3, model.delta(2), diff));
        }
    }

    SECTION("the unit class acts as the identity") {
        auto g = FinGroup::cyclic(2);
        auto kxk_alg = kxk(f2);
        auto act = cyclic_perm_action(f2, 2, {1, 0});
        auto mul = [&](const Vec<FpField>& a, const Vec<FpField>& b) {
            return kxk_alg.mul_vec(a, b);
        };
        auto res = bar_resolution_trivial(f2, g, 3);
        auto model = group_cochain_model(res, act);
        Vec<FpField> u0 = kxk_alg.unit;
        for (long long c = 0; c < model.dim(2); ++c) {
            auto v = basis_vec(f2, model.dim(2), c);
            REQUIRE(group_cup(model, 0, u0, 2, v, mul) == v);
            REQUIRE(group_cup(model, 2, v, 0, u0, mul) == v);
        }
    }

    SECTION("coboundary rule for the cup, bar model, both characteristics") {
        for (auto p : {2u, 3u}) {
            FpField f(p);
            auto g = FinGroup::cyclic(2);
            auto kxk_alg = kxk(f);
            auto act = cyclic_perm_action(f, 2, {1, 0});
            auto mul = [&](const Vec<FpField>& a, const Vec<FpField>& b) {
                return kxk_alg.mul_vec(a, b);
            };
            auto res = bar_resolution_trivial(f, g, 5);
            auto model = group_cochain_model(res, act);
            for (int n1 : {1, 2})
                for (int n2 : {1, 2})
                    for (long long cu = 0; cu < model.dim(n1); ++cu)
                        for (long long cv = 0; cv < model.dim(n2); ++cv) {
                            auto u = basis_vec(f, model.dim(n1), cu);
                            auto v = basis_vec(f, model.dim(n2), cv);
                            auto lhs = mat_apply(f, model.delta(n1 + n2),
                                                 group_cup(model, n1, u, n2, v, mul));
                            auto t1 = group_cup(model, n1 + 1,
                                                mat_apply(f, model.delta(n1), u), n2, v, mul);
                            auto t2 = group_cup(model, n1, u, n2 + 1,
                                                mat_apply(f, model.delta(n2), v), mul);
                            Vec<FpField> rhs(lhs.size());
                            for (std::size_t i = 0; i < lhs.size(); ++i) {
                                auto signed2 = (n1 % 2) ? f.neg(t2[i]) : t2[i];
                                rhs[i] = f.add(t1[i], signed2);
                            }
                            REQUIRE(lhs == rhs);
                        }
        }
    }

    SECTION("coboundary rule for the cup, periodic model over F3") {
        auto [alg, act] = truncated_cubic(f3);
        auto mul = [&alg](const Vec<FpField>& a, const Vec<FpField>& b) {
            return alg.mul_vec(a, b);
        };
        auto res = periodic_resolution(f3, ext_of(FinGroup::cyclic(3), {0}, 3, 1), 6);
        auto model = group_cochain_model(res, act);
        REQUIRE(model.dim(0) == 3);
        for (int n1 : {1, 2})
            for (int n2 : {1, 2})
                for (long long cu = 0; cu < model.dim(n1); ++cu)
                    for (long long cv = 0; cv < model.dim(n2); ++cv) {
                        auto u = basis_vec(f3, model.dim(n1), cu);
                        auto v = basis_vec(f3, model.dim(n2), cv);
                        auto lhs = mat_apply(f3, model.delta(n1 + n2),
                                             group_cup(model, n1, u, n2, v, mul));
                        auto t1 = group_cup(model, n1 + 1,
                                            mat_apply(f3, model.delta(n1), u), n2, v, mul);
                        auto t2 = group_cup(model, n1, u, n2 + 1,
                                            mat_apply(f3, model.delta(n2), v), mul);
                        Vec<FpField> rhs(lhs.size());
                        for (std::size_t i = 0; i < lhs.size(); ++i) {
                            auto signed2 = (n1 % 2) ? f3.neg(t2[i]) : t2[i];
                            rhs[i] = f3.add(t1[i], signed2);
                        }
                        REQUIRE(lhs == rhs);
                    }
    }
}
