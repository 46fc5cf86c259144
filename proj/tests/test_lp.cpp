#include <gtest/gtest.h>

#include "lpinf/fixtures.hpp"

using namespace lpinf;
namespace fx = lpinf::fixtures;

namespace {

std::vector<WeakLP> wlp_fixtures() {
    return {identity_wlp(fx::sl2()), fx::two_cocycle_sl2(), wlp_from_dgla_pair(fx::lie_pair()),
            wlp_from_two_cocycle(fx::rank2(), fx::rank2_alpha(), 2)};
}

}  // namespace

TEST(Lp, FixturesAreMorphisms) {
    for (auto& w : wlp_fixtures()) {
        auto v = check_wlp(w);
        EXPECT_FALSE(v.has_value()) << v->str();
    }
}

TEST(Lp, TwoCocycleShape) {
    auto w = fx::two_cocycle_sl2();
    EXPECT_EQ(w.module().dim(), 9);
    EXPECT_EQ(w.f.f.max_weight(), 1);
    EXPECT_EQ(w.module().space.degree(0), 1);
}

TEST(Lp, TwoCocycleRejectsWrongWeight) {
    auto g = fx::sl2();
    EXPECT_THROW(wlp_from_two_cocycle(g, CE::gen(0), 1), Error);
}

TEST(Lp, PairRejectsNonSubalgebra) {
    auto lp = fx::lie_pair();
    // swap e for f in the inclusion
    lp.incl = LinearMap(lp.sub->space(), lp.big->space(), 0);
    lp.incl.set(0, 0, 1);
    lp.incl.set(1, 2, 1);
    lp.incl.set(2, 3, 1);
    lp.incl.set(3, 4, 1);
    lp.split = LinearMap(lp.quotient, lp.big->space(), 0);
    lp.split.set(0, 1, 1);
    lp.split.set(1, 5, 1);
    try {
        wlp_from_dgla_pair(lp);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotSubalgebra");
    }
}

TEST(Lp, PairRejectsNonComplement) {
    auto lp = fx::lie_pair();
    lp.split = LinearMap(lp.quotient, lp.big->space(), 0);
    lp.split.set(0, 0, 1);
    lp.split.set(1, 5, 1);
    try {
        wlp_from_dgla_pair(lp);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotSection");
    }
}

TEST(Lp, IdentityGivesLieBracket) {
    auto g = fx::sl2();
    auto L = leibniz_from_lp(identity_wlp(g));
    EXPECT_FALSE(L.check().has_value());
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) EXPECT_EQ(L.br[x][y], g->br(x, y));
}

TEST(Lp, LeibnizRuleViolationDetected) {
    auto L = fx::leibniz_xxy();
    L.br[1][0] = {{1, 1}};
    auto v = L.check();
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->kind, "LeibnizRule");
}

TEST(Lp, LieQuotientRoundTrip) {
    auto L = fx::leibniz_xxy();
    ASSERT_FALSE(L.check().has_value());
    auto q = lie_quotient(L);
    EXPECT_EQ(q.lie->dim(), 1);
    EXPECT_EQ(q.kernel.size(), 1u);
    EXPECT_FALSE(check_wlp(q.lp).has_value());
    EXPECT_EQ(q.rebuilt, L);
}

TEST(Lp, LieQuotientOfLieAlgebra) {
    auto L = leibniz_from_lp(identity_wlp(fx::sl2()));
    auto q = lie_quotient(L);
    EXPECT_EQ(q.lie->dim(), 3);
    EXPECT_TRUE(q.kernel.empty());
    EXPECT_EQ(q.rebuilt, L);
}

TEST(Lp, CohomologousCocycles) {
    auto c = homotopy_cohomologous(fx::rank2(), fx::rank2_alpha(), fx::rank2_eta(), 2);
    EXPECT_FALSE(check_morphism(c.f2).has_value());
    auto r = verify_homotopy(c);
    EXPECT_TRUE(r.direct);
    EXPECT_TRUE(r.path);
}

TEST(Lp, CohomologousCocyclesSl2) {
    auto g = fx::sl2();
    CE eta = CE::gen(1) + CE::gen(2);
    auto c = homotopy_cohomologous(g, g->dce_gen(0), eta, 2);
    auto r = verify_homotopy(c);
    EXPECT_TRUE(r.direct);
    EXPECT_TRUE(r.path);
}

TEST(Lp, WrongHomotopyRejected) {
    auto c = homotopy_cohomologous(fx::rank2(), fx::rank2_alpha(), fx::rank2_eta(), 2);
    c.h *= -1;
    auto r = verify_homotopy(c);
    EXPECT_FALSE(r.direct);
    EXPECT_FALSE(r.path);
}

TEST(Lp, SplittingChange) {
    auto lp = fx::lie_pair();
    auto c = homotopy_splitting_change(lp, fx::lie_pair_lambda(lp));
    EXPECT_FALSE(check_morphism(c.f2).has_value());
    auto r = verify_homotopy(c);
    EXPECT_TRUE(r.direct);
    EXPECT_TRUE(r.path);
}

TEST(Lp, DualizeToDerivation) {
    for (auto& w : wlp_fixtures()) {
        auto d = dualize_to_derivation(w);
        auto v = check_derivation(d, w.alg()->par(), *w.alg());
        EXPECT_FALSE(v.has_value()) << v->str();
        EXPECT_EQ(undualize(d, w.module()), w.f.f);
    }
}
