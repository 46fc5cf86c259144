#include <gtest/gtest.h>

#include "lpinf/fixtures.hpp"

using namespace lpinf;
namespace fx = lpinf::fixtures;

namespace {

bool strict_only(const WMap& f) { return f.max_weight() <= 0; }

}  // namespace

TEST(Lfmod, FixtureMorphismsValid) {
    auto g = fx::sl2();
    EXPECT_FALSE(check_module(fx::perturbed(g)).has_value());
    auto p = fx::perturbed_fibration(g);
    EXPECT_FALSE(check_morphism(p).has_value());
    EXPECT_FALSE(check_morphism(fx::coboundary_to_line(g)).has_value());
}

TEST(Lfmod, ClassifyIdentityAndZero) {
    auto m = adjoint_module(fx::sl2());
    auto c = classify(identity_morphism(m));
    EXPECT_TRUE(c.weak_equivalence && c.fibration && c.cofibration);
    LFModule z = zero_module(m.alg);
    auto c0 = classify(Morphism{m, z, WMap(m.space, z.space, 0)});
    EXPECT_TRUE(c0.fibration);
    EXPECT_FALSE(c0.cofibration);
}

TEST(Lfmod, PathObject) {
    for (auto g : {fx::sl2(), fx::a_to_b(), fx::sl2_eps()}) {
        auto m = adjoint_module(g);
        auto po = path_object(m);
        EXPECT_FALSE(check_module(po.total).has_value());
        for (auto* f : {&po.s, &po.eps0, &po.eps1, &po.eps01}) EXPECT_FALSE(check_morphism(*f).has_value());
        auto& p = m.par();
        EXPECT_EQ(compose(p, po.eps0.f, po.s.f), WMap::identity(m.space));
        EXPECT_EQ(compose(p, po.eps1.f, po.s.f), WMap::identity(m.space));
        EXPECT_TRUE(classify(po.eps01).fibration);
        auto cs = classify(po.s);
        EXPECT_TRUE(cs.weak_equivalence && cs.cofibration);
    }
}

TEST(Lfmod, PathObjectOfPerturbedModule) {
    auto po = path_object(fx::perturbed(fx::sl2()));
    EXPECT_FALSE(check_module(po.total).has_value());
}

TEST(Lfmod, TrivialHomotopyAccepted) {
    auto f = fx::perturbed_fibration(fx::sl2());
    HomotopyCertificate c{f, f, WMap(f.src.space, f.tgt.space, -1)};
    auto r = verify_homotopy(c);
    EXPECT_TRUE(r.direct);
    EXPECT_TRUE(r.path);
}

TEST(Lfmod, StrictifyFibration) {
    auto g = fx::sl2();
    auto phi = fx::perturbed_fibration(g);
    auto s = strictify_fibration(phi);
    EXPECT_FALSE(check_module(s.modified).has_value());
    EXPECT_FALSE(check_morphism(s.psi).has_value());
    EXPECT_FALSE(check_morphism(s.strict).has_value());
    EXPECT_TRUE(strict_only(s.strict.f));
    EXPECT_EQ(s.strict.f.linear0(), phi.f.linear0());
}

TEST(Lfmod, StrictifyAlreadyStrict) {
    auto m = adjoint_module(fx::sl2());
    auto s = strictify_fibration(identity_morphism(m));
    EXPECT_EQ(s.psi.f, WMap::identity(m.space));
}

TEST(Lfmod, StrictifyRejectsNonSurjective) {
    auto m = adjoint_module(fx::sl2());
    auto mm = direct_sum(m, m);
    WMap f(m.space, mm.space, 0);
    for (int i = 0; i < 3; ++i) f.img[i] = CE::unit(i);
    EXPECT_THROW(strictify_fibration(Morphism{m, mm, f}), Error);
}

TEST(Lfmod, StrictifyCofibration) {
    auto g = fx::sl2();
    auto x = fx::perturbed(g);
    auto fz = factorize(Morphism{x, zero_module(g), WMap(x.space, GradedSpace{}, 0)}, true);
    ASSERT_FALSE(check_morphism(fz.first).has_value());
    ASSERT_GT(fz.first.f.max_weight(), 0);
    auto s = strictify_cofibration(fz.first);
    EXPECT_FALSE(check_module(s.modified).has_value());
    EXPECT_FALSE(check_morphism(s.psi).has_value());
    EXPECT_FALSE(check_morphism(s.strict).has_value());
    EXPECT_TRUE(strict_only(s.strict.f));
}

TEST(Lfmod, Pullback) {
    auto g = fx::sl2();
    auto phi = fx::perturbed_fibration(g);
    auto psi = fx::coboundary_to_line(g);
    auto pb = pullback(phi, psi);
    EXPECT_FALSE(check_module(pb.module).has_value());
    EXPECT_FALSE(check_morphism(pb.to_other).has_value());
    EXPECT_FALSE(check_morphism(pb.to_fibration_source).has_value());
    auto& p = pb.module.par();
    EXPECT_EQ(compose(p, phi.f, pb.to_fibration_source.f), compose(p, psi.f, pb.to_other.f));
    EXPECT_TRUE(classify(pb.to_other).fibration);
    EXPECT_EQ(pb.module.dim(), 5);
}

TEST(Lfmod, PullbackAlongIdentity) {
    auto g = fx::sl2();
    auto phi = fx::perturbed_fibration(g);
    auto pb = pullback(phi, identity_morphism(phi.tgt));
    EXPECT_EQ(pb.module.dim(), phi.src.dim());
    auto c = classify(pb.to_fibration_source);
    EXPECT_TRUE(c.weak_equivalence && c.fibration && c.cofibration);
}

TEST(Lfmod, LiftRankThree) {
    auto g = fx::sl2();
    auto p = fx::perturbed_fibration(g);
    auto gm = fx::coboundary_to_line(g);
    LFModule a = zero_module(g);
    Morphism j{a, gm.src, WMap(a.space, gm.src.space, 0)};
    Morphism f{a, p.src, WMap(a.space, p.src.space, 0)};
    auto l = construct_lift({j, p, f, gm, std::nullopt});
    EXPECT_FALSE(check_morphism(l).has_value());
    EXPECT_EQ(compose(l.src.par(), p.f, l.f), gm.f);
}

TEST(Lfmod, LiftWithIdentityJ) {
    auto g = fx::sl2();
    auto p = fx::perturbed_fibration(g);
    auto m = p.src;
    auto l = construct_lift({identity_morphism(m), p, identity_morphism(m), p, std::nullopt});
    EXPECT_EQ(l.f, WMap::identity(m.space));
}

TEST(Lfmod, LiftHypothesis) {
    auto g = fx::sl2();
    auto m = adjoint_module(g);
    LFModule z = zero_module(g);
    Morphism j{z, m, WMap(z.space, m.space, 0)};
    Morphism p{m, z, WMap(m.space, z.space, 0)};
    EXPECT_THROW(construct_lift({j, p, Morphism{z, m, WMap(z.space, m.space, 0)}, Morphism{m, z, WMap(m.space, z.space, 0)}, std::nullopt}),
                 Error);
}

TEST(Lfmod, FactorizeConeMode) {
    auto g = fx::sl2();
    auto f = fx::perturbed_fibration(g);
    auto fz = factorize(f, true);
    EXPECT_FALSE(check_module(fz.middle).has_value());
    EXPECT_FALSE(check_morphism(fz.first).has_value());
    EXPECT_FALSE(check_morphism(fz.second).has_value());
    EXPECT_EQ(compose(f.src.par(), fz.second.f, fz.first.f), f.f);
    EXPECT_TRUE(fz.c1.cofibration);
    EXPECT_TRUE(fz.c2.fibration && fz.c2.weak_equivalence);
}

TEST(Lfmod, FactorizeCokerMode) {
    auto g = fx::sl2();
    auto f = fx::coboundary_to_line(g);
    auto fz = factorize(f, false);
    EXPECT_FALSE(check_module(fz.middle).has_value());
    EXPECT_FALSE(check_morphism(fz.first).has_value());
    EXPECT_FALSE(check_morphism(fz.second).has_value());
    EXPECT_EQ(compose(f.src.par(), fz.second.f, fz.first.f), f.f);
    EXPECT_TRUE(fz.c1.cofibration && fz.c1.weak_equivalence);
    EXPECT_TRUE(fz.c2.fibration);
}
