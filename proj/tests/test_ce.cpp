#include <gtest/gtest.h>

#include "lpinf/fixtures.hpp"

using namespace lpinf;
namespace fx = lpinf::fixtures;

namespace {

// Pure words of length <= 2 as CE elements, over an algebra with odd and even generators.
std::vector<CE> small_elements(const DGLieAlgebra& g) {
    std::vector<CE> out{CE::unit()};
    for (int k = 1; k <= 2; ++k)
        for (auto& w : words_of_length(g.par(), g.dim(), k)) {
            CE e;
            e.add(w, 0, 1);
            out.push_back(e);
        }
    return out;
}

int degree_of(const Parities& p, const CE& e) { return p.word_degree(e.terms.begin()->first.first); }

}  // namespace

TEST(Words, NormalizeExamples) {
    auto g = fx::sl2_eps();
    const Parities& p = g->par();
    ASSERT_TRUE(p.odd(0) && p.odd(1) && !p.odd(3));
    auto r = normalize_word(p, {1, 0});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first, (Word{0, 1}));
    EXPECT_EQ(r->second, -1);
    EXPECT_FALSE(normalize_word(p, {0, 0}));
    auto e = normalize_word(p, {3, 3});
    ASSERT_TRUE(e);
    EXPECT_EQ(e->second, 1);
    auto m = normalize_word(p, {3, 1, 0});
    ASSERT_TRUE(m);
    EXPECT_EQ(m->first, (Word{0, 1, 3}));
    EXPECT_EQ(m->second, -1);
}

TEST(Words, NormalizeIdempotent) {
    auto g = fx::sl2_eps();
    for (int k = 0; k <= 3; ++k)
        for (auto& w : words_of_length(g->par(), g->dim(), k)) {
            auto r = normalize_word(g->par(), w);
            ASSERT_TRUE(r);
            EXPECT_EQ(r->first, w);
            EXPECT_EQ(r->second, 1);
        }
}

TEST(Multiply, AssociativeAndGradedCommutative) {
    auto g = fx::sl2_eps();
    const Parities& p = g->par();
    auto es = small_elements(*g);
    for (auto& a : es)
        for (auto& b : es) {
            CE ab = multiply(p, a, b), ba = multiply(p, b, a);
            EXPECT_EQ(ab, sign_of(degree_of(p, a) * degree_of(p, b)) * ba);
            for (int x = 0; x < g->dim(); ++x) {
                CE c = CE::gen(x);
                EXPECT_EQ(multiply(p, ab, c), multiply(p, a, multiply(p, b, c)));
            }
        }
    EXPECT_TRUE(multiply(p, CE::gen(0), CE::gen(0)).zero());
}

TEST(Multiply, SwapAgainstModuleElement) {
    auto g = fx::sl2_eps();
    const Parities& p = g->par();
    CE m;
    m.add(Word{}, 2, 1);
    for (int a = 0; a < g->dim(); ++a)
        for (int b = 0; b < g->dim(); ++b) {
            CE ab = multiply(p, CE::gen(a), multiply(p, CE::gen(b), m));
            CE ba = multiply(p, CE::gen(b), multiply(p, CE::gen(a), m));
            EXPECT_EQ(ab, sign_of(p.deg[a] * p.deg[b]) * ba);
        }
}

TEST(Contract, Derivation) {
    auto g = fx::sl2_eps();
    const Parities& p = g->par();
    auto es = small_elements(*g);
    for (int x = 0; x < g->dim(); ++x)
        for (auto& a : es)
            for (auto& b : es) {
                CE lhs = contract(p, x, multiply(p, a, b));
                CE rhs = multiply(p, contract(p, x, a), b) +
                         sign_of((g->deg(x) - 1) * degree_of(p, a)) * multiply(p, a, contract(p, x, b));
                EXPECT_EQ(lhs, rhs);
            }
}

TEST(Contract, DualBasis) {
    auto g = fx::sl2_eps();
    const Parities& p = g->par();
    EXPECT_TRUE(contract(p, 0, CE::unit()).zero());
    for (int x = 0; x < g->dim(); ++x)
        for (int y = 0; y < g->dim(); ++y) EXPECT_EQ(contract(p, x, CE::gen(y)), x == y ? CE::unit() : CE{});
}

TEST(Contract, MixedSwapRule) {
    auto g = fx::sl2();
    const Parities& p = g->par();
    CE alpha = multiply(p, CE::gen(0), CE::gen(1));
    alpha.add(Word{1, 2}, 0, 3);
    for (int a = 0; a < 3; ++a)
        for (int x = 0; x < 3; ++x) {
            CE v;
            v.add(Word{a}, x, 1);
            EXPECT_EQ(contract_mixed(p, v, alpha), multiply(p, CE::gen(a), contract(p, x, alpha)));
        }
    CE unit_v;
    unit_v.add(Word{}, 1, 1);
    EXPECT_EQ(contract_mixed(p, unit_v, alpha), contract(p, 1, alpha));
    EXPECT_TRUE(contract_mixed(p, CE{}, alpha).zero());
}

TEST(CeDifferential, DerivationAndSquareZero) {
    for (auto g : {fx::sl2(), fx::sl2_eps(), fx::a_to_b(), fx::rank2()}) {
        const Parities& p = g->par();
        auto es = small_elements(*g);
        for (auto& a : es) {
            EXPECT_TRUE(ce_differential(*g, ce_differential(*g, a)).zero());
            for (auto& b : es) {
                CE lhs = ce_differential(*g, multiply(p, a, b));
                CE rhs = multiply(p, ce_differential(*g, a), b) + sign_of(degree_of(p, a)) * multiply(p, a, ce_differential(*g, b));
                EXPECT_EQ(lhs, rhs);
            }
        }
    }
    EXPECT_TRUE(fx::abelian()->dce_gen(0).zero());
}

TEST(Extend, CommutesWithMultiply) {
    auto s = fx::stress_data();
    const Parities& p = s.m.par();
    for (int i = 0; i < s.m.dim(); ++i)
        for (auto& w : small_elements(*s.m.alg)) {
            CE e = multiply(p, w, CE::unit(i));
            EXPECT_EQ(extend(p, s.psi, e), multiply(p, w, extend(p, s.psi, CE::unit(i))));
        }
    for (int i = 0; i < s.m.dim(); ++i) EXPECT_EQ(extend(p, WMap::identity(s.m.space), CE::unit(i)), CE::unit(i));
}

TEST(Extend, CompositeIsConvolution) {
    auto s = fx::stress_data();
    const Parities& p = s.m.par();
    WMap gf = compose(p, s.f, s.psi);
    for (int i = 0; i < s.m.dim(); ++i)
        for (auto& w : small_elements(*s.m.alg)) {
            CE e = multiply(p, w, CE::unit(i));
            EXPECT_EQ(extend(p, s.f, extend(p, s.psi, e)), extend(p, gf, e));
        }
}

TEST(TotalDifferential, AdjointIsBracket) {
    auto g = fx::sl2();
    auto m = adjoint_module(g);
    for (int x = 0; x < 3; ++x) {
        CE d = total_differential(m, CE::unit(x));
        for (int y = 0; y < 3; ++y) {
            Sparse expect = g->br(y, x);
            CE c = contract(g->par(), y, d);
            CE e;
            for (auto& [z, v] : expect) e.add(Word{}, z, v);
            EXPECT_EQ(c, e);
        }
    }
    LFModule trivial(g, GradedSpace({{"k", 0}}));
    EXPECT_TRUE(total_differential(trivial, CE::unit(0)).zero());
}
