#include <gtest/gtest.h>

#include "lpinf/fixtures.hpp"
#include "lpinf/trees.hpp"

using namespace lpinf;
namespace fx = lpinf::fixtures;

namespace {

MLRTClass from_labels(const std::vector<int>& next) { return MLRTClass{next, 1}; }

LabeledTree labeled(std::vector<int> parent, std::vector<int> labels) {
    return LabeledTree{RootedTree{std::move(parent)}, std::move(labels)};
}

}  // namespace

TEST(Trees, ClassCountsMatchAutomorphismOracle) {
    std::vector<int> expect{1, 1, 2, 6, 24};
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(static_cast<int>(enumerate_mlrt(n).size()), expect[n - 1]) << n;
        EXPECT_EQ(count_classes_by_automorphisms(n), expect[n - 1]) << n;
    }
}

TEST(Trees, RawCountsAddUp) {
    for (int n = 1; n <= 5; ++n) {
        int raw = 0;
        for (auto& t : enumerate_trees(n)) raw += static_cast<int>(monotonic_labelings(t).size());
        int sum = 0;
        for (auto& c : enumerate_mlrt(n)) sum += c.raw_count;
        EXPECT_EQ(raw, sum);
    }
}

TEST(Trees, ExampleT1) {
    // vertices 1,2 -> 3 -> 4 -> root; l and l' swap the two leaves
    auto l = labeled({0, 3, 3, 4, 0}, {0, 1, 2, 3, 4});
    auto l2 = labeled({0, 3, 3, 4, 0}, {0, 2, 1, 3, 4});
    ASSERT_TRUE(l.monotonic() && l2.monotonic());
    EXPECT_EQ(canonical_form(l), canonical_form(l2));
    EXPECT_EQ(canonical_form(l), "4[3[1,2]]");
}

TEST(Trees, ExampleT2) {
    // chain a -> b -> c plus leaf d -> c, c -> root
    auto l3 = labeled({0, 2, 4, 4, 0}, {0, 1, 2, 3, 4});
    auto l4 = labeled({0, 2, 4, 4, 0}, {0, 1, 3, 2, 4});
    ASSERT_TRUE(l3.monotonic() && l4.monotonic());
    EXPECT_NE(canonical_form(l3), canonical_form(l4));
    EXPECT_EQ(canonical_form(l3), "4[2[1],3]");
    EXPECT_EQ(canonical_form(l4), "4[3[1],2]");
}

TEST(Trees, NonMonotonicRejected) {
    auto bad = labeled({0, 2, 0}, {0, 2, 1});
    EXPECT_FALSE(bad.monotonic());
}

TEST(Trees, NrProductSingleIsContraction) {
    auto g = fx::sl2();
    CE alpha = g->dce_gen(0);
    CE target;
    for (auto& [k, c] : alpha.terms) target.add(k.first, 0, c);
    CE w = CE::unit(1);  // e with trivial omega
    EXPECT_EQ(nr_product(*g, {w}, target), contract(g->par(), 1, target));
    EXPECT_TRUE(nr_product(*g, {w}, CE::unit(0)).zero());
}

TEST(Trees, NrProductTwoMatchesNestedContraction) {
    auto g = fx::sl2();
    const Parities& p = g->par();
    CE target = g->dce_gen(2);  // weight 2
    CE w1, w2;
    w1.add(Word{0}, 1, 1);      // xi_h (x) e
    w2.add(Word{2}, 0, 3);      // 3 xi_f (x) h
    CE got = nr_product(*g, {w1, w2}, target);
    // omega_1 omega_2 iota_e iota_h alpha with sign (-1)^{(|e|-1)|omega_2|} = -1
    CE inner = contract(p, 1, contract(p, 0, target));
    CE pre;
    pre.add(Word{0, 2}, 0, -3);
    EXPECT_EQ(got, multiply(p, pre, inner));
}

TEST(Trees, ThetaSingleVertex) {
    TreeEvaluator ev(fx::two_cocycle_sl2());
    for (int m = 0; m < 9; ++m) EXPECT_EQ(ev.theta({m}), ev.F(m));
}

TEST(Trees, ThetaT1Structure) {
    auto w = fx::stress_wlp();
    TreeEvaluator ev(w);
    auto c = from_labels({0, 3, 3, 4, 0});
    std::vector<int> args{6, 7, 8, 3};
    const auto& g = *w.alg();
    CE expect = nr_product(g, {nr_product(g, {ev.F(6), ev.F(7)}, ev.F(8))}, ev.F(3));
    EXPECT_EQ(ev.theta_tree(c, args), expect);
}

TEST(Trees, ThetaClassInvariance) {
    auto w = fx::stress_wlp();
    TreeEvaluator ev(w);
    int nonzero = 0;
    for (int n = 1; n <= 4; ++n)
        for (auto args : std::vector<std::vector<int>>{{6, 7, 8, 3}, {8, 6, 4, 0}, {7, 3, 6, 5}}) {
            args.resize(n);
            for (auto& r : theta_by_raw_labelings(ev, args)) {
                CE scaled = r.class_value;
                scaled *= r.raw_count;
                EXPECT_EQ(r.raw_sum, scaled) << r.form;
                nonzero += !r.class_value.zero();
            }
        }
    EXPECT_GT(nonzero, 0);
}
