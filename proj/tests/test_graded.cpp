#include <gtest/gtest.h>

#include "lpinf/graded.hpp"

#include <algorithm>
#include <random>

using namespace lpinf;

namespace {

// Plain Gaussian elimination rank, independent of rref().
int oracle_rank(Matrix a) {
    int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0, r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) p = i;
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        for (int i = 0; i < rows; ++i)
            if (i != r && a[i][c] != 0) {
                Scalar f = a[i][c] / a[r][c];
                for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            }
        ++r;
    }
    return r;
}

LinearMap random_map(const GradedSpace& v, std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-3, 3);
    LinearMap f(v, v, 0);
    for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) f.set(i, j, Scalar(c(rng), 1 + (c(rng) + 3) % 3));
    return f;
}

}  // namespace

TEST(Scalar, CanonicalForm) {
    EXPECT_EQ(to_string(parse_scalar("4/6")), "2/3");
    EXPECT_EQ(to_string(parse_scalar("-0/5")), "0");
    EXPECT_EQ(to_string(parse_scalar("+7")), "7");
    EXPECT_THROW(parse_scalar("1/0"), Error);
    EXPECT_THROW(parse_scalar("1/-2"), Error);
    EXPECT_THROW(parse_scalar("0.5"), Error);
    EXPECT_EQ(parse_scalar("123456789012345678901234567890/3"), Scalar(mpz_class("41152263004115226300411522630")));
}

TEST(GradedSpace, UniqueNames) {
    EXPECT_THROW(GradedSpace({{"a", 0}, {"a", 1}}), Error);
    EXPECT_EQ(GradedSpace{}.dim(), 0);
}

TEST(LinearMap, DegreeMismatchRejected) {
    GradedSpace v({{"a", 0}, {"b", 1}});
    LinearMap f(v, v, 1);
    EXPECT_NO_THROW(f.set(0, 1, 1));
    EXPECT_THROW(f.set(0, 0, 1), Error);
    f.set(0, 1, 0);
    EXPECT_TRUE(f.entries().empty());
}

TEST(Koszul, Examples) {
    EXPECT_EQ(koszul_sign({0, 1, 2}, {1, 1, 1}), 1);
    EXPECT_EQ(koszul_sign({1, 0}, {1, 1}), -1);
    EXPECT_EQ(koszul_sign({1, 0}, {1, 2}), 1);
    EXPECT_EQ(koszul_sign({2, 0, 1}, {0, 2, 4}), 1);
    EXPECT_EQ(koszul_sign({1, 0}, {0, 0}, true), -1);
    EXPECT_EQ(koszul_sign({1, 0}, {1, 1}, true), 1);
}

TEST(Koszul, Multiplicative) {
    std::mt19937 rng(3);
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<int> deg(n), s(n), t(n);
            for (auto& d : deg) d = static_cast<int>(rng() % 4) - 1;
            std::iota(s.begin(), s.end(), 0);
            std::iota(t.begin(), t.end(), 0);
            std::shuffle(s.begin(), s.end(), rng);
            std::shuffle(t.begin(), t.end(), rng);
            std::vector<int> ts(n), dt(n);
            for (int i = 0; i < n; ++i) ts[i] = t[s[i]], dt[i] = deg[t[i]];
            EXPECT_EQ(koszul_sign(ts, deg), koszul_sign(t, deg) * koszul_sign(s, dt));
            EXPECT_EQ(koszul_sign(ts, deg, true), koszul_sign(t, deg, true) * koszul_sign(s, dt, true));
        }
}

TEST(Compose, DenseOracle) {
    std::mt19937 rng(11);
    GradedSpace v({{"a", 0}, {"b", 0}, {"c", 0}});
    LinearMap f = random_map(v, rng), g = random_map(v, rng);
    LinearMap h = compose(f, g);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            Scalar s = 0;
            for (int j = 0; j < 3; ++j) s += g.get(i, j) * f.get(j, k);
            EXPECT_EQ(h.get(i, k), s);
        }
    EXPECT_EQ(compose(f, LinearMap::identity(v)), f);
    EXPECT_TRUE(compose(LinearMap(v, v, 0), f).entries().empty());
    EXPECT_THROW(compose(f, LinearMap(GradedSpace({{"x", 0}}), GradedSpace({{"y", 0}}), 0)), Error);
}

TEST(RankKernel, Examples) {
    GradedSpace d({{"a", 0}, {"b", 0}, {"c", 0}}), c({{"x", 0}, {"y", 0}});
    LinearMap z(d, c, 0);
    EXPECT_EQ(rank_kernel_image(z, 0).rank, 0);
    EXPECT_EQ(rank_kernel_image(z, 0).kernel.size(), 3u);
    auto id = rank_kernel_image(LinearMap::identity(d), 0);
    EXPECT_EQ(id.rank, 3);
    EXPECT_TRUE(id.kernel.empty());
    LinearMap f(d, c, 0);
    f.set(0, 0, Scalar(1, 2));
    f.set(1, 0, 1);
    f.set(2, 0, Scalar(-3, 4));
    f.set(0, 1, 1);
    f.set(1, 1, 2);
    f.set(2, 1, Scalar(-3, 2));
    auto r = rank_kernel_image(f, 0);
    EXPECT_EQ(r.rank, oracle_rank(f.slice_matrix(0)));
    EXPECT_EQ(r.rank, 1);
    for (auto& k : r.kernel) EXPECT_TRUE(is_zero(f.apply(k)));
}

TEST(RankKernel, RankNullity) {
    std::mt19937 rng(5);
    GradedSpace v({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 1}, {"e", 1}});
    for (int t = 0; t < 20; ++t) {
        LinearMap f(v, v, 0);
        std::uniform_int_distribution<int> c(-1, 1);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                if (v.degree(i) == v.degree(j)) f.set(i, j, c(rng));
        for (int deg : {0, 1}) {
            auto r = rank_kernel_image(f, deg);
            EXPECT_EQ(r.rank + static_cast<int>(r.kernel.size()), static_cast<int>(v.slice(deg).size()));
            EXPECT_EQ(r.rank, oracle_rank(f.slice_matrix(deg)));
        }
    }
}

TEST(RightInverse, PivotSection) {
    GradedSpace d({{"a", 0}, {"b", 0}}), c({{"x", 0}});
    LinearMap f(d, c, 0);
    f.set(0, 0, 1);
    f.set(1, 0, 1);
    LinearMap g = right_inverse(f);
    EXPECT_EQ(g.get(0, 0), 1);
    EXPECT_EQ(g.get(0, 1), 0);
    EXPECT_EQ(compose(f, g), LinearMap::identity(c));
    EXPECT_EQ(right_inverse(LinearMap::identity(d)), LinearMap::identity(d));
    EXPECT_THROW(right_inverse(LinearMap(d, c, 0)), Error);
}

TEST(RightInverse, RandomSurjections) {
    std::mt19937 rng(9);
    GradedSpace d({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}), c({{"x", 0}, {"y", 0}});
    for (int t = 0; t < 20; ++t) {
        LinearMap f(d, c, 0);
        std::uniform_int_distribution<int> k(-2, 2);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) f.set(i, j, k(rng));
        if (!is_surjective(f)) {
            EXPECT_THROW(right_inverse(f), Error);
            continue;
        }
        EXPECT_EQ(compose(f, right_inverse(f)), LinearMap::identity(c));
    }
}

TEST(Cohomology, Examples) {
    GradedSpace v({{"a", 0}, {"b", 1}, {"c", 1}});
    LinearMap zero(v, v, 1);
    for (int deg : {0, 1}) EXPECT_EQ(cohomology(zero, zero, deg).dimension, static_cast<int>(v.slice(deg).size()));
    GradedSpace two({{"p", 0}, {"q", 1}});
    LinearMap d(two, two, 1);
    d.set(0, 1, 3);
    EXPECT_EQ(cohomology(d, d, 0).dimension, 0);
    EXPECT_EQ(cohomology(d, d, 1).dimension, 0);
    GradedSpace three({{"p", 0}, {"q", 1}, {"r", 2}});
    LinearMap bad(three, three, 1);
    bad.set(0, 1, 1);
    bad.set(1, 2, 1);
    EXPECT_THROW(cohomology(bad, bad, 1), Error);
}
