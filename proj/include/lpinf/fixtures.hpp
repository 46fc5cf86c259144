#pragma once

#include "lp.hpp"

#include <random>

namespace lpinf::fixtures {

inline DGLAData sl2_data() {
    DGLAData d;
    d.space = GradedSpace({{"h", 0}, {"e", 0}, {"f", 0}});
    d.bracket[{0, 1}] = {{1, 2}};   // [h,e] = 2e
    d.bracket[{0, 2}] = {{2, -2}};  // [h,f] = -2f
    d.bracket[{1, 2}] = {{0, 1}};   // [e,f] = h
    return d;
}
inline Alg sl2() { return validate_dgla(sl2_data()); }

inline DGLAData abelian_data(int n = 2) {
    DGLAData d;
    std::vector<BasisElement> b;
    for (int i = 0; i < n; ++i) b.push_back({"u" + std::to_string(i + 1), 0});
    d.space = GradedSpace(b);
    return d;
}
inline Alg abelian(int n = 2) { return validate_dgla(abelian_data(n)); }

// a -> b with |a| = 0, |b| = 1, zero bracket.
inline DGLAData a_to_b_data() {
    DGLAData d;
    d.space = GradedSpace({{"a", 0}, {"b", 1}});
    d.diff[0] = {{1, 1}};
    return d;
}
inline Alg a_to_b() { return validate_dgla(a_to_b_data()); }

// Rank two: [x,y] = y.
inline DGLAData rank2_data() {
    DGLAData d;
    d.space = GradedSpace({{"x", 0}, {"y", 0}});
    d.bracket[{0, 1}] = {{1, 1}};
    return d;
}
inline Alg rank2() { return validate_dgla(rank2_data()); }

// sl2 (x) K[eps], |eps| = 1, eps^2 = 0, d = ad(e eps).
// Basis order: h, e, f, heps, eeps, feps.
inline DGLAData sl2_eps_data() {
    DGLAData d;
    d.space = GradedSpace({{"h", 0}, {"e", 0}, {"f", 0}, {"heps", 1}, {"eeps", 1}, {"feps", 1}});
    DGLAData s = sl2_data();
    for (auto& [k, v] : s.bracket) {
        d.bracket[k] = v;  // [x, y]
        Sparse shifted;
        for (auto& [z, c] : v) shifted[z + 3] = c;
        d.bracket[{k.first, k.second + 3}] = shifted;  // [x, y eps] = [x,y] eps
        if (k.first != k.second) {
            Sparse sw;  // [y, x eps] = [y,x] eps = -[x,y] eps
            for (auto& [z, c] : v) sw[z + 3] = -c;
            d.bracket[{k.second, k.first + 3}] = sw;
        }
    }
    // d(x) = [e eps, x] = -[x, e] eps for x even; d(x eps) = [e eps, x eps] = 0.
    auto full = make_algebra(d);
    for (int x = 0; x < 3; ++x) {
        Sparse dx;
        for (auto& [z, c] : full->br(4, x)) sparse_add(dx, z, c);
        if (!dx.empty()) d.diff[x] = dx;
    }
    return d;
}
inline Alg sl2_eps() { return validate_dgla(sl2_eps_data()); }

// Trivial module on one generator y of degree -1.
inline LFModule line(const Alg& g) { return LFModule(g, GradedSpace({{"y", -1}})); }

// X = span{y, u, w} over sl2 with d u = w + xi_h y and d w = -d_CE(xi_h) y.
inline LFModule perturbed(const Alg& g) {
    LFModule x(g, GradedSpace({{"y", -1}, {"u", -1}, {"w", 0}}));
    x.d.img[1].add(Word{}, 2, 1);
    x.d.img[1].add(Word{0}, 0, 1);
    for (auto& [k, c] : g->dce_gen(0).terms) x.d.img[2].add(k.first, 0, -c);
    return x;
}

// Weight-1-perturbed fibration X -> Y: y -> y, p_1(w) = -xi_h y.
inline Morphism perturbed_fibration(const Alg& g) {
    LFModule x = perturbed(g), y = line(g);
    WMap f(x.space, y.space, 0);
    f.img[0] = CE::unit(0);
    f.img[2].add(Word{0}, 0, -1);
    return Morphism{x, y, f};
}

// Adjoint sl2 -> Y with g_1(x) = sum_a h*([a, x]) xi_a y.
inline Morphism coboundary_to_line(const Alg& g) {
    LFModule b = adjoint_module(g), y = line(g);
    WMap f(b.space, y.space, 0);
    for (int x = 0; x < g->dim(); ++x)
        for (int a = 0; a < g->dim(); ++a) {
            auto it = g->br(a, x).find(0);
            if (it != g->br(a, x).end()) f.img[x].add(Word{a}, 0, it->second);
        }
    return Morphism{b, y, f};
}

// Leibniz algebra on x, y with x <> x = y.
inline LeibnizAlgebra leibniz_xxy() {
    LeibnizAlgebra L(GradedSpace({{"x", 0}, {"y", 0}}));
    L.br[0][0] = {{1, 1}};
    return L;
}

// alpha = d_CE xi_h on sl2, degree 2.
inline WeakLP two_cocycle_sl2() {
    auto g = sl2();
    return wlp_from_two_cocycle(g, g->dce_gen(0), 2);
}

// alpha = xi_x xi_y on [x,y] = y with eta = xi_y.
inline CE rank2_alpha() { return multiply(rank2()->par(), CE::gen(0), CE::gen(1)); }
inline CE rank2_eta() { return CE::gen(1); }

// Borel (x) K[eps] inside sl2 (x) K[eps], complement spanned by f and feps.
inline LiePair lie_pair() {
    auto big = sl2_eps();
    std::vector<int> keep{0, 1, 3, 4};
    DGLAData d;
    std::vector<BasisElement> b;
    for (int i : keep) b.push_back(big->space().basis()[i]);
    d.space = GradedSpace(b);
    std::map<int, int> pos;
    for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    auto restrict = [&](const Sparse& v) {
        Sparse out;
        for (auto& [z, c] : v) out[pos.at(z)] = c;
        return out;
    };
    for (size_t i = 0; i < keep.size(); ++i) {
        if (!big->d(keep[i]).empty()) d.diff[static_cast<int>(i)] = restrict(big->d(keep[i]));
        for (size_t j = i; j < keep.size(); ++j)
            if (!big->br(keep[i], keep[j]).empty()) d.bracket[{static_cast<int>(i), static_cast<int>(j)}] = restrict(big->br(keep[i], keep[j]));
    }
    LiePair lp{big, validate_dgla(d), LinearMap(), GradedSpace({{"f", 0}, {"feps", 1}}), LinearMap()};
    lp.incl = LinearMap(lp.sub->space(), big->space(), 0);
    for (size_t i = 0; i < keep.size(); ++i) lp.incl.set(static_cast<int>(i), keep[i], 1);
    lp.split = LinearMap(lp.quotient, big->space(), 0);
    lp.split.set(0, 2, 1);
    lp.split.set(1, 5, 1);
    return lp;
}

// lambda(f) = h, lambda(feps) = eeps.
inline LinearMap lie_pair_lambda(const LiePair& lp) {
    LinearMap l(lp.quotient, lp.sub->space(), 0);
    l.set(0, 0, 1);
    l.set(1, 3, 1);
    return l;
}

// ad + ad[-1] + ad[-2] over sl2 with f the projection, and a random Psi with weight 1 and 2 parts.
struct StressData {
    LFModule m;
    WMap f, psi;
};

inline StressData stress_data(unsigned seed = 7) {
    auto g = sl2();
    LFModule ad = adjoint_module(g);
    LFModule m = direct_sum(direct_sum(ad, shifted(ad, -1), "0.", "1."), shifted(ad, -2), "", "2.");
    WMap f(m.space, ad.space, 0);
    for (int x = 0; x < 3; ++x) f.img[x] = CE::unit(x);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    WMap psi = WMap::identity(m.space);
    for (int i = 3; i < 9; ++i) {
        int lower = i < 6 ? 0 : 3;
        for (int a = 0; a < 3; ++a)
            for (int t = 0; t < 3; ++t) psi.img[i].add(Word{a}, lower + t, coef(rng));
        if (i >= 6)
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b)
                    for (int t = 0; t < 3; ++t) psi.img[i].add(Word{a, b}, t, coef(rng));
    }
    return StressData{m, f, psi};
}

// Structure Psi^{-1} d Psi with f o Psi.
inline WeakLP stress_wlp(unsigned seed = 7) {
    StressData s = stress_data(seed);
    auto& g = s.m.alg;
    const Parities& p = g->par();
    WMap inv = triangular_inverse(p, s.psi, weight_bound(*g, kWeightCap));
    LFModule m2(g, s.m.space);
    m2.d = conjugate_structure(s.m, s.psi, inv);
    return WeakLP{Morphism{m2, adjoint_module(g), compose(p, s.f, s.psi)}};
}

// Psi as a morphism from stress_wlp's module to the unconjugated one, and the unconjugated weak LP module.
inline std::pair<Morphism, WeakLP> stress_conjugation(unsigned seed = 7) {
    StressData s = stress_data(seed);
    WeakLP w = stress_wlp(seed);
    return {Morphism{w.module(), s.m, s.psi}, WeakLP{Morphism{s.m, adjoint_module(s.m.alg), s.f}}};
}

// sl2 + <t> with t central, and the inclusion of sl2.
inline DGLAData sl2_plus_line_data() {
    DGLAData d = sl2_data();
    d.space = GradedSpace({{"h", 0}, {"e", 0}, {"f", 0}, {"t", 0}});
    return d;
}

struct PullbackFixture {
    DGLAMorphism base;  // sl2 -> sl2 + <t>
    WeakLP small;       // identity on the adjoint of sl2
    WeakLP big;         // M' = sl2 + span{u, w}, d u = xi_t w, f' = sl2 part
    Morphism phi;       // inclusion of the adjoint of sl2 into M'
};

inline PullbackFixture pullback_fixture() {
    auto g = sl2();
    auto g2 = validate_dgla(sl2_plus_line_data());
    LinearMap incl(g->space(), g2->space(), 0);
    for (int x = 0; x < 3; ++x) incl.set(x, x, 1);
    LFModule m2(g2, GradedSpace({{"h", 0}, {"e", 0}, {"f", 0}, {"u", 0}, {"w", 0}}));
    LFModule ad = adjoint_module(g);
    for (int x = 0; x < 3; ++x) m2.d.img[x] = ad.d.img[x];
    m2.d.img[3].add(Word{3}, 4, 1);
    WMap f2(m2.space, g2->space(), 0);
    for (int x = 0; x < 3; ++x) f2.img[x] = CE::unit(x);
    WMap phi(ad.space, m2.space, 0);
    for (int x = 0; x < 3; ++x) phi.img[x] = CE::unit(x);
    return PullbackFixture{DGLAMorphism{g, g2, incl}, identity_wlp(g), WeakLP{Morphism{m2, adjoint_module(g2), f2}}, Morphism{ad, m2, phi}};
}

}  // namespace lpinf::fixtures
