#pragma once

#include "lfmod.hpp"

namespace lpinf {

// Weak LP module: an infinity morphism into the adjoint module.
struct WeakLP {
    Morphism f;
    const LFModule& module() const { return f.src; }
    const Alg& alg() const { return f.src.alg; }
};

inline std::optional<Violation> check_wlp(const WeakLP& w) {
    LFModule ad = adjoint_module(w.alg());
    if (!(w.f.tgt.space == ad.space) || !(w.f.tgt.d == ad.d)) return Violation{"NotAdjointTarget", {}, "target is not the adjoint module"};
    if (auto v = check_module(w.f.src)) return v;
    return check_morphism(w.f);
}

inline WeakLP validate_wlp(WeakLP w) {
    if (auto v = check_wlp(w)) throw ValidationError(*v);
    return w;
}

inline WeakLP identity_wlp(const Alg& g) {
    LFModule ad = adjoint_module(g);
    return WeakLP{identity_morphism(ad)};
}

struct LeibnizAlgebra {
    GradedSpace space;
    std::vector<Sparse> d;
    std::vector<std::vector<Sparse>> br;  // x <> y, full table

    LeibnizAlgebra() = default;
    explicit LeibnizAlgebra(GradedSpace v) : space(std::move(v)), d(space.dim()), br(space.dim(), std::vector<Sparse>(space.dim())) {}
    int dim() const { return space.dim(); }
    int deg(int x) const { return space.degree(x); }

    Sparse mult(const Sparse& a, const Sparse& b) const {
        Sparse out;
        for (auto& [x, cx] : a)
            for (auto& [y, cy] : b)
                for (auto& [z, c] : br[x][y]) sparse_add(out, z, cx * cy * c);
        return out;
    }
    Sparse diff(const Sparse& a) const {
        Sparse out;
        for (auto& [x, cx] : a)
            for (auto& [y, c] : d[x]) sparse_add(out, y, cx * c);
        return out;
    }

    std::optional<Violation> check() const {
        int n = dim();
        auto nm = [&](int i) { return space.name(i); };
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (auto& [z, c] : br[x][y])
                    if (deg(z) != deg(x) + deg(y)) return Violation{"Degree", {nm(x), nm(y)}, ""};
        for (int x = 0; x < n; ++x)
            if (!diff(d[x]).empty()) return Violation{"DSquare", {nm(x)}, ""};
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                Sparse ex{{x, 1}}, ey{{y, 1}};
                Sparse lhs = diff(br[x][y]);
                for (auto& [z, c] : mult(d[x], ey)) sparse_add(lhs, z, -c);
                for (auto& [z, c] : mult(ex, d[y])) sparse_add(lhs, z, -c * sign_of(deg(x)));
                if (!lhs.empty()) return Violation{"Derivation", {nm(x), nm(y)}, ""};
            }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    Sparse ex{{x, 1}}, ey{{y, 1}}, ez{{z, 1}};
                    Sparse lhs = mult(ex, br[y][z]);
                    for (auto& [t, c] : mult(br[x][y], ez)) sparse_add(lhs, t, -c);
                    for (auto& [t, c] : mult(ey, br[x][z])) sparse_add(lhs, t, -c * sign_of(deg(x) * deg(y)));
                    if (!lhs.empty()) return Violation{"LeibnizRule", {nm(x), nm(y), nm(z)}, ""};
                }
        return std::nullopt;
    }
    bool operator==(const LeibnizAlgebra& o) const { return space == o.space && d == o.d && br == o.br; }
};

// m1 <> m2 = iota_{f(m1)} d_1 m2.
inline LeibnizAlgebra leibniz_from_lp(const WeakLP& w) {
    if (w.f.f.max_weight() > 0) throw Error("NonStrict", "LP module has higher components");
    const LFModule& m = w.module();
    const Parities& p = m.par();
    LeibnizAlgebra L(m.space);
    WMap d1 = m.d.component(1);
    for (int x = 0; x < m.dim(); ++x) {
        for (auto& [k, c] : m.d.img[x].terms)
            if (k.first.empty()) sparse_add(L.d[x], k.second, c);
        for (int y = 0; y < m.dim(); ++y) {
            CE r = contract_mixed(p, w.f.f.img[x], d1.img[y]);
            for (auto& [k, c] : r.terms) sparse_add(L.br[x][y], k.second, c);
        }
    }
    return L;
}

struct LieQuotient {
    Alg lie;
    LinearMap projection;          // L -> L_Lie
    std::vector<int> complement;   // basis indices of L representing L_Lie
    std::vector<Vec> kernel;       // basis of the Leibniz kernel
    WeakLP lp;                     // L as an L_Lie-module with the projection
    LeibnizAlgebra rebuilt;        // G(F(L))
};

inline LieQuotient lie_quotient(const LeibnizAlgebra& L) {
    int n = L.dim();
    std::vector<Vec> span;
    auto add_span = [&](const Vec& v) {
        if (is_zero(v)) return false;
        Matrix a(n, std::vector<Scalar>(span.size() + 1, 0));
        for (int i = 0; i < n; ++i) {
            for (size_t j = 0; j < span.size(); ++j) a[i][j] = span[j][i];
            a[i][span.size()] = v[i];
        }
        if (matrix_rank(a) == static_cast<int>(span.size())) return false;
        span.push_back(v);
        return true;
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Sparse s = L.br[x][y];
            for (auto& [z, c] : L.br[y][x]) sparse_add(s, z, c * sign_of(L.deg(x) * L.deg(y)));
            add_span(sparse_to_vec(s, n));
        }
    for (bool grew = true; grew;) {
        grew = false;
        auto cur = span;
        for (auto& v : cur) {
            Sparse sv = vec_to_sparse(v);
            grew |= add_span(sparse_to_vec(L.diff(sv), n));
            for (int x = 0; x < n; ++x) {
                Sparse ex{{x, 1}};
                grew |= add_span(sparse_to_vec(L.mult(ex, sv), n));
                grew |= add_span(sparse_to_vec(L.mult(sv, ex), n));
            }
        }
    }
    LieQuotient q;
    // Homogeneous kernel basis and complement by basis vectors, per degree.
    std::vector<BasisElement> qb;
    std::map<int, Cohomology> quot;
    for (int deg : L.space.degrees()) {
        auto sl = L.space.slice(deg);
        std::vector<Vec> kd;
        for (auto& v : span) {
            Vec w(n, 0);
            for (int i : sl) w[i] = v[i];
            kd.push_back(w);
        }
        Matrix a(n, std::vector<Scalar>(kd.size(), 0));
        for (int i = 0; i < n; ++i)
            for (size_t j = 0; j < kd.size(); ++j) a[i][j] = kd[j][i];
        Cohomology c;
        for (int pc : rref(a)) c.boundaries.push_back(kd[pc]);
        std::vector<Vec> cols = c.boundaries;
        for (int i : sl) {
            Vec e(n, 0);
            e[i] = 1;
            cols.push_back(e);
        }
        Matrix b(n, std::vector<Scalar>(cols.size(), 0));
        for (int i = 0; i < n; ++i)
            for (size_t j = 0; j < cols.size(); ++j) b[i][j] = cols[j][i];
        for (int pc : rref(b))
            if (pc >= static_cast<int>(c.boundaries.size())) {
                int idx = sl[pc - c.boundaries.size()];
                c.representatives.push_back(cols[pc]);
                q.complement.push_back(idx);
                qb.push_back({L.space.name(idx), deg});
            }
        c.dimension = static_cast<int>(c.representatives.size());
        for (auto& v : c.boundaries) q.kernel.push_back(v);
        quot[deg] = c;
    }
    GradedSpace qs(qb);
    std::map<int, int> pos;
    for (size_t t = 0; t < q.complement.size(); ++t) pos[q.complement[t]] = static_cast<int>(t);
    auto project = [&](const Sparse& v, int deg) {
        Sparse out;
        if (v.empty()) return out;
        Vec c = quot.at(deg).coordinates(sparse_to_vec(v, n));
        auto& reps = quot.at(deg).representatives;
        for (size_t r = 0; r < c.size(); ++r)
            for (int i = 0; i < n; ++i)
                if (reps[r][i] == 1) sparse_add(out, pos.at(i), c[r]);
        return out;
    };
    DGLAData data;
    data.space = qs;
    int m = qs.dim();
    for (int a = 0; a < m; ++a) {
        int xa = q.complement[a];
        Sparse da = project(L.d[xa], L.deg(xa) + 1);
        if (!da.empty()) data.diff[a] = da;
        for (int b = a; b < m; ++b) {
            int xb = q.complement[b];
            Sparse br = project(L.br[xa][xb], L.deg(xa) + L.deg(xb));
            if (!br.empty()) data.bracket[{a, b}] = br;
        }
    }
    q.lie = make_algebra(data);
    q.projection = LinearMap(L.space, qs, 0);
    for (int x = 0; x < n; ++x)
        for (auto& [t, c] : project(Sparse{{x, 1}}, L.deg(x))) q.projection.set(x, t, c);
    // L as an L_Lie-module: rho(a; y) = rep(a) <> y.
    LFModule mod(q.lie, L.space);
    WMap f(L.space, qs, 0);
    for (int y = 0; y < n; ++y) {
        for (auto& [z, c] : L.d[y]) mod.d.img[y].add(Word{}, z, c);
        for (int a = 0; a < m; ++a)
            for (auto& [z, c] : L.br[q.complement[a]][y]) mod.d.img[y].add(Word{a}, z, c);
        for (auto& [t, c] : project(Sparse{{y, 1}}, L.deg(y))) f.img[y].add(Word{}, t, c);
    }
    q.lp = WeakLP{Morphism{mod, adjoint_module(q.lie), f}};
    q.rebuilt = leibniz_from_lp(q.lp);
    return q;
}

// Module g[1-k] (x) g with f_1(y (x) z) = iota_y alpha (x) z.
inline WeakLP wlp_from_two_cocycle(const Alg& g, const CE& alpha, int k) {
    const Parities& p = g->par();
    for (auto& [key, c] : alpha.terms)
        if (key.first.size() != 2 || p.word_degree(key.first) != k) throw Error("NotClosed", "alpha must be of weight 2 and degree k");
    if (!ce_differential(*g, alpha).zero()) throw Error("NotClosed", "d_CE alpha != 0");
    LFModule ad = adjoint_module(g);
    LFModule v = shifted(ad, 1 - k);
    LFModule m = tensor(v, ad);
    int n = g->dim();
    WMap f(m.space, ad.space, 0);
    for (int y = 0; y < n; ++y) {
        CE iy = contract(p, y, alpha);
        for (int z = 0; z < n; ++z)
            for (auto& [key, c] : iy.terms) f.img[y * n + z].add(key.first, z, c);
    }
    return WeakLP{Morphism{m, ad, f}};
}

// Lie pair data: g included in L by incl, B split into L by split.
struct LiePair {
    Alg big, sub;
    LinearMap incl;   // sub -> big
    GradedSpace quotient;
    LinearMap split;  // quotient -> big
};

struct PairProjections {
    LinearMap pr_sub, pr_quot;  // big -> sub, big -> quotient
};

inline PairProjections pair_projections(const LiePair& lp) {
    const GradedSpace& L = lp.big->space();
    int ns = lp.sub->dim(), nq = lp.quotient.dim(), nl = L.dim();
    if (ns + nq != nl) throw Error("NotSection", "dimensions of sub and quotient do not add up");
    // [incl | split] is invertible degreewise
    GradedSpace sum = concat({rename(lp.sub->space(), "g."), rename(lp.quotient, "b.")});
    LinearMap both(sum, L, 0);
    for (auto& [k, c] : lp.incl.entries()) both.set(k.first, k.second, c);
    for (auto& [k, c] : lp.split.entries()) both.set(ns + k.first, k.second, c);
    LinearMap inv;
    try {
        if (!is_injective(both)) throw Error("NotSection", "");
        inv = right_inverse(both);
    } catch (const Error&) {
        throw Error("NotSection", "image of the splitting is not complementary to the subalgebra");
    }
    PairProjections out{LinearMap(L, lp.sub->space(), 0), LinearMap(L, lp.quotient, 0)};
    for (auto& [k, c] : inv.entries()) {
        if (k.second < ns) out.pr_sub.set(k.first, k.second, c);
        else out.pr_quot.set(k.first, k.second - ns, c);
    }
    return out;
}

// Pair from spanning vectors of g in L and splitting vectors of B; structure of g by projection.
inline LiePair make_lie_pair(const Alg& big, const GradedSpace& sub_space, const std::vector<Sparse>& sub_vectors,
                             const GradedSpace& quotient, const std::vector<Sparse>& split_vectors) {
    LiePair lp{big, make_algebra(DGLAData{sub_space, {}, {}}), LinearMap(sub_space, big->space(), 0), quotient,
               LinearMap(quotient, big->space(), 0)};
    for (size_t i = 0; i < sub_vectors.size(); ++i)
        for (auto& [y, c] : sub_vectors[i]) lp.incl.set(static_cast<int>(i), y, c);
    for (size_t i = 0; i < split_vectors.size(); ++i)
        for (auto& [y, c] : split_vectors[i]) lp.split.set(static_cast<int>(i), y, c);
    if (!is_injective(lp.incl)) throw Error("NotSubalgebra", "subalgebra vectors are dependent");
    PairProjections pr = pair_projections(lp);
    int nl = big->dim();
    auto to_sub = [&](const Sparse& v) {
        if (!is_zero(pr.pr_quot.apply(sparse_to_vec(v, nl)))) throw Error("NotSubalgebra", "span is not closed under d and bracket");
        return vec_to_sparse(pr.pr_sub.apply(sparse_to_vec(v, nl)));
    };
    DGLAData d{sub_space, {}, {}};
    int ns = sub_space.dim();
    for (int x = 0; x < ns; ++x) {
        Sparse dx = to_sub(big->diff(sub_vectors[x]));
        if (!dx.empty()) d.diff[x] = dx;
        for (int y = x; y < ns; ++y) {
            Sparse b = to_sub(big->bracket(sub_vectors[x], sub_vectors[y]));
            if (!b.empty()) d.bracket[{x, y}] = b;
        }
    }
    lp.sub = validate_dgla(d);
    return lp;
}

inline WeakLP wlp_from_dgla_pair(const LiePair& lp) {
    const DGLieAlgebra& L = *lp.big;
    const Parities& p = lp.sub->par();
    if (!is_injective(lp.incl)) throw Error("NotSubalgebra", "inclusion is not injective");
    PairProjections pr = pair_projections(lp);
    int ns = lp.sub->dim(), nq = lp.quotient.dim();
    auto incl = [&](int x) { return vec_to_sparse(lp.incl.column(x)); };
    auto split = [&](int b) { return vec_to_sparse(lp.split.column(b)); };
    auto to_sub = [&](const Sparse& v) {
        Vec q = pr.pr_quot.apply(sparse_to_vec(v, L.dim()));
        if (!is_zero(q)) throw Error("NotSubalgebra", "subalgebra is not closed");
        return vec_to_sparse(pr.pr_sub.apply(sparse_to_vec(v, L.dim())));
    };
    for (int x = 0; x < ns; ++x) {
        Sparse dx = to_sub(L.diff(incl(x)));
        if (dx != lp.sub->d(x)) throw Error("NotSubalgebra", "inclusion does not commute with d");
        for (int y = x; y < ns; ++y)
            if (to_sub(L.bracket(incl(x), incl(y))) != lp.sub->br(x, y)) throw Error("NotSubalgebra", "inclusion does not preserve brackets");
    }
    // M = B[-1]; structure induced on B = L / g.
    LFModule m(lp.sub, rename(lp.quotient, "", 1));
    LFModule ad = adjoint_module(lp.sub);
    WMap f(m.space, ad.space, 0);
    auto quot = [&](const Sparse& v) { return vec_to_sparse(pr.pr_quot.apply(sparse_to_vec(v, L.dim()))); };
    auto sub = [&](const Sparse& v) { return vec_to_sparse(pr.pr_sub.apply(sparse_to_vec(v, L.dim()))); };
    for (int b = 0; b < nq; ++b) {
        Sparse jb = split(b);
        Sparse djb = L.diff(jb);
        Sparse db = quot(djb);
        for (auto& [c, v] : db) m.d.img[b].add(Word{}, c, v);
        int s = sign_of(lp.quotient.degree(b));
        // f_0 = (-1)^{|b|} (d j b - j d b)
        Sparse fail = djb;
        for (auto& [c, v] : db)
            for (auto& [z, w] : split(c)) sparse_add(fail, z, -v * w);
        for (auto& [x, v] : sub(fail)) f.img[b].add(Word{}, x, s * v);
        for (int a = 0; a < ns; ++a) {
            Sparse br = L.bracket(incl(a), jb);
            for (auto& [c, v] : quot(br)) m.d.img[b].add(Word{a}, c, v);
            for (auto& [x, v] : sub(br)) f.img[b].add(Word{a}, x, s * v);
        }
    }
    return WeakLP{Morphism{m, ad, f}};
}

// h(y (x) z) = (-1)^{|y|-1} iota_y eta (x) z, for alpha - alpha' = d_CE eta.
inline HomotopyCertificate homotopy_cohomologous(const Alg& g, const CE& alpha, const CE& eta, int k) {
    CE alpha2 = alpha - ce_differential(*g, eta);
    WeakLP f = wlp_from_two_cocycle(g, alpha, k), f2 = wlp_from_two_cocycle(g, alpha2, k);
    int n = g->dim();
    WMap h(f.f.src.space, f.f.tgt.space, -1);
    for (int y = 0; y < n; ++y) {
        CE iy = contract(g->par(), y, eta);
        int s = sign_of(g->deg(y) - 1);
        for (int z = 0; z < n; ++z)
            for (auto& [key, c] : iy.terms) h.img[y * n + z].add(key.first, z, s * c);
    }
    return HomotopyCertificate{f.f, f2.f, h};
}

// Splitting j' = j + incl lambda; h(b[-1]) = (-1)^{|b|+1} lambda(b).
inline HomotopyCertificate homotopy_splitting_change(const LiePair& lp, const LinearMap& lambda) {
    LiePair lp2 = lp;
    for (auto& [k, c] : lambda.entries())
        for (auto& [kk, ci] : lp.incl.entries())
            if (kk.first == k.second) lp2.split.add(k.first, kk.second, c * ci);
    WeakLP f = wlp_from_dgla_pair(lp), f2 = wlp_from_dgla_pair(lp2);
    WMap h(f.f.src.space, f.f.tgt.space, -1);
    for (auto& [k, c] : lambda.entries()) h.img[k.first].add(Word{}, k.second, c * sign_of(lp.quotient.degree(k.first) + 1));
    return HomotopyCertificate{f.f, f2.f, h};
}

// Dual module U = M^v[-1], basis "eta.m" of degree 1 - |m|, with the structure making contraction a chain map.
inline LFModule dual_shifted(const LFModule& m) {
    const Parities& p = m.par();
    std::vector<BasisElement> b;
    for (auto& e : m.space.basis()) b.push_back({"eta." + e.name, 1 - e.degree});
    LFModule u(m.alg, GradedSpace(b));
    for (int src = 0; src < m.dim(); ++src) {
        int du = m.space.degree(src);
        for (auto& [k, c] : m.d.img[src].terms) {
            int w = p.word_degree(k.first);
            u.d.img[k.second].add(k.first, src, c * sign_of((du - 1) * w + du));
        }
    }
    return u;
}

struct Derivation {
    LFModule target;        // U
    std::vector<CE> on_gen; // delta(xi_a) in C(g, U)
};

inline Derivation dualize_to_derivation(const WeakLP& w) {
    const LFModule& m = w.module();
    const Parities& p = m.par();
    Derivation d{dual_shifted(m), std::vector<CE>(w.alg()->dim())};
    for (int u = 0; u < m.dim(); ++u)
        for (auto& [k, c] : w.f.f.img[u].terms)
            d.on_gen[k.second].add(k.first, u, c * sign_of((m.space.degree(u) - 1) * p.word_degree(k.first)));
    return d;
}

inline WMap undualize(const Derivation& d, const LFModule& m) {
    const Parities& p = m.par();
    WMap f(m.space, m.alg->space(), 0);
    for (int a = 0; a < m.alg->dim(); ++a)
        for (auto& [k, c] : d.on_gen[a].terms)
            f.img[k.second].add(k.first, a, c * sign_of((m.space.degree(k.second) - 1) * p.word_degree(k.first)));
    return f;
}

// delta on a pure element; delta has degree 0 and acts as a derivation.
inline CE apply_derivation_to(const Derivation& d, const Parities& p, const CE& e) {
    CE out;
    for (auto& [k, c] : e.terms) {
        const Word& w = k.first;
        for (size_t i = 0; i < w.size(); ++i) {
            Word pre(w.begin(), w.begin() + static_cast<long>(i)), post(w.begin() + static_cast<long>(i) + 1, w.end());
            int post_deg = p.word_degree(post);
            for (auto& [kd, cd] : d.on_gen[w[i]].terms) {
                auto m1 = merge_words(p, pre, kd.first);
                if (!m1) continue;
                auto m2 = merge_words(p, m1->first, post);
                if (!m2) continue;
                int s = sign_of(d.target.space.degree(kd.second) * post_deg);
                out.add(m2->first, kd.second, c * cd * m1->second * m2->second * s);
            }
        }
    }
    return out;
}

inline std::optional<Violation> check_derivation(const Derivation& d, const Parities& p, const DGLieAlgebra& g) {
    if (auto v = check_module(d.target)) return v;
    int n = g.dim();
    for (int a = 0; a < n; ++a) {
        CE lhs = apply_derivation_to(d, p, g.dce_gen(a));
        CE rhs = total_differential(d.target, d.on_gen[a]);
        if (!(lhs == rhs)) return Violation{"NotChainMap", {"xi_" + g.space().name(a)}, "delta d_CE != d_U delta"};
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            CE prod = multiply(p, CE::gen(a), CE::gen(b));
            CE lhs = apply_derivation_to(d, p, prod);
            CE rhs = multiply(p, CE::gen(a), d.on_gen[b]);
            CE t = multiply(p, CE::gen(b), d.on_gen[a]);
            t *= sign_of(p.deg[a] * p.deg[b]);
            rhs += t;
            if (!(lhs == rhs)) return Violation{"NotDerivation", {"xi_" + g.space().name(a), "xi_" + g.space().name(b)}, ""};
        }
    return std::nullopt;
}

}  // namespace lpinf
