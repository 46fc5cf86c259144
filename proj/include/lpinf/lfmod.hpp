#pragma once

#include "module.hpp"

#include <functional>

namespace lpinf {

// Largest possible word length, or `cap` when some generator is even.
inline int weight_bound(const DGLieAlgebra& g, int cap) {
    for (int x = 0; x < g.dim(); ++x)
        if (!g.par().odd(x)) return cap;
    return g.dim();
}

// All canonical words of length k.
inline std::vector<Word> words_of_length(const Parities& p, int n, int k) {
    std::vector<Word> out;
    Word cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int x = start; x < n; ++x) {
            if (!cur.empty() && cur.back() == x && p.odd(x)) continue;
            cur.push_back(x);
            rec(x);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Applies a linear map target-wise (C(g)-linearly, degree 0 or with Koszul sign for odd shift).
inline CE apply_linear(const Parities& p, const LinearMap& f, const CE& e) {
    CE out;
    for (auto& [k, c] : e.terms) {
        int s = parity(f.shift()) && parity(p.word_degree(k.first)) ? -1 : 1;
        for (auto it = f.entries().lower_bound({k.second, 0}); it != f.entries().end() && it->first.first == k.second; ++it)
            out.add(k.first, it->first.second, c * it->second * s);
    }
    return out;
}

inline WMap restrict_weights(const WMap& f, int lo, int hi) {
    WMap out(f.src, f.tgt, f.shift);
    for (int i = 0; i < f.src.dim(); ++i)
        for (auto& [k, c] : f.img[i].terms) {
            int w = static_cast<int>(k.first.size());
            if (w >= lo && w <= hi) out.img[i].terms.emplace(k, c);
        }
    return out;
}

// Inverse of an infinity isomorphism with identity leading term.
inline WMap triangular_inverse(const Parities& p, const WMap& psi, int cap) {
    WMap inv = WMap::identity(psi.src);
    WMap higher = restrict_weights(psi, 1, cap);
    int maxw = std::max(1, higher.max_weight());
    WMap term = WMap::identity(psi.src);
    int zeros = 0;
    for (int k = 1; k <= cap; ++k) {
        // (-higher)^k
        term = compose(p, higher, term);
        term *= -1;
        term = restrict_weights(term, 0, cap);
        bool z = true;
        for (auto& e : term.img) z = z && e.zero();
        if (z) {
            if (++zeros >= maxw) break;
        } else {
            zeros = 0;
        }
        inv += term;
    }
    return restrict_weights(inv, 0, cap);
}

struct Strictification {
    Morphism psi;      // iso with psi_0 = id
    LFModule modified; // the conjugated module
    Morphism strict;   // the strictified (co)fibration
};

inline constexpr int kWeightCap = 24;

inline WMap conjugate_structure(const LFModule& m, const WMap& psi, const WMap& psi_inv) {
    // d~ = Psi^{-1} d_tot Psi on generators.
    WMap d(m.space, m.space, 1);
    for (int i = 0; i < m.dim(); ++i) d.img[i] = extend(m.par(), psi_inv, total_differential(m, psi.img[i]));
    return d;
}

inline Strictification strictify_fibration(const Morphism& phi) {
    LinearMap f0 = phi.f.linear0();
    if (!is_surjective(f0)) throw Error("NotFibration", "leading component is not surjective");
    auto& p = phi.src.par();
    int cap = weight_bound(*phi.src.alg, kWeightCap);
    LinearMap sigma = right_inverse(f0);
    std::vector<WMap> comps{strict(LinearMap::identity(phi.src.space))};
    std::vector<WMap> phik;
    int maxw = phi.f.max_weight();
    for (int q = 0; q <= maxw; ++q) phik.push_back(phi.f.component(q));
    int zeros = 0;
    for (int k = 1; k <= cap; ++k) {
        WMap next(phi.src.space, phi.src.space, 0);
        for (int i = 0; i < phi.src.dim(); ++i) {
            CE acc;
            for (int q = 1; q <= std::min(k, maxw); ++q) acc += extend(p, phik[q], comps[k - q].img[i]);
            next.img[i] = apply_linear(p, sigma, acc);
            next.img[i] *= -1;
        }
        bool z = true;
        for (auto& e : next.img) z = z && e.zero();
        comps.push_back(next);
        if (z) {
            if (++zeros >= std::max(1, maxw)) break;
        } else {
            zeros = 0;
        }
    }
    WMap psi(phi.src.space, phi.src.space, 0);
    for (auto& c : comps) psi += c;
    WMap inv = triangular_inverse(p, psi, cap);
    LFModule mod(phi.src.alg, phi.src.space);
    mod.d = conjugate_structure(phi.src, psi, inv);
    Strictification out;
    out.modified = mod;
    out.psi = Morphism{mod, phi.src, psi};
    out.strict = Morphism{mod, phi.tgt, compose(p, phi.f, psi)};
    return out;
}

inline Strictification strictify_cofibration(const Morphism& phi) {
    LinearMap f0 = phi.f.linear0();
    if (!is_injective(f0)) throw Error("NotCofibration", "leading component is not injective");
    auto& p = phi.src.par();
    int cap = weight_bound(*phi.src.alg, kWeightCap);
    LinearMap r = left_inverse(f0);
    int maxw = phi.f.max_weight();
    std::vector<WMap> phik;
    for (int q = 0; q <= maxw; ++q) phik.push_back(phi.f.component(q));
    std::vector<WMap> comps{strict(LinearMap::identity(phi.tgt.space))};
    int zeros = 0;
    for (int k = 1; k <= cap; ++k) {
        WMap next(phi.tgt.space, phi.tgt.space, 0);
        for (int n = 0; n < phi.tgt.dim(); ++n) {
            Vec rn = r.column(n);
            CE acc;
            for (int m = 0; m < phi.src.dim(); ++m) {
                if (rn[m] == 0) continue;
                CE part;
                if (k <= maxw) part += phik[k].img[m];
                for (int q = 1; q < k; ++q)
                    if (k - q <= maxw) part += extend(p, comps[q], phik[k - q].img[m]);
                part *= rn[m];
                acc += part;
            }
            acc *= -1;
            next.img[n] = acc;
        }
        bool z = true;
        for (auto& e : next.img) z = z && e.zero();
        comps.push_back(next);
        if (z) {
            if (++zeros >= std::max(1, maxw)) break;
        } else {
            zeros = 0;
        }
    }
    WMap psi(phi.tgt.space, phi.tgt.space, 0);
    for (auto& c : comps) psi += c;
    WMap inv = triangular_inverse(p, psi, cap);
    LFModule mod(phi.tgt.alg, phi.tgt.space);
    // d' = Psi d_tot Psi^{-1}
    mod.d = conjugate_structure(phi.tgt, inv, psi);
    Strictification out;
    out.modified = mod;
    out.psi = Morphism{phi.tgt, mod, psi};
    out.strict = Morphism{phi.src, mod, compose(p, psi, phi.f)};
    return out;
}

// Kernel of a surjective strict map, with coordinates read at the free positions.
struct KernelData {
    GradedSpace space;
    std::vector<Vec> vectors;  // over the domain
    std::vector<int> free_pos;
};

inline KernelData kernel_of(const LinearMap& f) {
    KernelData k;
    std::vector<BasisElement> b;
    for (int deg : f.domain().degrees()) {
        auto ds = f.domain().slice(deg);
        Matrix m = f.slice_matrix(deg);
        std::vector<bool> piv(ds.size(), false);
        if (!m.empty()) {
            Matrix r = m;
            for (int c : rref(r)) piv[c] = true;
        }
        auto ker = m.empty() ? std::vector<Vec>{} : kernel_basis(m, static_cast<int>(ds.size()));
        size_t next = 0;
        for (size_t j = 0; j < ds.size(); ++j) {
            if (piv[j]) continue;
            Vec v(f.domain().dim(), 0);
            if (m.empty()) v[ds[j]] = 1;
            else
                for (size_t t = 0; t < ds.size(); ++t) v[ds[t]] = ker[next][t];
            ++next;
            k.vectors.push_back(v);
            k.free_pos.push_back(ds[j]);
            b.push_back({"ker." + f.domain().name(ds[j]), deg});
        }
    }
    k.space = GradedSpace(b);
    return k;
}

inline CE to_kernel_coords(const KernelData& k, const CE& e) {
    CE out;
    for (auto& [key, c] : e.terms)
        for (size_t i = 0; i < k.free_pos.size(); ++i)
            if (key.second == k.free_pos[i]) out.add(key.first, static_cast<int>(i), c);
    return out;
}

struct Pullback {
    LFModule module;          // P = M' (+) ker
    Morphism to_fibration_source;  // P -> M
    Morphism to_other;        // P -> M' (strict projection)
    Strictification strictified;
};

// Pullback of the fibration phi: M -> N along psi: M' -> N.
inline Pullback pullback(const Morphism& phi, const Morphism& psi) {
    if (!is_surjective(phi.f.linear0())) throw Error("NotFibration", "pullback requires a fibration");
    Pullback out;
    out.strictified = strictify_fibration(phi);
    const LFModule& mt = out.strictified.modified;
    const Parities& p = mt.par();
    LinearMap f0 = phi.f.linear0();
    LinearMap sigma = right_inverse(f0);
    KernelData ker = kernel_of(f0);
    const LFModule& m1 = psi.src;
    int n1 = m1.dim(), nk = ker.space.dim();
    LFModule P(mt.alg, concat({m1.space, ker.space}));
    // q: P -> M~, q(m') = sigma psi(m'), q(k) = k.
    WMap q(P.space, mt.space, 0);
    for (int i = 0; i < n1; ++i) q.img[i] = apply_linear(p, sigma, psi.f.img[i]);
    for (int j = 0; j < nk; ++j) q.img[n1 + j] = vec_to_ce(ker.vectors[j]);
    WMap sigma_psi(m1.space, mt.space, 0);
    for (int i = 0; i < n1; ++i) sigma_psi.img[i] = q.img[i];
    for (int i = 0; i < n1; ++i) {
        P.d.img[i] = m1.d.img[i];
        CE second = total_differential(mt, q.img[i]);
        second -= extend(p, sigma_psi, m1.d.img[i]);
        P.d.img[i] += reindex(to_kernel_coords(ker, second), n1);
    }
    for (int j = 0; j < nk; ++j) P.d.img[n1 + j] = reindex(to_kernel_coords(ker, total_differential(mt, q.img[n1 + j])), n1);
    out.module = P;
    WMap pr1(P.space, m1.space, 0);
    for (int i = 0; i < n1; ++i) pr1.img[i] = CE::unit(i);
    out.to_other = Morphism{P, m1, pr1};
    out.to_fibration_source = Morphism{P, phi.src, compose(p, out.strictified.psi.f, q)};
    return out;
}

struct PathObject {
    LFModule base, total;
    Morphism s, eps0, eps1, eps01;  // eps01: J(M) -> M (+) M
};

// Basis blocks "1.m", "t.m", "dt.m"; the last has degree |m| + 1.
inline PathObject path_object(const LFModule& m) {
    int n = m.dim();
    const Parities& p = m.par();
    LFModule J(m.alg, concat({rename(m.space, "1."), rename(m.space, "t."), rename(m.space, "dt.", 1)}));
    for (int i = 0; i < n; ++i) {
        J.d.img[i] = m.d.img[i];
        J.d.img[n + i] = reindex(m.d.img[i], n);
        J.d.img[n + i].add(Word{}, 2 * n + i, 1);
        for (auto& [k, c] : m.d.img[i].terms)
            J.d.img[2 * n + i].add(k.first, 2 * n + k.second, -c * sign_of(p.word_degree(k.first)));
    }
    PathObject po;
    po.base = m;
    po.total = J;
    WMap s(m.space, J.space, 0), e0(J.space, m.space, 0), e1(J.space, m.space, 0);
    LFModule mm = direct_sum(m, m);
    WMap e01(J.space, mm.space, 0);
    for (int i = 0; i < n; ++i) {
        s.img[i] = CE::unit(i);
        e0.img[i] = CE::unit(i);
        e1.img[i] = CE::unit(i);
        e1.img[n + i] = CE::unit(i);
        e01.img[i] = CE::unit(i) + CE::unit(n + i);
        e01.img[n + i] = CE::unit(n + i);
    }
    po.s = Morphism{m, J, s};
    po.eps0 = Morphism{J, m, e0};
    po.eps1 = Morphism{J, m, e1};
    po.eps01 = Morphism{J, mm, e01};
    return po;
}

struct HomotopyCertificate {
    Morphism f, f2;
    WMap h;  // shift -1, source of f -> C(g, target)
};

struct HomotopyReport {
    bool direct = false, path = false;
    std::optional<Violation> witness;
};

// H = 1 (x) f + t (x) (f' - f) - dt (x) h, a morphism into the path object of the target.
inline Morphism assemble_path_homotopy(const HomotopyCertificate& c, const PathObject& po) {
    const Parities& p = c.f.src.par();
    int n = c.f.tgt.dim();
    WMap H(c.f.src.space, po.total.space, 0);
    for (int i = 0; i < c.f.src.dim(); ++i) {
        H.img[i] = c.f.f.img[i];
        H.img[i] += reindex(c.f2.f.img[i] - c.f.f.img[i], n);
        for (auto& [k, v] : c.h.img[i].terms) H.img[i].add(k.first, 2 * n + k.second, -v * sign_of(p.word_degree(k.first)));
    }
    return Morphism{c.f.src, po.total, H};
}

inline HomotopyReport verify_homotopy(const HomotopyCertificate& c) {
    if (!(c.f.src.space == c.f2.src.space) || !(c.f.tgt.space == c.f2.tgt.space) || c.h.shift != -1)
        throw Error("ShapeMismatch", "homotopy certificate shapes differ");
    HomotopyReport r;
    const Parities& p = c.f.src.par();
    r.direct = true;
    for (int i = 0; i < c.f.src.dim(); ++i) {
        CE lhs = c.f.f.img[i] - c.f2.f.img[i];
        CE rhs = total_differential(c.f.tgt, c.h.img[i]) + extend(p, c.h, total_differential(c.f.src, CE::unit(i)));
        CE diff = lhs - rhs;
        if (!diff.zero()) {
            r.direct = false;
            auto& k = diff.terms.begin()->first;
            r.witness = Violation{"NotHomotopy", {c.f.src.space.name(i), word_str(*c.f.src.alg, k.first) + " (x) " + c.f.tgt.space.name(k.second)},
                                  "F - F' != d h + h d"};
            break;
        }
    }
    PathObject po = path_object(c.f.tgt);
    Morphism H = assemble_path_homotopy(c, po);
    r.path = !check_morphism(H).has_value() && compose(H.src.par(), po.eps0.f, H.f) == c.f.f &&
             compose(H.src.par(), po.eps1.f, H.f) == c.f2.f;
    if (!r.path && !r.witness) r.witness = Violation{"PathAssembly", {}, "assembled map into the path object is not a morphism"};
    return r;
}

struct LiftProblem {
    Morphism j;  // A -> B
    Morphism p;  // X -> Y
    Morphism f;  // A -> X
    Morphism g;  // B -> Y
    std::optional<LinearMap> l0;  // prescribed leading component
};

// Solves the weight-k conditions for l_k by exact linear algebra.
inline Morphism construct_lift(const LiftProblem& pr, bool check_hypothesis = true) {
    const LFModule &A = pr.j.src, &B = pr.j.tgt, &X = pr.p.src;
    const Parities& par = B.par();
    auto cj = classify(pr.j), cp = classify(pr.p);
    if (!cj.cofibration) throw Error("HypothesisNotMet", "j is not a cofibration");
    if (!cp.fibration) throw Error("HypothesisNotMet", "p is not a fibration");
    if (check_hypothesis && !cj.weak_equivalence && !cp.weak_equivalence)
        throw Error("HypothesisNotMet", "neither coker(j) nor ker(p) is acyclic");
    int ng = B.alg->dim();
    int cap = weight_bound(*B.alg, 8);
    WMap l(B.space, X.space, 0);
    int maxin = std::max({pr.f.f.max_weight(), pr.g.f.max_weight(), pr.j.f.max_weight(), pr.p.f.max_weight(), X.d.max_weight(), B.d.max_weight(), 1});

    // Residual of all constraints restricted to weight k, as a flat vector.
    auto residual = [&](const WMap& lm, int k) {
        std::vector<std::pair<std::pair<Word, int>, Scalar>> flat;
        std::vector<CE> parts;
        for (int a = 0; a < A.dim(); ++a) parts.push_back((extend(par, lm, pr.j.f.img[a]) - pr.f.f.img[a]).weight(k));
        for (int b = 0; b < B.dim(); ++b) parts.push_back((extend(par, pr.p.f, lm.img[b]) - pr.g.f.img[b]).weight(k));
        for (int b = 0; b < B.dim(); ++b)
            parts.push_back((extend(par, lm, total_differential(B, CE::unit(b))) - total_differential(X, lm.img[b])).weight(k));
        return parts;
    };
    int zeros = 0;
    for (int k = 0; k <= cap; ++k) {
        if (k == 0 && pr.l0) {
            for (auto& [key, c] : pr.l0->entries()) l.img[key.first].add(Word{}, key.second, c);
            continue;
        }
        // unknowns (b, word, x)
        struct Unknown {
            int b;
            Word w;
            int x;
        };
        std::vector<Unknown> unk;
        auto words = words_of_length(par, ng, k);
        for (int b = 0; b < B.dim(); ++b)
            for (auto& w : words)
                for (int x = 0; x < X.dim(); ++x)
                    if (par.word_degree(w) + X.space.degree(x) == B.space.degree(b)) unk.push_back({b, w, x});
        auto base = residual(l, k);
        // equation index: (part, key)
        std::map<std::pair<int, std::pair<Word, int>>, int> eq;
        auto eq_index = [&](int part, const std::pair<Word, int>& key) {
            auto [it, fresh] = eq.try_emplace({part, key}, static_cast<int>(eq.size()));
            return it->second;
        };
        std::vector<std::vector<std::pair<int, Scalar>>> cols(unk.size());
        for (size_t u = 0; u < unk.size(); ++u) {
            WMap e(B.space, X.space, 0);
            e.img[unk[u].b].add(unk[u].w, unk[u].x, 1);
            // linear part: residual(l + e) - residual(l), computed directly on e without the constants
            std::vector<CE> parts;
            for (int a = 0; a < A.dim(); ++a) parts.push_back(extend(par, e, pr.j.f.img[a]).weight(k));
            for (int b = 0; b < B.dim(); ++b) parts.push_back(extend(par, pr.p.f, e.img[b]).weight(k));
            for (int b = 0; b < B.dim(); ++b)
                parts.push_back((extend(par, e, total_differential(B, CE::unit(b))) - total_differential(X, e.img[b])).weight(k));
            for (size_t pi = 0; pi < parts.size(); ++pi)
                for (auto& [key, c] : parts[pi].terms) cols[u].push_back({eq_index(static_cast<int>(pi), key), c});
        }
        for (size_t pi = 0; pi < base.size(); ++pi)
            for (auto& [key, c] : base[pi].terms) eq_index(static_cast<int>(pi), key);
        int rows = static_cast<int>(eq.size()), ncols = static_cast<int>(unk.size());
        if (rows == 0) {
            if (++zeros > maxin) break;
            continue;
        }
        Matrix a(rows, std::vector<Scalar>(ncols, 0));
        Vec rhs(rows, 0);
        for (int u = 0; u < ncols; ++u)
            for (auto& [r, c] : cols[u]) a[r][u] += c;
        for (size_t pi = 0; pi < base.size(); ++pi)
            for (auto& [key, c] : base[pi].terms) rhs[eq.at({static_cast<int>(pi), key})] = -c;
        auto x = solve(a, rhs, ncols);
        if (!x) throw Error("NoSolution", "weight " + std::to_string(k) + " lifting equations are inconsistent");
        bool any = false;
        for (int u = 0; u < ncols; ++u)
            if ((*x)[u] != 0) {
                l.img[unk[u].b].add(unk[u].w, unk[u].x, (*x)[u]);
                any = true;
            }
        bool rhs_zero = is_zero(rhs);
        if (!any && rhs_zero) {
            if (++zeros > maxin) break;
        } else {
            zeros = 0;
        }
    }
    Morphism out{B, X, l};
    if (auto v = check_morphism(out)) throw Error("NoSolution", "lift is not a morphism: " + v->str());
    return out;
}

struct Factorization {
    Morphism first, second;  // f = second o first
    Classification c1, c2;
    LFModule middle;
};

// Cone(M): blocks x.m (|m|) and y.m (|m| - 1), trivial action, d x_m = x_{dm}, d y_m = x_m - y_{dm}.
inline LFModule cone(const LFModule& m) {
    int n = m.dim();
    LFModule c(m.alg, concat({rename(m.space, "x."), rename(m.space, "y.", -1)}));
    LinearMap d0 = m.d0();
    for (auto& [k, v] : d0.entries()) {
        c.d.img[k.first].add(Word{}, k.second, v);
        c.d.img[n + k.first].add(Word{}, n + k.second, -v);
    }
    for (int i = 0; i < n; ++i) c.d.img[n + i].add(Word{}, i, 1);
    return c;
}

// M -> N (+) Cone(M) -> N, or M -> M (+) C -> N with C acyclic.
inline Factorization factorize(const Morphism& f, bool cone_mode) {
    const Parities& p = f.src.par();
    Factorization out;
    if (cone_mode) {
        LFModule c = cone(f.src);
        LFModule mid = direct_sum(f.tgt, c, "", "");
        int nn = f.tgt.dim(), n = f.src.dim();
        WMap j(f.src.space, mid.space, 0);
        for (int i = 0; i < n; ++i) {
            j.img[i] = f.f.img[i];
            j.img[i].add(Word{}, nn + i, 1);
            for (auto& [k, v] : f.src.d.img[i].terms)
                if (!k.first.empty()) j.img[i].add(k.first, nn + n + k.second, v * sign_of(p.word_degree(k.first)));
        }
        WMap s(mid.space, f.tgt.space, 0);
        for (int i = 0; i < nn; ++i) s.img[i] = CE::unit(i);
        out.middle = mid;
        out.first = Morphism{f.src, mid, j};
        out.second = Morphism{mid, f.tgt, s};
    } else {
        LinearMap f0 = f.f.linear0();
        const GradedSpace& N = f.tgt.space;
        int nn = N.dim(), n = f.src.dim();
        // complement of im f0 by basis vectors, and coordinates modulo im f0
        std::vector<int> comp;
        std::map<int, Cohomology> quot;  // reuse: boundaries = im f0 slice, representatives = chosen basis vectors
        for (int deg : N.degrees()) {
            auto im = rank_kernel_image(f0, deg).image;
            std::vector<Vec> cols = im;
            for (int i : N.slice(deg)) {
                Vec e(nn, 0);
                e[i] = 1;
                cols.push_back(e);
            }
            Matrix a(nn, std::vector<Scalar>(cols.size(), 0));
            for (int r = 0; r < nn; ++r)
                for (size_t c = 0; c < cols.size(); ++c) a[r][c] = cols[c][r];
            Cohomology q;
            q.boundaries = im;
            for (int c : rref(a))
                if (c >= static_cast<int>(im.size())) {
                    q.representatives.push_back(cols[c]);
                    comp.push_back(N.slice(deg)[c - im.size()]);
                }
            q.dimension = static_cast<int>(q.representatives.size());
            quot[deg] = q;
        }
        int nd = static_cast<int>(comp.size());
        std::vector<BasisElement> cb;
        for (int i : comp) cb.push_back({"x." + N.name(i), N.degree(i)});
        for (int i : comp) cb.push_back({"z." + N.name(i), N.degree(i) + 1});
        LFModule C(f.src.alg, GradedSpace(cb));
        LinearMap dN = f.tgt.d0();
        std::vector<int> pos(nn, -1);
        for (int t = 0; t < nd; ++t) pos[comp[t]] = t;
        // dD(d) = class of dN sigma(d)
        auto dD = [&](int t) {
            Vec v = dN.column(comp[t]);
            int deg = N.degree(comp[t]) + 1;
            Sparse out;
            if (!quot.count(deg) || is_zero(v)) return out;
            Vec c = quot.at(deg).coordinates(v);
            for (size_t r = 0; r < c.size(); ++r) {
                int idx = 0;
                const Vec& rep = quot.at(deg).representatives[r];
                for (int s = 0; s < nn; ++s)
                    if (rep[s] == 1) idx = s;
                sparse_add(out, pos[idx], c[r]);
            }
            return out;
        };
        LinearMap p0(concat({f.src.space, C.space}), N, 0);
        for (auto& [k, v] : f0.entries()) p0.set(k.first, k.second, v);
        for (int t = 0; t < nd; ++t) {
            Sparse dd = dD(t);
            for (auto& [u, c] : dd) C.d.img[t].add(Word{}, u, c);
            C.d.img[t].add(Word{}, nd + t, 1);
            for (auto& [u, c] : dd) C.d.img[nd + t].add(Word{}, nd + u, -c);
            p0.set(n + t, comp[t], 1);
            Vec z = dN.column(comp[t]);
            for (auto& [u, c] : dd) z[comp[u]] -= c;
            for (int s = 0; s < nn; ++s)
                if (z[s] != 0) p0.set(n + nd + t, s, z[s]);
        }
        LFModule mid = direct_sum(f.src, C, "", "");
        WMap i(f.src.space, mid.space, 0);
        for (int a = 0; a < n; ++a) i.img[a] = CE::unit(a);
        Morphism im{f.src, mid, i};
        LFModule zero = zero_module(f.src.alg);
        Morphism toz{f.tgt, zero, WMap(f.tgt.space, zero.space, 0)};
        Morphism gz{mid, zero, WMap(mid.space, zero.space, 0)};
        LiftProblem lp{im, toz, f, gz, p0};
        out.middle = mid;
        out.first = im;
        out.second = construct_lift(lp, false);
    }
    out.c1 = classify(out.first);
    out.c2 = classify(out.second);
    return out;
}


// H(C(g, M), d_tot) on the quotient by weights > cutoff.
struct TotalCohomology {
    std::map<int, int> dims;
    std::set<int> stabilized;
    bool bounded = false;  // every generator of C(g) has degree >= 1
};

inline TotalCohomology total_cohomology(const LFModule& m, int cutoff) {
    const Parities& p = m.par();
    const DGLieAlgebra& g = *m.alg;
    int n = g.dim();
    std::vector<std::pair<Word, int>> keys;
    std::vector<BasisElement> b;
    for (int k = 0; k <= cutoff; ++k)
        for (auto& w : words_of_length(p, n, k))
            for (int i = 0; i < m.dim(); ++i) {
                keys.push_back({w, i});
                b.push_back({word_str(g, w) + " (x) " + m.space.name(i), p.word_degree(w) + m.space.degree(i)});
            }
    std::map<std::pair<Word, int>, int> index;
    for (size_t i = 0; i < keys.size(); ++i) index[keys[i]] = static_cast<int>(i);
    GradedSpace c(b);
    LinearMap d(c, c, 1);
    for (size_t i = 0; i < keys.size(); ++i) {
        CE e;
        e.add(keys[i].first, keys[i].second, 1);
        for (auto& [k, v] : total_differential(m, e).terms)
            if (static_cast<int>(k.first.size()) <= cutoff) d.add(static_cast<int>(i), index.at(k), v);
    }
    TotalCohomology out;
    for (auto& [deg, h] : complex_cohomology(d).by_degree) out.dims[deg] = h.dimension;
    out.bounded = true;
    bool all_odd = true;
    for (int x = 0; x < n; ++x) {
        if (p.deg[x] < 1) out.bounded = false;
        if (!p.odd(x)) all_odd = false;
    }
    if (out.bounded && m.dim() > 0) {
        int lo = *m.space.degrees().begin();
        for (auto& [deg, dim] : out.dims)
            if ((all_odd && cutoff >= n) || deg + 1 - lo <= cutoff) out.stabilized.insert(deg);
    }
    return out;
}

}  // namespace lpinf
