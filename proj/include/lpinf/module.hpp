#pragma once

#include "dgla.hpp"

namespace lpinf {

// Weight-graded map M -> C(g, N): img[m] holds all weight components of the image of basis m.
struct WMap {
    GradedSpace src, tgt;
    int shift = 0;
    std::vector<CE> img;

    WMap() = default;
    WMap(GradedSpace s, GradedSpace t, int sh) : src(std::move(s)), tgt(std::move(t)), shift(sh), img(src.dim()) {}

    static WMap identity(const GradedSpace& v) {
        WMap f(v, v, 0);
        for (int i = 0; i < v.dim(); ++i) f.img[i] = CE::unit(i);
        return f;
    }
    int max_weight() const {
        int w = 0;
        for (auto& e : img) w = std::max(w, e.max_weight());
        return w;
    }
    WMap component(int k) const {
        WMap c(src, tgt, shift);
        for (int i = 0; i < src.dim(); ++i) c.img[i] = img[i].weight(k);
        return c;
    }
    LinearMap linear0() const {
        LinearMap f(src, tgt, shift);
        for (int i = 0; i < src.dim(); ++i)
            for (auto& [k, c] : img[i].terms)
                if (k.first.empty()) f.set(i, k.second, c);
        return f;
    }
    bool operator==(const WMap& o) const { return src == o.src && tgt == o.tgt && shift == o.shift && img == o.img; }
    WMap& operator+=(const WMap& o) {
        for (size_t i = 0; i < img.size(); ++i) img[i] += o.img[i];
        return *this;
    }
    WMap& operator-=(const WMap& o) {
        for (size_t i = 0; i < img.size(); ++i) img[i] -= o.img[i];
        return *this;
    }
    WMap& operator*=(const Scalar& s) {
        for (auto& e : img) e *= s;
        return *this;
    }
    friend WMap operator+(WMap a, const WMap& b) { return a += b; }
    friend WMap operator-(WMap a, const WMap& b) { return a -= b; }
};

// C(g)-linear extension with Koszul sign (-1)^{|omega| shift}.
inline CE extend(const Parities& p, const WMap& f, const CE& e) {
    CE out;
    for (auto& [k, c] : e.terms) {
        int s = parity(f.shift) && parity(p.word_degree(k.first)) ? -1 : 1;
        for (auto& [kf, cf] : f.img[k.second].terms) {
            auto m = merge_words(p, k.first, kf.first);
            if (m) out.add(m->first, kf.second, c * cf * s * m->second);
        }
    }
    return out;
}

inline int term_degree(const Parities& p, const GradedSpace& v, const std::pair<Word, int>& key) {
    return p.word_degree(key.first) + v.degree(key.second);
}

struct LFModule {
    Alg alg;
    GradedSpace space;
    WMap d;  // shift +1, all weights

    LFModule() = default;
    LFModule(Alg g, GradedSpace v) : alg(std::move(g)), space(v), d(v, v, 1) {}
    int dim() const { return space.dim(); }
    const Parities& par() const { return alg->par(); }
    LinearMap d0() const { return d.linear0(); }
};

inline CE total_differential(const LFModule& m, const CE& e) {
    std::vector<CE> gens(m.alg->dim());
    for (int x = 0; x < m.alg->dim(); ++x) gens[x] = m.alg->dce_gen(x);
    CE out = apply_derivation(m.par(), gens, 1, e);
    out += extend(m.par(), m.d, e);
    return out;
}

inline std::string word_str(const DGLieAlgebra& g, const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + std::string("xi_") + g.space().name(w[i]);
    return s;
}

inline std::optional<Violation> verify_square_zero(const LFModule& m) {
    auto& g = *m.alg;
    for (int x = 0; x < g.dim(); ++x) {
        CE dd = ce_differential(g, g.dce_gen(x));
        if (!dd.zero()) return Violation{"CESquare", {"xi_" + g.space().name(x), word_str(g, dd.terms.begin()->first.first)}, "d_CE^2 != 0"};
    }
    for (int i = 0; i < m.dim(); ++i) {
        CE dd = total_differential(m, total_differential(m, CE::unit(i)));
        if (!dd.zero()) {
            auto& k = dd.terms.begin()->first;
            return Violation{"SquareZero", {m.space.name(i), word_str(g, k.first) + " (x) " + m.space.name(k.second)}, "d_tot^2 != 0"};
        }
    }
    return std::nullopt;
}

inline std::optional<Violation> check_wmap_degrees(const Parities& p, const WMap& f) {
    for (int i = 0; i < f.src.dim(); ++i)
        for (auto& [k, c] : f.img[i].terms)
            if (term_degree(p, f.tgt, k) != f.src.degree(i) + f.shift)
                return Violation{"Degree", {f.src.name(i), f.tgt.name(k.second)}, "component has the wrong total degree"};
    return std::nullopt;
}

inline std::optional<Violation> check_module(const LFModule& m) {
    if (auto v = check_wmap_degrees(m.par(), m.d)) return v;
    return verify_square_zero(m);
}

inline LFModule validate_module(LFModule m) {
    if (auto v = check_module(m)) throw ValidationError(*v);
    return m;
}

inline LFModule adjoint_module(const Alg& g) {
    LFModule m(g, g->space());
    for (int x = 0; x < g->dim(); ++x) {
        for (auto& [y, c] : g->d(x)) m.d.img[x].add(Word{}, y, c);
        for (int a = 0; a < g->dim(); ++a)
            for (auto& [y, c] : g->br(a, x)) m.d.img[x].add(Word{a}, y, c);
    }
    return m;
}

inline LFModule zero_module(const Alg& g) { return LFModule(g, GradedSpace{}); }

// Same structure on V[k] (right shift, no signs); names kept.
inline LFModule shifted(const LFModule& m, int k) {
    std::vector<BasisElement> b;
    for (auto& e : m.space.basis()) b.push_back({e.name, e.degree - k});
    LFModule out(m.alg, GradedSpace(b));
    for (int i = 0; i < m.dim(); ++i) out.d.img[i] = m.d.img[i];
    return out;
}

inline GradedSpace rename(const GradedSpace& v, const std::string& prefix, int shift = 0) {
    std::vector<BasisElement> b;
    for (auto& e : v.basis()) b.push_back({prefix + e.name, e.degree + shift});
    return GradedSpace(b);
}

inline GradedSpace concat(const std::vector<GradedSpace>& parts) {
    std::vector<BasisElement> b;
    for (auto& p : parts) b.insert(b.end(), p.basis().begin(), p.basis().end());
    return GradedSpace(b);
}

inline CE reindex(const CE& e, int offset) {
    CE out;
    for (auto& [k, c] : e.terms) out.terms.emplace(std::make_pair(k.first, k.second + offset), c);
    return out;
}

// Restricts e to targets in [lo, lo+n) and moves them to [0, n).
inline CE block(const CE& e, int lo, int n) {
    CE out;
    for (auto& [k, c] : e.terms)
        if (k.second >= lo && k.second < lo + n) out.terms.emplace(std::make_pair(k.first, k.second - lo), c);
    return out;
}

// Direct sum with basis prefixed "1." and "2.".
inline LFModule direct_sum(const LFModule& a, const LFModule& b, const std::string& pa = "1.", const std::string& pb = "2.") {
    LFModule m(a.alg, concat({rename(a.space, pa), rename(b.space, pb)}));
    for (int i = 0; i < a.dim(); ++i) m.d.img[i] = a.d.img[i];
    for (int i = 0; i < b.dim(); ++i) m.d.img[a.dim() + i] = reindex(b.d.img[i], a.dim());
    return m;
}

// Tensor product with d(v z) = dv z + (-1)^{|v|} v dz; basis "v|z".
inline LFModule tensor(const LFModule& a, const LFModule& b) {
    std::vector<BasisElement> basis;
    for (auto& x : a.space.basis())
        for (auto& y : b.space.basis()) basis.push_back({x.name + "|" + y.name, x.degree + y.degree});
    LFModule m(a.alg, GradedSpace(basis));
    auto& p = a.par();
    int nb = b.dim();
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < nb; ++j) {
            CE& out = m.d.img[i * nb + j];
            for (auto& [k, c] : a.d.img[i].terms) out.add(k.first, k.second * nb + j, c);
            int s = sign_of(a.space.degree(i));
            for (auto& [k, c] : b.d.img[j].terms) {
                int sw = sign_of(a.space.degree(i) * p.word_degree(k.first));
                out.add(k.first, i * nb + k.second, c * s * sw);
            }
        }
    return m;
}

struct Morphism {
    LFModule src, tgt;
    WMap f;  // shift 0
};

inline std::optional<Violation> check_morphism(const Morphism& f) {
    if (auto v = check_wmap_degrees(f.src.par(), f.f)) return v;
    for (int i = 0; i < f.src.dim(); ++i) {
        CE lhs = extend(f.src.par(), f.f, total_differential(f.src, CE::unit(i)));
        CE rhs = total_differential(f.tgt, f.f.img[i]);
        CE diff = lhs - rhs;
        if (!diff.zero()) {
            auto& k = diff.terms.begin()->first;
            return Violation{"NotMorphism", {f.src.space.name(i), word_str(*f.src.alg, k.first) + " (x) " + f.tgt.space.name(k.second)},
                             "F d_tot != d_tot F"};
        }
    }
    return std::nullopt;
}

inline Morphism validate_morphism(Morphism f) {
    if (auto v = check_morphism(f)) throw ValidationError(*v);
    return f;
}

// g after f on the level of weight-graded maps.
inline WMap compose(const Parities& p, const WMap& g, const WMap& f) {
    WMap h(f.src, g.tgt, f.shift + g.shift);
    for (int i = 0; i < f.src.dim(); ++i) h.img[i] = extend(p, g, f.img[i]);
    return h;
}

inline Morphism compose(const Morphism& g, const Morphism& f) {
    if (!(f.tgt.space == g.src.space)) throw Error("DomainMismatch", "compose: target(f) != source(g)");
    return Morphism{f.src, g.tgt, compose(f.src.par(), g.f, f.f)};
}

inline Morphism identity_morphism(const LFModule& m) { return Morphism{m, m, WMap::identity(m.space)}; }

struct ModuleCohomology {
    std::map<int, Cohomology> by_degree;
    // Basis of H as (degree, index in that degree).
    std::vector<std::pair<int, int>> classes() const {
        std::vector<std::pair<int, int>> out;
        for (auto& [d, h] : by_degree)
            for (int i = 0; i < h.dimension; ++i) out.push_back({d, i});
        return out;
    }
    int total_dim() const {
        int n = 0;
        for (auto& [d, h] : by_degree) n += h.dimension;
        return n;
    }
};

inline ModuleCohomology complex_cohomology(const LinearMap& d) {
    ModuleCohomology out;
    for (int deg : d.domain().degrees()) out.by_degree[deg] = cohomology(d, d, deg);
    return out;
}

struct Classification {
    bool weak_equivalence = false, fibration = false, cofibration = false;
};

// Matrix of H(f0) in the representative bases, per degree.
inline std::map<int, Matrix> induced_on_cohomology(const LinearMap& f0, const ModuleCohomology& hs, const ModuleCohomology& ht) {
    std::map<int, Matrix> out;
    std::set<int> degs;
    for (auto& [d, h] : hs.by_degree) degs.insert(d);
    for (auto& [d, h] : ht.by_degree) degs.insert(d);
    for (int d : degs) {
        int rows = ht.by_degree.count(d) ? ht.by_degree.at(d).dimension : 0;
        int cols = hs.by_degree.count(d) ? hs.by_degree.at(d).dimension : 0;
        Matrix m(rows, std::vector<Scalar>(cols, 0));
        for (int j = 0; j < cols && rows > 0; ++j) {
            Vec img = f0.apply(hs.by_degree.at(d).representatives[j]);
            Vec c = ht.by_degree.at(d).coordinates(img);
            for (int i = 0; i < rows; ++i) m[i][j] = c[i];
        }
        out[d] = m;
    }
    return out;
}

inline Classification classify(const Morphism& f) {
    Classification c;
    LinearMap f0 = f.f.linear0();
    c.fibration = is_surjective(f0);
    c.cofibration = is_injective(f0);
    auto hs = complex_cohomology(f.src.d0()), ht = complex_cohomology(f.tgt.d0());
    c.weak_equivalence = true;
    for (auto& [d, m] : induced_on_cohomology(f0, hs, ht)) {
        int rows = static_cast<int>(m.size());
        int cols = rows ? static_cast<int>(m[0].size()) : (hs.by_degree.count(d) ? hs.by_degree.at(d).dimension : 0);
        if (rows != cols || (rows > 0 && matrix_rank(m) != rows)) c.weak_equivalence = false;
    }
    return c;
}

// Strict morphism from a linear map of shift 0.
inline WMap strict(const LinearMap& f) {
    WMap w(f.domain(), f.codomain(), f.shift());
    for (auto& [k, c] : f.entries()) w.img[k.first].add(Word{}, k.second, c);
    return w;
}

// The graded Lie algebra H(g, d) with induced bracket; classes named H<deg>_<i>.
struct TangentLie {
    Alg h;
    ModuleCohomology coh;
    std::vector<Vec> reps;  // rep of each H basis element over g
};

inline Vec sparse_to_vec(const Sparse& s, int n) {
    Vec v(n, 0);
    for (auto& [i, c] : s) v[i] = c;
    return v;
}
inline Sparse vec_to_sparse(const Vec& v) {
    Sparse s;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) s[static_cast<int>(i)] = v[i];
    return s;
}

inline TangentLie tangent_cohomology_lie(const Alg& g) {
    TangentLie t;
    LinearMap d(g->space(), g->space(), 1);
    for (int x = 0; x < g->dim(); ++x)
        for (auto& [y, c] : g->d(x)) d.set(x, y, c);
    t.coh = complex_cohomology(d);
    std::vector<BasisElement> basis;
    std::vector<int> first;  // index offset of each class
    for (auto [deg, i] : t.coh.classes()) {
        basis.push_back({"H" + std::to_string(deg) + "_" + std::to_string(i), deg});
        t.reps.push_back(t.coh.by_degree.at(deg).representatives[i]);
    }
    DGLAData data;
    data.space = GradedSpace(basis);
    int n = static_cast<int>(basis.size());
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            Sparse br = g->bracket(vec_to_sparse(t.reps[a]), vec_to_sparse(t.reps[b]));
            int deg = basis[a].degree + basis[b].degree;
            if (br.empty() || !t.coh.by_degree.count(deg)) continue;
            Vec c = t.coh.by_degree.at(deg).coordinates(sparse_to_vec(br, g->dim()));
            Sparse out;
            int base = 0;
            for (auto [dd, i] : t.coh.classes()) {
                if (dd == deg) sparse_add(out, base + i, c[i]);
                if (dd < deg) ++base;
            }
            if (!out.empty()) data.bracket[{a, b}] = out;
        }
    t.h = make_algebra(data);
    return t;
}

// Action of H(g) on H(M, d_0): act[x][u] = class of iota_x d_1 u, on representatives.
struct TangentModule {
    TangentLie lie;
    ModuleCohomology coh;
    GradedSpace space;
    std::vector<Vec> reps;
    std::vector<std::vector<Sparse>> act;
};

inline Sparse class_coordinates(const ModuleCohomology& coh, int deg, const Vec& z) {
    Sparse out;
    if (!coh.by_degree.count(deg)) return out;
    Vec c = coh.by_degree.at(deg).coordinates(z);
    int base = 0;
    for (auto [dd, i] : coh.classes())
        if (dd < deg) ++base;
    for (size_t i = 0; i < c.size(); ++i) sparse_add(out, base + static_cast<int>(i), c[i]);
    return out;
}

// Weight-0 part of e as a vector over the target space.
inline Vec weight0_vec(const CE& e, int n) {
    Vec v(n, 0);
    for (auto& [k, c] : e.terms)
        if (k.first.empty()) v[k.second] += c;
    return v;
}

inline CE vec_to_ce(const Vec& v) {
    CE e;
    for (size_t i = 0; i < v.size(); ++i) e.add(Word{}, static_cast<int>(i), v[i]);
    return e;
}

inline TangentModule tangent_cohomology_module(const LFModule& m) {
    TangentModule t;
    t.lie = tangent_cohomology_lie(m.alg);
    t.coh = complex_cohomology(m.d0());
    std::vector<BasisElement> basis;
    for (auto [deg, i] : t.coh.classes()) {
        basis.push_back({"H" + std::to_string(deg) + "_" + std::to_string(i), deg});
        t.reps.push_back(t.coh.by_degree.at(deg).representatives[i]);
    }
    t.space = GradedSpace(basis);
    int nl = t.lie.h->dim(), nm = static_cast<int>(basis.size());
    WMap d1 = m.d.component(1);
    t.act.assign(nl, std::vector<Sparse>(nm));
    for (int x = 0; x < nl; ++x) {
        CE xv = vec_to_ce(t.lie.reps[x]);
        for (int u = 0; u < nm; ++u) {
            CE du = extend(m.par(), d1, vec_to_ce(t.reps[u]));
            Vec r = weight0_vec(contract_mixed(m.par(), xv, du), m.dim());
            t.act[x][u] = class_coordinates(t.coh, t.lie.h->deg(x) + basis[u].degree, r);
        }
    }
    return t;
}

// rho([x,y]) = rho(x) rho(y) - (-1)^{|x||y|} rho(y) rho(x) on all class pairs.
inline std::optional<Violation> check_tangent_module(const TangentModule& t) {
    auto& h = *t.lie.h;
    int nl = h.dim(), nm = t.space.dim();
    auto act = [&](int x, const Sparse& u) {
        Sparse out;
        for (auto& [i, c] : u)
            for (auto& [j, cj] : t.act[x][i]) sparse_add(out, j, c * cj);
        return out;
    };
    for (int x = 0; x < nl; ++x)
        for (int y = 0; y < nl; ++y)
            for (int u = 0; u < nm; ++u) {
                Sparse eu{{u, 1}};
                Sparse lhs;
                for (auto& [z, c] : h.br(x, y))
                    for (auto& [j, cj] : t.act[z][u]) sparse_add(lhs, j, c * cj);
                Sparse r1 = act(x, act(y, eu)), r2 = act(y, act(x, eu));
                for (auto& [j, c] : r1) sparse_add(lhs, j, -c);
                for (auto& [j, c] : r2) sparse_add(lhs, j, c * sign_of(h.deg(x) * h.deg(y)));
                if (!lhs.empty()) return Violation{"ModuleAxiom", {h.space().name(x), h.space().name(y), t.space.name(u)}, ""};
            }
    return std::nullopt;
}

}  // namespace lpinf
