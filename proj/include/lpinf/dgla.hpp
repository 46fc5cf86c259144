#pragma once

#include "ce.hpp"

#include <memory>
#include <sstream>

namespace lpinf {

using Sparse = std::map<int, Scalar>;

inline void sparse_add(Sparse& v, int i, const Scalar& c) {
    if (c == 0) return;
    auto [it, fresh] = v.try_emplace(i, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

// Raw dg Lie data; brackets stored for i <= j only.
struct DGLAData {
    GradedSpace space;
    std::map<int, Sparse> diff;                       // d x = sum c y
    std::map<std::pair<int, int>, Sparse> bracket;  // [x_i, x_j], i <= j
};

struct Violation {
    std::string kind;
    std::vector<std::string> witness;
    std::string detail;
    std::string str() const {
        std::ostringstream o;
        o << kind << " (";
        for (size_t i = 0; i < witness.size(); ++i) o << (i ? ", " : "") << witness[i];
        o << ")";
        if (!detail.empty()) o << ": " << detail;
        return o.str();
    }
};

struct ValidationError : Error {
    Violation violation;
    explicit ValidationError(Violation v) : Error(v.kind, v.str()), violation(std::move(v)) {}
};

class DGLieAlgebra {
public:
    explicit DGLieAlgebra(DGLAData data) : data_(std::move(data)) {
        int n = dim();
        par_.deg.resize(n);
        for (int x = 0; x < n; ++x) par_.deg[x] = 1 - space().degree(x);
        d_.assign(n, {});
        for (auto& [x, v] : data_.diff)
            for (auto& [y, c] : v) sparse_add(d_[x], y, c);
        br_.assign(n, std::vector<Sparse>(n));
        for (auto& [k, v] : data_.bracket) {
            auto [i, j] = k;
            if (i > j) throw Error("BadBracketKey", "bracket keys must satisfy i <= j");
            for (auto& [z, c] : v) {
                sparse_add(br_[i][j], z, c);
                if (i != j) sparse_add(br_[j][i], z, -c * sign_of(deg(i) * deg(j)));
            }
        }
        build_ce();
    }

    const DGLAData& data() const { return data_; }
    const GradedSpace& space() const { return data_.space; }
    int dim() const { return space().dim(); }
    int deg(int x) const { return space().degree(x); }
    const Parities& par() const { return par_; }
    const Sparse& d(int x) const { return d_[x]; }
    const Sparse& br(int x, int y) const { return br_[x][y]; }
    // d_CE on the generator dual to x.
    const CE& dce_gen(int x) const { return dce_[x]; }

    Sparse bracket(const Sparse& a, const Sparse& b) const {
        Sparse out;
        for (auto& [x, cx] : a)
            for (auto& [y, cy] : b)
                for (auto& [z, c] : br_[x][y]) sparse_add(out, z, cx * cy * c);
        return out;
    }
    Sparse diff(const Sparse& a) const {
        Sparse out;
        for (auto& [x, cx] : a)
            for (auto& [y, c] : d_[x]) sparse_add(out, y, cx * c);
        return out;
    }

    // First failing axiom, checked in the order: degrees, antisymmetry, d^2, derivation, Jacobi.
    std::optional<Violation> check() const {
        int n = dim();
        auto nm = [&](int i) { return space().name(i); };
        for (int x = 0; x < n; ++x)
            for (auto& [y, c] : d_[x])
                if (deg(y) != deg(x) + 1) return Violation{"Degree", {nm(x), nm(y)}, "d must raise degree by 1"};
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y)
                for (auto& [z, c] : br_[x][y])
                    if (deg(z) != deg(x) + deg(y)) return Violation{"Degree", {nm(x), nm(y)}, "bracket lands in degree " + std::to_string(deg(z))};
        for (int x = 0; x < n; ++x)
            if (!parity(deg(x)) && !br_[x][x].empty())
                return Violation{"Antisymmetry", {nm(x), nm(x)}, "even element with nonzero self-bracket"};
        for (int x = 0; x < n; ++x)
            if (!diff(d_[x]).empty()) return Violation{"DSquare", {nm(x)}, "d^2 != 0"};
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y) {
                Sparse ex{{x, 1}}, ey{{y, 1}};
                Sparse lhs = diff(br_[x][y]);
                Sparse r1 = bracket(d_[x], ey), r2 = bracket(ex, d_[y]);
                for (auto& [z, c] : r1) sparse_add(lhs, z, -c);
                for (auto& [z, c] : r2) sparse_add(lhs, z, -c * sign_of(deg(x)));
                if (!lhs.empty()) return Violation{"Derivation", {nm(x), nm(y)}, "d[x,y] != [dx,y] + (-1)^|x| [x,dy]"};
            }
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y)
                for (int z = y; z < n; ++z) {
                    Sparse ex{{x, 1}}, ey{{y, 1}}, ez{{z, 1}};
                    Sparse j;
                    for (auto& [t, c] : bracket(ex, br_[y][z])) sparse_add(j, t, c * sign_of(deg(x) * deg(z)));
                    for (auto& [t, c] : bracket(ey, br_[z][x])) sparse_add(j, t, c * sign_of(deg(y) * deg(x)));
                    for (auto& [t, c] : bracket(ez, br_[x][y])) sparse_add(j, t, c * sign_of(deg(z) * deg(y)));
                    if (!j.empty()) return Violation{"Jacobi", {nm(x), nm(y), nm(z)}, "graded Jacobi fails"};
                }
        return std::nullopt;
    }

private:
    void build_ce() {
        int n = dim();
        dce_.assign(n, CE{});
        // d_0: dual of d with sign (-1)^{|a|}; d_1: (1/2) sum (-1)^{|a|} [b,a]^c xi_a xi_b.
        for (int a = 0; a < n; ++a)
            for (auto& [b, c] : d_[a]) dce_[b].add(Word{a}, 0, c * sign_of(deg(a)));
        Scalar half(1, 2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (auto& [c, k] : br_[b][a]) {
                    auto w = normalize_word(par_, Word{a, b});
                    if (w) dce_[c].add(w->first, 0, half * k * sign_of(deg(a)) * w->second);
                }
    }

    DGLAData data_;
    Parities par_;
    std::vector<Sparse> d_;
    std::vector<std::vector<Sparse>> br_;
    std::vector<CE> dce_;
};

using Alg = std::shared_ptr<const DGLieAlgebra>;

inline Alg make_algebra(DGLAData data) { return std::make_shared<const DGLieAlgebra>(std::move(data)); }

inline Alg validate_dgla(DGLAData data) {
    auto g = make_algebra(std::move(data));
    if (auto v = g->check()) throw ValidationError(*v);
    return g;
}

inline CE ce_differential(const DGLieAlgebra& g, const CE& e) {
    std::vector<CE> gens(g.dim());
    for (int x = 0; x < g.dim(); ++x) gens[x] = g.dce_gen(x);
    return apply_derivation(g.par(), gens, 1, e);
}

inline int word_degree(const DGLieAlgebra& g, const Word& w) { return g.par().word_degree(w); }

// Element of C(g, g) from a sparse vector of g in weight 0.
inline CE ce_from_sparse(const Sparse& v) {
    CE e;
    for (auto& [x, c] : v) e.add(Word{}, x, c);
    return e;
}

// Strict dg Lie morphism phi: g -> g2.
struct DGLAMorphism {
    Alg source, target;
    LinearMap map;  // shift 0
};

inline std::optional<Violation> check_dgla_morphism(const DGLAMorphism& f) {
    auto& g = *f.source;
    auto& h = *f.target;
    auto img = [&](int x) {
        Sparse s;
        for (auto& [k, c] : f.map.entries())
            if (k.first == x) sparse_add(s, k.second, c);
        return s;
    };
    auto apply = [&](const Sparse& v) {
        Sparse out;
        for (auto& [x, c] : v)
            for (auto& [y, cy] : img(x)) sparse_add(out, y, c * cy);
        return out;
    };
    for (int x = 0; x < g.dim(); ++x)
        if (apply(g.d(x)) != h.diff(img(x))) return Violation{"NotChainMap", {g.space().name(x)}, ""};
    for (int x = 0; x < g.dim(); ++x)
        for (int y = x; y < g.dim(); ++y)
            if (apply(g.br(x, y)) != h.bracket(img(x), img(y)))
                return Violation{"NotBracketPreserving", {g.space().name(x), g.space().name(y)}, ""};
    return std::nullopt;
}

// The algebra map C(target) -> C(source): generator-wise transpose, extended multiplicatively.
inline CE koszul_dual(const DGLAMorphism& f, const CE& e) {
    auto& g = *f.source;
    std::vector<CE> gen(f.target->dim());
    for (auto& [k, c] : f.map.entries()) gen[k.second].add(Word{k.first}, 0, c);
    CE out;
    for (auto& [k, c] : e.terms) {
        CE acc = CE::unit(k.second);
        for (int y : k.first) {
            CE next;
            for (auto& [ka, ca] : acc.terms)
                for (auto& [kg, cg] : gen[y].terms) {
                    auto m = merge_words(g.par(), ka.first, kg.first);
                    if (m) next.add(m->first, ka.second, ca * cg * m->second);
                }
            acc = std::move(next);
        }
        acc *= c;
        out += acc;
    }
    return out;
}

}  // namespace lpinf
