#pragma once

#include "trees.hpp"

#include <memory>

namespace lpinf {

// C(g)-multilinear brackets on C(g, M[1]) given on basis tuples of M; degrees read as |m| - 1.
struct LeibnizStructure {
    Alg alg;
    GradedSpace space;
    std::function<CE(const std::vector<int>&)> value;

    int sdeg(int m) const { return space.degree(m) - 1; }

    // lambda_n on general elements: d_CE on the word for n = 1, C(g)-multilinear for n >= 2.
    CE apply(const std::vector<CE>& args) const {
        const Parities& p = alg->par();
        CE out;
        if (args.size() == 1) {
            for (auto& [k, c] : args[0].terms) {
                CE w;
                w.add(k.first, 0, c);
                CE dw = ce_differential(*alg, w);
                for (auto& [kd, cd] : dw.terms) out.add(kd.first, k.second, cd);
                CE v = value({k.second});
                v *= sign_of(p.word_degree(k.first));
                out += multiply(p, w, v);
            }
            return out;
        }
        size_t n = args.size();
        std::vector<int> basis(n);
        std::function<void(size_t, Word, Scalar, int)> rec = [&](size_t i, Word pre, Scalar c, int passed) {
            if (i == n) {
                CE v = value(basis);
                if (v.zero()) return;
                CE w;
                w.add(pre, 0, c);
                out += multiply(p, w, v);
                return;
            }
            for (auto& [k, ck] : args[i].terms) {
                auto m = merge_words(p, pre, k.first);
                if (!m) continue;
                int wd = p.word_degree(k.first);
                basis[i] = k.second;
                rec(i + 1, m->first, c * ck * m->second * sign_of(wd * (1 + passed)), passed + sdeg(k.second));
            }
        };
        rec(0, Word{}, Scalar(1), 0);
        return out;
    }
};

inline CE basis_ce(int m) { return CE::unit(m); }

// (k-j, j-1)-shuffles of positions 0..k-2 as sequences, 0-based.
inline std::vector<std::vector<int>> two_block_shuffles(int p, int q) {
    return TreeEvaluator::shuffles({p, q});
}

inline std::string tuple_str(const GradedSpace& v, const std::vector<int>& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + v.name(t[i]);
    return s + ")";
}

// Left-hand side of the Leibniz[1] identity of arity n on a basis tuple.
inline CE leibniz_identity_value(const LeibnizStructure& L, const std::vector<int>& x) {
    int n = static_cast<int>(x.size());
    std::vector<int> degs;
    for (int a : x) degs.push_back(L.sdeg(a));
    CE total;
    for (int j = 1; j <= n; ++j) {
        int i = n + 1 - j;
        for (int k = j; k <= n; ++k) {
            std::vector<int> head(x.begin(), x.begin() + (k - 1));
            std::vector<int> hdeg(degs.begin(), degs.begin() + (k - 1));
            for (auto& sigma : two_block_shuffles(k - j, j - 1)) {
                std::vector<int> inner;
                int outer_deg = 0;
                for (int t = 0; t < k - j; ++t) outer_deg += hdeg[sigma[t]];
                for (int t = k - j; t < k - 1; ++t) inner.push_back(head[sigma[t]]);
                inner.push_back(x[k - 1]);
                CE mid = L.value(inner);
                if (mid.zero()) continue;
                std::vector<CE> args;
                for (int t = 0; t < k - j; ++t) args.push_back(basis_ce(head[sigma[t]]));
                args.push_back(mid);
                for (int t = k; t < n; ++t) args.push_back(basis_ce(x[t]));
                CE v = L.apply(args);
                v *= koszul_sign(sigma, hdeg) * sign_of(outer_deg);
                total += v;
            }
        }
    }
    return total;
}

inline void for_each_tuple(int dim, int n, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> t(n, 0);
    if (dim == 0) return;
    while (true) {
        if (!fn(t)) return;
        int i = n - 1;
        while (i >= 0 && ++t[i] == dim) t[i--] = 0;
        if (i < 0) return;
    }
}

inline std::optional<Violation> verify_leibniz_identities(const LeibnizStructure& L, int n_max) {
    std::optional<Violation> bad;
    for (int n = 1; n <= n_max && !bad; ++n)
        for_each_tuple(L.space.dim(), n, [&](const std::vector<int>& x) {
            if (!leibniz_identity_value(L, x).zero()) {
                std::vector<std::string> w;
                for (int a : x) w.push_back(L.space.name(a));
                bad = Violation{"LeibnizIdentity", w, "arity " + std::to_string(n)};
                return false;
            }
            return true;
        });
    return bad;
}

enum class Method { Recursive, Closed, Trees };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Recursive: return "recursive";
        case Method::Closed: return "closed";
        case Method::Trees: return "trees";
    }
    return "";
}

// The brackets lambda_n on C(g, M[1]) from a weak LP module.
class LeibnizEvaluator {
public:
    explicit LeibnizEvaluator(WeakLP w) : w_(std::move(w)), trees_(std::make_shared<TreeEvaluator>(w_)) {}

    const WeakLP& source() const { return w_; }
    const LFModule& module() const { return w_.module(); }
    int sdeg(int m) const { return module().space.degree(m) - 1; }

    // lambda_{n+1}(m_1, ...) = (-1)^{|m_1|-1} iota_{F(m_1)} lambda_n(m_2, ...).
    CE recursive(const std::vector<int>& args) {
        auto it = cache_.find(args);
        if (it != cache_.end()) return it->second;
        CE out;
        if (args.size() == 1) {
            out = module().d.img[args[0]];
        } else {
            std::vector<int> rest(args.begin() + 1, args.end());
            out = contract_mixed(module().par(), w_.f.f.img[args[0]], recursive(rest));
            out *= sign_of(sdeg(args[0]));
        }
        cache_.emplace(args, out);
        return out;
    }

    // (-1)^{sum_{i<n}(|m_i|-1)} iota_{F(m_1)} ... iota_{F(m_{n-1})} (sum_{k>=1} d_k m_n).
    CE closed(const std::vector<int>& args) const {
        size_t n = args.size();
        if (n == 1) return module().d.img[args[0]];
        CE e;
        for (auto& [k, c] : module().d.img[args[n - 1]].terms)
            if (!k.first.empty()) e.terms.emplace(k, c);
        int s = 0;
        for (size_t i = n - 1; i-- > 0;) {
            e = contract_mixed(module().par(), w_.f.f.img[args[i]], e);
            s += sdeg(args[i]);
            if (e.zero()) return e;
        }
        e *= sign_of(s);
        return e;
    }

    CE trees(const std::vector<int>& args) { return trees_->lambda(args); }

    CE evaluate(Method m, const std::vector<int>& args) {
        switch (m) {
            case Method::Recursive: return recursive(args);
            case Method::Closed: return closed(args);
            case Method::Trees: return trees(args);
        }
        return CE();
    }

    LeibnizStructure structure(Method m = Method::Recursive) {
        return LeibnizStructure{w_.alg(), module().space, [this, m](const std::vector<int>& a) { return evaluate(m, a); }};
    }

    TreeEvaluator& tree_evaluator() { return *trees_; }

private:
    WeakLP w_;
    std::map<std::vector<int>, CE> cache_;
    std::shared_ptr<TreeEvaluator> trees_;
};

struct AgreementReport {
    bool ok = true;
    long tuples = 0;
    std::optional<Violation> witness;
};

// recursive = closed = trees on every basis tuple of arity <= n_max.
inline AgreementReport three_way_agreement(LeibnizEvaluator& ev, int n_max) {
    AgreementReport r;
    const GradedSpace& v = ev.module().space;
    for (int n = 1; n <= n_max && r.ok; ++n)
        for_each_tuple(v.dim(), n, [&](const std::vector<int>& x) {
            ++r.tuples;
            CE a = ev.recursive(x), b = ev.closed(x), c = ev.trees(x);
            if (!(a == b) || !(a == c)) {
                r.ok = false;
                std::vector<std::string> w;
                for (int i : x) w.push_back(v.name(i));
                r.witness = Violation{"MethodsDisagree", w, !(a == b) ? "recursive != closed" : "recursive != trees"};
                return false;
            }
            return true;
        });
    return r;
}

// Each lambda_n output has degree sum(|m_i| - 1) + 1 in M[1].
inline std::optional<Violation> check_lambda_degrees(LeibnizEvaluator& ev, int n_max) {
    std::optional<Violation> bad;
    const LFModule& m = ev.module();
    for (int n = 1; n <= n_max && !bad; ++n)
        for_each_tuple(m.dim(), n, [&](const std::vector<int>& x) {
            int want = 1;
            for (int a : x) want += ev.sdeg(a);
            for (auto& [k, c] : ev.recursive(x).terms)
                if (m.par().word_degree(k.first) + ev.sdeg(k.second) != want) {
                    bad = Violation{"Degree", {tuple_str(m.space, x)}, ""};
                    return false;
                }
            return true;
        });
    return bad;
}

// Components of the induced morphism: G_1 = phi, G_{k+1}(m_1, ...) = iota_{F(m_1)} G_k(m_2, ...).
struct LeibnizMorphism {
    Alg alg;
    GradedSpace src;
    std::function<CE(const std::vector<int>&)> value;

    int sdeg(int m) const { return src.degree(m) - 1; }

    // Degree-0 C(g)-multilinear extension.
    CE apply(const std::vector<CE>& args) const {
        const Parities& p = alg->par();
        CE out;
        size_t n = args.size();
        std::vector<int> basis(n);
        std::function<void(size_t, Word, Scalar, int)> rec = [&](size_t i, Word pre, Scalar c, int passed) {
            if (i == n) {
                CE v = value(basis);
                if (v.zero()) return;
                CE w;
                w.add(pre, 0, c);
                out += multiply(p, w, v);
                return;
            }
            for (auto& [k, ck] : args[i].terms) {
                auto m = merge_words(p, pre, k.first);
                if (!m) continue;
                basis[i] = k.second;
                rec(i + 1, m->first, c * ck * m->second * sign_of(p.word_degree(k.first) * passed), passed + sdeg(k.second));
            }
        };
        rec(0, Word{}, Scalar(1), 0);
        return out;
    }
};

// phi: M ~> N with g o phi = f.
inline LeibnizMorphism ginf_on_morphism(const Morphism& phi, const WeakLP& f, const WeakLP& g) {
    if (!(compose(f.module().par(), g.f.f, phi.f) == f.f.f)) throw Error("NotCompatible", "g o phi != f");
    auto cache = std::make_shared<std::map<std::vector<int>, CE>>();
    const Parities* p = &f.module().par();
    WMap F = f.f.f, P = phi.f;
    auto holder = std::make_shared<std::function<CE(const std::vector<int>&)>>();
    *holder = [cache, p, F, P, holder](const std::vector<int>& a) -> CE {
        auto it = cache->find(a);
        if (it != cache->end()) return it->second;
        CE out;
        if (a.size() == 1) out = P.img[a[0]];
        else out = contract_mixed(*p, F.img[a[0]], (*holder)(std::vector<int>(a.begin() + 1, a.end())));
        cache->emplace(a, out);
        return out;
    };
    return LeibnizMorphism{f.alg(), f.module().space, [holder](const std::vector<int>& a) { return (*holder)(a); }};
}

// Ordered set partitions of 0..n-1 into blocks, each increasing, with increasing block maxima.
inline std::vector<std::vector<std::vector<int>>> max_ordered_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            auto sorted = cur;
            std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.back() < b.back(); });
            out.push_back(sorted);
            return;
        }
        for (size_t b = 0; b < cur.size(); ++b) {
            cur[b].push_back(i);
            rec(i + 1);
            cur[b].pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

// Compatibility of G with lambda (source) and tau (target) on a basis tuple; returns lhs - rhs.
inline CE morphism_identity_value(const LeibnizMorphism& G, const LeibnizStructure& lam, const LeibnizStructure& tau, const std::vector<int>& x) {
    int n = static_cast<int>(x.size());
    std::vector<int> degs;
    for (int a : x) degs.push_back(lam.sdeg(a));
    CE total;
    for (int j = 1; j <= n; ++j) {
        for (int k = j; k <= n; ++k) {
            std::vector<int> head(x.begin(), x.begin() + (k - 1));
            std::vector<int> hdeg(degs.begin(), degs.begin() + (k - 1));
            for (auto& sigma : two_block_shuffles(k - j, j - 1)) {
                std::vector<int> inner;
                int outer_deg = 0;
                for (int t = 0; t < k - j; ++t) outer_deg += hdeg[sigma[t]];
                for (int t = k - j; t < k - 1; ++t) inner.push_back(head[sigma[t]]);
                inner.push_back(x[k - 1]);
                CE mid = lam.value(inner);
                if (mid.zero()) continue;
                std::vector<CE> args;
                for (int t = 0; t < k - j; ++t) args.push_back(basis_ce(head[sigma[t]]));
                args.push_back(mid);
                for (int t = k; t < n; ++t) args.push_back(basis_ce(x[t]));
                CE v = G.apply(args);
                v *= koszul_sign(sigma, hdeg) * sign_of(outer_deg);
                total += v;
            }
        }
    }
    for (auto& blocks : max_ordered_partitions(n)) {
        std::vector<int> seq;
        std::vector<CE> args;
        for (auto& b : blocks) {
            std::vector<int> bx;
            for (int i : b) {
                seq.push_back(i);
                bx.push_back(x[i]);
            }
            args.push_back(G.value(bx));
        }
        bool dead = std::any_of(args.begin(), args.end(), [](const CE& e) { return e.zero(); });
        if (dead) continue;
        CE v = tau.apply(args);
        v *= -koszul_sign(seq, degs);
        total += v;
    }
    return total;
}

inline std::optional<Violation> verify_morphism_identities(const LeibnizMorphism& G, const LeibnizStructure& lam, const LeibnizStructure& tau, int n_max) {
    std::optional<Violation> bad;
    for (int n = 1; n <= n_max && !bad; ++n)
        for_each_tuple(lam.space.dim(), n, [&](const std::vector<int>& x) {
            if (!morphism_identity_value(G, lam, tau, x).zero()) {
                std::vector<std::string> w;
                for (int a : x) w.push_back(lam.space.name(a));
                bad = Violation{"MorphismIdentity", w, "arity " + std::to_string(n)};
                return false;
            }
            return true;
        });
    return bad;
}

// M' viewed over g through phi: g -> g'.
inline LFModule restrict_module(const DGLAMorphism& phi, const LFModule& m) {
    LFModule out(phi.source, m.space);
    for (int i = 0; i < m.dim(); ++i) out.d.img[i] = koszul_dual(phi, m.d.img[i]);
    return out;
}

inline WMap restrict_wmap(const DGLAMorphism& phi, const WMap& f) {
    WMap out(f.src, f.tgt, f.shift);
    for (int i = 0; i < f.src.dim(); ++i) out.img[i] = koszul_dual(phi, f.img[i]);
    return out;
}

struct PullbackStructure {
    LeibnizStructure mu;                // over g on C(g, M'[1])
    std::optional<Violation> witness;  // strict-morphism identity failure
    long checked = 0;
};

// mu'_n = phi^v(lambda'_n); checks phi(lambda_n(m)) = mu'_n(phi(m)) for n <= n_max.
inline PullbackStructure pullback_structure(const DGLAMorphism& base, LeibnizEvaluator& ev2, LeibnizEvaluator& ev, const Morphism& phi, int n_max = 3) {
    if (auto v = check_dgla_morphism(base)) throw ValidationError(*v);
    const LFModule& m2 = ev2.module();
    LFModule res = restrict_module(base, m2);
    if (auto v = check_morphism(Morphism{ev.module(), res, phi.f})) throw ValidationError(*v);
    // incl o f = phi^v f' o phi
    WMap lhs(ev.module().space, base.target->space(), 0);
    for (int i = 0; i < ev.module().dim(); ++i) lhs.img[i] = apply_linear(ev.module().par(), base.map, ev.source().f.f.img[i]);
    WMap rhs = compose(ev.module().par(), restrict_wmap(base, ev2.source().f.f), phi.f);
    if (!(lhs == rhs)) throw Error("NotCompatible", "phi o f differs from the pulled back f' o phi");
    PullbackStructure out;
    auto cache = std::make_shared<std::map<std::vector<int>, CE>>();
    LeibnizEvaluator* e2 = &ev2;
    DGLAMorphism b = base;
    out.mu = LeibnizStructure{base.source, m2.space, [cache, e2, b](const std::vector<int>& a) {
                                  auto it = cache->find(a);
                                  if (it != cache->end()) return it->second;
                                  CE v = koszul_dual(b, e2->recursive(a));
                                  cache->emplace(a, v);
                                  return v;
                              }};
    const Parities& p = ev.module().par();
    for (int n = 1; n <= n_max && !out.witness; ++n)
        for_each_tuple(ev.module().dim(), n, [&](const std::vector<int>& x) {
            ++out.checked;
            CE left = extend(p, phi.f, ev.recursive(x));
            std::vector<CE> args;
            for (int a : x) args.push_back(phi.f.img[a]);
            CE right = out.mu.apply(args);
            if (!(left == right)) {
                std::vector<std::string> w;
                for (int a : x) w.push_back(ev.module().space.name(a));
                out.witness = Violation{"NotStrictMorphism", w, "arity " + std::to_string(n)};
                return false;
            }
            return true;
        });
    return out;
}

struct HtanReport {
    bool ok = true;
    std::optional<Violation> witness;
    TangentModule tangent;
    std::vector<Sparse> f0_on_classes;          // H(f_0) in class coordinates
    std::vector<std::vector<Sparse>> bracket;  // u <> v in class coordinates
    int pairs = 0;
};

// u <> v = rho(H(f_0) u; v) against (-1)^{|u|-1} [Pr_M lambda_2(u, v)], plus equivariance of H(f_0).
inline HtanReport htan_compatibility(LeibnizEvaluator& ev) {
    HtanReport r;
    const WeakLP& w = ev.source();
    const LFModule& m = w.module();
    r.tangent = tangent_cohomology_module(m);
    const TangentModule& t = r.tangent;
    int nm = t.space.dim(), nl = t.lie.h->dim();
    LinearMap f0 = w.f.f.linear0();
    for (int u = 0; u < nm; ++u) {
        Vec img = f0.apply(t.reps[u]);
        r.f0_on_classes.push_back(class_coordinates(t.lie.coh, t.space.degree(u), img));
    }
    auto act = [&](const Sparse& x, int u) {
        Sparse out;
        for (auto& [a, c] : x)
            for (auto& [j, cj] : t.act[a][u]) sparse_add(out, j, c * cj);
        return out;
    };
    auto fail = [&](const std::string& kind, std::vector<std::string> wit) {
        if (r.ok) r.witness = Violation{kind, std::move(wit), ""};
        r.ok = false;
    };
    LeibnizStructure L = ev.structure();
    r.bracket.assign(nm, std::vector<Sparse>(nm));
    for (int u = 0; u < nm; ++u)
        for (int v = 0; v < nm; ++v) {
            ++r.pairs;
            Sparse lhs = act(r.f0_on_classes[u], v);
            r.bracket[u][v] = lhs;
            CE l2 = L.apply({vec_to_ce(t.reps[u]), vec_to_ce(t.reps[v])});
            Vec pr = weight0_vec(l2, m.dim());
            int deg = t.space.degree(u) + t.space.degree(v);
            Sparse rhs;
            if (!is_zero(pr)) rhs = class_coordinates(t.coh, deg, pr);
            for (auto& [j, c] : rhs) sparse_add(lhs, j, -c * sign_of(t.space.degree(u) - 1));
            if (!lhs.empty()) fail("HtanMismatch", {t.space.name(u), t.space.name(v)});
        }
    // H(f_0)(x . u) = [x, H(f_0) u]
    for (int x = 0; x < nl; ++x)
        for (int u = 0; u < nm; ++u) {
            Sparse left;
            for (auto& [j, c] : t.act[x][u])
                for (auto& [a, ca] : r.f0_on_classes[j]) sparse_add(left, a, c * ca);
            Sparse right = t.lie.h->bracket(Sparse{{x, 1}}, r.f0_on_classes[u]);
            if (left != right) fail("NotEquivariant", {t.lie.h->space().name(x), t.space.name(u)});
        }
    return r;
}

}  // namespace lpinf
