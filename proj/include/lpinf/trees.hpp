#pragma once

#include "lp.hpp"

#include <numeric>

namespace lpinf {

// Rooted tree on vertices 0..n with root 0; parent[0] = 0.
struct RootedTree {
    std::vector<int> parent;

    int size() const { return static_cast<int>(parent.size()) - 1; }
    std::vector<int> children(int v) const {
        std::vector<int> out;
        for (int u = 1; u <= size(); ++u)
            if (parent[u] == v) out.push_back(u);
        return out;
    }
    bool valid() const {
        int n = size();
        if (n < 1 || parent[0] != 0) return false;
        if (children(0).size() != 1) return false;
        for (int v = 1; v <= n; ++v) {
            int u = v, steps = 0;
            while (u != 0 && steps <= n) u = parent[u], ++steps;
            if (u != 0) return false;
        }
        return true;
    }
    // v strictly below w on the path to the root.
    bool below(int v, int w) const {
        for (int u = parent[v]; u != 0; u = parent[u])
            if (u == w) return true;
        return w == 0 && v != 0;
    }
};

// labels[v] for v = 1..n; labels[0] unused.
struct LabeledTree {
    RootedTree tree;
    std::vector<int> labels;

    bool monotonic() const {
        int n = tree.size();
        for (int v = 1; v <= n; ++v)
            for (int w = 1; w <= n; ++w)
                if (tree.below(v, w) && labels[v] >= labels[w]) return false;
        return true;
    }
    // next_label[l] = label of the parent of the vertex labeled l, 0 for the root.
    std::vector<int> label_parent() const {
        std::vector<int> out(tree.size() + 1, 0);
        for (int v = 1; v <= tree.size(); ++v) out[labels[v]] = tree.parent[v] == 0 ? 0 : labels[tree.parent[v]];
        return out;
    }
};

// An equivalence class, stored through its label-parent function.
struct MLRTClass {
    std::vector<int> next;  // next[l] for l = 1..n
    int raw_count = 0;

    int size() const { return static_cast<int>(next.size()) - 1; }
    std::vector<int> children(int l) const {
        std::vector<int> out;
        for (int u = 1; u <= size(); ++u)
            if (next[u] == l) out.push_back(u);
        return out;
    }
    int top() const {
        for (int u = 1; u <= size(); ++u)
            if (next[u] == 0) return u;
        return 0;
    }
    int min_label(int l) const {
        int m = l;
        for (int c : children(l)) m = std::min(m, min_label(c));
        return m;
    }
    // Children ordered by the smallest label in their subtree.
    std::vector<int> ordered_children(int l) const {
        auto cs = children(l);
        std::sort(cs.begin(), cs.end(), [&](int a, int b) { return min_label(a) < min_label(b); });
        return cs;
    }
    std::string canonical(int l) const {
        std::string s = std::to_string(l);
        auto cs = ordered_children(l);
        if (cs.empty()) return s;
        s += "[";
        for (size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + canonical(cs[i]);
        return s + "]";
    }
    std::string canonical() const { return canonical(top()); }
    void postorder(int l, std::vector<int>& out) const {
        for (int c : ordered_children(l)) postorder(c, out);
        out.push_back(l);
    }
    std::vector<int> postorder() const {
        std::vector<int> out;
        postorder(top(), out);
        return out;
    }
    int max_valency() const {
        int m = 0;
        for (int l = 1; l <= size(); ++l) m = std::max(m, static_cast<int>(children(l).size()));
        return m;
    }
    RootedTree tree() const {
        RootedTree t;
        t.parent = next;
        return t;
    }
};

inline std::string canonical_form(const LabeledTree& t) {
    MLRTClass c{t.label_parent(), 1};
    return c.canonical();
}

// All rooted trees on n non-root vertices with a single vertex at height 1.
inline std::vector<RootedTree> enumerate_trees(int n) {
    std::vector<RootedTree> out;
    RootedTree t;
    t.parent.assign(n + 1, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v > n) {
            if (t.valid()) out.push_back(t);
            return;
        }
        for (int p = 0; p <= n; ++p) {
            if (p == v) continue;
            t.parent[v] = p;
            rec(v + 1);
        }
    };
    rec(1);
    return out;
}

inline std::vector<LabeledTree> monotonic_labelings(const RootedTree& t) {
    std::vector<LabeledTree> out;
    int n = t.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        LabeledTree lt{t, std::vector<int>(n + 1, 0)};
        for (int v = 1; v <= n; ++v) lt.labels[v] = perm[v - 1];
        if (lt.monotonic()) out.push_back(lt);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Classes of monotonic labeled rooted trees, in order of canonical string.
inline std::vector<MLRTClass> enumerate_mlrt(int n) {
    std::map<std::string, MLRTClass> by_form;
    for (auto& t : enumerate_trees(n))
        for (auto& lt : monotonic_labelings(t)) {
            auto next = lt.label_parent();
            MLRTClass c{next, 0};
            auto [it, fresh] = by_form.try_emplace(c.canonical(), c);
            it->second.raw_count += 1;
        }
    std::vector<MLRTClass> out;
    for (auto& [k, c] : by_form) out.push_back(c);
    return out;
}

// Independent count: orbits of monotonic labelings under explicit tree automorphisms, one tree per isomorphism type.
inline int count_classes_by_automorphisms(int n) {
    auto trees = enumerate_trees(n);
    std::vector<int> perm(n);
    auto isomorphic = [&](const RootedTree& a, const RootedTree& b, bool& found_aut, std::vector<std::vector<int>>* auts) {
        std::iota(perm.begin(), perm.end(), 1);
        found_aut = false;
        do {
            bool ok = true;
            for (int v = 1; v <= n && ok; ++v) {
                int pv = a.parent[v];
                int img = perm[v - 1], pimg = pv == 0 ? 0 : perm[pv - 1];
                ok = b.parent[img] == pimg;
            }
            if (ok) {
                found_aut = true;
                if (!auts) return true;
                auts->push_back(perm);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return found_aut;
    };
    std::vector<RootedTree> types;
    for (auto& t : trees) {
        bool dup = false, f = false;
        for (auto& s : types)
            if (isomorphic(t, s, f, nullptr)) {
                dup = true;
                break;
            }
        if (!dup) types.push_back(t);
    }
    int total = 0;
    for (auto& t : types) {
        bool f = false;
        std::vector<std::vector<int>> auts;
        isomorphic(t, t, f, &auts);
        auto labs = monotonic_labelings(t);
        std::vector<bool> seen(labs.size(), false);
        for (size_t i = 0; i < labs.size(); ++i) {
            if (seen[i]) continue;
            ++total;
            for (auto& s : auts) {
                std::vector<int> moved(n + 1, 0);
                for (int v = 1; v <= n; ++v) moved[v] = labs[i].labels[s[v - 1]];
                for (size_t j = 0; j < labs.size(); ++j)
                    if (labs[j].labels == moved) seen[j] = true;
            }
        }
    }
    return total;
}

// ((w_1,...,w_k) .k target): omega_1...omega_k iota_{x_1}...iota_{x_k} alpha (x) w, with the swap sign
// (-1)^{(|x_i|-1)|omega_j|} for i < j.
inline CE nr_product(const DGLieAlgebra& g, const std::vector<CE>& ws, const CE& target) {
    const Parities& p = g.par();
    int k = static_cast<int>(ws.size());
    CE out;
    std::vector<std::pair<std::pair<Word, int>, Scalar>> chosen(k);
    std::function<void(int)> rec = [&](int i) {
        if (i == k) {
            CE inner = target;
            for (int j = k - 1; j >= 0 && !inner.zero(); --j) inner = contract(p, chosen[j].first.second, inner);
            if (inner.zero()) return;
            Scalar c = 1;
            Word prefix;
            for (int j = 0; j < k; ++j) {
                c *= chosen[j].second;
                auto m = merge_words(p, prefix, chosen[j].first.first);
                if (!m) return;
                prefix = m->first;
                c *= m->second;
            }
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    c *= sign_of((g.deg(chosen[a].first.second) - 1) * p.word_degree(chosen[b].first.first));
            CE pre;
            pre.add(prefix, 0, c);
            out += multiply(p, pre, inner);
            return;
        }
        for (auto& t : ws[i].terms) {
            chosen[i] = t;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

// Theta for one class, with args indexed by label - 1.
class TreeEvaluator {
public:
    explicit TreeEvaluator(WeakLP w) : w_(std::move(w)), f_weight_(w_.f.f.max_weight()) {}

    const std::vector<MLRTClass>& classes(int n) {
        auto it = classes_.find(n);
        if (it == classes_.end()) it = classes_.emplace(n, enumerate_mlrt(n)).first;
        return it->second;
    }

    CE F(int m) const { return w_.f.f.img[m]; }
    int sdeg(int m) const { return w_.module().space.degree(m) - 1; }

    CE label_value(const MLRTClass& c, const std::vector<int>& args, int l) const {
        auto cs = c.ordered_children(l);
        if (cs.empty()) return F(args[l - 1]);
        std::vector<CE> ws;
        for (int ch : cs) {
            ws.push_back(label_value(c, args, ch));
            if (ws.back().zero()) return CE();
        }
        return nr_product(*w_.alg(), ws, F(args[l - 1]));
    }

    CE theta_tree(const MLRTClass& c, const std::vector<int>& args) const {
        if (c.max_valency() > f_weight_) return CE();
        CE v = label_value(c, args, c.top());
        if (v.zero()) return v;
        std::vector<int> po = c.postorder(), degs;
        for (auto& l : po) l -= 1;
        for (int a : args) degs.push_back(sdeg(a));
        v *= koszul_sign(po, degs);
        return v;
    }

    CE theta(const std::vector<int>& args) {
        auto it = theta_cache_.find(args);
        if (it != theta_cache_.end()) return it->second;
        CE out;
        for (auto& c : classes(static_cast<int>(args.size()))) out += theta_tree(c, args);
        theta_cache_.emplace(args, out);
        return out;
    }

    // lambda_{n+1} over the basis tuple args (size n+1).
    CE lambda(const std::vector<int>& args) {
        const LFModule& m = w_.module();
        int n = static_cast<int>(args.size()) - 1;
        CE dm = m.d.img[args[n]];
        if (n == 0) return dm;
        int sdeg_sum = 0;
        std::vector<int> degs;
        for (int i = 0; i < n; ++i) {
            sdeg_sum += sdeg(args[i]);
            degs.push_back(sdeg(args[i]));
        }
        CE out;
        int kmax = std::min(n, dm.max_weight());
        Scalar fact = 1;
        for (int k = 1; k <= kmax; ++k) {
            fact *= k;
            for (auto& comp : compositions(n, k))
                for (auto& sigma : shuffles(comp)) {
                    std::vector<CE> ws;
                    int pos = 0;
                    bool dead = false;
                    for (int b : comp) {
                        std::vector<int> blk;
                        for (int j = 0; j < b; ++j) blk.push_back(args[sigma[pos + j]]);
                        pos += b;
                        ws.push_back(theta(blk));
                        if (ws.back().zero()) dead = true;
                    }
                    if (dead) continue;
                    CE t = nr_product(*w_.alg(), ws, dm);
                    t *= Scalar(koszul_sign(sigma, degs)) / fact;
                    out += t;
                }
        }
        out *= sign_of(sdeg_sum);
        return out;
    }

    static std::vector<std::vector<int>> compositions(int n, int k) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int left) {
            if (static_cast<int>(cur.size()) == k) {
                if (left == 0) out.push_back(cur);
                return;
            }
            for (int a = 1; a <= left; ++a) {
                cur.push_back(a);
                rec(left - a);
                cur.pop_back();
            }
        };
        rec(n);
        return out;
    }

    // (n_1,...,n_k)-shuffles as sequences sigma(1..n), 0-based.
    static std::vector<std::vector<int>> shuffles(const std::vector<int>& sizes) {
        int n = std::accumulate(sizes.begin(), sizes.end(), 0);
        std::vector<int> block(n);
        std::vector<std::vector<int>> out;
        std::vector<int> fill(sizes.size(), 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == n) {
                std::vector<int> seq;
                for (size_t b = 0; b < sizes.size(); ++b)
                    for (int j = 0; j < n; ++j)
                        if (block[j] == static_cast<int>(b)) seq.push_back(j);
                out.push_back(seq);
                return;
            }
            for (size_t b = 0; b < sizes.size(); ++b)
                if (fill[b] < sizes[b]) {
                    block[i] = static_cast<int>(b);
                    ++fill[b];
                    rec(i + 1);
                    --fill[b];
                }
        };
        rec(0);
        return out;
    }

    const WeakLP& source() const { return w_; }

private:
    WeakLP w_;
    int f_weight_;
    std::map<int, std::vector<MLRTClass>> classes_;
    std::map<std::vector<int>, CE> theta_cache_;
};

// Theta_T^l computed on the explicit vertex set of T.
inline CE theta_labeled(const TreeEvaluator& ev, const LabeledTree& t, const std::vector<int>& args) {
    const RootedTree& tr = t.tree;
    std::function<int(int)> min_label = [&](int v) {
        int m = t.labels[v];
        for (int c : tr.children(v)) m = std::min(m, min_label(c));
        return m;
    };
    std::vector<int> po;
    std::function<CE(int)> value = [&](int v) -> CE {
        auto cs = tr.children(v);
        std::sort(cs.begin(), cs.end(), [&](int a, int b) { return min_label(a) < min_label(b); });
        std::vector<CE> ws;
        for (int c : cs) ws.push_back(value(c));
        po.push_back(t.labels[v] - 1);
        CE fv = ev.F(args[t.labels[v] - 1]);
        if (ws.empty()) return fv;
        return nr_product(*ev.source().alg(), ws, fv);
    };
    CE v = value(tr.children(0)[0]);
    std::vector<int> degs;
    for (int a : args) degs.push_back(ev.sdeg(a));
    v *= koszul_sign(po, degs);
    return v;
}

// Per class: sum over raw monotonic labelings of explicit trees, the raw count, and the class value.
struct RawClassCheck {
    std::string form;
    CE raw_sum;
    int raw_count = 0;
    CE class_value;
};

inline std::vector<RawClassCheck> theta_by_raw_labelings(TreeEvaluator& ev, const std::vector<int>& args) {
    int n = static_cast<int>(args.size());
    std::map<std::string, RawClassCheck> acc;
    for (auto& t : enumerate_trees(n))
        for (auto& lt : monotonic_labelings(t)) {
            MLRTClass c{lt.label_parent(), 1};
            auto& slot = acc[c.canonical()];
            if (slot.raw_count == 0) {
                slot.form = c.canonical();
                slot.class_value = ev.theta_tree(c, args);
            }
            slot.raw_sum += theta_labeled(ev, lt, args);
            slot.raw_count += 1;
        }
    std::vector<RawClassCheck> out;
    for (auto& [k, v] : acc) out.push_back(v);
    return out;
}

}  // namespace lpinf
