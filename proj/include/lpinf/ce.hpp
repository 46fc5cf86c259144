#pragma once

#include "graded.hpp"

namespace lpinf {

// Sorted multiset of generator indices; the generator dual to basis x has degree 1 - |x|.
using Word = std::vector<int>;

// Sparse element of C(g, M): (word, target index) -> coefficient.
// Pure algebra elements use target 0 of the one-dimensional trivial space.
struct CE {
    std::map<std::pair<Word, int>, Scalar> terms;

    CE() = default;
    static CE unit(int target = 0) {
        CE e;
        e.terms[{Word{}, target}] = 1;
        return e;
    }
    static CE gen(int x, int target = 0) {
        CE e;
        e.terms[{Word{x}, target}] = 1;
        return e;
    }

    bool zero() const { return terms.empty(); }
    void add(const Word& w, int t, const Scalar& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.try_emplace({w, t}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    CE& operator+=(const CE& o) {
        for (auto& [k, c] : o.terms) add(k.first, k.second, c);
        return *this;
    }
    CE& operator-=(const CE& o) {
        for (auto& [k, c] : o.terms) add(k.first, k.second, -c);
        return *this;
    }
    CE& operator*=(const Scalar& s) {
        if (s == 0) terms.clear();
        else
            for (auto& kv : terms) kv.second *= s;
        return *this;
    }
    friend CE operator+(CE a, const CE& b) { return a += b; }
    friend CE operator-(CE a, const CE& b) { return a -= b; }
    friend CE operator*(const Scalar& s, CE a) { return a *= s; }
    bool operator==(const CE& o) const { return terms == o.terms; }

    // Terms of word length k.
    CE weight(int k) const {
        CE out;
        for (auto& [key, c] : terms)
            if (static_cast<int>(key.first.size()) == k) out.terms.emplace(key, c);
        return out;
    }
    int max_weight() const {
        int w = -1;
        for (auto& kv : terms) w = std::max(w, static_cast<int>(kv.first.first.size()));
        return w;
    }
};

// Parity table of the generators, indexed by algebra basis index.
struct Parities {
    std::vector<int> deg;  // generator degrees 1 - |x|
    int word_degree(const Word& w) const {
        int d = 0;
        for (int x : w) d += deg[x];
        return d;
    }
    bool odd(int x) const { return parity(deg[x]); }
};

// Sorts raw into canonical order; nullopt when an odd generator repeats.
inline std::optional<std::pair<Word, int>> normalize_word(const Parities& p, Word raw) {
    int s = 1;
    for (size_t i = 1; i < raw.size(); ++i)
        for (size_t j = i; j > 0 && raw[j - 1] > raw[j]; --j) {
            if (p.odd(raw[j - 1]) && p.odd(raw[j])) s = -s;
            std::swap(raw[j - 1], raw[j]);
        }
    for (size_t i = 1; i < raw.size(); ++i)
        if (raw[i] == raw[i - 1] && p.odd(raw[i])) return std::nullopt;
    return std::make_pair(std::move(raw), s);
}

// Product of sorted words a*b with its Koszul sign.
inline std::optional<std::pair<Word, int>> merge_words(const Parities& p, const Word& a, const Word& b) {
    Word out;
    out.reserve(a.size() + b.size());
    int s = 1;
    size_t i = 0, j = 0;
    int odd_left = 0;  // odd letters of a not yet emitted
    for (int x : a)
        if (p.odd(x)) ++odd_left;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
            if (j < b.size() && a[i] == b[j] && p.odd(a[i])) return std::nullopt;
            if (p.odd(a[i])) --odd_left;
            out.push_back(a[i++]);
        } else {
            if (p.odd(b[j]) && parity(odd_left)) s = -s;
            out.push_back(b[j++]);
        }
    }
    return std::make_pair(std::move(out), s);
}

// a * b where a is a pure algebra element.
inline CE multiply(const Parities& p, const CE& a, const CE& b) {
    CE out;
    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) {
            auto m = merge_words(p, ka.first, kb.first);
            if (m) out.add(m->first, kb.second, ca * cb * m->second);
        }
    return out;
}

// Contraction with the basis vector x, a derivation of degree |x| - 1 acting on the word.
inline CE contract(const Parities& p, int x, const CE& e) {
    CE out;
    for (auto& [k, c] : e.terms) {
        const Word& w = k.first;
        int before = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            if (w[i] == x) {
                Word r = w;
                r.erase(r.begin() + static_cast<long>(i));
                int s = (p.odd(x) && parity(before)) ? -1 : 1;
                out.add(r, k.second, c * s);
            }
            before += p.deg[w[i]];
        }
    }
    return out;
}

// Contraction along v valued in g: the term omega (x) y acts as omega * iota_y.
inline CE contract_mixed(const Parities& p, const CE& v, const CE& e) {
    CE out;
    std::map<int, CE> by_target;
    for (auto& [k, c] : v.terms) by_target[k.second].add(k.first, 0, c);
    for (auto& [y, omega] : by_target) {
        CE ie = contract(p, y, e);
        if (!ie.zero()) out += multiply(p, omega, ie);
    }
    return out;
}

// Applies a degree-`deg` derivation of the algebra, given on generators, to the word part of e.
inline CE apply_derivation(const Parities& p, const std::vector<CE>& on_gen, int deg, const CE& e) {
    CE out;
    for (auto& [k, c] : e.terms) {
        const Word& w = k.first;
        int before = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            const CE& dx = on_gen[w[i]];
            if (!dx.zero()) {
                Word pre(w.begin(), w.begin() + static_cast<long>(i));
                Word post(w.begin() + static_cast<long>(i) + 1, w.end());
                int s = parity(deg) && parity(before) ? -1 : 1;
                for (auto& [kd, cd] : dx.terms) {
                    auto m1 = merge_words(p, pre, kd.first);
                    if (!m1) continue;
                    auto m2 = merge_words(p, m1->first, post);
                    if (!m2) continue;
                    out.add(m2->first, k.second, c * cd * s * m1->second * m2->second);
                }
            }
            before += p.deg[w[i]];
        }
    }
    return out;
}

}  // namespace lpinf
