#pragma once

#include "lp.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace lpinf {

struct ParseError : Error {
    int line = 0, column = 0;
    ParseError(const std::string& msg, int l, int c)
        : Error("ParseError", "line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

inline bool operator==(const DGLAData& a, const DGLAData& b) {
    return a.space == b.space && a.diff == b.diff && a.bracket == b.bracket;
}

struct ModuleDoc {
    GradedSpace space;
    WMap d;
    bool operator==(const ModuleDoc&) const = default;
};

struct MorphismDoc {
    std::string source, target;
    WMap f;
    bool operator==(const MorphismDoc&) const = default;
};

struct HomotopyDoc {
    std::string source, target;  // morphism names
    WMap h;
    bool operator==(const HomotopyDoc&) const = default;
};

struct CocycleDoc {
    int k = 2;
    CE alpha;
    bool operator==(const CocycleDoc&) const = default;
};

struct PairDoc {
    GradedSpace sub, quotient;
    std::vector<Sparse> sub_vectors, split;
    std::optional<std::vector<Sparse>> change;  // splitting change lambda: quotient -> sub
    bool operator==(const PairDoc&) const = default;
};

struct LpChoice {
    std::string kind = "identity";  // identity | morphism | cocycle | pair
    std::string name;
    bool operator==(const LpChoice&) const = default;
};

struct SpecDocument {
    DGLAData algebra;
    std::map<std::string, ModuleDoc> modules;
    std::map<std::string, MorphismDoc> morphisms;
    std::map<std::string, HomotopyDoc> homotopies;
    std::map<std::string, CocycleDoc> cocycles;
    std::map<std::string, PairDoc> pairs;
    std::optional<LeibnizAlgebra> leibniz;
    std::optional<LpChoice> lp;
    bool operator==(const SpecDocument&) const = default;
};

namespace detail {

[[noreturn]] inline void fail(const YAML::Node& n, const std::string& msg) {
    auto m = n.Mark();
    throw ParseError(msg, m.line + 1, m.column + 1);
}

inline std::string str(const YAML::Node& n) {
    if (!n.IsScalar()) fail(n, "expected a scalar");
    return n.Scalar();
}

inline int integer(const YAML::Node& n) {
    std::string s = str(n);
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) fail(n, "'" + s + "' is not an integer");
        return v;
    } catch (const std::logic_error&) {
        fail(n, "'" + s + "' is not an integer");
    }
}

inline Scalar rational(const YAML::Node& n) {
    try {
        return parse_scalar(str(n));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(n, e.what());
    }
}

inline const YAML::Node& seq(const YAML::Node& n, size_t len = 0) {
    if (!n.IsSequence()) fail(n, "expected a list");
    if (len && n.size() != len) fail(n, "expected a list of length " + std::to_string(len));
    return n;
}

inline void map_node(const YAML::Node& n, const std::set<std::string>& allowed) {
    if (!n.IsMap()) fail(n, "expected a mapping");
    for (auto it = n.begin(); it != n.end(); ++it) {
        std::string k = str(it->first);
        if (!allowed.count(k)) fail(it->first, "unknown key '" + k + "'");
    }
}

inline int lookup(const GradedSpace& v, const YAML::Node& n) {
    std::string s = str(n);
    if (!v.has(s)) fail(n, "unknown name '" + s + "'");
    return v.index(s);
}

inline GradedSpace basis(const YAML::Node& n) {
    std::vector<BasisElement> b;
    std::set<std::string> seen;
    if (!n) return GradedSpace{};
    for (auto e : seq(n)) {
        seq(e, 2);
        std::string name = str(e[0]);
        if (name.empty()) fail(e[0], "empty name");
        if (!seen.insert(name).second) fail(e[0], "duplicate name '" + name + "'");
        b.push_back({name, integer(e[1])});
    }
    return GradedSpace(b);
}

inline Sparse vector_terms(const GradedSpace& v, const YAML::Node& n) {
    Sparse out;
    for (auto t : seq(n)) {
        seq(t, 2);
        sparse_add(out, lookup(v, t[0]), rational(t[1]));
    }
    return out;
}

// Term triples [word, target, coefficient] grouped by source name.
inline WMap wmap(const Parities& p, const GradedSpace& g, const GradedSpace& src, const GradedSpace& tgt, int shift,
                 const YAML::Node& n) {
    WMap f(src, tgt, shift);
    if (!n) return f;
    if (!n.IsMap()) fail(n, "expected a mapping from source names to term lists");
    for (auto it = n.begin(); it != n.end(); ++it) {
        int s = lookup(src, it->first);
        for (auto t : seq(it->second)) {
            seq(t, 3);
            Word raw;
            for (auto x : seq(t[0])) raw.push_back(lookup(g, x));
            int target = lookup(tgt, t[1]);
            Scalar c = rational(t[2]);
            auto w = normalize_word(p, raw);
            if (!w) continue;
            f.img[s].add(w->first, target, c * w->second);
        }
    }
    return f;
}

inline DGLAData algebra(const YAML::Node& n) {
    DGLAData d;
    if (!n || n.IsNull()) return d;
    map_node(n, {"basis", "differential", "bracket"});
    d.space = basis(n["basis"]);
    if (auto df = n["differential"])
        for (auto t : seq(df)) {
            seq(t, 3);
            int x = lookup(d.space, t[0]), y = lookup(d.space, t[1]);
            sparse_add(d.diff[x], y, rational(t[2]));
        }
    if (auto br = n["bracket"])
        for (auto t : seq(br)) {
            seq(t, 4);
            int x = lookup(d.space, t[0]), y = lookup(d.space, t[1]), z = lookup(d.space, t[2]);
            Scalar c = rational(t[3]);
            if (x > y) {
                c *= -sign_of(d.space.degree(x) * d.space.degree(y));
                std::swap(x, y);
            }
            sparse_add(d.bracket[{x, y}], z, c);
        }
    for (auto it = d.diff.begin(); it != d.diff.end();) it = it->second.empty() ? d.diff.erase(it) : std::next(it);
    for (auto it = d.bracket.begin(); it != d.bracket.end();) it = it->second.empty() ? d.bracket.erase(it) : std::next(it);
    return d;
}

inline LeibnizAlgebra leibniz(const YAML::Node& n) {
    map_node(n, {"basis", "differential", "product"});
    LeibnizAlgebra L(basis(n["basis"]));
    if (auto df = n["differential"])
        for (auto t : seq(df)) {
            seq(t, 3);
            int x = lookup(L.space, t[0]), y = lookup(L.space, t[1]);
            sparse_add(L.d[x], y, rational(t[2]));
        }
    if (auto pr = n["product"])
        for (auto t : seq(pr)) {
            seq(t, 4);
            int x = lookup(L.space, t[0]), y = lookup(L.space, t[1]), z = lookup(L.space, t[2]);
            sparse_add(L.br[x][y], z, rational(t[3]));
        }
    return L;
}

// Entries [name, degree, [[basis name, coefficient], ...]]; vectors must be homogeneous of that degree.
inline void named_vectors(const GradedSpace& big, const YAML::Node& n, GradedSpace& space, std::vector<Sparse>& vecs) {
    std::vector<BasisElement> b;
    std::set<std::string> seen;
    for (auto e : seq(n)) {
        seq(e, 3);
        std::string name = str(e[0]);
        if (!seen.insert(name).second) fail(e[0], "duplicate name '" + name + "'");
        int deg = integer(e[1]);
        Sparse v = vector_terms(big, e[2]);
        for (auto& [i, c] : v)
            if (big.degree(i) != deg) fail(e[2], "vector is not homogeneous of degree " + std::to_string(deg));
        if (v.empty()) fail(e[2], "zero vector");
        b.push_back({name, deg});
        vecs.push_back(v);
    }
    space = GradedSpace(b);
}

}  // namespace detail

inline const std::string kAdjoint = "adjoint";

inline GradedSpace doc_module_space(const SpecDocument& doc, const std::string& name) {
    if (name == kAdjoint) return doc.algebra.space;
    auto it = doc.modules.find(name);
    if (it == doc.modules.end()) throw Error("UnknownName", "no module '" + name + "'");
    return it->second.space;
}

inline SpecDocument parse_document(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
    SpecDocument doc;
    if (root.IsNull()) return doc;
    detail::map_node(root, {"algebra", "modules", "morphisms", "homotopies", "cocycles", "pairs", "leibniz", "lp"});
    doc.algebra = detail::algebra(root["algebra"]);
    Parities p;
    for (auto& b : doc.algebra.space.basis()) p.deg.push_back(1 - b.degree);
    const GradedSpace& g = doc.algebra.space;

    if (auto ms = root["modules"]) {
        if (!ms.IsMap()) detail::fail(ms, "expected a mapping of modules");
        for (auto it = ms.begin(); it != ms.end(); ++it) {
            std::string name = detail::str(it->first);
            if (name == kAdjoint) detail::fail(it->first, "'adjoint' is reserved");
            detail::map_node(it->second, {"basis", "structure"});
            GradedSpace v = detail::basis(it->second["basis"]);
            doc.modules[name] = ModuleDoc{v, detail::wmap(p, g, v, v, 1, it->second["structure"])};
        }
    }
    auto module_ref = [&](const YAML::Node& n) {
        std::string s = detail::str(n);
        if (s != kAdjoint && !doc.modules.count(s)) detail::fail(n, "unknown module '" + s + "'");
        return s;
    };
    if (auto ms = root["morphisms"]) {
        if (!ms.IsMap()) detail::fail(ms, "expected a mapping of morphisms");
        for (auto it = ms.begin(); it != ms.end(); ++it) {
            detail::map_node(it->second, {"source", "target", "components"});
            std::string s = module_ref(it->second["source"]), t = module_ref(it->second["target"]);
            doc.morphisms[detail::str(it->first)] = MorphismDoc{
                s, t, detail::wmap(p, g, doc_module_space(doc, s), doc_module_space(doc, t), 0, it->second["components"])};
        }
    }
    if (auto hs = root["homotopies"]) {
        if (!hs.IsMap()) detail::fail(hs, "expected a mapping of homotopies");
        for (auto it = hs.begin(); it != hs.end(); ++it) {
            detail::map_node(it->second, {"source", "target", "components"});
            auto morph = [&](const YAML::Node& n) {
                std::string s = detail::str(n);
                if (!doc.morphisms.count(s)) detail::fail(n, "unknown morphism '" + s + "'");
                return s;
            };
            std::string a = morph(it->second["source"]), b = morph(it->second["target"]);
            const MorphismDoc &fa = doc.morphisms[a], &fb = doc.morphisms[b];
            if (fa.source != fb.source || fa.target != fb.target) detail::fail(it->second, "morphisms do not share source and target");
            doc.homotopies[detail::str(it->first)] = HomotopyDoc{
                a, b, detail::wmap(p, g, doc_module_space(doc, fa.source), doc_module_space(doc, fa.target), -1, it->second["components"])};
        }
    }
    if (auto cs = root["cocycles"]) {
        if (!cs.IsMap()) detail::fail(cs, "expected a mapping of cocycles");
        for (auto it = cs.begin(); it != cs.end(); ++it) {
            detail::map_node(it->second, {"degree", "terms"});
            CocycleDoc c;
            c.k = detail::integer(it->second["degree"]);
            for (auto t : detail::seq(it->second["terms"])) {
                detail::seq(t, 2);
                Word raw;
                for (auto x : detail::seq(t[0])) raw.push_back(detail::lookup(g, x));
                Scalar v = detail::rational(t[1]);
                auto w = normalize_word(p, raw);
                if (!w) continue;
                c.alpha.add(w->first, 0, v * w->second);
            }
            doc.cocycles[detail::str(it->first)] = c;
        }
    }
    if (auto ps = root["pairs"]) {
        if (!ps.IsMap()) detail::fail(ps, "expected a mapping of pairs");
        for (auto it = ps.begin(); it != ps.end(); ++it) {
            detail::map_node(it->second, {"subalgebra", "quotient", "change"});
            PairDoc pd;
            detail::named_vectors(g, it->second["subalgebra"], pd.sub, pd.sub_vectors);
            detail::named_vectors(g, it->second["quotient"], pd.quotient, pd.split);
            if (auto ch = it->second["change"]) {
                std::vector<Sparse> lam(pd.quotient.dim());
                if (!ch.IsMap()) detail::fail(ch, "expected a mapping from quotient names to vectors");
                for (auto jt = ch.begin(); jt != ch.end(); ++jt) {
                    int b = detail::lookup(pd.quotient, jt->first);
                    lam[b] = detail::vector_terms(pd.sub, jt->second);
                    for (auto& [x, c] : lam[b])
                        if (pd.sub.degree(x) != pd.quotient.degree(b)) detail::fail(jt->second, "change must preserve degree");
                }
                pd.change = lam;
            }
            doc.pairs[detail::str(it->first)] = pd;
        }
    }
    if (auto l = root["leibniz"]) doc.leibniz = detail::leibniz(l);
    if (auto l = root["lp"]) {
        detail::map_node(l, {"kind", "name"});
        LpChoice c;
        c.kind = detail::str(l["kind"]);
        if (c.kind != "identity") c.name = detail::str(l["name"]);
        bool ok = (c.kind == "identity") || (c.kind == "morphism" && doc.morphisms.count(c.name)) ||
                  (c.kind == "cocycle" && doc.cocycles.count(c.name)) || (c.kind == "pair" && doc.pairs.count(c.name));
        if (!ok) detail::fail(l, "lp must name an existing morphism, cocycle or pair, or be the identity");
        if (c.kind == "morphism" && doc.morphisms[c.name].target != kAdjoint) detail::fail(l, "lp morphism must target the adjoint module");
        doc.lp = c;
    }
    return doc;
}

inline SpecDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileNotFound", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

namespace detail {

inline void emit_word(YAML::Emitter& out, const GradedSpace& g, const Word& w) {
    out << YAML::Flow << YAML::BeginSeq;
    for (int x : w) out << g.name(x);
    out << YAML::EndSeq;
}

inline void emit_q(YAML::Emitter& out, const Scalar& c) { out << YAML::DoubleQuoted << to_string(c); }

inline void emit_basis(YAML::Emitter& out, const GradedSpace& v) {
    out << YAML::BeginSeq;
    for (auto& b : v.basis()) out << YAML::Flow << YAML::BeginSeq << b.name << b.degree << YAML::EndSeq;
    out << YAML::EndSeq;
}

inline void emit_wmap(YAML::Emitter& out, const GradedSpace& g, const WMap& f) {
    std::map<std::string, int> order;
    for (int i = 0; i < f.src.dim(); ++i)
        if (!f.img[i].terms.empty()) order[f.src.name(i)] = i;
    out << YAML::BeginMap;
    for (auto& [name, i] : order) {
        out << YAML::Key << name << YAML::Value << YAML::BeginSeq;
        for (auto& [k, c] : f.img[i].terms) {
            out << YAML::Flow << YAML::BeginSeq;
            emit_word(out, g, k.first);
            out << f.tgt.name(k.second);
            emit_q(out, c);
            out << YAML::EndSeq;
        }
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
}

inline void emit_vector(YAML::Emitter& out, const GradedSpace& v, const Sparse& s) {
    out << YAML::Flow << YAML::BeginSeq;
    for (auto& [i, c] : s) {
        out << YAML::Flow << YAML::BeginSeq << v.name(i);
        emit_q(out, c);
        out << YAML::EndSeq;
    }
    out << YAML::EndSeq;
}

inline void emit_named_vectors(YAML::Emitter& out, const GradedSpace& big, const GradedSpace& v, const std::vector<Sparse>& vs) {
    out << YAML::BeginSeq;
    for (int i = 0; i < v.dim(); ++i) {
        out << YAML::Flow << YAML::BeginSeq << v.name(i) << v.degree(i);
        emit_vector(out, big, vs[i]);
        out << YAML::EndSeq;
    }
    out << YAML::EndSeq;
}

}  // namespace detail

// Canonical text: sections and keys in sorted order, empty sections omitted.
inline std::string serialize_document(const SpecDocument& doc) {
    using namespace detail;
    const DGLAData& a = doc.algebra;
    const GradedSpace& g = a.space;
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "algebra" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "basis" << YAML::Value;
    emit_basis(out, g);
    if (!a.bracket.empty()) {
        out << YAML::Key << "bracket" << YAML::Value << YAML::BeginSeq;
        for (auto& [k, v] : a.bracket)
            for (auto& [z, c] : v) {
                out << YAML::Flow << YAML::BeginSeq << g.name(k.first) << g.name(k.second) << g.name(z);
                emit_q(out, c);
                out << YAML::EndSeq;
            }
        out << YAML::EndSeq;
    }
    if (!a.diff.empty()) {
        out << YAML::Key << "differential" << YAML::Value << YAML::BeginSeq;
        for (auto& [x, v] : a.diff)
            for (auto& [y, c] : v) {
                out << YAML::Flow << YAML::BeginSeq << g.name(x) << g.name(y);
                emit_q(out, c);
                out << YAML::EndSeq;
            }
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
    if (!doc.cocycles.empty()) {
        out << YAML::Key << "cocycles" << YAML::Value << YAML::BeginMap;
        for (auto& [name, c] : doc.cocycles) {
            out << YAML::Key << name << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "degree" << YAML::Value << c.k;
            out << YAML::Key << "terms" << YAML::Value << YAML::BeginSeq;
            for (auto& [k, v] : c.alpha.terms) {
                out << YAML::Flow << YAML::BeginSeq;
                emit_word(out, g, k.first);
                emit_q(out, v);
                out << YAML::EndSeq;
            }
            out << YAML::EndSeq << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    if (!doc.homotopies.empty()) {
        out << YAML::Key << "homotopies" << YAML::Value << YAML::BeginMap;
        for (auto& [name, h] : doc.homotopies) {
            out << YAML::Key << name << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "components" << YAML::Value;
            emit_wmap(out, g, h.h);
            out << YAML::Key << "source" << YAML::Value << h.source;
            out << YAML::Key << "target" << YAML::Value << h.target;
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    if (doc.leibniz) {
        const LeibnizAlgebra& L = *doc.leibniz;
        out << YAML::Key << "leibniz" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "basis" << YAML::Value;
        emit_basis(out, L.space);
        bool any_d = false;
        for (auto& v : L.d) any_d = any_d || !v.empty();
        if (any_d) {
            out << YAML::Key << "differential" << YAML::Value << YAML::BeginSeq;
            for (int x = 0; x < L.dim(); ++x)
                for (auto& [y, c] : L.d[x]) {
                    out << YAML::Flow << YAML::BeginSeq << L.space.name(x) << L.space.name(y);
                    emit_q(out, c);
                    out << YAML::EndSeq;
                }
            out << YAML::EndSeq;
        }
        out << YAML::Key << "product" << YAML::Value << YAML::BeginSeq;
        for (int x = 0; x < L.dim(); ++x)
            for (int y = 0; y < L.dim(); ++y)
                for (auto& [z, c] : L.br[x][y]) {
                    out << YAML::Flow << YAML::BeginSeq << L.space.name(x) << L.space.name(y) << L.space.name(z);
                    emit_q(out, c);
                    out << YAML::EndSeq;
                }
        out << YAML::EndSeq << YAML::EndMap;
    }
    if (doc.lp) {
        out << YAML::Key << "lp" << YAML::Value << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << doc.lp->kind;
        if (doc.lp->kind != "identity") out << YAML::Key << "name" << YAML::Value << doc.lp->name;
        out << YAML::EndMap;
    }
    if (!doc.modules.empty()) {
        out << YAML::Key << "modules" << YAML::Value << YAML::BeginMap;
        for (auto& [name, m] : doc.modules) {
            out << YAML::Key << name << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "basis" << YAML::Value;
            emit_basis(out, m.space);
            out << YAML::Key << "structure" << YAML::Value;
            emit_wmap(out, g, m.d);
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    if (!doc.morphisms.empty()) {
        out << YAML::Key << "morphisms" << YAML::Value << YAML::BeginMap;
        for (auto& [name, m] : doc.morphisms) {
            out << YAML::Key << name << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "components" << YAML::Value;
            emit_wmap(out, g, m.f);
            out << YAML::Key << "source" << YAML::Value << m.source;
            out << YAML::Key << "target" << YAML::Value << m.target;
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    if (!doc.pairs.empty()) {
        out << YAML::Key << "pairs" << YAML::Value << YAML::BeginMap;
        for (auto& [name, pd] : doc.pairs) {
            out << YAML::Key << name << YAML::Value << YAML::BeginMap;
            if (pd.change) {
                out << YAML::Key << "change" << YAML::Value << YAML::BeginMap;
                for (int b = 0; b < pd.quotient.dim(); ++b) {
                    out << YAML::Key << pd.quotient.name(b) << YAML::Value;
                    detail::emit_vector(out, pd.sub, (*pd.change)[b]);
                }
                out << YAML::EndMap;
            }
            out << YAML::Key << "quotient" << YAML::Value;
            emit_named_vectors(out, g, pd.quotient, pd.split);
            out << YAML::Key << "subalgebra" << YAML::Value;
            emit_named_vectors(out, g, pd.sub, pd.sub_vectors);
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

// Library objects built from a document. Mathematical validation is left to the caller.
inline Alg doc_algebra(const SpecDocument& doc) { return make_algebra(doc.algebra); }

inline LFModule doc_module(const SpecDocument& doc, const Alg& g, const std::string& name) {
    if (name == kAdjoint) return adjoint_module(g);
    const ModuleDoc& m = doc.modules.at(name);
    LFModule out(g, m.space);
    out.d = m.d;
    return out;
}

inline Morphism doc_morphism(const SpecDocument& doc, const Alg& g, const std::string& name) {
    const MorphismDoc& m = doc.morphisms.at(name);
    return Morphism{doc_module(doc, g, m.source), doc_module(doc, g, m.target), m.f};
}

inline HomotopyCertificate doc_homotopy(const SpecDocument& doc, const Alg& g, const std::string& name) {
    const HomotopyDoc& h = doc.homotopies.at(name);
    return HomotopyCertificate{doc_morphism(doc, g, h.source), doc_morphism(doc, g, h.target), h.h};
}

inline LiePair doc_pair(const SpecDocument& doc, const Alg& g, const std::string& name) {
    const PairDoc& p = doc.pairs.at(name);
    return make_lie_pair(g, p.sub, p.sub_vectors, p.quotient, p.split);
}

inline LinearMap doc_pair_change(const SpecDocument& doc, const std::string& name) {
    const PairDoc& p = doc.pairs.at(name);
    LinearMap l(p.quotient, p.sub, 0);
    if (p.change)
        for (int b = 0; b < p.quotient.dim(); ++b)
            for (auto& [x, c] : (*p.change)[b]) l.set(b, x, c);
    return l;
}

// The weak LP module selected by the lp section; without one, the only cocycle, pair or adjoint-valued morphism.
inline LpChoice doc_lp_choice(const SpecDocument& doc) {
    if (doc.lp) return *doc.lp;
    std::vector<LpChoice> found;
    for (auto& [n, m] : doc.morphisms)
        if (m.target == kAdjoint) found.push_back({"morphism", n});
    for (auto& [n, c] : doc.cocycles) found.push_back({"cocycle", n});
    for (auto& [n, p] : doc.pairs) found.push_back({"pair", n});
    if (found.size() > 1) throw Error("AmbiguousLp", "several candidate weak LP modules; add an lp section");
    return found.empty() ? LpChoice{} : found[0];
}

inline WeakLP doc_wlp(const SpecDocument& doc, const Alg& g) {
    LpChoice c = doc_lp_choice(doc);
    if (c.kind == "morphism") return WeakLP{doc_morphism(doc, g, c.name)};
    if (c.kind == "cocycle") return wlp_from_two_cocycle(g, doc.cocycles.at(c.name).alpha, doc.cocycles.at(c.name).k);
    if (c.kind == "pair") return wlp_from_dgla_pair(doc_pair(doc, g, c.name));
    return identity_wlp(g);
}

// Writers for library objects.
inline void put_module(SpecDocument& doc, const std::string& name, const LFModule& m) { doc.modules[name] = ModuleDoc{m.space, m.d}; }

inline void put_morphism(SpecDocument& doc, const std::string& name, const std::string& src, const std::string& tgt, const WMap& f) {
    doc.morphisms[name] = MorphismDoc{src, tgt, f};
}

}  // namespace lpinf
