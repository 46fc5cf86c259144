#include "lpinf/io.hpp"
#include "lpinf/leibniz.hpp"
#include "lpinf/trees.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>

using namespace lpinf;
using json = nlohmann::json;

namespace {

struct InputError : Error {
    explicit InputError(const std::string& msg) : Error("InputError", msg) {}
};

const std::set<std::string> kInputKinds = {"ParseError", "FileNotFound", "UnknownName", "AmbiguousLp", "InputError", "DuplicateName"};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileNotFound", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest(const std::string& text) {
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << std::hash<std::string>{}(text);
    return o.str();
}

json violation_json(const Violation& v) { return {{"kind", v.kind}, {"witness", v.witness}, {"detail", v.detail}}; }

std::string ce_str(const DGLieAlgebra& g, const GradedSpace& v, const CE& e) {
    if (e.terms.empty()) return "0";
    std::string s;
    for (auto& [k, c] : e.terms) {
        if (!s.empty()) s += " + ";
        s += to_string(c) + " " + (k.first.empty() ? "" : word_str(g, k.first) + " (x) ") + v.name(k.second);
    }
    return s;
}

json sparse_json(const GradedSpace& v, const Sparse& s) {
    json out = json::object();
    for (auto& [i, c] : s) out[v.name(i)] = to_string(c);
    return out;
}

// Shared state for one run.
struct Run {
    std::string command;
    json inputs = json::array();
    json result = json::object();
    std::optional<Violation> violation;

    SpecDocument load(const std::string& path) {
        std::string text = read_file(path);
        inputs.push_back({{"path", path}, {"digest", digest(text)}});
        return parse_document(text);
    }
    void fail(const Violation& v) {
        if (!violation) violation = v;
    }
    void fail_if(const std::optional<Violation>& v) {
        if (v) fail(*v);
    }
};

void cmd_validate(Run& r, const std::string& file) {
    SpecDocument doc = r.load(file);
    Alg g = doc_algebra(doc);
    json checked = json::array();
    auto record = [&](const std::string& kind, const std::string& name, const std::optional<Violation>& v) {
        checked.push_back({{"kind", kind}, {"name", name}, {"ok", !v.has_value()}});
        r.fail_if(v);
    };
    auto guarded = [&](const std::string& kind, const std::string& name, const std::function<std::optional<Violation>()>& fn) {
        try {
            record(kind, name, fn());
        } catch (const ValidationError& e) {
            record(kind, name, e.violation);
        } catch (const Error& e) {
            if (kInputKinds.count(e.kind)) throw;
            record(kind, name, Violation{e.kind, {name}, e.what()});
        }
    };
    auto galg = g->check();
    record("algebra", "algebra", galg);
    if (galg) {
        r.result["checked"] = checked;
        return;
    }
    for (auto& [n, m] : doc.modules) guarded("module", n, [&] { return check_module(doc_module(doc, g, n)); });
    for (auto& [n, m] : doc.morphisms) guarded("morphism", n, [&] { return check_morphism(doc_morphism(doc, g, n)); });
    for (auto& [n, c] : doc.cocycles)
        guarded("cocycle", n, [&] { return check_wlp(wlp_from_two_cocycle(g, c.alpha, c.k)); });
    for (auto& [n, p] : doc.pairs)
        guarded("pair", n, [&] { return check_wlp(wlp_from_dgla_pair(doc_pair(doc, g, n))); });
    for (auto& [n, h] : doc.homotopies)
        guarded("homotopy", n, [&]() -> std::optional<Violation> {
            auto rep = verify_homotopy(doc_homotopy(doc, g, n));
            if (rep.direct && rep.path) return std::nullopt;
            return rep.witness ? rep.witness : Violation{"NotHomotopy", {n}, ""};
        });
    if (doc.leibniz) guarded("leibniz", "leibniz", [&] { return doc.leibniz->check(); });
    if (doc.lp || !doc.morphisms.empty() || !doc.cocycles.empty() || !doc.pairs.empty())
        guarded("lp", doc_lp_choice(doc).kind, [&] { return check_wlp(doc_wlp(doc, g)); });
    r.result["checked"] = checked;
}

WeakLP checked_wlp(Run& r, const SpecDocument& doc, const Alg& g) {
    if (auto v = g->check()) throw ValidationError(*v);
    WeakLP w = doc_wlp(doc, g);
    if (auto v = check_wlp(w)) throw ValidationError(*v);
    r.result["lp"] = doc_lp_choice(doc).kind;
    return w;
}

void cmd_leibniz(Run& r, const std::string& file, int arity, const std::string& method, bool identities) {
    if (arity < 1) throw InputError("--arity must be positive");
    SpecDocument doc = r.load(file);
    Alg g = doc_algebra(doc);
    WeakLP w = checked_wlp(r, doc, g);
    LeibnizEvaluator ev(w);
    const LFModule& m = ev.module();
    r.result["arity"] = arity;
    r.result["method"] = method;
    if (method == "all") {
        AgreementReport a = three_way_agreement(ev, arity);
        r.result["agreement"] = {{"ok", a.ok}, {"tuples", a.tuples}, {"methods", {"recursive", "closed", "trees"}}};
        r.fail_if(a.witness);
    } else {
        Method me = method == "recursive" ? Method::Recursive : method == "closed" ? Method::Closed : Method::Trees;
        json values = json::array();
        long count = 0;
        for_each_tuple(m.dim(), arity, [&](const std::vector<int>& x) {
            ++count;
            CE v = ev.evaluate(me, x);
            if (!v.zero()) values.push_back({{"args", tuple_str(m.space, x)}, {"value", ce_str(*g, m.space, v)}});
            return true;
        });
        r.result["tuples"] = count;
        r.result["nonzero"] = values;
    }
    if (identities) {
        auto v = verify_leibniz_identities(ev.structure(), arity);
        r.result["identities"] = {{"ok", !v.has_value()}, {"max_arity", arity}};
        r.fail_if(v);
    }
}

void cmd_trees(int n) {
    if (n < 1 || n > 7) throw InputError("--n must be between 1 and 7");
    auto classes = enumerate_mlrt(n);
    std::cout << "# n=" << n << " classes=" << classes.size() << "\n";
    for (auto& c : classes) {
        std::cout << "parent=[";
        for (int l = 1; l <= n; ++l) std::cout << (l > 1 ? "," : "") << c.next[l];
        std::cout << "] labels=[";
        for (int l = 1; l <= n; ++l) std::cout << (l > 1 ? "," : "") << l;
        std::cout << "] size=" << c.raw_count << " form=" << c.canonical() << "\n";
    }
}

void cmd_homotopy(Run& r, const std::string& cert, const std::string& only) {
    SpecDocument doc = r.load(cert);
    Alg g = doc_algebra(doc);
    if (auto v = g->check()) throw ValidationError(*v);
    if (doc.homotopies.empty()) throw InputError("no homotopies in '" + cert + "'");
    if (!only.empty() && !doc.homotopies.count(only)) throw Error("UnknownName", "no homotopy '" + only + "'");
    json out = json::array();
    for (auto& [n, h] : doc.homotopies) {
        if (!only.empty() && n != only) continue;
        HomotopyCertificate c = doc_homotopy(doc, g, n);
        r.fail_if(check_morphism(c.f));
        r.fail_if(check_morphism(c.f2));
        HomotopyReport rep = verify_homotopy(c);
        out.push_back({{"name", n}, {"direct", rep.direct}, {"path", rep.path}});
        if (!rep.direct || !rep.path) r.fail(rep.witness ? *rep.witness : Violation{"NotHomotopy", {n}, ""});
    }
    r.result["homotopies"] = out;
}

Morphism checked_morphism(const SpecDocument& doc, const Alg& g, const std::string& name) {
    if (!doc.morphisms.count(name)) throw Error("UnknownName", "no morphism '" + name + "'");
    if (auto v = g->check()) throw ValidationError(*v);
    Morphism f = doc_morphism(doc, g, name);
    if (auto v = check_morphism(f)) throw ValidationError(*v);
    return f;
}

bool higher_vanish(const WMap& f) {
    for (auto& e : f.img)
        for (auto& [k, c] : e.terms)
            if (!k.first.empty()) return false;
    return true;
}

void cmd_strictify(Run& r, const std::string& file, const std::string& name, bool cofibration, const std::string& output) {
    SpecDocument doc = r.load(file);
    Alg g = doc_algebra(doc);
    Morphism phi = checked_morphism(doc, g, name);
    Strictification s = cofibration ? strictify_cofibration(phi) : strictify_fibration(phi);
    bool strict = higher_vanish(s.strict.f);
    bool lead = s.strict.f.linear0() == phi.f.linear0();
    r.fail_if(check_module(s.modified));
    r.fail_if(check_morphism(s.psi));
    r.fail_if(check_morphism(s.strict));
    if (!strict) r.fail(Violation{"NotStrict", {name}, "higher components remain"});
    if (!lead) r.fail(Violation{"LeadingChanged", {name}, ""});
    r.result["strict"] = strict;
    r.result["leading_unchanged"] = lead;
    r.result["psi_max_weight"] = s.psi.f.max_weight();
    if (!output.empty()) {
        SpecDocument o;
        o.algebra = doc.algebra;
        std::string src = doc.morphisms.at(name).source, tgt = doc.morphisms.at(name).target;
        put_module(o, "modified", s.modified);
        if (src != kAdjoint) put_module(o, src, phi.src);
        if (tgt != kAdjoint) put_module(o, tgt, phi.tgt);
        put_morphism(o, "psi", "modified", src, s.psi.f);
        put_morphism(o, "strict", "modified", tgt, s.strict.f);
        std::ofstream(output) << serialize_document(o);
        r.result["output"] = output;
    }
}

void cmd_pullback(Run& r, const std::string& file, const std::string& fib, const std::string& along) {
    SpecDocument doc = r.load(file);
    Alg g = doc_algebra(doc);
    Morphism phi = checked_morphism(doc, g, fib), psi = checked_morphism(doc, g, along);
    if (!(phi.tgt.space == psi.tgt.space)) throw InputError("morphisms must share their target");
    Pullback pb = pullback(phi, psi);
    r.fail_if(check_module(pb.module));
    r.fail_if(check_morphism(pb.to_fibration_source));
    r.fail_if(check_morphism(pb.to_other));
    const Parities& p = g->par();
    bool commutes = compose(p, phi.f, pb.to_fibration_source.f) == compose(p, psi.f, pb.to_other.f);
    Classification c = classify(pb.to_other), cphi = classify(phi);
    if (!commutes) r.fail(Violation{"NotCommutative", {fib, along}, ""});
    if (!c.fibration) r.fail(Violation{"NotFibration", {"projection"}, ""});
    if (cphi.weak_equivalence && !c.weak_equivalence) r.fail(Violation{"NotTrivialFibration", {"projection"}, ""});
    r.result["dimension"] = pb.module.dim();
    r.result["commutes"] = commutes;
    r.result["projection"] = {{"fibration", c.fibration}, {"weak_equivalence", c.weak_equivalence}};
}

std::string default_module(const SpecDocument& doc) {
    if (doc.modules.size() == 1) return doc.modules.begin()->first;
    return kAdjoint;
}

LFModule checked_module(const SpecDocument& doc, const Alg& g, const std::string& name) {
    if (name != kAdjoint && !doc.modules.count(name)) throw Error("UnknownName", "no module '" + name + "'");
    if (auto v = g->check()) throw ValidationError(*v);
    LFModule m = doc_module(doc, g, name);
    if (auto v = check_module(m)) throw ValidationError(*v);
    return m;
}

void cmd_path(Run& r, const std::string& file, std::string name) {
    SpecDocument doc = r.load(file);
    if (name.empty()) name = default_module(doc);
    Alg g = doc_algebra(doc);
    LFModule m = checked_module(doc, g, name);
    PathObject po = path_object(m);
    const Parities& p = g->par();
    WMap id = WMap::identity(m.space);
    bool e0 = compose(p, po.eps0.f, po.s.f) == id, e1 = compose(p, po.eps1.f, po.s.f) == id;
    auto sq = verify_square_zero(po.total);
    r.fail_if(sq);
    Classification cs = classify(po.s), ce = classify(po.eps01);
    if (!e0 || !e1) r.fail(Violation{"NotSection", {name}, "eps_i o s != id"});
    if (!ce.fibration) r.fail(Violation{"NotFibration", {"(eps0, eps1)"}, ""});
    if (!cs.weak_equivalence) r.fail(Violation{"NotWeakEquivalence", {"s"}, ""});
    r.result["module"] = name;
    r.result["square_zero"] = !sq.has_value();
    r.result["eps_s_identity"] = e0 && e1;
    r.result["eps_fibration"] = ce.fibration;
    r.result["s_weak_equivalence"] = cs.weak_equivalence;
    r.result["dimension"] = po.total.dim();
}

json dims_json(const ModuleCohomology& h) {
    json out = json::object();
    for (auto& [d, c] : h.by_degree) out[std::to_string(d)] = c.dimension;
    return out;
}

void cmd_cohomology(Run& r, const std::string& file, std::string name, bool tangent, bool total, int cutoff) {
    if (tangent == total) throw InputError("exactly one of --tangent and --total is required");
    if (total && cutoff < 0) throw InputError("--total needs --weight-cutoff W >= 0");
    SpecDocument doc = r.load(file);
    Alg g = doc_algebra(doc);
    LFModule m;
    if (name.empty() && (doc.lp || !doc.cocycles.empty() || !doc.pairs.empty())) {
        WeakLP w = checked_wlp(r, doc, g);
        m = w.module();
        name = "lp";
    } else {
        if (name.empty()) name = default_module(doc);
        m = checked_module(doc, g, name);
    }
    r.result["module"] = name;
    if (tangent) {
        TangentModule t = tangent_cohomology_module(m);
        r.fail_if(check_tangent_module(t));
        r.result["module_cohomology"] = dims_json(t.coh);
        r.result["lie_cohomology"] = dims_json(t.lie.coh);
        return;
    }
    TotalCohomology h = total_cohomology(m, cutoff);
    json dims = json::object();
    for (auto& [d, n] : h.dims) dims[std::to_string(d)] = {{"dimension", n}, {"stabilized", h.stabilized.count(d) > 0}};
    r.result["weight_cutoff"] = cutoff;
    r.result["total_cohomology"] = dims;
    if (!h.bounded) r.result["warning"] = "C(g) has generators of degree <= 0; every degree is truncated";
    else if (h.stabilized.size() < h.dims.size()) r.result["warning"] = "degrees not marked stabilized are truncated";
}

void cmd_quotient_lie(Run& r, const std::string& file) {
    SpecDocument doc = r.load(file);
    if (!doc.leibniz) throw InputError("no leibniz section");
    const LeibnizAlgebra& L = *doc.leibniz;
    if (auto v = L.check()) throw ValidationError(*v);
    LieQuotient q = lie_quotient(L);
    bool round = q.rebuilt == L;
    if (!round) r.fail(Violation{"RoundTrip", {}, "G(F(L)) != L"});
    json comp = json::array();
    for (int i : q.complement) comp.push_back(L.space.name(i));
    r.result["kernel_dimension"] = q.kernel.size();
    r.result["lie_dimension"] = q.lie->dim();
    r.result["complement"] = comp;
    r.result["round_trip"] = round;
}

void cmd_htan(Run& r, const std::string& file) {
    SpecDocument doc = r.load(file);
    Alg g = doc_algebra(doc);
    WeakLP w = checked_wlp(r, doc, g);
    LeibnizEvaluator ev(w);
    HtanReport h = htan_compatibility(ev);
    r.fail_if(h.witness);
    json br = json::array();
    for (size_t u = 0; u < h.bracket.size(); ++u)
        for (size_t v = 0; v < h.bracket.size(); ++v)
            if (!h.bracket[u][v].empty())
                br.push_back({{"u", h.tangent.space.name(static_cast<int>(u))},
                              {"v", h.tangent.space.name(static_cast<int>(v))},
                              {"value", sparse_json(h.tangent.space, h.bracket[u][v])}});
    r.result["pairs"] = h.pairs;
    r.result["tangent_dimension"] = h.tangent.space.dim();
    r.result["bracket"] = br;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lpinf: weak Loday-Pirashvili modules and Leibniz-infinity algebras"};
    app.require_subcommand(1);
    std::string file, cert, name, other, method = "all", output;
    int arity = 2, n = 4, cutoff = -1;
    bool identities = false, cofib = false, tangent = false, total = false;

    auto* validate = app.add_subcommand("validate", "validate every section of a document");
    validate->add_option("file", file)->required();
    auto* leibniz = app.add_subcommand("leibniz", "evaluate lambda_n on basis tuples");
    leibniz->add_option("file", file)->required();
    leibniz->add_option("--arity", arity);
    leibniz->add_option("--method", method)->check(CLI::IsMember({"recursive", "closed", "trees", "all"}));
    leibniz->add_flag("--identities", identities, "also verify the Leibniz-infinity identities up to the arity");
    auto* trees = app.add_subcommand("trees", "list monotonic labeled rooted tree classes");
    trees->add_option("--n", n);
    auto* homotopy = app.add_subcommand("homotopy", "check homotopy certificates");
    homotopy->add_option("--certificate", cert)->required();
    homotopy->add_option("--name", name);
    auto* strictify = app.add_subcommand("strictify", "strictify a fibration or cofibration");
    strictify->add_option("file", file)->required();
    strictify->add_option("--morphism", name)->required();
    strictify->add_flag("--cofibration", cofib);
    strictify->add_option("--output", output);
    auto* pull = app.add_subcommand("pullback", "pull back a fibration");
    pull->add_option("file", file)->required();
    pull->add_option("--fibration", name)->required();
    pull->add_option("--along", other)->required();
    auto* path = app.add_subcommand("path", "path object of a module");
    path->add_option("file", file)->required();
    path->add_option("--module", name);
    auto* coh = app.add_subcommand("cohomology", "tangent or truncated total cohomology");
    coh->add_option("file", file)->required();
    coh->add_option("--module", name);
    coh->add_flag("--tangent", tangent);
    coh->add_flag("--total", total);
    coh->add_option("--weight-cutoff", cutoff);
    auto* quot = app.add_subcommand("quotient-lie", "Lie quotient of a Leibniz algebra");
    quot->add_option("file", file)->required();
    auto* htan = app.add_subcommand("htan-check", "tangent bracket against lambda_2");
    htan->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Run r;
    r.command = app.get_subcommands().front()->get_name();
    auto start = std::chrono::steady_clock::now();
    int code = 0;
    json error;
    try {
        if (trees->parsed()) {
            cmd_trees(n);
            return 0;
        }
        if (validate->parsed()) cmd_validate(r, file);
        else if (leibniz->parsed()) cmd_leibniz(r, file, arity, method, identities);
        else if (homotopy->parsed()) cmd_homotopy(r, cert, name);
        else if (strictify->parsed()) cmd_strictify(r, file, name, cofib, output);
        else if (pull->parsed()) cmd_pullback(r, file, name, other);
        else if (path->parsed()) cmd_path(r, file, name);
        else if (coh->parsed()) cmd_cohomology(r, file, name, tangent, total, cutoff);
        else if (quot->parsed()) cmd_quotient_lie(r, file);
        else if (htan->parsed()) cmd_htan(r, file);
        code = r.violation ? 1 : 0;
    } catch (const ValidationError& e) {
        r.fail(e.violation);
        code = 1;
    } catch (const ParseError& e) {
        error = {{"kind", e.kind}, {"message", e.what()}, {"line", e.line}, {"column", e.column}};
        std::cerr << (file.empty() ? cert : file) << ": " << e.what() << "\n";
        code = 2;
    } catch (const Error& e) {
        if (kInputKinds.count(e.kind)) {
            error = {{"kind", e.kind}, {"message", e.what()}};
            std::cerr << e.what() << "\n";
            code = 2;
        } else {
            r.fail(Violation{e.kind, {}, e.what()});
            code = 1;
        }
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    json report;
    report["command"] = r.command;
    report["inputs"] = r.inputs;
    report["result"] = r.result;
    report["status"] = code == 0 ? "certificate" : code == 1 ? "violation" : "error";
    if (r.violation) report["violation"] = violation_json(*r.violation);
    if (!error.is_null()) report["error"] = error;
    report["timing_ms"] = ms;
    std::cout << report.dump(2) << "\n";
    return code;
}
