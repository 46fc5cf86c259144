#include "lpinf/fixture_docs.hpp"
#include "lpinf/leibniz.hpp"
#include "lpinf/trees.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sys/wait.h>

using namespace lpinf;
namespace fx = lpinf::fixtures;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void none(const std::optional<Violation>& v, const std::string& what) { require(!v, what + (v ? ": " + v->str() : "")); }
};

std::vector<WeakLP> three_fixtures() {
    return {identity_wlp(fx::sl2()), fx::two_cocycle_sl2(), wlp_from_dgla_pair(fx::lie_pair())};
}
const char* kFixtureNames[] = {"sl2 with f = id", "two-cocycle", "Lie pair"};

Outcome axioms() {
    Outcome o;
    for (auto g : {fx::sl2(), fx::abelian(), fx::a_to_b()}) o.none(g->check(), "valid fixture rejected");
    struct Bad {
        std::string expect;
        DGLAData d;
    };
    std::vector<Bad> bad;
    {
        auto d = fx::sl2_data();
        d.bracket[{0, 1}] = {{1, 3}};
        bad.push_back({"Jacobi", d});
    }
    {
        auto d = fx::sl2_data();
        d.bracket[{0, 0}] = {{0, 1}};
        bad.push_back({"Antisymmetry", d});
    }
    {
        auto d = fx::a_to_b_data();
        d.bracket[{0, 1}] = {{0, 1}};
        bad.push_back({"Degree", d});
    }
    {
        DGLAData d;
        d.space = GradedSpace({{"a", 0}, {"b", 1}, {"c", 2}});
        d.diff[0] = {{1, 1}};
        d.diff[1] = {{2, 1}};
        bad.push_back({"DSquare", d});
    }
    {
        DGLAData d;
        d.space = GradedSpace({{"x", 0}, {"y", 0}, {"z", 1}});
        d.diff[0] = {{2, 1}};
        d.bracket[{0, 1}] = {{0, 1}};
        bad.push_back({"Derivation", d});
    }
    std::string seen;
    for (auto& b : bad) {
        auto v = make_algebra(b.d)->check();
        o.require(v.has_value(), b.expect + " corruption accepted");
        if (!v) continue;
        o.require(v->kind == b.expect, "expected " + b.expect + ", got " + v->str());
        o.require(!v->witness.empty(), b.expect + " without witness");
        seen += (seen.empty() ? "" : "; ") + v->str();
    }
    if (o.ok) o.detail = "3 fixtures valid; rejected " + seen;
    return o;
}

Outcome square_zero() {
    Outcome o;
    int n = 0;
    auto check = [&](const LFModule& m, const std::string& what) {
        o.none(verify_square_zero(m), what);
        ++n;
    };
    for (auto g : {fx::sl2(), fx::abelian(), fx::a_to_b(), fx::rank2(), fx::sl2_eps(), fx::lie_pair().sub})
        check(adjoint_module(g), "adjoint");
    for (auto& w : three_fixtures()) check(w.module(), "weak LP module");
    check(fx::stress_wlp().module(), "stress module");
    auto g = fx::sl2();
    auto phi = fx::perturbed_fibration(g);
    auto psi = fx::coboundary_to_line(g);
    check(path_object(adjoint_module(g)).total, "path object");
    check(path_object(fx::perturbed(g)).total, "path object");
    check(pullback(phi, psi).module, "pullback");
    check(strictify_fibration(phi).modified, "strictify");
    check(factorize(phi, true).middle, "factorize (cone)");
    check(factorize(psi, false).middle, "factorize (cokernel)");
    if (o.ok) o.detail = std::to_string(n) + " modules square to zero";
    return o;
}

Outcome agreement() {
    Outcome o;
    std::string counts;
    auto ws = three_fixtures();
    for (size_t i = 0; i < ws.size(); ++i) {
        LeibnizEvaluator ev(ws[i]);
        auto r = three_way_agreement(ev, 5);
        o.none(r.witness, kFixtureNames[i]);
        counts += (i ? ", " : "") + std::string(kFixtureNames[i]) + " " + std::to_string(r.tuples);
    }
    LeibnizEvaluator sl2(identity_wlp(fx::sl2()));
    o.require(sl2.recursive({1, 0}) == 2 * CE::unit(1), "lambda_2(e, h) != 2e on sl2");
    if (o.ok) o.detail = "recursive = closed = trees for arity <= 5 on all tuples (" + counts + ")";
    return o;
}

Outcome identities() {
    Outcome o;
    auto ws = three_fixtures();
    for (size_t i = 0; i < ws.size(); ++i) {
        LeibnizEvaluator ev(ws[i]);
        o.none(verify_leibniz_identities(ev.structure(), 4), kFixtureNames[i]);
    }
    if (o.ok) o.detail = "Leibniz-infinity[1] identities hold for n <= 4 on the three fixtures";
    return o;
}

Outcome homotopies() {
    Outcome o;
    auto lp = fx::lie_pair();
    std::vector<std::pair<std::string, HomotopyCertificate>> certs = {
        {"cohomologous cocycles", homotopy_cohomologous(fx::rank2(), fx::rank2_alpha(), fx::rank2_eta(), 2)},
        {"splitting change", homotopy_splitting_change(lp, fx::lie_pair_lambda(lp))}};
    for (auto& [name, c] : certs) {
        o.none(check_morphism(c.f), name + " source");
        o.none(check_morphism(c.f2), name + " target");
        auto r = verify_homotopy(c);
        o.require(r.direct, name + " rejected by the direct check");
        o.require(r.path, name + " rejected by the path-object check");
        HomotopyCertificate bad = c;
        bad.h *= 2;
        auto rb = verify_homotopy(bad);
        o.require(!rb.direct && !rb.path, name + " accepted with a doubled homotopy");
    }
    if (o.ok) o.detail = "both certificates accepted directly and through the path object; doubled h rejected";
    return o;
}

Outcome model_structure() {
    Outcome o;
    auto g = fx::sl2();
    for (auto m : {adjoint_module(g), fx::perturbed(g)}) {
        auto po = path_object(m);
        auto& p = m.par();
        o.require(compose(p, po.eps0.f, po.s.f) == WMap::identity(m.space), "eps0 s != id");
        o.require(compose(p, po.eps1.f, po.s.f) == WMap::identity(m.space), "eps1 s != id");
        o.require(classify(po.eps01).fibration, "(eps0, eps1) not a fibration");
        o.require(classify(po.s).weak_equivalence, "s not a weak equivalence");
    }
    auto phi = fx::perturbed_fibration(g);
    o.require(phi.f.max_weight() == 1, "fixture is not weight-1 perturbed");
    auto s = strictify_fibration(phi);
    o.none(check_morphism(s.strict), "strictified map");
    o.require(s.strict.f.max_weight() == 0, "higher components survive strictification");
    o.require(s.strict.f.linear0() == phi.f.linear0(), "leading component changed");
    auto psi = fx::coboundary_to_line(g);
    auto pb = pullback(phi, psi);
    auto& p = pb.module.par();
    o.none(check_module(pb.module), "pullback module");
    o.require(compose(p, phi.f, pb.to_fibration_source.f) == compose(p, psi.f, pb.to_other.f), "pullback square does not commute");
    o.require(classify(pb.to_other).fibration, "pullback projection not a fibration");
    LFModule a = zero_module(g);
    Morphism j{a, psi.src, WMap(a.space, psi.src.space, 0)};
    Morphism f{a, phi.src, WMap(a.space, phi.src.space, 0)};
    auto cp = classify(phi);
    o.require(phi.src.dim() == 3 && cp.fibration, "lift instance is not a rank-3 fibration");
    auto l = construct_lift({j, phi, f, psi, std::nullopt});
    o.none(check_morphism(l), "lift");
    o.require(compose(l.src.par(), phi.f, l.f) == psi.f, "p l != g");
    o.require(compose(a.par(), l.f, j.f) == f.f, "l j != f");
    if (o.ok) o.detail = "path object, strictification, pullback and rank-3 lift verified";
    return o;
}

Outcome lp_layer() {
    Outcome o;
    auto L = leibniz_from_lp(identity_wlp(fx::sl2()));
    o.none(L.check(), "leibniz_from_lp(sl2, id)");
    auto X = fx::leibniz_xxy();
    auto q = lie_quotient(X);
    o.require(q.rebuilt == X, "G(F(L)) != L on x<>x = y");
    o.require(q.kernel.size() == 1 && q.lie->dim() == 1, "wrong Lie quotient of x<>x = y");
    auto ws = three_fixtures();
    for (size_t i = 0; i < ws.size(); ++i) {
        LeibnizEvaluator ev(ws[i]);
        auto r = htan_compatibility(ev);
        o.none(r.witness, kFixtureNames[i]);
    }
    if (o.ok) o.detail = "Leibniz rule, quotient round trip and tangent compatibility hold";
    return o;
}

Outcome trees() {
    Outcome o;
    auto lab = [](std::vector<int> parent, std::vector<int> labels) { return LabeledTree{RootedTree{std::move(parent)}, std::move(labels)}; };
    auto t1a = lab({0, 3, 3, 4, 0}, {0, 1, 2, 3, 4}), t1b = lab({0, 3, 3, 4, 0}, {0, 2, 1, 3, 4});
    o.require(canonical_form(t1a) == canonical_form(t1b), "T1 labelings not equivalent");
    auto t2a = lab({0, 2, 4, 4, 0}, {0, 1, 2, 3, 4}), t2b = lab({0, 2, 4, 4, 0}, {0, 1, 3, 2, 4});
    o.require(canonical_form(t2a) != canonical_form(t2b), "T2 labelings equivalent");
    std::vector<int> expect{1, 1, 2, 6, 24};
    for (int n = 1; n <= 5; ++n) {
        int c = static_cast<int>(enumerate_mlrt(n).size());
        o.require(c == expect[n - 1], "class count at n = " + std::to_string(n));
        o.require(count_classes_by_automorphisms(n) == c, "automorphism oracle disagrees at n = " + std::to_string(n));
    }
    auto w = fx::stress_wlp();
    TreeEvaluator ev(w);
    int classes = 0;
    for (int n = 1; n <= 4; ++n)
        for (auto args : std::vector<std::vector<int>>{{6, 7, 8, 3}, {8, 6, 4, 0}, {7, 3, 6, 5}, {0, 4, 8, 2}}) {
            args.resize(n);
            for (auto& r : theta_by_raw_labelings(ev, args)) {
                CE scaled = r.class_value;
                scaled *= r.raw_count;
                o.require(r.raw_sum == scaled, "Theta not constant on class " + r.form);
                ++classes;
            }
        }
    if (o.ok) o.detail = "T1 equivalent, T2 distinct; counts 1,1,2,6,24; Theta class-invariant on " + std::to_string(classes) + " class checks";
    return o;
}

Outcome pullback_along_inclusion() {
    Outcome o;
    auto f = fx::pullback_fixture();
    o.none(check_wlp(f.big), "big weak LP");
    o.none(check_wlp(f.small), "small weak LP");
    LeibnizEvaluator ev(f.small), ev2(f.big);
    auto pb = pullback_structure(f.base, ev2, ev, f.phi, 3);
    o.none(pb.witness, "strict morphism identity");
    o.require(pb.checked == 3 + 9 + 27, "not every tuple of arity <= 3 was checked");
    if (o.ok) o.detail = "strict-morphism identity on " + std::to_string(pb.checked) + " tuples of arity <= 3";
    return o;
}

std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = std::string(LPINF_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

Outcome format() {
    Outcome o;
    fs::path dir(LPINF_FIXTURE_DIR);
    int files = 0, corrupt = 0;
    for (auto sub : {dir, dir / "violations"})
        for (auto& e : fs::directory_iterator(sub)) {
            if (e.path().extension() != ".yaml") continue;
            std::ifstream in(e.path());
            std::stringstream ss;
            ss << in.rdbuf();
            SpecDocument doc = parse_document(ss.str());
            o.require(serialize_document(doc) == ss.str(), "serialize(parse) differs on " + e.path().string());
            o.require(parse_document(serialize_document(doc)) == doc, "parse(serialize) differs on " + e.path().string());
            ++files;
        }
    for (auto& [stem, doc] : fx::shipped_documents())
        o.require(load_document((dir / (stem + ".yaml")).string()) == doc, stem + " does not match the library fixture");
    for (auto& e : fs::directory_iterator(dir / "corrupt")) {
        auto [code, out] = run_cli("validate " + e.path().string());
        o.require(code == 2, e.path().string() + " exited with " + std::to_string(code));
        o.require(out.find("line ") != std::string::npos && out.find("column ") != std::string::npos,
                  e.path().string() + " error is not located");
        ++corrupt;
    }
    o.require(files >= 11 && corrupt >= 5, "too few fixtures");
    if (o.ok) o.detail = std::to_string(files) + " fixtures round-trip; " + std::to_string(corrupt) + " corrupted inputs exit 2 with a location";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only)->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);
    std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
        {"axioms", axioms},
        {"square-zero", square_zero},
        {"three-way lambda agreement", agreement},
        {"Leibniz-infinity identities", identities},
        {"homotopy certificates", homotopies},
        {"model-structure instances", model_structure},
        {"Loday-Pirashvili layer", lp_layer},
        {"trees", trees},
        {"pullback structure", pullback_along_inclusion},
        {"format round-trip", format},
    };
    int failed = 0;
    for (int i = 1; i <= 10; ++i) {
        if (only && i != only) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i - 1].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d %s: %s (%s, %.2fs)\n", i, all[i - 1].first.c_str(), o.ok ? "PASS" : "FAIL", o.detail.c_str(), s);
        failed += !o.ok;
    }
    return failed ? 1 : 0;
}
