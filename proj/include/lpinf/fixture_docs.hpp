#pragma once

#include "fixtures.hpp"
#include "io.hpp"

namespace lpinf::fixtures {

inline SpecDocument algebra_doc(const DGLAData& d) {
    SpecDocument doc;
    doc.algebra = d;
    return doc;
}

// Document for each shipped fixture file, keyed by file stem.
inline std::map<std::string, SpecDocument> shipped_documents() {
    std::map<std::string, SpecDocument> out;

    out["sl2"] = algebra_doc(sl2_data());
    out["sl2"].lp = LpChoice{"identity", ""};
    out["abelian"] = algebra_doc(abelian_data(2));
    out["a_to_b"] = algebra_doc(a_to_b_data());

    out["two_cocycle"] = algebra_doc(sl2_data());
    out["two_cocycle"].cocycles["alpha"] = CocycleDoc{2, sl2()->dce_gen(0)};

    out["rank2_cocycle"] = algebra_doc(rank2_data());
    out["rank2_cocycle"].cocycles["alpha"] = CocycleDoc{2, rank2_alpha()};

    {
        LiePair lp = lie_pair();
        SpecDocument d = algebra_doc(sl2_eps_data());
        PairDoc p;
        p.sub = lp.sub->space();
        p.quotient = lp.quotient;
        for (int x = 0; x < p.sub.dim(); ++x) p.sub_vectors.push_back(vec_to_sparse(lp.incl.column(x)));
        for (int b = 0; b < p.quotient.dim(); ++b) p.split.push_back(vec_to_sparse(lp.split.column(b)));
        LinearMap lam = lie_pair_lambda(lp);
        std::vector<Sparse> ch;
        for (int b = 0; b < p.quotient.dim(); ++b) ch.push_back(vec_to_sparse(lam.column(b)));
        p.change = ch;
        d.pairs["borel"] = p;
        out["lie_pair"] = d;
    }

    out["leibniz_xxy"].leibniz = leibniz_xxy();

    {
        auto g = sl2();
        SpecDocument d = algebra_doc(sl2_data());
        Morphism p = perturbed_fibration(g), c = coboundary_to_line(g);
        put_module(d, "X", p.src);
        put_module(d, "Y", p.tgt);
        put_morphism(d, "p", "X", "Y", p.f);
        put_morphism(d, "coboundary", kAdjoint, "Y", c.f);
        out["perturbed"] = d;
    }

    {
        WeakLP w = stress_wlp();
        SpecDocument d = algebra_doc(sl2_data());
        put_module(d, "M", w.module());
        put_morphism(d, "f", "M", kAdjoint, w.f.f);
        d.lp = LpChoice{"morphism", "f"};
        out["stress"] = d;
    }

    {
        auto g = rank2();
        HomotopyCertificate c = homotopy_cohomologous(g, rank2_alpha(), rank2_eta(), 2);
        SpecDocument d = algebra_doc(rank2_data());
        put_module(d, "M", c.f.src);
        put_morphism(d, "f", "M", kAdjoint, c.f.f);
        put_morphism(d, "f2", "M", kAdjoint, c.f2.f);
        d.homotopies["h"] = HomotopyDoc{"f", "f2", c.h};
        d.lp = LpChoice{"morphism", "f"};
        out["homotopy_cocycle"] = d;
    }

    {
        LiePair lp = lie_pair();
        HomotopyCertificate c = homotopy_splitting_change(lp, lie_pair_lambda(lp));
        SpecDocument d;
        d.algebra = lp.sub->data();
        put_module(d, "M", c.f.src);
        put_morphism(d, "f", "M", kAdjoint, c.f.f);
        put_morphism(d, "f2", "M", kAdjoint, c.f2.f);
        d.homotopies["h"] = HomotopyDoc{"f", "f2", c.h};
        d.lp = LpChoice{"morphism", "f"};
        out["homotopy_splitting"] = d;
    }
    return out;
}

}  // namespace lpinf::fixtures
