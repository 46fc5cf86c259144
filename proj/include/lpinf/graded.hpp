#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lpinf {

using Scalar = mpq_class;

// Typed failure. kind is a short tag such as "NotSurjective".
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& what) : std::runtime_error(k + ": " + what), kind(std::move(k)) {}
};

inline std::string to_string(const Scalar& s) { return s.get_str(); }

inline Scalar parse_scalar(const std::string& text) {
    auto slash = text.find('/');
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw Error("BadRational", "'" + text + "' is not of the form p or p/q");
    if (num[0] == '+') num = num.substr(1);
    mpz_class d(den);
    if (d == 0) throw Error("BadRational", "zero denominator in '" + text + "'");
    Scalar r(mpz_class(num), d);
    r.canonicalize();
    return r;
}

inline int parity(int d) { return ((d % 2) + 2) % 2; }
inline int sign_of(int exponent) { return parity(exponent) ? -1 : 1; }

struct BasisElement {
    std::string name;
    int degree = 0;
    bool operator==(const BasisElement&) const = default;
};

class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
        for (size_t i = 0; i < basis_.size(); ++i) {
            if (!index_.emplace(basis_[i].name, static_cast<int>(i)).second)
                throw Error("DuplicateName", "basis name '" + basis_[i].name + "' repeated");
        }
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    int degree(int i) const { return basis_[i].degree; }
    const std::string& name(int i) const { return basis_[i].name; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    bool has(const std::string& n) const { return index_.count(n) > 0; }
    int index(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) throw Error("UnknownName", "no basis element '" + n + "'");
        return it->second;
    }
    std::vector<int> slice(int deg) const {
        std::vector<int> out;
        for (int i = 0; i < dim(); ++i)
            if (basis_[i].degree == deg) out.push_back(i);
        return out;
    }
    std::set<int> degrees() const {
        std::set<int> out;
        for (auto& b : basis_) out.insert(b.degree);
        return out;
    }
    bool operator==(const GradedSpace& o) const { return basis_ == o.basis_; }

private:
    std::vector<BasisElement> basis_;
    std::unordered_map<std::string, int> index_;
};

using Vec = std::vector<Scalar>;
using Matrix = std::vector<std::vector<Scalar>>;

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(Matrix& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        Scalar inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Scalar f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int matrix_rank(Matrix a) { return static_cast<int>(rref(a).size()); }

// Kernel basis of a (rows x cols) matrix, one vector per free column.
inline std::vector<Vec> kernel_basis(Matrix a, int cols) {
    auto piv = rref(a);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<Vec> out;
    for (int free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        Vec v(cols, 0);
        v[free] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

// Solves a x = b; returns the solution with free variables set to 0.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b, int cols) {
    int rows = static_cast<int>(b.size());
    Matrix aug(rows, std::vector<Scalar>(cols + 1, 0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    Vec x(cols, 0);
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
    return x;
}

class LinearMap {
public:
    LinearMap() = default;
    LinearMap(GradedSpace dom, GradedSpace cod, int shift) : dom_(std::move(dom)), cod_(std::move(cod)), shift_(shift) {}

    static LinearMap identity(const GradedSpace& v) {
        LinearMap f(v, v, 0);
        for (int i = 0; i < v.dim(); ++i) f.set(i, i, 1);
        return f;
    }

    const GradedSpace& domain() const { return dom_; }
    const GradedSpace& codomain() const { return cod_; }
    int shift() const { return shift_; }
    const std::map<std::pair<int, int>, Scalar>& entries() const { return entries_; }

    void set(int src, int dst, const Scalar& c) {
        if (cod_.degree(dst) != dom_.degree(src) + shift_)
            throw Error("DegreeMismatch", dom_.name(src) + " -> " + cod_.name(dst));
        if (c == 0) entries_.erase({src, dst});
        else entries_[{src, dst}] = c;
    }
    void add(int src, int dst, const Scalar& c) {
        Scalar v = get(src, dst) + c;
        set(src, dst, v);
    }
    Scalar get(int src, int dst) const {
        auto it = entries_.find({src, dst});
        return it == entries_.end() ? Scalar(0) : it->second;
    }
    Vec column(int src) const {
        Vec v(cod_.dim(), 0);
        for (auto it = entries_.lower_bound({src, 0}); it != entries_.end() && it->first.first == src; ++it)
            v[it->first.second] = it->second;
        return v;
    }
    Vec apply(const Vec& x) const {
        Vec y(cod_.dim(), 0);
        for (auto& [k, c] : entries_) y[k.second] += c * x[k.first];
        return y;
    }
    // Rows: codomain slice of degree deg+shift; columns: domain slice of degree deg.
    Matrix slice_matrix(int deg) const {
        auto ds = dom_.slice(deg), cs = cod_.slice(deg + shift_);
        Matrix m(cs.size(), std::vector<Scalar>(ds.size(), 0));
        std::unordered_map<int, int> row;
        for (size_t i = 0; i < cs.size(); ++i) row[cs[i]] = static_cast<int>(i);
        for (size_t j = 0; j < ds.size(); ++j)
            for (auto it = entries_.lower_bound({ds[j], 0}); it != entries_.end() && it->first.first == ds[j]; ++it)
                m[row[it->first.second]][j] = it->second;
        return m;
    }
    bool operator==(const LinearMap& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && shift_ == o.shift_ && entries_ == o.entries_;
    }

private:
    GradedSpace dom_, cod_;
    int shift_ = 0;
    std::map<std::pair<int, int>, Scalar> entries_;
};

// f after g.
inline LinearMap compose(const LinearMap& f, const LinearMap& g) {
    if (!(g.codomain() == f.domain())) throw Error("DomainMismatch", "compose: codomain(g) != domain(f)");
    LinearMap h(g.domain(), f.codomain(), f.shift() + g.shift());
    std::map<std::pair<int, int>, Scalar> acc;
    for (auto& [kg, cg] : g.entries())
        for (auto it = f.entries().lower_bound({kg.second, 0}); it != f.entries().end() && it->first.first == kg.second; ++it)
            acc[{kg.first, it->first.second}] += cg * it->second;
    for (auto& [k, c] : acc)
        if (c != 0) h.set(k.first, k.second, c);
    return h;
}

struct RankKernelImage {
    int rank = 0;
    std::vector<Vec> kernel;  // vectors over the full domain
    std::vector<Vec> image;   // vectors over the full codomain
};

inline RankKernelImage rank_kernel_image(const LinearMap& f, int deg) {
    auto ds = f.domain().slice(deg), cs = f.codomain().slice(deg + f.shift());
    RankKernelImage out;
    Matrix m = f.slice_matrix(deg);
    if (cs.empty()) {
        for (int j : ds) {
            Vec v(f.domain().dim(), 0);
            v[j] = 1;
            out.kernel.push_back(v);
        }
        return out;
    }
    Matrix r = m;
    auto piv = rref(r);
    out.rank = static_cast<int>(piv.size());
    for (auto& k : kernel_basis(m, static_cast<int>(ds.size()))) {
        Vec v(f.domain().dim(), 0);
        for (size_t j = 0; j < ds.size(); ++j) v[ds[j]] = k[j];
        out.kernel.push_back(std::move(v));
    }
    for (int c : piv) out.image.push_back(f.column(ds[c]));
    return out;
}

inline bool is_surjective(const LinearMap& f) {
    for (int d : f.codomain().degrees())
        if (rank_kernel_image(f, d - f.shift()).rank != static_cast<int>(f.codomain().slice(d).size())) return false;
    return true;
}

inline bool is_injective(const LinearMap& f) {
    for (int d : f.domain().degrees())
        if (!rank_kernel_image(f, d).kernel.empty()) return false;
    return true;
}

// Section g with f g = id. Each target is sent into the span of the pivot columns of f.
inline LinearMap right_inverse(const LinearMap& f) {
    LinearMap g(f.codomain(), f.domain(), -f.shift());
    for (int d : f.codomain().degrees()) {
        auto cs = f.codomain().slice(d), ds = f.domain().slice(d - f.shift());
        Matrix m = f.slice_matrix(d - f.shift());
        Matrix r = m;
        auto piv = rref(r);
        if (piv.size() != cs.size())
            throw Error("NotSurjective", "rank deficiency in degree " + std::to_string(d));
        Matrix sq(cs.size(), std::vector<Scalar>(cs.size(), 0));
        for (size_t i = 0; i < cs.size(); ++i)
            for (size_t j = 0; j < piv.size(); ++j) sq[i][j] = m[i][piv[j]];
        for (size_t t = 0; t < cs.size(); ++t) {
            Vec e(cs.size(), 0);
            e[t] = 1;
            auto x = solve(sq, e, static_cast<int>(cs.size()));
            for (size_t j = 0; j < piv.size(); ++j)
                if ((*x)[j] != 0) g.set(cs[t], ds[piv[j]], (*x)[j]);
        }
    }
    return g;
}

inline LinearMap transpose(const LinearMap& f) {
    LinearMap t(f.codomain(), f.domain(), -f.shift());
    for (auto& [k, c] : f.entries()) t.set(k.second, k.first, c);
    return t;
}

// Retraction r with r f = id, obtained from the section of the transpose.
inline LinearMap left_inverse(const LinearMap& f) {
    try {
        return transpose(right_inverse(transpose(f)));
    } catch (const Error& e) {
        throw Error("NotInjective", e.what());
    }
}

struct Cohomology {
    int degree = 0;
    int dimension = 0;
    std::vector<Vec> representatives;  // cocycles over the full space
    std::vector<Vec> boundaries;       // basis of the image of d_in

    // Coordinates of the class of cocycle z in the representative basis.
    Vec coordinates(const Vec& z) const {
        int n = static_cast<int>(z.size());
        int cols = static_cast<int>(boundaries.size() + representatives.size());
        Matrix a(n, std::vector<Scalar>(cols, 0));
        for (int i = 0; i < n; ++i) {
            int c = 0;
            for (auto& b : boundaries) a[i][c++] = b[i];
            for (auto& r : representatives) a[i][c++] = r[i];
        }
        auto x = solve(a, z, cols);
        if (!x) throw Error("NotACocycle", "vector is not a cocycle");
        return Vec(x->begin() + static_cast<long>(boundaries.size()), x->end());
    }
};

inline Cohomology cohomology(const LinearMap& d_in, const LinearMap& d_out, int deg) {
    if (!(d_in.codomain() == d_out.domain())) throw Error("DomainMismatch", "cohomology: spaces differ");
    auto comp = compose(d_out, d_in);
    for (auto& [k, c] : comp.entries())
        if (d_in.domain().degree(k.first) + d_in.shift() == deg)
            throw Error("NotAComplex", "d_out d_in nonzero on " + d_in.domain().name(k.first));
    Cohomology h;
    h.degree = deg;
    auto ker = rank_kernel_image(d_out, deg).kernel;
    auto im = rank_kernel_image(d_in, deg - d_in.shift()).image;
    h.boundaries = im;
    int n = d_out.domain().dim();
    std::vector<Vec> cols = im;
    cols.insert(cols.end(), ker.begin(), ker.end());
    Matrix a(n, std::vector<Scalar>(cols.size(), 0));
    for (int i = 0; i < n; ++i)
        for (size_t j = 0; j < cols.size(); ++j) a[i][j] = cols[j][i];
    for (int c : rref(a))
        if (c >= static_cast<int>(im.size())) h.representatives.push_back(cols[c]);
    h.dimension = static_cast<int>(h.representatives.size());
    return h;
}

// Sign κ with m_1...m_n = κ m_{σ(1)}...m_{σ(n)}; perm is 0-based, perm[i] = σ(i+1)-1.
inline int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees, bool anti = false) {
    int s = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) {
                if (parity(degrees[perm[i]]) && parity(degrees[perm[j]])) s = -s;
                if (anti) s = -s;
            }
    return s;
}

}  // namespace lpinf
