#include "equinorm/polyvf.hpp"

#include <algorithm>
#include <cmath>

namespace equinorm {

namespace {

using ScalarPoly = std::map<Monomial, Rat>;

void scalar_add(ScalarPoly& p, const Monomial& m, const Rat& c) {
    if (c == 0)
        return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0)
            p.erase(it);
    }
}

ScalarPoly scalar_mul(const ScalarPoly& a, const ScalarPoly& b, int max_degree) {
    ScalarPoly out;
    for (const auto& [ma, ca] : a) {
        const int da = ma.degree();
        for (const auto& [mb, cb] : b) {
            if (da + mb.degree() > max_degree)
                continue;
            Monomial m = ma;
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                m.exps[i] += mb.exps[i];
            scalar_add(out, m, ca * cb);
        }
    }
    return out;
}

} // namespace

int Monomial::degree() const {
    int d = 0;
    for (int e : exps)
        d += e;
    return d;
}

PolyVectorField::PolyVectorField(int dim) : dim_(dim) {
    if (dim <= 0)
        throw DimensionError("vector field dimension must be positive");
}

void PolyVectorField::add_term(int comp, Monomial mono, const Rat& c) {
    if (comp < 0 || comp >= dim_)
        throw DimensionError("component index out of range");
    if (static_cast<int>(mono.exps.size()) != dim_)
        throw DimensionError("monomial length does not match field dimension");
    if (c == 0)
        return;
    TermKey key{comp, std::move(mono)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rat PolyVectorField::coeff(int comp, const Monomial& mono) const {
    auto it = terms_.find(TermKey{comp, mono});
    return it == terms_.end() ? Rat(0) : it->second;
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& other) {
    if (dim_ == 0)
        dim_ = other.dim_;
    if (other.dim_ != 0 && other.dim_ != dim_)
        throw DimensionError("cannot add fields of different dimension");
    for (const auto& [key, c] : other.terms_)
        add_term(key.comp, key.mono, c);
    return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& other) {
    if (dim_ == 0)
        dim_ = other.dim_;
    if (other.dim_ != 0 && other.dim_ != dim_)
        throw DimensionError("cannot subtract fields of different dimension");
    for (const auto& [key, c] : other.terms_)
        add_term(key.comp, key.mono, -c);
    return *this;
}

PolyVectorField PolyVectorField::scaled(const Rat& c) const {
    PolyVectorField out(dim_ == 0 ? 1 : dim_);
    out.dim_ = dim_;
    if (c == 0)
        return out;
    out.terms_ = terms_;
    for (auto& [key, v] : out.terms_)
        v *= c;
    return out;
}

PolyVectorField PolyVectorField::truncated_degree(int max_degree) const {
    PolyVectorField out(dim_ == 0 ? 1 : dim_);
    out.dim_ = dim_;
    for (const auto& [key, c] : terms_)
        if (key.mono.degree() <= max_degree)
            out.terms_.emplace(key, c);
    return out;
}

int PolyVectorField::min_degree() const {
    int d = 0;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        const int kd = key.mono.degree();
        if (first || kd < d)
            d = kd;
        first = false;
    }
    return first ? 0 : d;
}

int PolyVectorField::max_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_)
        d = std::max(d, key.mono.degree());
    return d;
}

PolyVectorField PolyVectorField::identity(int dim) {
    PolyVectorField f(dim);
    for (int i = 0; i < dim; ++i) {
        Monomial m{std::vector<int>(dim, 0)};
        m.exps[i] = 1;
        f.add_term(i, std::move(m), Rat(1));
    }
    return f;
}

PolyVectorField PolyVectorField::linear(int dim, const std::vector<Rat>& row_major) {
    if (static_cast<int>(row_major.size()) != dim * dim)
        throw DimensionError("linear field needs a dim*dim matrix");
    PolyVectorField f(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const Rat& c = row_major[static_cast<std::size_t>(i) * dim + j];
            if (c == 0)
                continue;
            Monomial m{std::vector<int>(dim, 0)};
            m.exps[j] = 1;
            f.add_term(i, std::move(m), c);
        }
    }
    return f;
}

PolyVectorField bracket(const PolyVectorField& f, const PolyVectorField& g) {
    if (f.dim() != g.dim())
        throw DimensionError("bracket of fields with different dimension");
    const int n = f.dim();
    PolyVectorField out(n);

    // f^k d_k g^i
    for (const auto& [fk, fc] : f.terms()) {
        for (const auto& [gk, gc] : g.terms()) {
            const int e = gk.mono.exps[fk.comp];
            if (e == 0)
                continue;
            Monomial m = fk.mono;
            for (int j = 0; j < n; ++j)
                m.exps[j] += gk.mono.exps[j];
            m.exps[fk.comp] -= 1;
            out.add_term(gk.comp, std::move(m), fc * gc * e);
        }
    }
    // - g^k d_k f^i
    for (const auto& [gk, gc] : g.terms()) {
        for (const auto& [fk, fc] : f.terms()) {
            const int e = fk.mono.exps[gk.comp];
            if (e == 0)
                continue;
            Monomial m = gk.mono;
            for (int j = 0; j < n; ++j)
                m.exps[j] += fk.mono.exps[j];
            m.exps[gk.comp] -= 1;
            out.add_term(fk.comp, std::move(m), -gc * fc * e);
        }
    }
    return out;
}

std::map<int, PolyVectorField> grade_decompose(const PolyVectorField& f) {
    std::map<int, PolyVectorField> out;
    for (const auto& [key, c] : f.terms()) {
        const int grade = key.mono.degree() - 1;
        auto it = out.find(grade);
        if (it == out.end())
            it = out.emplace(grade, PolyVectorField(f.dim())).first;
        it->second.add_term(key.comp, key.mono, c);
    }
    return out;
}

std::vector<double> evaluate(const PolyVectorField& f, std::span<const double> x) {
    if (static_cast<int>(x.size()) != f.dim())
        throw DimensionError("evaluation point has wrong length");
    std::vector<double> out(static_cast<std::size_t>(f.dim()), 0.0);
    for (const auto& [key, c] : f.terms()) {
        double v = rat_to_double(c);
        for (int j = 0; j < f.dim(); ++j)
            for (int e = 0; e < key.mono.exps[j]; ++e)
                v *= x[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(key.comp)] += v;
    }
    return out;
}

PolyVectorField substitute(const PolyVectorField& f, const PolyVectorField& map, int max_degree) {
    if (f.dim() != map.dim())
        throw DimensionError("substitution with map of different dimension");
    const int n = f.dim();

    std::vector<ScalarPoly> comp(static_cast<std::size_t>(n));
    for (const auto& [key, c] : map.terms())
        scalar_add(comp[static_cast<std::size_t>(key.comp)], key.mono, c);

    PolyVectorField out(n);
    for (const auto& [key, c] : f.terms()) {
        ScalarPoly prod;
        scalar_add(prod, Monomial{std::vector<int>(n, 0)}, Rat(1));
        for (int j = 0; j < n && !prod.empty(); ++j)
            for (int e = 0; e < key.mono.exps[j] && !prod.empty(); ++e)
                prod = scalar_mul(prod, comp[static_cast<std::size_t>(j)], max_degree);
        for (const auto& [m, pc] : prod)
            out.add_term(key.comp, m, c * pc);
    }
    return out;
}

PolyVectorField exp_ad_poly(const PolyVectorField& h, const PolyVectorField& f, int max_degree) {
    if (h.min_degree() < 2 && !h.is_zero())
        throw EquinormError("Lie-series generator must have no constant or linear part");
    PolyVectorField sum = f.truncated_degree(max_degree);
    PolyVectorField term = sum;
    Rat factor(1);
    for (int j = 1; !term.is_zero(); ++j) {
        term = bracket(h, term).truncated_degree(max_degree);
        factor /= j;
        sum += term.scaled(factor);
    }
    return sum;
}

PolyVectorField flow_map(const PolyVectorField& h, int max_degree) {
    if (h.min_degree() < 2 && !h.is_zero())
        throw EquinormError("flow map generator must have no constant or linear part");
    const int n = h.dim();
    PolyVectorField sum = PolyVectorField::identity(n);
    PolyVectorField term = sum;
    Rat factor(1);
    for (int j = 1; !term.is_zero(); ++j) {
        // One application of the derivation h^k d_k to each component.
        PolyVectorField next(n);
        for (const auto& [hk, hc] : h.terms()) {
            for (const auto& [tk, tc] : term.terms()) {
                const int e = tk.mono.exps[hk.comp];
                if (e == 0)
                    continue;
                Monomial m = hk.mono;
                for (int jj = 0; jj < n; ++jj)
                    m.exps[jj] += tk.mono.exps[jj];
                m.exps[hk.comp] -= 1;
                if (m.degree() > max_degree)
                    continue;
                next.add_term(tk.comp, std::move(m), hc * tc * e);
            }
        }
        term = std::move(next);
        factor /= j;
        sum += term.scaled(factor);
    }
    return sum;
}

} // namespace equinorm
