#include "equinorm/equivariant.hpp"

#include <algorithm>
#include <functional>

namespace equinorm {

Rat QuasilinearField::coeff(int p, int k) const {
    auto it = coeffs_.find({p, k});
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void QuasilinearField::add_coeff(int p, int k, const Rat& c) {
    if (!basis_)
        throw EquinormError("quasilinear field has no basis");
    if (p < 0 || p > basis_->s() || k < 0)
        throw DimensionError("quasilinear coefficient index out of range");
    if (c == 0)
        return;
    auto it = coeffs_.find({p, k});
    if (it == coeffs_.end()) {
        coeffs_.emplace(std::make_pair(p, k), c);
    } else {
        it->second += c;
        if (it->second == 0)
            coeffs_.erase(it);
    }
}

void QuasilinearField::set_coeff(int p, int k, const Rat& c) {
    coeffs_.erase({p, k});
    add_coeff(p, k, c);
}

int QuasilinearField::max_order() const {
    int best = -1;
    for (const auto& [key, c] : coeffs_)
        best = std::max(best, key.second);
    return best;
}

QuasilinearField QuasilinearField::truncated(int max_k) const {
    QuasilinearField out(basis_);
    for (const auto& [key, c] : coeffs_)
        if (key.second <= max_k)
            out.coeffs_.emplace(key, c);
    return out;
}

QuasilinearField QuasilinearField::scaled(const Rat& c) const {
    QuasilinearField out(basis_);
    if (c == 0)
        return out;
    out.coeffs_ = coeffs_;
    for (auto& [key, v] : out.coeffs_)
        v *= c;
    return out;
}

QuasilinearField& QuasilinearField::operator+=(const QuasilinearField& other) {
    if (!basis_)
        basis_ = other.basis_;
    for (const auto& [key, c] : other.coeffs_)
        add_coeff(key.first, key.second, c);
    return *this;
}

std::vector<Rat> QuasilinearField::linear_coeffs() const {
    std::vector<Rat> beta(static_cast<std::size_t>(basis_->s()) + 1, Rat(0));
    for (int p = 0; p <= basis_->s(); ++p)
        beta[static_cast<std::size_t>(p)] = coeff(p, 0);
    return beta;
}

namespace {

BigInt factorial(int n) {
    BigInt f(1);
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

/// Enumerates exponent vectors m >= 0 with sum k, invoking fn(m, k!/prod m_i!).
void for_each_multinomial(int n, int k, const std::function<void(const std::vector<int>&, const BigInt&)>& fn) {
    std::vector<int> m(static_cast<std::size_t>(n), 0);
    const BigInt kfact = factorial(k);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            m[static_cast<std::size_t>(pos)] = left;
            BigInt denom(1);
            for (int v : m)
                denom *= factorial(v);
            fn(m, kfact / denom);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            m[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, k);
}

} // namespace

PolyVectorField expand_element(const CentralizerBasis& basis, int p, int k) {
    if (p < 0 || p > basis.s())
        throw DimensionError("channel index out of range");
    if (k < 0)
        throw DimensionError("negative power of r^2");
    const int n = basis.dim;
    const RatMatrix& kp = basis.K[static_cast<std::size_t>(p)];
    PolyVectorField out(n);
    for_each_multinomial(n, k, [&](const std::vector<int>& m, const BigInt& mult) {
        const Rat c(mult);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (kp.at(i, j) == 0)
                    continue;
                Monomial mono{m};
                for (int& e : mono.exps)
                    e *= 2;
                mono.exps[j] += 1;
                out.add_term(i, std::move(mono), c * kp.at(i, j));
            }
    });
    return out;
}

PolyVectorField expand(const QuasilinearField& q) {
    PolyVectorField out(q.basis().dim);
    for (const auto& [key, c] : q.coeffs())
        out += expand_element(q.basis(), key.first, key.second).scaled(c);
    return out;
}

QuasilinearField decompose(const PolyVectorField& f, std::shared_ptr<const CentralizerBasis> basis) {
    if (f.dim() != basis->dim)
        throw DimensionError("field and basis dimensions differ");
    QuasilinearField q(basis);
    for (const auto& [grade, piece] : grade_decompose(f)) {
        if (grade % 2 != 0)
            throw NotQuasilinearError("odd-grade piece cannot be quasilinear", piece);
        const int k = grade / 2;
        std::vector<PolyVectorField> cols;
        for (int p = 0; p <= basis->s(); ++p)
            cols.push_back(expand_element(*basis, p, k));

        // Assemble the coefficient-matching system over the union support.
        std::map<TermKey, int> rows;
        for (const PolyVectorField& col : cols)
            for (const auto& [key, c] : col.terms())
                rows.emplace(key, 0);
        for (const auto& [key, c] : piece.terms())
            rows.emplace(key, 0);
        int idx = 0;
        for (auto& [key, r] : rows)
            r = idx++;

        RatMatrix sys(idx, basis->s() + 1);
        std::vector<Rat> rhs(static_cast<std::size_t>(idx), Rat(0));
        for (int p = 0; p <= basis->s(); ++p)
            for (const auto& [key, c] : cols[static_cast<std::size_t>(p)].terms())
                sys.at(rows[key], p) = c;
        for (const auto& [key, c] : piece.terms())
            rhs[static_cast<std::size_t>(rows[key])] = c;

        const auto sol = solve(sys, rhs);
        if (!sol) {
            // Best-effort fit over the basis support, so the residual shows
            // exactly what does not belong to the module.
            RatMatrix sub(idx, basis->s() + 1);
            std::vector<Rat> subrhs(static_cast<std::size_t>(idx), Rat(0));
            int nsub = 0;
            for (const auto& [key, r] : rows) {
                bool on_support = false;
                for (int p = 0; p <= basis->s(); ++p)
                    if (sys.at(r, p) != 0)
                        on_support = true;
                if (!on_support)
                    continue;
                for (int p = 0; p <= basis->s(); ++p)
                    sub.at(nsub, p) = sys.at(r, p);
                subrhs[static_cast<std::size_t>(nsub)] = rhs[static_cast<std::size_t>(r)];
                ++nsub;
            }
            RatMatrix sub2(nsub, basis->s() + 1);
            for (int r = 0; r < nsub; ++r)
                for (int p = 0; p <= basis->s(); ++p)
                    sub2.at(r, p) = sub.at(r, p);
            subrhs.resize(static_cast<std::size_t>(nsub));
            std::vector<Rat> fit(static_cast<std::size_t>(basis->s()) + 1, Rat(0));
            if (auto partial = solve(sub2, subrhs))
                fit = *partial;
            PolyVectorField residual = piece;
            for (int p = 0; p <= basis->s(); ++p)
                residual -= cols[static_cast<std::size_t>(p)].scaled(fit[static_cast<std::size_t>(p)]);
            throw NotQuasilinearError("grade " + std::to_string(grade) + " piece is not quasilinear",
                                      residual);
        }
        for (int p = 0; p <= basis->s(); ++p)
            q.add_coeff(p, k, (*sol)[static_cast<std::size_t>(p)]);
    }
    return q;
}

std::vector<std::pair<Rat, BasisElement>> structure_bracket(const BasisElement& e1,
                                                            const BasisElement& e2,
                                                            const CentralizerBasis& basis) {
    std::vector<std::pair<Rat, BasisElement>> out;
    const int k = e1.k;
    const int m = e2.k;
    auto push = [&out](Rat c, int p, int kk) {
        if (c != 0)
            out.emplace_back(std::move(c), BasisElement{p, kk});
    };
    if (e1.is_identity_channel() && e2.is_identity_channel()) {
        push(Rat(2 * (m - k)), 0, k + m);
    } else if (e1.is_identity_channel()) {
        push(Rat(2 * m), e2.p, k + m);
    } else if (e2.is_identity_channel()) {
        push(Rat(-2 * k), e1.p, k + m);
    } else {
        const auto& row = basis.phi_phi[static_cast<std::size_t>(e1.p) - 1][static_cast<std::size_t>(e2.p) - 1];
        for (int s = 0; s <= basis.s(); ++s)
            push(row[static_cast<std::size_t>(s)], s, k + m);
    }
    return out;
}

QuasilinearField bracket_qf(const QuasilinearField& a, const QuasilinearField& b) {
    QuasilinearField out(a.basis_ptr() ? a.basis_ptr() : b.basis_ptr());
    for (const auto& [ka, ca] : a.coeffs())
        for (const auto& [kb, cb] : b.coeffs())
            for (const auto& [c, elem] :
                 structure_bracket(BasisElement{ka.first, ka.second}, BasisElement{kb.first, kb.second},
                                   out.basis()))
                out.add_coeff(elem.p, elem.k, ca * cb * c);
    return out;
}

QuasilinearField exp_ad_qf(const QuasilinearField& h, const QuasilinearField& f, int max_k) {
    for (const auto& [key, c] : h.coeffs())
        if (key.second == 0)
            throw EquinormError("push-forward generator must have no linear part");
    QuasilinearField sum = f.truncated(max_k);
    QuasilinearField term = sum;
    Rat factor(1);
    for (int j = 1; !term.is_zero(); ++j) {
        term = bracket_qf(h, term).truncated(max_k);
        factor /= j;
        sum += term.scaled(factor);
    }
    return sum;
}

std::vector<std::map<int, Rat>> potentials(const QuasilinearField& q) {
    std::vector<std::map<int, Rat>> pots(static_cast<std::size_t>(q.basis().s()) + 1);
    for (const auto& [key, c] : q.coeffs()) {
        const int k = key.second;
        pots[static_cast<std::size_t>(key.first)][k + 1] = c / Rat(2 * k + 2);
    }
    return pots;
}

} // namespace equinorm
