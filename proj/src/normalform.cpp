#include "equinorm/normalform.hpp"

#include <array>
#include <cmath>

namespace equinorm {

std::string to_string(CaseTag tag) {
    switch (tag) {
    case CaseTag::A: return "A";
    case CaseTag::B1: return "B1";
    case CaseTag::B2: return "B2";
    case CaseTag::B3: return "B3";
    case CaseTag::C1: return "C1";
    case CaseTag::C2: return "C2";
    case CaseTag::C3: return "C3";
    case CaseTag::ZERO_LINEAR: return "ZERO_LINEAR";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::CONVERGENT: return "CONVERGENT";
    case Verdict::SMOOTH_CONJUGACY: return "SMOOTH_CONJUGACY";
    case Verdict::FORMAL_ONLY: return "FORMAL_ONLY";
    case Verdict::EXPECT_DIVERGENT: return "EXPECT_DIVERGENT";
    }
    return "?";
}

std::vector<std::pair<double, double>> SpectrumInfo::eigenvalues() const {
    std::vector<std::pair<double, double>> eigs;
    const double re = rat_to_double(beta0);
    if (omega_sq == 0) {
        eigs.assign(static_cast<std::size_t>(dim), {re, 0.0});
    } else {
        const double om = std::sqrt(rat_to_double(omega_sq));
        for (int i = 0; i < dim / 2; ++i)
            eigs.emplace_back(re, om);
        for (int i = 0; i < dim / 2; ++i)
            eigs.emplace_back(re, -om);
    }
    return eigs;
}

std::pair<CaseTag, SpectrumInfo> classify_case(const QuasilinearField& q) {
    const CentralizerBasis& basis = q.basis();
    SpectrumInfo spec;
    spec.dim = basis.dim;
    spec.beta0 = q.coeff(0, 0);
    spec.omega_sq = 0;
    for (int p = 1; p <= basis.s(); ++p) {
        const Rat b = q.coeff(p, 0);
        spec.omega_sq += b * b;
    }

    const bool b0 = spec.beta0 != 0;
    const bool om = spec.omega_sq != 0;
    CaseTag tag = CaseTag::ZERO_LINEAR;
    switch (basis.schur_type) {
    case SchurType::REAL:
        tag = b0 ? CaseTag::A : CaseTag::ZERO_LINEAR;
        break;
    case SchurType::COMPLEX:
        if (b0)
            tag = om ? CaseTag::B2 : CaseTag::B1;
        else
            tag = om ? CaseTag::B3 : CaseTag::ZERO_LINEAR;
        break;
    case SchurType::QUATERNIONIC:
        if (b0)
            tag = om ? CaseTag::C2 : CaseTag::C1;
        else
            tag = om ? CaseTag::C3 : CaseTag::ZERO_LINEAR;
        break;
    }
    return {tag, spec};
}

std::vector<ResonanceWitness> resonance_check(const SpectrumInfo& spec, int max_order) {
    if (max_order < 2)
        throw EquinormError("resonance check needs max_order >= 2");
    std::vector<ResonanceWitness> out;

    // sum m_i lambda_i = lambda_j with lambda in {beta0 +- i omega} reduces
    // to (m-1) beta0 = 0 and (m_plus - m_minus -+ 1) omega = 0.
    if (spec.beta0 != 0)
        return out; // (m-1) beta0 != 0 for every m >= 2

    const int n = spec.dim;
    if (spec.omega_sq == 0) {
        // Fully degenerate zero spectrum: every vector resonates; report one
        // canonical witness per order.
        for (int m = 2; m <= max_order + 1; ++m) {
            ResonanceWitness w;
            w.exponents.assign(static_cast<std::size_t>(n), 0);
            w.exponents[0] = m;
            w.target_index = 0;
            out.push_back(std::move(w));
        }
        return out;
    }

    // Conjugate classes: indices [0, n/2) carry +i omega, [n/2, n) -i omega.
    for (int m = 3; m <= max_order + 1; m += 2) {
        const int plus = (m + 1) / 2;
        const int minus = m - plus;
        ResonanceWitness up;
        up.exponents.assign(static_cast<std::size_t>(n), 0);
        up.exponents[0] = plus;
        up.exponents[static_cast<std::size_t>(n) / 2] = minus;
        up.target_index = 0;
        out.push_back(up);

        ResonanceWitness down;
        down.exponents.assign(static_cast<std::size_t>(n), 0);
        down.exponents[0] = minus;
        down.exponents[static_cast<std::size_t>(n) / 2] = plus;
        down.target_index = n / 2;
        out.push_back(down);
    }
    return out;
}

namespace {

QuasilinearField unit_element(const std::shared_ptr<const CentralizerBasis>& basis, int p, int k) {
    QuasilinearField u(basis);
    u.set_coeff(p, k, Rat(1));
    return u;
}

std::vector<Rat> grade_slot(const QuasilinearField& f, int k) {
    std::vector<Rat> v(static_cast<std::size_t>(f.basis().s()) + 1, Rat(0));
    for (int p = 0; p <= f.basis().s(); ++p)
        v[static_cast<std::size_t>(p)] = f.coeff(p, k);
    return v;
}

} // namespace

NormalFormResult normalize(const QuasilinearField& q, int order) {
    auto [tag, spec] = classify_case(q);
    if (tag == CaseTag::ZERO_LINEAR)
        throw WrongCaseError("zero linear part: Poincare-Dulac normalization does not apply");
    if (order < 1)
        throw EquinormError("truncation order must be >= 1");

    const auto& basis = q.basis_ptr();
    const int s = q.basis().s();

    QuasilinearField a_part(basis);
    for (int p = 0; p <= s; ++p)
        a_part.set_coeff(p, 0, q.coeff(p, 0));

    NormalFormResult result;
    result.case_tag = tag;
    result.spectrum = spec;
    result.order = order;

    QuasilinearField f = q.truncated(order);
    for (int k = 1; k <= order; ++k) {
        // ad(A) restricted to the grade-k slot space.
        RatMatrix ad(s + 1, s + 1);
        for (int col = 0; col <= s; ++col) {
            const QuasilinearField image = bracket_qf(a_part, unit_element(basis, col, k));
            const std::vector<Rat> v = grade_slot(image, k);
            for (int row = 0; row <= s; ++row)
                ad.at(row, col) = v[static_cast<std::size_t>(row)];
        }

        const std::vector<Rat> rhs = grade_slot(f, k);
        bool rhs_zero = true;
        for (const Rat& c : rhs)
            if (c != 0)
                rhs_zero = false;
        if (rhs_zero)
            continue;

        // Split rhs into range + kernel of ad(A); the kernel part stays.
        const std::vector<std::vector<Rat>> ker = nullspace(ad);
        RatMatrix sys(s + 1, s + 1 + static_cast<int>(ker.size()));
        for (int r = 0; r <= s; ++r) {
            for (int c = 0; c <= s; ++c)
                sys.at(r, c) = ad.at(r, c);
            for (std::size_t kc = 0; kc < ker.size(); ++kc)
                sys.at(r, s + 1 + static_cast<int>(kc)) = ker[kc][static_cast<std::size_t>(r)];
        }
        const auto sol = solve(sys, rhs);
        if (!sol)
            throw EquinormError("homological equation unexpectedly inconsistent");

        QuasilinearField h(basis);
        for (int p = 0; p <= s; ++p)
            h.set_coeff(p, k, (*sol)[static_cast<std::size_t>(p)]);
        if (h.is_zero())
            continue;
        f = exp_ad_qf(h, f, order);
        result.generators.emplace_back(k, std::move(h));
    }

    result.nf = f;
    result.diagnostics = convergence_diagnostics(result);
    return result;
}

ConvergenceVerdict convergence_diagnostics(const NormalFormResult& result) {
    ConvergenceVerdict v;
    const bool b0 = result.spectrum.beta0 != 0;
    v.poincare_domain = b0;
    v.hyperbolic = b0;

    // Condition A: nf = (1 + alpha(r^2)) A x, i.e. every nonlinear slot
    // vector is proportional to the linear coefficient vector.
    const std::vector<Rat> beta = result.nf.linear_coeffs();
    int lead = -1;
    for (std::size_t p = 0; p < beta.size(); ++p)
        if (beta[p] != 0) {
            lead = static_cast<int>(p);
            break;
        }
    bool cond_a = lead >= 0;
    if (cond_a) {
        for (int k = 1; k <= result.nf.max_order() && cond_a; ++k) {
            const Rat scale = result.nf.coeff(lead, k) / beta[static_cast<std::size_t>(lead)];
            for (std::size_t p = 0; p < beta.size(); ++p)
                if (result.nf.coeff(static_cast<int>(p), k) != scale * beta[p])
                    cond_a = false;
        }
    }
    v.condition_a = cond_a;

    if (v.poincare_domain) {
        v.verdict = Verdict::CONVERGENT;
    } else if (v.condition_a) {
        v.verdict = Verdict::CONVERGENT;
        v.arithmetic_assumption = true;
    } else if (result.case_tag == CaseTag::C3) {
        v.verdict = Verdict::EXPECT_DIVERGENT;
    } else {
        v.verdict = Verdict::FORMAL_ONLY;
    }
    return v;
}

namespace {

/// Right-multiplication by the quaternion h in the algebra generated by the
/// commutant units, anchored at the base vector e_1. Commutes with every
/// K_p by construction.
RatMatrix right_mult_matrix(const CentralizerBasis& basis, const std::array<Rat, 4>& h) {
    const int n = 4;
    RatMatrix b(n, n);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < n; ++i)
            b.at(i, j) = basis.K[static_cast<std::size_t>(j)].at(i, 0);

    // Quaternion coordinates of the standard basis vectors.
    RatMatrix binv(n, n);
    {
        RatMatrix aug(n, 2 * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                aug.at(i, j) = b.at(i, j);
            aug.at(i, n + i) = 1;
        }
        if (static_cast<int>(rref(aug).size()) != n)
            throw EquinormError("quaternion base-point matrix is singular");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                binv.at(i, j) = aug.at(i, n + j);
    }

    auto qmul = [](const std::array<Rat, 4>& a, const std::array<Rat, 4>& c) {
        return std::array<Rat, 4>{
            a[0] * c[0] - a[1] * c[1] - a[2] * c[2] - a[3] * c[3],
            a[0] * c[1] + a[1] * c[0] + a[2] * c[3] - a[3] * c[2],
            a[0] * c[2] + a[2] * c[0] + a[3] * c[1] - a[1] * c[3],
            a[0] * c[3] + a[3] * c[0] + a[1] * c[2] - a[2] * c[1],
        };
    };

    RatMatrix rm(n, n);
    for (int j = 0; j < n; ++j) {
        const std::array<Rat, 4> qj{binv.at(0, j), binv.at(1, j), binv.at(2, j), binv.at(3, j)};
        const std::array<Rat, 4> prod = qmul(qj, h);
        for (int i = 0; i < n; ++i) {
            Rat v(0);
            for (int c = 0; c < 4; ++c)
                v += b.at(i, c) * prod[static_cast<std::size_t>(c)];
            rm.at(i, j) = v;
        }
    }
    return rm;
}

RatMatrix left_mult_matrix(const CentralizerBasis& basis, const std::array<Rat, 4>& g) {
    RatMatrix m(basis.dim, basis.dim);
    for (int c = 0; c < 4; ++c)
        m = m + basis.K[static_cast<std::size_t>(c)].scaled(g[static_cast<std::size_t>(c)]);
    return m;
}

/// Expands M over the commutant basis; throws if it is outside the span.
std::vector<Rat> k_span_coords(const CentralizerBasis& basis, const RatMatrix& m) {
    const int n = basis.dim;
    RatMatrix sys(n * n, basis.s() + 1);
    for (int p = 0; p <= basis.s(); ++p)
        for (int i = 0; i < n * n; ++i)
            sys.at(i, p) = basis.K[static_cast<std::size_t>(p)].flat()[static_cast<std::size_t>(i)];
    const auto sol = solve(sys, m.flat());
    if (!sol)
        throw EquinormError("rotated commutant unit left the commutant span");
    return *sol;
}

} // namespace

RotationResult rotate_to_standard(const QuasilinearField& q) {
    const CentralizerBasis& basis = q.basis();
    if (basis.schur_type != SchurType::QUATERNIONIC)
        throw TypeMismatchError("rotation to standard form requires a quaternionic basis");

    RotationResult out;
    const Rat b1 = q.coeff(1, 0);
    const Rat b2 = q.coeff(2, 0);
    const Rat b3 = q.coeff(3, 0);
    const Rat omega_sq = b1 * b1 + b2 * b2 + b3 * b3;

    if (omega_sq == 0 || (b2 == 0 && b3 == 0 && b1 >= 0)) {
        out.field = q;
        out.rotation = RatMatrix::identity(basis.dim);
        return out;
    }

    const std::optional<Rat> omega = rat_exact_sqrt(omega_sq);
    if (omega) {
        // Half-angle quaternion sending the imaginary direction of the
        // linear part to the first unit; conjugation keeps entries rational.
        std::array<Rat, 4> g{*omega + b1, Rat(0), b3, -b2};
        if (g[0] == 0 && g[2] == 0 && g[3] == 0)
            g = {Rat(0), Rat(0), Rat(1), Rat(0)}; // half-turn for the antipodal case
        const Rat norm_sq = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
        const std::array<Rat, 4> gbar{g[0], -g[1], -g[2], -g[3]};

        RatMatrix rot = left_mult_matrix(basis, g) * right_mult_matrix(basis, gbar);
        rot = rot.scaled(Rat(1) / norm_sq);
        if (rot * rot.transposed() != RatMatrix::identity(basis.dim))
            throw EquinormError("exact rotation is not orthogonal");

        // How the commutant units transform; channel 0 is fixed.
        std::vector<std::vector<Rat>> unit_map(4);
        for (int p = 0; p <= 3; ++p)
            unit_map[static_cast<std::size_t>(p)] =
                k_span_coords(basis, rot * basis.K[static_cast<std::size_t>(p)] * rot.transposed());

        QuasilinearField rotated(q.basis_ptr());
        for (const auto& [key, c] : q.coeffs())
            for (int dest = 0; dest <= 3; ++dest)
                rotated.add_coeff(dest, key.second,
                                  c * unit_map[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(dest)]);

        if (rotated.coeff(1, 0) != *omega || rotated.coeff(2, 0) != 0 || rotated.coeff(3, 0) != 0)
            throw EquinormError("exact rotation failed to align the linear part");

        out.field = std::move(rotated);
        out.rotation = std::move(rot);
        return out;
    }

    // Approximate mode: same construction in doubles.
    out.approximate = true;
    const int n = basis.dim;
    const double b1d = rat_to_double(b1), b2d = rat_to_double(b2), b3d = rat_to_double(b3);
    const double om = std::sqrt(rat_to_double(omega_sq));
    std::array<double, 4> g{om + b1d, 0.0, b3d, -b2d};
    double gn = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
    if (gn < 1e-30) {
        g = {0.0, 0.0, 1.0, 0.0};
        gn = 1.0;
    }

    auto kd = [&](int p, int i, int j) { return rat_to_double(basis.K[static_cast<std::size_t>(p)].at(i, j)); };
    std::vector<double> lg(static_cast<std::size_t>(n) * n, 0.0);
    for (int p = 0; p < 4; ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                lg[static_cast<std::size_t>(i) * n + j] += g[static_cast<std::size_t>(p)] * kd(p, i, j);

    // Rational right-multiplication by each unit, then assemble R(gbar).
    std::array<RatMatrix, 4> rm_units;
    for (int c = 0; c < 4; ++c) {
        std::array<Rat, 4> e{Rat(0), Rat(0), Rat(0), Rat(0)};
        e[static_cast<std::size_t>(c)] = 1;
        rm_units[static_cast<std::size_t>(c)] = right_mult_matrix(basis, e);
    }
    const std::array<double, 4> gbar{g[0], -g[1], -g[2], -g[3]};
    std::vector<double> rg(static_cast<std::size_t>(n) * n, 0.0);
    for (int c = 0; c < 4; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rg[static_cast<std::size_t>(i) * n + j] +=
                    gbar[static_cast<std::size_t>(c)] * rat_to_double(rm_units[static_cast<std::size_t>(c)].at(i, j));

    std::vector<double> rot(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                rot[static_cast<std::size_t>(i) * n + j] +=
                    lg[static_cast<std::size_t>(i) * n + k] * rg[static_cast<std::size_t>(k) * n + j] / gn;

    // Transform the units numerically and project onto the commutant basis
    // with the trace form (the K_p are orthonormal for it).
    std::vector<std::vector<double>> unit_map(4, std::vector<double>(4, 0.0));
    for (int p = 0; p < 4; ++p) {
        std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int j = 0; j < n; ++j)
                        m[static_cast<std::size_t>(i) * n + j] +=
                            rot[static_cast<std::size_t>(i) * n + a] * kd(p, a, b) *
                            rot[static_cast<std::size_t>(j) * n + b];
        for (int dest = 0; dest < 4; ++dest) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    dot += kd(dest, i, j) * m[static_cast<std::size_t>(i) * n + j];
            unit_map[static_cast<std::size_t>(p)][static_cast<std::size_t>(dest)] = dot / n;
        }
    }

    for (const auto& [key, c] : q.coeffs())
        for (int dest = 0; dest < 4; ++dest) {
            const double v = rat_to_double(c) * unit_map[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(dest)];
            if (std::abs(v) > 1e-300)
                out.field_approx[{dest, key.second}] += v;
        }

    // Residual of the rotated linear part against beta0 I + omega K_1.
    double res = 0.0;
    {
        std::vector<double> lin(static_cast<std::size_t>(n) * n, 0.0);
        for (int p = 0; p < 4; ++p) {
            const double bp = rat_to_double(q.coeff(p, 0));
            for (int dest = 0; dest < 4; ++dest)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        lin[static_cast<std::size_t>(i) * n + j] +=
                            bp * unit_map[static_cast<std::size_t>(p)][static_cast<std::size_t>(dest)] * kd(dest, i, j);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double expect = rat_to_double(q.coeff(0, 0)) * (i == j ? 1.0 : 0.0) + om * kd(1, i, j);
                res = std::max(res, std::abs(lin[static_cast<std::size_t>(i) * n + j] - expect));
            }
    }
    out.residual = res;
    out.rotation_approx = std::move(rot);
    return out;
}

} // namespace equinorm
