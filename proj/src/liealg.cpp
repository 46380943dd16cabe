#include "equinorm/liealg.hpp"

#include <algorithm>

namespace equinorm {

namespace {

RatMatrix matrix_from_ints(int n, std::initializer_list<int> vals) {
    RatMatrix m(n, n);
    auto it = vals.begin();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = *it++;
    return m;
}

std::vector<Rat> vectorize(const RatMatrix& m) {
    return m.flat();
}

RatMatrix matrixize(int n, const std::vector<Rat>& v) {
    RatMatrix m(n, n);
    m.flat() = v;
    return m;
}

/// Expresses m in the rational span of basis; nullopt when outside.
std::optional<std::vector<Rat>> in_span(const std::vector<RatMatrix>& basis, const RatMatrix& m) {
    const int n = m.rows();
    RatMatrix sys(n * n, static_cast<int>(basis.size()));
    for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
        const std::vector<Rat> v = vectorize(basis[static_cast<std::size_t>(col)]);
        for (int row = 0; row < n * n; ++row)
            sys.at(row, col) = v[static_cast<std::size_t>(row)];
    }
    return solve(sys, vectorize(m));
}

/// Trace inner product <A,B> = tr(A^T B) / n, which makes the normalized
/// K_p orthonormal.
Rat trace_form(const RatMatrix& a, const RatMatrix& b) {
    return (a.transposed() * b).trace() / Rat(a.rows());
}

} // namespace

void validate_rep(const MatrixRep& rep) {
    if (rep.dim <= 0)
        throw ValidationError("representation dimension must be positive");
    if (rep.generators.empty())
        throw ValidationError("representation needs at least one generator");
    for (const RatMatrix& h : rep.generators) {
        if (h.rows() != rep.dim || h.cols() != rep.dim)
            throw ValidationError("generator has wrong shape");
        if (!h.is_antisymmetric())
            throw ValidationError("generators must be antisymmetric");
        if (h.is_zero())
            throw ValidationError("zero generator");
    }
    for (const RatMatrix& a : rep.generators)
        for (const RatMatrix& b : rep.generators)
            if (!in_span(rep.generators, commutator(a, b)))
                throw ValidationError("generators do not close under the commutator");
}

bool is_builtin_rep_name(const std::string& name) {
    return name == "so2" || name == "so3" || name == "su2";
}

MatrixRep builtin_rep(const std::string& name) {
    MatrixRep rep;
    rep.name = name;
    if (name == "so2") {
        rep.dim = 2;
        rep.generators = {matrix_from_ints(2, {0, -1, 1, 0})};
    } else if (name == "so3") {
        // (H_a)_{ij} = -eps_{aij}, so [H_1, H_2] = H_3.
        rep.dim = 3;
        for (int a = 1; a <= 3; ++a) {
            RatMatrix h(3, 3);
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j)
                    h.at(i - 1, j - 1) = -levi_civita(a, i, j);
            rep.generators.push_back(std::move(h));
        }
    } else if (name == "su2") {
        rep.dim = 4;
        rep.generators = {
            matrix_from_ints(4, {0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0}),
            matrix_from_ints(4, {0, 0, 0, -1, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, 0}),
            matrix_from_ints(4, {0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0}),
        };
    } else {
        throw UnknownRepError("unknown representation name: " + name);
    }
    return rep;
}

PolyVectorField linear_field(const RatMatrix& m) {
    if (!m.is_square())
        throw DimensionError("linear field needs a square matrix");
    return PolyVectorField::linear(m.rows(), m.flat());
}

std::string to_string(SchurType t) {
    switch (t) {
    case SchurType::REAL: return "REAL";
    case SchurType::COMPLEX: return "COMPLEX";
    case SchurType::QUATERNIONIC: return "QUATERNIONIC";
    }
    return "?";
}

int levi_civita(int a, int b, int c) {
    if (a == b || b == c || a == c)
        return 0;
    if ((a == 1 && b == 2 && c == 3) || (a == 2 && b == 3 && c == 1) || (a == 3 && b == 1 && c == 2))
        return 1;
    return -1;
}

EquivarianceReport check_equivariance(const PolyVectorField& f, const MatrixRep& rep) {
    if (f.dim() != rep.dim)
        throw DimensionError("field and representation dimensions differ");
    EquivarianceReport report;
    for (std::size_t a = 0; a < rep.generators.size(); ++a) {
        PolyVectorField residual = bracket(f, linear_field(rep.generators[a]));
        if (!residual.is_zero()) {
            report.ok = false;
            report.violations.emplace_back(static_cast<int>(a), std::move(residual));
        }
    }
    return report;
}

namespace {

/// Canonical commutant bases for the built-in groups; the generic solver
/// yields the same spans, pinning these keeps reports and tests stable.
std::vector<RatMatrix> canonical_units(const std::string& name) {
    if (name == "so2")
        return {matrix_from_ints(2, {0, -1, 1, 0})};
    if (name == "su2")
        return {
            matrix_from_ints(4, {0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0}),
            matrix_from_ints(4, {0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0}),
            matrix_from_ints(4, {0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0}),
        };
    return {};
}

RatMatrix normalize_unit(const RatMatrix& c) {
    // A traceless commutant element of an irreducible orthogonal
    // representation must satisfy C^2 = -lambda I, lambda > 0.
    const int n = c.rows();
    const RatMatrix sq = c * c;
    const Rat lambda = -sq.at(0, 0);
    if (sq != RatMatrix::identity(n).scaled(-lambda) || lambda <= 0)
        throw NotIrreducibleError("commutant element does not square to a negative multiple of I");
    const std::optional<Rat> root = rat_exact_sqrt(lambda);
    if (!root)
        throw NotIrreducibleError("commutant unit cannot be normalized over the rationals");
    return c.scaled(Rat(1) / *root);
}

void compute_phi_phi_table(CentralizerBasis& basis) {
    const int s = basis.s();
    basis.phi_phi.assign(static_cast<std::size_t>(s),
                         std::vector<std::vector<Rat>>(static_cast<std::size_t>(s)));
    if (s == 0)
        return;
    std::vector<RatMatrix> span = basis.K;
    for (int p = 1; p <= s; ++p) {
        for (int q = 1; q <= s; ++q) {
            // Oracle route: bracket the degree-1 basis fields and expand the
            // (necessarily linear) result over {x, K_s x}.
            const PolyVectorField b = bracket(linear_field(basis.K[static_cast<std::size_t>(p)]),
                                              linear_field(basis.K[static_cast<std::size_t>(q)]));
            RatMatrix bm(basis.dim, basis.dim);
            for (const auto& [key, c] : b.terms()) {
                if (key.mono.degree() != 1)
                    throw EquinormError("phi-phi bracket of linear fields must be linear");
                int col = 0;
                while (key.mono.exps[col] == 0)
                    ++col;
                bm.at(key.comp, col) = c;
            }
            const auto coeffs = in_span(span, bm);
            if (!coeffs)
                throw NotIrreducibleError("commutant is not closed under the commutator");
            basis.phi_phi[static_cast<std::size_t>(p) - 1][static_cast<std::size_t>(q) - 1] = *coeffs;
        }
    }
}

} // namespace

CentralizerBasis compute_centralizer(const MatrixRep& rep) {
    if (rep.generators.empty())
        throw ValidationError("empty representation");
    const int n = rep.dim;

    // Linear system [M, H_a] = 0 over the n^2 entries of M.
    RatMatrix sys(static_cast<int>(rep.generators.size()) * n * n, n * n);
    int row = 0;
    for (const RatMatrix& h : rep.generators) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (int b = 0; b < n; ++b)
                    sys.at(row, i * n + b) += h.at(b, j);
                for (int a = 0; a < n; ++a)
                    sys.at(row, a * n + j) -= h.at(i, a);
                ++row;
            }
    }

    std::vector<std::vector<Rat>> null = nullspace(sys);
    const int d = static_cast<int>(null.size());
    if (d != 1 && d != 2 && d != 4)
        throw NotIrreducibleError("commutant dimension " + std::to_string(d) +
                                  " is not 1, 2 or 4; representation is not a supported irreducible");

    CentralizerBasis basis;
    basis.dim = n;
    basis.group_name = rep.name;
    basis.schur_type = d == 1 ? SchurType::REAL : (d == 2 ? SchurType::COMPLEX : SchurType::QUATERNIONIC);
    basis.K.push_back(RatMatrix::identity(n));

    std::vector<RatMatrix> raw;
    raw.reserve(null.size());
    for (const auto& v : null)
        raw.push_back(matrixize(n, v));

    const bool exact_builtin = is_builtin_rep_name(rep.name) && [&] {
        const MatrixRep ref = builtin_rep(rep.name);
        return ref.dim == rep.dim && ref.generators == rep.generators;
    }();

    if (std::vector<RatMatrix> canonical = exact_builtin ? canonical_units(rep.name) : std::vector<RatMatrix>{};
        !canonical.empty()) {
        for (RatMatrix& k : canonical) {
            if (!in_span(raw, k))
                throw NotIrreducibleError("canonical commutant unit missing from solved span");
            basis.K.push_back(std::move(k));
        }
    } else if (d > 1) {
        // Traceless parts, reduced to an independent set in solver order.
        std::vector<RatMatrix> traceless;
        for (const RatMatrix& m : raw) {
            RatMatrix t = m - RatMatrix::identity(n).scaled(m.trace() / Rat(n));
            if (t.is_zero())
                continue;
            std::vector<RatMatrix> probe = traceless;
            probe.push_back(t);
            RatMatrix indep(n * n, static_cast<int>(probe.size()));
            for (int col = 0; col < static_cast<int>(probe.size()); ++col) {
                const std::vector<Rat> v = vectorize(probe[static_cast<std::size_t>(col)]);
                for (int r = 0; r < n * n; ++r)
                    indep.at(r, col) = v[static_cast<std::size_t>(r)];
            }
            if (static_cast<int>(rref(indep).size()) == static_cast<int>(probe.size()))
                traceless.push_back(std::move(t));
        }
        if (static_cast<int>(traceless.size()) != d - 1)
            throw NotIrreducibleError("commutant has unexpected traceless dimension");

        const RatMatrix k1 = normalize_unit(traceless[0]);
        basis.K.push_back(k1);
        if (d == 4) {
            RatMatrix c2 = traceless[1] - k1.scaled(trace_form(traceless[1], k1));
            if (c2.is_zero())
                c2 = traceless[2] - k1.scaled(trace_form(traceless[2], k1));
            const RatMatrix k2 = normalize_unit(c2);
            basis.K.push_back(k2);
            basis.K.push_back(k1 * k2); // orientation: K_1 K_2 = K_3
        }
    }

    // Every basis element must commute with every generator.
    for (const RatMatrix& k : basis.K)
        for (const RatMatrix& h : rep.generators)
            if (!commutator(k, h).is_zero())
                throw NotIrreducibleError("solved commutant element fails to commute with a generator");

    if (basis.schur_type == SchurType::QUATERNIONIC && !verify_quaternion_relations(basis))
        throw NotIrreducibleError("normalized commutant does not satisfy the quaternion relations");

    compute_phi_phi_table(basis);
    return basis;
}

bool verify_quaternion_relations(const CentralizerBasis& basis) {
    if (basis.schur_type != SchurType::QUATERNIONIC)
        throw TypeMismatchError("quaternion relations require a quaternionic basis");
    if (basis.K.size() != 4)
        return false;
    const RatMatrix id = RatMatrix::identity(basis.dim);
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            RatMatrix expect(basis.dim, basis.dim);
            for (int c = 1; c <= 3; ++c) {
                const int eps = levi_civita(a, b, c);
                if (eps != 0)
                    expect = expect + basis.K[static_cast<std::size_t>(c)].scaled(eps);
            }
            if (a == b)
                expect = expect - id;
            if (basis.K[static_cast<std::size_t>(a)] * basis.K[static_cast<std::size_t>(b)] != expect)
                return false;
        }
    }
    return true;
}

} // namespace equinorm
