#pragma once

#include "equinorm/errors.hpp"
#include "equinorm/rational.hpp"

#include <compare>
#include <map>
#include <span>
#include <vector>

namespace equinorm {

/// Exponent vector of a monomial x1^e1 ... xn^en.
struct Monomial {
    std::vector<int> exps;

    int degree() const;
    auto operator<=>(const Monomial&) const = default;
};

/// One stored term: coefficient of `mono` in component `comp` (0-based).
struct TermKey {
    int comp = 0;
    Monomial mono;

    auto operator<=>(const TermKey&) const = default;
};

/// Sparse polynomial vector field on R^n with exact rational coefficients.
///
/// Terms are kept in canonical form: no zero coefficients, keys ordered
/// lexicographically by (component, exponents). The grade of a homogeneous
/// piece of polynomial degree d is d-1, so linear fields sit at grade 0.
class PolyVectorField {
public:
    PolyVectorField() = default;
    explicit PolyVectorField(int dim);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    const std::map<TermKey, Rat>& terms() const { return terms_; }

    /// Adds c * x^mono to component comp; erases the entry if it cancels.
    void add_term(int comp, Monomial mono, const Rat& c);

    Rat coeff(int comp, const Monomial& mono) const;

    PolyVectorField& operator+=(const PolyVectorField& other);
    PolyVectorField& operator-=(const PolyVectorField& other);
    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
    friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
    bool operator==(const PolyVectorField&) const = default;

    PolyVectorField scaled(const Rat& c) const;

    /// Drops every term of polynomial degree > max_degree.
    PolyVectorField truncated_degree(int max_degree) const;

    /// Smallest / largest polynomial degree present (0 for the zero field).
    int min_degree() const;
    int max_degree() const;

    /// The identity field x^i d_i.
    static PolyVectorField identity(int dim);

    /// Linear field (M x)^i d_i from a row-major dim*dim matrix.
    static PolyVectorField linear(int dim, const std::vector<Rat>& row_major);

private:
    int dim_ = 0;
    std::map<TermKey, Rat> terms_;
};

/// Lie-Poisson bracket {f,g}^i = f^k d_k g^i - g^k d_k f^i, the component
/// form of the vector-field commutator.
PolyVectorField bracket(const PolyVectorField& f, const PolyVectorField& g);

/// Splits f into homogeneous pieces keyed by grade (degree - 1).
std::map<int, PolyVectorField> grade_decompose(const PolyVectorField& f);

/// Numeric evaluation at a point.
std::vector<double> evaluate(const PolyVectorField& f, std::span<const double> x);

/// Componentwise substitution f(map(x)), truncated at max_degree. `map` is
/// read as n scalar polynomials over the same coordinates.
PolyVectorField substitute(const PolyVectorField& f, const PolyVectorField& map, int max_degree);

/// Truncated Lie-series push-forward exp(ad_h) f, summed while terms survive
/// the degree cut. h must have min degree >= 2 (no linear part).
PolyVectorField exp_ad_poly(const PolyVectorField& h, const PolyVectorField& f, int max_degree);

/// Time-1 flow map of h applied to the identity coordinates, as a polynomial
/// map truncated at max_degree. h must have min degree >= 2.
PolyVectorField flow_map(const PolyVectorField& h, int max_degree);

/// Raised when a field is not in the quasilinear module; carries the part
/// that could not be matched.
struct NotQuasilinearError : EquinormError {
    PolyVectorField residual;
    NotQuasilinearError(const std::string& msg, PolyVectorField res)
        : EquinormError(msg), residual(std::move(res)) {}
};

} // namespace equinorm
