#pragma once

#include "equinorm/matrix.hpp"
#include "equinorm/polyvf.hpp"

#include <string>
#include <vector>

namespace equinorm {

/// Matrix representation of a Lie algebra: a list of antisymmetric n x n
/// generators closing under the commutator.
struct MatrixRep {
    int dim = 0;
    std::vector<RatMatrix> generators;
    std::string name; // "so2", "so3", "su2" or a user label
};

/// Throws ValidationError unless all generators are n x n antisymmetric and
/// [H_a, H_b] lies in the rational span of the generators.
void validate_rep(const MatrixRep& rep);

/// Built-in representations: "so2" (n=2), "so3" (n=3), "su2" (n=4).
MatrixRep builtin_rep(const std::string& name);

bool is_builtin_rep_name(const std::string& name);

/// The vector field (M x)^i d_i of a square matrix.
PolyVectorField linear_field(const RatMatrix& m);

enum class SchurType { REAL, COMPLEX, QUATERNIONIC };

std::string to_string(SchurType t);

/// Basis of the commutant of a representation, normalized so that K_0 = I
/// and every K_p (p >= 1) squares to -I; in the quaternionic case the
/// orientation is fixed by K_1 K_2 = K_3.
///
/// phi_phi caches the expansion of the bracket of the degree-(2k+1) basis
/// fields r^{2k} K_p x: phi_phi[p-1][q-1][s] is the coefficient of
/// r^{2(k+m)} K_s x in { r^{2k} K_p x , r^{2m} K_q x } (independent of k,m;
/// slot s = 0 is the identity direction). The table is computed from the
/// polynomial bracket at construction, not from a hard-coded formula.
struct CentralizerBasis {
    int dim = 0;
    std::vector<RatMatrix> K;
    SchurType schur_type = SchurType::REAL;
    std::string group_name;
    std::vector<std::vector<std::vector<Rat>>> phi_phi;

    int s() const { return static_cast<int>(K.size()) - 1; }
};

/// Solves [M, H_a] = 0 over the rationals and normalizes the result.
/// Throws NotIrreducibleError when the commutant dimension is not 1, 2 or 4
/// or lacks the division-algebra structure of an irreducible representation.
CentralizerBasis compute_centralizer(const MatrixRep& rep);

struct EquivarianceReport {
    bool ok = true;
    /// (generator index, nonzero bracket residual) for each violation.
    std::vector<std::pair<int, PolyVectorField>> violations;
};

/// Checks {f, H_a x} = 0 exactly for every generator.
EquivarianceReport check_equivariance(const PolyVectorField& f, const MatrixRep& rep);

/// Checks K_a K_b = eps_{abc} K_c - delta_{ab} I for a,b in {1,2,3}.
/// Throws TypeMismatchError unless the basis is quaternionic.
bool verify_quaternion_relations(const CentralizerBasis& basis);

/// Levi-Civita symbol on three 1-based indices.
int levi_civita(int a, int b, int c);

} // namespace equinorm
