#pragma once

#include "equinorm/equivariant.hpp"

#include <optional>
#include <string>
#include <vector>

namespace equinorm {

/// Classification of the linear part within the Schur trichotomy.
enum class CaseTag { A, B1, B2, B3, C1, C2, C3, ZERO_LINEAR };

std::string to_string(CaseTag tag);

/// Structured spectrum of the linear part: all eigenvalues share the real
/// part beta0 and come in pairs beta0 +- i*omega with omega^2 = omega_sq
/// (omega_sq = 0 means an n-fold real eigenvalue).
struct SpectrumInfo {
    Rat beta0;
    Rat omega_sq;
    int dim = 0;

    /// Floating-point eigenvalue list (re, im), conjugate pairs split
    /// half/half when omega_sq > 0.
    std::vector<std::pair<double, double>> eigenvalues() const;
};

std::pair<CaseTag, SpectrumInfo> classify_case(const QuasilinearField& q);

/// One resonance sum_i m_i lambda_i = lambda_j, reported once per
/// distribution of the order over the two conjugate eigenvalue classes.
struct ResonanceWitness {
    std::vector<int> exponents; // length dim, aligned with SpectrumInfo::eigenvalues()
    int target_index = 0;
};

/// All resonances of total order 2 .. max_order+1, exact on the structured
/// spectrum. max_order must be >= 2.
std::vector<ResonanceWitness> resonance_check(const SpectrumInfo& spec, int max_order);

enum class Verdict { CONVERGENT, SMOOTH_CONJUGACY, FORMAL_ONLY, EXPECT_DIVERGENT };

std::string to_string(Verdict v);

struct ConvergenceVerdict {
    bool poincare_domain = false;
    bool hyperbolic = false;
    bool condition_a = false;
    /// True when the verdict relies on the (undecidable here) arithmetic
    /// condition on the spectrum; reported as an assumption, not a fact.
    bool arithmetic_assumption = false;
    Verdict verdict = Verdict::FORMAL_ONLY;
};

struct NormalFormResult {
    CaseTag case_tag = CaseTag::ZERO_LINEAR;
    SpectrumInfo spectrum;
    QuasilinearField nf;
    /// (grade k, generator h_k) in application order; zero generators are
    /// not recorded.
    std::vector<std::pair<int, QuasilinearField>> generators;
    /// Truncation: coefficients are computed for powers of r^2 up to this.
    int order = 0;
    ConvergenceVerdict diagnostics;
};

/// Grade-by-grade normalization inside the quasilinear module. Each grade
/// solves the homological equation on the (s+1)-dimensional slot space; the
/// retained part lies in the kernel of ad(linear part). Throws
/// WrongCaseError on a zero linear part.
NormalFormResult normalize(const QuasilinearField& q, int order);

ConvergenceVerdict convergence_diagnostics(const NormalFormResult& result);

/// Result of rotating a quaternionic system so the linear part becomes
/// beta0 K_0 + omega K_1.
struct RotationResult {
    bool approximate = false;

    // Exact mode.
    QuasilinearField field;
    RatMatrix rotation;

    // Approximate mode (omega irrational): everything in doubles.
    std::vector<double> rotation_approx;              // row-major dim x dim
    std::map<std::pair<int, int>, double> field_approx;
    double residual = 0.0;                            // max |(R A R^T - beta0 I - omega K_1)_ij|
};

/// Rotates coordinates using the quaternion structure of the commutant.
/// Exact whenever omega^2 is a perfect rational square (in particular for
/// axis-aligned linear parts); otherwise computed in floating point and
/// flagged approximate. Throws TypeMismatchError on non-quaternionic input.
RotationResult rotate_to_standard(const QuasilinearField& q);

} // namespace equinorm
