#pragma once

#include "equinorm/errors.hpp"
#include "equinorm/rational.hpp"

#include <optional>
#include <vector>

namespace equinorm {

/// Small dense matrix of exact rationals. Sized for the n <= 4 ambient
/// dimensions and the tiny per-grade systems this library solves.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool operator==(const RatMatrix&) const = default;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_antisymmetric() const;

    RatMatrix transposed() const;
    RatMatrix scaled(const Rat& c) const;
    Rat trace() const;

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

    /// Row-major flat view.
    const std::vector<Rat>& flat() const { return a_; }
    std::vector<Rat>& flat() { return a_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> a_;
};

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);

/// In-place reduced row echelon form; returns the pivot column per pivot row.
std::vector<int> rref(RatMatrix& m);

/// Basis of the right nullspace of m, one vector per free column, in
/// deterministic column order.
std::vector<std::vector<Rat>> nullspace(const RatMatrix& m);

/// Solves A x = b if consistent, preferring pivots in the earliest columns
/// and zeroing all free variables. Returns nullopt when inconsistent.
std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b);

} // namespace equinorm
