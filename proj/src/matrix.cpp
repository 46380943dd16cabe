#include "equinorm/matrix.hpp"

namespace equinorm {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty())
        return {};
    RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.cols())
            throw DimensionError("ragged matrix rows");
        for (int j = 0; j < m.cols(); ++j)
            m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

bool RatMatrix::is_zero() const {
    for (const Rat& v : a_)
        if (v != 0)
            return false;
    return true;
}

bool RatMatrix::is_antisymmetric() const {
    if (!is_square())
        return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j <= i; ++j)
            if (at(i, j) != -at(j, i))
                return false;
    return true;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::scaled(const Rat& c) const {
    RatMatrix m = *this;
    for (Rat& v : m.a_)
        v *= c;
    return m;
}

Rat RatMatrix::trace() const {
    Rat t(0);
    for (int i = 0; i < rows_ && i < cols_; ++i)
        t += at(i, i);
    return t;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionError("matrix addition shape mismatch");
    RatMatrix m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i)
        m.a_[i] += b.a_[i];
    return m;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw DimensionError("matrix subtraction shape mismatch");
    RatMatrix m = a;
    for (std::size_t i = 0; i < m.a_.size(); ++i)
        m.a_[i] -= b.a_[i];
    return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_)
        throw DimensionError("matrix product shape mismatch");
    RatMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols_; ++j) {
                const Rat& bkj = b.at(k, j);
                if (bkj != 0)
                    m.at(i, j) += aik * bkj;
            }
        }
    return m;
}

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) {
    return a * b - b * a;
}

std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int sel = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m.at(r, col) != 0) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        if (sel != row)
            for (int c = 0; c < m.cols(); ++c)
                std::swap(m.at(sel, c), m.at(row, c));
        const Rat inv = Rat(1) / m.at(row, col);
        for (int c = col; c < m.cols(); ++c)
            m.at(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0)
                continue;
            const Rat factor = m.at(r, col);
            for (int c = col; c < m.cols(); ++c)
                m.at(r, c) -= factor * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Rat>> nullspace(const RatMatrix& m) {
    RatMatrix r = m;
    const std::vector<int> pivots = rref(r);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int p : pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)])
            continue;
        std::vector<Rat> v(static_cast<std::size_t>(m.cols()), Rat(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            v[static_cast<std::size_t>(pivots[pr])] = -r.at(static_cast<int>(pr), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw DimensionError("rhs length does not match matrix rows");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j)
            aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[static_cast<std::size_t>(i)];
    }
    const std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p == a.cols())
            return std::nullopt;
    std::vector<Rat> x(static_cast<std::size_t>(a.cols()), Rat(0));
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
        x[static_cast<std::size_t>(pivots[pr])] = aug.at(static_cast<int>(pr), a.cols());
    return x;
}

} // namespace equinorm
