#include "coiso/matrix.hpp"

#include "coiso/error.hpp"

namespace coiso {

ScalarMatrix scalar_identity(std::size_t n) {
    ScalarMatrix m(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = Scalar(1);
    return m;
}

ScalarMatrix multiply(const ScalarMatrix &a, const ScalarMatrix &b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    ScalarMatrix out(n, std::vector<Scalar>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero())
                continue;
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

std::optional<ScalarMatrix> invert(const ScalarMatrix &a) {
    std::size_t n = a.size();
    for (const auto &row : a)
        if (row.size() != n)
            throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    ScalarMatrix work = a;
    ScalarMatrix inv = scalar_identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r)
            if (work[r][col].is_unit()) {
                pivot = r;
                break;
            }
        if (pivot == n)
            return std::nullopt;
        std::swap(work[col], work[pivot]);
        std::swap(inv[col], inv[pivot]);
        Scalar p = *work[col][col].inverse();
        for (std::size_t j = 0; j < n; ++j) {
            work[col][j] *= p;
            inv[col][j] *= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work[r][col].is_zero())
                continue;
            Scalar f = work[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                work[r][j] -= f * work[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

RingMatrix::RingMatrix(Chart chart, std::size_t rows, std::size_t cols)
    : chart_(std::move(chart)), rows_(rows), cols_(cols), data_(rows * cols, RingElement(chart_)) {}

RingMatrix RingMatrix::identity(const Chart &chart, std::size_t n) {
    RingMatrix m(chart, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = RingElement::constant(chart, Scalar(1));
    return m;
}

RingMatrix RingMatrix::from_scalars(const Chart &chart, const ScalarMatrix &s) {
    std::size_t rows = s.size(), cols = s.empty() ? 0 : s[0].size();
    RingMatrix m(chart, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = RingElement::constant(chart, s[i][j]);
    return m;
}

bool RingMatrix::is_zero() const {
    for (const auto &e : data_)
        if (!e.is_zero())
            return false;
    return true;
}

ScalarMatrix RingMatrix::constant_part() const {
    ScalarMatrix out(rows_, std::vector<Scalar>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i][j] = (*this)(i, j).constant_term();
    return out;
}

RingMatrix RingMatrix::truncated(int order) const {
    RingMatrix out = *this;
    for (auto &e : out.data_)
        e = e.truncated(order);
    return out;
}

RingMatrix RingMatrix::transpose() const {
    RingMatrix out(chart_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

RingMatrix operator+(const RingMatrix &a, const RingMatrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(ErrorCode::DimensionMismatch, "matrix sizes differ");
    RingMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k)
        out.data_[k] += b.data_[k];
    return out;
}

RingMatrix operator-(const RingMatrix &a, const RingMatrix &b) {
    return a + Scalar(-1) * b;
}

RingMatrix operator*(const RingMatrix &a, const RingMatrix &b) {
    if (a.cols_ != b.rows_)
        throw Error(ErrorCode::DimensionMismatch, "matrix sizes do not chain");
    RingMatrix out(a.chart_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t l = 0; l < a.cols_; ++l) {
            const RingElement &x = a(i, l);
            if (x.is_zero() && !x.jet_order())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                out(i, j) += x * b(l, j);
        }
    return out;
}

RingMatrix operator*(const RingElement &f, const RingMatrix &a) {
    RingMatrix out = a;
    for (auto &e : out.data_)
        e = f * e;
    return out;
}

RingMatrix operator*(const Scalar &s, const RingMatrix &a) {
    RingMatrix out = a;
    for (auto &e : out.data_)
        e *= s;
    return out;
}

bool operator==(const RingMatrix &a, const RingMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::optional<RingMatrix> invert_exact(const RingMatrix &a) {
    if (a.rows() != a.cols())
        throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    std::size_t n = a.rows();
    auto a0_inv = invert(a.constant_part());
    if (!a0_inv)
        return std::nullopt;
    RingMatrix base_inv = RingMatrix::from_scalars(a.chart(), *a0_inv);
    RingMatrix perturbation = a - RingMatrix::from_scalars(a.chart(), a.constant_part());
    RingMatrix step = Scalar(-1) * (base_inv * perturbation);

    RingMatrix sum = base_inv;
    RingMatrix power = RingMatrix::identity(a.chart(), n);
    for (std::size_t r = 1; r <= n; ++r) {
        power = power * step;
        if (power.is_zero())
            return sum;
        if (r == n)
            break;
        sum = sum + power * base_inv;
    }
    return std::nullopt;
}

} // namespace coiso
