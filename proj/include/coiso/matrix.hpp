#pragma once

#include "coiso/ring.hpp"

#include <optional>
#include <vector>

namespace coiso {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

ScalarMatrix scalar_identity(std::size_t n);
ScalarMatrix multiply(const ScalarMatrix &a, const ScalarMatrix &b);
/// Gauss-Jordan elimination over exact scalars; pivots must be units
/// (single pi-power terms). nullopt when no unit pivot exists.
std::optional<ScalarMatrix> invert(const ScalarMatrix &a);

/// Square or rectangular matrix of ring elements on one chart.
class RingMatrix {
  public:
    RingMatrix(Chart chart, std::size_t rows, std::size_t cols);

    static RingMatrix identity(const Chart &chart, std::size_t n);
    static RingMatrix from_scalars(const Chart &chart, const ScalarMatrix &m);

    const Chart &chart() const { return chart_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RingElement &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const RingElement &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    /// Constant parts of all entries.
    ScalarMatrix constant_part() const;
    RingMatrix truncated(int order) const;
    RingMatrix transpose() const;

    friend RingMatrix operator+(const RingMatrix &a, const RingMatrix &b);
    friend RingMatrix operator-(const RingMatrix &a, const RingMatrix &b);
    friend RingMatrix operator*(const RingMatrix &a, const RingMatrix &b);
    friend RingMatrix operator*(const RingElement &f, const RingMatrix &a);
    friend RingMatrix operator*(const Scalar &s, const RingMatrix &a);
    friend bool operator==(const RingMatrix &a, const RingMatrix &b);

  private:
    Chart chart_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<RingElement> data_;
};

/// Exact inverse over the ring when A = A0 + N with A0 the (invertible)
/// constant part and A0^{-1} N nilpotent; then
///   A^{-1} = sum_{r < n} (-A0^{-1} N)^r A0^{-1}.
/// nullopt when A0 is singular or the perturbation is not nilpotent.
std::optional<RingMatrix> invert_exact(const RingMatrix &a);

} // namespace coiso
