#pragma once

#include "coiso/matrix.hpp"
#include "coiso/multivector.hpp"

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace coiso {

using ComplexMatrix = Eigen::MatrixXcd;
using BasePoint = std::vector<double>;

/// Numeric bivector matrix pi^{ij} at a full chart point (base then fibre).
using NumericBivector = std::function<ComplexMatrix(std::span<const double>)>;

/// Regular grid with `samples` points per periodic axis on [0, 1); polynomial
/// base axes get min(samples, 5) points drawn uniformly from [-1, 1] with the
/// given seed. Points are returned in lexicographic axis order.
std::vector<BasePoint> sample_grid(const ChartSpec &chart, int samples, std::uint64_t seed = 0);

ComplexMatrix evaluate_matrix(const RingMatrix &m, std::span<const double> point);
NumericBivector numeric_bivector(const MultiVectorField &pi);

/// Full chart point (x, y).
std::vector<double> chart_point(std::span<const double> base, std::span<const double> fibre);

/// The fibre point -alpha(x); alpha must be real.
std::vector<double> graph_fibre_point(const VerticalSection &alpha, std::span<const double> base);

/// sup over the points of the Euclidean fibre norm of alpha.
double sup_fibre_norm(const VerticalSection &alpha, std::span<const BasePoint> points);

} // namespace coiso
