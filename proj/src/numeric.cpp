#include "coiso/numeric.hpp"

#include "coiso/error.hpp"

#include <cmath>
#include <random>

namespace coiso {

std::vector<BasePoint> sample_grid(const ChartSpec &chart, int samples, std::uint64_t seed) {
    if (samples <= 0)
        throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::vector<std::vector<double>> axes;
    for (const auto &b : chart.base()) {
        std::vector<double> axis;
        if (b.periodic) {
            for (int k = 0; k < samples; ++k)
                axis.push_back(static_cast<double>(k) / samples);
        } else {
            for (int k = 0; k < std::min(samples, 5); ++k)
                axis.push_back(uniform(rng));
        }
        axes.push_back(std::move(axis));
    }
    std::vector<BasePoint> points{BasePoint{}};
    for (const auto &axis : axes) {
        std::vector<BasePoint> next;
        next.reserve(points.size() * axis.size());
        for (const auto &p : points)
            for (double v : axis) {
                BasePoint q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    return points;
}

ComplexMatrix evaluate_matrix(const RingMatrix &m, std::span<const double> point) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).evaluate(point);
    return out;
}

NumericBivector numeric_bivector(const MultiVectorField &pi) {
    if (pi.degree() != 2)
        throw Error(ErrorCode::WrongDegree, "numeric bivector needs degree 2");
    std::size_t n = pi.chart()->dim();
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, RingElement>> entries;
    for (const auto &[mask, c] : pi.terms()) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(mask));
        std::size_t j = static_cast<std::size_t>(63 - std::countl_zero(mask));
        entries.push_back({{i, j}, c.without_jet_order()});
    }
    return [n, entries](std::span<const double> point) {
        ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (const auto &[ij, c] : entries) {
            auto v = c.evaluate(point);
            auto i = static_cast<Eigen::Index>(ij.first), j = static_cast<Eigen::Index>(ij.second);
            m(i, j) = v;
            m(j, i) = -v;
        }
        return m;
    };
}

std::vector<double> chart_point(std::span<const double> base, std::span<const double> fibre) {
    std::vector<double> out(base.begin(), base.end());
    out.insert(out.end(), fibre.begin(), fibre.end());
    return out;
}

std::vector<double> graph_fibre_point(const VerticalSection &alpha, std::span<const double> base) {
    const auto &chart = *alpha.chart();
    if (base.size() != chart.base_dim())
        throw Error(ErrorCode::DimensionMismatch, "base point has the wrong dimension");
    std::vector<double> full = chart_point(base, std::vector<double>(chart.fibre_dim(), 0.0));
    std::vector<double> out;
    for (const auto &c : alpha.components())
        out.push_back(-c.evaluate(full).real());
    return out;
}

double sup_fibre_norm(const VerticalSection &alpha, std::span<const BasePoint> points) {
    double sup = 0.0;
    for (const auto &p : points) {
        double norm2 = 0.0;
        for (double v : graph_fibre_point(alpha, p))
            norm2 += v * v;
        sup = std::max(sup, std::sqrt(norm2));
    }
    return sup;
}

} // namespace coiso
