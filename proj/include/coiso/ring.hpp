#pragma once

#include "coiso/chart.hpp"
#include "coiso/scalar.hpp"

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coiso {

/// Exponent key of a ring term: [polynomial base exps | Fourier modes | fibre exps].
using Exponents = std::vector<int>;

/// Coefficient functions on a chart: finite sums of
///   scalar * x^a * exp(i 2 pi k.x) * y^b
/// with x^a over polynomial base coordinates, k over periodic base coordinates
/// and y^b over fibre coordinates.
///
/// An element may carry a jet order N, in which case it stands for a fibre
/// power series known up to total y-degree N; terms above N are dropped on
/// construction. Binary operations keep the smaller order; a fibre derivative
/// lowers the order by one.
class RingElement {
  public:
    using TermMap = std::map<Exponents, Scalar>;

    explicit RingElement(Chart chart);
    RingElement(Chart chart, TermMap terms, std::optional<int> jet_order = std::nullopt);

    static RingElement constant(Chart chart, const Scalar &value);
    /// A polynomial-base or fibre coordinate as a function.
    static RingElement coordinate(Chart chart, std::string_view name);
    /// exp(i 2 pi k x) in a periodic coordinate.
    static RingElement fourier_mode(Chart chart, std::string_view name, int k);
    static RingElement cos_mode(Chart chart, std::string_view name, int k = 1);
    static RingElement sin_mode(Chart chart, std::string_view name, int k = 1);
    static RingElement monomial(Chart chart, Exponents key, const Scalar &value);

    const Chart &chart() const { return chart_; }
    const TermMap &terms() const { return terms_; }
    const std::optional<int> &jet_order() const { return jet_order_; }

    bool is_zero() const { return terms_.empty(); }
    /// Zero or a single term with all exponents zero.
    bool is_constant() const;
    std::optional<Scalar> constant_value() const;
    /// Maximal total fibre degree; -1 for zero.
    int y_degree() const;
    int y_degree(const Exponents &key) const;
    bool is_base_only() const { return y_degree() <= 0; }
    bool has_fourier_modes() const;
    bool is_real() const;

    RingElement conj() const;
    /// Drops terms of fibre degree > n and records n as the jet order.
    RingElement truncated(int n) const;
    RingElement without_jet_order() const;
    /// Restriction to the zero section y = 0.
    RingElement at_zero_section() const;
    /// The term with zero key (x-independent, mode-free, y-free part).
    Scalar constant_term() const;

    RingElement operator-() const;
    RingElement &operator+=(const RingElement &other);
    RingElement &operator-=(const RingElement &other);
    RingElement &operator*=(const Scalar &s);
    friend RingElement operator+(RingElement a, const RingElement &b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement &b) { return a -= b; }
    friend RingElement operator*(const RingElement &a, const RingElement &b);
    friend RingElement operator*(RingElement a, const Scalar &s) { return a *= s; }
    friend RingElement operator*(const Scalar &s, RingElement a) { return a *= s; }

    /// Structural equality: same chart, same terms and same jet order.
    friend bool operator==(const RingElement &a, const RingElement &b);

    RingElement derivative(std::size_t coordinate) const;
    RingElement derivative(std::string_view name) const;
    std::complex<double> evaluate(std::span<const double> point) const;

    /// Real-basis rendering, e.g. `8*pi^2*cos(2*pi*y1)*cos(2*pi*y2)`.
    std::string to_string() const;
    /// Rendering suitable as a factor of a product (parenthesised sums).
    std::string to_factor_string() const;

  private:
    void add_term(const Exponents &key, const Scalar &value);
    void apply_truncation();

    Chart chart_;
    TermMap terms_;
    std::optional<int> jet_order_;
};

std::optional<int> min_order(const std::optional<int> &a, const std::optional<int> &b);

RingElement ring_mul(const RingElement &f, const RingElement &g);
RingElement partial_derivative(const RingElement &f, std::string_view coordinate);
/// Substitutes y_j -> y_j + alpha_j(x). Each alpha_j must be independent of the fibre.
RingElement taylor_shift(const RingElement &f, std::span<const RingElement> alpha);
std::complex<double> eval_point(const RingElement &f, std::span<const double> point);

RingElement power(const RingElement &f, int n);

/// Re-expresses f on another chart, matching coordinates by name. Every
/// coordinate f depends on must exist in the target with the same periodicity.
RingElement transport(const RingElement &f, const Chart &target);

} // namespace coiso
