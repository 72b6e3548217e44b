#pragma once

#include "coiso/exterior.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coiso {

/// Section of the exterior bundle of E: a multivector with only fibre
/// directions and fibre-independent coefficients. Degree-1 sections double as
/// fibrewise constant vertical vector fields.
class VerticalSection {
  public:
    VerticalSection(Chart chart, int degree);
    /// Throws Error(NotVertical) if field has a base direction or y-dependence.
    explicit VerticalSection(MultiVectorField field);

    /// sum_j components[j] * @y_j
    static VerticalSection from_components(const Chart &chart, const std::vector<RingElement> &components);

    const MultiVectorField &field() const { return field_; }
    const Chart &chart() const { return field_.chart(); }
    int degree() const { return field_.degree(); }
    bool is_zero() const { return field_.is_zero(); }
    /// Components along the fibre directions; degree 1 only.
    std::vector<RingElement> components() const;
    bool is_real() const;

    VerticalSection operator-() const { return VerticalSection(-field_); }
    friend VerticalSection operator+(const VerticalSection &a, const VerticalSection &b) {
        return VerticalSection(a.field_ + b.field_);
    }
    friend VerticalSection operator-(const VerticalSection &a, const VerticalSection &b) {
        return VerticalSection(a.field_ - b.field_);
    }
    friend VerticalSection operator*(const Scalar &s, const VerticalSection &a) {
        return VerticalSection(s * a.field_);
    }
    friend bool operator==(const VerticalSection &a, const VerticalSection &b) {
        return a.field_ == b.field_;
    }

    /// Degree 1 renders as a tuple `(f1, f2)`; other degrees as a wedge expression.
    std::string to_string() const;

  private:
    MultiVectorField field_;
};

/// Schouten-Nijenhuis bracket. In odd coordinates theta_i = @x_i,
///   [P, Q] = sum_i (P d^R/dtheta_i)(dQ/dx_i) - (dP/dx_i)(d^L Q/dtheta_i),
/// so [X, f] = X(f) for a vector field X and [X, Y] is the Lie bracket.
MultiVectorField schouten_bracket(const MultiVectorField &x, const MultiVectorField &y);

/// Restriction to the zero section followed by discarding every term with a
/// base direction.
VerticalSection projection_P(const MultiVectorField &x);

/// Pushforward along the fibre translation (x, y) -> (x, y + alpha(x)).
MultiVectorField fibre_translate_pushforward(const MultiVectorField &x, const VerticalSection &alpha);

/// Default termination cap of exp_ad: max y-degree + degree + 2.
int default_exp_ad_cap(const MultiVectorField &x);

/// sum_k (1/k!) [...[x, alpha], ..., alpha]. Throws Error(CapExceeded) if the
/// iterated bracket is still nonzero after `cap` steps. For jets the series
/// stops once the iterated bracket has no reliable terms left.
MultiVectorField exp_ad(const MultiVectorField &x, const VerticalSection &alpha,
                        std::optional<int> cap = std::nullopt);

/// Left interior product by a 1-form: for a bivector, pi(xi, .).
MultiVectorField interior(const DifferentialForm &xi, const MultiVectorField &x);
MultiVectorField sharp_contract(const MultiVectorField &pi, const DifferentialForm &xi);

/// pi(xi, eta) for a bivector pi and 1-forms xi, eta.
RingElement bivector_pairing(const MultiVectorField &pi, const DifferentialForm &xi,
                             const DifferentialForm &eta);

/// Coordinate vector field @name.
MultiVectorField coordinate_vector(const Chart &chart, std::string_view name);

} // namespace coiso
