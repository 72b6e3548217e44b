#pragma once

#include "coiso/matrix.hpp"
#include "coiso/multivector.hpp"

#include <set>
#include <string>
#include <vector>

namespace coiso {

/// A subbundle F of TC spanned by coordinate directions of the base.
class SubbundleSpec {
  public:
    SubbundleSpec(const Chart &chart, std::vector<std::string> names);

    const std::vector<std::size_t> &directions() const { return directions_; }
    const std::vector<std::string> &names() const { return names_; }
    WedgeMask mask() const { return mask_; }
    bool contains(std::size_t i) const { return (mask_ & direction_bit(i)) != 0; }

  private:
    std::vector<std::string> names_;
    std::vector<std::size_t> directions_;
    WedgeMask mask_ = 0;
};

/// Coordinate differential d<name>.
DifferentialForm coordinate_differential(const Chart &chart, std::string_view name);

DifferentialForm de_rham_d(const DifferentialForm &omega);

/// Fibrewise degrees (y-degree of the coefficient monomial plus number of dy
/// factors) occurring in omega.
std::set<int> fibrewise_degree_classify(const DifferentialForm &omega);
bool is_in_omega_le(const DifferentialForm &omega, int k);

/// Sets y = 0 and dy = 0.
DifferentialForm pullback_zero_section(const DifferentialForm &omega);

/// Exterior derivative taken only along F. omega must have only dF factors
/// and base-only coefficients.
DifferentialForm leafwise_d(const DifferentialForm &omega, const SubbundleSpec &leaf);

/// Interior product of the coordinate vector field @x_i into omega.
DifferentialForm interior_coordinate(std::size_t i, const DifferentialForm &omega);

/// Antisymmetric coefficient matrix pi^{ij} = pi(dx_i, dx_j) of a bivector.
RingMatrix bivector_matrix(const MultiVectorField &pi);
/// Antisymmetric coefficient matrix w_ij = omega(@x_i, @x_j) of a 2-form.
RingMatrix form_matrix(const DifferentialForm &omega);
MultiVectorField bivector_from_matrix(const RingMatrix &m);
DifferentialForm form_from_matrix(const RingMatrix &m);

/// The algebra map induced by dx_i -> pi(., dx_i).
MultiVectorField sharp_star(const MultiVectorField &pi, const DifferentialForm &omega);
/// Inverse of sharp_star; throws Error(Degenerate) unless pi's matrix is
/// exactly invertible over the ring.
DifferentialForm musical_inverse(const MultiVectorField &pi, const MultiVectorField &z);

/// Pullback along the inclusion of F over the zero section: keeps dF-only
/// terms and restricts coefficients to y = 0.
DifferentialForm restrict_to_leaves(const DifferentialForm &omega, const SubbundleSpec &leaf);
/// Restriction of sharp_star to Gamma(wedge F*) -> Gamma(wedge E), built from
/// the pairing between the fibre directions and F at y = 0.
VerticalSection sharp_tilde_star(const MultiVectorField &pi, const SubbundleSpec &leaf,
                                 const DifferentialForm &beta);
DifferentialForm musical_inverse_tilde(const MultiVectorField &pi, const SubbundleSpec &leaf,
                                       const VerticalSection &a);

} // namespace coiso
