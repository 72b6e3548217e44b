#pragma once

#include "coiso/forms.hpp"
#include "coiso/numeric.hpp"

#include <string>
#include <vector>

namespace coiso {

/// Presymplectic data on the base C: a closed 2-form with a coordinate kernel.
/// Throws Error(NotClosed) unless d omega = 0 and Error(KernelCheck) unless
/// every kernel direction contracts omega to zero.
class PresymplecticData {
  public:
    PresymplecticData(DifferentialForm omega, SubbundleSpec kernel);

    const Chart &chart() const { return omega_.chart(); }
    const DifferentialForm &omega() const { return omega_; }
    const SubbundleSpec &kernel() const { return kernel_; }

  private:
    DifferentialForm omega_;
    SubbundleSpec kernel_;
};

struct LocalModel {
    Chart chart;
    DifferentialForm omega;
};

/// Fibre coordinate dual to a kernel direction: q... -> p..., otherwise p_<name>.
std::string dual_fibre_name(const std::string &name);

/// Gotay local model on E* = F*: Omega = pr^* omega_C + sum_j dq_j /\ dp_j.
LocalModel gotay_local_model(const PresymplecticData &data);

/// M(l) = A + sum_k l_k B_k over exact scalars.
struct AffinePencil {
    ScalarMatrix a;
    std::vector<ScalarMatrix> b;
    std::vector<std::string> labels;

    /// Defaults labels to l1, l2, ... when empty; checks shapes.
    void validate();
    /// Chart whose fibre coordinates are the labels.
    Chart label_chart() const;
    RingMatrix matrix() const;
};

/// Blocks of whitespace-separated rationals separated by blank lines; the
/// first block is A, the rest are B_1, B_2, ...
AffinePencil parse_pencil(const std::string &text);

/// sum_{r=0}^{N} (-sum_k l_k A^{-1} B_k)^r A^{-1} as jets of order N.
/// Throws Error(Degenerate) when A is singular.
RingMatrix invert_affine_pencil(const AffinePencil &pencil, int order);

struct PoissonFromSymplectic {
    MultiVectorField pi;
    /// Exact inverse (true) or order-N jet (false).
    bool exact = true;
    /// [pi, pi] = 0 exactly, or through the reliable jet order.
    bool jacobi_holds = false;
};

/// pi = -(matrix of Omega)^{-1}. Omega must lie in Omega_(<=1); its matrix at
/// y = 0 must be exactly invertible. The inverse is exact when the fibre
/// perturbation is nilpotent, otherwise a jet of order N.
PoissonFromSymplectic symplectic_to_poisson(const DifferentialForm &omega, int order);

/// Point evaluation of -(matrix of Omega)^{-1}, for use as an exact oracle.
NumericBivector numeric_poisson(const DifferentialForm &omega);

} // namespace coiso
