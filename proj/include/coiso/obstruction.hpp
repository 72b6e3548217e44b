#pragma once

#include "coiso/linfty.hpp"
#include "coiso/symplectic_model.hpp"

#include <optional>
#include <string>

namespace coiso {

/// The torus example: C = T^4 with coordinates (y1, y2, q1, q2), E = R^2 with
/// fibre (p1, p2), Omega = dy1/\dy2 + dq1/\dp1 + dq2/\dp2.
struct T4Example {
    CoisoAlgebra algebra;
    DifferentialForm omega;
    SubbundleSpec leaf;
    /// (sin(2*pi*y1), sin(2*pi*y2))
    VerticalSection a;
};

T4Example build_T4_example();

/// beta = (sharp~*)^{-1}(P([[pi, a], a])); throws Error(NotClosed) unless
/// P([pi, a]) = 0 exactly.
DifferentialForm beta_of(const CoisoAlgebra &alg, const SubbundleSpec &leaf, const VerticalSection &a);

/// Integral of a top form in the given periodic directions over the unit
/// torus they span, as a function of the remaining coordinates.
RingElement fibre_torus_integral(const DifferentialForm &beta, const SubbundleSpec &torus);

/// Base directions paired with the fibre by a constant coefficient pi at the
/// zero section. Throws unless the chart is a product of periodic base
/// coordinates with a fibre block paired one-to-one with a block of them.
SubbundleSpec deduce_leaf(const CoisoAlgebra &alg);

enum class Verdict { Nonzero, Inconclusive };
const char *to_string(Verdict v);

struct ObstructionReport {
    bool closed = false;
    std::optional<VerticalSection> kuranishi;
    std::optional<DifferentialForm> beta;
    std::optional<RingElement> integral;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> leaf;
    std::string note;

    std::string to_text() const;
};

/// NONZERO when F(y) has a nonzero non-constant mode: a vanishing Kuranishi
/// class would force F to be constant. Never claims the class vanishes.
ObstructionReport obstructedness_certificate(const CoisoAlgebra &alg, const SubbundleSpec &leaf,
                                             const VerticalSection &a);
ObstructionReport obstructedness_certificate(const CoisoAlgebra &alg, const VerticalSection &a);

} // namespace coiso
