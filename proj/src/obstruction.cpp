#include "coiso/obstruction.hpp"

namespace coiso {

T4Example build_T4_example() {
    Chart base = make_chart({{"y1", true}, {"y2", true}, {"q1", true}, {"q2", true}}, {});
    PresymplecticData data(DifferentialForm::basis(base, {"y1", "y2"}), SubbundleSpec(base, {"q1", "q2"}));
    LocalModel model = gotay_local_model(data);
    const Chart &chart = model.chart;
    auto pi = symplectic_to_poisson(model.omega, 1);
    auto a = VerticalSection::from_components(
        chart, {RingElement::sin_mode(chart, "y1"), RingElement::sin_mode(chart, "y2")});
    return T4Example{CoisoAlgebra(pi.pi), model.omega, SubbundleSpec(chart, {"q1", "q2"}), a};
}

DifferentialForm beta_of(const CoisoAlgebra &alg, const SubbundleSpec &leaf, const VerticalSection &a) {
    return musical_inverse_tilde(alg.pi(), leaf, kuranishi_rep(alg, a));
}

RingElement fibre_torus_integral(const DifferentialForm &beta, const SubbundleSpec &torus) {
    const Chart &chart = beta.chart();
    if (beta.degree() != static_cast<int>(torus.directions().size()))
        throw Error(ErrorCode::WrongDegree, "integrand must be a top form on the torus");
    for (std::size_t i : torus.directions())
        if (chart->kind(i) != CoordKind::Periodic)
            throw Error(ErrorCode::InvalidArgument, "torus direction " + chart->name(i) + " is not periodic");
    RingElement out(chart);
    for (const auto &[m, c] : beta.terms()) {
        if (m != torus.mask())
            throw Error(ErrorCode::WrongDegree, "integrand has a factor outside the torus");
        if (!c.is_base_only())
            throw Error(ErrorCode::NotVertical, "integrand depends on the fibre");
        RingElement::TermMap kept;
        for (const auto &[key, value] : c.terms()) {
            bool zero_mode = true;
            for (std::size_t i : torus.directions())
                zero_mode = zero_mode && key[chart->slot(i)] == 0;
            if (zero_mode)
                kept.emplace(key, value);
        }
        out += RingElement(chart, std::move(kept));
    }
    return out;
}

SubbundleSpec deduce_leaf(const CoisoAlgebra &alg) {
    const ChartSpec &chart = *alg.chart();
    for (std::size_t i = 0; i < chart.base_dim(); ++i)
        if (chart.kind(i) != CoordKind::Periodic)
            throw Error(ErrorCode::InvalidArgument, "obstruction certificate needs a periodic base");
    for (const auto &[m, c] : alg.pi().terms())
        if (!c.is_constant())
            throw Error(ErrorCode::InvalidArgument, "obstruction certificate needs a constant coefficient pi");
    std::vector<std::string> names;
    for (std::size_t j = 0; j < chart.fibre_dim(); ++j) {
        std::optional<std::size_t> partner;
        for (std::size_t i = 0; i < chart.base_dim(); ++i) {
            if (alg.pi().coefficient(direction_bit(i) | direction_bit(chart.fibre_index(j))).is_zero())
                continue;
            if (partner)
                throw Error(ErrorCode::InvalidArgument, "fibre coordinate " + chart.fibre()[j] +
                                                            " pairs with more than one base coordinate");
            partner = i;
        }
        if (!partner)
            throw Error(ErrorCode::Degenerate, "fibre coordinate " + chart.fibre()[j] + " is unpaired");
        names.push_back(chart.name(*partner));
    }
    return SubbundleSpec(alg.chart(), names);
}

const char *to_string(Verdict v) { return v == Verdict::Nonzero ? "NONZERO" : "INCONCLUSIVE"; }

ObstructionReport obstructedness_certificate(const CoisoAlgebra &alg, const SubbundleSpec &leaf,
                                             const VerticalSection &a) {
    ObstructionReport report;
    report.leaf = leaf.names();
    report.closed = projection_P(schouten_bracket(alg.pi(), a.field())).is_zero();
    if (!report.closed) {
        report.note = "section is not closed: P([pi, a]) != 0";
        return report;
    }
    report.kuranishi = kuranishi_rep(alg, a);
    report.beta = musical_inverse_tilde(alg.pi(), leaf, *report.kuranishi);
    report.integral = fibre_torus_integral(*report.beta, leaf);
    for (const auto &[key, value] : report.integral->terms()) {
        bool constant = true;
        for (int e : key)
            constant = constant && e == 0;
        if (!constant)
            report.verdict = Verdict::Nonzero;
    }
    report.note = report.verdict == Verdict::Nonzero ? "F is not constant, so the Kuranishi class is nonzero"
                                                     : "F is constant; the class is not decided";
    return report;
}

ObstructionReport obstructedness_certificate(const CoisoAlgebra &alg, const VerticalSection &a) {
    return obstructedness_certificate(alg, deduce_leaf(alg), a);
}

std::string ObstructionReport::to_text() const {
    std::string out = "closed: " + std::string(closed ? "yes" : "no") + "\n";
    if (kuranishi)
        out += "kuranishi: " + kuranishi->to_string() + "\n";
    if (beta)
        out += "beta: " + beta->to_string() + "\n";
    if (integral)
        out += "F: " + integral->to_string() + "\n";
    out += "verdict: " + std::string(coiso::to_string(verdict)) + "\n";
    return out;
}

} // namespace coiso
