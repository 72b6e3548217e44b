#include "coiso/symplectic_model.hpp"

#include <sstream>

namespace coiso {

PresymplecticData::PresymplecticData(DifferentialForm omega, SubbundleSpec kernel)
    : omega_(std::move(omega)), kernel_(std::move(kernel)) {
    if (omega_.degree() != 2)
        throw Error(ErrorCode::WrongDegree, "presymplectic form must have degree 2");
    if (omega_.chart()->fibre_dim() != 0)
        throw Error(ErrorCode::InvalidArgument, "presymplectic data lives on a base chart without fibre");
    if (!de_rham_d(omega_).is_zero())
        throw Error(ErrorCode::NotClosed, "presymplectic form is not closed");
    for (std::size_t i : kernel_.directions())
        if (!interior_coordinate(i, omega_).is_zero())
            throw Error(ErrorCode::KernelCheck,
                        "@" + omega_.chart()->name(i) + " is not in the kernel of the form");
}

std::string dual_fibre_name(const std::string &name) {
    if (!name.empty() && name.front() == 'q')
        return "p" + name.substr(1);
    return "p_" + name;
}

LocalModel gotay_local_model(const PresymplecticData &data) {
    const ChartSpec &base = *data.chart();
    std::vector<std::string> fibre;
    for (const auto &n : data.kernel().names())
        fibre.push_back(dual_fibre_name(n));
    Chart chart = make_chart(base.base(), fibre);

    DifferentialForm omega = transport(data.omega(), chart);
    for (std::size_t j = 0; j < fibre.size(); ++j)
        omega += DifferentialForm::basis(chart, {data.kernel().names()[j], fibre[j]});

    if (!(pullback_zero_section(omega) == transport(data.omega(), chart)) || !is_in_omega_le(omega, 1))
        throw Error(ErrorCode::InvalidArgument, "local model failed its postconditions");
    return {chart, omega};
}

void AffinePencil::validate() {
    std::size_t n = a.size();
    if (n == 0)
        throw Error(ErrorCode::DimensionMismatch, "empty pencil");
    auto square = [n](const ScalarMatrix &m) {
        if (m.size() != n)
            return false;
        for (const auto &row : m)
            if (row.size() != n)
                return false;
        return true;
    };
    if (!square(a))
        throw Error(ErrorCode::DimensionMismatch, "A must be square");
    for (const auto &m : b)
        if (!square(m))
            throw Error(ErrorCode::DimensionMismatch, "every B_k must match the shape of A");
    if (labels.empty())
        for (std::size_t k = 0; k < b.size(); ++k)
            labels.push_back("l" + std::to_string(k + 1));
    if (labels.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "one label per B_k");
}

Chart AffinePencil::label_chart() const { return make_chart({}, labels); }

RingMatrix AffinePencil::matrix() const {
    Chart chart = label_chart();
    RingMatrix m = RingMatrix::from_scalars(chart, a);
    for (std::size_t k = 0; k < b.size(); ++k)
        m = m + RingElement::coordinate(chart, labels[k]) * RingMatrix::from_scalars(chart, b[k]);
    return m;
}

AffinePencil parse_pencil(const std::string &text) {
    std::vector<ScalarMatrix> blocks;
    ScalarMatrix current;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto flush = [&] {
        if (!current.empty())
            blocks.push_back(std::move(current));
        current.clear();
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        std::string token;
        std::vector<Scalar> values;
        while (row >> token) {
            mpq_class q;
            if (q.set_str(token, 10) != 0)
                throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad rational '" + token + "'");
            q.canonicalize();
            values.push_back(Scalar(q));
        }
        if (values.empty()) {
            flush();
        } else {
            if (!current.empty() && values.size() != current.front().size())
                throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected " +
                                                  std::to_string(current.front().size()) + " entries, got " +
                                                  std::to_string(values.size()));
            current.push_back(std::move(values));
        }
    }
    flush();
    if (blocks.empty())
        throw Error(ErrorCode::Parse, "pencil file has no matrices");
    AffinePencil p;
    p.a = blocks.front();
    p.b.assign(blocks.begin() + 1, blocks.end());
    p.validate();
    return p;
}

RingMatrix invert_affine_pencil(const AffinePencil &pencil, int order) {
    if (order < 0)
        throw Error(ErrorCode::InvalidArgument, "truncation order must be nonnegative");
    AffinePencil p = pencil;
    p.validate();
    auto a_inv = invert(p.a);
    if (!a_inv)
        throw Error(ErrorCode::Degenerate, "A is singular");
    Chart chart = p.label_chart();
    RingMatrix base_inv = RingMatrix::from_scalars(chart, *a_inv).truncated(order);
    RingMatrix step(chart, p.a.size(), p.a.size());
    step = step.truncated(order);
    for (std::size_t k = 0; k < p.b.size(); ++k)
        step = step - RingElement::coordinate(chart, p.labels[k]) *
                          RingMatrix::from_scalars(chart, multiply(*a_inv, p.b[k]));
    RingMatrix sum = base_inv;
    RingMatrix term = base_inv;
    for (int r = 1; r <= order; ++r) {
        term = step * term;
        sum = sum + term;
    }
    return sum;
}

PoissonFromSymplectic symplectic_to_poisson(const DifferentialForm &omega, int order) {
    if (omega.degree() != 2)
        throw Error(ErrorCode::WrongDegree, "symplectic form must have degree 2");
    if (!is_in_omega_le(omega, 1))
        throw Error(ErrorCode::NonAffine, "form is not fibrewise affine");
    if (order < 1)
        throw Error(ErrorCode::InvalidArgument, "truncation order must be positive");
    const Chart &chart = omega.chart();
    RingMatrix m = form_matrix(omega);
    std::size_t n = m.rows();

    RingMatrix at_zero(chart, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            at_zero(i, j) = m(i, j).at_zero_section();
    auto a_inv = invert_exact(at_zero);
    if (!a_inv)
        throw Error(ErrorCode::Degenerate, "form matrix at the zero section is not exactly invertible");

    PoissonFromSymplectic out{MultiVectorField(chart, 2)};
    if (auto inv = invert_exact(m)) {
        out.pi = bivector_from_matrix(Scalar(-1) * *inv);
        out.exact = true;
    } else {
        RingMatrix base_inv = a_inv->truncated(order);
        RingMatrix step = Scalar(-1) * (base_inv * (m - at_zero));
        RingMatrix sum = base_inv;
        RingMatrix term = base_inv;
        for (int r = 1; r <= order; ++r) {
            term = step * term;
            sum = sum + term;
        }
        out.pi = bivector_from_matrix(Scalar(-1) * sum);
        out.exact = false;
    }
    out.jacobi_holds = schouten_bracket(out.pi, out.pi).is_zero();
    return out;
}

NumericBivector numeric_poisson(const DifferentialForm &omega) {
    RingMatrix m = form_matrix(omega);
    return [m](std::span<const double> point) -> ComplexMatrix {
        return -evaluate_matrix(m, point).inverse();
    };
}

} // namespace coiso
