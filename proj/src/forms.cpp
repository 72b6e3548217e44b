#include "coiso/forms.hpp"

namespace coiso {

SubbundleSpec::SubbundleSpec(const Chart &chart, std::vector<std::string> names)
    : names_(std::move(names)) {
    if (names_.empty())
        throw Error(ErrorCode::InvalidArgument, "subbundle needs at least one direction");
    for (const auto &n : names_) {
        std::size_t i = chart->index_of(n);
        if (chart->is_fibre(i))
            throw Error(ErrorCode::InvalidArgument,
                        "non-adapted subbundle: '" + n + "' is not a base direction");
        if (mask_ & direction_bit(i))
            throw Error(ErrorCode::InvalidArgument, "repeated subbundle direction '" + n + "'");
        directions_.push_back(i);
        mask_ |= direction_bit(i);
    }
}

DifferentialForm coordinate_differential(const Chart &chart, std::string_view name) {
    return DifferentialForm::basis(chart, std::vector<std::string>{std::string(name)});
}

namespace {

DifferentialForm d_along(const DifferentialForm &omega, WedgeMask directions) {
    const Chart &chart = omega.chart();
    DifferentialForm out(chart, omega.degree() + 1);
    out.limit_order(omega.jet_order());
    for (const auto &[m, c] : omega.terms()) {
        for (std::size_t i = 0; i < chart->dim(); ++i) {
            if (!(directions & direction_bit(i)))
                continue;
            int s = wedge_sign(direction_bit(i), m);
            if (s == 0)
                continue;
            RingElement dc = c.derivative(i);
            out.limit_order(dc.jet_order());
            out.add_term(m | direction_bit(i), s > 0 ? dc : -dc);
        }
    }
    return out;
}

WedgeMask all_directions(const ChartSpec &chart) {
    return chart.dim() == 64 ? ~WedgeMask{0} : direction_bit(chart.dim()) - 1;
}

WedgeMask fibre_directions(const ChartSpec &chart) {
    WedgeMask m = 0;
    for (std::size_t j = 0; j < chart.fibre_dim(); ++j)
        m |= direction_bit(chart.fibre_index(j));
    return m;
}

} // namespace

DifferentialForm de_rham_d(const DifferentialForm &omega) {
    return d_along(omega, all_directions(*omega.chart()));
}

std::set<int> fibrewise_degree_classify(const DifferentialForm &omega) {
    std::set<int> out;
    WedgeMask fibre = fibre_directions(*omega.chart());
    for (const auto &[m, c] : omega.terms()) {
        int dy = std::popcount(m & fibre);
        for (const auto &[key, value] : c.terms())
            out.insert(c.y_degree(key) + dy);
    }
    return out;
}

bool is_in_omega_le(const DifferentialForm &omega, int k) {
    auto degrees = fibrewise_degree_classify(omega);
    return degrees.empty() || *degrees.rbegin() <= k;
}

DifferentialForm pullback_zero_section(const DifferentialForm &omega) {
    WedgeMask fibre = fibre_directions(*omega.chart());
    DifferentialForm out(omega.chart(), omega.degree());
    for (const auto &[m, c] : omega.terms())
        if (!(m & fibre))
            out.add_term(m, c.at_zero_section());
    return out;
}

DifferentialForm leafwise_d(const DifferentialForm &omega, const SubbundleSpec &leaf) {
    for (const auto &[m, c] : omega.terms()) {
        if (m & ~leaf.mask())
            throw Error(ErrorCode::InvalidArgument, "leafwise differential of a form with non-leaf factors");
        if (!c.is_base_only())
            throw Error(ErrorCode::InvalidArgument, "leafwise differential needs base-only coefficients");
    }
    return d_along(omega, leaf.mask());
}

DifferentialForm interior_coordinate(std::size_t i, const DifferentialForm &omega) {
    DifferentialForm out(omega.chart(), std::max(omega.degree() - 1, -1));
    if (omega.degree() < 1)
        return out;
    for (const auto &[m, c] : omega.terms()) {
        if (!(m & direction_bit(i)))
            continue;
        out.add_term(m & ~direction_bit(i), left_extract_sign(m, i) > 0 ? c : -c);
    }
    return out;
}

namespace {

template <class Tag> RingMatrix matrix_of(const Exterior<Tag> &x) {
    if (x.degree() != 2)
        throw Error(ErrorCode::WrongDegree, "coefficient matrix needs degree 2");
    std::size_t n = x.chart()->dim();
    RingMatrix m(x.chart(), n, n);
    for (const auto &[mask, c] : x.terms()) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(mask));
        std::size_t j = static_cast<std::size_t>(63 - std::countl_zero(mask));
        m(i, j) = c;
        m(j, i) = -c;
    }
    return m;
}

template <class Tag> Exterior<Tag> from_matrix(const RingMatrix &m) {
    Exterior<Tag> out(m.chart(), 2);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            out.limit_order(m(i, j).jet_order());
            out.add_term(direction_bit(i) | direction_bit(j), m(i, j));
        }
    return out;
}

} // namespace

RingMatrix bivector_matrix(const MultiVectorField &pi) { return matrix_of(pi); }
RingMatrix form_matrix(const DifferentialForm &omega) { return matrix_of(omega); }
MultiVectorField bivector_from_matrix(const RingMatrix &m) { return from_matrix<VectorTag>(m); }
DifferentialForm form_from_matrix(const RingMatrix &m) { return from_matrix<FormTag>(m); }

MultiVectorField sharp_star(const MultiVectorField &pi, const DifferentialForm &omega) {
    require_same_chart(pi.chart(), omega.chart());
    const Chart &chart = pi.chart();
    RingMatrix pm = bivector_matrix(pi);
    std::vector<MultiVectorField> image;
    for (std::size_t i = 0; i < chart->dim(); ++i) {
        MultiVectorField v(chart, 1);
        for (std::size_t j = 0; j < chart->dim(); ++j)
            v.add_term(direction_bit(j), pm(j, i));
        image.push_back(std::move(v));
    }
    MultiVectorField out(chart, omega.degree());
    for (const auto &[m, c] : omega.terms()) {
        MultiVectorField term = MultiVectorField::function(c);
        for (WedgeMask rest = m; rest; rest &= rest - 1)
            term = wedge(term, image[static_cast<std::size_t>(std::countr_zero(rest))]);
        out += term;
    }
    return out;
}

DifferentialForm musical_inverse(const MultiVectorField &pi, const MultiVectorField &z) {
    require_same_chart(pi.chart(), z.chart());
    const Chart &chart = pi.chart();
    auto inv = invert_exact(bivector_matrix(pi));
    if (!inv)
        throw Error(ErrorCode::Degenerate, "bivector is not invertible over the ring");
    std::vector<DifferentialForm> image;
    for (std::size_t j = 0; j < chart->dim(); ++j) {
        DifferentialForm f(chart, 1);
        for (std::size_t i = 0; i < chart->dim(); ++i)
            f.add_term(direction_bit(i), (*inv)(i, j));
        image.push_back(std::move(f));
    }
    DifferentialForm out(chart, z.degree());
    for (const auto &[m, c] : z.terms()) {
        DifferentialForm term = DifferentialForm::function(c);
        for (WedgeMask rest = m; rest; rest &= rest - 1)
            term = wedge(term, image[static_cast<std::size_t>(std::countr_zero(rest))]);
        out += term;
    }
    return out;
}

DifferentialForm restrict_to_leaves(const DifferentialForm &omega, const SubbundleSpec &leaf) {
    DifferentialForm out(omega.chart(), omega.degree());
    for (const auto &[m, c] : omega.terms())
        if (!(m & ~leaf.mask()))
            out.add_term(m, c.at_zero_section());
    return out;
}

namespace {

// N(b, a) = pi(dy_b, dx_{F_a}) at y = 0.
RingMatrix leaf_pairing(const MultiVectorField &pi, const SubbundleSpec &leaf) {
    const Chart &chart = pi.chart();
    RingMatrix pm = bivector_matrix(pi);
    RingMatrix n(chart, chart->fibre_dim(), leaf.directions().size());
    for (std::size_t b = 0; b < chart->fibre_dim(); ++b)
        for (std::size_t a = 0; a < leaf.directions().size(); ++a)
            n(b, a) = pm(chart->fibre_index(b), leaf.directions()[a]).at_zero_section();
    return n;
}

} // namespace

VerticalSection sharp_tilde_star(const MultiVectorField &pi, const SubbundleSpec &leaf,
                                 const DifferentialForm &beta) {
    require_same_chart(pi.chart(), beta.chart());
    const Chart &chart = pi.chart();
    RingMatrix n = leaf_pairing(pi, leaf);
    std::vector<MultiVectorField> image(chart->dim(), MultiVectorField(chart, 1));
    for (std::size_t a = 0; a < leaf.directions().size(); ++a)
        for (std::size_t b = 0; b < chart->fibre_dim(); ++b)
            image[leaf.directions()[a]].add_term(direction_bit(chart->fibre_index(b)), n(b, a));
    MultiVectorField out(chart, beta.degree());
    for (const auto &[m, c] : beta.terms()) {
        if (m & ~leaf.mask())
            throw Error(ErrorCode::InvalidArgument, "form has factors outside the leaf directions");
        if (!c.is_base_only())
            throw Error(ErrorCode::InvalidArgument, "form coefficient depends on the fibre");
        MultiVectorField term = MultiVectorField::function(c);
        for (WedgeMask rest = m; rest; rest &= rest - 1)
            term = wedge(term, image[static_cast<std::size_t>(std::countr_zero(rest))]);
        out += term;
    }
    return VerticalSection(std::move(out));
}

DifferentialForm musical_inverse_tilde(const MultiVectorField &pi, const SubbundleSpec &leaf,
                                       const VerticalSection &a) {
    require_same_chart(pi.chart(), a.chart());
    const Chart &chart = pi.chart();
    if (leaf.directions().size() != chart->fibre_dim())
        throw Error(ErrorCode::DimensionMismatch, "leaf rank differs from fibre rank");
    auto inv = invert_exact(leaf_pairing(pi, leaf));
    if (!inv)
        throw Error(ErrorCode::Degenerate, "restricted anchor is not invertible");
    std::vector<DifferentialForm> image;
    for (std::size_t b = 0; b < chart->fibre_dim(); ++b) {
        DifferentialForm f(chart, 1);
        for (std::size_t k = 0; k < leaf.directions().size(); ++k)
            f.add_term(direction_bit(leaf.directions()[k]), (*inv)(k, b));
        image.push_back(std::move(f));
    }
    DifferentialForm out(chart, a.degree());
    for (const auto &[m, c] : a.field().terms()) {
        DifferentialForm term = DifferentialForm::function(c);
        for (WedgeMask rest = m; rest; rest &= rest - 1)
            term = wedge(term, image[static_cast<std::size_t>(std::countr_zero(rest)) - chart->base_dim()]);
        out += term;
    }
    return out;
}

} // namespace coiso
