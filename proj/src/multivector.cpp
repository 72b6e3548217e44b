#include "coiso/multivector.hpp"

namespace coiso {

namespace {

WedgeMask fibre_mask(const ChartSpec &chart) {
    WedgeMask m = 0;
    for (std::size_t j = 0; j < chart.fibre_dim(); ++j)
        m |= direction_bit(chart.fibre_index(j));
    return m;
}

} // namespace

VerticalSection::VerticalSection(Chart chart, int degree) : field_(std::move(chart), degree) {}

VerticalSection::VerticalSection(MultiVectorField field) : field_(std::move(field)) {
    WedgeMask vertical = fibre_mask(*field_.chart());
    for (const auto &[m, c] : field_.terms()) {
        if (m & ~vertical)
            throw Error(ErrorCode::NotVertical, "section has a base direction");
        if (!c.is_base_only())
            throw Error(ErrorCode::NotVertical, "section coefficient depends on the fibre");
    }
}

VerticalSection VerticalSection::from_components(const Chart &chart,
                                                 const std::vector<RingElement> &components) {
    if (components.size() != chart->fibre_dim())
        throw Error(ErrorCode::DimensionMismatch, "section needs one component per fibre coordinate");
    MultiVectorField f(chart, 1);
    for (std::size_t j = 0; j < components.size(); ++j)
        f.add_term(direction_bit(chart->fibre_index(j)), components[j]);
    return VerticalSection(std::move(f));
}

std::vector<RingElement> VerticalSection::components() const {
    if (degree() != 1)
        throw Error(ErrorCode::WrongDegree, "components() needs a degree-1 section");
    std::vector<RingElement> out;
    for (std::size_t j = 0; j < chart()->fibre_dim(); ++j)
        out.push_back(field_.coefficient(direction_bit(chart()->fibre_index(j))));
    return out;
}

bool VerticalSection::is_real() const {
    for (const auto &[m, c] : field_.terms())
        if (!c.is_real())
            return false;
    return true;
}

std::string VerticalSection::to_string() const {
    if (degree() != 1)
        return field_.to_string();
    std::string out = "(";
    auto comps = components();
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (j)
            out += ", ";
        out += comps[j].without_jet_order().to_string();
    }
    return out + ")";
}

MultiVectorField schouten_bracket(const MultiVectorField &x, const MultiVectorField &y) {
    require_same_chart(x.chart(), y.chart());
    const Chart &chart = x.chart();
    MultiVectorField out(chart, std::max(x.degree() + y.degree() - 1, -1));
    out.limit_order(min_order(x.jet_order(), y.jet_order()));
    if (out.degree() < 0)
        return out;

    // derivatives are shared across many term pairs
    std::map<std::pair<WedgeMask, std::size_t>, RingElement> dx_cache, dy_cache;
    auto d = [&](auto &cache, WedgeMask m, const RingElement &c, std::size_t i) -> const RingElement & {
        auto key = std::make_pair(m, i);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, c.derivative(i)).first;
        return it->second;
    };

    for (const auto &[mx, cx] : x.terms()) {
        for (const auto &[my, cy] : y.terms()) {
            // (x d^R/dtheta_i)(dy/dx_i)
            for (WedgeMask rest = mx; rest; rest &= rest - 1) {
                std::size_t i = static_cast<std::size_t>(std::countr_zero(rest));
                WedgeMask left = mx & ~direction_bit(i);
                int s = right_extract_sign(mx, i) * wedge_sign(left, my);
                if (s == 0)
                    continue;
                const RingElement &dcy = d(dy_cache, my, cy, i);
                if (dcy.is_zero()) {
                    out.limit_order(dcy.jet_order());
                    continue;
                }
                RingElement c = cx * dcy;
                out.add_term(left | my, s > 0 ? c : -c);
            }
            // -(dx/dx_i)(d^L y/dtheta_i)
            for (WedgeMask rest = my; rest; rest &= rest - 1) {
                std::size_t i = static_cast<std::size_t>(std::countr_zero(rest));
                WedgeMask right = my & ~direction_bit(i);
                int s = left_extract_sign(my, i) * wedge_sign(mx, right);
                if (s == 0)
                    continue;
                const RingElement &dcx = d(dx_cache, mx, cx, i);
                if (dcx.is_zero()) {
                    out.limit_order(dcx.jet_order());
                    continue;
                }
                RingElement c = dcx * cy;
                out.add_term(mx | right, s > 0 ? -c : c);
            }
        }
    }
    return out;
}

VerticalSection projection_P(const MultiVectorField &x) {
    if (x.jet_order() && *x.jet_order() < 0)
        throw Error(ErrorCode::JetOrderTooSmall, "projection of a jet with no reliable terms");
    const Chart &chart = x.chart();
    WedgeMask vertical = fibre_mask(*chart);
    MultiVectorField out(chart, x.degree());
    for (const auto &[m, c] : x.terms())
        if (!(m & ~vertical))
            out.add_term(m, c.at_zero_section());
    return VerticalSection(std::move(out));
}

MultiVectorField fibre_translate_pushforward(const MultiVectorField &x, const VerticalSection &alpha) {
    require_same_chart(x.chart(), alpha.chart());
    if (alpha.degree() != 1)
        throw Error(ErrorCode::NotVertical, "translation needs a degree-1 vertical section");
    const Chart &chart = x.chart();
    auto comps = alpha.components();
    std::vector<RingElement> minus_alpha;
    for (const auto &c : comps)
        minus_alpha.push_back(-c);

    // images of the coordinate vector fields
    std::vector<MultiVectorField> image;
    for (std::size_t i = 0; i < chart->dim(); ++i) {
        MultiVectorField v(chart, 1);
        v.add_term(direction_bit(i), RingElement::constant(chart, Scalar(1)));
        if (!chart->is_fibre(i))
            for (std::size_t j = 0; j < chart->fibre_dim(); ++j)
                v.add_term(direction_bit(chart->fibre_index(j)), comps[j].derivative(i));
        image.push_back(std::move(v));
    }

    MultiVectorField out(chart, x.degree());
    out.limit_order(x.jet_order());
    for (const auto &[m, c] : x.terms()) {
        MultiVectorField term = MultiVectorField::function(taylor_shift(c, minus_alpha));
        for (WedgeMask rest = m; rest; rest &= rest - 1)
            term = wedge(term, image[static_cast<std::size_t>(std::countr_zero(rest))]);
        out += term;
    }
    return out;
}

int default_exp_ad_cap(const MultiVectorField &x) {
    return std::max(x.max_y_degree(), 0) + x.degree() + 2;
}

MultiVectorField exp_ad(const MultiVectorField &x, const VerticalSection &alpha, std::optional<int> cap) {
    require_same_chart(x.chart(), alpha.chart());
    int limit = cap.value_or(default_exp_ad_cap(x));
    if (limit <= 0)
        throw Error(ErrorCode::InvalidArgument, "exp_ad cap must be positive");
    MultiVectorField sum = x;
    MultiVectorField term = x;
    for (int k = 1;; ++k) {
        term = schouten_bracket(term, alpha.field()) * Scalar(mpq_class(1, k));
        if (term.jet_order() && *term.jet_order() < 0)
            return sum;
        if (term.is_zero())
            return sum;
        if (k > limit)
            throw Error(ErrorCode::CapExceeded,
                        "exp_ad did not terminate within " + std::to_string(limit) + " steps");
        sum += term;
    }
}

MultiVectorField interior(const DifferentialForm &xi, const MultiVectorField &x) {
    require_same_chart(xi.chart(), x.chart());
    if (xi.degree() != 1)
        throw Error(ErrorCode::WrongDegree, "interior product needs a 1-form");
    MultiVectorField out(x.chart(), x.degree() - 1);
    if (x.degree() < 1)
        return out;
    for (const auto &[mf, cf] : xi.terms()) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(mf));
        for (const auto &[m, c] : x.terms()) {
            if (!(m & mf))
                continue;
            RingElement v = cf * c;
            out.add_term(m & ~mf, left_extract_sign(m, i) > 0 ? v : -v);
        }
    }
    return out;
}

MultiVectorField sharp_contract(const MultiVectorField &pi, const DifferentialForm &xi) {
    if (pi.degree() != 2)
        throw Error(ErrorCode::WrongDegree, "sharp needs a bivector");
    return interior(xi, pi);
}

RingElement bivector_pairing(const MultiVectorField &pi, const DifferentialForm &xi,
                             const DifferentialForm &eta) {
    MultiVectorField f = interior(eta, sharp_contract(pi, xi));
    return f.coefficient(0);
}

MultiVectorField coordinate_vector(const Chart &chart, std::string_view name) {
    return MultiVectorField::basis(chart, std::vector<std::string>{std::string(name)});
}

} // namespace coiso
