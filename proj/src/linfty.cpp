#include "coiso/linfty.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <tuple>

namespace coiso {

namespace {

std::string format_double(double v, const char *fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::vector<std::pair<std::size_t, std::size_t>> fibre_pairs(const ChartSpec &chart) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 0; j < chart.fibre_dim(); ++j)
        for (std::size_t k = j + 1; k < chart.fibre_dim(); ++k)
            out.push_back({chart.fibre_index(j), chart.fibre_index(k)});
    return out;
}

// Rows xi_j = dy_j + sum_i (d alpha_j / dx_i) dx_i, as a function of the point.
std::function<ComplexMatrix(std::span<const double>)> graph_jacobian(const VerticalSection &alpha) {
    const ChartSpec &chart = *alpha.chart();
    auto comps = alpha.components();
    std::vector<std::tuple<Eigen::Index, Eigen::Index, RingElement>> entries;
    for (std::size_t r = 0; r < chart.fibre_dim(); ++r)
        for (std::size_t i = 0; i < chart.base_dim(); ++i) {
            RingElement d = comps[r].derivative(i).without_jet_order();
            if (!d.is_zero())
                entries.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i), std::move(d));
        }
    auto rows = static_cast<Eigen::Index>(chart.fibre_dim());
    auto cols = static_cast<Eigen::Index>(chart.dim());
    auto base = static_cast<Eigen::Index>(chart.base_dim());
    return [entries, rows, cols, base](std::span<const double> point) {
        ComplexMatrix j = ComplexMatrix::Zero(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            j(r, base + r) = 1.0;
        for (const auto &[r, i, d] : entries)
            j(r, i) = d.evaluate(point);
        return j;
    };
}

VerticalSection iterated_projection(MultiVectorField x, std::span<const VerticalSection> inputs) {
    for (const auto &a : inputs) {
        require_same_chart(x.chart(), a.chart());
        x = schouten_bracket(x, a.field());
    }
    return projection_P(x);
}

void check_domain(const CoisoAlgebra &alg, const VerticalSection &alpha, const McOptions &options) {
    auto bound = alg.chart()->domain_bound();
    if (!bound)
        return;
    auto grid = sample_grid(*alg.chart(), options.samples, options.seed);
    double sup = sup_fibre_norm(alpha, grid);
    if (sup > *bound)
        throw Error(ErrorCode::DomainViolation, "graph(-alpha) leaves the domain: sup |alpha| = " +
                                                    format_double(sup, "%.6g") + " > " +
                                                    format_double(*bound, "%.6g"));
}

} // namespace

CoisoAlgebra::CoisoAlgebra(MultiVectorField pi, std::optional<NumericBivector> exact_numeric)
    : pi_(std::move(pi)) {
    if (pi_.degree() != 2)
        throw Error(ErrorCode::WrongDegree, "Poisson structure must be a bivector");
    if (!projection_P(pi_).is_zero())
        throw Error(ErrorCode::InvalidArgument, "zero section is not coisotropic: P(pi) != 0");
    poisson_ = schouten_bracket(pi_, pi_).is_zero();
    numeric_ = exact_numeric ? std::move(*exact_numeric) : numeric_bivector(pi_);
}

VerticalSection lambda_n(const CoisoAlgebra &alg, std::span<const VerticalSection> inputs) {
    return iterated_projection(alg.pi(), inputs);
}

VerticalSection mc_series_exact(const CoisoAlgebra &alg, const VerticalSection &alpha, const McOptions &options) {
    require_same_chart(alg.chart(), alpha.chart());
    if (alpha.degree() != 1)
        throw Error(ErrorCode::WrongDegree, "Maurer-Cartan input must be a degree-1 section");
    check_domain(alg, alpha, options);
    int cap = options.cap.value_or(default_exp_ad_cap(alg.pi()));
    VerticalSection sum(alg.chart(), 2);
    MultiVectorField term = alg.pi();
    mpq_class factorial = 1;
    for (int k = 1;; ++k) {
        term = schouten_bracket(term, alpha.field());
        if (term.jet_order() && *term.jet_order() < 0)
            return sum;
        if (term.is_zero())
            return sum;
        if (k > cap)
            throw Error(ErrorCode::CapExceeded,
                        "Maurer-Cartan series did not terminate within " + std::to_string(cap) + " terms");
        factorial *= k;
        sum = sum + Scalar(mpq_class(1) / factorial) * projection_P(term);
    }
}

VerticalSection mc_pushforward_oracle(const CoisoAlgebra &alg, const VerticalSection &alpha) {
    return projection_P(fibre_translate_pushforward(alg.pi(), alpha));
}

std::string ConvergenceTable::to_csv() const {
    std::string out;
    auto header = [&](const std::string &s) {
        if (!out.empty())
            out += ',';
        out += s;
    };
    for (const auto &c : coordinates)
        header(c);
    header("n");
    for (const auto &c : components)
        header("beta_" + c);
    for (const auto &c : components)
        header("oracle_" + c);
    header("abs_error");
    out += '\n';
    for (const auto &r : rows) {
        std::string line;
        for (double x : r.point)
            line += format_double(x, "%.6f") + ",";
        line += std::to_string(r.n);
        for (const auto &v : r.partial_sum)
            line += "," + format_double(v.real(), "%.15e");
        for (const auto &v : r.oracle)
            line += "," + format_double(v.real(), "%.15e");
        line += "," + format_double(r.abs_error, "%.3e");
        out += line + '\n';
    }
    return out;
}

double ConvergenceTable::max_error_at(int n) const {
    double m = 0.0;
    for (const auto &r : rows)
        if (r.n == n)
            m = std::max(m, r.abs_error);
    return m;
}

ConvergenceTable mc_partial_table(const CoisoAlgebra &alg, const VerticalSection &alpha, int max_order,
                                  std::span<const BasePoint> points) {
    require_same_chart(alg.chart(), alpha.chart());
    if (max_order < 1)
        throw Error(ErrorCode::InvalidArgument, "table order must be at least 1");
    if (alg.pi().jet_order() && *alg.pi().jet_order() < max_order)
        throw Error(ErrorCode::JetOrderTooSmall, "jet order " + std::to_string(*alg.pi().jet_order()) +
                                                     " is below the requested order " +
                                                     std::to_string(max_order));
    const ChartSpec &chart = *alg.chart();
    auto pairs = fibre_pairs(chart);

    ConvergenceTable table;
    for (std::size_t i = 0; i < chart.base_dim(); ++i)
        table.coordinates.push_back(chart.name(i));
    for (auto [i, j] : pairs)
        table.components.push_back(chart.name(i) + "_" + chart.name(j));

    // lambda_k(alpha^k) / k! as exact sections
    std::vector<VerticalSection> contributions;
    MultiVectorField term = alg.pi();
    mpq_class factorial = 1;
    for (int k = 1; k <= max_order; ++k) {
        term = schouten_bracket(term, alpha.field());
        factorial *= k;
        contributions.push_back(Scalar(mpq_class(1) / factorial) * projection_P(term));
    }

    auto jacobian = graph_jacobian(alpha);
    for (const auto &p : points) {
        if (p.size() != chart.base_dim())
            throw Error(ErrorCode::DimensionMismatch, "sample point has the wrong dimension");
        auto at_zero = chart_point(p, std::vector<double>(chart.fibre_dim(), 0.0));
        auto on_graph = chart_point(p, graph_fibre_point(alpha, p));
        ComplexMatrix jac = jacobian(at_zero);
        ComplexMatrix pushed = jac * alg.numeric_pi()(on_graph) * jac.transpose();
        std::vector<std::complex<double>> oracle;
        for (auto [i, j] : pairs)
            oracle.push_back(pushed(static_cast<Eigen::Index>(i - chart.base_dim()),
                                    static_cast<Eigen::Index>(j - chart.base_dim())));

        std::vector<std::complex<double>> partial(pairs.size(), 0.0);
        for (int n = 1; n <= max_order; ++n) {
            const auto &c = contributions[static_cast<std::size_t>(n - 1)].field();
            ConvergenceRow row;
            row.point = p;
            row.n = n;
            for (std::size_t q = 0; q < pairs.size(); ++q) {
                WedgeMask m = direction_bit(pairs[q].first) | direction_bit(pairs[q].second);
                partial[q] += c.coefficient(m).evaluate(at_zero);
                row.abs_error = std::max(row.abs_error, std::abs(partial[q] - oracle[q]));
            }
            row.partial_sum = partial;
            row.oracle = oracle;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

namespace {

CoisotropyResult coisotropy_check_impl(const ChartSpec &chart, const NumericBivector &pi,
                                       const VerticalSection &alpha, std::span<const BasePoint> points) {
    CoisotropyResult result;
    auto conormal = graph_jacobian(alpha);
    for (const auto &p : points) {
        if (p.size() != chart.base_dim())
            throw Error(ErrorCode::DimensionMismatch, "sample point has the wrong dimension");
        auto at_zero = chart_point(p, std::vector<double>(chart.fibre_dim(), 0.0));
        auto on_graph = chart_point(p, graph_fibre_point(alpha, p));
        ComplexMatrix xi = conormal(at_zero);
        ComplexMatrix m = pi(on_graph);
        ComplexMatrix defect = xi * m * xi.transpose();
        if (defect.size() > 0)
            result.max_defect = std::max(result.max_defect, defect.cwiseAbs().maxCoeff());
    }
    result.coisotropic = result.max_defect <= kCoisotropyTolerance;
    return result;
}

} // namespace

CoisotropyResult coisotropy_check_numeric(const MultiVectorField &pi, const VerticalSection &alpha,
                                          std::span<const BasePoint> points) {
    require_same_chart(pi.chart(), alpha.chart());
    return coisotropy_check_impl(*pi.chart(), numeric_bivector(pi), alpha, points);
}

CoisotropyResult coisotropy_check_numeric(const CoisoAlgebra &alg, const VerticalSection &alpha,
                                          std::span<const BasePoint> points) {
    require_same_chart(alg.chart(), alpha.chart());
    return coisotropy_check_impl(*alg.chart(), alg.numeric_pi(), alpha, points);
}

TwistedElement::TwistedElement(MultiVectorField x, VerticalSection a) : x_(std::move(x)), a_(std::move(a)) {
    require_same_chart(x_.chart(), a_.chart());
    if (x_.degree() - 2 != a_.degree() - 1 && !x_.is_zero() && !a_.is_zero())
        throw Error(ErrorCode::WrongDegree, "twisted element components have mismatched degrees");
    if (x_.is_zero() && !a_.is_zero())
        x_ = MultiVectorField(x_.chart(), std::max(a_.degree() + 1, -1));
    if (a_.is_zero() && !x_.is_zero())
        a_ = VerticalSection(a_.chart(), std::max(x_.degree() - 1, -1));
}

TwistedElement TwistedElement::zero(const Chart &chart, int degree) {
    return TwistedElement(MultiVectorField(chart, std::max(degree + 2, -1)),
                          VerticalSection(chart, std::max(degree + 1, -1)));
}

TwistedElement TwistedElement::multivector(const MultiVectorField &x) {
    return TwistedElement(x, VerticalSection(x.chart(), std::max(x.degree() - 1, -1)));
}

TwistedElement TwistedElement::section(const VerticalSection &a) {
    return TwistedElement(MultiVectorField(a.chart(), a.degree() + 1), a);
}

TwistedElement operator+(const TwistedElement &u, const TwistedElement &v) {
    return TwistedElement(u.x_ + v.x_, u.a_ + v.a_);
}

TwistedElement operator*(const Scalar &s, const TwistedElement &v) {
    return TwistedElement(s * v.x_, s * v.a_);
}

std::string TwistedElement::to_string() const {
    return "(" + x_.to_string() + ", " + a_.field().to_string() + ")";
}

TwistedElement twisted_lambda(const CoisoAlgebra &alg, std::span<const TwistedElement> inputs) {
    const Chart &chart = alg.chart();
    int total = 0;
    for (const auto &v : inputs) {
        require_same_chart(chart, v.chart());
        total += v.degree();
    }
    TwistedElement out = TwistedElement::zero(chart, total + 1);
    std::size_t n = inputs.size();
    if (n == 0)
        return out;

    // all section slots
    {
        std::vector<VerticalSection> as;
        for (const auto &v : inputs)
            as.push_back(v.a());
        bool any_zero = false;
        for (const auto &a : as)
            any_zero = any_zero || a.is_zero();
        if (!any_zero)
            out = out + TwistedElement::section(iterated_projection(alg.pi(), as));
    }

    // one multivector slot, moved to the front
    for (std::size_t s = 0; s < n; ++s) {
        const auto &x = inputs[s].x();
        if (x.is_zero())
            continue;
        std::vector<VerticalSection> as;
        bool any_zero = false;
        int before = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == s)
                continue;
            if (k < s)
                before += inputs[k].degree();
            any_zero = any_zero || inputs[k].a().is_zero();
            as.push_back(inputs[k].a());
        }
        if (any_zero)
            continue;
        Scalar sign((inputs[s].degree() * before) % 2 ? -1 : 1);
        out = out + sign * TwistedElement::section(iterated_projection(x, as));
        if (n == 1)
            out = out + TwistedElement::multivector(-schouten_bracket(alg.pi(), x));
    }

    // two multivector slots
    if (n == 2 && !inputs[0].x().is_zero() && !inputs[1].x().is_zero()) {
        const auto &x = inputs[0].x();
        MultiVectorField b = schouten_bracket(x, inputs[1].x());
        if ((x.degree() - 1) % 2)
            b = -b;
        out = out + TwistedElement::multivector(b);
    }
    return out;
}

TwistedElement twisted_mc(const CoisoAlgebra &alg, const TwistedElement &v) {
    if (v.degree() != 0)
        throw Error(ErrorCode::WrongDegree, "Maurer-Cartan input must have degree 0");
    const auto &alpha = v.a().field();
    // find K with ad^K pi = 0 and ad^{K-1} tau = 0; lambda_k(v^k) vanishes beyond it
    int cap = std::max(default_exp_ad_cap(alg.pi()), default_exp_ad_cap(v.x())) + 1;
    MultiVectorField tp = alg.pi(), tt = v.x();
    int terms = 1;
    for (;; ++terms) {
        tp = schouten_bracket(tp, alpha);
        if (tp.is_zero() && tt.is_zero())
            break;
        if (terms > cap)
            throw Error(ErrorCode::CapExceeded, "twisted Maurer-Cartan series did not terminate");
        tt = schouten_bracket(tt, alpha);
    }
    TwistedElement sum = TwistedElement::zero(alg.chart(), 1);
    mpq_class factorial = 1;
    std::vector<TwistedElement> copies;
    for (int k = 1; k <= std::max(terms, 2); ++k) {
        factorial *= k;
        copies.push_back(v);
        sum = sum + Scalar(mpq_class(1) / factorial) * twisted_lambda(alg, copies);
    }
    return sum;
}

VerticalSection kuranishi_rep(const CoisoAlgebra &alg, const VerticalSection &a) {
    require_same_chart(alg.chart(), a.chart());
    MultiVectorField first = schouten_bracket(alg.pi(), a.field());
    if (!projection_P(first).is_zero())
        throw Error(ErrorCode::NotClosed, "section is not closed: P([pi, a]) != 0");
    return projection_P(schouten_bracket(first, a.field()));
}

int unshuffle_sign(std::span<const int> degrees, std::span<const std::size_t> first,
                   std::span<const std::size_t> second) {
    int parity = 0;
    for (std::size_t f : first)
        for (std::size_t s : second)
            if (s < f)
                parity += degrees[f] * degrees[s];
    return parity % 2 ? -1 : 1;
}

} // namespace coiso
