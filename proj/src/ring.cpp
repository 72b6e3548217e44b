#include "coiso/ring.hpp"

#include "coiso/error.hpp"

#include <cmath>
#include <numbers>

namespace coiso {

std::optional<int> min_order(const std::optional<int> &a, const std::optional<int> &b) {
    if (a && b)
        return std::min(*a, *b);
    return a ? a : b;
}

RingElement::RingElement(Chart chart) : chart_(std::move(chart)) {
    if (!chart_)
        throw Error(ErrorCode::InvalidArgument, "ring element needs a chart");
}

RingElement::RingElement(Chart chart, TermMap terms, std::optional<int> jet_order)
    : chart_(std::move(chart)), jet_order_(jet_order) {
    if (!chart_)
        throw Error(ErrorCode::InvalidArgument, "ring element needs a chart");
    for (auto &[key, value] : terms) {
        if (key.size() != chart_->dim())
            throw Error(ErrorCode::DimensionMismatch, "exponent key has wrong length");
        for (std::size_t i = 0; i < chart_->dim(); ++i)
            if (chart_->kind(i) != CoordKind::Periodic && key[chart_->slot(i)] < 0)
                throw Error(ErrorCode::InvalidArgument, "negative polynomial exponent");
        if (!value.is_zero())
            terms_.emplace(key, value);
    }
    apply_truncation();
}

RingElement RingElement::constant(Chart chart, const Scalar &value) {
    RingElement out(std::move(chart));
    out.add_term(Exponents(out.chart_->dim(), 0), value);
    return out;
}

RingElement RingElement::coordinate(Chart chart, std::string_view name) {
    RingElement out(std::move(chart));
    std::size_t i = out.chart_->index_of(name);
    if (out.chart_->kind(i) == CoordKind::Periodic)
        throw Error(ErrorCode::InvalidArgument,
                    "periodic coordinate '" + std::string(name) + "' only enters through Fourier modes");
    Exponents key(out.chart_->dim(), 0);
    key[out.chart_->slot(i)] = 1;
    out.add_term(key, Scalar(1));
    return out;
}

RingElement RingElement::fourier_mode(Chart chart, std::string_view name, int k) {
    RingElement out(std::move(chart));
    std::size_t i = out.chart_->index_of(name);
    if (out.chart_->kind(i) != CoordKind::Periodic)
        throw Error(ErrorCode::InvalidArgument,
                    "coordinate '" + std::string(name) + "' is not periodic");
    Exponents key(out.chart_->dim(), 0);
    key[out.chart_->slot(i)] = k;
    out.add_term(key, Scalar(1));
    return out;
}

RingElement RingElement::cos_mode(Chart chart, std::string_view name, int k) {
    Scalar half(mpq_class(1, 2));
    auto plus = fourier_mode(chart, name, k);
    auto minus = fourier_mode(chart, name, -k);
    return (plus + minus) * half;
}

RingElement RingElement::sin_mode(Chart chart, std::string_view name, int k) {
    // (e^{i t} - e^{-i t}) / (2i)
    Scalar minus_half_i = Scalar::gaussian(0, mpq_class(-1, 2));
    auto plus = fourier_mode(chart, name, k);
    auto minus = fourier_mode(chart, name, -k);
    return (plus - minus) * minus_half_i;
}

RingElement RingElement::monomial(Chart chart, Exponents key, const Scalar &value) {
    RingElement::TermMap terms;
    terms.emplace(std::move(key), value);
    return RingElement(std::move(chart), std::move(terms));
}

void RingElement::add_term(const Exponents &key, const Scalar &value) {
    if (value.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(key, value);
    if (inserted)
        return;
    it->second += value;
    if (it->second.is_zero())
        terms_.erase(it);
}

void RingElement::apply_truncation() {
    if (!jet_order_)
        return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (y_degree(it->first) > *jet_order_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

bool RingElement::is_constant() const {
    if (terms_.empty())
        return true;
    if (terms_.size() != 1)
        return false;
    for (int e : terms_.begin()->first)
        if (e != 0)
            return false;
    return true;
}

std::optional<Scalar> RingElement::constant_value() const {
    if (!is_constant())
        return std::nullopt;
    return constant_term();
}

Scalar RingElement::constant_term() const {
    auto it = terms_.find(Exponents(chart_->dim(), 0));
    return it == terms_.end() ? Scalar() : it->second;
}

int RingElement::y_degree(const Exponents &key) const {
    int d = 0;
    for (std::size_t j = 0; j < chart_->fibre_dim(); ++j)
        d += key[chart_->base_dim() + j];
    return d;
}

int RingElement::y_degree() const {
    int d = -1;
    for (const auto &[key, value] : terms_)
        d = std::max(d, y_degree(key));
    return d;
}

bool RingElement::has_fourier_modes() const {
    std::size_t begin = chart_->polynomial_base_count();
    std::size_t end = begin + chart_->periodic_count();
    for (const auto &[key, value] : terms_)
        for (std::size_t s = begin; s < end; ++s)
            if (key[s] != 0)
                return true;
    return false;
}

namespace {

Exponents conjugate_key(const RingElement &f, const Exponents &key) {
    Exponents out = key;
    std::size_t begin = f.chart()->polynomial_base_count();
    for (std::size_t s = begin; s < begin + f.chart()->periodic_count(); ++s)
        out[s] = -out[s];
    return out;
}

} // namespace

bool RingElement::is_real() const {
    for (const auto &[key, value] : terms_) {
        auto it = terms_.find(conjugate_key(*this, key));
        if (it == terms_.end() || !(it->second == value.conj()))
            return false;
    }
    return true;
}

RingElement RingElement::conj() const {
    RingElement out(chart_);
    out.jet_order_ = jet_order_;
    for (const auto &[key, value] : terms_)
        out.add_term(conjugate_key(*this, key), value.conj());
    return out;
}

RingElement RingElement::truncated(int n) const {
    RingElement out = *this;
    out.jet_order_ = min_order(jet_order_, n);
    out.apply_truncation();
    return out;
}

RingElement RingElement::without_jet_order() const {
    RingElement out = *this;
    out.jet_order_.reset();
    return out;
}

RingElement RingElement::at_zero_section() const {
    RingElement out(chart_);
    for (const auto &[key, value] : terms_)
        if (y_degree(key) == 0)
            out.terms_.emplace(key, value);
    // the restriction of a jet of order >= 0 is exact
    if (jet_order_ && *jet_order_ < 0)
        out.jet_order_ = jet_order_;
    return out;
}

RingElement RingElement::operator-() const {
    RingElement out = *this;
    for (auto &[key, value] : out.terms_)
        value = -value;
    return out;
}

RingElement &RingElement::operator+=(const RingElement &other) {
    require_same_chart(chart_, other.chart_);
    for (const auto &[key, value] : other.terms_)
        add_term(key, value);
    jet_order_ = min_order(jet_order_, other.jet_order_);
    apply_truncation();
    return *this;
}

RingElement &RingElement::operator-=(const RingElement &other) {
    require_same_chart(chart_, other.chart_);
    for (const auto &[key, value] : other.terms_)
        add_term(key, -value);
    jet_order_ = min_order(jet_order_, other.jet_order_);
    apply_truncation();
    return *this;
}

RingElement &RingElement::operator*=(const Scalar &s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[key, value] : terms_)
        value *= s;
    return *this;
}

RingElement operator*(const RingElement &a, const RingElement &b) {
    require_same_chart(a.chart_, b.chart_);
    RingElement out(a.chart_);
    out.jet_order_ = min_order(a.jet_order_, b.jet_order_);
    Exponents key(a.chart_->dim());
    for (const auto &[ka, va] : a.terms_) {
        for (const auto &[kb, vb] : b.terms_) {
            for (std::size_t s = 0; s < key.size(); ++s)
                key[s] = ka[s] + kb[s];
            if (out.jet_order_ && out.y_degree(key) > *out.jet_order_)
                continue;
            out.add_term(key, va * vb);
        }
    }
    return out;
}

bool operator==(const RingElement &a, const RingElement &b) {
    return same_chart(a.chart_, b.chart_) && a.jet_order_ == b.jet_order_ && a.terms_ == b.terms_;
}

RingElement RingElement::derivative(std::size_t coordinate) const {
    if (coordinate >= chart_->dim())
        throw Error(ErrorCode::UnknownCoordinate, "coordinate index out of range");
    RingElement out(chart_);
    out.jet_order_ = jet_order_;
    std::size_t s = chart_->slot(coordinate);
    if (chart_->kind(coordinate) == CoordKind::Periodic) {
        for (const auto &[key, value] : terms_) {
            if (key[s] == 0)
                continue;
            out.add_term(key, value * Scalar::gaussian(0, 2 * key[s], 1));
        }
        return out;
    }
    for (const auto &[key, value] : terms_) {
        if (key[s] == 0)
            continue;
        Exponents k = key;
        k[s] -= 1;
        out.add_term(k, value * Scalar(key[s]));
    }
    if (chart_->kind(coordinate) == CoordKind::Fibre && jet_order_) {
        out.jet_order_ = *jet_order_ - 1;
        out.apply_truncation();
    }
    return out;
}

RingElement RingElement::derivative(std::string_view name) const {
    return derivative(chart_->index_of(name));
}

std::complex<double> RingElement::evaluate(std::span<const double> point) const {
    if (point.size() != chart_->dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "point has " + std::to_string(point.size()) + " coordinates, chart has " +
                        std::to_string(chart_->dim()));
    std::complex<double> total{0.0, 0.0};
    for (const auto &[key, value] : terms_) {
        std::complex<double> t = value.to_complex();
        double phase = 0.0;
        for (std::size_t i = 0; i < chart_->dim(); ++i) {
            int e = key[chart_->slot(i)];
            if (e == 0)
                continue;
            if (chart_->kind(i) == CoordKind::Periodic)
                phase += 2.0 * std::numbers::pi * e * point[i];
            else
                t *= std::pow(point[i], e);
        }
        if (phase != 0.0)
            t *= std::polar(1.0, phase);
        total += t;
    }
    return total;
}

namespace {

// Real-basis code for one periodic slot: 0 constant, 2k-1 cos(k), 2k sin(k).
std::map<Exponents, Scalar> to_real_basis(const RingElement &f) {
    const auto &chart = *f.chart();
    std::size_t begin = chart.polynomial_base_count();
    std::size_t end = begin + chart.periodic_count();
    std::map<Exponents, Scalar> current;
    for (const auto &[key, value] : f.terms())
        current[key] += value;
    for (std::size_t s = begin; s < end; ++s) {
        std::map<Exponents, Scalar> next;
        for (const auto &[key, value] : current) {
            int k = key[s];
            Exponents base = key;
            if (k == 0) {
                base[s] = 0;
                next[base] += value;
                continue;
            }
            int m = std::abs(k);
            base[s] = 2 * m - 1;
            next[base] += value;
            base[s] = 2 * m;
            next[base] += value * Scalar::gaussian(0, k > 0 ? 1 : -1);
        }
        current.clear();
        for (auto &[key, value] : next)
            if (!value.is_zero())
                current.emplace(key, value);
    }
    return current;
}

std::string real_term_to_string(const ChartSpec &chart, const Exponents &key, const Scalar &value) {
    std::string factors;
    auto append = [&](const std::string &f) {
        if (!factors.empty())
            factors += "*";
        factors += f;
    };
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        int e = key[chart.slot(i)];
        if (e == 0)
            continue;
        const std::string &n = chart.name(i);
        if (chart.kind(i) == CoordKind::Periodic) {
            int m = (e + 1) / 2;
            std::string fn = (e % 2 == 1) ? "cos" : "sin";
            append(fn + "(" + std::to_string(2 * m) + "*pi*" + n + ")");
        } else {
            append(e == 1 ? n : n + "^" + std::to_string(e));
        }
    }
    std::string coeff = value.to_string();
    if (factors.empty())
        return coeff;
    if (coeff == "1")
        return factors;
    if (coeff == "-1")
        return "-" + factors;
    return coeff + "*" + factors;
}

} // namespace

std::string RingElement::to_string() const {
    auto real = to_real_basis(*this);
    if (real.empty())
        return "0";
    std::string out;
    for (const auto &[key, value] : real) {
        std::string t = real_term_to_string(*chart_, key, value);
        if (out.empty())
            out = t;
        else if (t.front() == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

std::string RingElement::to_factor_string() const {
    auto real = to_real_basis(*this);
    std::string s = to_string();
    if (real.size() > 1)
        return "(" + s + ")";
    return s;
}

RingElement ring_mul(const RingElement &f, const RingElement &g) {
    return f * g;
}

RingElement partial_derivative(const RingElement &f, std::string_view coordinate) {
    return f.derivative(coordinate);
}

RingElement power(const RingElement &f, int n) {
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "negative power");
    RingElement out = RingElement::constant(f.chart(), Scalar(1));
    for (int i = 0; i < n; ++i)
        out = out * f;
    return out;
}

RingElement taylor_shift(const RingElement &f, std::span<const RingElement> alpha) {
    const auto &chart = f.chart();
    if (alpha.size() != chart->fibre_dim())
        throw Error(ErrorCode::DimensionMismatch, "shift needs one entry per fibre coordinate");
    std::optional<int> order = f.jet_order();
    for (const auto &a : alpha) {
        require_same_chart(chart, a.chart());
        if (!a.is_base_only())
            throw Error(ErrorCode::NotVertical, "shift entry depends on a fibre coordinate");
        order = min_order(order, a.jet_order());
    }

    // powers[j][e] = (y_j + alpha_j)^e
    std::vector<std::vector<RingElement>> powers(chart->fibre_dim());
    for (std::size_t j = 0; j < chart->fibre_dim(); ++j) {
        RingElement shifted =
            RingElement::coordinate(chart, chart->fibre()[j]) + alpha[j].without_jet_order();
        powers[j].push_back(RingElement::constant(chart, Scalar(1)));
        if (order)
            shifted = shifted.truncated(*order);
        powers[j].push_back(shifted);
    }
    auto power_of = [&](std::size_t j, int e) -> const RingElement & {
        while (static_cast<int>(powers[j].size()) <= e)
            powers[j].push_back(powers[j].back() * powers[j][1]);
        return powers[j][e];
    };

    RingElement out(chart);
    if (order)
        out = out.truncated(*order);
    std::size_t base = chart->base_dim();
    for (const auto &[key, value] : f.terms()) {
        Exponents head = key;
        for (std::size_t j = 0; j < chart->fibre_dim(); ++j)
            head[base + j] = 0;
        RingElement term = RingElement::monomial(chart, head, value);
        if (order)
            term = term.truncated(*order);
        for (std::size_t j = 0; j < chart->fibre_dim(); ++j)
            if (key[base + j] > 0)
                term = term * power_of(j, key[base + j]);
        out += term;
    }
    return out;
}

RingElement transport(const RingElement &f, const Chart &target) {
    const ChartSpec &src = *f.chart();
    std::vector<std::optional<std::size_t>> map(src.dim());
    for (std::size_t i = 0; i < src.dim(); ++i) {
        auto t = target->find(src.name(i));
        if (t && (src.kind(i) == CoordKind::Periodic) != (target->kind(*t) == CoordKind::Periodic))
            throw Error(ErrorCode::ChartMismatch,
                        "coordinate '" + src.name(i) + "' changes periodicity between charts");
        if (t)
            map[i] = target->slot(*t);
    }
    RingElement::TermMap terms;
    for (const auto &[key, value] : f.terms()) {
        Exponents k(target->dim(), 0);
        for (std::size_t i = 0; i < src.dim(); ++i) {
            int e = key[src.slot(i)];
            if (e == 0)
                continue;
            if (!map[i])
                throw Error(ErrorCode::ChartMismatch,
                            "coordinate '" + src.name(i) + "' does not exist on the target chart");
            k[*map[i]] = e;
        }
        terms.emplace(std::move(k), value);
    }
    return RingElement(target, std::move(terms), f.jet_order());
}

std::complex<double> eval_point(const RingElement &f, std::span<const double> point) {
    return f.evaluate(point);
}

} // namespace coiso
