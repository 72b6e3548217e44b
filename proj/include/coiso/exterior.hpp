#pragma once

#include "coiso/error.hpp"
#include "coiso/ring.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coiso {

/// Set of coordinate directions in a wedge product; bit i is coordinate i.
using WedgeMask = std::uint64_t;

inline WedgeMask direction_bit(std::size_t i) { return WedgeMask{1} << i; }

/// Sign of reordering e_A ^ e_B into increasing order; 0 when A and B overlap.
inline int wedge_sign(WedgeMask a, WedgeMask b) {
    if (a & b)
        return 0;
    int swaps = 0;
    for (WedgeMask rest = b; rest; rest &= rest - 1) {
        WedgeMask low = rest & (~rest + 1);
        // elements of a above the current element of b
        swaps += std::popcount(a & ~((low << 1) - 1));
    }
    return (swaps % 2) ? -1 : 1;
}

/// Sign of moving e_i from its slot in mask to the right end.
inline int right_extract_sign(WedgeMask mask, std::size_t i) {
    return (std::popcount(mask & ~((direction_bit(i) << 1) - 1)) % 2) ? -1 : 1;
}

/// Sign of moving e_i from its slot in mask to the left end.
inline int left_extract_sign(WedgeMask mask, std::size_t i) {
    return (std::popcount(mask & (direction_bit(i) - 1)) % 2) ? -1 : 1;
}

struct VectorTag {
    static constexpr const char *prefix = "@";
};
struct FormTag {
    static constexpr const char *prefix = "d";
};

/// Homogeneous element of the exterior algebra over RingElement, with basis
/// either the coordinate vector fields or the coordinate differentials.
///
/// Keys are masks of strictly increasing index sets; zero coefficients are
/// never stored. The jet order is the smallest order of anything that went
/// into the element, including coefficients that truncated to zero.
template <class Tag> class Exterior {
  public:
    using TermMap = std::map<WedgeMask, RingElement>;

    Exterior(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
        if (!chart_)
            throw Error(ErrorCode::InvalidArgument, "exterior element needs a chart");
        if (degree_ < -1)
            throw Error(ErrorCode::InvalidArgument, "negative degree");
    }

    static Exterior function(const RingElement &f) {
        Exterior out(f.chart(), 0);
        out.add_term(0, f);
        return out;
    }

    /// c * e_{i_1} ^ ... ^ e_{i_k} in the given (not necessarily sorted) order.
    static Exterior basis_indices(const Chart &chart, const std::vector<std::size_t> &directions,
                                  const RingElement &coefficient) {
        Exterior out(chart, static_cast<int>(directions.size()));
        WedgeMask mask = 0;
        int sign = 1;
        for (std::size_t i : directions) {
            if (i >= chart->dim())
                throw Error(ErrorCode::UnknownCoordinate, "direction index out of range");
            sign *= wedge_sign(mask, direction_bit(i));
            mask |= direction_bit(i);
        }
        if (sign == 0)
            return out;
        out.add_term(mask, sign > 0 ? coefficient : -coefficient);
        return out;
    }

    static Exterior basis(const Chart &chart, const std::vector<std::string> &names,
                          const RingElement &coefficient) {
        std::vector<std::size_t> idx;
        for (const auto &n : names)
            idx.push_back(chart->index_of(n));
        return basis_indices(chart, idx, coefficient);
    }

    static Exterior basis(const Chart &chart, const std::vector<std::string> &names) {
        return basis(chart, names, RingElement::constant(chart, Scalar(1)));
    }

    const Chart &chart() const { return chart_; }
    int degree() const { return degree_; }
    const TermMap &terms() const { return terms_; }
    const std::optional<int> &jet_order() const { return jet_order_; }
    bool is_zero() const { return terms_.empty(); }

    RingElement coefficient(WedgeMask mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? RingElement(chart_) : it->second;
    }

    void add_term(WedgeMask mask, const RingElement &coefficient) {
        require_same_chart(chart_, coefficient.chart());
        if (std::popcount(mask) != degree_)
            throw Error(ErrorCode::WrongDegree, "term degree does not match element degree");
        if (mask >> chart_->dim())
            throw Error(ErrorCode::UnknownCoordinate, "direction outside the chart");
        jet_order_ = min_order(jet_order_, coefficient.jet_order());
        if (coefficient.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(mask, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    /// Records an order bound without adding terms.
    void limit_order(const std::optional<int> &order) {
        jet_order_ = min_order(jet_order_, order);
        if (!jet_order_)
            return;
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second = it->second.truncated(*jet_order_);
            if (it->second.is_zero())
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    int max_y_degree() const {
        int d = -1;
        for (const auto &[m, c] : terms_)
            d = std::max(d, c.y_degree());
        return d;
    }

    template <class F> Exterior map_coefficients(F &&f) const {
        Exterior out(chart_, degree_);
        out.jet_order_ = jet_order_;
        for (const auto &[m, c] : terms_)
            out.add_term(m, f(c));
        return out;
    }

    Exterior operator-() const {
        Exterior out = *this;
        for (auto &[m, c] : out.terms_)
            c = -c;
        return out;
    }

    Exterior &operator+=(const Exterior &other) {
        require_same_chart(chart_, other.chart_);
        if (other.degree_ != degree_) {
            if (other.is_zero() && !other.jet_order_)
                return *this;
            if (is_zero() && !jet_order_) {
                *this = other;
                return *this;
            }
            throw Error(ErrorCode::WrongDegree, "adding elements of different degree");
        }
        for (const auto &[m, c] : other.terms_)
            add_term(m, c);
        limit_order(other.jet_order_);
        return *this;
    }

    Exterior &operator-=(const Exterior &other) { return *this += -other; }
    friend Exterior operator+(Exterior a, const Exterior &b) { return a += b; }
    friend Exterior operator-(Exterior a, const Exterior &b) { return a += -b; }

    friend Exterior operator*(const RingElement &f, const Exterior &x) {
        require_same_chart(f.chart(), x.chart_);
        Exterior out(x.chart_, x.degree_);
        out.jet_order_ = min_order(x.jet_order_, f.jet_order());
        for (const auto &[m, c] : x.terms_)
            out.add_term(m, f * c);
        return out;
    }
    friend Exterior operator*(const Exterior &x, const RingElement &f) { return f * x; }
    friend Exterior operator*(const Scalar &s, const Exterior &x) {
        Exterior out(x.chart_, x.degree_);
        out.jet_order_ = x.jet_order_;
        for (const auto &[m, c] : x.terms_)
            out.add_term(m, c * s);
        return out;
    }
    friend Exterior operator*(const Exterior &x, const Scalar &s) { return s * x; }

    friend Exterior wedge(const Exterior &a, const Exterior &b) {
        require_same_chart(a.chart_, b.chart_);
        Exterior out(a.chart_, std::max(a.degree_, 0) + std::max(b.degree_, 0));
        if (a.degree_ < 0 || b.degree_ < 0)
            return out;
        out.jet_order_ = min_order(a.jet_order_, b.jet_order_);
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                int s = wedge_sign(ma, mb);
                if (s == 0)
                    continue;
                RingElement c = ca * cb;
                out.add_term(ma | mb, s > 0 ? c : -c);
            }
        }
        return out;
    }

    /// Structural equality; jet orders of the elements are not compared.
    friend bool operator==(const Exterior &a, const Exterior &b) {
        if (!same_chart(a.chart_, b.chart_))
            return false;
        if (a.is_zero() && b.is_zero())
            return true;
        if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size())
            return false;
        for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || ia->second.terms() != ib->second.terms())
                return false;
        return true;
    }

    /// Renders as `coeff * @p1 /\ @p2 + ...` (or `d` for forms).
    std::string to_string() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto &[m, c] : terms_) {
            std::string t = term_to_string(m, c);
            if (out.empty())
                out = t;
            else if (t.front() == '-')
                out += " - " + t.substr(1);
            else
                out += " + " + t;
        }
        return out;
    }

  private:
    std::string term_to_string(WedgeMask m, const RingElement &c) const {
        if (m == 0)
            return c.to_string();
        std::string basis;
        for (std::size_t i = 0; i < chart_->dim(); ++i) {
            if (!(m & direction_bit(i)))
                continue;
            if (!basis.empty())
                basis += " /\\ ";
            basis += Tag::prefix + chart_->name(i);
        }
        std::string coeff = c.without_jet_order().to_factor_string();
        if (coeff == "1")
            return basis;
        if (coeff == "-1")
            return "-" + basis;
        return coeff + " * " + basis;
    }

    Chart chart_;
    int degree_;
    TermMap terms_;
    std::optional<int> jet_order_;
};

/// Re-expresses x on another chart, matching coordinates by name.
template <class Tag> Exterior<Tag> transport(const Exterior<Tag> &x, const Chart &target) {
    Exterior<Tag> out(target, x.degree());
    out.limit_order(x.jet_order());
    for (const auto &[m, c] : x.terms()) {
        // coordinate order may differ, so rebuild the sign
        std::vector<std::size_t> dirs;
        for (std::size_t i = 0; i < x.chart()->dim(); ++i)
            if (m & direction_bit(i))
                dirs.push_back(target->index_of(x.chart()->name(i)));
        out += Exterior<Tag>::basis_indices(target, dirs, transport(c, target));
    }
    return out;
}

using MultiVectorField = Exterior<VectorTag>;
using DifferentialForm = Exterior<FormTag>;

} // namespace coiso
