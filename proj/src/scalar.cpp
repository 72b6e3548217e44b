#include "coiso/scalar.hpp"

#include "coiso/error.hpp"

#include <cmath>
#include <numbers>

namespace coiso {

const char *to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ChartMismatch: return "chart mismatch";
    case ErrorCode::UnknownCoordinate: return "unknown coordinate";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NotVertical: return "not vertical";
    case ErrorCode::CapExceeded: return "cap exceeded";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::NonAffine: return "non-affine";
    case ErrorCode::DomainViolation: return "domain violation";
    case ErrorCode::NotClosed: return "not closed";
    case ErrorCode::JetOrderTooSmall: return "jet order too small";
    case ErrorCode::KernelCheck: return "kernel check failure";
    case ErrorCode::WrongDegree: return "wrong degree";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "io error";
    }
    return "error";
}

std::string rational_to_string(const mpq_class &q) {
    return q.get_str();
}

Scalar::Scalar(long value) {
    if (value != 0)
        terms_.emplace(0, GaussRational{mpq_class(value), mpq_class(0)});
}

Scalar::Scalar(const mpq_class &value) {
    mpq_class v = value;
    v.canonicalize();
    if (sgn(v) != 0)
        terms_.emplace(0, GaussRational{v, mpq_class(0)});
}

Scalar Scalar::gaussian(const mpq_class &re, const mpq_class &im, int pi_exponent) {
    Scalar s;
    GaussRational g{re, im};
    g.re.canonicalize();
    g.im.canonicalize();
    s.add_term(pi_exponent, g);
    return s;
}

Scalar Scalar::pi_power(int exponent) {
    return gaussian(1, 0, exponent);
}

Scalar Scalar::imaginary_unit() {
    return gaussian(0, 1, 0);
}

void Scalar::add_term(int pi_exponent, const GaussRational &value) {
    if (value.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(pi_exponent, value);
    if (inserted)
        return;
    it->second.re += value.re;
    it->second.im += value.im;
    if (it->second.is_zero())
        terms_.erase(it);
}

bool Scalar::is_one() const {
    if (terms_.size() != 1)
        return false;
    const auto &[e, g] = *terms_.begin();
    return e == 0 && g.re == 1 && sgn(g.im) == 0;
}

bool Scalar::is_real() const {
    for (const auto &[e, g] : terms_)
        if (sgn(g.im) != 0)
            return false;
    return true;
}

Scalar Scalar::conj() const {
    Scalar out = *this;
    for (auto &[e, g] : out.terms_)
        g.im = -g.im;
    return out;
}

std::optional<Scalar> Scalar::inverse() const {
    if (!is_unit())
        return std::nullopt;
    const auto &[e, g] = *terms_.begin();
    mpq_class norm = g.re * g.re + g.im * g.im;
    mpq_class re = g.re / norm;
    mpq_class im = -g.im / norm;
    return gaussian(re, im, -e);
}

std::complex<double> Scalar::to_complex() const {
    std::complex<double> out{0.0, 0.0};
    for (const auto &[e, g] : terms_) {
        double scale = std::pow(std::numbers::pi, e);
        out += std::complex<double>(g.re.get_d(), g.im.get_d()) * scale;
    }
    return out;
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    for (auto &[e, g] : out.terms_) {
        g.re = -g.re;
        g.im = -g.im;
    }
    return out;
}

Scalar &Scalar::operator+=(const Scalar &other) {
    for (const auto &[e, g] : other.terms_)
        add_term(e, g);
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &other) {
    for (const auto &[e, g] : other.terms_)
        add_term(e, GaussRational{-g.re, -g.im});
    return *this;
}

Scalar operator*(const Scalar &a, const Scalar &b) {
    Scalar out;
    for (const auto &[ea, ga] : a.terms_)
        for (const auto &[eb, gb] : b.terms_)
            out.add_term(ea + eb, GaussRational{ga.re * gb.re - ga.im * gb.im,
                                                ga.re * gb.im + ga.im * gb.re});
    return out;
}

Scalar &Scalar::operator*=(const Scalar &other) {
    *this = *this * other;
    return *this;
}

namespace {

std::string gauss_to_string(const GaussRational &g) {
    if (sgn(g.im) == 0)
        return rational_to_string(g.re);
    std::string imag;
    mpq_class mag = abs(g.im);
    imag = (mag == 1) ? "I" : rational_to_string(mag) + "*I";
    if (sgn(g.re) == 0)
        return (sgn(g.im) < 0 ? "-" : "") + imag;
    return "(" + rational_to_string(g.re) + (sgn(g.im) < 0 ? "-" : "+") + imag + ")";
}

std::string term_to_string(int e, const GaussRational &g) {
    std::string coeff = gauss_to_string(g);
    if (e == 0)
        return coeff;
    std::string power = (e == 1) ? "pi" : "pi^" + std::to_string(e);
    if (coeff == "1")
        return power;
    if (coeff == "-1")
        return "-" + power;
    return coeff + "*" + power;
}

} // namespace

std::string Scalar::to_string() const {
    if (terms_.empty())
        return "0";
    if (terms_.size() == 1)
        return term_to_string(terms_.begin()->first, terms_.begin()->second);
    std::string out = "(";
    bool first = true;
    for (const auto &[e, g] : terms_) {
        std::string t = term_to_string(e, g);
        if (first)
            out += t;
        else if (t.front() == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
        first = false;
    }
    return out + ")";
}

} // namespace coiso
