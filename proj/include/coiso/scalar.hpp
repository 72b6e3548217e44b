#pragma once

#include <complex>
#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>

namespace coiso {

/// a + b*i with exact rational parts.
struct GaussRational {
    mpq_class re;
    mpq_class im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    friend bool operator==(const GaussRational &, const GaussRational &) = default;
};

/// Exact constant: a finite sum of Gaussian rationals times integer powers of pi.
///
/// Stored as a map from pi-exponent to a nonzero Gaussian rational, so equal
/// values always have identical representations.
class Scalar {
  public:
    Scalar() = default;
    Scalar(long value);
    Scalar(const mpq_class &value);

    static Scalar gaussian(const mpq_class &re, const mpq_class &im, int pi_exponent = 0);
    static Scalar pi_power(int exponent);
    static Scalar imaginary_unit();

    const std::map<int, GaussRational> &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_real() const;
    /// A single pi-power term; these are exactly the invertible scalars.
    bool is_unit() const { return terms_.size() == 1; }

    Scalar conj() const;
    std::optional<Scalar> inverse() const;
    std::complex<double> to_complex() const;

    Scalar operator-() const;
    Scalar &operator+=(const Scalar &other);
    Scalar &operator-=(const Scalar &other);
    Scalar &operator*=(const Scalar &other);
    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(const Scalar &a, const Scalar &b);
    friend bool operator==(const Scalar &, const Scalar &) = default;

    /// Renders as e.g. `8*pi^2`, `-1/2`, `(1+2*I)*pi`, `(1 + pi)`.
    std::string to_string() const;

  private:
    void add_term(int pi_exponent, const GaussRational &value);

    std::map<int, GaussRational> terms_;
};

std::string rational_to_string(const mpq_class &q);

} // namespace coiso
