#pragma once

#include "coiso/forms.hpp"
#include "coiso/numeric.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coiso {

/// A bundle chart with a bivector pi for which the zero section is
/// coisotropic, P(pi) = 0, enforced on construction.
class CoisoAlgebra {
  public:
    /// `exact_numeric` evaluates the untruncated bivector when pi is a jet;
    /// defaults to evaluating pi itself.
    explicit CoisoAlgebra(MultiVectorField pi, std::optional<NumericBivector> exact_numeric = std::nullopt);

    const Chart &chart() const { return pi_.chart(); }
    const MultiVectorField &pi() const { return pi_; }
    /// [pi, pi] = 0 held exactly (to jet order for jets).
    bool poisson() const { return poisson_; }
    bool is_jet() const { return pi_.jet_order().has_value(); }
    const NumericBivector &numeric_pi() const { return numeric_; }

  private:
    MultiVectorField pi_;
    bool poisson_ = false;
    NumericBivector numeric_;
};

/// lambda_n(a_1, ..., a_n) = P([...[pi, a_1], ..., a_n]).
VerticalSection lambda_n(const CoisoAlgebra &alg, std::span<const VerticalSection> inputs);

struct McOptions {
    int samples = 32;              // per periodic axis, for the domain check
    std::uint64_t seed = 0;
    std::optional<int> cap;        // defaults to default_exp_ad_cap(pi)
};

/// sum_{k>=1} (1/k!) lambda_k(alpha, ..., alpha), summed until the iterated
/// bracket vanishes. Throws Error(DomainViolation) when graph(-alpha) leaves
/// the chart's domain bound on the sample grid, Error(CapExceeded) when the
/// series does not terminate.
VerticalSection mc_series_exact(const CoisoAlgebra &alg, const VerticalSection &alpha, const McOptions &options = {});

/// P((phi^alpha)_* pi), the closed form of the Maurer-Cartan series.
VerticalSection mc_pushforward_oracle(const CoisoAlgebra &alg, const VerticalSection &alpha);

struct ConvergenceRow {
    BasePoint point;
    int n = 0;
    std::vector<std::complex<double>> partial_sum;
    std::vector<std::complex<double>> oracle;
    double abs_error = 0.0;
};

/// Partial sums beta_n of the Maurer-Cartan series at sample points, against
/// the numeric pushforward of the exact bivector.
struct ConvergenceTable {
    std::vector<std::string> coordinates;
    std::vector<std::string> components; // e.g. "p1_p2"
    std::vector<ConvergenceRow> rows;

    /// Columns: coordinates..., n, beta_<c>..., oracle_<c>..., abs_error.
    std::string to_csv() const;
    double max_error_at(int n) const;
};

ConvergenceTable mc_partial_table(const CoisoAlgebra &alg, const VerticalSection &alpha, int max_order,
                                  std::span<const BasePoint> points);

struct CoisotropyResult {
    bool coisotropic = false;
    double max_defect = 0.0;
};

inline constexpr double kCoisotropyTolerance = 1e-9;

/// Measures pi(xi_j, xi_k) at points of graph(-alpha) for the conormal
/// covectors xi_j = dy_j + sum_i (d alpha_j / dx_i) dx_i.
CoisotropyResult coisotropy_check_numeric(const MultiVectorField &pi, const VerticalSection &alpha,
                                          std::span<const BasePoint> points);
/// Same check, using the algebra's exact numeric bivector.
CoisotropyResult coisotropy_check_numeric(const CoisoAlgebra &alg, const VerticalSection &alpha,
                                          std::span<const BasePoint> points);

/// Element of the twisted algebra W(C, pi): a multivector X shifted by two and
/// a section a shifted by one. Homogeneous of degree d: X has degree d + 2 and
/// a has degree d + 1.
class TwistedElement {
  public:
    TwistedElement(MultiVectorField x, VerticalSection a);

    static TwistedElement zero(const Chart &chart, int degree);
    static TwistedElement multivector(const MultiVectorField &x);
    static TwistedElement section(const VerticalSection &a);

    int degree() const { return x_.degree() - 2; }
    const MultiVectorField &x() const { return x_; }
    const VerticalSection &a() const { return a_; }
    const Chart &chart() const { return x_.chart(); }
    bool is_zero() const { return x_.is_zero() && a_.is_zero(); }

    friend TwistedElement operator+(const TwistedElement &u, const TwistedElement &v);
    friend TwistedElement operator*(const Scalar &s, const TwistedElement &v);
    friend bool operator==(const TwistedElement &u, const TwistedElement &v) {
        return u.x_ == v.x_ && u.a_ == v.a_;
    }

    std::string to_string() const;

  private:
    MultiVectorField x_;
    VerticalSection a_;
};

/// Multibrackets of W(C, pi):
///   lambda_1(X)        = (-[pi, X], P(X))
///   lambda_1(a)        = (0, P([pi, a]))
///   lambda_2(X, Y)     = ((-1)^{|X|} [X, Y], 0), |X| = deg X - 1
///   lambda_n(a...)     = (0, P([...[pi, a_1], ..., a_n]))
///   lambda_{n+1}(X, a...) = (0, P([...[X, a_1], ..., a_n]))
/// extended graded-symmetrically (Koszul signs on W-degrees); every other
/// slot pattern vanishes.
TwistedElement twisted_lambda(const CoisoAlgebra &alg, std::span<const TwistedElement> inputs);

/// sum_{k>=1} (1/k!) lambda_k(v, ..., v) in W(C, pi) for v of degree 0.
TwistedElement twisted_mc(const CoisoAlgebra &alg, const TwistedElement &v);

/// lambda_2((0, a), (0, a)) = P([[pi, a], a]); throws Error(NotClosed) unless
/// P([pi, a]) = 0 exactly.
VerticalSection kuranishi_rep(const CoisoAlgebra &alg, const VerticalSection &a);

/// Adapter exposing W(C, pi) to higher_jacobi_verify.
struct TwistedBrackets {
    using Element = TwistedElement;
    const CoisoAlgebra &alg;

    Element bracket(std::span<const Element> inputs) const { return twisted_lambda(alg, inputs); }
    int degree(const Element &e) const { return e.degree(); }
    Element zero(int degree) const { return TwistedElement::zero(alg.chart(), degree); }
};

/// Koszul sign of listing `first` before `second` when originally interleaved
/// by index; degrees are the W-degrees.
int unshuffle_sign(std::span<const int> degrees, std::span<const std::size_t> first,
                   std::span<const std::size_t> second);

/// Order-n higher Jacobi expression
///   sum_{i+j=n+1} sum_{unshuffles s} eps(s) lambda_j(lambda_i(v_s1..v_si), v_s(i+1)..v_sn)
/// for the L-infinity[1] convention (graded symmetric brackets of degree 1).
template <class Brackets>
typename Brackets::Element higher_jacobi_expression(const Brackets &b,
                                                    std::span<const typename Brackets::Element> v) {
    using Element = typename Brackets::Element;
    std::size_t n = v.size();
    std::vector<int> degrees;
    int total = 0;
    for (const auto &e : v) {
        degrees.push_back(b.degree(e));
        total += degrees.back();
    }
    Element sum = b.zero(total + 2);
    for (std::size_t i = 1; i <= n; ++i) {
        // subsets of size i in increasing bitmask order
        for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
            if (static_cast<std::size_t>(std::popcount(subset)) != i)
                continue;
            std::vector<std::size_t> first, second;
            for (std::size_t k = 0; k < n; ++k)
                (subset & (1u << k) ? first : second).push_back(k);
            std::vector<Element> inner_args, outer_args;
            for (std::size_t k : first)
                inner_args.push_back(v[k]);
            Element inner = b.bracket(inner_args);
            outer_args.push_back(inner);
            for (std::size_t k : second)
                outer_args.push_back(v[k]);
            Element outer = b.bracket(outer_args);
            int s = unshuffle_sign(degrees, first, second);
            sum = sum + (s > 0 ? outer : Scalar(-1) * outer);
        }
    }
    return sum;
}

template <class Brackets>
bool higher_jacobi_verify(const Brackets &b, std::span<const typename Brackets::Element> v) {
    if (v.size() > 3)
        throw Error(ErrorCode::InvalidArgument, "higher Jacobi check is limited to order 3");
    return higher_jacobi_expression(b, v).is_zero();
}

} // namespace coiso
