#include "coiso/obstruction.hpp"

#include "support/expect.hpp"
#include "support/random.hpp"

#include <doctest.h>

#include <algorithm>

using namespace coiso;
using coiso::testing::Rng;
using coiso::testing::RingShape;

namespace {

RingElement cos_cos(const Chart &t) { return RingElement::cos_mode(t, "y1") * RingElement::cos_mode(t, "y2"); }

VerticalSection vertical(const Chart &t, const RingElement &f) {
    return VerticalSection(MultiVectorField::basis(t, {"p1", "p2"}, f));
}

VerticalSection constant_section(const Chart &t, long a, long b) {
    return VerticalSection::from_components(
        t, {RingElement::constant(t, Scalar(a)), RingElement::constant(t, Scalar(b))});
}

TwistedElement random_twisted(Rng &rng, const Chart &chart, int degree) {
    RingShape shape;
    shape.max_terms = 2;
    auto x = coiso::testing::random_multivector(rng, chart, degree + 2, shape);
    VerticalSection a = degree + 1 >= 0 ? coiso::testing::random_section(rng, chart, degree + 1, shape)
                                        : VerticalSection(chart, degree + 1);
    return TwistedElement(rng.coin() ? x : MultiVectorField(chart, degree + 2), rng.coin() ? a : VerticalSection(chart, degree + 1));
}

MultiVectorField random_coisotropic(Rng &rng, const Chart &chart, int max_y_degree = 3) {
    RingShape shape;
    shape.max_y_degree = max_y_degree;
    return coiso::testing::make_coisotropic(coiso::testing::random_multivector(rng, chart, 2, shape));
}

} // namespace

TEST_CASE("coiso algebra construction") {
    auto t = make_chart({{"q", true}}, {"p", "r"});
    CHECK_THROWS_AS(CoisoAlgebra(MultiVectorField::basis(t, {"p", "r"})), Error);
    CHECK_ERROR_CODE(CoisoAlgebra(MultiVectorField::basis(t, {"p"})), ErrorCode::WrongDegree);
    CoisoAlgebra ok(MultiVectorField::basis(t, {"q", "p"}));
    CHECK(ok.poisson());
    CHECK_FALSE(ok.is_jet());
    auto b = make_chart({{"x1", false}, {"x2", false}, {"x3", false}}, {"p"});
    CoisoAlgebra not_poisson(RingElement::coordinate(b, "x3") * MultiVectorField::basis(b, {"x1", "x2"}) +
                             MultiVectorField::basis(b, {"x3", "p"}));
    CHECK_FALSE(not_poisson.poisson());
}

TEST_CASE("lambda_n on the torus") {
    auto ex = build_T4_example();
    auto t = ex.algebra.chart();
    std::vector<VerticalSection> aa{ex.a, ex.a};
    auto l2 = lambda_n(ex.algebra, aa);
    CHECK(l2 == vertical(t, RingElement::constant(t, Scalar::gaussian(8, 0, 2)) * cos_cos(t)));
    CHECK(l2.to_string() == "8*pi^2*cos(2*pi*y1)*cos(2*pi*y2) * @p1 /\\ @p2");
    std::vector<VerticalSection> a1{ex.a};
    CHECK(lambda_n(ex.algebra, a1).is_zero());
    VerticalSection zero(t, 1);
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<VerticalSection> zs(n, zero);
        CHECK(lambda_n(ex.algebra, zs).is_zero());
    }
    std::vector<VerticalSection> foreign{VerticalSection(make_chart({{"q", true}}, {"p"}), 1)};
    CHECK_ERROR_CODE(lambda_n(ex.algebra, foreign), ErrorCode::ChartMismatch);
}

TEST_CASE("lambda_n is symmetric for degree-1 inputs") {
    Rng rng(51);
    for (int t = 0; t < 40; ++t) {
        auto ch = coiso::testing::random_chart(rng);
        CoisoAlgebra alg(random_coisotropic(rng, ch));
        std::vector<VerticalSection> in;
        std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
        for (std::size_t k = 0; k < n; ++k)
            in.push_back(coiso::testing::random_section(rng, ch, 1));
        auto base = lambda_n(alg, in);
        std::vector<std::size_t> perm(n);
        for (std::size_t k = 0; k < n; ++k)
            perm[k] = k;
        while (std::next_permutation(perm.begin(), perm.end())) {
            std::vector<VerticalSection> p;
            for (auto k : perm)
                p.push_back(in[k]);
            CHECK(lambda_n(alg, p) == base);
        }
    }
}

TEST_CASE("Maurer-Cartan series on the torus") {
    auto ex = build_T4_example();
    auto t = ex.algebra.chart();
    McOptions opt;
    opt.samples = 8;
    CHECK(mc_series_exact(ex.algebra, VerticalSection(t, 1), opt).is_zero());
    auto mc = mc_series_exact(ex.algebra, ex.a, opt);
    CHECK(mc == vertical(t, RingElement::constant(t, Scalar::gaussian(4, 0, 2)) * cos_cos(t)));
    CHECK(mc == mc_pushforward_oracle(ex.algebra, ex.a));
    CHECK(mc_series_exact(ex.algebra, constant_section(t, 1, -3), opt).is_zero());
    opt.cap = 1;
    CHECK_ERROR_CODE(mc_series_exact(ex.algebra, ex.a, opt), ErrorCode::CapExceeded);
}

TEST_CASE("Maurer-Cartan series equals the pushforward oracle") {
    Rng rng(52);
    McOptions opt;
    opt.samples = 4;
    for (int t = 0; t < 100; ++t) {
        auto ch = coiso::testing::random_chart(rng);
        CoisoAlgebra alg(random_coisotropic(rng, ch));
        auto alpha = coiso::testing::random_section(rng, ch, 1);
        auto mc = mc_series_exact(alg, alpha, opt);
        CHECK(mc == mc_pushforward_oracle(alg, alpha));
        CHECK(mc == projection_P(exp_ad(alg.pi(), alpha)));
    }
}

TEST_CASE("domain check") {
    auto t = make_chart({{"q", true}}, {"p"}, 0.1);
    CoisoAlgebra alg(MultiVectorField::basis(t, {"q", "p"}));
    McOptions opt;
    opt.samples = 8;
    auto small = VerticalSection::from_components(t, {RingElement::constant(t, Scalar(mpq_class(1, 20))) *
                                                          RingElement::sin_mode(t, "q")});
    CHECK_NOTHROW(mc_series_exact(alg, small, opt));
    auto big = VerticalSection::from_components(t, {RingElement::sin_mode(t, "q")});
    CHECK_ERROR_CODE(mc_series_exact(alg, big, opt), ErrorCode::DomainViolation);
}

TEST_CASE("convergence tables") {
    auto ex = build_T4_example();
    auto t = ex.algebra.chart();
    auto points = sample_grid(*t, 6);
    auto table = mc_partial_table(ex.algebra, ex.a, 4, points);
    CHECK(table.coordinates == std::vector<std::string>{"y1", "y2", "q1", "q2"});
    CHECK(table.components == std::vector<std::string>{"p1_p2"});
    CHECK(table.rows.size() == points.size() * 4);
    CHECK(table.max_error_at(1) > 1.0);
    CHECK(table.max_error_at(2) <= 1e-12);
    CHECK(table.max_error_at(4) <= 1e-12);
    for (const auto &row : table.rows)
        CHECK(row.abs_error >= 0.0);
    auto csv = table.to_csv();
    CHECK(csv.substr(0, csv.find('\n')) == "y1,y2,q1,q2,n,beta_p1_p2,oracle_p1_p2,abs_error");

    auto zero = mc_partial_table(ex.algebra, VerticalSection(t, 1), 3, points);
    for (const auto &row : zero.rows)
        for (auto v : row.partial_sum)
            CHECK(std::abs(v) == 0.0);
    CHECK_THROWS_AS(mc_partial_table(ex.algebra, ex.a, 0, points), Error);
}

TEST_CASE("jet-mode convergence table") {
    auto t = make_chart({{"y1", true}, {"y2", true}, {"q1", true}, {"q2", true}}, {"p1", "p2"}, 0.1);
    auto s = RingElement::sin_mode(t, "y2");
    auto dd = [&](std::initializer_list<const char *> n) {
        return DifferentialForm::basis(t, std::vector<std::string>(n.begin(), n.end()));
    };
    auto omega = dd({"y1", "y2"}) + dd({"q1", "p1"}) + dd({"q2", "p2"}) + s * dd({"p1", "y1"}) +
                 s.derivative("y2") * RingElement::coordinate(t, "p1") * dd({"y2", "y1"});
    auto res = symplectic_to_poisson(omega, 8);
    REQUIRE_FALSE(res.exact);
    CoisoAlgebra alg(res.pi, numeric_poisson(omega));
    CHECK(alg.is_jet());
    CHECK(alg.poisson());
    auto hundredth = RingElement::constant(t, Scalar(mpq_class(1, 100)));
    auto alpha = VerticalSection::from_components(
        t, {hundredth * RingElement::sin_mode(t, "y1"), hundredth * RingElement::sin_mode(t, "y2")});
    auto points = sample_grid(*t, 6);
    auto table = mc_partial_table(alg, alpha, 8, points);
    CHECK(table.max_error_at(8) <= 1e-8);
    for (int n = 1; n < 8; ++n)
        CHECK(table.max_error_at(n + 1) <= table.max_error_at(n));
    CHECK_ERROR_CODE(mc_partial_table(alg, alpha, 9, points), ErrorCode::JetOrderTooSmall);
    CHECK(coisotropy_check_numeric(alg, VerticalSection(t, 1), points).coisotropic);
}

TEST_CASE("numeric coisotropy check") {
    auto ex = build_T4_example();
    auto t = ex.algebra.chart();
    auto points = sample_grid(*t, 6);
    CHECK(coisotropy_check_numeric(ex.algebra, VerticalSection(t, 1), points).coisotropic);
    auto sin_case = coisotropy_check_numeric(ex.algebra, ex.a, points);
    CHECK_FALSE(sin_case.coisotropic);
    CHECK(sin_case.max_defect > 1.0);
    auto constant = coisotropy_check_numeric(ex.algebra, constant_section(t, 2, -1), points);
    CHECK(constant.coisotropic);
    CHECK(constant.max_defect <= kCoisotropyTolerance);

    // MC(alpha) = 0 exactly when the graph is coisotropic
    Rng rng(53);
    McOptions opt;
    opt.samples = 4;
    int zero = 0, nonzero = 0;
    for (int i = 0; i < 40; ++i) {
        RingShape shape;
        shape.base_only = true;
        shape.real = true;
        shape.max_mode = 1;
        shape.max_terms = 2;
        std::vector<RingElement> comps;
        for (int j = 0; j < 2; ++j) {
            // mostly functions of q only, which keep the graph coisotropic
            auto f = coiso::testing::random_ring(rng, t, shape);
            if (i % 2 == 0)
                f = RingElement::constant(t, Scalar(rng.rational())) *
                    (rng.coin() ? RingElement::cos_mode(t, "q1") : RingElement::sin_mode(t, "q2"));
            comps.push_back(f);
        }
        auto alpha = VerticalSection::from_components(t, comps);
        bool mc_zero = mc_series_exact(ex.algebra, alpha, opt).is_zero();
        bool coiso = coisotropy_check_numeric(ex.algebra, alpha, points).coisotropic;
        CHECK(mc_zero == coiso);
        (mc_zero ? zero : nonzero)++;
    }
    CHECK(zero > 0);
    CHECK(nonzero > 0);
}

TEST_CASE("twisted brackets") {
    auto ex = build_T4_example();
    auto t = ex.algebra.chart();
    auto za = TwistedElement::section(ex.a);
    CHECK(za.degree() == 0);
    std::vector<TwistedElement> one{za};
    CHECK(twisted_lambda(ex.algebra, one).is_zero());
    std::vector<TwistedElement> two{za, za};
    auto l2 = twisted_lambda(ex.algebra, two);
    CHECK(l2.x().is_zero());
    CHECK(l2.a() == vertical(t, RingElement::constant(t, Scalar::gaussian(8, 0, 2)) * cos_cos(t)));

    Rng rng(54);
    for (int i = 0; i < 20; ++i) {
        auto x = coiso::testing::random_multivector(rng, t, 2);
        std::vector<TwistedElement> xx{TwistedElement::multivector(x), TwistedElement::multivector(x)};
        auto out = twisted_lambda(ex.algebra, xx);
        CHECK(out.x() == -schouten_bracket(x, x));
        CHECK(out.a().is_zero());
        std::vector<TwistedElement> single{TwistedElement::multivector(x)};
        auto l1 = twisted_lambda(ex.algebra, single);
        CHECK(l1.x() == -schouten_bracket(ex.algebra.pi(), x));
        CHECK(l1.a() == projection_P(x));
    }
    std::vector<TwistedElement> two_x{TwistedElement::multivector(ex.algebra.pi()),
                                      TwistedElement::multivector(ex.algebra.pi()), za};
    CHECK(twisted_lambda(ex.algebra, two_x).is_zero());
}

TEST_CASE("kuranishi representative") {
    auto ex = build_T4_example();
    auto t = ex.algebra.chart();
    CHECK(kuranishi_rep(ex.algebra, ex.a) ==
          vertical(t, RingElement::constant(t, Scalar::gaussian(8, 0, 2)) * cos_cos(t)));
    CHECK(kuranishi_rep(ex.algebra, VerticalSection(t, 1)).is_zero());
    CHECK(kuranishi_rep(ex.algebra, constant_section(t, 5, 7)).is_zero());
    auto open = VerticalSection::from_components(t, {RingElement::sin_mode(t, "q2"), RingElement(t)});
    CHECK_ERROR_CODE(kuranishi_rep(ex.algebra, open), ErrorCode::NotClosed);
}

TEST_CASE("unshuffle signs") {
    std::vector<int> odd{1, 1};
    std::vector<std::size_t> first{1}, second{0}, id0{0}, id1{1};
    CHECK(unshuffle_sign(odd, first, second) == -1);
    CHECK(unshuffle_sign(odd, id0, id1) == 1);
    std::vector<int> mixed{0, 1};
    CHECK(unshuffle_sign(mixed, first, second) == 1);
    std::vector<int> three{1, 0, 1};
    std::vector<std::size_t> f{2}, s{0, 1};
    CHECK(unshuffle_sign(three, f, s) == -1);
}

TEST_CASE("higher Jacobi identities of the twisted algebra") {
    auto ex = build_T4_example();
    TwistedBrackets tb{ex.algebra};
    auto t = ex.algebra.chart();
    Rng rng(55);
    for (int i = 0; i < 30; ++i) {
        std::vector<TwistedElement> v{random_twisted(rng, t, rng.uniform(-1, 1))};
        CHECK(higher_jacobi_verify(tb, std::span<const TwistedElement>(v)));
    }
    std::vector<TwistedElement> zeros{TwistedElement::zero(t, 0), TwistedElement::zero(t, 0), TwistedElement::zero(t, 0)};
    CHECK(higher_jacobi_verify(tb, std::span<const TwistedElement>(zeros)));
    std::vector<TwistedElement> four(4, TwistedElement::zero(t, 0));
    CHECK_ERROR_CODE(higher_jacobi_verify(tb, std::span<const TwistedElement>(four)), ErrorCode::InvalidArgument);

    for (int i = 0; i < 30; ++i) {
        auto ch = coiso::testing::random_chart(rng, 2, 2);
        auto pi = coiso::testing::random_poisson(rng, ch);
        REQUIRE(schouten_bracket(pi, pi).is_zero());
        CoisoAlgebra alg(pi);
        TwistedBrackets b{alg};
        for (std::size_t n = 2; n <= 3; ++n) {
            std::vector<TwistedElement> v;
            for (std::size_t k = 0; k < n; ++k)
                v.push_back(random_twisted(rng, ch, rng.uniform(-1, 0)));
            CHECK(higher_jacobi_verify(b, std::span<const TwistedElement>(v)));
        }
    }
}

TEST_CASE("twisted Maurer-Cartan elements") {
    auto ex = build_T4_example();
    auto t = ex.algebra.chart();
    auto cst = [&](long v) { return RingElement::constant(t, Scalar(v)); };
    auto points = sample_grid(*t, 6);
    std::vector<MultiVectorField> taus{
        MultiVectorField(t, 2),
        MultiVectorField::basis(t, {"y1", "q1"}, cst(2)),
        MultiVectorField::basis(t, {"q1", "q2"}, cst(-1)),
        MultiVectorField::basis(t, {"y1", "q1"}, RingElement::cos_mode(t, "q2")),
        MultiVectorField::basis(t, {"y1", "q1"}, RingElement::cos_mode(t, "y1")),
        RingElement::coordinate(t, "p1") * MultiVectorField::basis(t, {"y2", "q1"}),
    };
    std::vector<VerticalSection> alphas{
        VerticalSection(t, 1),
        constant_section(t, 1, 2),
        ex.a,
        VerticalSection::from_components(t, {RingElement::cos_mode(t, "q1"), RingElement(t)}),
    };
    int vanish = 0, nonvanish = 0;
    for (const auto &tau : taus) {
        auto sum = ex.algebra.pi() + tau;
        bool poisson = schouten_bracket(sum, sum).is_zero();
        for (const auto &alpha : alphas) {
            TwistedElement v(tau, alpha);
            bool mc_zero = twisted_mc(ex.algebra, v).is_zero();
            bool expected = poisson && coisotropy_check_numeric(sum, alpha, points).coisotropic;
            CHECK(mc_zero == expected);
            (mc_zero ? vanish : nonvanish)++;
        }
    }
    CHECK(vanish > 0);
    CHECK(nonvanish > 0);
}
