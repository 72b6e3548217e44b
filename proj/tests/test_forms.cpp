#include "coiso/obstruction.hpp"

#include "support/expect.hpp"
#include "support/random.hpp"

#include <doctest.h>

using namespace coiso;
using coiso::testing::Rng;
using coiso::testing::RingShape;

namespace {

Chart torus_chart() {
    return make_chart({{"y1", true}, {"y2", true}, {"q1", true}, {"q2", true}}, {"p1", "p2"});
}

DifferentialForm dd(const Chart &chart, std::initializer_list<const char *> names) {
    std::vector<std::string> v(names.begin(), names.end());
    return DifferentialForm::basis(chart, v);
}

// Substitutes the fibre coordinates y_j -> images[j] (linear in y) in a form.
DifferentialForm substitute_fibre(const DifferentialForm &omega, const std::vector<RingElement> &images) {
    const Chart &chart = omega.chart();
    auto subst = [&](const RingElement &f) {
        RingElement out(chart);
        for (const auto &[key, value] : f.terms()) {
            Exponents base = key;
            RingElement factor = RingElement::constant(chart, Scalar(1));
            for (std::size_t j = 0; j < chart->fibre_dim(); ++j) {
                std::size_t s = chart->slot(chart->fibre_index(j));
                factor = factor * power(images[j], base[s]);
                base[s] = 0;
            }
            out += RingElement::monomial(chart, base, value) * factor;
        }
        return out;
    };
    DifferentialForm out(chart, omega.degree());
    for (const auto &[m, c] : omega.terms()) {
        DifferentialForm term = DifferentialForm::function(subst(c));
        for (std::size_t i = 0; i < chart->dim(); ++i) {
            if (!(m & direction_bit(i)))
                continue;
            DifferentialForm factor =
                chart->is_fibre(i) ? de_rham_d(DifferentialForm::function(images[i - chart->base_dim()]))
                                   : DifferentialForm::basis_indices(chart, {i}, RingElement::constant(chart, Scalar(1)));
            term = wedge(term, factor);
        }
        out += term;
    }
    return out;
}

// Constant symplectic bivector on the torus chart with the zero section
// coisotropic and leaf span{@q1, @q2}: arbitrary couplings among the base
// directions, and an invertible constant pairing between p and q.
MultiVectorField random_torus_structure(Rng &rng, const Chart &chart) {
    auto cst = [&](mpq_class v) { return RingElement::constant(chart, Scalar(v)); };
    MultiVectorField pi = MultiVectorField::basis(chart, {"y2", "y1"}, cst(rng.rational()));
    const char *base[] = {"y1", "y2", "q1", "q2"};
    for (int t = 0; t < 2; ++t) {
        int i = rng.uniform(0, 3), j = rng.uniform(0, 3);
        if (i != j)
            pi += MultiVectorField::basis(chart, {base[i], base[j]}, cst(rng.rational()));
    }
    mpq_class n11 = rng.rational(), n12 = rng.coin() ? mpq_class(0) : rng.rational(), n22 = rng.rational();
    pi += MultiVectorField::basis(chart, {"p1", "q1"}, cst(n11));
    pi += MultiVectorField::basis(chart, {"p1", "q2"}, cst(n12));
    pi += MultiVectorField::basis(chart, {"p2", "q2"}, cst(n22));
    return pi;
}

} // namespace

TEST_CASE("de Rham differential") {
    auto chart = make_chart({{"x1", false}}, {"y1"});
    auto y1 = RingElement::coordinate(chart, "y1");
    CHECK(de_rham_d(y1 * dd(chart, {"x1"})) == dd(chart, {"y1", "x1"}));
    CHECK(de_rham_d(DifferentialForm::function(RingElement::constant(chart, Scalar(5)))).is_zero());
    auto t = torus_chart();
    CHECK(de_rham_d(dd(t, {"q1", "p1"}) + dd(t, {"q2", "p2"})).is_zero());

    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        auto ch = coiso::testing::random_chart(rng);
        auto w = coiso::testing::random_form(rng, ch, rng.uniform(0, 3));
        CHECK(de_rham_d(w).degree() == w.degree() + 1);
        CHECK(de_rham_d(de_rham_d(w)).is_zero());
        auto f = coiso::testing::random_ring(rng, ch);
        DifferentialForm df(ch, 1);
        for (std::size_t k = 0; k < ch->dim(); ++k)
            df.add_term(direction_bit(k), f.derivative(k));
        CHECK(de_rham_d(DifferentialForm::function(f)) == df);
    }
}

TEST_CASE("fibrewise degree classification") {
    auto t = torus_chart();
    CHECK(fibrewise_degree_classify(dd(t, {"q1", "p1"}) + dd(t, {"q2", "p2"})) == std::set<int>{1});
    CHECK(fibrewise_degree_classify(RingElement::sin_mode(t, "y1") * dd(t, {"y1", "y2"})) == std::set<int>{0});
    auto chart = make_chart({{"x1", false}}, {"y1"});
    auto y1 = RingElement::coordinate(chart, "y1");
    auto w = y1 * dd(chart, {"x1", "y1"});
    CHECK(fibrewise_degree_classify(w) == std::set<int>{2});
    CHECK(is_in_omega_le(w, 2));
    CHECK_FALSE(is_in_omega_le(w, 1));
    CHECK(fibrewise_degree_classify(DifferentialForm(chart, 2)).empty());
    CHECK(is_in_omega_le(DifferentialForm(chart, 2), 0));
}

TEST_CASE("fibrewise degree is stable under linear fibre substitutions") {
    Rng rng(32);
    auto chart = make_chart({{"x1", false}, {"x2", true}}, {"y1", "y2"});
    auto y1 = RingElement::coordinate(chart, "y1"), y2 = RingElement::coordinate(chart, "y2");
    auto cst = [&](long v) { return RingElement::constant(chart, Scalar(v)); };
    // determinant 1
    std::vector<RingElement> images{y1 + cst(2) * y2, cst(3) * y1 + cst(7) * y2};
    std::vector<RingElement> inverse{cst(7) * y1 - cst(2) * y2, cst(-3) * y1 + y2};
    for (int i = 0; i < 30; ++i) {
        // a fibrewise homogeneous form of random degree
        int k = rng.uniform(0, 3);
        RingShape shape;
        shape.max_y_degree = 0;
        DifferentialForm w(chart, 2);
        for (int t = 0; t < 2; ++t) {
            int ndy = rng.uniform(0, 2);
            int ny = k - ndy;
            if (ny < 0)
                continue;
            auto c = coiso::testing::random_ring(rng, chart, shape);
            for (int e = 0; e < ny; ++e)
                c = c * (rng.coin() ? y1 : y2);
            std::vector<std::string> names = ndy == 0 ? std::vector<std::string>{"x1", "x2"}
                                             : ndy == 1 ? std::vector<std::string>{rng.coin() ? "x1" : "x2", "y1"}
                                                        : std::vector<std::string>{"y1", "y2"};
            w += DifferentialForm::basis(chart, names, c);
        }
        auto moved = substitute_fibre(w, images);
        CHECK(fibrewise_degree_classify(moved) == fibrewise_degree_classify(w));
        CHECK(substitute_fibre(moved, inverse) == w);
    }
}

TEST_CASE("pullback along the zero section") {
    auto t = torus_chart();
    auto omega_c = dd(t, {"y1", "y2"});
    CHECK(pullback_zero_section(omega_c + dd(t, {"q1", "p1"}) + dd(t, {"q2", "p2"})) == omega_c);
    auto chart = make_chart({{"x1", false}, {"x2", true}}, {"y1"});
    CHECK(pullback_zero_section(dd(chart, {"y1", "x1"})).is_zero());
    auto f = RingElement::coordinate(chart, "x1") * RingElement::cos_mode(chart, "x2");
    CHECK(pullback_zero_section(f * dd(chart, {"x1", "x2"})) == f * dd(chart, {"x1", "x2"}));
    auto y1 = RingElement::coordinate(chart, "y1");
    CHECK(pullback_zero_section((f + y1) * dd(chart, {"x1", "x2"})) == f * dd(chart, {"x1", "x2"}));

    Rng rng(33);
    for (int i = 0; i < 100; ++i) {
        auto ch = coiso::testing::random_chart(rng);
        auto a = coiso::testing::random_form(rng, ch, rng.uniform(0, 2));
        auto b = coiso::testing::random_form(rng, ch, rng.uniform(0, 2));
        auto pa = pullback_zero_section(a);
        CHECK(pullback_zero_section(wedge(a, b)) == wedge(pa, pullback_zero_section(b)));
        for (const auto &[m, c] : pa.terms()) {
            CHECK(c.is_base_only());
            for (std::size_t j = 0; j < ch->fibre_dim(); ++j)
                CHECK_FALSE((m & direction_bit(ch->fibre_index(j))));
        }
    }
}

TEST_CASE("leafwise differential") {
    auto t = torus_chart();
    SubbundleSpec leaf(t, {"q1", "q2"});
    auto s1 = RingElement::sin_mode(t, "y1"), s2 = RingElement::sin_mode(t, "y2");
    CHECK(leafwise_d(-s1 * dd(t, {"q1"}) - s2 * dd(t, {"q2"}), leaf).is_zero());
    CHECK(leafwise_d(RingElement::constant(t, Scalar(3)) * dd(t, {"q1"}), leaf).is_zero());
    auto g = RingElement::cos_mode(t, "q1", 2) * s1;
    auto w = g * dd(t, {"q2"});
    CHECK(leafwise_d(w, leaf) == restrict_to_leaves(de_rham_d(w), leaf));
    CHECK(leafwise_d(w, leaf) == g.derivative("q1") * dd(t, {"q1", "q2"}));
    CHECK_THROWS_AS(leafwise_d(dd(t, {"y1"}), leaf), Error);
    CHECK_THROWS_AS(leafwise_d(RingElement::coordinate(t, "p1") * dd(t, {"q1"}), leaf), Error);
    CHECK_THROWS_AS(SubbundleSpec(t, {"p1"}), Error);
    CHECK_THROWS_AS(SubbundleSpec(t, {}), Error);

    Rng rng(34);
    RingShape base;
    base.base_only = true;
    for (int i = 0; i < 50; ++i) {
        DifferentialForm u(t, 1);
        u += dd(t, {"q1"}) * coiso::testing::random_ring(rng, t, base);
        u += dd(t, {"q2"}) * coiso::testing::random_ring(rng, t, base);
        CHECK(leafwise_d(u, leaf) == restrict_to_leaves(de_rham_d(u), leaf));
        CHECK(leafwise_d(leafwise_d(u, leaf), leaf).is_zero());
    }
}

TEST_CASE("musical isomorphisms") {
    auto ex = build_T4_example();
    const auto &pi = ex.algebra.pi();
    auto inv = musical_inverse_tilde(pi, ex.leaf, ex.a);
    auto t = pi.chart();
    auto expected = -RingElement::sin_mode(t, "y1") * dd(t, {"q1"}) - RingElement::sin_mode(t, "y2") * dd(t, {"q2"});
    CHECK(inv == expected);
    CHECK(sharp_tilde_star(pi, ex.leaf, inv) == ex.a);
    CHECK(musical_inverse(pi, MultiVectorField(t, 2)).is_zero());
    auto degenerate = MultiVectorField::basis(t, {"y1", "y2"});
    CHECK_ERROR_CODE(musical_inverse(degenerate, coordinate_vector(t, "y1")), ErrorCode::Degenerate);

    Rng rng(35);
    for (int i = 0; i < 50; ++i) {
        auto ch = make_chart({{"x1", rng.coin()}, {"x2", true}}, {"y1", "y2"});
        MultiVectorField sym(ch, 2);
        std::optional<RingMatrix> inverse;
        while (!inverse) {
            sym = MultiVectorField(ch, 2);
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t b = a + 1; b < 4; ++b)
                    if (rng.coin())
                        sym += MultiVectorField::basis_indices(ch, {a, b}, RingElement::constant(ch, Scalar(rng.rational())));
            inverse = invert_exact(bivector_matrix(sym));
        }
        auto z = coiso::testing::random_multivector(rng, ch, rng.uniform(0, 2));
        CHECK(sharp_star(sym, musical_inverse(sym, z)) == z);
        auto w = coiso::testing::random_form(rng, ch, rng.uniform(0, 2));
        CHECK(musical_inverse(sym, sharp_star(sym, w)) == w);
    }
}

TEST_CASE("P after sharp equals sharp tilde after restriction") {
    auto ex = build_T4_example();
    Rng rng(36);
    auto check = [&](const MultiVectorField &pi, const DifferentialForm &w) {
        CHECK(projection_P(sharp_star(pi, w)) == sharp_tilde_star(pi, ex.leaf, restrict_to_leaves(w, ex.leaf)));
    };
    auto t = ex.algebra.chart();
    for (int i = 0; i < 60; ++i) {
        auto pi = i < 20 ? ex.algebra.pi() : random_torus_structure(rng, t);
        for (int k = 0; k <= 2; ++k)
            check(pi, coiso::testing::random_form(rng, t, k));
    }
}
