#include <doctest.h>

#include <random>

#include "azurep/repscheme.hpp"

using namespace azurep;
using namespace azurep::quiver;

namespace {

/// One vertex, one loop x, relation x^2.
QuiverPresentation square_zero_loop(ExactField field) {
    Relation rel;
    rel.terms.push_back({field.one(), {0, 0}});
    return QuiverPresentation(field, 1, {{"x", 1, 1}}, {rel});
}

QuiverPresentation arrow_quiver(ExactField field) {
    return QuiverPresentation(field, 2, {{"a", 1, 2}}, {});
}

FreePresentation square_zero_presentation(ExactField field) {
    FreePresentation r;
    r.field = field;
    r.generators = {"x"};
    NCPoly rel(field);
    rel.add_term({0, 0}, field.one());
    r.relations.push_back(rel);
    return r;
}

Mat mat2(ExactField f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    Mat m(f, 2, 2);
    m.at(0, 0) = f.from_int(a);
    m.at(0, 1) = f.from_int(b);
    m.at(1, 0) = f.from_int(c);
    m.at(1, 1) = f.from_int(d);
    return m;
}

} // namespace

TEST_CASE("rep equations of the square-zero loop") {
    const ExactField Q = ExactField::rationals();
    const QuiverPresentation q = square_zero_loop(Q);

    SUBCASE("alpha = (1) gives x^2 = 0") {
        const PolynomialSystem sys = rep_equations(q, DimensionVector({1}));
        REQUIRE(sys.variables.size() == 1);
        REQUIRE(sys.polynomials.size() == 1);
        CHECK(sys.variables[0] == "x_0_0");
        Poly expected = Poly::variable(Q, 0) * Poly::variable(Q, 0);
        CHECK(sys.polynomials[0] == expected);
    }

    SUBCASE("alpha = (2) gives the four entries of X^2") {
        const PolynomialSystem sys = rep_equations(q, DimensionVector({2}));
        REQUIRE(sys.variables.size() == 4);
        REQUIRE(sys.polynomials.size() == 4);
        // independent symbolic expansion of X^2 for X = (x0 x1; x2 x3)
        auto v = [&](int i) { return Poly::variable(Q, i); };
        const std::vector<Poly> expected = {
            v(0) * v(0) + v(1) * v(2), v(0) * v(1) + v(1) * v(3),
            v(2) * v(0) + v(3) * v(2), v(2) * v(1) + v(3) * v(3)};
        for (int i = 0; i < 4; ++i) CHECK(sys.polynomials[i] == expected[i]);
    }

    SUBCASE("counts follow the shape formula") {
        // sum over relations of d_t * d_s polynomials, arrows give variables
        const PolynomialSystem sys = rep_equations(q, DimensionVector({3}));
        CHECK(sys.variables.size() == 9);
        CHECK(sys.polynomials.size() == 9);
    }
}

TEST_CASE("rep equations of the arrow quiver") {
    const ExactField Q = ExactField::rationals();
    const PolynomialSystem sys = rep_equations(arrow_quiver(Q), DimensionVector({1, 1}));
    CHECK(sys.variables.size() == 1);
    CHECK(sys.polynomials.empty());
}

TEST_CASE("non-uniform relations are rejected") {
    const ExactField Q = ExactField::rationals();
    // arrows a: 1 -> 2 and a loop x at 1; a + x is not uniform
    Relation rel;
    rel.terms.push_back({Q.one(), {0}});
    rel.terms.push_back({Q.one(), {1}});
    CHECK_THROWS_AS(QuiverPresentation(Q, 2, {{"a", 1, 2}, {"x", 1, 1}}, {rel}), InputError);
    // non-composable path
    Relation bad;
    bad.terms.push_back({Q.one(), {0, 0}});
    CHECK_THROWS_AS(QuiverPresentation(Q, 2, {{"a", 1, 2}}, {bad}), InputError);
}

TEST_CASE("is_representation on the square-zero loop") {
    const ExactField F2 = ExactField::prime_field(2);
    const QuiverPresentation q = square_zero_loop(F2);
    const DimensionVector alpha({2});
    CHECK(is_representation(q, alpha, {{mat2(F2, 0, 0, 0, 0)}}));
    CHECK(is_representation(q, alpha, {{mat2(F2, 0, 1, 0, 0)}}));
    CHECK(!is_representation(q, alpha, {{mat2(F2, 1, 0, 0, 1)}}));
    CHECK_THROWS_AS(is_representation(q, alpha, {{Mat(F2, 1, 2)}}), InputError);
}

TEST_CASE("enumeration matches a raw scan") {
    const ExactField F2 = ExactField::prime_field(2);
    const QuiverPresentation q = square_zero_loop(F2);

    SUBCASE("alpha = (1)") {
        const auto points = enumerate_reps(q, DimensionVector({1}), F2, 1000);
        CHECK(points.size() == 1);
    }
    SUBCASE("alpha = (2): four square-zero matrices, checked independently") {
        const auto points = enumerate_reps(q, DimensionVector({2}), F2, 1000);
        std::size_t expected = 0;
        for (int bits = 0; bits < 16; ++bits) {
            const Mat m = mat2(F2, bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1);
            if ((m * m).is_zero()) ++expected;
        }
        CHECK(expected == 4);
        CHECK(points.size() == expected);
        for (const auto& p : points) CHECK(is_representation(q, DimensionVector({2}), p));
    }
    SUBCASE("arrow quiver has q points") {
        CHECK(enumerate_reps(arrow_quiver(F2), DimensionVector({1, 1}), F2, 1000).size() == 2);
    }
    SUBCASE("budget refusal carries the required size") {
        CHECK_THROWS_AS(enumerate_reps(q, DimensionVector({4}), F2, 100), BudgetError);
    }
}

TEST_CASE("gl_action conjugates and preserves representations") {
    const ExactField F2 = ExactField::prime_field(2);
    const QuiverPresentation q = square_zero_loop(F2);
    const DimensionVector alpha({2});
    const RepPoint p{{mat2(F2, 0, 1, 0, 0)}};
    const Mat swap = mat2(F2, 0, 1, 1, 0);
    const RepPoint moved = gl_action(q, alpha, {swap}, p);
    CHECK(moved.matrices[0] == mat2(F2, 0, 0, 1, 0));
    CHECK_THROWS_AS(gl_action(q, alpha, {mat2(F2, 1, 1, 1, 1)}, p), InputError);

    // composite action law on random samples over F_3
    const ExactField F3 = ExactField::prime_field(3);
    const QuiverPresentation q3 = square_zero_loop(F3);
    const auto points = enumerate_reps(q3, alpha, F3, 100000);
    const auto tuples = enumerate_gl_tuples(alpha, F3, 1000);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const auto& g = tuples[rng() % tuples.size()];
        const auto& h = tuples[rng() % tuples.size()];
        const auto& p3 = points[rng() % points.size()];
        const std::vector<Mat> gh{g[0] * h[0]};
        CHECK(gl_action(q3, alpha, gh, p3) ==
              gl_action(q3, alpha, g, gl_action(q3, alpha, h, p3)));
    }
}

TEST_CASE("gl tuple enumeration matches the order formula") {
    const ExactField F2 = ExactField::prime_field(2);
    CHECK(gl_order(2, 2) == 6);
    CHECK(gl_order(3, 2) == 48);
    CHECK(gl_order(2, 1) == 1);
    CHECK(enumerate_gl_tuples(DimensionVector({2}), F2, 100).size() == 6);
    CHECK(enumerate_gl_tuples(DimensionVector({1, 1}), F2, 100).size() == 1);
    CHECK(gl_alpha_order(DimensionVector({2, 1}), 3) == 48 * 2);
    CHECK_THROWS_AS(enumerate_gl_tuples(DimensionVector({4}), ExactField::prime_field(5), 1000),
                    BudgetError);
}

TEST_CASE("orbit analysis of the square-zero loop over F_2") {
    const ExactField F2 = ExactField::prime_field(2);
    const auto analysis =
        orbit_analysis(square_zero_loop(F2), DimensionVector({2}), F2, 1000, 1000);
    CHECK(analysis.points.size() == 4);
    CHECK(analysis.group_order == 6);
    REQUIRE(analysis.orbits.size() == 2);
    CHECK(analysis.orbits[0].size == 1); // the zero representation comes first
    CHECK(analysis.orbits[0].stabilizer_order == 6);
    CHECK(analysis.orbits[1].size == 3);
    CHECK(analysis.orbits[1].stabilizer_order == 2);
    std::uint64_t covered = 0;
    for (const auto& o : analysis.orbits) covered += o.size;
    CHECK(covered == analysis.points.size());
}

TEST_CASE("free loop at alpha = (1) is fixed pointwise") {
    const ExactField F3 = ExactField::prime_field(3);
    const QuiverPresentation free_loop(F3, 1, {{"x", 1, 1}}, {});
    const auto analysis = orbit_analysis(free_loop, DimensionVector({1}), F3, 1000, 1000);
    CHECK(analysis.points.size() == 3);
    CHECK(analysis.orbits.size() == 3);
    for (const auto& o : analysis.orbits) CHECK(o.size == 1);
}

TEST_CASE("decompose_by_idempotents") {
    const ExactField Q = ExactField::rationals();
    const QuiverPresentation q = arrow_quiver(Q);

    SUBCASE("standard idempotents need no base change") {
        const Mat e1 = mat2(Q, 1, 0, 0, 0), e2 = mat2(Q, 0, 0, 0, 1);
        const Mat arrow = mat2(Q, 0, 0, 3, 0); // block (2,1)
        const auto d = decompose_by_idempotents(q, {e1, e2}, {arrow});
        CHECK(d.alpha.d == std::vector<std::int64_t>{1, 1});
        CHECK(d.base_change == Mat::identity(Q, 2));
        CHECK(d.block_point.matrices[0].at(0, 0) == Q.from_int(3));
    }

    SUBCASE("non-diagonal idempotent produces an explicit conjugator") {
        // e = (1 1; 0 0) is idempotent with image spanned by (1,0)
        const Mat e1 = mat2(Q, 1, 1, 0, 0), e2 = mat2(Q, 0, -1, 0, 1);
        const Mat arrow = e2 * mat2(Q, 0, 0, 5, 0) * e1;
        const auto d = decompose_by_idempotents(q, {e1, e2}, {arrow});
        CHECK(d.alpha.d == std::vector<std::int64_t>{1, 1});
        const auto uinv = inverse(d.base_change);
        REQUIRE(uinv.has_value());
        // round trip: conjugating back recovers the input
        Mat blocks(Q, 2, 2);
        blocks.at(1, 0) = d.block_point.matrices[0].at(0, 0);
        CHECK(d.base_change * blocks * *uinv == arrow);
    }

    SUBCASE("k = 1 always gives alpha = (n)") {
        const QuiverPresentation loop = square_zero_loop(Q);
        const auto d = decompose_by_idempotents(loop, {Mat::identity(Q, 2)},
                                                {mat2(Q, 0, 1, 0, 0)});
        CHECK(d.alpha.d == std::vector<std::int64_t>{2});
    }

    SUBCASE("broken idempotents are rejected") {
        CHECK_THROWS_AS(
            decompose_by_idempotents(q, {mat2(Q, 1, 0, 0, 1), mat2(Q, 0, 0, 0, 1)}, {Mat(Q, 2, 2)}),
            InputError);
    }
}

TEST_CASE("random two-vertex decompositions round trip") {
    const ExactField F5 = ExactField::prime_field(5);
    const QuiverPresentation q = arrow_quiver(F5);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        // random conjugate of a standard split representation on F_5^3
        Mat u(F5, 3, 3);
        do {
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c)
                    u.at(r, c) = F5.from_int(static_cast<std::int64_t>(rng() % 5));
        } while (!is_invertible(u));
        const Mat uinv = *inverse(u);
        Mat e1(F5, 3, 3), e2(F5, 3, 3), arrow(F5, 3, 3);
        e1.at(0, 0) = F5.one();
        e2.at(1, 1) = F5.one();
        e2.at(2, 2) = F5.one();
        arrow.at(1, 0) = F5.from_int(static_cast<std::int64_t>(rng() % 5));
        arrow.at(2, 0) = F5.from_int(static_cast<std::int64_t>(rng() % 5));
        const auto d = decompose_by_idempotents(q, {u * e1 * uinv, u * e2 * uinv},
                                                {u * arrow * uinv});
        CHECK(d.alpha.d == std::vector<std::int64_t>{1, 2});
        // re-embed and undo the base change
        const Mat w = d.base_change;
        Mat rebuilt(F5, 3, 3);
        for (std::size_t r = 0; r < 2; ++r)
            rebuilt.at(1 + r, 0) = d.block_point.matrices[0].at(r, 0);
        CHECK(w * rebuilt * *inverse(w) == u * arrow * uinv);
    }
}

TEST_CASE("root algebra presentations") {
    const ExactField Q = ExactField::rationals();
    const FreePresentation r = square_zero_presentation(Q);

    SUBCASE("degree 1 is the abelianization") {
        const auto root = root_algebra_presentation(r, 1);
        CHECK(root.generator_names == std::vector<std::string>{"x_0_0"});
        REQUIRE(root.relations.size() == 1);
        const auto sys = root.abelianized();
        Poly expected = Poly::variable(Q, 0) * Poly::variable(Q, 0);
        CHECK(sys.polynomials[0] == expected);
    }

    SUBCASE("free presentations stay free") {
        FreePresentation free;
        free.field = Q;
        free.generators = {"x"};
        const auto root = root_algebra_presentation(free, 3);
        CHECK(root.generator_names.size() == 9);
        CHECK(root.relations.empty());
    }

    SUBCASE("noncommutative relations remember the order of factors") {
        const auto root = root_algebra_presentation(r, 2);
        REQUIRE(root.relations.size() == 4);
        // entry (0,0) of X * X is x00 x00 + x01 x10 as words
        NCPoly expected(Q);
        expected.add_term({0, 0}, Q.one());
        expected.add_term({1, 2}, Q.one());
        CHECK(root.relations[0] == expected);
    }

    SUBCASE("abelianization identity against rep_equations, n = 1..3, Q and F_2") {
        for (const ExactField& field : {ExactField::rationals(), ExactField::prime_field(2)}) {
            const FreePresentation rf = square_zero_presentation(field);
            for (std::size_t n = 1; n <= 3; ++n) {
                const auto root = root_algebra_presentation(rf, n);
                const auto abelian = root.abelianized();
                const auto reference = rep_equations(
                    rf.loop_quiver(), DimensionVector({static_cast<std::int64_t>(n)}));
                CHECK(abelian.variables == reference.variables);
                CHECK(abelian.same_polynomial_set(reference));
            }
        }
    }
}

TEST_CASE("point counts agree between the two routes") {
    const FreePresentation r = square_zero_presentation(ExactField::rationals());
    struct Case { std::size_t n; std::int64_t q; std::uint64_t expected; };
    for (const auto& c : {Case{1, 2, 1}, Case{2, 2, 4}, Case{2, 3, 9}}) {
        const auto report = point_count_check(r, c.n, c.q, 1'000'000);
        CHECK(report.equal);
        CHECK(report.equation_solutions == c.expected);
        CHECK(report.morphism_count == c.expected);
    }
    FreePresentation free;
    free.field = ExactField::rationals();
    free.generators = {"x"};
    const auto report = point_count_check(free, 2, 2, 1'000'000);
    CHECK(report.equal);
    CHECK(report.equation_solutions == 16);
}

TEST_CASE("morphism counting into structure algebras") {
    const ExactField F2 = ExactField::prime_field(2);
    const FreePresentation r = square_zero_presentation(F2);

    SUBCASE("free algebras are counted by formula") {
        FreePresentation free;
        free.field = F2;
        free.generators = {"x"};
        const auto into_m4 = count_algebra_morphisms(free, alg::matrix_algebra(4, F2), 10);
        CHECK(into_m4.by_formula);
        CHECK(into_m4.count == 65536);
        const auto into_tensor = count_algebra_morphisms(
            free, alg::full_tensor(alg::matrix_algebra(2, F2), alg::matrix_algebra(2, F2)), 10);
        CHECK(into_tensor.by_formula);
        CHECK(into_tensor.count == 65536);
    }

    SUBCASE("split tensor identity |Alg(R, M_2 (x) M_2)| = |Alg(R, M_4)|") {
        const auto tensor_count = count_algebra_morphisms(
            r, alg::full_tensor(alg::matrix_algebra(2, F2), alg::matrix_algebra(2, F2)), 1 << 17);
        const auto m4_count = count_algebra_morphisms(r, alg::matrix_algebra(4, F2), 1 << 17);
        CHECK(!tensor_count.by_formula);
        CHECK(tensor_count.count == m4_count.count);
    }

    SUBCASE("small split tensor identity |Alg(R, M_1 (x) M_2)| = |Alg(R, M_2)|") {
        const auto tensor_count = count_algebra_morphisms(
            r, alg::full_tensor(alg::matrix_algebra(1, F2), alg::matrix_algebra(2, F2)), 1 << 17);
        const auto m2_count = count_algebra_morphisms(r, alg::matrix_algebra(2, F2), 1 << 17);
        CHECK(tensor_count.count == m2_count.count);
        CHECK(m2_count.count == 4);
    }

    SUBCASE("budget refusal") {
        CHECK_THROWS_AS(count_algebra_morphisms(r, alg::matrix_algebra(4, F2), 100), BudgetError);
    }
}

TEST_CASE("sheaf gluing for the cover {M_2, M_3} over F_2") {
    const ExactField F2 = ExactField::prime_field(2);
    const FreePresentation r = square_zero_presentation(F2);
    const auto report = sheaf_gluing_check(r, {2, 3}, 2, 1 << 20);
    CHECK(report.base_solutions == 1);
    CHECK(report.matched_pairs == 1);
    CHECK(report.equal);
    REQUIRE(report.cover_morphism_counts.size() == 2);
    CHECK(report.cover_morphism_counts[0] == 4);
}
