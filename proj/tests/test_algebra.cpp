#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "artin/algebra.hpp"

using namespace artin;

namespace {

// Structure constants with e_0 acting as 1 on both sides and all other
// products zero until set_prod fills them in.
std::vector<Scalar> unital_sc(std::size_t d) {
    std::vector<Scalar> c(d * d * d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        c[(0 * d + j) * d + j] = 1;
        c[(j * d + 0) * d + j] = 1;
    }
    return c;
}

void set_prod(std::vector<Scalar>& c, std::size_t d, std::size_t i, std::size_t j, const Vec& v) {
    for (std::size_t k = 0; k < d; ++k) {
        c[(i * d + j) * d + k] = v[k];
        c[(j * d + i) * d + k] = v[k];
    }
}

// k[x]/(x^2), basis 1, x.
AlgebraPtr dual_numbers(Scalar p) {
    return FiniteLocalAlgebra::make(FieldConfig(p), 2, unital_sc(2));
}

// k[x,y]/(x^2,y^2), basis 1, x, y, xy.
AlgebraPtr square_zero_plane(Scalar p) {
    auto c = unital_sc(4);
    set_prod(c, 4, 1, 2, {0, 0, 0, 1});
    return FiniteLocalAlgebra::make(FieldConfig(p), 4, c);
}

// k[x]/(x^t), basis 1, x, ..., x^{t-1}.
AlgebraPtr truncated_line(Scalar p, std::size_t t) {
    auto c = unital_sc(t);
    for (std::size_t i = 1; i < t; ++i)
        for (std::size_t j = i; j < t; ++j)
            if (i + j < t) {
                Vec v(t, 0);
                v[i + j] = 1;
                set_prod(c, t, i, j, v);
            }
    return FiniteLocalAlgebra::make(FieldConfig(p), t, c);
}

struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    Scalar mod(Scalar p) { return Scalar(next() % p); }
};

Element random_element(const AlgebraPtr& a, TestRng& rng) {
    Vec v(a->dim());
    for (auto& c : v) c = rng.mod(a->field().p());
    return a->element(v);
}

} // namespace

TEST_CASE("dual numbers: products, units, inversion") {
    auto a = dual_numbers(2);
    Element one = a->one();
    Element x = a->basis_element(1);

    CHECK((x * x).is_zero());
    CHECK(one * x == x);
    CHECK((x + x).is_zero());
    CHECK(is_unit(one + x));
    CHECK_FALSE(is_unit(x));

    Element u = one + x;
    CHECK(u * u == one);
    CHECK(invert(u) == u);
    CHECK_THROWS_AS(invert(x), std::domain_error);
    CHECK_THROWS_AS(invert(a->zero()), std::domain_error);
}

TEST_CASE("square-zero plane: characteristic-dependent squares") {
    auto b2 = square_zero_plane(2);
    Element x = b2->basis_element(1), y = b2->basis_element(2);
    CHECK(((x + y) * (x + y)).is_zero());
    CHECK(x * y == b2->basis_element(3));
    CHECK((x * b2->basis_element(3)).is_zero());

    auto b3 = square_zero_plane(3);
    Element x3 = b3->basis_element(1), y3 = b3->basis_element(2);
    CHECK((x3 + y3) * (x3 + y3) == b3->basis_element(3).scaled(2));
}

TEST_CASE("maximal ideal power chain") {
    auto b = square_zero_plane(2);
    CHECK(b->max_ideal().dim() == 3);
    REQUIRE(b->nilpotency_index() == 3);
    CHECK(b->max_ideal_powers()[0].dim() == 3);
    CHECK(b->max_ideal_powers()[1].dim() == 1);
    CHECK(b->max_ideal_powers()[1].contains(b->basis_element(3).coords()));
    CHECK(b->max_ideal_powers()[2].dim() == 0);

    auto line = truncated_line(5, 4);
    REQUIRE(line->nilpotency_index() == 4);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(line->max_ideal_powers()[k].dim() == 3 - k);

    auto field_only = FiniteLocalAlgebra::make(FieldConfig(7), 1, {1});
    CHECK(field_only->nilpotency_index() == 1);
    CHECK(field_only->max_ideal().dim() == 0);
    CHECK(field_only->one() * field_only->one() == field_only->one());
}

TEST_CASE("inversion in longer truncations") {
    auto a = truncated_line(5, 4);
    Element one = a->one();
    Element x = a->basis_element(1);

    Element u = one.scaled(2) + x;
    Element v = invert(u);
    CHECK(v * u == one);

    // (1+x)^{-1} = 1 - x + x^2 - x^3 since x^4 = 0
    Element w = invert(one + x);
    Element expect = one - x + x * x - x * x * x;
    CHECK(w == expect);

    CHECK((one + x).pow(5) == one);
    CHECK(x.pow(3) == a->basis_element(3));
    CHECK(x.pow(4).is_zero());
    CHECK(x.pow(0) == one);
}

TEST_CASE("ring laws hold on random elements") {
    TestRng rng(0x5eed5eedULL);
    for (Scalar p : {Scalar(2), Scalar(3), Scalar(5)}) {
        auto a = truncated_line(p, 6);
        for (int trial = 0; trial < 25; ++trial) {
            Element u = random_element(a, rng);
            Element v = random_element(a, rng);
            Element w = random_element(a, rng);
            CHECK(u * v == v * u);
            CHECK((u * v) * w == u * (v * w));
            CHECK(u * (v + w) == u * v + u * w);
            if (is_unit(u)) CHECK(invert(u) * u == a->one());
        }
    }
}

TEST_CASE("validation rejects malformed structure constants") {
    FieldConfig f2(2);

    SUBCASE("wrong array size") {
        CHECK_THROWS_AS(FiniteLocalAlgebra::make(f2, 2, std::vector<Scalar>(7, 0)),
                        AlgebraValidationError);
    }
    SUBCASE("missing identity") {
        CHECK_THROWS_AS(FiniteLocalAlgebra::make(f2, 2, std::vector<Scalar>(8, 0)),
                        AlgebraValidationError);
    }
    SUBCASE("non-commutative products") {
        auto c = unital_sc(3);
        c[(1 * 3 + 2) * 3 + 2] = 1; // e1 e2 = e2 but e2 e1 = 0
        CHECK_THROWS_AS(FiniteLocalAlgebra::make(f2, 3, c), AlgebraValidationError);
    }
    SUBCASE("product escapes the maximal-ideal span") {
        auto c = unital_sc(2);
        set_prod(c, 2, 1, 1, {1, 0}); // e1^2 = 1
        CHECK_THROWS_AS(FiniteLocalAlgebra::make(FieldConfig(3), 2, c), AlgebraValidationError);
    }
    SUBCASE("idempotent inside the candidate ideal") {
        auto c = unital_sc(2);
        set_prod(c, 2, 1, 1, {0, 1}); // e1^2 = e1, associative but not nilpotent
        CHECK_THROWS_AS(FiniteLocalAlgebra::make(f2, 2, c), AlgebraValidationError);
    }
    SUBCASE("product of local pieces is rejected") {
        // basis 1, f, x with f^2 = f, fx = 0, x^2 = 0: this is k x k[x]/(x^2),
        // associative but not local; the power chain stabilizes at span{f}.
        auto c = unital_sc(3);
        set_prod(c, 3, 1, 1, {0, 1, 0});
        CHECK_THROWS_AS(FiniteLocalAlgebra::make(f2, 3, c), AlgebraValidationError);
    }
    SUBCASE("non-associative data fails the full sweep") {
        auto c = unital_sc(3);
        set_prod(c, 3, 1, 1, {0, 0, 1}); // a^2 = b
        set_prod(c, 3, 1, 2, {0, 0, 1}); // ab = b, so (aa)b = 0 != b = a(ab)
        CHECK_THROWS_AS(FiniteLocalAlgebra::make(f2, 3, c, Validate::full),
                        AlgebraValidationError);
    }
}

TEST_CASE("ideal generation") {
    auto b = square_zero_plane(2);
    Element x = b->basis_element(1), y = b->basis_element(2), xy = b->basis_element(3);

    IdealSpan ix = ideal_generated({x});
    CHECK(ix.dim() == 2);
    CHECK(ix.contains(x));
    CHECK(ix.contains(xy));
    CHECK_FALSE(ix.contains(y));

    IdealSpan ixy = ideal_generated({xy});
    CHECK(ixy.dim() == 1);

    IdealSpan ixplusy = ideal_generated({x + y});
    CHECK(ixplusy.dim() == 2);
    CHECK(ixplusy.contains(x + y));
    CHECK(ixplusy.contains(xy)); // x(x+y) = xy

    IdealSpan whole = ideal_generated({b->one()});
    CHECK(whole.dim() == 4);

    CHECK_THROWS_AS(ideal_generated({}), std::invalid_argument);
}

TEST_CASE("quotients") {
    auto b = square_zero_plane(2);
    Element x = b->basis_element(1), xy = b->basis_element(3);

    SUBCASE("killing the socle") {
        QuotientResult q = quotient(b, ideal_generated({xy}));
        REQUIRE(q.algebra->dim() == 3);
        CHECK(q.rep_coords == std::vector<std::size_t>{0, 1, 2});
        Element xb = q.algebra->basis_element(1), yb = q.algebra->basis_element(2);
        CHECK((xb * yb).is_zero());
        CHECK(q.algebra->nilpotency_index() == 2);
        CHECK(q.projection.apply(xy.coords()) == Vec(3, 0));
        CHECK(q.projection.apply(x.coords()) == Vec{0, 1, 0});
    }
    SUBCASE("killing a variable") {
        QuotientResult q = quotient(b, ideal_generated({x}));
        REQUIRE(q.algebra->dim() == 2);
        Element yb = q.algebra->basis_element(1);
        CHECK((yb * yb).is_zero());
    }
    SUBCASE("improper ideal is rejected") {
        IdealSpan everything(b, Subspace::full(b->field(), 4));
        CHECK_THROWS_AS(quotient(b, everything), std::invalid_argument);
    }
    SUBCASE("non-closed subspace is rejected under full validation") {
        IdealSpan not_closed(b, Subspace::span(b->field(), 4, {x.coords()}));
        CHECK_THROWS_AS(quotient(b, not_closed, Validate::full), std::invalid_argument);
    }
}

TEST_CASE("morphisms and fibers") {
    auto a = truncated_line(2, 2); // k[s]/(s^2)
    auto b = truncated_line(2, 4); // k[x]/(x^4)

    Mat m(FieldConfig(2), 4, 2);
    m.at(0, 0) = 1;
    m.at(2, 1) = 1; // s -> x^2
    AlgebraMorphism phi = AlgebraMorphism::from_matrix(a, b, m);
    CHECK(phi.apply(a->basis_element(1)) == b->basis_element(2));
    CHECK(phi.apply(a->one()) == b->one());

    SUBCASE("fiber of s -> x^2 is the dual numbers") {
        QuotientResult fiber = base_change_fiber(phi);
        REQUIRE(fiber.algebra->dim() == 2);
        CHECK(fiber.algebra->nilpotency_index() == 2);
        Element t = fiber.algebra->basis_element(1);
        CHECK((t * t).is_zero());
    }
    SUBCASE("fiber of the identity is the residue field") {
        QuotientResult fiber = base_change_fiber(AlgebraMorphism::identity(b));
        CHECK(fiber.algebra->dim() == 1);
    }
    SUBCASE("composition") {
        AlgebraMorphism idb = AlgebraMorphism::identity(b);
        AlgebraMorphism comp = idb.compose_after(phi);
        CHECK(comp.apply(a->basis_element(1)) == b->basis_element(2));
        CHECK_THROWS_AS(phi.compose_after(idb), std::invalid_argument);
    }
    SUBCASE("non-multiplicative images are rejected") {
        Mat bad(FieldConfig(2), 4, 2);
        bad.at(0, 0) = 1;
        bad.at(1, 1) = 1; // s -> x, but s^2 = 0 while x^2 != 0
        CHECK_THROWS_AS(AlgebraMorphism::from_matrix(a, b, bad), std::invalid_argument);
    }
    SUBCASE("non-local maps are rejected") {
        Mat bad(FieldConfig(2), 4, 2);
        bad.at(0, 0) = 1;
        bad.at(0, 1) = 1; // s -> 1
        CHECK_THROWS_AS(AlgebraMorphism::from_matrix(a, b, bad), std::invalid_argument);
    }
    SUBCASE("unit must map to the unit") {
        Mat bad(FieldConfig(2), 4, 2);
        bad.at(1, 0) = 1;
        CHECK_THROWS_AS(AlgebraMorphism::from_matrix(a, b, bad), std::invalid_argument);
    }
    SUBCASE("field mismatch is rejected") {
        auto a3 = truncated_line(3, 2);
        Mat id2(FieldConfig(3), 4, 2);
        CHECK_THROWS_AS(AlgebraMorphism::from_matrix(a3, b, id2), std::invalid_argument);
    }
}

TEST_CASE("minimal generators of the maximal ideal") {
    auto b = square_zero_plane(2);
    auto gens = minimal_generators(b);
    REQUIRE(gens.size() == 2);
    CHECK(gens[0] == b->basis_element(1));
    CHECK(gens[1] == b->basis_element(2));

    auto line = truncated_line(3, 5);
    auto lg = minimal_generators(line);
    REQUIRE(lg.size() == 1);
    CHECK(lg[0] == line->basis_element(1));

    auto field_only = FiniteLocalAlgebra::make(FieldConfig(5), 1, {1});
    CHECK(minimal_generators(field_only).empty());
}

TEST_CASE("elements from different algebras do not mix") {
    auto a = dual_numbers(2);
    auto b = dual_numbers(2); // distinct instance
    CHECK_THROWS_AS(a->one() + b->one(), std::invalid_argument);
    CHECK_THROWS_AS(a->element(Vec{1, 0, 0}), std::invalid_argument);
}
