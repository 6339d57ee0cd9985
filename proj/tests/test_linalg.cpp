#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "artin/linalg.hpp"

using namespace artin;

namespace {

// Small deterministic generator for property tests (not std::uniform_* so the
// draws are identical on every platform).
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    Scalar scalar(const FieldConfig& f) { return Scalar(next() % f.p()); }
};

Mat random_mat(TestRng& rng, const FieldConfig& f, std::size_t rows, std::size_t cols) {
    Mat m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = rng.scalar(f);
    return m;
}

Vec random_vec(TestRng& rng, const FieldConfig& f, std::size_t n) {
    Vec v(n);
    for (auto& x : v) x = rng.scalar(f);
    return v;
}

// Brute-force oracle: enumerate all vectors in F_p^n (small n only) and
// collect every exact solution of m v = b.
std::vector<Vec> all_solutions(const Mat& m, const Vec& b) {
    std::size_t n = m.cols();
    const FieldConfig& f = m.field();
    std::vector<Vec> found;
    Vec v(n, 0);
    while (true) {
        if (m.apply(v) == b) found.push_back(v);
        std::size_t i = 0;
        while (i < n && v[i] + 1 == f.p()) v[i++] = 0;
        if (i == n) break;
        ++v[i];
    }
    return found;
}

} // namespace

TEST_CASE("FieldConfig validates primality") {
    CHECK_NOTHROW(FieldConfig(2));
    CHECK_NOTHROW(FieldConfig(97));
    CHECK_NOTHROW(FieldConfig(2147483647)); // 2^31 - 1 is prime
    CHECK_THROWS_AS(FieldConfig(1), std::invalid_argument);
    CHECK_THROWS_AS(FieldConfig(4), std::invalid_argument);
    CHECK_THROWS_AS(FieldConfig(91), std::invalid_argument); // 7*13
}

TEST_CASE("field arithmetic") {
    FieldConfig f(7);
    CHECK(f.add(3, 5) == 1);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.neg(0) == 0);
    CHECK(f.reduce(-1) == 6);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    FieldConfig big(2147483647);
    for (Scalar a : {Scalar(2), Scalar(12345), Scalar(2147483646)})
        CHECK(big.mul(a, big.inv(a)) == 1);
}

TEST_CASE("rref identity and zero") {
    FieldConfig f2(2);
    Mat id = Mat::identity(f2, 2);
    auto r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.rank == 2);

    Mat z(FieldConfig(5), 3, 3);
    auto rz = rref(z);
    CHECK(rz.mat == z);
    CHECK(rz.rank == 0);
}

TEST_CASE("rref of the rank-1 all-ones matrix over F_2") {
    // Hand row-reduction: subtract row 0 from row 1.
    FieldConfig f2(2);
    Mat m(f2, 2, 2);
    m.at(0, 0) = 1; m.at(0, 1) = 1;
    m.at(1, 0) = 1; m.at(1, 1) = 1;
    auto r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.mat.at(0, 0) == 1);
    CHECK(r.mat.at(0, 1) == 1);
    CHECK(r.mat.at(1, 0) == 0);
    CHECK(r.mat.at(1, 1) == 0);
}

TEST_CASE("kernel basics") {
    FieldConfig f2(2);
    CHECK(kernel(Mat::identity(f2, 2)).dim() == 0);
    CHECK(kernel(Mat(f2, 2, 2)).dim() == 2);

    Mat m(f2, 2, 2);
    m.at(0, 0) = 1; m.at(0, 1) = 1;
    m.at(1, 0) = 1; m.at(1, 1) = 1;
    Subspace k = kernel(m);
    CHECK(k.dim() == 1);
    CHECK(k.contains(Vec{1, 1}));
    CHECK_FALSE(k.contains(Vec{1, 0}));
}

TEST_CASE("solve with the free-variables-zero tie-break") {
    FieldConfig f2(2);
    SUBCASE("identity") {
        Mat id = Mat::identity(f2, 3);
        Vec b{1, 0, 1};
        auto x = solve(id, b);
        REQUIRE(x.has_value());
        CHECK(*x == b);
    }
    SUBCASE("zero matrix, nonzero rhs") {
        Mat z(f2, 2, 2);
        CHECK_FALSE(solve(z, Vec{1, 0}).has_value());
    }
    SUBCASE("underdetermined, expected value frozen from enumeration oracle") {
        Mat m(f2, 2, 2);
        m.at(0, 0) = 1; m.at(0, 1) = 1;
        m.at(1, 0) = 1; m.at(1, 1) = 1;
        Vec b{1, 1};
        auto sols = all_solutions(m, b);
        REQUIRE(sols.size() == 2); // (1,0) and (0,1)
        auto x = solve(m, b);
        REQUIRE(x.has_value());
        CHECK(*x == Vec{1, 0}); // free variable x1 = 0
        bool is_solution = false;
        for (const auto& s : sols) is_solution = is_solution || (s == *x);
        CHECK(is_solution);
    }
}

TEST_CASE("subspace operations") {
    FieldConfig f2(2);
    Subspace full = Subspace::full(f2, 3);
    CHECK(full.contains(Vec{1, 1, 0}));

    Subspace sx = Subspace::span(f2, 2, {Vec{1, 0}});
    Subspace sy = Subspace::span(f2, 2, {Vec{0, 1}});
    CHECK(sx.sum(sy) == Subspace::full(f2, 2));
    CHECK(sx.intersect(sx) == sx);
    CHECK(sx.intersect(sy).dim() == 0);
    CHECK_THROWS_AS(sx.sum(Subspace::zero(f2, 3)), std::invalid_argument);
}

TEST_CASE("property: solve finds a solution whenever one exists") {
    TestRng rng(42);
    for (Scalar p : {2u, 3u, 5u, 7u}) {
        FieldConfig f(p);
        for (int it = 0; it < 40; ++it) {
            std::size_t rows = 1 + rng.next() % 6, cols = 1 + rng.next() % 6;
            Mat m = random_mat(rng, f, rows, cols);
            Vec v = random_vec(rng, f, cols);
            Vec b = m.apply(v);
            auto w = solve(m, b);
            REQUIRE(w.has_value());
            CHECK(m.apply(*w) == b);
        }
    }
}

TEST_CASE("property: rank-nullity and rref idempotence") {
    TestRng rng(7);
    for (Scalar p : {2u, 3u, 5u}) {
        FieldConfig f(p);
        for (int it = 0; it < 40; ++it) {
            std::size_t rows = 1 + rng.next() % 6, cols = 1 + rng.next() % 6;
            Mat m = random_mat(rng, f, rows, cols);
            auto r = rref(m);
            CHECK(kernel(m).dim() + r.rank == cols);
            auto rr = rref(r.mat);
            CHECK(rr.mat == r.mat);
        }
    }
}

TEST_CASE("property: dim(S+T) + dim(S^T) = dim S + dim T") {
    TestRng rng(99);
    for (Scalar p : {2u, 3u, 5u}) {
        FieldConfig f(p);
        for (int it = 0; it < 40; ++it) {
            std::size_t n = 1 + rng.next() % 6;
            std::vector<Vec> vs, ws;
            for (std::size_t i = 0, k = rng.next() % (n + 1); i < k; ++i)
                vs.push_back(random_vec(rng, f, n));
            for (std::size_t i = 0, k = rng.next() % (n + 1); i < k; ++i)
                ws.push_back(random_vec(rng, f, n));
            Subspace s = Subspace::span(f, n, vs);
            Subspace t = Subspace::span(f, n, ws);
            Subspace su = s.sum(t);
            Subspace in = s.intersect(t);
            CHECK(su.dim() + in.dim() == s.dim() + t.dim());
            CHECK(su.contains(s));
            CHECK(su.contains(t));
            CHECK(s.contains(in));
            CHECK(t.contains(in));
        }
    }
}

TEST_CASE("column space and reduce") {
    FieldConfig f3(3);
    Mat m(f3, 3, 2);
    m.at(0, 0) = 1; m.at(1, 0) = 2; m.at(2, 1) = 1;
    Subspace cs = Subspace::column_space(m);
    CHECK(cs.dim() == 2);
    CHECK(cs.contains(Vec{1, 2, 0}));
    CHECK(cs.contains(Vec{0, 0, 2}));
    CHECK_FALSE(cs.contains(Vec{1, 0, 0}));
    Vec reduced = cs.reduce(Vec{1, 2, 1});
    CHECK(cs.reduce(reduced) == reduced);
}
