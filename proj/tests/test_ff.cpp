#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ffod/arith.hpp"
#include "ffod/ff.hpp"

using namespace ffod;

TEST_CASE("field construction") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(f3->q() == 3);
    CHECK(f3->p() == 3);

    auto f4 = FieldSpec::make(2, 2, std::vector<std::uint32_t>{1, 1, 1});
    CHECK(f4->q() == 4);

    CHECK_THROWS_AS(FieldSpec::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}),
                    ReducibleModulus);
    CHECK_THROWS_AS(FieldSpec::make(4, 1), NotPrime);

    SUBCASE("canonical modulus is deterministic") {
        auto a = FieldSpec::make(3, 2);
        auto b = FieldSpec::make(3, 2);
        CHECK(a->modulus() == b->modulus());
        CHECK(a->same(*b));
    }
}

TEST_CASE("arithmetic") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(f3->mul(2, 2) == 1);
    CHECK(f3->add(2, 2) == 1);
    CHECK(f3->sub(0, 1) == 2);

    auto f4 = FieldSpec::make(2, 2);
    std::uint32_t g = f4->generator();
    CHECK(f4->mul(g, f4->mul(g, g)) == 1);  // g^3 = 1

    for (auto fs : {f3, f4}) {
        for (std::uint32_t x = 1; x < fs->q(); ++x) {
            CHECK(fs->pow(x, 0) == 1);
            CHECK(fs->mul(x, fs->inv(x)) == 1);
        }
    }
    CHECK_THROWS_AS(f3->inv(0), DivisionByZero);
}

TEST_CASE("checked element ops") {
    auto f3 = FieldSpec::make(3, 1);
    auto f5 = FieldSpec::make(5, 1);
    FFElem a{2, f3}, b{2, f3}, c{2, f5};
    CHECK((a * b).code == 1);
    CHECK_THROWS_AS(a + c, FieldMismatch);
}

TEST_CASE("unit_order") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(f3->unit_order(1) == 1);
    CHECK(f3->unit_order(2) == 2);
    CHECK_THROWS_AS(f3->unit_order(0), ZeroElement);

    for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{
             {2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}, {2, 4}, {7, 1}}) {
        auto fs = FieldSpec::make(p, k);
        CHECK(fs->unit_order(fs->generator()) == fs->q() - 1);
        for (std::uint32_t x = 1; x < fs->q(); ++x) {
            std::uint64_t m = fs->unit_order(x);
            CHECK((fs->q() - 1) % m == 0);
            CHECK(fs->pow(x, fs->q() - 1) == 1);
            CHECK(fs->pow(x, m) == 1);
            for (std::uint64_t l : SupernaturalBase(m < 2 ? 2 : m).primes)
                if (m % l == 0) CHECK(fs->pow(x, m / l) != 1);
        }
    }
}

TEST_CASE("table arithmetic agrees with coefficient arithmetic") {
    std::mt19937_64 rng(42);
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{
             {2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
        auto fs = FieldSpec::make(p, k);
        for (int i = 0; i < 2500; ++i) {
            std::uint32_t a = rng() % fs->q(), b = rng() % fs->q();
            CHECK(fs->mul(a, b) == fs->mul_via_coeffs(a, b));
        }
    }
}

TEST_CASE("element text round trip") {
    for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{
             {3, 1}, {2, 2}, {3, 2}, {2, 4}}) {
        auto fs = FieldSpec::make(p, k);
        for (std::uint32_t x = 0; x < fs->q(); ++x)
            CHECK(fs->parse_elem(fs->print_elem(x)) == x);
    }
    auto f4 = FieldSpec::make(2, 2);
    CHECK(f4->print_elem(0) == "0");
    CHECK(f4->print_elem(1) == "1");
    CHECK_THROWS_AS(f4->parse_elem("q+1"), ParseError);
}
