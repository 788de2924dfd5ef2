#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ffod/polyring.hpp"

using namespace ffod;

namespace {

Poly P(const FieldSpec::Ptr& fs, const std::string& s) { return parse_poly(fs, s); }

}  // namespace

TEST_CASE("basic arithmetic") {
    auto f3 = FieldSpec::make(3, 1);
    CHECK(gcd(P(f3, "T^2+1"), P(f3, "T+1")) == Poly::constant(f3, 1));
    CHECK(powmod(Poly::t(f3), 0, P(f3, "T^2+1")) == Poly::constant(f3, 1));
    CHECK(powmod(Poly::t(f3), 4, P(f3, "T^2+1")) == Poly::constant(f3, 1));

    Poly a = P(f3, "T^3+2*T+1"), b = P(f3, "T^2+2");
    auto [quot, rest] = divrem(a, b);
    CHECK(quot * b + rest == a);
    CHECK(rest.degree() < b.degree());
}

TEST_CASE("monic_part") {
    auto f3 = FieldSpec::make(3, 1);
    auto [l1, m1] = monic_part(RatFunc::from_poly(P(f3, "2*T")));
    CHECK(l1 == 2);
    CHECK(m1.num == Poly::t(f3));

    auto [l2, m2] = monic_part(RatFunc::make(Poly::t(f3), P(f3, "2*T+1")));
    CHECK(l2 == 2);
    CHECK(m2.num == Poly::t(f3));
    CHECK(m2.den == P(f3, "T+2"));

    auto [l3, m3] = monic_part(RatFunc::from_poly(P(f3, "T^2+1")));
    CHECK(l3 == 1);
    CHECK(m3.num == P(f3, "T^2+1"));
}

TEST_CASE("is_irreducible") {
    auto f2 = FieldSpec::make(2, 1);
    auto f3 = FieldSpec::make(3, 1);
    CHECK(is_irreducible(P(f2, "T^2+T+1")));
    CHECK_FALSE(is_irreducible(P(f2, "T^2+1")));
    CHECK(is_irreducible(P(f3, "T^2+1")));
    CHECK_THROWS_AS(is_irreducible(Poly::constant(f2, 1)), ConstantInput);
}

TEST_CASE("factorize") {
    auto f2 = FieldSpec::make(2, 1);
    auto f3 = FieldSpec::make(3, 1);

    Poly t = Poly::t(f3), t1 = P(f3, "T+1");
    Poly prod = t * t * t1 * t1 * t1 * t1;
    auto fac = factorize(prod);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].first == t);
    CHECK(fac.factors[0].second == 2);
    CHECK(fac.factors[1].first == t1);
    CHECK(fac.factors[1].second == 4);

    auto fac2 = factorize(P(f2, "T^2+1"));
    REQUIRE(fac2.factors.size() == 1);
    CHECK(fac2.factors[0] == std::pair<Poly, unsigned>{P(f2, "T+1"), 2});

    auto fac3 = factorize(P(f3, "T^4+2"));  // T^4 - 1
    REQUIRE(fac3.factors.size() == 3);
    CHECK(fac3.factors[0].first == P(f3, "T+1"));
    CHECK(fac3.factors[1].first == P(f3, "T+2"));
    CHECK(fac3.factors[2].first == P(f3, "T^2+1"));

    SUBCASE("random multiply-back") {
        std::mt19937_64 rng(3);
        for (auto fs : {FieldSpec::make(2, 1), FieldSpec::make(3, 1),
                        FieldSpec::make(2, 2), FieldSpec::make(5, 1)}) {
            for (int i = 0; i < 60; ++i) {
                std::vector<std::uint32_t> c(1 + rng() % 9);
                for (auto& x : c) x = rng() % fs->q();
                Poly f(fs, c);
                if (f.is_zero() || f.is_constant()) continue;
                auto fac = factorize(f);
                Poly back = Poly::constant(fs, fac.lead);
                for (const auto& [g, e] : fac.factors) {
                    CHECK(is_irreducible(g));
                    CHECK(g.is_monic());
                    for (unsigned j = 0; j < e; ++j) back = back * g;
                }
                CHECK(back == f);
            }
        }
    }
}

TEST_CASE("gauss_count") {
    CHECK(gauss_count(2, 2) == 1);
    CHECK(gauss_count(3, 2) == 3);
    CHECK(gauss_count(2, 1) == 2);
    CHECK(gauss_count(2, 3) == 2);
    CHECK(gauss_count(5, 4) == 150);
}

TEST_CASE("irreducible enumeration and sieve") {
    auto f2 = FieldSpec::make(2, 1);
    auto v = irreducibles(f2, 2);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == P(f2, "T^2+T+1"));
    CHECK(irreducibles(FieldSpec::make(3, 1), 2).size() == 3);
    CHECK(irreducibles(f2, 3).size() == 2);

    SUBCASE("sieve count matches gauss_count and per-element filter") {
        for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{
                 {2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
            auto fs = FieldSpec::make(p, k);
            for (unsigned N = 1; N <= (fs->q() > 3 ? 5u : 8u); ++N) {
                const auto& sv = irreducible_sieve(fs, N);
                CHECK(mpz_class(sv.irreducible) == gauss_count(fs->q(), N));
                std::uint64_t step = std::max<std::uint64_t>(1, sv.total / 64);
                for (std::uint64_t idx = 0; idx < sv.total; idx += step) {
                    Poly f = monic_from_index(fs, N, idx);
                    CHECK(sv.is_irreducible(idx) == is_irreducible(f));
                    CHECK(monic_index(f) == idx);
                }
            }
        }
    }

    SUBCASE("worker determinism") {
        auto f5 = FieldSpec::make(5, 1);
        sieve_cache_clear();
        auto one = irreducible_sieve(f5, 6, 30, 1).composite;
        sieve_cache_clear();
        auto two = irreducible_sieve(f5, 6, 30, 2).composite;
        sieve_cache_clear();
        auto eight = irreducible_sieve(f5, 6, 30, 8).composite;
        CHECK(one == two);
        CHECK(one == eight);
    }

    SUBCASE("budget") {
        CHECK_THROWS_AS(irreducible_sieve(FieldSpec::make(5, 1), 20, 30),
                        BudgetExceeded);
    }
}

TEST_CASE("fermat property in (A/P)^x") {
    auto f3 = FieldSpec::make(3, 1);
    mpz_class e = mpz_class(3 * 3 * 3) - 1;
    for (const Poly& p : irreducibles(f3, 3)) {
        for (const Poly& a :
             {Poly::t(f3), P(f3, "T+1"), P(f3, "T^2+2*T+2"), P(f3, "2")}) {
            CHECK(powmod(a, e, p) == Poly::constant(f3, 1));
        }
    }
}

TEST_CASE("text round trip") {
    auto f3 = FieldSpec::make(3, 1);
    auto f4 = FieldSpec::make(2, 2);
    for (const char* s : {"T^3+2*T+1", "T", "2", "T^2+T", "2*T^5+T^2+2"}) {
        Poly f = parse_poly(f3, s);
        CHECK(parse_poly(f3, print_poly(f)) == f);
    }
    Poly g = parse_poly(f4, "(g+1)*T^2+g*T+1");
    CHECK(parse_poly(f4, print_poly(g)) == g);

    RatFunc r = parse_ratfunc(f3, "(T^2+1)/(T+2)");
    CHECK(print_ratfunc(r) == "(T^2+1)/(T+2)");
    RatFunc r2 = parse_ratfunc(f3, print_ratfunc(r));
    CHECK(r2.num == r.num);
    CHECK(r2.den == r.den);

    CHECK_THROWS_AS(parse_poly(f3, "T^"), ParseError);
}
