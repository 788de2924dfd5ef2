#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "ffod/profile.hpp"

using namespace ffod;

namespace {

ArithProfile mk(std::uint64_t p, unsigned k, const std::string& a,
                std::uint64_t d) {
    auto fs = FieldSpec::make(p, k);
    return profile_new(fs, parse_ratfunc(fs, a), d);
}

}  // namespace

TEST_CASE("profile_new") {
    auto pr = mk(3, 1, "T", 2);
    CHECK(pr.lambda == 1);
    CHECK(pr.h == 1);
    CHECK(pr.m == 1);
    CHECK(pr.f == 1);
    CHECK(pr.f_bar == 1);
    CHECK(pr.p_flag);

    // a = 2 * T^2 * (T+1)^4
    auto fs = FieldSpec::make(3, 1);
    Poly t = Poly::t(fs), t1 = parse_poly(fs, "T+1");
    Poly a = (t * t * t1 * t1 * t1 * t1).scaled(2);
    auto pr3 = profile_new(fs, RatFunc::from_poly(a), 2);
    CHECK(pr3.lambda == 2);
    CHECK(pr3.h == 2);
    CHECK(pr3.m == 2);

    auto pr4 = mk(2, 1, "T", 3);
    CHECK(pr4.lambda == 1);
    CHECK(pr4.h == 1);
    CHECK(pr4.m == 1);
    CHECK(pr4.f == 2);
    CHECK(pr4.f_bar == 2);
    CHECK_FALSE(pr4.p_flag);

    SUBCASE("rational a takes h from both sides") {
        Poly num = t * t * t * t;       // T^4
        Poly den = t1 * t1;             // (T+1)^2
        auto prq = profile_new(fs, RatFunc::make(num, den), 2);
        CHECK(prq.h == 2);
    }

    SUBCASE("errors") {
        auto f3 = FieldSpec::make(3, 1);
        CHECK_THROWS_AS(profile_new(f3, parse_ratfunc(f3, "T"), 1), DLessThanTwo);
        CHECK_THROWS_AS(profile_new(f3, parse_ratfunc(f3, "T"), 3),
                        CharacteristicDividesD);
        CHECK_THROWS_AS(profile_new(f3, parse_ratfunc(f3, "2"), 2), ConstantA);
    }
}

TEST_CASE("is_constant_extension") {
    auto fs = FieldSpec::make(3, 1);
    Poly t = Poly::t(fs);
    auto pr_t = profile_new(fs, RatFunc::from_poly(t), 2);
    auto pr_t2 = profile_new(fs, RatFunc::from_poly((t * t).scaled(2)), 2);

    CHECK(is_constant_extension(pr_t, 1));
    CHECK(is_constant_extension(pr_t2, 2));
    CHECK_FALSE(is_constant_extension(pr_t, 2));
    CHECK_THROWS_AS(is_constant_extension(pr_t, 3), PDividesN);
}

TEST_CASE("e_N") {
    auto pr32 = mk(3, 1, "T", 2);
    CHECK(e_N(pr32, 1) == 1);
    CHECK(e_N(pr32, 2) == 4);

    auto pr23 = mk(2, 1, "T", 3);
    CHECK(e_N(pr23, 2) == 1);
    CHECK_THROWS_AS(e_N(pr23, 3), FDoesNotDivideN);

    SUBCASE("oracle against the big-integer definition") {
        for (auto& pr : {mk(3, 1, "T", 2), mk(2, 1, "T", 3), mk(5, 1, "T", 6),
                         mk(2, 2, "T", 3), mk(3, 1, "T+1", 4)}) {
            for (std::uint64_t N = pr.f; N <= 24; N += pr.f) {
                mpz_class big;
                mpz_ui_pow_ui(big.get_mpz_t(), pr.q(),
                              static_cast<unsigned>(N));
                big = (big - 1) / pr.d;
                CHECK(mpz_class(e_N(pr, N)) == gcd_supernatural(big, pr.base));
            }
        }
    }
}

TEST_CASE("constant_field_degree and f_uv") {
    auto pr32 = mk(3, 1, "T", 2);
    CHECK(constant_field_degree(pr32, 4, 4) == 2);
    CHECK(constant_field_degree(pr32, 4, 1) == 2);

    // h = 1 collapses f_uv to ord_{dv}(q)
    for (std::uint64_t v : {1ull, 2ull, 4ull, 8ull})
        for (std::uint64_t u : {1ull, 2ull})
            CHECK(f_uv(pr32, u, v) == mult_order(3, 2 * v));

    auto pr23 = mk(2, 1, "T", 3);
    CHECK(f_uv(pr23, 3, 1) == 2);
    CHECK(f_uv(pr23, 1, 1) == pr23.f);

    CHECK_THROWS_AS(f_uv(pr32, 3, 1), PreconditionViolated);
    CHECK_THROWS_AS(f_uv(pr32, 1, 3), PreconditionViolated);
}

TEST_CASE("geometric_degree") {
    auto pr32 = mk(3, 1, "T", 2);  // h = 1
    CHECK(geometric_degree(pr32, 2, 4) == 8);

    auto fs = FieldSpec::make(3, 1);
    Poly t = Poly::t(fs);
    auto pr_h2 = profile_new(fs, RatFunc::from_poly((t * t).scaled(2)), 2);
    CHECK(pr_h2.h == 2);
    CHECK(geometric_degree(pr_h2, 2, 1) == 1);  // uv = 2 divides h
    CHECK(geometric_degree(pr_h2, 2, 2) == 2);  // 4/(4,2)
}

TEST_CASE("structure of f_uv") {
    for (auto& pr : {mk(3, 1, "T", 2), mk(2, 1, "T", 3), mk(5, 1, "T+1", 6),
                     mk(3, 1, "T^2", 4), mk(2, 2, "T", 5)}) {
        auto vs = smooth_divisors_up_to(pr.base, 64);
        for (std::uint64_t v : vs) {
            std::uint64_t base_deg = f_uv(pr, 1, v);
            for (std::uint64_t u : divisors_of(pr.d)) {
                std::uint64_t deg = f_uv(pr, u, v);
                CHECK(deg % pr.f == 0);
                CHECK(gcd_supernatural(deg / pr.f, pr.base) == deg / pr.f);
                CHECK(deg % base_deg == 0);
            }
        }
    }
}

TEST_CASE("divisibility bracket is multiplicative in u") {
    for (auto& pr : {mk(5, 1, "T", 6), mk(2, 1, "T", 15), mk(3, 1, "T^2", 10)}) {
        for (std::uint64_t v : smooth_divisors_up_to(pr.base, 32)) {
            std::uint64_t fv = f_uv(pr, 1, v);
            for (std::uint64_t N = fv; N <= 8 * fv; N += fv) {
                for (std::uint64_t u1 : divisors_of(pr.d))
                    for (std::uint64_t u2 : divisors_of(pr.d)) {
                        if (std::gcd(u1, u2) != 1) continue;
                        bool both = N % f_uv(pr, u1 * u2, v) == 0;
                        bool sep = N % f_uv(pr, u1, v) == 0 &&
                                   N % f_uv(pr, u2, v) == 0;
                        CHECK(both == sep);
                    }
            }
        }
    }
}
