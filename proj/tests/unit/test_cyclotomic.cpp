#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "rrcf/cyclotomic.hpp"
#include "rrcf/errors.hpp"

using namespace rrcf;

namespace {

using cld = std::complex<long double>;

cld naive_embed(const CycloElem& e) {
    cld sum = 0;
    const long double w = 2 * std::numbers::pi_v<long double> / static_cast<long double>(e.level());
    const auto c = e.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        sum += static_cast<long double>(c[i].get_d()) * std::polar(1.0L, w * static_cast<long double>(i));
    return sum;
}

cld to_cld(const ComplexBF& z) {
    return {static_cast<long double>(z.real().to_double()), static_cast<long double>(z.imag().to_double())};
}

int moebius(long n) {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

CycloElem random_element(std::mt19937_64& rng, long level) {
    std::uniform_int_distribution<long> coef(-20, 20), den(1, 6);
    std::vector<mpq_class> c;
    for (long i = 0; i < euler_phi(level); ++i) {
        c.emplace_back(coef(rng), den(rng));
        c.back().canonicalize();
    }
    return CycloElem::from_coeffs(level, c);
}

}  // namespace

TEST_CASE("euler phi and level data") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(60) == 16);
    CHECK(euler_phi(97) == 96);
    const auto& l15 = cyclo_level(15);
    CHECK(l15.poly == std::vector<long>{1, -1, 0, 1, -1, 1, 0, -1, 1});
    CHECK(cyclo_level(8).poly == std::vector<long>{1, 0, 0, 0, 1});
    CHECK(cyclo_level(1).poly == std::vector<long>{-1, 1});
    CHECK_THROWS_AS(cyclo_level(0), Error);
}

TEST_CASE("roots of unity satisfy their defining relations") {
    for (long n = 1; n <= 60; ++n) {
        const CycloElem z = CycloElem::root(n, 1);
        CHECK(z.pow(n) == CycloElem::one(n));
        for (long e = 1; e < n; ++e) CHECK(z.pow(e) != CycloElem::one(n));

        CycloElem phi_at_z = CycloElem::zero(n);
        const auto& poly = cyclo_level(n).poly;
        for (std::size_t i = 0; i < poly.size(); ++i) phi_at_z += CycloElem::integer(n, poly[i]) * z.pow(static_cast<long>(i));
        CHECK(phi_at_z.is_zero());

        CycloElem prim = CycloElem::zero(n);
        for (long e = 0; e < n; ++e)
            if (gcd_long(e, n) == 1) prim += CycloElem::root(n, e);
        CHECK(prim == CycloElem::integer(n, moebius(n)));
    }
}

TEST_CASE("embedding matches direct evaluation") {
    std::mt19937_64 rng(7);
    for (long n : {1L, 2L, 3L, 5L, 7L, 12L, 15L, 30L, 45L, 60L}) {
        for (int rep = 0; rep < 5; ++rep) {
            const CycloElem a = random_element(rng, n), b = random_element(rng, n);
            const cld ea = naive_embed(a), eb = naive_embed(b);
            CHECK(std::abs(to_cld(a.embed(128)) - ea) < 1e-12L);
            CHECK(std::abs(to_cld((a * b).embed(128)) - ea * eb) < 1e-9L);
            CHECK(std::abs(to_cld((a + b).embed(128)) - (ea + eb)) < 1e-12L);
            if (!a.is_zero()) CHECK(std::abs(to_cld(a.inv().embed(128)) * ea - 1.0L) < 1e-9L);
        }
        for (long e = 0; e < n; ++e) {
            const ComplexBF z = CycloElem::root(n, e).embed(200);
            const BigFloat arg = BigFloat::pi(200) * BigFloat(2L * e, 200) / BigFloat(n, 200);
            CHECK((z.real() - cos(arg)).log2_abs() < -190);
            CHECK((z.imag() - sin(arg)).log2_abs() < -190);
        }
    }
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(11);
    for (long n : {4L, 9L, 20L, 21L, 36L}) {
        for (int rep = 0; rep < 8; ++rep) {
            const CycloElem a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a - a == CycloElem::zero(n));
            if (!b.is_zero()) CHECK((a / b) * b == a);
            CHECK(a.pow(3) == a * a * a);
            if (!a.is_zero()) CHECK(a.pow(-2) * a * a == CycloElem::one(n));
        }
    }
}

TEST_CASE("lift, galois and common level") {
    std::mt19937_64 rng(3);
    const CycloElem a = random_element(rng, 12);
    const CycloElem lifted = a.lift(60);
    CHECK(lifted.level() == 60);
    CHECK(std::abs(to_cld(lifted.embed(128)) - naive_embed(a)) < 1e-12L);
    CHECK_THROWS_AS(a.lift(18), Error);

    for (long s : {1L, 5L, 7L, 11L})
        for (long t : {1L, 5L, 7L, 11L}) CHECK(a.galois(s).galois(t) == a.galois(s * t % 12));
    CHECK(CycloElem::root(12, 1).galois(5) == CycloElem::root(12, 5));
    const CycloElem b = random_element(rng, 12);
    CHECK((a * b).galois(7) == a.galois(7) * b.galois(7));

    const CycloElem x = CycloElem::root(4, 1), y = CycloElem::root(6, 1);
    auto [xl, yl] = common_level(x, y);
    CHECK(xl.level() == 12);
    CHECK(yl.level() == 12);
    CHECK((x * y) == CycloElem::root(12, 5));
    CHECK((x + y).level() == 12);
}

TEST_CASE("rational detection and root exponents") {
    CHECK(CycloElem::rational(7, mpq_class(3, 4)).is_rational());
    CHECK(CycloElem::rational(7, mpq_class(3, 4)).rational_value() == mpq_class(3, 4));
    CHECK_FALSE(CycloElem::root(7, 2).is_rational());
    CHECK_THROWS_AS(CycloElem::root(7, 2).rational_value(), Error);
    CHECK(CycloElem::root(10, 5) == CycloElem::integer(10, -1));
    CHECK(CycloElem::root(9, 14).root_exponent() == 5);
    CHECK(CycloElem::root(9, -1) == CycloElem::root(9, 8));
    CHECK_THROWS_AS(CycloElem::zero(5).inv(), Error);
    try {
        (void)CycloElem::zero(5).inv();
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivisionByZero);
    }
}

TEST_CASE("classical square roots") {
    for (long level : {5L, 10L, 15L, 60L}) {
        const CycloElem s = sqrt5_gauss(level);
        CHECK(s * s == CycloElem::integer(level, 5));
        const ComplexBF v = s.embed(128);
        CHECK(std::fabs(v.real().to_double() - std::sqrt(5.0)) < 1e-14);
        CHECK(std::fabs(v.imag().to_double()) < 1e-30);
    }
    for (long level : {3L, 6L, 12L, 30L}) {
        const CycloElem s = sqrt_minus3(level);
        CHECK(s * s == CycloElem::integer(level, -3));
        CHECK(s.embed(128).imag().to_double() == doctest::Approx(std::sqrt(3.0)));
    }
    CHECK_THROWS_AS(sqrt5_gauss(6), Error);
    CHECK_THROWS_AS(sqrt_minus3(5), Error);
}

TEST_CASE("integer polynomial reduction") {
    // 1 + z + ... + z^4 vanishes at a primitive fifth root
    CHECK(CycloElem::from_integer_poly(5, {1, 1, 1, 1, 1}).is_zero());
    // z^7 at level 5 is z^2
    std::vector<mpz_class> c(8, 0);
    c[7] = 3;
    CHECK(CycloElem::from_integer_poly(5, c) == CycloElem::integer(5, 3) * CycloElem::root(5, 2));
    CHECK_THROWS(CycloElem::from_coeffs(5, std::vector<mpq_class>(5, 1)));
}
