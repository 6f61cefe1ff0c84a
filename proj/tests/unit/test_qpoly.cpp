#include <doctest.h>

#include "rrcf/closed_forms.hpp"
#include "rrcf/errors.hpp"
#include "rrcf/qpoly.hpp"

using namespace rrcf;

namespace {

QPolynomial poly(std::vector<long> c) {
    std::vector<mpz_class> z(c.begin(), c.end());
    return QPolynomial(z);
}

CycloElem evaluate(const BiPolynomial& p, const CycloElem& a, const CycloElem& x) {
    CycloElem sum = CycloElem::zero(a.level());
    CycloElem ai = CycloElem::one(a.level());
    for (const auto& t : p.terms()) {
        sum += ai * t.evaluate(x);
        ai *= a;
    }
    return sum;
}

}  // namespace

TEST_CASE("polynomial basics") {
    const QPolynomial p = poly({1, 2, 0, 0});
    CHECK(p.degree() == 1);
    CHECK(QPolynomial().degree() == -1);
    CHECK(p[5] == 0);
    CHECK(p * poly({-1, 1}) == poly({-1, -1, 2}));
    CHECK(p.shifted(2) == poly({0, 0, 1, 2}));
    CHECK(p.mul_xpow_minus_one(3).div_xpow_minus_one(3) == p);
    CHECK_THROWS_AS(poly({1, 1}).div_xpow_minus_one(2), Error);
    CHECK(poly({1, 1, 1}).evaluate(mpz_class(2)) == 7);
    CHECK(poly({1, 1, 1, 1, 1}).evaluate(CycloElem::root(5, 2)).is_zero());
}

TEST_CASE("gaussian binomials") {
    CHECK(qbinom(4, 2) == poly({1, 1, 2, 1, 1}));
    CHECK(qbinom(5, 2) == poly({1, 1, 2, 2, 2, 1, 1}));
    CHECK(qbinom(7, 0) == poly({1}));
    CHECK(qbinom(7, 7) == poly({1}));
    CHECK_THROWS_AS(qbinom(3, 5), Error);
    for (long m = 0; m <= 25; ++m)
        for (long k = 0; k <= m; ++k) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
            CHECK(qbinom(m, k).evaluate(mpz_class(1)) == b);
        }
    // product formula: [m,k] (x-1)...(x^k-1) = (x^m-1)...(x^{m-k+1}-1)
    for (long m = 1; m <= 14; ++m)
        for (long k = 1; k <= m; ++k) {
            QPolynomial lhs = qbinom(m, k), rhs = poly({1});
            for (long i = 1; i <= k; ++i) {
                lhs = lhs.mul_xpow_minus_one(i);
                rhs = rhs.mul_xpow_minus_one(m - i + 1);
            }
            CHECK(lhs == rhs);
        }
}

TEST_CASE("trace polynomials") {
    CHECK_THROWS_AS(trace_poly(2, 1), Error);
    for (long m = 3; m <= 20; ++m)
        for (long k = 1; 2 * k <= m; ++k)
            CHECK(trace_poly(m, k).mul_xpow_minus_one(m - k) == qbinom(m - k, k).mul_xpow_minus_one(m));
}

TEST_CASE("formal numerators and denominators") {
    CHECK(formal_P(-2) == BiPolynomial());
    CHECK(formal_P(-1) == BiPolynomial::constant(poly({1})));
    CHECK(formal_Q(0) == BiPolynomial({poly({1}), poly({1})}));
    CHECK(formal_Q(1) == BiPolynomial({poly({1}), poly({1, 1})}));
    CHECK(formal_P(2) == BiPolynomial({poly({1}), poly({0, 1, 1})}));
    for (long m = 0; m <= 30; ++m) {
        CHECK(formal_P(m) == formal_P_closed(m));
        CHECK(formal_Q(m) == formal_Q_closed(m));
    }
}

TEST_CASE("formal trace identity") {
    for (long m = 3; m <= 30; ++m) CHECK(formal_trace(m) == formal_trace_closed(m));
}

TEST_CASE("formal polynomials agree with the numeric recursion") {
    const CycloElem a = CycloElem::root(12, 5);
    const CycloElem x = CycloElem::root(12, 7);
    const PQSequence pq = pq_sequence(a, x, 20);
    for (long n = -2; n <= 20; ++n) CHECK(evaluate(formal_P(n), a, x) == pq.P(n));
    for (long n = -1; n <= 20; ++n) CHECK(evaluate(formal_Q(n), a, x) == pq.Q(n));
}
