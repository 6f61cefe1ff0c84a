#include <doctest.h>

#include "rrcf/closed_forms.hpp"
#include "rrcf/errors.hpp"

using namespace rrcf;

namespace {

std::vector<CycloElem> partial_numerators(const CycloElem& a, const CycloElem& x, long from, long to) {
    std::vector<CycloElem> out;
    for (long j = from; j <= to; ++j) out.push_back(a * x.pow(j));
    return out;
}

}  // namespace

TEST_CASE("tridiagonal determinant small cases") {
    CHECK(tridiag_det<long>({}, 1) == 1);
    CHECK(tridiag_det<long>({3}, 1) == 4);
    CHECK(tridiag_det<long>({2, 3}, 1) == 6);
    // 3x3 with x = 1, 1, 1: Fibonacci
    CHECK(tridiag_det<long>({1, 1, 1}, 1) == 5);
    CHECK(tridiag_det<long>({1, 1, 1, 1, 1, 1}, 1) == 21);
}

TEST_CASE("recursion initial values") {
    const CycloElem a = CycloElem::root(7, 3), x = CycloElem::root(7, 1);
    const PQSequence s = pq_sequence(a, x, 3);
    CHECK(s.P(-2).is_zero());
    CHECK(s.P(-1) == CycloElem::one(7));
    CHECK(s.Q(-2) == CycloElem::one(7));
    CHECK(s.Q(-1) == CycloElem::one(7));
    CHECK(s.P(0) == CycloElem::one(7));
    CHECK(s.Q(0) == CycloElem::one(7) + a);
    CHECK(s.Q(1) == CycloElem::one(7) + a + a * x);
    CHECK_THROWS(s.P(4));
}

TEST_CASE("closed forms equal recursion and tridiagonal determinants") {
    for (long k : {1L, 2L, 3L, 5L, 8L}) {
        for (long m : {3L, 5L, 7L, 12L}) {
            const long L = lcm_long(k, m);
            const CycloElem a = CycloElem::root(L, L / k * (k == 1 ? 0 : k - 1));
            const CycloElem x = CycloElem::root(L, L / m);
            const PQSequence s = pq_sequence(a, x, 60);
            const CycloElem one = CycloElem::one(L);
            for (long n = 0; n <= 60; ++n) {
                CHECK(closed_form_P(n, a, x) == s.P(n));
                CHECK(closed_form_Q(n, a, x) == s.Q(n));
                CHECK(tridiag_det(partial_numerators(a, x, 1, n), one) == s.P(n));
                CHECK(tridiag_det(partial_numerators(a, x, 0, n), one) == s.Q(n));
            }
            CHECK(closed_form_P(-1, a, x) == one);
            CHECK(closed_form_P(-2, a, x).is_zero());
        }
    }
    CHECK_THROWS_AS(closed_form_Q(-1, CycloElem::one(1), CycloElem::one(1)), Error);
}

TEST_CASE("transfer matrix trace, determinant and action") {
    for (long k = 1; k <= 6; ++k) {
        for (long j = 0; j < k; ++j) {
            if (gcd_long(j, k) != 1) continue;
            const CycloElem a = CycloElem::root(k, j);
            for (long m = 3; m <= 14; ++m) {
                for (long l = 1; l < m; ++l) {
                    if (gcd_long(l, m) != 1) continue;
                    const TransferMatrix A = transfer_matrix(a, m, l);
                    const CycloElem am = A.a.pow(m);
                    CHECK(A.trace() == CycloElem::one(A.x.level()));
                    CHECK(A.det() == -am);
                }
            }
        }
    }
    const CycloElem a = CycloElem::root(3, 1);
    const TransferMatrix A = transfer_matrix(a, 5, 2);
    const PQSequence s = pq_sequence(A.a, A.x, 40);
    for (long n = -2; n + 5 <= 40; ++n) {
        auto [p, q] = A.apply(s.P(n), s.Q(n));
        CHECK(p == s.P(n + 5));
        CHECK(q == s.Q(n + 5));
    }
}

TEST_CASE("transfer matrix argument checks") {
    const CycloElem a = CycloElem::one(1);
    CHECK_THROWS_AS(transfer_matrix(a, 2, 1), Error);
    CHECK_THROWS_AS(transfer_matrix(a, 6, 2), Error);
    CHECK_THROWS_AS(transfer_matrix(a, CycloElem::root(12, 2), 12), Error);
    CHECK_NOTHROW(transfer_matrix(a, CycloElem::root(12, 2), 6));
}
