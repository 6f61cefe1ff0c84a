#ifndef RRCF_CLOSED_FORMS_HPP
#define RRCF_CLOSED_FORMS_HPP

#include <array>
#include <utility>
#include <vector>

#include "rrcf/cyclotomic.hpp"
#include "rrcf/ring.hpp"

namespace rrcf {

/// Determinant of the tridiagonal matrix with 1 on the diagonal, x_i above
/// and -1 below: D() = 1, D(x1) = 1 + x1, D(..., x_n) = D(..., x_{n-1}) + x_n D(..., x_{n-2}).
template <class R>
R tridiag_det(const std::vector<R>& xs, const R& one) {
    R prev2 = one;  // D of length -1, chosen so the recurrence yields D(x1) = 1 + x1
    R prev = one;
    for (const R& x : xs) {
        R next = prev + x * prev2;
        prev2 = std::move(prev);
        prev = std::move(next);
    }
    return prev;
}

/// P_n, Q_n of K_a(x) for n = -2 .. n_max, stored with offset 2.
struct PQSequence {
    std::vector<CycloElem> p;
    std::vector<CycloElem> q;
    const CycloElem& P(long n) const { return p.at(static_cast<std::size_t>(n + 2)); }
    const CycloElem& Q(long n) const { return q.at(static_cast<std::size_t>(n + 2)); }
};

/// Runs R_n = R_{n-1} + a x^n R_{n-2} with P_{-2} = 0, P_{-1} = 1, Q_{-2} = Q_{-1} = 1.
PQSequence pq_sequence(const CycloElem& a, const CycloElem& x, long n_max);

/// Gaussian-binomial closed form of P_m(a, x), m >= -2.
CycloElem closed_form_P(long m, const CycloElem& a, const CycloElem& x);
/// Gaussian-binomial closed form of Q_m(a, x), m >= 0.
CycloElem closed_form_Q(long m, const CycloElem& a, const CycloElem& x);

/// Period-m transfer matrix at a primitive m-th root x:
/// [[a x^{m-1} P_{m-3}, P_{m-2}], [a x^{m-1} Q_{m-3}, Q_{m-2}]].
struct TransferMatrix {
    long m = 0;
    CycloElem a;
    CycloElem x;
    std::array<std::array<CycloElem, 2>, 2> e;

    CycloElem trace() const { return e[0][0] + e[1][1]; }
    CycloElem det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    std::pair<CycloElem, CycloElem> apply(const CycloElem& u, const CycloElem& v) const {
        return {e[0][0] * u + e[0][1] * v, e[1][0] * u + e[1][1] * v};
    }
};

/// A_m with x = zeta_m^l at level lcm(level(a), m); gcd(l, m) must be 1.
TransferMatrix transfer_matrix(const CycloElem& a, long m, long l = 1);
/// A_m for an explicit x, which must be a primitive m-th root of unity.
TransferMatrix transfer_matrix(const CycloElem& a, const CycloElem& x, long m);

}  // namespace rrcf

#endif  // RRCF_CLOSED_FORMS_HPP
