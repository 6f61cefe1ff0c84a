#include "rrcf/closed_forms.hpp"

#include "rrcf/errors.hpp"
#include "rrcf/qpoly.hpp"

namespace rrcf {

PQSequence pq_sequence(const CycloElem& a0, const CycloElem& x0, long n_max) {
    if (n_max < -2) throw Error(ErrorKind::OutOfRange, "pq_sequence needs n_max >= -2");
    auto [a, x] = common_level(a0, x0);
    const long level = a.level();
    PQSequence s;
    s.p.reserve(static_cast<std::size_t>(n_max + 3));
    s.q.reserve(static_cast<std::size_t>(n_max + 3));
    s.p.push_back(CycloElem::zero(level));
    s.p.push_back(CycloElem::one(level));
    s.q.push_back(CycloElem::one(level));
    s.q.push_back(CycloElem::one(level));
    CycloElem coef = a;  // a x^n
    for (long n = 0; n <= n_max; ++n) {
        const std::size_t i = s.p.size();
        s.p.push_back(s.p[i - 1] + coef * s.p[i - 2]);
        s.q.push_back(s.q[i - 1] + coef * s.q[i - 2]);
        coef = coef * x;
    }
    if (n_max < 0) {
        s.p.resize(static_cast<std::size_t>(n_max + 3));
        s.q.resize(static_cast<std::size_t>(n_max + 3));
    }
    return s;
}

CycloElem closed_form_P(long m, const CycloElem& a0, const CycloElem& x0) {
    if (m < -2) throw Error(ErrorKind::OutOfRange, "closed_form_P needs m >= -2");
    auto [a, x] = common_level(a0, x0);
    if (m == -2) return CycloElem::zero(a.level());
    CycloElem sum = CycloElem::one(a.level());
    for (long k = 1; k <= (m + 1) / 2; ++k) sum += qbinom(m + 1 - k, k).evaluate(x) * x.pow(k * k) * a.pow(k);
    return sum;
}

CycloElem closed_form_Q(long m, const CycloElem& a0, const CycloElem& x0) {
    if (m < 0) throw Error(ErrorKind::OutOfRange, "closed_form_Q needs m >= 0");
    auto [a, x] = common_level(a0, x0);
    CycloElem sum = CycloElem::one(a.level());
    for (long k = 1; k <= m / 2 + 1; ++k) sum += qbinom(m + 2 - k, k).evaluate(x) * x.pow(k * (k - 1)) * a.pow(k);
    return sum;
}

TransferMatrix transfer_matrix(const CycloElem& a, long m, long l) {
    if (m < 3) throw Error(ErrorKind::OutOfRange, "transfer matrix needs m >= 3");
    if (gcd_long(mod_long(l, m), m) != 1)
        throw Error(ErrorKind::BadLevel, "zeta_m^l is not primitive for l = " + std::to_string(l));
    const long level = lcm_long(a.level(), m);
    return transfer_matrix(a, CycloElem::root(level, (level / m) * l), m);
}

TransferMatrix transfer_matrix(const CycloElem& a0, const CycloElem& x0, long m) {
    if (m < 3) throw Error(ErrorKind::OutOfRange, "transfer matrix needs m >= 3");
    auto [a, x] = common_level(a0, x0);
    const auto e = x.root_exponent();
    if (!e || x.level() / gcd_long(*e, x.level()) != m)
        throw Error(ErrorKind::BadLevel, "x is not a primitive " + std::to_string(m) + "-th root of unity");
    PQSequence s = pq_sequence(a, x, m - 2);
    CycloElem ax = a * x.pow(m - 1);
    TransferMatrix t;
    t.m = m;
    t.a = a;
    t.x = x;
    t.e[0][0] = ax * s.P(m - 3);
    t.e[0][1] = s.P(m - 2);
    t.e[1][0] = ax * s.Q(m - 3);
    t.e[1][1] = s.Q(m - 2);
    return t;
}

}  // namespace rrcf
