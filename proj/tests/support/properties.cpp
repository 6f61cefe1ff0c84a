#include "properties.hpp"

#include <gmpxx.h>

#include <random>
#include <sstream>
#include <vector>

#include "rrcf/cf_engine.hpp"
#include "rrcf/closed_forms.hpp"
#include "rrcf/qpoly.hpp"
#include "rrcf/witness.hpp"

namespace rrcf::props {
namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

long random_unit(Rng& rng, long n) {
    for (;;) {
        long e = uniform(rng, 0, n - 1);
        if (gcd_long(e, n) == 1) return e;
    }
}

mpz_class random_digit(Rng& rng) {
    switch (uniform(rng, 0, 3)) {
        case 0: return mpz_class(uniform(rng, 1, 3));
        case 1: return mpz_class(uniform(rng, 1, 50));
        case 2: return mpz_class(uniform(rng, 1, 1000000));
        default: {
            mpz_class big = uniform(rng, 1, 1L << 40);
            return big * big + 1;
        }
    }
}

std::vector<mpz_class> random_digits(Rng& rng, long len) {
    std::vector<mpz_class> out;
    for (long i = 0; i < len; ++i) out.push_back(random_digit(rng));
    return out;
}

/// [0; e_1, ..., e_n] evaluated from the tail.
mpq_class fold_from_back(const std::vector<mpz_class>& e, std::size_t n) {
    mpq_class v = 0;
    for (std::size_t i = n; i-- > 0;) {
        v = 1 / (mpq_class(e[i]) + v);
        v.canonicalize();
    }
    return v;
}

/// Determinant by Gaussian elimination over Q.
mpq_class dense_det(std::vector<std::vector<mpq_class>> a) {
    const std::size_t n = a.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            mpq_class f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

CycloElem random_element(Rng& rng, long level) {
    std::vector<mpq_class> c;
    for (long i = 0; i < euler_phi(level); ++i) c.emplace_back(uniform(rng, -9, 9), uniform(rng, 1, 4));
    for (auto& q : c) q.canonicalize();
    return CycloElem::from_coeffs(level, c);
}

template <class T>
std::vector<T> slice(const std::vector<T>& v, std::size_t from) {
    return from >= v.size() ? std::vector<T>{} : std::vector<T>(v.begin() + static_cast<long>(from), v.end());
}

}  // namespace

Outcome determinant_identity(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    for (std::size_t i = 0; i < cases; ++i) {
        const long N = uniform(rng, 1, 24);
        const long k = uniform(rng, 1, 12);
        const long L = lcm_long(N, k);
        const CycloElem x = CycloElem::root(L, (L / N) * random_unit(rng, N));
        const CycloElem a = CycloElem::root(L, (L / k) * random_unit(rng, k));
        const long n = uniform(rng, 0, 120);
        const bool schur = i % 2 == 0;
        const auto spec = schur ? schur_spec(x) : ka_spec(a, x);
        const auto st = advance(initial_state(spec), spec, n);

        CycloElem expect = CycloElem::one(L);
        for (long j = schur ? 1 : 0; j <= n; ++j) expect *= -(schur ? x.pow(j) : a * x.pow(j));
        const CycloElem got = st.p_curr * st.q_prev - st.p_prev * st.q_curr;
        ++out.cases;
        if (st.index != n || got != expect) {
            std::ostringstream os;
            os << (schur ? "schur" : "ka") << " N=" << N << " k=" << k << " n=" << n;
            out.fail(os.str());
        }
    }
    return out;
}

Outcome error_bound_inequality(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    for (std::size_t i = 0; i < cases; ++i) {
        const long len = uniform(rng, 2, 30);
        const auto e = random_digits(rng, len);
        const CFDigits cf(e);
        const mpq_class t = fold_from_back(e, e.size());

        mpz_class d_prev = 0, d = 1;
        bool ok = true;
        for (long n = 0; n < len && ok; ++n) {
            const mpq_class bound(1, d * d * e[static_cast<std::size_t>(n)]);
            const mpq_class err = abs(t - cf.convergent(static_cast<std::size_t>(n)));
            ok = err <= bound && approx_error_bound(cf, static_cast<std::size_t>(n)) == bound;
            mpz_class next = e[static_cast<std::size_t>(n)] * d + d_prev;
            d_prev = d;
            d = next;
        }
        ++out.cases;
        if (!ok) out.fail("len=" + std::to_string(len) + " case=" + std::to_string(i));
    }
    return out;
}

Outcome expansion_round_trip(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    for (std::size_t i = 0; i < cases; ++i) {
        const long len = uniform(rng, 1, 25);
        auto e = random_digits(rng, len);
        if (e.back() < 2) e.back() = 2;
        const mpq_class t = fold_from_back(e, e.size());
        const CFDigits cf = expand_real(t, e.size() + 5);

        bool ok = cf.terminated() && cf.digits() == e;
        for (std::size_t n = 0; ok && n <= e.size(); ++n) {
            const mpq_class conv(cf.c(n), cf.d(n));
            ok = conv == fold_from_back(e, n) && gcd(cf.c(n), cf.d(n)) == 1;
        }
        ++out.cases;
        if (!ok) out.fail("len=" + std::to_string(len) + " case=" + std::to_string(i));
    }
    return out;
}

Outcome qbinom_pascal(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    for (std::size_t i = 0; i < cases; ++i) {
        const long m = uniform(rng, 2, 60);
        const long k = uniform(rng, 1, m - 1);
        const QPolynomial lhs = qbinom(m, k);
        const QPolynomial a = qbinom(m - 1, k - 1), b = qbinom(m - 1, k);
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
        const bool ok = lhs == a + b * QPolynomial::monomial(k) && lhs == a * QPolynomial::monomial(m - k) + b &&
                        lhs == qbinom(m, m - k) && lhs.evaluate(mpz_class(1)) == binom &&
                        lhs.degree() == k * (m - k);
        ++out.cases;
        if (!ok) out.fail("m=" + std::to_string(m) + " k=" + std::to_string(k));
    }
    return out;
}

Outcome tridiagonal_slices(std::size_t cases, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    for (std::size_t i = 0; i < cases; ++i) {
        std::ostringstream tag;
        bool ok = true;
        switch (i % 3) {
            case 0: {
                // rational entries against a dense determinant
                const long n = uniform(rng, 0, 12);
                std::vector<mpq_class> xs;
                for (long j = 0; j < n; ++j) {
                    xs.emplace_back(uniform(rng, -20, 20), uniform(rng, 1, 7));
                    xs.back().canonicalize();
                }
                std::vector<std::vector<mpq_class>> mat(static_cast<std::size_t>(n + 1),
                                                        std::vector<mpq_class>(static_cast<std::size_t>(n + 1), 0));
                for (long j = 0; j <= n; ++j) mat[j][j] = 1;
                for (long j = 0; j < n; ++j) {
                    mat[j][j + 1] = xs[j];
                    mat[j + 1][j] = -1;
                }
                ok = tridiag_det(xs, mpq_class(1)) == dense_det(mat);
                tag << "dense n=" << n;
                break;
            }
            case 1: {
                // first-row expansion in a cyclotomic field
                const long level = uniform(rng, 1, 15);
                const long n = uniform(rng, 2, 16);
                std::vector<CycloElem> xs;
                for (long j = 0; j < n; ++j) xs.push_back(random_element(rng, level));
                const CycloElem one = CycloElem::one(level);
                ok = tridiag_det(xs, one) == tridiag_det(slice(xs, 1), one) + xs[0] * tridiag_det(slice(xs, 2), one);
                tag << "expansion level=" << level << " n=" << n;
                break;
            }
            default: {
                // recursion numerators and denominators as slices
                const long N = uniform(rng, 1, 20);
                const long k = uniform(rng, 1, 10);
                const long L = lcm_long(N, k);
                const CycloElem x = CycloElem::root(L, (L / N) * random_unit(rng, N));
                const CycloElem a = CycloElem::root(L, (L / k) * random_unit(rng, k));
                const long n = uniform(rng, 0, 40);
                const PQSequence pq = pq_sequence(a, x, n);
                std::vector<CycloElem> cs;
                for (long j = 0; j <= n; ++j) cs.push_back(a * x.pow(j));
                const CycloElem one = CycloElem::one(L);
                ok = pq.Q(n) == tridiag_det(cs, one) && pq.P(n) == tridiag_det(slice(cs, 1), one);
                tag << "slices N=" << N << " k=" << k << " n=" << n;
                break;
            }
        }
        ++out.cases;
        if (!ok) out.fail(tag.str());
    }
    return out;
}

}  // namespace rrcf::props
