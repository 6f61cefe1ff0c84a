#include "rrcf/qpoly.hpp"

#include <algorithm>
#include <sstream>

#include "rrcf/errors.hpp"

namespace rrcf {

QPolynomial::QPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

QPolynomial QPolynomial::constant(const mpz_class& c) { return QPolynomial({c}); }

QPolynomial QPolynomial::monomial(long e, const mpz_class& c) {
    if (e < 0) throw Error(ErrorKind::OutOfRange, "negative exponent in monomial");
    std::vector<mpz_class> v(static_cast<std::size_t>(e) + 1);
    v.back() = c;
    return QPolynomial(std::move(v));
}

void QPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class QPolynomial::operator[](long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

QPolynomial QPolynomial::shifted(long e) const {
    if (is_zero() || e == 0) return *this;
    std::vector<mpz_class> v(c_.size() + static_cast<std::size_t>(e));
    std::copy(c_.begin(), c_.end(), v.begin() + e);
    return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::mul_xpow_minus_one(long e) const {
    if (e <= 0) throw Error(ErrorKind::OutOfRange, "x^e - 1 needs e > 0");
    std::vector<mpz_class> v(c_.size() + static_cast<std::size_t>(e));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        v[i + static_cast<std::size_t>(e)] += c_[i];
        v[i] -= c_[i];
    }
    return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::div_xpow_minus_one(long e) const {
    if (e <= 0) throw Error(ErrorKind::OutOfRange, "x^e - 1 needs e > 0");
    if (is_zero()) return *this;
    const auto ue = static_cast<std::size_t>(e);
    if (c_.size() <= ue) throw Error(ErrorKind::DomainError, "polynomial division by x^e - 1 is not exact");
    // q(x) (x^e - 1) = p(x)  =>  q_i = q_{i-e} - p_i
    std::vector<mpz_class> q(c_.size() - ue);
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = -c_[i];
        if (i >= ue) q[i] += q[i - ue];
    }
    // the top e coefficients of p must match q shifted up
    for (std::size_t i = q.size(); i < c_.size(); ++i) {
        mpz_class expect = (i >= ue && i - ue < q.size()) ? q[i - ue] : mpz_class(0);
        if (i < q.size()) expect -= q[i];
        if (expect != c_[i]) throw Error(ErrorKind::DomainError, "polynomial division by x^e - 1 is not exact");
    }
    return QPolynomial(std::move(q));
}

CycloElem QPolynomial::evaluate(const CycloElem& x) const {
    const long n = x.level();
    if (auto e = x.root_exponent()) {
        std::vector<mpz_class> buckets(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            buckets[static_cast<std::size_t>(mod_long(static_cast<long>(i % static_cast<std::size_t>(n)) * *e, n))] += c_[i];
        }
        return CycloElem::from_integer_poly(n, std::move(buckets));
    }
    CycloElem acc = CycloElem::zero(n);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + CycloElem::integer(n, c_[i]);
    return acc;
}

mpz_class QPolynomial::evaluate(const mpz_class& x) const {
    mpz_class acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

ComplexBF QPolynomial::evaluate(const ComplexBF& x) const {
    const mpfr_prec_t prec = x.precision();
    ComplexBF acc(prec);
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * x;
        acc.real() += BigFloat(c_[i], prec);
    }
    return acc;
}

std::string QPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        mpz_class c = c_[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        mpz_class a = abs(c);
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) os << (a != 1 ? "*x" : "x");
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
    std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return QPolynomial(std::move(v));
}

QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
    std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return QPolynomial(std::move(v));
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return QPolynomial();
    std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return QPolynomial(std::move(v));
}

QPolynomial qbinom(long m, long k) {
    if (m < 0 || k < 0 || k > m)
        throw Error(ErrorKind::OutOfRange, "qbinom(" + std::to_string(m) + ", " + std::to_string(k) + ")");
    k = std::min(k, m - k);
    QPolynomial r = QPolynomial::constant(1);
    for (long i = 0; i < k; ++i) r = r.mul_xpow_minus_one(m - i).div_xpow_minus_one(i + 1);
    return r;
}

QPolynomial trace_poly(long m, long k) {
    if (m < 3 || k < 1 || k > m / 2)
        throw Error(ErrorKind::OutOfRange, "trace_poly(" + std::to_string(m) + ", " + std::to_string(k) + ")");
    return qbinom(m - k, k).mul_xpow_minus_one(m).div_xpow_minus_one(m - k);
}

BiPolynomial::BiPolynomial(std::vector<QPolynomial> by_a) : t_(std::move(by_a)) { trim(); }

BiPolynomial BiPolynomial::constant(const QPolynomial& p) { return BiPolynomial({p}); }

void BiPolynomial::trim() {
    while (!t_.empty() && t_.back().is_zero()) t_.pop_back();
}

BiPolynomial BiPolynomial::times_monomial(long i, long j) const {
    std::vector<QPolynomial> v(t_.size() + static_cast<std::size_t>(i));
    for (std::size_t s = 0; s < t_.size(); ++s) v[s + static_cast<std::size_t>(i)] = t_[s].shifted(j);
    return BiPolynomial(std::move(v));
}

BiPolynomial operator+(const BiPolynomial& a, const BiPolynomial& b) {
    std::vector<QPolynomial> v(std::max(a.t_.size(), b.t_.size()));
    for (std::size_t i = 0; i < a.t_.size(); ++i) v[i] = v[i] + a.t_[i];
    for (std::size_t i = 0; i < b.t_.size(); ++i) v[i] = v[i] + b.t_[i];
    return BiPolynomial(std::move(v));
}

namespace {

BiPolynomial formal_recursion(long m, BiPolynomial r2, BiPolynomial r1) {
    // r1 = R_{-1}, r2 = R_{-2}
    if (m == -2) return r2;
    for (long n = 0; n <= m; ++n) {
        BiPolynomial next = r1 + r2.times_monomial(1, n);
        r2 = std::move(r1);
        r1 = std::move(next);
    }
    return r1;
}

const BiPolynomial kOne = BiPolynomial::constant(QPolynomial::constant(1));

}  // namespace

BiPolynomial formal_P(long m) {
    if (m < -2) throw Error(ErrorKind::OutOfRange, "formal_P needs m >= -2");
    return formal_recursion(m, BiPolynomial(), kOne);
}

BiPolynomial formal_Q(long m) {
    if (m < -2) throw Error(ErrorKind::OutOfRange, "formal_Q needs m >= -2");
    return formal_recursion(m, kOne, kOne);
}

BiPolynomial formal_P_closed(long m) {
    if (m < -2) throw Error(ErrorKind::OutOfRange, "formal_P_closed needs m >= -2");
    if (m == -2) return BiPolynomial();
    std::vector<QPolynomial> v{QPolynomial::constant(1)};
    for (long k = 1; k <= (m + 1) / 2; ++k) v.push_back(qbinom(m + 1 - k, k).shifted(k * k));
    return BiPolynomial(std::move(v));
}

BiPolynomial formal_Q_closed(long m) {
    if (m < 0) throw Error(ErrorKind::OutOfRange, "formal_Q_closed needs m >= 0");
    std::vector<QPolynomial> v{QPolynomial::constant(1)};
    for (long k = 1; k <= m / 2 + 1; ++k) v.push_back(qbinom(m + 2 - k, k).shifted(k * (k - 1)));
    return BiPolynomial(std::move(v));
}

BiPolynomial formal_trace(long m) {
    if (m < 3) throw Error(ErrorKind::OutOfRange, "formal_trace needs m >= 3");
    return formal_P(m - 3).times_monomial(1, m - 1) + formal_Q(m - 2);
}

BiPolynomial formal_trace_closed(long m) {
    if (m < 3) throw Error(ErrorKind::OutOfRange, "formal_trace_closed needs m >= 3");
    std::vector<QPolynomial> v{QPolynomial::constant(1)};
    for (long k = 1; k <= m / 2; ++k) v.push_back(trace_poly(m, k).shifted(k * (k - 1)));
    return BiPolynomial(std::move(v));
}

}  // namespace rrcf
