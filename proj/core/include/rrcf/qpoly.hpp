#ifndef RRCF_QPOLY_HPP
#define RRCF_QPOLY_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "rrcf/cyclotomic.hpp"

namespace rrcf {

/// Integer polynomial in x, ascending coefficients, trailing zeros trimmed.
class QPolynomial {
   public:
    QPolynomial() = default;
    explicit QPolynomial(std::vector<mpz_class> coeffs);
    static QPolynomial constant(const mpz_class& c);
    /// c * x^e
    static QPolynomial monomial(long e, const mpz_class& c = 1);

    const std::vector<mpz_class>& coeffs() const noexcept { return c_; }
    /// Degree, or -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    mpz_class operator[](long i) const;

    /// Multiply by x^e, e >= 0.
    QPolynomial shifted(long e) const;
    /// Exact quotient by x^e - 1; throws DomainError if the division leaves a remainder.
    QPolynomial div_xpow_minus_one(long e) const;
    /// Multiply by x^e - 1.
    QPolynomial mul_xpow_minus_one(long e) const;

    /// Value at x, reducing exponents modulo the order when x is a root of unity.
    CycloElem evaluate(const CycloElem& x) const;
    mpz_class evaluate(const mpz_class& x) const;
    ComplexBF evaluate(const ComplexBF& x) const;

    std::string to_string() const;

    friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b);
    friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b);
    friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
    friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPolynomial& a, const QPolynomial& b) { return !(a == b); }

   private:
    void trim();
    std::vector<mpz_class> c_;
};

/// Gaussian binomial coefficient in x.
QPolynomial qbinom(long m, long k);

/// (x^m - 1)/(x^{m-k} - 1) times the Gaussian binomial (m-k choose k), 1 <= k <= m/2.
QPolynomial trace_poly(long m, long k);

/// Polynomial in a with coefficients in Z[x]; entry i multiplies a^i.
class BiPolynomial {
   public:
    BiPolynomial() = default;
    explicit BiPolynomial(std::vector<QPolynomial> by_a);
    static BiPolynomial constant(const QPolynomial& p);

    const std::vector<QPolynomial>& terms() const noexcept { return t_; }
    long degree_a() const noexcept { return static_cast<long>(t_.size()) - 1; }
    /// Multiply by a^i x^j.
    BiPolynomial times_monomial(long i, long j) const;

    friend BiPolynomial operator+(const BiPolynomial& a, const BiPolynomial& b);
    friend bool operator==(const BiPolynomial& a, const BiPolynomial& b) { return a.t_ == b.t_; }

   private:
    void trim();
    std::vector<QPolynomial> t_;
};

/// Formal numerator P_m(a, x) from the three-term recursion; P_{-1} = 1, P_{-2} = 0.
BiPolynomial formal_P(long m);
/// Formal denominator Q_m(a, x) from the recursion; Q_{-1} = Q_{-2} = 1.
BiPolynomial formal_Q(long m);
/// Closed forms as sums of Gaussian binomials.
BiPolynomial formal_P_closed(long m);
BiPolynomial formal_Q_closed(long m);
/// a x^{m-1} P_{m-3} + Q_{m-2}
BiPolynomial formal_trace(long m);
/// 1 + sum_k T_{m,k}(x) x^{k(k-1)} a^k
BiPolynomial formal_trace_closed(long m);

}  // namespace rrcf

#endif  // RRCF_QPOLY_HPP
