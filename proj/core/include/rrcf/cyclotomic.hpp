#ifndef RRCF_CYCLOTOMIC_HPP
#define RRCF_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "rrcf/bigfloat.hpp"

namespace rrcf {

long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);
/// Non-negative residue of a modulo n.
inline long mod_long(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

/// Cached per-level data for Q(zeta_N) = Q[y]/(Phi_N(y)).
struct CycloLevel {
    long n = 1;
    long phi = 1;
    /// Phi_N coefficients, ascending, monic, length phi + 1.
    std::vector<long> poly;
    /// (index, coefficient) of the nonzero entries of poly below the leading term.
    std::vector<std::pair<long, long>> tail;
};

/// Shared immutable data for a level; thread safe, computed once.
const CycloLevel& cyclo_level(long n);

/// Exact element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{phi-1}.
/// Coefficients are stored as integer numerators over one positive common
/// denominator, always in lowest terms, so equality is structural.
class CycloElem {
   public:
    CycloElem();
    static CycloElem zero(long level);
    static CycloElem one(long level);
    static CycloElem integer(long level, const mpz_class& value);
    static CycloElem rational(long level, const mpq_class& value);
    /// zeta_N^e, with e reduced modulo N.
    static CycloElem root(long level, long exponent);
    /// Arbitrary coefficients; length must not exceed phi(level).
    static CycloElem from_coeffs(long level, const std::vector<mpq_class>& coeffs);
    /// sum_i c_i zeta_N^i for an integer vector of any length.
    static CycloElem from_integer_poly(long level, std::vector<mpz_class> coeffs);

    long level() const noexcept { return lvl_->n; }
    long degree() const noexcept { return lvl_->phi; }
    mpq_class coeff(long i) const;
    std::vector<mpq_class> coeffs() const;
    const std::vector<mpz_class>& numerators() const noexcept { return num_; }
    const mpz_class& denominator() const noexcept { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Throws DomainError unless is_rational().
    mpq_class rational_value() const;
    /// Set when the element is known to equal zeta_N^e.
    std::optional<long> root_exponent() const noexcept { return root_; }
    /// Largest bit size among numerators and the denominator.
    std::size_t height_bits() const;

    /// Same element viewed in Q(zeta_L); L must be a multiple of level().
    CycloElem lift(long level) const;
    /// Multiply by zeta_N^e.
    CycloElem mul_root(long exponent) const;
    /// Image under the automorphism zeta -> zeta^a, gcd(a, N) = 1.
    CycloElem galois(long a) const;
    CycloElem inv() const;
    CycloElem pow(long e) const;

    /// Complex value at zeta_N = exp(2 pi i / N), accurate to prec bits
    /// relative to the result.
    ComplexBF embed(mpfr_prec_t prec = kDefaultPrecision) const;

    std::string to_string() const;

    CycloElem& operator+=(const CycloElem& rhs);
    CycloElem& operator-=(const CycloElem& rhs);
    CycloElem& operator*=(const CycloElem& rhs);
    CycloElem& operator/=(const CycloElem& rhs);

    friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
    friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
    friend CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inv(); }
    friend CycloElem operator-(const CycloElem& a);
    friend bool operator==(const CycloElem& a, const CycloElem& b);
    friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

   private:
    explicit CycloElem(const CycloLevel* lvl);
    void normalize();
    /// Reduce a buffer of arbitrary length modulo Phi_N into this element.
    void assign_reduced(std::vector<mpz_class>&& buf, mpz_class den);

    const CycloLevel* lvl_;
    std::vector<mpz_class> num_;
    mpz_class den_;
    std::optional<long> root_;
};

/// Both operands lifted to the lcm of their levels.
std::pair<CycloElem, CycloElem> common_level(const CycloElem& a, const CycloElem& b);

CycloElem cyclo_new(long level, long exponent);
/// Gauss sum for the positive square root of 5; needs 5 | level.
CycloElem sqrt5_gauss(long level);
/// Principal square root of -3, i.e. 1 + 2 zeta_3; needs 3 | level.
CycloElem sqrt_minus3(long level);

}  // namespace rrcf

#endif  // RRCF_CYCLOTOMIC_HPP
