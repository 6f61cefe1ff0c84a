#ifndef RRCF_BIGFLOAT_HPP
#define RRCF_BIGFLOAT_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <iosfwd>
#include <string>
#include <utility>

namespace rrcf {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;

/// Owning wrapper around an MPFR value. Arithmetic rounds to nearest; the
/// result of a binary operation carries the smaller operand precision.
class BigFloat {
   public:
    explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
    BigFloat(long value, mpfr_prec_t prec);
    BigFloat(double value, mpfr_prec_t prec);
    BigFloat(const mpz_class& value, mpfr_prec_t prec);
    BigFloat(const mpq_class& value, mpfr_prec_t prec);
    /// Parses a decimal literal; throws std::invalid_argument on failure.
    BigFloat(const std::string& literal, mpfr_prec_t prec);

    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }
    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }

    /// Same value rounded to a new precision.
    BigFloat with_precision(mpfr_prec_t prec) const;

    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
    int sign() const noexcept { return mpfr_sgn(v_); }
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    /// log2 |x|, or -infinity for zero. Usable far outside the double range.
    double log2_abs() const noexcept;
    /// Decimal scientific notation with the requested significant digits.
    std::string to_string(int digits = 40) const;

    BigFloat& operator+=(const BigFloat& rhs);
    BigFloat& operator-=(const BigFloat& rhs);
    BigFloat& operator*=(const BigFloat& rhs);
    BigFloat& operator/=(const BigFloat& rhs);

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a);

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    static BigFloat pi(mpfr_prec_t prec);
    /// 2^e at the given precision.
    static BigFloat exp2(long e, mpfr_prec_t prec);

   private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sin(const BigFloat& x);
/// x * 2^e, exact.
BigFloat ldexp(const BigFloat& x, long e);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);
mpz_class floor_to_integer(const BigFloat& x);

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

/// Complex number with BigFloat components.
class ComplexBF {
   public:
    explicit ComplexBF(mpfr_prec_t prec = kDefaultPrecision) : re_(prec), im_(prec) {}
    ComplexBF(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    ComplexBF(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

    const BigFloat& real() const noexcept { return re_; }
    const BigFloat& imag() const noexcept { return im_; }
    BigFloat& real() noexcept { return re_; }
    BigFloat& imag() noexcept { return im_; }

    mpfr_prec_t precision() const noexcept;
    ComplexBF with_precision(mpfr_prec_t prec) const;

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    /// |z|^2
    BigFloat norm() const;
    BigFloat abs() const;
    /// log2 |z|, -infinity for zero.
    double log2_abs() const noexcept;
    ComplexBF conj() const { return ComplexBF(re_, -im_); }

    ComplexBF& operator+=(const ComplexBF& rhs);
    ComplexBF& operator-=(const ComplexBF& rhs);
    ComplexBF& operator*=(const ComplexBF& rhs);
    ComplexBF& operator/=(const ComplexBF& rhs);

    friend ComplexBF operator+(ComplexBF a, const ComplexBF& b) { return a += b; }
    friend ComplexBF operator-(ComplexBF a, const ComplexBF& b) { return a -= b; }
    friend ComplexBF operator*(const ComplexBF& a, const ComplexBF& b);
    friend ComplexBF operator/(const ComplexBF& a, const ComplexBF& b);
    friend ComplexBF operator-(const ComplexBF& a) { return ComplexBF(-a.re_, -a.im_); }
    friend ComplexBF operator*(const ComplexBF& a, const BigFloat& s) { return ComplexBF(a.re_ * s, a.im_ * s); }

    /// Bitwise equality of both components.
    friend bool operator==(const ComplexBF& a, const ComplexBF& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    /// e^{2 pi i num/den}, with num reduced modulo den first.
    static ComplexBF unit_root(long num, long den, mpfr_prec_t prec);
    static ComplexBF one(mpfr_prec_t prec) { return ComplexBF(BigFloat(1L, prec), BigFloat(prec)); }

    std::string to_string(int digits = 40) const;

   private:
    BigFloat re_;
    BigFloat im_;
};

/// Principal square root (branch cut along the negative real axis).
ComplexBF sqrt(const ComplexBF& z);
ComplexBF ldexp(const ComplexBF& z, long e);
BigFloat abs(const ComplexBF& z);

std::ostream& operator<<(std::ostream& os, const ComplexBF& z);

}  // namespace rrcf

#endif  // RRCF_BIGFLOAT_HPP
