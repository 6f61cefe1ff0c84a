#include "rrcf/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rrcf/errors.hpp"

namespace rrcf {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& literal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    char* end = nullptr;
    if (literal.empty()) {
        mpfr_clear(v_);
        throw std::invalid_argument("empty decimal literal");
    }
    mpfr_strtofr(v_, literal.c_str(), &end, 10, MPFR_RNDN);
    if (end == literal.c_str() || *end != '\0') {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: '" + literal + "'");
    }
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_precision(mpfr_prec_t prec) const {
    BigFloat r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

double BigFloat::log2_abs() const noexcept {
    if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
    if (!mpfr_number_p(v_)) return std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string BigFloat::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    std::string fmt = "%." + std::to_string(std::max(1, digits) - 1) + "Re";
    char* buf = nullptr;
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

namespace {

mpfr_prec_t min_prec(const BigFloat& a, const BigFloat& b) { return std::min(a.precision(), b.precision()); }

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& rhs) { return *this = *this + rhs; }
BigFloat& BigFloat::operator-=(const BigFloat& rhs) { return *this = *this - rhs; }
BigFloat& BigFloat::operator*=(const BigFloat& rhs) { return *this = *this * rhs; }
BigFloat& BigFloat::operator/=(const BigFloat& rhs) { return *this = *this / rhs; }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(min_prec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(min_prec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(min_prec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "BigFloat division by zero");
    BigFloat r(min_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::exp2(long e, mpfr_prec_t prec) {
    BigFloat r(1L, prec);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
}

BigFloat abs(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat sqrt(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::min(x.precision(), y.precision()));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat exp(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat cos(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_cos(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat sin(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sin(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
    BigFloat r(x.precision());
    mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

mpz_class floor_to_integer(const BigFloat& x) {
    if (!x.is_finite()) throw Error(ErrorKind::DomainError, "floor of a non-finite value");
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
    return z;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_string(); }

// ---------------------------------------------------------------------------

mpfr_prec_t ComplexBF::precision() const noexcept { return std::min(re_.precision(), im_.precision()); }

ComplexBF ComplexBF::with_precision(mpfr_prec_t prec) const {
    return ComplexBF(re_.with_precision(prec), im_.with_precision(prec));
}

BigFloat ComplexBF::norm() const { return re_ * re_ + im_ * im_; }

BigFloat ComplexBF::abs() const {
    BigFloat r(precision());
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDN);
    return r;
}

double ComplexBF::log2_abs() const noexcept {
    double a = re_.log2_abs();
    double b = im_.log2_abs();
    double hi = std::max(a, b);
    double lo = std::min(a, b);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

ComplexBF& ComplexBF::operator+=(const ComplexBF& rhs) {
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

ComplexBF& ComplexBF::operator-=(const ComplexBF& rhs) {
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

ComplexBF& ComplexBF::operator*=(const ComplexBF& rhs) { return *this = *this * rhs; }
ComplexBF& ComplexBF::operator/=(const ComplexBF& rhs) { return *this = *this / rhs; }

ComplexBF operator*(const ComplexBF& a, const ComplexBF& b) {
    mpfr_prec_t prec = std::min(a.precision(), b.precision());
    BigFloat re(prec), im(prec);
    // re = ac - bd, im = ad + bc, each with a single rounding
    mpfr_fmms(re.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_fmma(im.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
    return ComplexBF(std::move(re), std::move(im));
}

ComplexBF operator/(const ComplexBF& a, const ComplexBF& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "complex division by zero");
    mpfr_prec_t prec = std::min(a.precision(), b.precision());
    BigFloat den = b.norm();
    BigFloat re(prec), im(prec);
    mpfr_fmma(re.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_fmms(im.get(), a.im_.get(), b.re_.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
    return ComplexBF(re / den, im / den);
}

ComplexBF ComplexBF::unit_root(long num, long den, mpfr_prec_t prec) {
    if (den <= 0) throw Error(ErrorKind::OutOfRange, "unit_root needs a positive order");
    long n = ((num % den) + den) % den;
    // quarter turns are exact
    if ((4 * n) % den == 0) {
        switch ((4 * n) / den) {
            case 0: return ComplexBF(1.0, 0.0, prec);
            case 1: return ComplexBF(0.0, 1.0, prec);
            case 2: return ComplexBF(-1.0, 0.0, prec);
            default: return ComplexBF(0.0, -1.0, prec);
        }
    }
    mpfr_prec_t work = prec + 32;
    BigFloat angle = BigFloat::pi(work);
    mpfr_mul_si(angle.get(), angle.get(), 2 * n, MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), den, MPFR_RNDN);
    BigFloat s(work), c(work);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    return ComplexBF(c.with_precision(prec), s.with_precision(prec));
}

std::string ComplexBF::to_string(int digits) const {
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

ComplexBF sqrt(const ComplexBF& z) {
    mpfr_prec_t prec = z.precision();
    if (z.is_zero()) return ComplexBF(prec);
    BigFloat r = z.abs();
    BigFloat t = sqrt(ldexp(r + abs(z.real()), -1));
    BigFloat other = abs(z.imag()) / ldexp(t, 1);
    if (z.real().sign() >= 0) {
        BigFloat im = z.imag().sign() < 0 ? -other : other;
        return ComplexBF(std::move(t), std::move(im));
    }
    BigFloat im = z.imag().sign() < 0 ? -t : t;
    return ComplexBF(std::move(other), std::move(im));
}

ComplexBF ldexp(const ComplexBF& z, long e) { return ComplexBF(ldexp(z.real(), e), ldexp(z.imag(), e)); }

BigFloat abs(const ComplexBF& z) { return z.abs(); }

std::ostream& operator<<(std::ostream& os, const ComplexBF& z) { return os << z.to_string(); }

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::BadLevel: return "BadLevel";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::PoleEncountered: return "PoleEncountered";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DegenerateEigenvalues: return "DegenerateEigenvalues";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::FiveDivides: return "FiveDivides";
        case ErrorKind::BudgetExhausted: return "BudgetExhausted";
        case ErrorKind::HeuristicInconclusive: return "HeuristicInconclusive";
        case ErrorKind::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

}  // namespace rrcf
