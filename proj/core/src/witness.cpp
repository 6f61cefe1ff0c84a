#include "rrcf/witness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rrcf/cyclotomic.hpp"
#include "rrcf/errors.hpp"

namespace rrcf {

namespace {

constexpr double kLog2Phi = 0.6942419136306174;

mpq_class mpq_from_mpfr(mpfr_srcptr x) {
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class q(m);
    if (e >= 0) {
        mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    q.canonicalize();
    return q;
}

mpq_class frac(const mpq_class& t) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return t - f;
}

mp_bitcnt_t bit_length(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

// e^{2 pi i t} for a rational t
ComplexBF unit_root_q(const mpq_class& t, mpfr_prec_t prec) {
    const mpq_class f = frac(t);
    if (f.get_den().fits_slong_p() && f.get_num().fits_slong_p())
        return ComplexBF::unit_root(f.get_num().get_si(), f.get_den().get_si(), prec);
    const mpfr_prec_t work = prec + 32;
    BigFloat angle = BigFloat::pi(work);
    mpfr_mul_q(angle.get(), angle.get(), f.get_mpq_t(), MPFR_RNDN);
    mpfr_mul_2ui(angle.get(), angle.get(), 1, MPFR_RNDN);
    BigFloat s(work), c(work);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    return ComplexBF(c.with_precision(prec), s.with_precision(prec));
}

// (Q_j, Q_{j-1}) for Q_{-1} = Q_0 = 1, Q_n = Q_{n-1} + x^n Q_{n-2}
template <class R>
std::pair<R, R> schur_q_pair(const R& x, const R& one, long j) {
    R prev = one, curr = one, xp = one;
    for (long n = 1; n <= j; ++n) {
        xp = xp * x;
        R next = curr + xp * prev;
        prev = std::move(curr);
        curr = std::move(next);
    }
    return {curr, prev};
}

// Working precision under which rounding in schur_q_pair stays below 2^{-prec}:
// every intermediate value is bounded by a Fibonacci number.
mpfr_prec_t a_priori_precision(long j, mpfr_prec_t prec) {
    const double bits = kLog2Phi * static_cast<double>(std::max(j, 1L)) + 2.0 * std::log2(static_cast<double>(j) + 2.0);
    return prec + static_cast<mpfr_prec_t>(std::ceil(bits)) + 32;
}

// (Q_j(1), Q_j'(1)) and (Q_{j-1}(1), Q_{j-1}'(1)); Q_j has non-negative coefficients,
// so Q_j'(1) bounds |Q_j'| on the closed unit disk.
struct DerivAtOne {
    mpz_class q_curr, q_prev, dq_curr, dq_prev;
};

DerivAtOne derivative_at_one(long j) {
    DerivAtOne s{1, 1, 0, 0};
    for (long n = 1; n <= j; ++n) {
        mpz_class q = s.q_curr + s.q_prev;
        mpz_class dq = s.dq_curr + s.dq_prev + mpz_class(n) * s.q_prev;
        s.q_prev = std::move(s.q_curr);
        s.dq_prev = std::move(s.dq_curr);
        s.q_curr = std::move(q);
        s.dq_curr = std::move(dq);
    }
    return s;
}

struct DirectedLambda {
    BigFloat lo, hi;
};

DirectedLambda lambda_enclosure(const RValue& R, mpfr_prec_t prec) {
    auto [r_lo, r_hi] = R.enclosure(prec);
    auto bound = [prec](const BigFloat& r, mpfr_rnd_t rnd) {
        BigFloat h(prec), s(prec), out(prec);
        mpfr_add_ui(h.get(), r.get(), 1, rnd);
        mpfr_div_2ui(h.get(), h.get(), 1, rnd);
        mpfr_sqr(s.get(), h.get(), rnd);
        mpfr_add_ui(s.get(), s.get(), 1, rnd);
        mpfr_sqrt(s.get(), s.get(), rnd);
        mpfr_add(out.get(), h.get(), s.get(), rnd);
        return out;
    };
    return {bound(r_lo, MPFR_RNDD), bound(r_hi, MPFR_RNDU)};
}

BigFloat half_power_exponent(const mpz_class& d) {
    BigFloat e(static_cast<mpfr_prec_t>(bit_length(d) + 2));
    mpfr_set_z(e.get(), d.get_mpz_t(), MPFR_RNDN);
    mpfr_div_2ui(e.get(), e.get(), 1, MPFR_RNDN);
    return e;
}

double digit_bits_estimate(const RValue& R, const mpz_class& d) {
    const double log2_lambda = lambda_r(R, 64).lambda.log2_abs();
    return d.get_d() / 2.0 * log2_lambda;
}

}  // namespace

CFDigits::CFDigits(const std::vector<mpz_class>& digits, bool terminated) {
    for (const auto& e : digits) push(e);
    terminated_ = terminated;
}

void CFDigits::push(const mpz_class& e) {
    if (e <= 0) throw Error(ErrorKind::DomainError, "continued-fraction digits must be positive");
    if (terminated_) throw Error(ErrorKind::DomainError, "cannot extend a terminated expansion");
    mpz_class c = e * c_.back() + c_prev_;
    mpz_class d = e * d_.back() + d_prev_;
    c_prev_ = c_.back();
    d_prev_ = d_.back();
    e_.push_back(e);
    c_.push_back(std::move(c));
    d_.push_back(std::move(d));
}

const mpz_class& CFDigits::digit(std::size_t n) const {
    if (n < 1 || n > e_.size()) throw Error(ErrorKind::OutOfRange, "digit index " + std::to_string(n));
    return e_[n - 1];
}

mpq_class CFDigits::convergent(std::size_t n) const {
    if (n >= c_.size()) throw Error(ErrorKind::OutOfRange, "convergent index " + std::to_string(n));
    return mpq_class(c_[n], d_[n]);
}

RValue RValue::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    RValue r;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        r.times_pi = true;
        s.resize(s.size() - 2);
        if (!s.empty() && s.back() == '*') s.pop_back();
        if (s.empty()) {
            r.ratio = 1;
            return r;
        }
    }
    const auto bad = [&] { return std::invalid_argument("cannot parse R value '" + text + "'"); };
    if (s.empty()) throw bad();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        try {
            r.ratio = mpq_class(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
        } catch (const std::invalid_argument&) {
            throw bad();
        }
        if (r.ratio.get_den() == 0) throw bad();
        r.ratio.canonicalize();
        return r;
    }
    // decimal literal with optional exponent, converted exactly
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size() && s[i] != 'e'; ++i) {
        if (s[i] == '.' && !seen_dot) {
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i];
            seen_digit = true;
            if (seen_dot) --scale;
        } else {
            throw bad();
        }
    }
    if (!seen_digit) throw bad();
    if (i < s.size()) {
        try {
            std::size_t used = 0;
            scale += std::stol(s.substr(i + 1), &used);
            if (used != s.size() - i - 1) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
    }
    mpz_class num(digits, 10), pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    r.ratio = scale < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
    r.ratio.canonicalize();
    if (neg) r.ratio = -r.ratio;
    return r;
}

BigFloat RValue::value(mpfr_prec_t prec) const {
    BigFloat v(ratio, prec + 8);
    if (times_pi) v *= BigFloat::pi(prec + 8);
    return v.with_precision(prec);
}

std::pair<BigFloat, BigFloat> RValue::enclosure(mpfr_prec_t prec) const {
    BigFloat lo(prec), hi(prec);
    if (!times_pi) {
        mpfr_set_q(lo.get(), ratio.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi.get(), ratio.get_mpq_t(), MPFR_RNDU);
        return {lo, hi};
    }
    BigFloat pi_lo(prec), pi_hi(prec);
    mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
    mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
    const bool nonneg = ratio >= 0;
    mpfr_mul_q(lo.get(), (nonneg ? pi_lo : pi_hi).get(), ratio.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), (nonneg ? pi_hi : pi_lo).get(), ratio.get_mpq_t(), MPFR_RNDU);
    return {lo, hi};
}

std::string RValue::to_string() const {
    std::string s = ratio.get_str();
    return times_pi ? s + "*pi" : s;
}

LambdaR lambda_r(const BigFloat& R) {
    if (R.sign() <= 0) throw Error(ErrorKind::DomainError, "R must be positive");
    const mpfr_prec_t prec = R.precision();
    const mpfr_prec_t work = prec + 16;
    BigFloat one(1L, work);
    BigFloat h = (one + R.with_precision(work)) / BigFloat(2L, work);
    BigFloat s = sqrt(one + h * h);
    LambdaR l;
    l.R = R;
    l.lambda = (h + s).with_precision(prec);
    // -1/lambda avoids the cancellation in h - s
    l.lambda_conjugate = (-(one / (h + s))).with_precision(prec);
    return l;
}

LambdaR lambda_r(const RValue& R, mpfr_prec_t prec) {
    if (R.ratio <= 0) throw Error(ErrorKind::DomainError, "R must be positive");
    return lambda_r(R.value(prec));
}

BigFloat golden_gap(const LambdaR& l) {
    const mpfr_prec_t p = l.lambda.precision();
    BigFloat phi = (BigFloat(1L, p) + sqrt(BigFloat(5L, p))) / BigFloat(2L, p);
    return phi - sqrt(l.lambda);
}

CFDigits expand_real(const mpq_class& t, std::size_t n_terms) {
    if (t <= 0 || t >= 1) throw Error(ErrorKind::DomainError, "expand_real needs t in (0, 1)");
    CFDigits out;
    mpq_class x = t;
    while (out.size() < n_terms) {
        mpq_class inv = 1 / x;
        mpz_class e;
        mpz_fdiv_q(e.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
        out.push(e);
        x = inv - e;
        if (x == 0) break;
    }
    if (x == 0) out.set_terminated(true);
    return out;
}

CFDigits expand_interval(const mpq_class& lo0, const mpq_class& hi0, std::size_t n_terms) {
    if (lo0 > hi0) throw Error(ErrorKind::DomainError, "empty interval");
    if (lo0 <= 0 || hi0 >= 1) throw Error(ErrorKind::DomainError, "interval must lie inside (0, 1)");
    if (lo0 == hi0) return expand_real(lo0, n_terms);
    CFDigits out;
    mpq_class lo = lo0, hi = hi0;
    while (out.size() < n_terms) {
        if (lo == 0 || hi == 0) break;
        mpq_class il = 1 / lo, ih = 1 / hi;
        mpz_class el, eh;
        mpz_fdiv_q(el.get_mpz_t(), il.get_num_mpz_t(), il.get_den_mpz_t());
        mpz_fdiv_q(eh.get_mpz_t(), ih.get_num_mpz_t(), ih.get_den_mpz_t());
        if (el != eh) break;
        out.push(el);
        // x -> 1/x - e reverses the order
        mpq_class nlo = ih - eh, nhi = il - el;
        lo = std::move(nlo);
        hi = std::move(nhi);
    }
    return out;
}

CFDigits expand_real(const BigFloat& t, std::size_t n_terms) {
    if (!t.is_finite() || t.sign() <= 0 || !(t < BigFloat(1L, t.precision())))
        throw Error(ErrorKind::DomainError, "expand_real needs t in (0, 1)");
    const mpq_class centre = mpq_from_mpfr(t.get());
    mpq_class ulp(1);
    const long e = static_cast<long>(mpfr_get_exp(t.get())) - static_cast<long>(t.precision());
    if (e < 0) {
        mpz_mul_2exp(ulp.get_den_mpz_t(), ulp.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    } else {
        mpz_mul_2exp(ulp.get_num_mpz_t(), ulp.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    }
    ulp.canonicalize();
    mpq_class lo = centre - ulp, hi = centre + ulp;
    if (lo <= 0 || hi >= 1) throw PrecisionError(0, "t is within one ulp of the interval ends");
    CFDigits out = expand_interval(lo, hi, n_terms);
    if (out.size() < n_terms)
        throw PrecisionError(static_cast<std::int64_t>(out.size() + 1),
                             "digit not determined by the input precision");
    return out;
}

mpq_class approx_error_bound(const CFDigits& digits, std::size_t n) {
    if (n < digits.size()) {
        const mpz_class& d = digits.d(n);
        return mpq_class(1, d * d * digits.digit(n + 1));
    }
    if (n == digits.size() && digits.terminated()) return 0;
    throw Error(ErrorKind::OutOfRange, "approx_error_bound needs digit e_" + std::to_string(n + 1));
}

mpq_class distance_bound(const CFDigits& digits, std::size_t n, const mpq_class& target) {
    if (n < digits.size()) return abs(digits.convergent(n) - target) + mpq_class(1, digits.d(n) * digits.d(n + 1));
    if (n == digits.size() && digits.terminated()) return abs(digits.convergent(n) - target);
    throw Error(ErrorKind::OutOfRange, "distance_bound needs d_" + std::to_string(n + 1));
}

mpz_class lambda_power_digit(const RValue& R, const mpz_class& d, DigitRounding rounding) {
    if (R.ratio <= 0) throw Error(ErrorKind::DomainError, "R must be positive");
    if (d <= 0) throw Error(ErrorKind::DomainError, "d must be positive");
    const double bits = digit_bits_estimate(R, d);
    auto prec = static_cast<mpfr_prec_t>(64 + bit_length(d) + static_cast<mp_bitcnt_t>(std::ceil(bits)));
    const mpfr_prec_t limit = 64 * prec + (1 << 16);
    const BigFloat e = half_power_exponent(d);
    const mpfr_rnd_t to_int = rounding == DigitRounding::Floor ? MPFR_RNDD : MPFR_RNDU;
    for (; prec <= limit; prec *= 2) {
        DirectedLambda lam = lambda_enclosure(R, prec);
        BigFloat lo(prec), hi(prec);
        mpfr_pow(lo.get(), lam.lo.get(), e.get(), MPFR_RNDD);
        mpfr_pow(hi.get(), lam.hi.get(), e.get(), MPFR_RNDU);
        mpz_class zl, zh;
        mpfr_get_z(zl.get_mpz_t(), lo.get(), to_int);
        mpfr_get_z(zh.get_mpz_t(), hi.get(), to_int);
        if (zl == zh) return zl;
    }
    throw Error(ErrorKind::Inconclusive, "lambda_R^{d/2} is too close to an integer");
}

WitnessResult build_witness(const WitnessParams& params) {
    if (params.R.ratio <= 0) throw Error(ErrorKind::DomainError, "R must be positive");
    WitnessResult res;
    for (const auto& e : params.seed) {
        if (res.digits.size() >= params.max_terms) return res;
        res.digits.push(e);
    }
    if (res.digits.size() == 0 && params.max_terms > 0)
        throw Error(ErrorKind::DomainError, "the witness needs at least one seed digit");
    while (res.digits.size() < params.max_terms) {
        const mpz_class& d = res.digits.d(res.digits.size());
        const double bits = digit_bits_estimate(params.R, d);
        if (bits > static_cast<double>(params.digit_budget_bits)) {
            res.budget_exhausted = true;
            res.blocked_d = d;
            res.blocked_bits = bits;
            return res;
        }
        res.digits.push(lambda_power_digit(params.R, d, params.rounding));
    }
    return res;
}

CFDigits construct_witness(const WitnessParams& params) {
    WitnessResult r = build_witness(params);
    if (r.budget_exhausted)
        throw Error(ErrorKind::BudgetExhausted, "digit e_" + std::to_string(r.digits.size() + 1) + " = lambda^(" +
                                                    r.blocked_d.get_str() + "/2) needs about " +
                                                    std::to_string(static_cast<long long>(r.blocked_bits)) + " bits");
    return r.digits;
}

std::vector<BigFloat> tr_ratios(const CFDigits& digits, const RValue& R, std::size_t first, mpfr_prec_t prec) {
    std::vector<BigFloat> out;
    if (digits.size() == 0) return out;
    const BigFloat lambda = lambda_r(R, prec + 32).lambda;
    for (std::size_t n = std::max<std::size_t>(first, 1); n < digits.size(); ++n) {
        BigFloat p(prec + 32);
        mpfr_pow(p.get(), lambda.get(), half_power_exponent(digits.d(n)).get(), MPFR_RNDN);
        out.push_back((p / BigFloat(digits.digit(n + 1), prec + 32)).with_precision(prec));
    }
    return out;
}

ArcMembership in_M_R(const mpq_class& center, const mpq_class& radius, const BigFloat& R, mpfr_prec_t prec) {
    if (radius < 0) throw Error(ErrorKind::DomainError, "radius must be non-negative");
    if (R.sign() <= 0) throw Error(ErrorKind::DomainError, "R must be positive");
    const mpfr_prec_t work = prec + 32;
    const mpq_class half(1, 2);
    const mpq_class dist_c = abs(frac(center) - half);
    // |e^{2 pi i s} + 1| = 2 sin(pi |s - 1/2|), increasing in |s - 1/2| on [0, 1/2]
    const mpq_class far = std::min(mpq_class(dist_c + radius), half);
    const mpq_class near = std::max(mpq_class(dist_c - radius), mpq_class(0));
    const BigFloat Rw = R.with_precision(work);
    const BigFloat two_pi = BigFloat::pi(work) * BigFloat(2L, work);
    auto chord = [&](const mpq_class& u) {
        BigFloat a = BigFloat::pi(work) * BigFloat(u, work);
        return BigFloat(2L, work) * sin(a);
    };
    ArcMembership out;
    const BigFloat chord_bound = two_pi * BigFloat(far, work);
    const BigFloat tol = BigFloat::exp2(-static_cast<long>(prec / 2), work);
    if (chord_bound < Rw && Rw - chord_bound > tol) {
        out.inside = true;
        out.via_chord = true;
        out.margin = (Rw - chord_bound).with_precision(prec);
        return out;
    }
    const BigFloat upper = chord(far);
    const BigFloat lower = chord(near);
    if (Rw - upper > tol) {
        out.inside = true;
        out.margin = (Rw - upper).with_precision(prec);
        return out;
    }
    if (lower - Rw > tol) {
        out.inside = false;
        out.margin = (Rw - lower).with_precision(prec);
        return out;
    }
    throw Error(ErrorKind::Inconclusive, "|x + 1| is within 2^(-" + std::to_string(prec / 2) + ") of R");
}

ArcMembership in_M_R(const BigFloat& t, const BigFloat& R, mpfr_prec_t prec) {
    if (!t.is_finite()) throw Error(ErrorKind::DomainError, "t must be finite");
    return in_M_R(mpq_from_mpfr(t.get()), mpq_class(0), R, prec);
}

BigFloat schur_root_bound(long d, long c, mpfr_prec_t prec, long exact_threshold) {
    if (d < 1) throw Error(ErrorKind::OutOfRange, "schur_root_bound needs d >= 1");
    if (gcd_long(mod_long(c, d), d) != 1) throw Error(ErrorKind::DomainError, "c must be coprime to d");
    if (d <= exact_threshold) {
        const CycloElem x = CycloElem::root(d, mod_long(c, d));
        auto [q1, q2] = schur_q_pair(x, CycloElem::one(d), d - 1);
        return max(q1.embed(prec).abs(), q2.embed(prec).abs());
    }
    const mpfr_prec_t work = a_priori_precision(d, prec);
    const ComplexBF x = ComplexBF::unit_root(c, d, work);
    auto [q1, q2] = schur_q_pair(x, ComplexBF::one(work), d - 1);
    return max(q1.abs(), q2.abs()).with_precision(prec);
}

namespace {

void require_in_arc(const ComplexBF& x, const BigFloat& R, const char* name) {
    if (!(abs(x + ComplexBF::one(x.precision())) < R))
        throw Error(ErrorKind::DomainError, std::string(name) + " is not in M_R (|x + 1| >= R)");
}

}  // namespace

ProbeResult growth_bound_probe(const ComplexBF& x, const BigFloat& R, std::int64_t n_max) {
    if (n_max < 0) throw Error(ErrorKind::OutOfRange, "n_max must be non-negative");
    require_in_arc(x, R, "x");
    const mpfr_prec_t work = x.precision() + 64;
    const BigFloat root = sqrt(lambda_r(R.with_precision(work)).lambda);
    const ComplexBF xw = x.with_precision(work);
    ComplexBF prev = ComplexBF::one(work), curr = ComplexBF::one(work), xp = ComplexBF::one(work);
    BigFloat scale(1L, work);
    ProbeResult res{BigFloat(1L, x.precision()), 0};
    for (std::int64_t n = 1; n <= n_max; ++n) {
        xp = xp * xw;
        ComplexBF next = curr + xp * prev;
        prev = std::move(curr);
        curr = std::move(next);
        scale *= root;
        BigFloat ratio = curr.abs() / scale;
        if (ratio > res.sup) {
            res.sup = ratio.with_precision(x.precision());
            res.argmax = n;
        }
    }
    return res;
}

ProbeResult lipschitz_probe(const ComplexBF& x, const ComplexBF& y, const BigFloat& R, std::int64_t n_max) {
    if (n_max < 0) throw Error(ErrorKind::OutOfRange, "n_max must be non-negative");
    if (x == y) throw Error(ErrorKind::DomainError, "lipschitz_probe needs x != y");
    require_in_arc(x, R, "x");
    require_in_arc(y, R, "y");
    const mpfr_prec_t prec = std::min(x.precision(), y.precision());
    const mpfr_prec_t work = prec + 64;
    const ComplexBF xw = x.with_precision(work), yw = y.with_precision(work);
    const BigFloat dist = (xw - yw).abs();
    if (dist.is_zero()) throw Error(ErrorKind::DomainError, "lipschitz_probe needs x != y");
    const BigFloat root = sqrt(lambda_r(R.with_precision(work)).lambda);
    ComplexBF px = ComplexBF::one(work), cx = px, xpx = px;
    ComplexBF py = px, cy = px, xpy = px;
    BigFloat scale(1L, work);
    ProbeResult res{BigFloat(prec), 0};
    for (std::int64_t n = 1; n <= n_max; ++n) {
        xpx = xpx * xw;
        xpy = xpy * yw;
        ComplexBF nx = cx + xpx * px;
        ComplexBF ny = cy + xpy * py;
        px = std::move(cx);
        py = std::move(cy);
        cx = std::move(nx);
        cy = std::move(ny);
        scale *= root;
        const auto n1 = static_cast<long>(n + 1);
        BigFloat ratio = (cx - cy).abs() / (scale * BigFloat(n1 * n1, work) * dist);
        if (ratio > res.sup) {
            res.sup = ratio.with_precision(prec);
            res.argmax = n;
        }
    }
    return res;
}

std::string to_string(CertificateStatus s) {
    switch (s) {
        case CertificateStatus::Certified: return "Certified";
        case CertificateStatus::NotInArc: return "NotInArc";
        case CertificateStatus::BudgetExhausted: return "BudgetExhausted";
        case CertificateStatus::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

namespace {

CertificateEntry certify_index(const CFDigits& digits, const BigFloat& R, std::size_t n, const CertificateOptions& opts) {
    CertificateEntry ent;
    ent.n = n;
    ent.d = digits.d(n);
    ent.c = digits.c(n);
    if (ent.d > opts.max_depth) {
        ent.status = CertificateStatus::BudgetExhausted;
        ent.note = "d_" + std::to_string(n) + " = " + ent.d.get_str() + " exceeds the recursion depth limit " +
                   std::to_string(opts.max_depth);
        return ent;
    }
    const long d = ent.d.get_si();
    const long c = ent.c.get_si();
    const mpfr_prec_t prec = opts.prec;
    const mpq_class tn(ent.c, ent.d);

    try {
        ent.x_n_in_arc = in_M_R(tn, mpq_class(0), R, prec).inside;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Inconclusive) throw;
        ent.note = "x_n is on the boundary of M_R to working precision";
        return ent;
    }
    const BigFloat S = schur_root_bound(d, c, prec, opts.exact_threshold);
    ent.schur_bound = S;

    // t is pinned to c_K/d_K by the longest prefix, within 1/(d_K d_{K+1}) <= 1/d_K^2
    const std::size_t K = digits.size();
    const mpq_class t_ref = digits.convergent(K);
    const mpz_class& dK = digits.d(K);
    const mpq_class tail = digits.terminated() ? mpq_class(0) : mpq_class(1, dK * dK);
    if (K == n && tail != 0) ent.note = "no digit beyond e_n; the perturbation bound is the crude tail bound";

    const mpfr_prec_t work = a_priori_precision(d, prec);
    const ComplexBF xn = ComplexBF::unit_root(c, d, work);
    const ComplexBF xt = unit_root_q(t_ref, work);
    const auto qn = schur_q_pair(xn, ComplexBF::one(work), d - 1);
    const auto qt = schur_q_pair(xt, ComplexBF::one(work), d - 1);
    const DerivAtOne dq = derivative_at_one(d - 1);

    const BigFloat rounding = BigFloat::exp2(1 - static_cast<long>(prec), work);
    BigFloat tail_len = BigFloat::pi(work) * BigFloat(2L, work) * BigFloat(tail, work);
    BigFloat b1 = (qn.first - qt.first).abs() + rounding + tail_len * BigFloat(dq.dq_curr, work);
    BigFloat b2 = (qn.second - qt.second).abs() + rounding + tail_len * BigFloat(dq.dq_prev, work);
    BigFloat B = max(b1, b2);
    ent.perturbation = B.with_precision(prec);
    BigFloat total = S.with_precision(work) + B;
    ent.product_bound = (total * total).with_precision(prec);
    ent.status = ent.x_n_in_arc ? CertificateStatus::Certified : CertificateStatus::NotInArc;
    return ent;
}

}  // namespace

std::vector<CertificateEntry> divergence_certificate(const CFDigits& digits, const RValue& R,
                                                     const std::vector<std::size_t>& indices,
                                                     const CertificateOptions& opts) {
    if (R.ratio <= 0) throw Error(ErrorKind::DomainError, "R must be positive");
    const BigFloat Rv = R.value(opts.prec + 32);
    std::vector<CertificateEntry> out;
    out.reserve(indices.size());
    for (std::size_t n : indices) {
        if (n < 1 || n > digits.size())
            throw Error(ErrorKind::OutOfRange, "certificate index " + std::to_string(n) + " outside the prefix");
        out.push_back(certify_index(digits, Rv, n, opts));
    }
    return out;
}

}  // namespace rrcf
