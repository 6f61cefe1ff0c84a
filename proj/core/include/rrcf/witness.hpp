#ifndef RRCF_WITNESS_HPP
#define RRCF_WITNESS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrcf/bigfloat.hpp"

namespace rrcf {

/// Regular continued fraction [0; e_1, e_2, ...] with convergents
/// c_n/d_n for n = 0 .. size(), where c_0/d_0 = 0/1.
class CFDigits {
   public:
    CFDigits() = default;
    explicit CFDigits(const std::vector<mpz_class>& digits, bool terminated = false);

    void push(const mpz_class& e);
    void set_terminated(bool t) { terminated_ = t; }

    std::size_t size() const noexcept { return e_.size(); }
    /// e_n for 1 <= n <= size().
    const mpz_class& digit(std::size_t n) const;
    const mpz_class& c(std::size_t n) const { return c_.at(n); }
    const mpz_class& d(std::size_t n) const { return d_.at(n); }
    mpq_class convergent(std::size_t n) const;
    const std::vector<mpz_class>& digits() const noexcept { return e_; }
    /// True when the digits are the complete expansion of a rational.
    bool terminated() const noexcept { return terminated_; }
    /// Value of the full prefix [0; e_1, ..., e_size].
    mpq_class value() const { return convergent(size()); }

   private:
    std::vector<mpz_class> e_;
    std::vector<mpz_class> c_{mpz_class(0)};
    std::vector<mpz_class> d_{mpz_class(1)};
    mpz_class c_prev_ = 1;
    mpz_class d_prev_ = 0;
    bool terminated_ = false;
};

/// A positive real given exactly as ratio or ratio * pi.
struct RValue {
    mpq_class ratio;
    bool times_pi = false;

    /// Accepts "0.9424777961", "3/10", "0.3pi", "0.3*pi", "pi".
    static RValue parse(const std::string& text);
    BigFloat value(mpfr_prec_t prec) const;
    /// Outward-rounded enclosure [lo, hi].
    std::pair<BigFloat, BigFloat> enclosure(mpfr_prec_t prec) const;
    std::string to_string() const;
};

struct LambdaR {
    BigFloat R;
    BigFloat lambda;
    BigFloat lambda_conjugate;
};

/// Roots of a^2 - (1 + R) a - 1 = 0, dominant root first.
LambdaR lambda_r(const BigFloat& R);
LambdaR lambda_r(const RValue& R, mpfr_prec_t prec);

/// phi - lambda_R^{1/2}; positive means the digits e_{n+1} ~ lambda_R^{d_n/2}
/// grow too slowly for liminf phi^{d_n}/e_{n+1} to be finite.
BigFloat golden_gap(const LambdaR& l);

/// Euclidean expansion of a rational in (0, 1); terminates.
CFDigits expand_real(const mpq_class& t, std::size_t n_terms);
/// Expansion of a big float in (0, 1), treated as the interval t +- ulp(t).
/// Throws PrecisionExhausted when the interval does not determine n_terms digits.
CFDigits expand_real(const BigFloat& t, std::size_t n_terms);
/// Digits shared by every real in [lo, hi]; stops early instead of throwing.
CFDigits expand_interval(const mpq_class& lo, const mpq_class& hi, std::size_t n_terms);

/// 1 / (d_n^2 e_{n+1}); zero at n == size() for a terminated expansion.
mpq_class approx_error_bound(const CFDigits& digits, std::size_t n);

/// |c_n/d_n - target| + 1/(d_n d_{n+1}), an upper bound on |t - target|.
mpq_class distance_bound(const CFDigits& digits, std::size_t n, const mpq_class& target);

enum class DigitRounding { Floor, Ceiling };

struct WitnessParams {
    RValue R;
    std::vector<mpz_class> seed{1, 1, 2};
    std::size_t max_terms = 5;
    std::size_t digit_budget_bits = 1u << 16;
    DigitRounding rounding = DigitRounding::Ceiling;
};

struct WitnessResult {
    CFDigits digits;
    bool budget_exhausted = false;
    /// d_n whose power lambda^{d_n/2} exceeded the budget.
    mpz_class blocked_d;
    /// Approximate bit length of the digit that was not computed.
    double blocked_bits = 0;
};

/// Extends the seed by e_{n+1} = round(lambda_R^{d_n/2}) with the chosen
/// rounding, each digit certified by interval evaluation. Stops at the budget.
WitnessResult build_witness(const WitnessParams& params);
/// As build_witness, but throws BudgetExhausted unless max_terms digits were produced.
CFDigits construct_witness(const WitnessParams& params);

/// Exact integer floor or ceiling of lambda_R^{d/2}.
mpz_class lambda_power_digit(const RValue& R, const mpz_class& d, DigitRounding rounding);

/// lambda_R^{d_n/2} / e_{n+1} for n = first .. size()-1.
std::vector<BigFloat> tr_ratios(const CFDigits& digits, const RValue& R, std::size_t first, mpfr_prec_t prec);

struct ArcMembership {
    bool inside = false;
    /// R - |x + 1| (or a lower bound for it when via_chord).
    BigFloat margin;
    bool via_chord = false;
};

/// Whether exp(2 pi i t) lies on the arc |x + 1| < R. Throws Inconclusive
/// when |margin| < 2^{-prec/2}.
ArcMembership in_M_R(const BigFloat& t, const BigFloat& R, mpfr_prec_t prec);
/// Same for every t with |t - center| <= radius.
ArcMembership in_M_R(const mpq_class& center, const mpq_class& radius, const BigFloat& R, mpfr_prec_t prec);

/// max{|Q_{d-1}(x_d)|, |Q_{d-2}(x_d)|} at x_d = exp(2 pi i c/d) for the
/// 1 + x/(1 + x^2/...) recursion; exact arithmetic for d <= exact_threshold.
BigFloat schur_root_bound(long d, long c, mpfr_prec_t prec = kDefaultPrecision, long exact_threshold = 200);

struct ProbeResult {
    BigFloat sup;
    std::int64_t argmax = 0;
};

/// sup_{n <= n_max} |Q_n(x)| / lambda_R^{n/2}; x must lie in M_R.
ProbeResult growth_bound_probe(const ComplexBF& x, const BigFloat& R, std::int64_t n_max);
/// sup_{n <= n_max} |Q_n(x) - Q_n(y)| / ((n + 1)^2 lambda_R^{n/2} |x - y|).
ProbeResult lipschitz_probe(const ComplexBF& x, const ComplexBF& y, const BigFloat& R, std::int64_t n_max);

enum class CertificateStatus { Certified, NotInArc, BudgetExhausted, Inconclusive };

struct CertificateEntry {
    std::size_t n = 0;
    mpz_class d;
    mpz_class c;
    CertificateStatus status = CertificateStatus::Inconclusive;
    bool x_n_in_arc = false;
    /// max |Q_{d-1}(x_n)|, |Q_{d-2}(x_n)|
    std::optional<BigFloat> schur_bound;
    /// bound on |Q_j(x_n) - Q_j(x)| for j = d-1, d-2
    std::optional<BigFloat> perturbation;
    /// (schur_bound + perturbation)^2, bounding |Q_{d-1}(x) Q_{d-2}(x)|
    std::optional<BigFloat> product_bound;
    std::string note;
};

struct CertificateOptions {
    mpfr_prec_t prec = kDefaultPrecision;
    long exact_threshold = 200;
    /// Largest d_n for which the recursion is run.
    long max_depth = 200000;
};

/// Bounded-subsequence evidence for |Q_N(x) Q_{N-1}(x)| at N = d_n - 1,
/// x = exp(2 pi i t) with t given by the digit prefix.
std::vector<CertificateEntry> divergence_certificate(const CFDigits& digits, const RValue& R,
                                                     const std::vector<std::size_t>& indices,
                                                     const CertificateOptions& opts = {});

std::string to_string(CertificateStatus s);

}  // namespace rrcf

#endif  // RRCF_WITNESS_HPP
