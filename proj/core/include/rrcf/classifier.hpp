#ifndef RRCF_CLASSIFIER_HPP
#define RRCF_CLASSIFIER_HPP

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rrcf/bigfloat.hpp"
#include "rrcf/closed_forms.hpp"
#include "rrcf/cyclotomic.hpp"

namespace rrcf {

/// exp(2 pi i num/order) with gcd(num, order) = 1 and 0 <= num < order.
struct RootOfUnity {
    long num = 0;
    long order = 1;

    RootOfUnity() = default;
    /// Reduces num modulo order; throws DomainError unless gcd(num, order) = 1.
    RootOfUnity(long num, long order);
    /// "j/k".
    static RootOfUnity parse(const std::string& text);

    /// The root as an element of Q(zeta_level); order must divide level.
    CycloElem exact(long level) const;
    ComplexBF numeric(mpfr_prec_t prec) const;
    std::string to_string() const;
};

/// An exact cyclotomic value when one is available, plus its numeric value.
/// A missing numeric value encodes the projective point at infinity.
struct FieldValue {
    std::optional<CycloElem> exact;
    std::optional<ComplexBF> value;

    bool is_infinite() const noexcept { return !value; }
    static FieldValue from_exact(const CycloElem& e, mpfr_prec_t prec);
    static FieldValue from_numeric(const ComplexBF& v);
    static FieldValue infinity();
};

enum class Verdict {
    ConvergentWithLimit,
    DivergentNegativeReal,
    DivergentTwoLimitPoints,
    DivergentThreeLimitPointsPossible,
    ConditionNotSatisfied,
};

enum class Provenance {
    /// distinct eigenvalue moduli, square root outside Q(a, zeta_m)
    EigenLimit,
    /// 1/4 + a^m negative real: period-m approximants are not Cauchy
    NonCauchy,
    /// a = 1 and 5 | m
    Schur,
    /// 5 | m and k | m with a != 1: two-limit-point conjecture
    Conjectural,
    /// numeric input or a search-based membership decision
    Heuristic,
};

std::string to_string(Verdict v);
std::string to_string(Provenance p);

struct Classification {
    std::string a;
    long m = 0;
    long l = 1;
    Verdict verdict = Verdict::ConditionNotSatisfied;
    Provenance provenance = Provenance::Heuristic;
    /// sqrt(1/4 + a^m) lies outside Q(a, zeta_m)
    bool algebraic_condition_held = false;
    std::optional<FieldValue> limit;
    std::vector<FieldValue> limit_points;
    std::string note;
};

enum class MembershipMethod {
    /// classical square roots: sqrt 5 by a Gauss sum, sqrt(-3) = 1 + 2 zeta_3
    ExactGaussSum,
    /// zeta_k itself is not in Q(zeta_m)
    RootOfUnityContainment,
    /// bounded LLL search, candidates verified exactly
    IntegerRelation,
};

std::string to_string(MembershipMethod m);

struct MembershipOptions {
    mpfr_prec_t prec = 512;
    mpz_class height_bound = 1000000;
    /// Number of primes tried for a quadratic non-residue certificate.
    int residue_primes = 64;
};

/// Whether sqrt(1 + 4 zeta_k) lies in Q(zeta_m).
struct MembershipReport {
    long k = 1;
    long m = 1;
    bool in_field = false;
    /// s with s^2 = 1 + 4 zeta_k, verified exactly, at level lcm(k, m)
    std::optional<CycloElem> witness;
    MembershipMethod method = MembershipMethod::IntegerRelation;
    mpfr_prec_t precision_bits = 0;
    mpz_class height_bound;
    /// Non-membership is proven (not just undetected).
    bool absence_proven = false;
    /// p = 1 mod lcm(k, m) at which 1 + 4 zeta_k reduces to a non-residue
    std::optional<long> residue_prime;
    std::optional<double> lattice_log2_shortest;
    std::string note;
};

MembershipReport field_membership(long k, long m, const MembershipOptions& opts = {});

/// sqrt(1/4 + a^m) exactly when it lies in a cyclotomic field reachable by
/// adjoining sqrt 5 or sqrt(-3) (a^m = 1 or a^m = -1); principal branch.
std::optional<CycloElem> exact_discriminant_root(const CycloElem& am);

/// P_{m-2} / (1/2 + sqrt(1/4 + a^m) - a x^{m-1} P_{m-3}) at x = zeta_m^l,
/// with P_{-1} = 1 and P_{-2} = 0.
FieldValue limit_formula(const CycloElem& a, long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision);
FieldValue limit_formula(const RootOfUnity& a, long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision);
FieldValue limit_formula(const ComplexBF& a, long m, long l = 1);

template <class R>
struct EigenSystem {
    R lambda_plus, lambda_minus;
    std::array<R, 2> v_plus, v_minus;
    /// (a_{r+}, a_{r-}) with (P_r, Q_r) = a_{r+} v_+ + a_{r-} v_-, r = 0 .. m-1
    std::vector<std::array<R, 2>> coeffs;
};

struct EigenData {
    long m = 0;
    std::optional<EigenSystem<CycloElem>> exact;
    EigenSystem<ComplexBF> numeric;
    /// A_m v = lambda v held (exactly when exact is set).
    bool verified = false;
    /// The (P_{m-2}, lambda - a x^{m-1} P_{m-3}) eigenvector vanished and the
    /// column form (lambda - A_22, A_21) was used.
    bool alternate_eigenvector = false;
};

EigenData eigen_data(const CycloElem& a, long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision);
EigenData eigen_data(const RootOfUnity& a, long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision);

struct LimitPointSet {
    /// ratios of the eigenvector entries, lambda_+ first
    std::vector<FieldValue> principal;
    /// three-point case only: per residue r, the values for s = 0, 1, 2
    std::vector<std::array<FieldValue, 3>> twisted;
};

/// Predicted limit points for 5 | m, k | m or for a^m = -1, 3 | m; DomainError otherwise.
LimitPointSet limit_points(const RootOfUnity& a, long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision);

/// Legendre symbol (m | 5).
int legendre5(long m);

struct SchurLimit {
    long m = 0;
    int legendre = 1;
    long sigma = 0;
    long exponent = 0;
    CycloElem exact;
    ComplexBF value;
};

/// K(x) = lambda x^{(1 - lambda sigma m)/5} K(lambda) for K(x) = 1 + x/(1 + x^2/...),
/// x = zeta_m^l, with K(1) = phi and K(-1) = 1/phi.
SchurLimit schur_limit(long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision);

/// limit_formula(1, m, l) transported to K through K = K_1 / (1 - K_1).
FieldValue schur_via_limit_formula(long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision);

/// Classification of K_a at x = zeta_m^l.
Classification classify(const RootOfUnity& a, long m, long l = 1, mpfr_prec_t prec = kDefaultPrecision,
                        const MembershipOptions& opts = {});
/// Heuristic path for a raw complex a; throws HeuristicInconclusive when undecidable.
Classification classify(const ComplexBF& a, long m, long l = 1);

struct NonCauchyBound {
    long r = 0;
    /// |a_{r-}| |a_{r+}| |1 - e^{i phi}| |det(v_+|v_-)| / (|a_{r+}| |v_{2+}| + |a_{r-}| |v_{2-}|)^2
    BigFloat bound;
    bool coefficients_nonzero = false;
};

/// Lower bounds on |value((q+1)m + r) - value(qm + r)| when 1/4 + a^m < 0.
std::vector<NonCauchyBound> non_cauchy_bounds(const RootOfUnity& a, long m, long l = 1,
                                              mpfr_prec_t prec = kDefaultPrecision);

/// |value((q+1)m + r) - value(qm + r)| for q = 0 .. q_max from the exact
/// recursion; nullopt where either approximant is a pole.
std::vector<std::optional<BigFloat>> period_gaps(const RootOfUnity& a, long m, long l, long r, long q_max,
                                                 mpfr_prec_t prec = kDefaultPrecision);

struct EigenIndexResult {
    long t = 0;
    long s = 0;
    long r = 0;
    bool eigenvector = false;
    /// +1 for lambda_+, -1 for lambda_-, 0 when not an eigenvector
    int eigenvalue_sign = 0;
};

/// Exact test that (P_r, Q_r) is an eigenvector of A_m for the indices
/// r = s - t, t in {1, 2}, s the lift of iota(pi([-1]_m)) with s - t >= 0.
struct EigenIndexReport {
    long j = 0, k = 1, l = 1, m = 5;
    long residue = 0;
    std::vector<EigenIndexResult> indices;
    bool holds = false;
    /// The two consecutive indices carry different eigenvalues.
    bool distinct_eigenvalues = false;
};

EigenIndexReport eigen_index_check(long j, long k, long l, long m);

struct ClusterReport {
    std::vector<FieldValue> predicted;
    /// approximants at the last 3m indices <= n_max, indexed by N
    std::vector<std::pair<long, std::optional<ComplexBF>>> observed;
    /// observed values farther than tol (chordal metric) from every predicted point
    std::vector<long> unmatched;
    /// distinct observed clusters
    std::size_t clusters = 0;
    bool matched = false;
    /// every observed value is within tol of the value one period earlier
    bool settled = false;
};

/// Compares the tail of the approximant sequence with the predicted limit set.
ClusterReport limit_point_check(const RootOfUnity& a, long m, long l, long n_max,
                                mpfr_prec_t prec = kDefaultPrecision, double log2_tol = -60);

struct GridSummary {
    std::size_t cases = 0;
    std::size_t confirmations = 0;
    std::size_t inconclusive = 0;
    std::size_t counterexamples = 0;
};

struct MembershipGrid {
    std::vector<MembershipReport> reports;
    GridSummary summary;
};

/// True for (k = 1, 5 | m) and (k = 2, 3 | m).
bool membership_predicted(long k, long m);

/// field_membership over 1 <= k <= k_max, 1 <= m <= m_max.
MembershipGrid membership_grid(long k_max, long m_max, const MembershipOptions& opts = {}, unsigned workers = 1);

struct EigenIndexGrid {
    std::vector<EigenIndexReport> reports;
    GridSummary summary;
};

/// eigen_index_check over k <= k_max, m <= m_max with 5 | m, k | m and all valid j, l.
EigenIndexGrid eigen_index_grid(long k_max, long m_max, unsigned workers = 1);

struct ClusterGrid {
    std::vector<std::pair<std::pair<RootOfUnity, long>, ClusterReport>> reports;
    GridSummary summary;
};

/// limit_point_check for a = zeta_k^j, x = zeta_m over the cases with a predicted
/// limit set (5 | m and k | m, or a^m = -1 and 3 | m).
ClusterGrid limit_point_grid(long k_max, long m_max, long periods, unsigned workers = 1);

}  // namespace rrcf

#endif  // RRCF_CLASSIFIER_HPP
