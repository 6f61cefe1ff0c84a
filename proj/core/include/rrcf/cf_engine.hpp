#ifndef RRCF_CF_ENGINE_HPP
#define RRCF_CF_ENGINE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rrcf/bigfloat.hpp"
#include "rrcf/closed_forms.hpp"
#include "rrcf/cyclotomic.hpp"
#include "rrcf/ring.hpp"

namespace rrcf {

enum class CFKind {
    /// 1 + x/(1 + x^2/(1 + ...)): P_n = P_{n-1} + x^n P_{n-2}, P_0 = 1, P_{-1} = 0, Q_0 = Q_{-1} = 1.
    SchurK,
    /// 1/(1 + a/(1 + a x/(1 + ...))): same step with partial numerator a x^n, P_0 = 1, Q_0 = 1 + a.
    GeneralizedKa,
};

template <class R>
struct CFSpec {
    CFKind kind = CFKind::SchurK;
    std::optional<R> a;
    R x;
    /// x = exp(2 pi i num/order) when known; lets the numeric path resynchronise x^n exactly.
    std::optional<std::pair<long, long>> x_root;
};

CFSpec<CycloElem> schur_spec(const CycloElem& x);
CFSpec<CycloElem> ka_spec(const CycloElem& a, const CycloElem& x);
/// Numeric specs at a root of unity x = exp(2 pi i num/order).
CFSpec<ComplexBF> schur_spec_numeric(long num, long order, mpfr_prec_t prec);
CFSpec<ComplexBF> ka_spec_numeric(const ComplexBF& a, long num, long order, mpfr_prec_t prec);

/// Estimated log2 absolute errors of the four numeric state entries.
struct ErrorTrack {
    double p_curr = -std::numeric_limits<double>::infinity();
    double p_prev = -std::numeric_limits<double>::infinity();
    double q_curr = -std::numeric_limits<double>::infinity();
    double q_prev = -std::numeric_limits<double>::infinity();
};

/// Unreduced numerator and denominator at index n and n - 1. Over ComplexBF
/// the stored values equal the true ones times 2^{-scale_log2}.
template <class R>
struct ConvergentPair {
    CFKind kind = CFKind::SchurK;
    R p_curr, p_prev, q_curr, q_prev;
    std::int64_t index = 0;
    /// x^index, maintained alongside the recursion.
    R x_pow;
    long scale_log2 = 0;
    ErrorTrack err;
    long steps_since_sync = 0;
    /// Numeric path only: p_curr, p_prev, q_curr, q_prev, x_pow recomputed at
    /// a lower precision; their distance to the main values estimates the error.
    std::vector<R> shadow;
};

template <class R>
ConvergentPair<R> initial_state(const CFSpec<R>& spec);

/// Partial numerator c_n: x^n or a x^n.
template <class R>
R partial_numerator(const CFSpec<R>& spec, std::int64_t n);

template <class R>
ConvergentPair<R> advance(ConvergentPair<R> state, const CFSpec<R>& spec, std::int64_t steps);

/// Value of P_n Q_{n-1} - P_{n-1} Q_n predicted by the determinant identity.
template <class R>
R expected_determinant(const CFSpec<R>& spec, std::int64_t n);

/// Exact equality over CycloElem; relative 2^{-prec/2} over ComplexBF.
template <class R>
bool determinant_holds(const ConvergentPair<R>& state, const CFSpec<R>& spec);

/// Four consecutive indices n-3 .. n for the recombined two-step recursion.
template <class R>
struct RogersState {
    std::array<R, 4> p;
    std::array<R, 4> q;
    std::int64_t index = 0;
};

/// State at index 2, built from the direct recursion.
template <class R>
RogersState<R> rogers_seed(const CFSpec<R>& spec);

/// R_n = (1 + c_{n-1} + c_n) R_{n-2} - c_{n-1} c_{n-2} R_{n-4}.
template <class R>
RogersState<R> rogers_advance(RogersState<R> state, const CFSpec<R>& spec, std::int64_t steps);

/// Advances a GeneralizedKa state at index n >= 0 to n + m. A must be built
/// from the same a and x as the state.
ConvergentPair<CycloElem> matrix_advance(const ConvergentPair<CycloElem>& state, const TransferMatrix& A);

/// Value of the truncated fraction: Q_n/P_n for SchurK (the fraction
/// starting with 1 + x/...) and P_n/Q_n for GeneralizedKa.
template <class R>
ComplexBF truncated_value(const CFSpec<R>& spec, std::int64_t n, mpfr_prec_t prec = kDefaultPrecision);

/// Same as above, from an already advanced state; nullopt at a pole. On the
/// numeric path a denominator that cannot be told apart from zero, or an
/// approximant without significant bits, throws PrecisionError.
template <class R>
std::optional<ComplexBF> state_value(const ConvergentPair<R>& state, mpfr_prec_t prec);

struct TrajectoryPoint {
    std::int64_t n = 0;
    BigFloat q_product_abs;
    /// Upper bound on q_product_abs including the estimated rounding error.
    BigFloat q_product_upper;
    /// nullopt encodes the projective point at infinity.
    std::optional<ComplexBF> approximant;
};

/// Calls sink for n = 0, stride, 2 stride, ... <= n_max. On the numeric path
/// throws PrecisionError once Q_N or Q_{N-1} is swamped by rounding error.
template <class R>
void trajectory_stream(const CFSpec<R>& spec, std::int64_t n_max, std::int64_t stride, mpfr_prec_t prec,
                       const std::function<void(const TrajectoryPoint&)>& sink);

template <class R>
std::vector<TrajectoryPoint> trajectory(const CFSpec<R>& spec, std::int64_t n_max, std::int64_t stride,
                                        mpfr_prec_t prec = kDefaultPrecision);

void write_trajectory_csv_header(std::ostream& os);
void write_trajectory_csv_row(std::ostream& os, const TrajectoryPoint& pt, int digits = 40);

ComplexBF ring_pow(const ComplexBF& x, long e);
inline CycloElem ring_pow(const CycloElem& x, long e) { return x.pow(e); }

}  // namespace rrcf

#endif  // RRCF_CF_ENGINE_HPP
