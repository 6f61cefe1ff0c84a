#include "rrcf/cf_engine.hpp"

#include <cmath>
#include <ostream>

#include "rrcf/errors.hpp"

namespace rrcf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long kSyncInterval = 256;
constexpr double kRenormThreshold = 65536.0;
constexpr double kSwampMargin = 8.0;
constexpr mpfr_prec_t kShadowGap = 32;

double lse(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

long mul_mod(long a, long b, long n) {
    auto r = (static_cast<__int128>(mod_long(a, n)) * static_cast<__int128>(mod_long(b, n))) % n;
    return static_cast<long>(r);
}

// n (n + 1) / 2 modulo `order`
long triangular_mod(std::int64_t n, long order) {
    __int128 t = static_cast<__int128>(n) * (n + 1) / 2;
    return static_cast<long>(t % order);
}

ComplexBF numeric_x_power(const CFSpec<ComplexBF>& spec, std::int64_t n) {
    const mpfr_prec_t prec = spec.x.precision();
    if (spec.x_root) {
        auto [num, order] = *spec.x_root;
        return ComplexBF::unit_root(mul_mod(num, static_cast<long>(n % order), order), order, prec);
    }
    return ring_pow(spec.x, static_cast<long>(n));
}

template <class R>
R one_of(const CFSpec<R>& spec) {
    return RingTraits<R>::one_like(spec.x);
}

void step_exact(ConvergentPair<CycloElem>& s, const CFSpec<CycloElem>& spec) {
    s.x_pow = s.x_pow * spec.x;
    CycloElem c = spec.a ? *spec.a * s.x_pow : s.x_pow;
    CycloElem p = s.p_curr + c * s.p_prev;
    CycloElem q = s.q_curr + c * s.q_prev;
    s.p_prev = std::move(s.p_curr);
    s.q_prev = std::move(s.q_curr);
    s.p_curr = std::move(p);
    s.q_curr = std::move(q);
    ++s.index;
}

enum ShadowSlot { kPc, kPp, kQc, kQp, kXp };

mpfr_prec_t shadow_precision(mpfr_prec_t prec) { return std::max<mpfr_prec_t>(prec - kShadowGap, 24); }

void renormalize(ConvergentPair<ComplexBF>& s) {
    double m = std::max({s.p_curr.log2_abs(), s.p_prev.log2_abs(), s.q_curr.log2_abs(), s.q_prev.log2_abs()});
    if (m == kNegInf || std::fabs(m) < kRenormThreshold) return;
    auto k = static_cast<long>(std::floor(m));
    for (ComplexBF* v : {&s.p_curr, &s.p_prev, &s.q_curr, &s.q_prev}) *v = ldexp(*v, -k);
    for (int i = kPc; i <= kQp; ++i) s.shadow[static_cast<std::size_t>(i)] = ldexp(s.shadow[static_cast<std::size_t>(i)], -k);
    s.scale_log2 += k;
    const auto dk = static_cast<double>(k);
    s.err.p_curr -= dk;
    s.err.p_prev -= dk;
    s.err.q_curr -= dk;
    s.err.q_prev -= dk;
}

// log2 of the estimated error of v, extrapolated from the shadow discrepancy
double estimate_error(const ComplexBF& v, const ComplexBF& shadow) {
    ComplexBF d = v.with_precision(shadow.precision()) - shadow;
    double gap = static_cast<double>(v.precision() - shadow.precision());
    double floor_err = v.log2_abs() + 1.0 - static_cast<double>(v.precision());
    if (d.is_zero()) return v.is_zero() ? kNegInf : floor_err;
    return lse(d.log2_abs() - gap, floor_err);
}

// Cancellation may leave single entries with few correct bits; that is reported
// through the error estimates. Fails only when the whole state is swamped.
void check_state(const ConvergentPair<ComplexBF>& s) {
    const double mag = std::max({s.p_curr.log2_abs(), s.p_prev.log2_abs(), s.q_curr.log2_abs(), s.q_prev.log2_abs()});
    const double err = std::max({s.err.p_curr, s.err.p_prev, s.err.q_curr, s.err.q_prev});
    if (err > mag - kSwampMargin)
        throw PrecisionError(s.index, "the recursion state has lost its significant bits; raise the precision");
}

// v carries fewer than kSwampMargin bits above its error estimate
bool lost(const ComplexBF& v, double err) {
    if (err == kNegInf) return false;
    return v.is_zero() || v.log2_abs() < err + kSwampMargin;
}

void ensure_shadow(ConvergentPair<ComplexBF>& s) {
    if (!s.shadow.empty()) return;
    const mpfr_prec_t sp = shadow_precision(s.p_curr.precision());
    s.shadow = {s.p_curr.with_precision(sp), s.p_prev.with_precision(sp), s.q_curr.with_precision(sp),
                s.q_prev.with_precision(sp), s.x_pow.with_precision(sp)};
}

void step_numeric(ConvergentPair<ComplexBF>& s, const CFSpec<ComplexBF>& spec) {
    ensure_shadow(s);
    const std::int64_t n = s.index + 1;
    auto& sh = s.shadow;
    const mpfr_prec_t sp = sh[kXp].precision();
    if (spec.x_root && s.steps_since_sync + 1 >= kSyncInterval) {
        s.x_pow = numeric_x_power(spec, n);
        auto [num, order] = *spec.x_root;
        sh[kXp] = ComplexBF::unit_root(mul_mod(num, static_cast<long>(n % order), order), order, sp);
        s.steps_since_sync = 0;
    } else {
        s.x_pow = s.x_pow * spec.x;
        sh[kXp] = sh[kXp] * spec.x.with_precision(sp);
        ++s.steps_since_sync;
    }
    ComplexBF c = spec.a ? *spec.a * s.x_pow : s.x_pow;
    ComplexBF cs = spec.a ? spec.a->with_precision(sp) * sh[kXp] : sh[kXp];

    ComplexBF p = s.p_curr + c * s.p_prev;
    ComplexBF q = s.q_curr + c * s.q_prev;
    ComplexBF ps = sh[kPc] + cs * sh[kPp];
    ComplexBF qs = sh[kQc] + cs * sh[kQp];

    s.p_prev = std::move(s.p_curr);
    s.q_prev = std::move(s.q_curr);
    s.p_curr = std::move(p);
    s.q_curr = std::move(q);
    sh[kPp] = std::move(sh[kPc]);
    sh[kQp] = std::move(sh[kQc]);
    sh[kPc] = std::move(ps);
    sh[kQc] = std::move(qs);
    s.err.p_prev = s.err.p_curr;
    s.err.q_prev = s.err.q_curr;
    s.err.p_curr = estimate_error(s.p_curr, sh[kPc]);
    s.err.q_curr = estimate_error(s.q_curr, sh[kQc]);
    s.index = n;

    renormalize(s);
    check_state(s);
}

bool unit_modulus(const ComplexBF& z, mpfr_prec_t prec) {
    BigFloat dev = abs(z.norm() - BigFloat(1L, z.precision()));
    return dev.is_zero() || dev.log2_abs() < -static_cast<double>(prec) / 2.0;
}

}  // namespace

ComplexBF ring_pow(const ComplexBF& x, long e) {
    if (e < 0) return ComplexBF::one(x.precision()) / ring_pow(x, -e);
    ComplexBF result = ComplexBF::one(x.precision());
    ComplexBF base = x;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

CFSpec<CycloElem> schur_spec(const CycloElem& x) {
    CFSpec<CycloElem> s;
    s.kind = CFKind::SchurK;
    s.x = x;
    if (auto e = x.root_exponent()) s.x_root = std::make_pair(*e, x.level());
    return s;
}

CFSpec<CycloElem> ka_spec(const CycloElem& a, const CycloElem& x) {
    auto [al, xl] = common_level(a, x);
    CFSpec<CycloElem> s;
    s.kind = CFKind::GeneralizedKa;
    s.a = std::move(al);
    s.x = std::move(xl);
    if (auto e = s.x.root_exponent()) s.x_root = std::make_pair(*e, s.x.level());
    return s;
}

CFSpec<ComplexBF> schur_spec_numeric(long num, long order, mpfr_prec_t prec) {
    CFSpec<ComplexBF> s;
    s.kind = CFKind::SchurK;
    s.x = ComplexBF::unit_root(num, order, prec);
    s.x_root = std::make_pair(mod_long(num, order), order);
    return s;
}

CFSpec<ComplexBF> ka_spec_numeric(const ComplexBF& a, long num, long order, mpfr_prec_t prec) {
    CFSpec<ComplexBF> s = schur_spec_numeric(num, order, prec);
    s.kind = CFKind::GeneralizedKa;
    s.a = a.with_precision(prec);
    return s;
}

template <class R>
ConvergentPair<R> initial_state(const CFSpec<R>& spec) {
    if (spec.kind == CFKind::GeneralizedKa && !spec.a)
        throw Error(ErrorKind::DomainError, "generalized fraction needs a value for a");
    const R one = one_of(spec);
    ConvergentPair<R> s;
    s.kind = spec.kind;
    s.index = 0;
    s.x_pow = one;
    s.p_curr = one;
    s.q_prev = one;
    if (spec.kind == CFKind::SchurK) {
        s.p_prev = RingTraits<R>::zero_like(spec.x);
        s.q_curr = one;
    } else {
        s.p_prev = one;
        s.q_curr = one + *spec.a;
        if constexpr (!RingTraits<R>::exact) {
            s.err.q_curr = s.q_curr.log2_abs() + 1.0 - static_cast<double>(spec.x.precision());
        }
    }
    return s;
}

template <class R>
R partial_numerator(const CFSpec<R>& spec, std::int64_t n) {
    R xp;
    if constexpr (RingTraits<R>::exact) {
        xp = spec.x.pow(static_cast<long>(n));
    } else {
        xp = numeric_x_power(spec, n);
    }
    if (spec.kind == CFKind::GeneralizedKa) return *spec.a * xp;
    return xp;
}

template <class R>
ConvergentPair<R> advance(ConvergentPair<R> state, const CFSpec<R>& spec, std::int64_t steps) {
    if (steps < 0) throw Error(ErrorKind::OutOfRange, "advance needs a non-negative step count");
    if (state.kind != spec.kind) throw Error(ErrorKind::DomainError, "state and spec use different fractions");
    for (std::int64_t i = 0; i < steps; ++i) {
        if constexpr (RingTraits<R>::exact) {
            step_exact(state, spec);
        } else {
            step_numeric(state, spec);
        }
    }
    return state;
}

template <class R>
R expected_determinant(const CFSpec<R>& spec, std::int64_t n) {
    R xt;
    if constexpr (RingTraits<R>::exact) {
        if (auto e = spec.x.root_exponent())
            xt = CycloElem::root(spec.x.level(), mul_mod(*e, triangular_mod(n, spec.x.level()), spec.x.level()));
        else
            xt = spec.x.pow(static_cast<long>(static_cast<__int128>(n) * (n + 1) / 2));
    } else {
        if (spec.x_root) {
            auto [num, order] = *spec.x_root;
            xt = ComplexBF::unit_root(mul_mod(num, triangular_mod(n, order), order), order, spec.x.precision());
        } else {
            xt = ring_pow(spec.x, static_cast<long>(static_cast<__int128>(n) * (n + 1) / 2));
        }
    }
    if (spec.kind == CFKind::SchurK) return (n % 2 == 0) ? xt : -xt;
    R an = ring_pow(*spec.a, static_cast<long>(n + 1)) * xt;
    return (n % 2 == 1) ? an : -an;
}

template <class R>
bool determinant_holds(const ConvergentPair<R>& s, const CFSpec<R>& spec) {
    R d = s.p_curr * s.q_prev - s.p_prev * s.q_curr;
    R e = expected_determinant(spec, s.index);
    if constexpr (RingTraits<R>::exact) {
        return d == e;
    } else {
        e = ldexp(e, -2 * s.scale_log2);
        const double tol = -static_cast<double>(s.p_curr.precision()) / 2.0;
        const double scale = std::max({e.log2_abs(), (s.p_curr * s.q_prev).log2_abs(), (s.p_prev * s.q_curr).log2_abs()});
        ComplexBF diff = d - e;
        return diff.is_zero() || diff.log2_abs() <= scale + tol;
    }
}

template <class R>
RogersState<R> rogers_seed(const CFSpec<R>& spec) {
    ConvergentPair<R> s = initial_state(spec);
    RogersState<R> r;
    r.p[0] = s.p_prev;
    r.q[0] = s.q_prev;
    r.p[1] = s.p_curr;
    r.q[1] = s.q_curr;
    s = advance(std::move(s), spec, 2);
    r.p[2] = s.p_prev;
    r.q[2] = s.q_prev;
    r.p[3] = s.p_curr;
    r.q[3] = s.q_curr;
    r.index = 2;
    return r;
}

template <class R>
RogersState<R> rogers_advance(RogersState<R> state, const CFSpec<R>& spec, std::int64_t steps) {
    if (steps < 0) throw Error(ErrorKind::OutOfRange, "rogers_advance needs a non-negative step count");
    const R one = one_of(spec);
    for (std::int64_t i = 0; i < steps; ++i) {
        const std::int64_t n = state.index + 1;
        R c0 = partial_numerator(spec, n);
        R c1 = partial_numerator(spec, n - 1);
        R c2 = partial_numerator(spec, n - 2);
        R lead = one + c1 + c0;
        R tail = c1 * c2;
        R p = lead * state.p[2] - tail * state.p[0];
        R q = lead * state.q[2] - tail * state.q[0];
        for (int j = 0; j < 3; ++j) {
            state.p[j] = std::move(state.p[j + 1]);
            state.q[j] = std::move(state.q[j + 1]);
        }
        state.p[3] = std::move(p);
        state.q[3] = std::move(q);
        state.index = n;
    }
    return state;
}

ConvergentPair<CycloElem> matrix_advance(const ConvergentPair<CycloElem>& s, const TransferMatrix& A) {
    if (s.kind != CFKind::GeneralizedKa)
        throw Error(ErrorKind::DomainError, "the transfer matrix acts on generalized-fraction states");
    if (s.index < 0) throw Error(ErrorKind::OutOfRange, "matrix_advance needs index >= 0");
    const long level = A.x.level();
    for (const CycloElem* v : {&s.p_curr, &s.p_prev, &s.q_curr, &s.q_prev})
        if (level % v->level() != 0)
            throw Error(ErrorKind::BadLevel, "state level " + std::to_string(v->level()) +
                                                 " does not embed in transfer-matrix level " + std::to_string(level));
    ConvergentPair<CycloElem> r = s;
    auto [pc, qc] = A.apply(s.p_curr.lift(level), s.q_curr.lift(level));
    auto [pp, qp] = A.apply(s.p_prev.lift(level), s.q_prev.lift(level));
    r.p_curr = std::move(pc);
    r.q_curr = std::move(qc);
    r.p_prev = std::move(pp);
    r.q_prev = std::move(qp);
    r.x_pow = s.x_pow.lift(level);
    r.index = s.index + A.m;
    return r;
}

template <class R>
std::optional<ComplexBF> state_value(const ConvergentPair<R>& s, mpfr_prec_t prec) {
    const R& num = s.kind == CFKind::SchurK ? s.q_curr : s.p_curr;
    const R& den = s.kind == CFKind::SchurK ? s.p_curr : s.q_curr;
    if constexpr (RingTraits<R>::exact) {
        if (RingTraits<R>::is_zero(den)) return std::nullopt;
    } else {
        const double e_num = s.kind == CFKind::SchurK ? s.err.q_curr : s.err.p_curr;
        const double e_den = s.kind == CFKind::SchurK ? s.err.p_curr : s.err.q_curr;
        if (den.is_zero() && e_den == kNegInf) return std::nullopt;
        if (lost(den, e_den))
            throw PrecisionError(s.index, "the denominator is not separated from zero; raise the precision");
        // |d(n/d)| <= e_n / |d| + |n| e_d / |d|^2
        const double l_den = den.log2_abs();
        const double l_val = num.is_zero() ? kNegInf : num.log2_abs() - l_den;
        const double e_val = lse(e_num - l_den, l_val + e_den - l_den);
        if (e_val > std::max(l_val, 0.0) - kSwampMargin)
            throw PrecisionError(s.index, "the approximant has lost its significant bits; raise the precision");
    }
    const mpfr_prec_t work = prec + 8;
    return (RingTraits<R>::to_complex(num, work) / RingTraits<R>::to_complex(den, work)).with_precision(prec);
}

template <class R>
ComplexBF truncated_value(const CFSpec<R>& spec, std::int64_t n, mpfr_prec_t prec) {
    if (n < 0) throw Error(ErrorKind::OutOfRange, "truncation index must be non-negative");
    ConvergentPair<R> s = advance(initial_state(spec), spec, n);
    auto v = state_value(s, prec);
    if (!v) throw PoleError(n);
    return *v;
}

template <class R>
void trajectory_stream(const CFSpec<R>& spec, std::int64_t n_max, std::int64_t stride, mpfr_prec_t prec,
                       const std::function<void(const TrajectoryPoint&)>& sink) {
    if (n_max < 0) throw Error(ErrorKind::OutOfRange, "n_max must be non-negative");
    if (stride < 1) throw Error(ErrorKind::OutOfRange, "stride must be positive");
    mpfr_prec_t check_prec = prec;
    if constexpr (!RingTraits<R>::exact) check_prec = std::min(prec, spec.x.precision());
    if (!unit_modulus(RingTraits<R>::to_complex(spec.x, check_prec), check_prec))
        throw Error(ErrorKind::DomainError, "x must lie on the unit circle");
    if (spec.a && !unit_modulus(RingTraits<R>::to_complex(*spec.a, check_prec), check_prec))
        throw Error(ErrorKind::DomainError, "a must have modulus 1");

    ConvergentPair<R> s = initial_state(spec);
    const mpfr_prec_t work = prec + 16;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        if (n > 0) s = advance(std::move(s), spec, 1);
        if (n % stride != 0) continue;
        TrajectoryPoint pt;
        pt.n = n;
        BigFloat qa = RingTraits<R>::to_complex(s.q_curr, work).abs();
        BigFloat qb = RingTraits<R>::to_complex(s.q_prev, work).abs();
        if constexpr (RingTraits<R>::exact) {
            pt.q_product_abs = (qa * qb).with_precision(prec);
            pt.q_product_upper = (qa * qb * (BigFloat(1L, work) + BigFloat::exp2(-(prec + 8), work))).with_precision(prec);
        } else {
            if (lost(s.q_curr, s.err.q_curr) || lost(s.q_prev, s.err.q_prev))
                throw PrecisionError(n, "|Q_N Q_{N-1}| has lost its significant bits; raise the precision");
            const long sc = 2 * s.scale_log2;
            pt.q_product_abs = ldexp(qa * qb, sc).with_precision(prec);
            auto bound = [&](const BigFloat& v, double e) {
                return e == kNegInf ? v : v + BigFloat::exp2(static_cast<long>(std::ceil(e)), work);
            };
            pt.q_product_upper = ldexp(bound(qa, s.err.q_curr) * bound(qb, s.err.q_prev) *
                                           (BigFloat(1L, work) + BigFloat::exp2(3 - s.q_curr.precision(), work)),
                                       sc)
                                     .with_precision(prec);
        }
        pt.approximant = state_value(s, prec);
        sink(pt);
    }
}

template <class R>
std::vector<TrajectoryPoint> trajectory(const CFSpec<R>& spec, std::int64_t n_max, std::int64_t stride,
                                        mpfr_prec_t prec) {
    std::vector<TrajectoryPoint> out;
    trajectory_stream<R>(spec, n_max, stride, prec, [&](const TrajectoryPoint& p) { out.push_back(p); });
    return out;
}

void write_trajectory_csv_header(std::ostream& os) { os << "n,q_product_abs,approx_re,approx_im\n"; }

void write_trajectory_csv_row(std::ostream& os, const TrajectoryPoint& pt, int digits) {
    os << pt.n << ',' << pt.q_product_abs.to_string(digits) << ',';
    if (pt.approximant)
        os << pt.approximant->real().to_string(digits) << ',' << pt.approximant->imag().to_string(digits);
    else
        os << "inf,inf";
    os << '\n';
}

#define RRCF_INSTANTIATE(R)                                                                                      \
    template ConvergentPair<R> initial_state<R>(const CFSpec<R>&);                                               \
    template R partial_numerator<R>(const CFSpec<R>&, std::int64_t);                                             \
    template ConvergentPair<R> advance<R>(ConvergentPair<R>, const CFSpec<R>&, std::int64_t);                   \
    template R expected_determinant<R>(const CFSpec<R>&, std::int64_t);                                          \
    template bool determinant_holds<R>(const ConvergentPair<R>&, const CFSpec<R>&);                              \
    template RogersState<R> rogers_seed<R>(const CFSpec<R>&);                                                    \
    template RogersState<R> rogers_advance<R>(RogersState<R>, const CFSpec<R>&, std::int64_t);                  \
    template std::optional<ComplexBF> state_value<R>(const ConvergentPair<R>&, mpfr_prec_t);                     \
    template ComplexBF truncated_value<R>(const CFSpec<R>&, std::int64_t, mpfr_prec_t);                          \
    template void trajectory_stream<R>(const CFSpec<R>&, std::int64_t, std::int64_t, mpfr_prec_t,                \
                                       const std::function<void(const TrajectoryPoint&)>&);                      \
    template std::vector<TrajectoryPoint> trajectory<R>(const CFSpec<R>&, std::int64_t, std::int64_t, mpfr_prec_t);

RRCF_INSTANTIATE(CycloElem)
RRCF_INSTANTIATE(ComplexBF)

#undef RRCF_INSTANTIATE

}  // namespace rrcf
