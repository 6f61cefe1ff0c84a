#include "rrcf/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rrcf/cf_engine.hpp"
#include "rrcf/errors.hpp"
#include "rrcf/integer_relation.hpp"
#include "rrcf/witness.hpp"

namespace rrcf {

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

long mul_mod(long a, long b, long n) {
    return static_cast<long>((static_cast<__int128>(a) * b) % n);
}

long pow_mod(long b, long e, long n) {
    long r = 1 % n;
    b = mod_long(b, n);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, b, n);
        b = mul_mod(b, b, n);
        e >>= 1;
    }
    return r;
}

/// Inverse of a modulo n; gcd(a, n) must be 1.
long inv_mod(long a, long n) {
    if (n == 1) return 0;
    long t = 0, new_t = 1, r = n, new_r = mod_long(a, n);
    while (new_r != 0) {
        const long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw Error(ErrorKind::DomainError, "not invertible modulo " + std::to_string(n));
    return mod_long(t, n);
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

void check_primitive(long m, long l) {
    if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be positive");
    if (gcd_long(mod_long(l, m), m) != 1)
        throw Error(ErrorKind::BadLevel, "zeta_m^l is not primitive for m = " + std::to_string(m) +
                                             ", l = " + std::to_string(l));
}

CycloElem x_at(long level, long m, long l) { return CycloElem::root(level, (level / m) * mod_long(l, m)); }

CycloElem lift_to(const CycloElem& e, long level) { return e.level() == level ? e : e.lift(level); }

/// Complex conjugation is zeta -> zeta^{-1}.
bool is_real(const CycloElem& e) { return e.level() <= 2 || e.galois(e.level() - 1) == e; }

/// sqrt(d) on the principal branch when it is rational, sqrt 5 / 2 or sqrt(-3) / 2 up to a rational square.
std::optional<CycloElem> exact_sqrt(const CycloElem& d) {
    const long L = d.level();
    if (d.is_zero()) return CycloElem::zero(L);
    if (!d.is_rational()) return std::nullopt;
    const mpq_class q = d.rational_value();
    auto rational_root = [](const mpq_class& v) -> std::optional<mpq_class> {
        if (mpz_perfect_square_p(v.get_num_mpz_t()) == 0 || mpz_perfect_square_p(v.get_den_mpz_t()) == 0)
            return std::nullopt;
        mpz_class n, dd;
        mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
        mpz_sqrt(dd.get_mpz_t(), v.get_den_mpz_t());
        return mpq_class(n, dd);
    };
    if (q > 0) {
        if (auto r = rational_root(q)) return CycloElem::rational(L, *r);
        if (auto r = rational_root(q / 5)) {
            const long L5 = lcm_long(L, 5);
            return CycloElem::rational(L5, *r) * sqrt5_gauss(L5);
        }
        return std::nullopt;
    }
    if (auto r = rational_root(-q / 3)) {
        const long L3 = lcm_long(L, 3);
        return CycloElem::rational(L3, *r) * sqrt_minus3(L3);
    }
    return std::nullopt;
}

/// Throws DomainError when d is a negative real (checked exactly when possible).
void reject_negative_real(const CycloElem& d, mpfr_prec_t prec) {
    if (!is_real(d)) return;
    if (d.is_rational() ? d.rational_value() < 0 : d.embed(prec).real().sign() < 0)
        throw Error(ErrorKind::DomainError, "1/4 + a^m is a negative real; the approximants do not converge");
}

ComplexBF embed_at(const CycloElem& e, mpfr_prec_t prec) { return e.embed(prec); }

FieldValue ratio_value(const CycloElem& num, const CycloElem& den, mpfr_prec_t prec) {
    if (den.is_zero()) return FieldValue::infinity();
    return FieldValue::from_exact(num / den, prec);
}

FieldValue ratio_value(const ComplexBF& num, const ComplexBF& den, mpfr_prec_t prec) {
    if (den.is_zero()) return FieldValue::infinity();
    return FieldValue::from_numeric((num / den).with_precision(prec));
}

/// Order of a^m for a = zeta_k^j.
long power_order(const RootOfUnity& a, long m) { return a.order / gcd_long(a.order, m); }

BigFloat tolerance(mpfr_prec_t prec, double log2_tol) {
    return BigFloat::exp2(static_cast<long>(std::floor(log2_tol)), prec);
}

/// Chordal distance on the Riemann sphere; nullopt is the point at infinity.
BigFloat chordal(const std::optional<ComplexBF>& x, const std::optional<ComplexBF>& y, mpfr_prec_t prec) {
    const BigFloat one(1L, prec);
    if (!x && !y) return BigFloat(prec);
    if (!x || !y) return one / sqrt(one + (x ? *x : *y).norm());
    return (*x - *y).abs() / sqrt((one + x->norm()) * (one + y->norm()));
}

template <class R>
std::array<R, 2> eigenvector(const R& lambda, const std::array<std::array<R, 2>, 2>& e, bool& alternate,
                             bool (*zero)(const R&)) {
    std::array<R, 2> v{e[0][1], lambda - e[0][0]};
    if (zero(v[0]) && zero(v[1])) {
        alternate = true;
        v = {lambda - e[1][1], e[1][0]};
    }
    return v;
}

bool exact_zero(const CycloElem& x) { return x.is_zero(); }
bool numeric_zero(const ComplexBF& x) { return x.is_zero(); }

}  // namespace

RootOfUnity::RootOfUnity(long n, long k) {
    if (k < 1) throw Error(ErrorKind::DomainError, "root of unity order must be positive");
    num = mod_long(n, k);
    order = k;
    if (gcd_long(num, order) != 1)
        throw Error(ErrorKind::DomainError, "exp(2 pi i " + std::to_string(n) + "/" + std::to_string(k) +
                                                ") is not primitive of order " + std::to_string(k));
}

RootOfUnity RootOfUnity::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const long v = std::stol(text, &used);
            if (used != text.size() || (v != 1 && v != -1)) throw std::invalid_argument(text);
            return v == 1 ? RootOfUnity(0, 1) : RootOfUnity(1, 2);
        }
        std::size_t u1 = 0, u2 = 0;
        const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        const long j = std::stol(a, &u1);
        const long k = std::stol(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(text);
        if (k < 1) throw Error(ErrorKind::DomainError, "order must be positive in '" + text + "'");
        if (gcd_long(mod_long(j, k), k) != 1)
            throw Error(ErrorKind::DomainError, "'" + text + "' is not in lowest terms");
        return RootOfUnity(j, k);
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::DomainError, "cannot parse root of unity '" + text + "' (expected j/k)");
    }
}

CycloElem RootOfUnity::exact(long level) const {
    if (level % order != 0) throw Error(ErrorKind::BadLevel, "order does not divide the level");
    return CycloElem::root(level, num * (level / order));
}

ComplexBF RootOfUnity::numeric(mpfr_prec_t prec) const { return ComplexBF::unit_root(num, order, prec); }

std::string RootOfUnity::to_string() const { return std::to_string(num) + "/" + std::to_string(order); }

FieldValue FieldValue::from_exact(const CycloElem& e, mpfr_prec_t prec) {
    FieldValue v;
    v.exact = e;
    v.value = e.embed(prec);
    return v;
}

FieldValue FieldValue::from_numeric(const ComplexBF& z) {
    FieldValue v;
    v.value = z;
    return v;
}

FieldValue FieldValue::infinity() { return FieldValue{}; }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ConvergentWithLimit: return "ConvergentWithLimit";
        case Verdict::DivergentNegativeReal: return "DivergentNegativeReal";
        case Verdict::DivergentTwoLimitPoints: return "DivergentTwoLimitPoints";
        case Verdict::DivergentThreeLimitPointsPossible: return "DivergentThreeLimitPointsPossible";
        case Verdict::ConditionNotSatisfied: return "ConditionNotSatisfied";
    }
    return "?";
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::EigenLimit: return "EigenLimit";
        case Provenance::NonCauchy: return "NonCauchy";
        case Provenance::Schur: return "Schur";
        case Provenance::Conjectural: return "Conjectural";
        case Provenance::Heuristic: return "Heuristic";
    }
    return "?";
}

std::string to_string(MembershipMethod m) {
    switch (m) {
        case MembershipMethod::ExactGaussSum: return "exact_gauss_sum";
        case MembershipMethod::RootOfUnityContainment: return "root_of_unity_containment";
        case MembershipMethod::IntegerRelation: return "integer_relation";
    }
    return "?";
}

std::optional<CycloElem> exact_discriminant_root(const CycloElem& am) {
    return exact_sqrt(CycloElem::rational(am.level(), mpq_class(1, 4)) + am);
}

FieldValue limit_formula(const CycloElem& a0, long m, long l, mpfr_prec_t prec) {
    check_primitive(m, l);
    const long L = lcm_long(a0.level(), m);
    const CycloElem a = lift_to(a0, L);
    const CycloElem x = x_at(L, m, l);
    const CycloElem disc = CycloElem::rational(L, mpq_class(1, 4)) + a.pow(m);
    const mpfr_prec_t work = prec + 64;
    if (disc.is_zero()) throw Error(ErrorKind::DegenerateEigenvalues, "1/4 + a^m = 0");
    reject_negative_real(disc, work);
    const PQSequence s = pq_sequence(a, x, m - 2);
    const CycloElem ax = a * x.pow(m - 1);
    if (auto root = exact_sqrt(disc)) {
        const long Lr = lcm_long(L, root->level());
        const CycloElem den = CycloElem::rational(Lr, mpq_class(1, 2)) + lift_to(*root, Lr) -
                              lift_to(ax * s.P(m - 3), Lr);
        return ratio_value(lift_to(s.P(m - 2), Lr), den, prec);
    }
    const ComplexBF root = sqrt(embed_at(disc, work));
    const ComplexBF half(BigFloat(mpq_class(1, 2), work), BigFloat(work));
    return ratio_value(embed_at(s.P(m - 2), work), half + root - embed_at(ax * s.P(m - 3), work), prec);
}

FieldValue limit_formula(const RootOfUnity& a, long m, long l, mpfr_prec_t prec) {
    return limit_formula(a.exact(a.order), m, l, prec);
}

FieldValue limit_formula(const ComplexBF& a, long m, long l) {
    check_primitive(m, l);
    const mpfr_prec_t prec = a.precision();
    const mpfr_prec_t work = prec + 32;
    const ComplexBF aw = a.with_precision(work);
    ComplexBF p2(work), p1 = ComplexBF::one(work);  // P_{n-2}, P_{n-1}
    for (long n = 0; n <= m - 2; ++n) {
        ComplexBF next = p1 + aw * ComplexBF::unit_root(mul_mod(mod_long(l, m), n % m, m), m, work) * p2;
        p2 = std::move(p1);
        p1 = std::move(next);
    }
    ComplexBF am = ComplexBF::one(work);
    for (long i = 0; i < m; ++i) am *= aw;
    const ComplexBF disc = am + ComplexBF(BigFloat(mpq_class(1, 4), work), BigFloat(work));
    const BigFloat eps = BigFloat::exp2(-static_cast<long>(prec) / 2, work);
    if (disc.abs() <= eps) throw Error(ErrorKind::DegenerateEigenvalues, "1/4 + a^m vanishes numerically");
    if (abs(disc.imag()) <= eps && disc.real().sign() < 0)
        throw Error(ErrorKind::DomainError, "1/4 + a^m is numerically a negative real");
    const ComplexBF ax = aw * ComplexBF::unit_root(mul_mod(mod_long(l, m), m - 1, m), m, work);
    const ComplexBF half(BigFloat(mpq_class(1, 2), work), BigFloat(work));
    return ratio_value(p1, half + sqrt(disc) - ax * p2, prec);
}

EigenData eigen_data(const CycloElem& a, long m, long l, mpfr_prec_t prec) {
    check_primitive(m, l);
    const TransferMatrix A = transfer_matrix(a, m, l);
    const long L = A.a.level();
    const CycloElem half = CycloElem::rational(L, mpq_class(1, 2));
    const CycloElem disc = half * half + A.a.pow(m);
    if (disc.is_zero()) throw Error(ErrorKind::DegenerateEigenvalues, "1/4 + a^m = 0: repeated eigenvalue 1/2");
    const PQSequence s = pq_sequence(A.a, A.x, m - 1);
    const mpfr_prec_t work = prec + 64;

    EigenData out;
    out.m = m;
    if (auto root = exact_sqrt(disc)) {
        const long Lr = lcm_long(L, root->level());
        std::array<std::array<CycloElem, 2>, 2> e;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e[i][j] = lift_to(A.e[i][j], Lr);
        EigenSystem<CycloElem> sys;
        const CycloElem h = CycloElem::rational(Lr, mpq_class(1, 2));
        const CycloElem r = lift_to(*root, Lr);
        sys.lambda_plus = h + r;
        sys.lambda_minus = h - r;
        sys.v_plus = eigenvector<CycloElem>(sys.lambda_plus, e, out.alternate_eigenvector, exact_zero);
        sys.v_minus = eigenvector<CycloElem>(sys.lambda_minus, e, out.alternate_eigenvector, exact_zero);
        auto is_eigen = [&](const std::array<CycloElem, 2>& v, const CycloElem& lam) {
            return e[0][0] * v[0] + e[0][1] * v[1] == lam * v[0] && e[1][0] * v[0] + e[1][1] * v[1] == lam * v[1];
        };
        out.verified = is_eigen(sys.v_plus, sys.lambda_plus) && is_eigen(sys.v_minus, sys.lambda_minus);
        const CycloElem det = sys.v_plus[0] * sys.v_minus[1] - sys.v_minus[0] * sys.v_plus[1];
        if (det.is_zero()) throw Error(ErrorKind::DegenerateEigenvalues, "eigenvectors are parallel");
        const CycloElem det_inv = det.inv();
        for (long r0 = 0; r0 < m; ++r0) {
            const CycloElem P = lift_to(s.P(r0), Lr), Q = lift_to(s.Q(r0), Lr);
            sys.coeffs.push_back({(P * sys.v_minus[1] - Q * sys.v_minus[0]) * det_inv,
                                  (sys.v_plus[0] * Q - sys.v_plus[1] * P) * det_inv});
        }
        auto emb = [&](const CycloElem& x) { return x.embed(work); };
        out.numeric.lambda_plus = emb(sys.lambda_plus);
        out.numeric.lambda_minus = emb(sys.lambda_minus);
        out.numeric.v_plus = {emb(sys.v_plus[0]), emb(sys.v_plus[1])};
        out.numeric.v_minus = {emb(sys.v_minus[0]), emb(sys.v_minus[1])};
        for (const auto& c : sys.coeffs) out.numeric.coeffs.push_back({emb(c[0]), emb(c[1])});
        out.exact = std::move(sys);
        return out;
    }

    std::array<std::array<ComplexBF, 2>, 2> e;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) e[i][j] = A.e[i][j].embed(work);
    const ComplexBF root = sqrt(disc.embed(work));
    const ComplexBF h(BigFloat(mpq_class(1, 2), work), BigFloat(work));
    auto& sys = out.numeric;
    sys.lambda_plus = h + root;
    sys.lambda_minus = h - root;
    sys.v_plus = eigenvector<ComplexBF>(sys.lambda_plus, e, out.alternate_eigenvector, numeric_zero);
    sys.v_minus = eigenvector<ComplexBF>(sys.lambda_minus, e, out.alternate_eigenvector, numeric_zero);
    const BigFloat tol = BigFloat::exp2(-static_cast<long>(prec) / 2, work);
    auto residual_ok = [&](const std::array<ComplexBF, 2>& v, const ComplexBF& lam) {
        const BigFloat scale = BigFloat(1L, work) + (e[0][0].abs() + e[0][1].abs() + e[1][0].abs() +
                                                     e[1][1].abs() + lam.abs()) * (v[0].abs() + v[1].abs());
        const BigFloat r0 = (e[0][0] * v[0] + e[0][1] * v[1] - lam * v[0]).abs();
        const BigFloat r1 = (e[1][0] * v[0] + e[1][1] * v[1] - lam * v[1]).abs();
        return r0 <= tol * scale && r1 <= tol * scale;
    };
    out.verified = residual_ok(sys.v_plus, sys.lambda_plus) && residual_ok(sys.v_minus, sys.lambda_minus);
    const ComplexBF det = sys.v_plus[0] * sys.v_minus[1] - sys.v_minus[0] * sys.v_plus[1];
    if (det.abs() <= tol) throw Error(ErrorKind::DegenerateEigenvalues, "eigenvectors are numerically parallel");
    for (long r0 = 0; r0 < m; ++r0) {
        const ComplexBF P = s.P(r0).embed(work), Q = s.Q(r0).embed(work);
        sys.coeffs.push_back({(P * sys.v_minus[1] - Q * sys.v_minus[0]) / det,
                              (sys.v_plus[0] * Q - sys.v_plus[1] * P) / det});
    }
    return out;
}

EigenData eigen_data(const RootOfUnity& a, long m, long l, mpfr_prec_t prec) {
    return eigen_data(a.exact(a.order), m, l, prec);
}

LimitPointSet limit_points(const RootOfUnity& a, long m, long l, mpfr_prec_t prec) {
    check_primitive(m, l);
    const long ord = power_order(a, m);
    const bool two_point = ord == 1 && m % 5 == 0;
    const bool negative = ord == 2 && m % 3 == 0;
    if (!two_point && !negative)
        throw Error(ErrorKind::DomainError,
                    "limit points are predicted only for a^m = 1 with 5 | m or a^m = -1 with 3 | m");
    if (m < 3) throw Error(ErrorKind::OutOfRange, "limit points need m >= 3");
    const EigenData ed = eigen_data(a, m, l, prec);
    const auto& sys = *ed.exact;
    LimitPointSet out;
    out.principal.push_back(ratio_value(sys.v_plus[0], sys.v_plus[1], prec));
    out.principal.push_back(ratio_value(sys.v_minus[0], sys.v_minus[1], prec));
    if (negative) {
        const CycloElem omega = sys.lambda_minus / sys.lambda_plus;
        for (const auto& c : sys.coeffs) {
            std::array<FieldValue, 3> pts;
            CycloElem w = CycloElem::one(omega.level());
            for (int si = 0; si < 3; ++si) {
                pts[si] = ratio_value(c[0] * sys.v_plus[0] + c[1] * sys.v_minus[0] * w,
                                      c[0] * sys.v_plus[1] + c[1] * sys.v_minus[1] * w, prec);
                w *= omega;
            }
            out.twisted.push_back(std::move(pts));
        }
    }
    return out;
}

int legendre5(long m) {
    switch (mod_long(m, 5)) {
        case 1:
        case 4: return 1;
        case 2:
        case 3: return -1;
        default: return 0;
    }
}

SchurLimit schur_limit(long m, long l, mpfr_prec_t prec) {
    check_primitive(m, l);
    if (m % 5 == 0) throw Error(ErrorKind::FiveDivides, "5 divides m = " + std::to_string(m));
    SchurLimit out;
    out.m = m;
    out.legendre = legendre5(m);
    out.sigma = mod_long(m, 5);
    out.exponent = (1 - out.legendre * out.sigma * m) / 5;
    const long L = lcm_long(m, 5);
    const CycloElem phi = (CycloElem::one(L) + sqrt5_gauss(L)) * CycloElem::rational(L, mpq_class(1, 2));
    const CycloElem k_lambda = out.legendre == 1 ? phi : phi - CycloElem::one(L);
    const CycloElem x = x_at(L, m, l);
    out.exact = CycloElem::integer(L, out.legendre) * x.pow(mod_long(out.exponent, m)) * k_lambda;
    out.value = out.exact.embed(prec);
    return out;
}

FieldValue schur_via_limit_formula(long m, long l, mpfr_prec_t prec) {
    const FieldValue k1 = limit_formula(CycloElem::one(1), m, l, prec);
    if (k1.is_infinite()) return FieldValue::from_exact(CycloElem::integer(1, -1), prec);
    if (k1.exact) {
        const CycloElem one = CycloElem::one(k1.exact->level());
        return ratio_value(*k1.exact, one - *k1.exact, prec);
    }
    return ratio_value(*k1.value, ComplexBF::one(prec) - *k1.value, prec);
}

namespace {

/// s with s^2 = 1 + 4 zeta_ord^e, from a witness for e = 1 at level W.
CycloElem conjugate_witness(const CycloElem& s, long ord, long e) {
    const long W = s.level();
    long u = e;
    while (gcd_long(mod_long(u, W), W) != 1) u += ord;
    return s.galois(u);
}

}  // namespace

Classification classify(const RootOfUnity& a, long m, long l, mpfr_prec_t prec, const MembershipOptions& opts) {
    check_primitive(m, l);
    Classification c;
    c.a = a.to_string();
    c.m = m;
    c.l = mod_long(l, m);
    const long L0 = lcm_long(a.order, m);
    const long ord = power_order(a, m);

    if (ord == 2) {
        c.verdict = Verdict::DivergentNegativeReal;
        c.provenance = Provenance::NonCauchy;
        c.algebraic_condition_held = L0 % 3 != 0;
        c.note = "1/4 + a^m = -3/4: |lambda_+| = |lambda_-|";
        if (m % 3 == 0) {
            LimitPointSet pts = limit_points(a, m, l, prec);
            c.limit_points = std::move(pts.principal);
            for (auto& row : pts.twisted)
                for (auto& p : row) c.limit_points.push_back(std::move(p));
        }
        return c;
    }
    if (ord == 1) {
        if (m % 5 != 0) {
            c.verdict = Verdict::ConvergentWithLimit;
            c.provenance = Provenance::EigenLimit;
            c.algebraic_condition_held = true;
            c.limit = limit_formula(a, m, l, prec);
            return c;
        }
        c.algebraic_condition_held = false;
        c.verdict = Verdict::DivergentTwoLimitPoints;
        c.provenance = a.order == 1 ? Provenance::Schur : Provenance::Conjectural;
        c.limit_points = limit_points(a, m, l, prec).principal;
        c.note = "sqrt 5 lies in Q(zeta_m)";
        return c;
    }

    const long e = mul_mod(a.num, mod_long(m, a.order), a.order) / (a.order / ord);
    const MembershipReport rep = field_membership(ord, L0, opts);
    if (rep.in_field) {
        c.verdict = Verdict::ConditionNotSatisfied;
        c.provenance = Provenance::EigenLimit;
        c.algebraic_condition_held = false;
        const CycloElem s = conjugate_witness(*rep.witness, ord, e);
        c.note = "sqrt(1 + 4 a^m) = " + s.to_string() + " lies in Q(a, zeta_m)";
        return c;
    }
    c.verdict = Verdict::ConvergentWithLimit;
    c.provenance = rep.absence_proven ? Provenance::EigenLimit : Provenance::Heuristic;
    c.algebraic_condition_held = true;
    c.limit = limit_formula(a, m, l, prec);
    if (rep.residue_prime) c.note = "non-residue modulo " + std::to_string(*rep.residue_prime);
    else if (!rep.absence_proven) c.note = "no relation found by " + to_string(rep.method);
    return c;
}

Classification classify(const ComplexBF& a, long m, long l) {
    check_primitive(m, l);
    const mpfr_prec_t prec = a.precision();
    const long half_bits = static_cast<long>(prec) / 2;
    const BigFloat eps = BigFloat::exp2(-half_bits, prec);
    if (abs(a.abs() - BigFloat(1L, prec)) <= eps) {
        // recognise a as a root of unity of moderate order
        BigFloat t(prec);
        mpfr_atan2(t.get(), a.imag().get(), a.real().get(), MPFR_RNDN);
        t /= BigFloat::pi(prec) * BigFloat(2L, prec);
        if (t.sign() < 0) t += BigFloat(1L, prec);
        for (long k = 1; k <= 10000; ++k) {
            BigFloat scaled = t * BigFloat(k, prec);
            mpz_class j = floor_to_integer(scaled + BigFloat(mpq_class(1, 2), prec));
            if (abs(scaled - BigFloat(j, prec)) <= eps * BigFloat(k, prec)) {
                const long jl = mod_long(j.get_si(), k);
                if (gcd_long(jl, k) != 1) continue;
                Classification c = classify(RootOfUnity(jl, k), m, l, prec);
                c.a = a.to_string(40);
                c.provenance = Provenance::Heuristic;
                c.note = "a recognised as exp(2 pi i " + std::to_string(jl) + "/" + std::to_string(k) + ")" +
                         (c.note.empty() ? "" : "; " + c.note);
                return c;
            }
        }
    }
    const mpfr_prec_t work = prec + 32;
    ComplexBF am = ComplexBF::one(work);
    for (long i = 0; i < m; ++i) am *= a.with_precision(work);
    const ComplexBF disc = am + ComplexBF(BigFloat(mpq_class(1, 4), work), BigFloat(work));
    if (abs(disc.imag()) <= eps && disc.real().sign() < 0) {
        Classification c;
        c.a = a.to_string(40);
        c.m = m;
        c.l = mod_long(l, m);
        c.verdict = Verdict::DivergentNegativeReal;
        c.provenance = Provenance::Heuristic;
        c.note = "1/4 + a^m is numerically a negative real";
        return c;
    }
    throw Error(ErrorKind::HeuristicInconclusive,
                "membership of sqrt(1/4 + a^m) in Q(a, zeta_m) is undecidable for a numeric a that is not a root of unity");
}

std::vector<NonCauchyBound> non_cauchy_bounds(const RootOfUnity& a, long m, long l, mpfr_prec_t prec) {
    check_primitive(m, l);
    if (power_order(a, m) != 2) throw Error(ErrorKind::DomainError, "the non-Cauchy bound needs a^m = -1");
    const EigenData ed = eigen_data(a, m, l, prec);
    const auto& s = ed.numeric;
    const mpfr_prec_t work = s.lambda_plus.precision();
    const ComplexBF one = ComplexBF::one(work);
    const BigFloat gap = (one - s.lambda_minus / s.lambda_plus).abs();
    const BigFloat det = (s.v_plus[0] * s.v_minus[1] - s.v_minus[0] * s.v_plus[1]).abs();
    std::vector<NonCauchyBound> out;
    for (long r = 0; r < m; ++r) {
        const BigFloat ap = s.coeffs[r][0].abs(), am = s.coeffs[r][1].abs();
        NonCauchyBound b;
        b.r = r;
        b.coefficients_nonzero = ed.exact ? !ed.exact->coeffs[r][0].is_zero() && !ed.exact->coeffs[r][1].is_zero()
                                          : !ap.is_zero() && !am.is_zero();
        const BigFloat den = ap * s.v_plus[1].abs() + am * s.v_minus[1].abs();
        b.bound = den.is_zero() ? BigFloat(work) : (am * ap * gap * det / (den * den));
        b.bound = b.bound.with_precision(prec);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<std::optional<BigFloat>> period_gaps(const RootOfUnity& a, long m, long l, long r, long q_max,
                                                 mpfr_prec_t prec) {
    check_primitive(m, l);
    if (r < 0 || r >= m) throw Error(ErrorKind::OutOfRange, "residue must lie in [0, m)");
    if (q_max < 0) throw Error(ErrorKind::OutOfRange, "q_max must be non-negative");
    const long L = lcm_long(a.order, m);
    const CFSpec<CycloElem> spec = ka_spec(a.exact(L), x_at(L, m, l));
    auto state = advance(initial_state(spec), spec, r);
    std::vector<std::optional<ComplexBF>> values;
    values.push_back(state_value(state, prec + 16));
    for (long q = 1; q <= q_max + 1; ++q) {
        state = advance(std::move(state), spec, m);
        values.push_back(state_value(state, prec + 16));
    }
    std::vector<std::optional<BigFloat>> out;
    for (long q = 0; q <= q_max; ++q) {
        if (!values[q] || !values[q + 1]) {
            out.emplace_back();
            continue;
        }
        out.emplace_back((*values[q + 1] - *values[q]).abs().with_precision(prec));
    }
    return out;
}

EigenIndexReport eigen_index_check(long j, long k, long l, long m) {
    if (m < 3 || m % 5 != 0 || k < 1 || m % k != 0)
        throw Error(ErrorKind::HypothesisViolated, "the eigenvector index test needs 5 | m and k | m");
    check_primitive(m, l);
    const RootOfUnity a(j, k);
    EigenIndexReport out;
    out.j = a.num;
    out.k = k;
    out.l = mod_long(l, m);
    out.m = m;
    const long l_inv_k = k == 1 ? 0 : inv_mod(out.l, k);
    out.residue = mod_long(mul_mod(mod_long(-out.j * l_inv_k, k), m / k, m), m);

    const TransferMatrix A = transfer_matrix(a.exact(m), m, out.l);
    const PQSequence seq = pq_sequence(A.a, A.x, m + 1);
    const CycloElem r5 = sqrt5_gauss(m) * CycloElem::rational(m, mpq_class(1, 2));
    const CycloElem h = CycloElem::rational(m, mpq_class(1, 2));
    const CycloElem lp = h + r5, lm = h - r5;
    out.holds = true;
    for (long t : {1L, 2L}) {
        EigenIndexResult res;
        res.t = t;
        res.s = out.residue >= t ? out.residue : out.residue + m;
        res.r = res.s - t;
        const CycloElem& P = seq.P(res.r);
        const CycloElem& Q = seq.Q(res.r);
        auto [w0, w1] = A.apply(P, Q);
        res.eigenvector = (w0 * Q - w1 * P).is_zero();
        if (res.eigenvector) {
            const CycloElem lam = !P.is_zero() ? w0 / P : w1 / Q;
            res.eigenvalue_sign = lam == lp ? 1 : lam == lm ? -1 : 0;
        }
        out.holds = out.holds && res.eigenvector;
        out.indices.push_back(res);
    }
    out.distinct_eigenvalues = out.holds && out.indices[0].eigenvalue_sign * out.indices[1].eigenvalue_sign == -1;
    return out;
}

ClusterReport limit_point_check(const RootOfUnity& a, long m, long l, long n_max, mpfr_prec_t prec,
                                double log2_tol) {
    check_primitive(m, l);
    const long window = 3 * m;
    if (n_max < window) throw Error(ErrorKind::OutOfRange, "n_max must be at least 3m");
    ClusterReport out;
    const long ord = power_order(a, m);
    if ((ord == 1 && m % 5 == 0) || (ord == 2 && m % 3 == 0)) {
        LimitPointSet pts = limit_points(a, m, l, prec);
        out.predicted = std::move(pts.principal);
        for (auto& row : pts.twisted)
            for (auto& p : row) out.predicted.push_back(std::move(p));
    } else {
        out.predicted.push_back(limit_formula(a, m, l, prec));
    }

    // the tail repeats with period m, or 3m when the points rotate by zeta_3
    const long period = ord == 2 ? 3 * m : m;
    const long L = lcm_long(a.order, m);
    const CFSpec<CycloElem> spec = ka_spec(a.exact(L), x_at(L, m, l));
    const long first = n_max - window + 1;
    const long start = std::max(0L, first - period);
    std::vector<std::optional<ComplexBF>> earlier;
    auto state = advance(initial_state(spec), spec, start);
    for (long n = start; n <= n_max; ++n) {
        if (n > start) state = advance(std::move(state), spec, 1);
        if (n < first) earlier.push_back(state_value(state, prec));
        else out.observed.emplace_back(n, state_value(state, prec));
    }

    const BigFloat tol = tolerance(prec, log2_tol);
    out.settled = first - period >= 0;
    for (std::size_t i = 0; out.settled && i < out.observed.size(); ++i) {
        const long back = out.observed[i].first - period;
        const auto& prev = back >= first ? out.observed[static_cast<std::size_t>(back - first)].second
                                         : earlier[static_cast<std::size_t>(back - start)];
        out.settled = chordal(prev, out.observed[i].second, prec) <= tol;
    }
    std::vector<std::optional<ComplexBF>> centers;
    for (const auto& [n, v] : out.observed) {
        const bool hit = std::any_of(out.predicted.begin(), out.predicted.end(),
                                     [&](const FieldValue& p) { return chordal(v, p.value, prec) <= tol; });
        if (!hit) out.unmatched.push_back(n);
        if (std::none_of(centers.begin(), centers.end(),
                         [&](const std::optional<ComplexBF>& c) { return chordal(c, v, prec) <= tol; }))
            centers.push_back(v);
    }
    out.clusters = centers.size();
    out.matched = out.unmatched.empty();
    return out;
}

MembershipReport field_membership(long k, long m, const MembershipOptions& opts) {
    if (k < 1 || m < 1) throw Error(ErrorKind::OutOfRange, "k and m must be positive");
    MembershipReport rep;
    rep.k = k;
    rep.m = m;
    rep.precision_bits = opts.prec;
    rep.height_bound = opts.height_bound;
    const long L = lcm_long(k, m);
    const CycloElem target = CycloElem::one(L) + CycloElem::integer(L, 4) * CycloElem::root(L, L / k);

    if (k <= 2) {
        rep.method = MembershipMethod::ExactGaussSum;
        const long p = k == 1 ? 5 : 3;
        rep.in_field = m % p == 0;
        rep.absence_proven = !rep.in_field;
        if (rep.in_field) {
            CycloElem s = lift_to(k == 1 ? sqrt5_gauss(m) : sqrt_minus3(m), L);
            if (s * s != target) throw Error(ErrorKind::Inconclusive, "classical square root failed to verify");
            rep.witness = std::move(s);
        } else {
            rep.note = std::string(k == 1 ? "sqrt 5" : "sqrt(-3)") + " generates a field of conductor " +
                       std::to_string(p);
        }
        return rep;
    }

    const long m_even = m % 2 == 0 ? m : 2 * m;
    if (m_even % k != 0) {
        rep.method = MembershipMethod::RootOfUnityContainment;
        rep.absence_proven = true;
        rep.note = "zeta_" + std::to_string(k) + " is not in Q(zeta_" + std::to_string(m) + ")";
        return rep;
    }

    rep.method = MembershipMethod::IntegerRelation;
    const long phi = euler_phi(m_even);
    const mpfr_prec_t prec = opts.prec;
    std::vector<ComplexBF> z;
    for (long i = 0; i < phi; ++i) z.push_back(ComplexBF::unit_root(i, m_even, prec + 16));
    z.push_back(-sqrt(target.embed(prec + 16)));
    const RelationSearch search = integer_relation(z, prec, opts.height_bound);
    rep.lattice_log2_shortest = search.log2_shortest;
    for (const auto& c : search.candidates) {
        if (c.back() == 0) continue;
        std::vector<mpq_class> coeffs;
        for (long i = 0; i < phi; ++i) coeffs.emplace_back(c[static_cast<std::size_t>(i)], c.back());
        for (auto& q : coeffs) q.canonicalize();
        const long W = lcm_long(m_even, L);
        CycloElem s = lift_to(CycloElem::from_coeffs(m_even, coeffs), W);
        if (s * s == lift_to(target, W)) {
            rep.in_field = true;
            rep.witness = lift_to(s, W);
            break;
        }
    }

    // a square root in Q(zeta_L) is an algebraic integer, so it survives reduction
    // modulo any prime p = 1 mod L
    long tried = 0;
    const std::vector<long> factors = prime_factors(L);
    for (long p = L + 1; tried < opts.residue_primes && !rep.in_field; p += L) {
        if (!is_prime(p)) continue;
        ++tried;
        long h = 0;
        for (long g = 2; g < p; ++g) {
            const long cand = pow_mod(g, (p - 1) / L, p);
            if (std::all_of(factors.begin(), factors.end(), [&](long q) { return pow_mod(cand, L / q, p) != 1; })) {
                h = cand;
                break;
            }
        }
        if (h == 0) continue;
        const long v = mod_long(1 + 4 * pow_mod(h, L / k, p), p);
        if (v != 0 && pow_mod(v, (p - 1) / 2, p) == p - 1) {
            rep.absence_proven = true;
            rep.residue_prime = p;
            break;
        }
    }
    if (rep.in_field && rep.absence_proven)
        throw Error(ErrorKind::Inconclusive, "relation and non-residue certificate disagree");
    return rep;
}

bool membership_predicted(long k, long m) { return (k == 1 && m % 5 == 0) || (k == 2 && m % 3 == 0); }

MembershipGrid membership_grid(long k_max, long m_max, const MembershipOptions& opts, unsigned workers) {
    if (k_max < 1 || m_max < 1) throw Error(ErrorKind::OutOfRange, "grid bounds must be positive");
    MembershipGrid grid;
    grid.reports.resize(static_cast<std::size_t>(k_max * m_max));
    parallel_for(grid.reports.size(), workers, [&](std::size_t i) {
        const long k = static_cast<long>(i) / m_max + 1;
        const long m = static_cast<long>(i) % m_max + 1;
        grid.reports[i] = field_membership(k, m, opts);
    });
    for (const auto& r : grid.reports) {
        ++grid.summary.cases;
        if (r.in_field != membership_predicted(r.k, r.m)) ++grid.summary.counterexamples;
        else if (!r.in_field && !r.absence_proven) ++grid.summary.inconclusive;
        else ++grid.summary.confirmations;
    }
    return grid;
}

EigenIndexGrid eigen_index_grid(long k_max, long m_max, unsigned workers) {
    struct Case {
        long j, k, l, m;
    };
    std::vector<Case> cases;
    for (long m = 5; m <= m_max; m += 5)
        for (long k = 1; k <= std::min(k_max, m); ++k) {
            if (m % k) continue;
            for (long j = 0; j < k; ++j) {
                if (gcd_long(j, k) != 1) continue;
                for (long l = 1; l < m; ++l)
                    if (gcd_long(l, m) == 1) cases.push_back({j, k, l, m});
            }
        }
    EigenIndexGrid grid;
    grid.reports.resize(cases.size());
    parallel_for(cases.size(), workers, [&](std::size_t i) {
        const Case& c = cases[i];
        grid.reports[i] = eigen_index_check(c.j, c.k, c.l, c.m);
    });
    for (const auto& r : grid.reports) {
        ++grid.summary.cases;
        if (r.holds) ++grid.summary.confirmations;
        else ++grid.summary.counterexamples;
    }
    return grid;
}

ClusterGrid limit_point_grid(long k_max, long m_max, long periods, unsigned workers) {
    if (periods < 3) throw Error(ErrorKind::OutOfRange, "need at least three periods");
    std::vector<std::pair<RootOfUnity, long>> cases;
    for (long k = 1; k <= k_max; ++k)
        for (long m = 3; m <= m_max; ++m)
            for (long j = 0; j < k; ++j) {
                if (gcd_long(j, k) != 1) continue;
                const RootOfUnity a(j, k);
                const long ord = power_order(a, m);
                if ((ord == 1 && m % 5 == 0) || (ord == 2 && m % 3 == 0)) cases.emplace_back(a, m);
            }
    ClusterGrid grid;
    grid.reports.resize(cases.size());
    parallel_for(cases.size(), workers, [&](std::size_t i) {
        const auto& [a, m] = cases[i];
        grid.reports[i] = {cases[i], limit_point_check(a, m, 1, periods * m)};
    });
    for (const auto& [key, r] : grid.reports) {
        ++grid.summary.cases;
        if (r.matched) ++grid.summary.confirmations;
        else if (r.settled) ++grid.summary.counterexamples;
        else ++grid.summary.inconclusive;
    }
    return grid;
}

}  // namespace rrcf
