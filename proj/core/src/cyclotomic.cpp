#include "rrcf/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "rrcf/errors.hpp"

namespace rrcf {

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) { return std::lcm(a, b); }

long euler_phi(long n) {
    if (n < 1) throw Error(ErrorKind::BadLevel, "phi of a non-positive integer");
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

std::mutex level_mutex;
std::map<long, std::unique_ptr<CycloLevel>> level_cache;

// Exact division of an ascending polynomial by a monic divisor.
std::vector<long> divide_monic(const std::vector<long>& num, const std::vector<long>& den) {
    std::vector<long> rem(num);
    std::size_t dn = den.size() - 1;
    std::vector<long> quo(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        long c = rem[i];
        quo[i - dn] = c;
        if (c != 0)
            for (std::size_t j = 0; j <= dn; ++j) rem[i - dn + j] -= c * den[j];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (rem[i] != 0) throw Error(ErrorKind::BadLevel, "cyclotomic division was not exact");
    return quo;
}

const CycloLevel& level_locked(long n) {
    auto it = level_cache.find(n);
    if (it != level_cache.end()) return *it->second;
    std::vector<long> poly(static_cast<std::size_t>(n) + 1, 0);
    poly[0] = -1;
    poly[static_cast<std::size_t>(n)] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) poly = divide_monic(poly, level_locked(d).poly);
    auto lvl = std::make_unique<CycloLevel>();
    lvl->n = n;
    lvl->phi = static_cast<long>(poly.size()) - 1;
    for (long j = 0; j < lvl->phi; ++j)
        if (poly[static_cast<std::size_t>(j)] != 0) lvl->tail.emplace_back(j, poly[static_cast<std::size_t>(j)]);
    lvl->poly = std::move(poly);
    const CycloLevel& ref = *lvl;
    level_cache.emplace(n, std::move(lvl));
    return ref;
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

const CycloLevel& cyclo_level(long n) {
    if (n < 1) throw Error(ErrorKind::BadLevel, "cyclotomic level must be positive, got " + std::to_string(n));
    std::lock_guard<std::mutex> lock(level_mutex);
    return level_locked(n);
}

CycloElem::CycloElem() : CycloElem(&cyclo_level(1)) {}

CycloElem::CycloElem(const CycloLevel* lvl)
    : lvl_(lvl), num_(static_cast<std::size_t>(lvl->phi)), den_(1) {}

CycloElem CycloElem::zero(long level) { return CycloElem(&cyclo_level(level)); }

CycloElem CycloElem::one(long level) { return root(level, 0); }

CycloElem CycloElem::integer(long level, const mpz_class& value) {
    CycloElem r(&cyclo_level(level));
    r.num_[0] = value;
    if (value == 1) r.root_ = 0;
    return r;
}

CycloElem CycloElem::rational(long level, const mpq_class& value) {
    CycloElem r(&cyclo_level(level));
    r.num_[0] = value.get_num();
    r.den_ = value.get_den();
    if (value == 1) r.root_ = 0;
    return r;
}

CycloElem CycloElem::root(long level, long exponent) {
    const CycloLevel* lvl = &cyclo_level(level);
    long e = mod_long(exponent, level);
    CycloElem r(lvl);
    if (e < lvl->phi) {
        r.num_[static_cast<std::size_t>(e)] = 1;
    } else {
        std::vector<mpz_class> buf(static_cast<std::size_t>(e) + 1);
        buf[static_cast<std::size_t>(e)] = 1;
        r.assign_reduced(std::move(buf), mpz_class(1));
    }
    r.root_ = e;
    return r;
}

CycloElem CycloElem::from_coeffs(long level, const std::vector<mpq_class>& coeffs) {
    CycloElem r(&cyclo_level(level));
    if (static_cast<long>(coeffs.size()) > r.lvl_->phi)
        throw Error(ErrorKind::OutOfRange, "too many coefficients for level " + std::to_string(level));
    mpz_class den = 1;
    for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.num_[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    r.den_ = den;
    r.normalize();
    return r;
}

CycloElem CycloElem::from_integer_poly(long level, std::vector<mpz_class> coeffs) {
    CycloElem r(&cyclo_level(level));
    if (static_cast<long>(coeffs.size()) < r.lvl_->phi) coeffs.resize(static_cast<std::size_t>(r.lvl_->phi));
    r.assign_reduced(std::move(coeffs), mpz_class(1));
    return r;
}

mpq_class CycloElem::coeff(long i) const {
    if (i < 0 || i >= lvl_->phi) return mpq_class(0);
    mpq_class q(num_[static_cast<std::size_t>(i)], den_);
    q.canonicalize();
    return q;
}

std::vector<mpq_class> CycloElem::coeffs() const {
    std::vector<mpq_class> out;
    out.reserve(num_.size());
    for (long i = 0; i < lvl_->phi; ++i) out.push_back(coeff(i));
    return out;
}

bool CycloElem::is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return c == 0; });
}

bool CycloElem::is_rational() const {
    return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return c == 0; });
}

mpq_class CycloElem::rational_value() const {
    if (!is_rational()) throw Error(ErrorKind::DomainError, "element is not rational");
    return coeff(0);
}

std::size_t CycloElem::height_bits() const {
    std::size_t bits = mpz_sizeinbase(den_.get_mpz_t(), 2);
    for (const auto& c : num_) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
}

void CycloElem::normalize() {
    root_.reset();
    if (is_zero()) {
        den_ = 1;
        return;
    }
    if (den_ == 1) return;
    mpz_class g = den_;
    for (const auto& c : num_) {
        if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    den_ /= g;
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

void CycloElem::assign_reduced(std::vector<mpz_class>&& buf, mpz_class den) {
    const long phi = lvl_->phi;
    for (long i = static_cast<long>(buf.size()) - 1; i >= phi; --i) {
        mpz_class& c = buf[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        for (const auto& [j, cf] : lvl_->tail) {
            mpz_class& dst = buf[static_cast<std::size_t>(i - phi + j)];
            if (cf > 0)
                mpz_submul_ui(dst.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(cf));
            else
                mpz_addmul_ui(dst.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-cf));
        }
        c = 0;
    }
    buf.resize(static_cast<std::size_t>(phi));
    num_ = std::move(buf);
    den_ = std::move(den);
    normalize();
}

CycloElem CycloElem::lift(long level) const {
    if (level == lvl_->n) return *this;
    if (level % lvl_->n != 0)
        throw Error(ErrorKind::BadLevel,
                    "cannot lift level " + std::to_string(lvl_->n) + " to " + std::to_string(level));
    const long step = level / lvl_->n;
    CycloElem r(&cyclo_level(level));
    if (root_) {
        return root(level, *root_ * step);
    }
    std::vector<mpz_class> buf(static_cast<std::size_t>((lvl_->phi - 1) * step + 1));
    for (long i = 0; i < lvl_->phi; ++i) buf[static_cast<std::size_t>(i * step)] = num_[static_cast<std::size_t>(i)];
    r.assign_reduced(std::move(buf), den_);
    return r;
}

CycloElem CycloElem::mul_root(long exponent) const {
    const long n = lvl_->n;
    const long e = mod_long(exponent, n);
    if (e == 0) return *this;
    if (root_) return root(n, *root_ + e);
    CycloElem r(lvl_);
    std::vector<mpz_class> buf(static_cast<std::size_t>(n));
    for (long i = 0; i < lvl_->phi; ++i) buf[static_cast<std::size_t>((i + e) % n)] = num_[static_cast<std::size_t>(i)];
    r.assign_reduced(std::move(buf), den_);
    return r;
}

CycloElem CycloElem::galois(long a) const {
    const long n = lvl_->n;
    if (gcd_long(mod_long(a, n), n) != 1 && n > 1)
        throw Error(ErrorKind::DomainError, "galois exponent not coprime to the level");
    if (root_) return root(n, *root_ * a);
    CycloElem r(lvl_);
    std::vector<mpz_class> buf(static_cast<std::size_t>(n));
    for (long i = 0; i < lvl_->phi; ++i) {
        auto idx = static_cast<std::size_t>(mod_long(i * a, n));
        buf[idx] += num_[static_cast<std::size_t>(i)];
    }
    r.assign_reduced(std::move(buf), den_);
    return r;
}

CycloElem CycloElem::inv() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta_" + std::to_string(lvl_->n) + ")");
    if (root_) return root(lvl_->n, -*root_);
    if (is_rational()) return rational(lvl_->n, 1 / rational_value());

    QPoly r0(lvl_->poly.begin(), lvl_->poly.end());
    QPoly r1 = coeffs();
    trim(r1);
    QPoly s0, s1{mpq_class(1)};
    while (r1.size() > 1) {
        // r0 = q * r1 + rem
        QPoly rem = r0;
        QPoly q(rem.size() - r1.size() + 1);
        const mpq_class lead = r1.back();
        const std::size_t shift = r1.size() - 1;
        for (std::size_t i = rem.size(); i-- > shift;) {
            mpq_class c = rem[i] / lead;
            q[i - shift] = c;
            if (c != 0)
                for (std::size_t j = 0; j < r1.size(); ++j) rem[i - shift + j] -= c * r1[j];
        }
        rem.resize(r1.size() - 1);
        trim(rem);
        QPoly s2(std::max(s0.size(), q.size() + s1.size() - 1));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i] != 0)
                for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const mpq_class c = r1.at(0);
    for (auto& v : s1) v /= c;
    s1.resize(static_cast<std::size_t>(lvl_->phi));
    return from_coeffs(lvl_->n, s1);
}

CycloElem CycloElem::pow(long e) const {
    if (root_) return root(lvl_->n, *root_ * mod_long(e, lvl_->n));
    if (e < 0) return inv().pow(-e);
    CycloElem result = one(lvl_->n);
    CycloElem base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

CycloElem& CycloElem::operator+=(const CycloElem& rhs) {
    if (rhs.lvl_ != lvl_) {
        auto [a, b] = common_level(*this, rhs);
        return *this = std::move(a) + b;
    }
    if (den_ == rhs.den_) {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
    } else {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * rhs.den_ + rhs.num_[i] * den_;
        den_ *= rhs.den_;
    }
    normalize();
    return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& rhs) { return *this += -rhs; }

CycloElem& CycloElem::operator*=(const CycloElem& rhs) { return *this = *this * rhs; }

CycloElem& CycloElem::operator/=(const CycloElem& rhs) { return *this = *this / rhs; }

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
    if (a.lvl_ != b.lvl_) {
        auto [x, y] = common_level(a, b);
        return x * y;
    }
    if (a.root_) return b.mul_root(*a.root_);
    if (b.root_) return a.mul_root(*b.root_);
    const long phi = a.lvl_->phi;
    std::vector<mpz_class> buf(static_cast<std::size_t>(2 * phi - 1));
    for (long i = 0; i < phi; ++i) {
        const mpz_class& ai = a.num_[static_cast<std::size_t>(i)];
        if (ai == 0) continue;
        for (long j = 0; j < phi; ++j) {
            const mpz_class& bj = b.num_[static_cast<std::size_t>(j)];
            if (bj != 0) mpz_addmul(buf[static_cast<std::size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
        }
    }
    CycloElem r(a.lvl_);
    r.assign_reduced(std::move(buf), a.den_ * b.den_);
    return r;
}

CycloElem operator-(const CycloElem& a) {
    CycloElem r = a;
    for (auto& c : r.num_) c = -c;
    r.root_.reset();
    if (a.root_ && a.lvl_->n % 2 == 0) r.root_ = mod_long(*a.root_ + a.lvl_->n / 2, a.lvl_->n);
    return r;
}

bool operator==(const CycloElem& a, const CycloElem& b) {
    if (a.lvl_ != b.lvl_) {
        auto [x, y] = common_level(a, b);
        return x == y;
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

std::pair<CycloElem, CycloElem> common_level(const CycloElem& a, const CycloElem& b) {
    long l = lcm_long(a.level(), b.level());
    return {a.lift(l), b.lift(l)};
}

ComplexBF CycloElem::embed(mpfr_prec_t prec) const {
    if (is_zero()) return ComplexBF(prec);
    if (root_) return ComplexBF::unit_root(*root_, lvl_->n, prec);
    const long phi = lvl_->phi;
    double max_log = 0;
    for (const auto& c : num_)
        if (c != 0) max_log = std::max(max_log, static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 2)));
    const double slack = max_log + 2.0 * std::log2(static_cast<double>(phi) + 2.0) + 4.0;
    auto work = static_cast<mpfr_prec_t>(prec + slack + 32);
    for (int attempt = 0;; ++attempt) {
        ComplexBF z = ComplexBF::unit_root(1, lvl_->n, work);
        ComplexBF p = ComplexBF::one(work);
        ComplexBF sum(work);
        for (long i = 0; i < phi; ++i) {
            const mpz_class& c = num_[static_cast<std::size_t>(i)];
            if (c != 0) sum += p * BigFloat(c, work);
            if (i + 1 < phi) p *= z;
        }
        const double err_log = slack - static_cast<double>(work);
        if (sum.log2_abs() - err_log >= static_cast<double>(prec) + 2.0 || attempt >= 6) {
            BigFloat d(den_, work);
            return ComplexBF(sum.real() / d, sum.imag() / d).with_precision(prec);
        }
        work *= 2;
    }
}

std::string CycloElem::to_string() const {
    std::ostringstream os;
    os << "Q(zeta_" << lvl_->n << ")[";
    for (long i = 0; i < lvl_->phi; ++i) {
        if (i) os << ", ";
        os << num_[static_cast<std::size_t>(i)].get_str();
    }
    os << "]";
    if (den_ != 1) os << "/" << den_.get_str();
    return os.str();
}

CycloElem cyclo_new(long level, long exponent) {
    if (level < 1) throw Error(ErrorKind::BadLevel, "level must be positive");
    return CycloElem::root(level, exponent);
}

CycloElem sqrt5_gauss(long level) {
    if (level < 1 || level % 5 != 0)
        throw Error(ErrorKind::BadLevel, "sqrt(5) needs a level divisible by 5, got " + std::to_string(level));
    CycloElem s = CycloElem::root(5, 1) - CycloElem::root(5, 2) - CycloElem::root(5, 3) + CycloElem::root(5, 4);
    return s.lift(level);
}

CycloElem sqrt_minus3(long level) {
    if (level < 1 || level % 3 != 0)
        throw Error(ErrorKind::BadLevel, "sqrt(-3) needs a level divisible by 3, got " + std::to_string(level));
    return (CycloElem::one(3) + CycloElem::integer(3, 2) * CycloElem::root(3, 1)).lift(level);
}

}  // namespace rrcf
