#include "rrcf/integer_relation.hpp"

#include <algorithm>
#include <cmath>

#include "rrcf/errors.hpp"

namespace rrcf {

namespace {

using Real = long double;

Real to_real(const mpz_class& z) {
    long e = 0;
    const double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::ldexp(static_cast<Real>(d), static_cast<int>(e));
}

mpz_class round_to_mpz(Real x) {
    mpfr_t t;
    mpfr_init2(t, 80);
    mpfr_set_ld(t, x, MPFR_RNDN);
    mpfr_round(t, t);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

class LLL {
   public:
    LLL(IntMatrix& b, double delta) : b_(b), n_(b.size()), delta_(delta) {
        dim_ = n_ ? b_[0].size() : 0;
        bf_.assign(n_, std::vector<Real>(dim_));
        norm_.assign(n_, 0);
        mu_.assign(n_, std::vector<Real>(n_, 0));
        r_.assign(n_, std::vector<Real>(n_, 0));
        bstar_.assign(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) refresh(i);
    }

    void run() {
        if (n_ == 0) return;
        gram_schmidt_row(0);
        std::size_t k = 1;
        std::size_t guard = 0;
        while (k < n_) {
            size_reduce(k);
            const Real lhs = static_cast<Real>(delta_) * bstar_[k - 1];
            const Real rhs = bstar_[k] + mu_[k][k - 1] * mu_[k][k - 1] * bstar_[k - 1];
            if (lhs > rhs) {
                std::swap(b_[k], b_[k - 1]);
                std::swap(bf_[k], bf_[k - 1]);
                std::swap(norm_[k], norm_[k - 1]);
                k = std::max<std::size_t>(k - 1, 1);
                if (k == 1) gram_schmidt_row(0);
            } else {
                ++k;
            }
            if (++guard > 50'000'000) throw Error(ErrorKind::BudgetExhausted, "LLL did not terminate");
        }
    }

   private:
    void refresh(std::size_t i) {
        Real s = 0;
        for (std::size_t c = 0; c < dim_; ++c) {
            bf_[i][c] = to_real(b_[i][c]);
            s += bf_[i][c] * bf_[i][c];
        }
        norm_[i] = s;
    }

    Real dot(std::size_t i, std::size_t j) const {
        Real s = 0;
        for (std::size_t c = 0; c < dim_; ++c) s += bf_[i][c] * bf_[j][c];
        // heavy cancellation: fall back to the exact product
        if (std::fabs(s) < std::ldexp(std::sqrt(norm_[i] * norm_[j]), -30)) {
            mpz_class e = 0;
            for (std::size_t c = 0; c < dim_; ++c) e += b_[i][c] * b_[j][c];
            return to_real(e);
        }
        return s;
    }

    void gram_schmidt_row(std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            Real r = dot(k, j);
            for (std::size_t i = 0; i < j; ++i) r -= mu_[j][i] * r_[k][i];
            r_[k][j] = r;
            mu_[k][j] = r / bstar_[j];
        }
        Real s = norm_[k];
        for (std::size_t j = 0; j < k; ++j) s -= mu_[k][j] * r_[k][j];
        bstar_[k] = s;
    }

    void size_reduce(std::size_t k) {
        for (int pass = 0; pass < 200; ++pass) {
            gram_schmidt_row(k);
            bool big = false, changed = false;
            for (std::size_t jj = k; jj-- > 0;) {
                if (std::fabs(mu_[k][jj]) <= 0.51L) continue;
                const Real xr = std::nearbyint(mu_[k][jj]);
                if (std::fabs(xr) > std::ldexp(Real(1), 30)) big = true;
                const mpz_class x = round_to_mpz(xr);
                for (std::size_t c = 0; c < dim_; ++c) b_[k][c] -= x * b_[jj][c];
                for (std::size_t i = 0; i < jj; ++i) mu_[k][i] -= xr * mu_[jj][i];
                mu_[k][jj] -= xr;
                changed = true;
            }
            if (!changed) return;
            refresh(k);
            if (!big) {
                gram_schmidt_row(k);
                return;
            }
        }
        gram_schmidt_row(k);
    }

    IntMatrix& b_;
    std::size_t n_, dim_ = 0;
    double delta_;
    std::vector<std::vector<Real>> bf_;
    std::vector<Real> norm_;
    std::vector<std::vector<Real>> mu_, r_;
    std::vector<Real> bstar_;
};

}  // namespace

void lll_reduce(IntMatrix& basis, double delta) {
    if (!(delta > 0.25 && delta < 1.0)) throw Error(ErrorKind::OutOfRange, "LLL delta must lie in (1/4, 1)");
    LLL(basis, delta).run();
}

RelationSearch integer_relation(const std::vector<ComplexBF>& z, mpfr_prec_t prec, const mpz_class& height_bound) {
    if (z.empty()) throw Error(ErrorKind::OutOfRange, "integer_relation needs at least one number");
    if (prec < 64) throw Error(ErrorKind::OutOfRange, "integer_relation needs at least 64 bits");
    const std::size_t n = z.size();
    const long scale_bits = static_cast<long>(prec) - 16;
    IntMatrix basis(n, std::vector<mpz_class>(n + 2, 0));
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        BigFloat re = ldexp(z[i].real().with_precision(prec), scale_bits);
        BigFloat im = ldexp(z[i].imag().with_precision(prec), scale_bits);
        mpfr_get_z(basis[i][n].get_mpz_t(), re.get(), MPFR_RNDN);
        mpfr_get_z(basis[i][n + 1].get_mpz_t(), im.get(), MPFR_RNDN);
    }
    lll_reduce(basis);

    RelationSearch out;
    auto length2 = [](const std::vector<mpz_class>& v) {
        mpz_class s = 0;
        for (const auto& x : v) s += x * x;
        return s;
    };
    out.log2_shortest = 0.5 * std::log2(std::max(length2(basis[0]).get_d(), 1.0));
    // a genuine relation leaves residual columns of size about sqrt(n) * height
    mpz_class residual_cap = height_bound * static_cast<long>(n) * 4 + 64;
    for (const auto& row : basis) {
        std::vector<mpz_class> c(row.begin(), row.begin() + static_cast<long>(n));
        bool ok = abs(row[n]) <= residual_cap && abs(row[n + 1]) <= residual_cap;
        bool nonzero = false;
        for (const auto& x : c) {
            if (abs(x) > height_bound) ok = false;
            if (x != 0) nonzero = true;
        }
        if (ok && nonzero) out.candidates.push_back(std::move(c));
    }
    return out;
}

}  // namespace rrcf
