#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rrcf/cf_engine.hpp"
#include "rrcf/errors.hpp"

using namespace rrcf;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

double dist(const ComplexBF& a, const ComplexBF& b) { return (a - b).abs().to_double(); }

}  // namespace

TEST_CASE("initial states") {
    const CycloElem x = CycloElem::root(5, 1);
    const auto s = initial_state(schur_spec(x));
    CHECK(s.index == 0);
    CHECK(s.p_curr == CycloElem::one(5));
    CHECK(s.p_prev.is_zero());
    CHECK(s.q_curr == CycloElem::one(5));
    CHECK(s.q_prev == CycloElem::one(5));

    const CycloElem a = CycloElem::root(5, 2);
    const auto k = initial_state(ka_spec(a, x));
    CHECK(k.p_curr == CycloElem::one(5));
    CHECK(k.q_curr == CycloElem::one(5) + a);
    CHECK(partial_numerator(ka_spec(a, x), 3) == a * x.pow(3));
    CHECK(partial_numerator(schur_spec(x), 3) == x.pow(3));
}

TEST_CASE("values at x = 1") {
    const CycloElem one = CycloElem::one(1);
    CHECK(truncated_value(schur_spec(one), 80).real().to_double() == doctest::Approx(kPhi).epsilon(1e-15));
    CHECK(truncated_value(ka_spec(one, one), 80).real().to_double() == doctest::Approx(1 / kPhi).epsilon(1e-15));
    // 1 + 1/(1 + 1/1) = 3/2
    CHECK(truncated_value(schur_spec(one), 2).real().to_double() == doctest::Approx(1.5));
    // x = -1: 1 - 1/(1 + 1/(1 - ...)) tends to 1/phi
    const CycloElem m1 = CycloElem::root(2, 1);
    CHECK(truncated_value(schur_spec(m1), 120).real().to_double() == doctest::Approx(1 / kPhi).epsilon(1e-15));
}

TEST_CASE("exact and numeric paths agree") {
    for (long order : {3L, 7L, 11L, 24L}) {
        const auto exact = schur_spec(CycloElem::root(order, 1));
        const auto numeric = schur_spec_numeric(1, order, 256);
        for (std::int64_t n : {1, 10, 97, 400}) {
            auto ve = truncated_value(exact, n, 256);
            auto vn = truncated_value(numeric, n, 256);
            CHECK(dist(ve, vn) < 1e-60);
        }
        const CycloElem a = CycloElem::root(order, order - 1);
        const auto ke = ka_spec(a, CycloElem::root(order, 1));
        const auto kn = ka_spec_numeric(a.embed(256), 1, order, 256);
        CHECK(dist(truncated_value(ke, 300, 256), truncated_value(kn, 300, 256)) < 1e-60);
    }
}

TEST_CASE("determinant identity along the recursion") {
    const CycloElem x = CycloElem::root(9, 2), a = CycloElem::root(9, 4);
    for (const auto& spec : {schur_spec(x), ka_spec(a, x)}) {
        auto s = initial_state(spec);
        for (int i = 0; i < 60; ++i) {
            CHECK(determinant_holds(s, spec));
            s = advance(std::move(s), spec, 1);
        }
    }
    const auto ns = ka_spec_numeric(ComplexBF::unit_root(1, 7, 256), 3, 11, 256);
    auto s = initial_state(ns);
    for (int i = 0; i < 10; ++i) {
        s = advance(std::move(s), ns, 137);
        CHECK(determinant_holds(s, ns));
    }
}

TEST_CASE("two-step recursion matches the direct one") {
    const CycloElem x = CycloElem::root(8, 3), a = CycloElem::root(8, 5);
    for (const auto& spec : {schur_spec(x), ka_spec(a, x)}) {
        auto r = rogers_advance(rogers_seed(spec), spec, 40);
        auto s = advance(initial_state(spec), spec, r.index);
        CHECK(r.index == 42);
        CHECK(r.p[3] == s.p_curr);
        CHECK(r.q[3] == s.q_curr);
        CHECK(r.p[2] == s.p_prev);
        CHECK(r.q[2] == s.q_prev);
    }
}

TEST_CASE("transfer matrix advances a full period") {
    const CycloElem a = CycloElem::root(4, 1);
    for (long m : {3L, 5L, 8L}) {
        const TransferMatrix A = transfer_matrix(a, m, 1);
        const auto spec = ka_spec(A.a, A.x);
        auto s = advance(initial_state(spec), spec, 4);
        const auto t = matrix_advance(s, A);
        const auto u = advance(s, spec, m);
        CHECK(t.index == u.index);
        CHECK(t.p_curr == u.p_curr);
        CHECK(t.q_curr == u.q_curr);
        CHECK(t.p_prev == u.p_prev);
        CHECK(t.q_prev == u.q_prev);
    }
    const TransferMatrix A = transfer_matrix(CycloElem::one(1), 5, 1);
    CHECK_THROWS_AS(matrix_advance(initial_state(schur_spec(A.x)), A), Error);
}

TEST_CASE("poles and argument errors") {
    const CycloElem x = CycloElem::root(3, 1);
    const auto spec = ka_spec(CycloElem::root(2, 1), x);
    try {
        (void)truncated_value(spec, 0);
        FAIL("expected a pole");
    } catch (const PoleError& e) {
        CHECK(e.index() == 0);
        CHECK(e.kind() == ErrorKind::PoleEncountered);
    }
    CHECK_THROWS_AS(truncated_value(spec, -1), Error);
    CHECK_THROWS_AS(advance(initial_state(spec), spec, -1), Error);
    CHECK_THROWS_AS(trajectory(spec, 10, 0), Error);
    CHECK_THROWS_AS(advance(initial_state(schur_spec(x)), spec, 1), Error);
}

TEST_CASE("trajectories") {
    // x = zeta_5: Q_N Q_{N-1} vanishes for N = 3, 4 mod 5
    const auto pts = trajectory(schur_spec(CycloElem::root(5, 1)), 40, 1);
    REQUIRE(pts.size() == 41);
    for (const auto& p : pts) {
        CHECK(p.n == static_cast<std::int64_t>(&p - &pts[0]));
        const bool zero = p.n % 5 == 3 || p.n % 5 == 4;
        CHECK(p.q_product_abs.is_zero() == zero);
        CHECK(p.q_product_upper >= p.q_product_abs);
    }

    // x = zeta_3 at a = 1: growth
    const auto grow = trajectory(ka_spec(CycloElem::one(3), CycloElem::root(3, 1)), 3000, 1000);
    REQUIRE(grow.size() == 4);
    CHECK(grow[3].q_product_abs > grow[2].q_product_abs);
    CHECK(grow[3].q_product_abs.log2_abs() > 100);

    std::ostringstream os;
    write_trajectory_csv_header(os);
    write_trajectory_csv_row(os, pts[3], 10);
    write_trajectory_csv_row(os, pts[1], 10);
    const std::string csv = os.str();
    CHECK(csv.rfind("n,q_product_abs,approx_re,approx_im\n", 0) == 0);
    CHECK(csv.find("\n3,0,") != std::string::npos);
}

TEST_CASE("numeric path rejects off-circle inputs") {
    auto spec = ka_spec_numeric(ComplexBF(2.0, 0.0, 128), 1, 5, 128);
    CHECK_THROWS_AS(trajectory(spec, 10, 1, 128), Error);
}

TEST_CASE("numeric path reports lost cancellation") {
    // Q_N Q_{N-1} = 1 for N = 4 mod 5 while |Q_N| grows like phi^{N/5}; at 256 bits
    // the cancelling index needs 2 log2 |Q_N| < 248, so N stays below about 890
    const auto low = ka_spec_numeric(ComplexBF::one(256), 1, 5, 256);
    try {
        (void)trajectory(low, 10000, 1, 256);
        FAIL("expected PrecisionExhausted");
    } catch (const PrecisionError& e) {
        CHECK(e.kind() == ErrorKind::PrecisionExhausted);
        CHECK(e.index() > 800);
        CHECK(e.index() < 900);
    }

    const auto exact = trajectory(ka_spec(CycloElem::one(5), CycloElem::root(5, 1)), 3000, 1);
    const auto high = trajectory(ka_spec_numeric(ComplexBF::one(1024), 1, 5, 1024), 3000, 1, 1024);
    REQUIRE(high.size() == exact.size());
    for (std::int64_t n : {4L, 999L, 2999L}) {
        CHECK(exact[n].q_product_abs.to_double() == doctest::Approx(1.0));
        CHECK(dist(ComplexBF(high[n].q_product_abs, BigFloat(0L, 64)), ComplexBF(exact[n].q_product_abs, BigFloat(0L, 64))) < 1e-30);
        CHECK(high[n].q_product_upper >= exact[n].q_product_abs);
    }

    // an exact zero cannot be certified numerically
    CHECK_THROWS_AS(trajectory(schur_spec_numeric(1, 5, 256), 10, 1, 256), PrecisionError);
    CHECK(truncated_value(schur_spec_numeric(1, 5, 256), 3, 256).abs().log2_abs() < -200);
}
