#include <doctest.h>

#include <cmath>

#include "rrcf/cf_engine.hpp"
#include "rrcf/classifier.hpp"
#include "rrcf/errors.hpp"

using namespace rrcf;

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;

double dist(const ComplexBF& a, const ComplexBF& b) { return (a - b).abs().to_double(); }

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Inconclusive;
}

ComplexBF truncation(const RootOfUnity& a, long m, long l, std::int64_t n, mpfr_prec_t prec = 256) {
    const auto spec = ka_spec_numeric(a.numeric(prec + 64), l, m, prec + 64);
    return truncated_value(spec, n, prec);
}

}  // namespace

TEST_CASE("roots of unity") {
    CHECK(RootOfUnity::parse("3/5").num == 3);
    CHECK(RootOfUnity::parse("-1/5").num == 4);
    CHECK(RootOfUnity::parse("1").order == 1);
    CHECK(RootOfUnity::parse("-1").order == 2);
    CHECK(RootOfUnity::parse("7/3").to_string() == "1/3");
    CHECK_THROWS_AS(RootOfUnity::parse("2/4"), Error);
    CHECK_THROWS_AS(RootOfUnity::parse("x"), Error);
    CHECK_THROWS_AS(RootOfUnity::parse("1/0"), Error);
    CHECK(RootOfUnity(1, 4).exact(12) == CycloElem::root(12, 3));
    CHECK(dist(RootOfUnity(1, 4).numeric(128), ComplexBF(0.0, 1.0, 128)) < 1e-35);
    CHECK(legendre5(1) == 1);
    CHECK(legendre5(2) == -1);
    CHECK(legendre5(13) == -1);
    CHECK(legendre5(14) == 1);
}

TEST_CASE("limit formula examples") {
    const RootOfUnity one(0, 1);
    CHECK(limit_formula(one, 1).value->real().to_double() == doctest::Approx(1 / kPhi).epsilon(1e-15));
    CHECK(limit_formula(one, 2).value->real().to_double() == doctest::Approx(0.38196601125).epsilon(1e-11));
    const auto l3 = limit_formula(one, 3, 1, 256);
    REQUIRE(l3.exact);
    CHECK(dist(*l3.value, truncation(one, 3, 1, 2000)) < 1e-20);
    CHECK(dist(*l3.value, l3.exact->embed(256)) < 1e-70);

    const RootOfUnity a(2, 7);
    for (long m : {3L, 4L, 9L}) {
        const auto lf = limit_formula(a, m, 1, 256);
        const auto lc = limit_formula(a.numeric(256), m, 1);
        CHECK(dist(*lf.value, *lc.value) < 1e-60);
    }
}

TEST_CASE("classification verdicts") {
    auto c = classify(RootOfUnity(0, 1), 1);
    CHECK(c.verdict == Verdict::ConvergentWithLimit);
    CHECK(c.provenance == Provenance::EigenLimit);
    CHECK(c.algebraic_condition_held);
    REQUIRE(c.limit);
    CHECK(c.limit->value->real().to_double() == doctest::Approx(1 / kPhi));

    c = classify(RootOfUnity(1, 2), 3);
    CHECK(c.verdict == Verdict::DivergentNegativeReal);
    CHECK(c.provenance == Provenance::NonCauchy);
    CHECK_FALSE(c.limit);
    CHECK(c.limit_points.size() >= 2);

    c = classify(RootOfUnity(0, 1), 5);
    CHECK(c.verdict == Verdict::DivergentTwoLimitPoints);
    CHECK(c.provenance == Provenance::Schur);
    CHECK(c.limit_points.size() == 2);

    c = classify(RootOfUnity(1, 5), 5);
    CHECK(c.verdict == Verdict::DivergentTwoLimitPoints);
    CHECK(c.provenance == Provenance::Conjectural);

    c = classify(RootOfUnity(1, 3), 4);
    CHECK(c.verdict == Verdict::ConvergentWithLimit);
    CHECK(c.provenance == Provenance::EigenLimit);

    CHECK(kind_of([] { classify(RootOfUnity(0, 1), 6, 2); }) == ErrorKind::BadLevel);
    CHECK(to_string(Verdict::DivergentTwoLimitPoints) == "DivergentTwoLimitPoints");
}

TEST_CASE("convergent cases approach the limit with a shrinking envelope") {
    const std::vector<std::pair<RootOfUnity, long>> cases = {
        {RootOfUnity(0, 1), 3}, {RootOfUnity(0, 1), 7}, {RootOfUnity(1, 3), 4},
        {RootOfUnity(2, 7), 3}, {RootOfUnity(1, 4), 5}, {RootOfUnity(3, 8), 5},
    };
    for (const auto& [a, m] : cases) {
        const auto c = classify(a, m);
        REQUIRE(c.verdict == Verdict::ConvergentWithLimit);
        const ComplexBF lim = *c.limit->value;
        double prev = INFINITY;
        for (long f : {50L, 100L, 200L}) {
            const double err = dist(truncation(a, m, 1, f * m), lim);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-10);
    }
}

TEST_CASE("eigen data") {
    for (long m : {3L, 4L, 7L, 12L, 25L}) {
        const EigenData ed = eigen_data(RootOfUnity(0, 1), m);
        REQUIRE(ed.exact);
        CHECK(ed.verified);
        const auto& e = *ed.exact;
        const TransferMatrix A = transfer_matrix(CycloElem::one(1), m, 1);
        const long L = e.lambda_plus.level();
        CHECK(e.lambda_plus + e.lambda_minus == CycloElem::one(L));
        CHECK(e.lambda_plus * e.lambda_minus == CycloElem::integer(L, -1));
        CHECK(e.lambda_plus.embed(64).real().to_double() == doctest::Approx(kPhi));
        const PQSequence pq = pq_sequence(A.a, A.x, m);
        for (long r = 0; r < m; ++r) {
            const auto& [ap, am] = e.coeffs[r];
            CHECK(ap * e.v_plus[0] + am * e.v_minus[0] == pq.P(r).lift(L));
            CHECK(ap * e.v_plus[1] + am * e.v_minus[1] == pq.Q(r).lift(L));
        }
        const auto [u, v] = A.apply(e.v_plus[0], e.v_plus[1]);
        CHECK(u == e.lambda_plus * e.v_plus[0]);
        CHECK(v == e.lambda_plus * e.v_plus[1]);
    }
    // a^m = -1 gives lambda_- / lambda_+ = zeta_3^2
    const EigenData ed = eigen_data(RootOfUnity(1, 2), 3);
    REQUIRE(ed.exact);
    const auto ratio = ed.exact->lambda_minus / ed.exact->lambda_plus;
    CHECK(ratio == CycloElem::root(3, 2).lift(ratio.level()));
    // general a: numeric only
    const EigenData en = eigen_data(RootOfUnity(1, 7), 3);
    CHECK_FALSE(en.exact);
    CHECK(en.verified);
    CHECK(en.numeric.lambda_plus.abs() >= en.numeric.lambda_minus.abs());
}

TEST_CASE("schur limit") {
    CHECK(schur_limit(1).value.real().to_double() == doctest::Approx(kPhi));
    CHECK(schur_limit(2).value.real().to_double() == doctest::Approx(1 / kPhi));
    const SchurLimit s3 = schur_limit(3);
    CHECK(s3.value.real().to_double() == doctest::Approx(0.309016994).epsilon(1e-8));
    CHECK(s3.value.imag().to_double() == doctest::Approx(0.535233134).epsilon(1e-8));
    for (long m : {3L, 4L, 6L, 7L, 8L}) {
        for (long l = 1; l < m; ++l) {
            if (gcd_long(l, m) != 1) continue;
            const SchurLimit s = schur_limit(m, l, 256);
            const auto spec = schur_spec_numeric(l, m, 320);
            CHECK(dist(s.value, truncated_value(spec, 2000 * m, 256)) < 1e-20);
            CHECK(dist(s.value, *schur_via_limit_formula(m, l, 256).value) < 1e-60);
            CHECK(s.exact.embed(256).real().to_double() == doctest::Approx(s.value.real().to_double()));
        }
    }
    CHECK(kind_of([] { schur_limit(10); }) == ErrorKind::FiveDivides);
}

TEST_CASE("field membership") {
    auto r = field_membership(1, 5);
    CHECK(r.in_field);
    REQUIRE(r.witness);
    CHECK(*r.witness * *r.witness == CycloElem::integer(r.witness->level(), 5));
    CHECK(r.method == MembershipMethod::ExactGaussSum);

    r = field_membership(2, 3);
    CHECK(r.in_field);
    REQUIRE(r.witness);
    CHECK(*r.witness * *r.witness == CycloElem::integer(r.witness->level(), -3));

    r = field_membership(1, 4);
    CHECK_FALSE(r.in_field);
    CHECK(r.absence_proven);

    r = field_membership(7, 5);
    CHECK_FALSE(r.in_field);
    CHECK(r.method == MembershipMethod::RootOfUnityContainment);
    CHECK(r.absence_proven);

    r = field_membership(3, 15);
    CHECK_FALSE(r.in_field);
    CHECK(r.method == MembershipMethod::IntegerRelation);
    CHECK(r.precision_bits == 512);
    CHECK(r.height_bound == 1000000);
    CHECK(r.absence_proven);
    CHECK(r.residue_prime);
    CHECK(to_string(MembershipMethod::IntegerRelation) == "integer_relation");

    CHECK(membership_predicted(1, 10));
    CHECK(membership_predicted(2, 9));
    CHECK_FALSE(membership_predicted(2, 10));
    const auto grid = membership_grid(4, 12);
    CHECK(grid.summary.cases == 48);
    CHECK(grid.summary.counterexamples == 0);
    CHECK(grid.summary.confirmations == 48);
}

TEST_CASE("discriminant roots") {
    const auto s = exact_discriminant_root(CycloElem::one(5));
    REQUIRE(s);
    CHECK(*s * *s == CycloElem::rational(s->level(), mpq_class(5, 4)));
    CHECK(s->embed(64).real().sign() > 0);
    const auto t = exact_discriminant_root(CycloElem::integer(3, -1));
    REQUIRE(t);
    CHECK(*t * *t == CycloElem::rational(t->level(), mpq_class(-3, 4)));
    CHECK_FALSE(exact_discriminant_root(CycloElem::root(7, 1)));
}

TEST_CASE("eigen index check") {
    const auto r = eigen_index_check(0, 1, 1, 5);
    CHECK(r.holds);
    CHECK(r.distinct_eigenvalues);
    CHECK(r.indices.size() == 2);
    for (const auto& i : r.indices) CHECK(i.r == i.s - i.t);

    const auto r2 = eigen_index_check(3, 10, 7, 20);
    CHECK(r2.holds);
    CHECK(kind_of([] { eigen_index_check(1, 3, 1, 5); }) == ErrorKind::HypothesisViolated);
    CHECK(kind_of([] { eigen_index_check(1, 7, 1, 7); }) == ErrorKind::HypothesisViolated);

    const auto g = eigen_index_grid(5, 20);
    CHECK(g.summary.cases > 0);
    CHECK(g.summary.counterexamples == 0);
}

TEST_CASE("non-Cauchy gaps for a = -1, m = 3") {
    const RootOfUnity a(1, 2);
    const auto bounds = non_cauchy_bounds(a, 3);
    REQUIRE(bounds.size() == 3);
    bool some = false;
    for (const auto& b : bounds) {
        if (!b.coefficients_nonzero || b.bound.sign() <= 0) continue;
        const auto gaps = period_gaps(a, 3, 1, b.r, 200);
        bool all = true;
        for (const auto& g : gaps) all = all && g && *g >= b.bound * BigFloat(1.0 - 1e-30, 256);
        some = some || all;
    }
    CHECK(some);
    CHECK(kind_of([] { non_cauchy_bounds(RootOfUnity(0, 1), 3); }) == ErrorKind::DomainError);
}

TEST_CASE("limit point clusters") {
    const auto pts = limit_points(RootOfUnity(0, 1), 5);
    REQUIRE(pts.principal.size() == 2);
    CHECK(std::fabs(pts.principal[0].value->real().to_double() - 1.0) < 1e-30);
    CHECK(pts.principal[1].value->abs().to_double() < 1e-30);

    const auto rep = limit_point_check(RootOfUnity(0, 1), 5, 1, 500);
    CHECK(rep.matched);
    CHECK(rep.unmatched.empty());
    CHECK(rep.clusters == 2);

    const auto rep3 = limit_point_check(RootOfUnity(1, 2), 3, 1, 600);
    CHECK(rep3.matched);
    CHECK(limit_points(RootOfUnity(1, 2), 3).twisted.size() == 3);

    CHECK(kind_of([] { limit_points(RootOfUnity(0, 1), 7); }) == ErrorKind::DomainError);
}

TEST_CASE("numeric classification") {
    const auto c = classify(RootOfUnity(1, 3).numeric(256), 4);
    CHECK(c.provenance == Provenance::Heuristic);
    CHECK(c.verdict == Verdict::ConvergentWithLimit);
    const auto neg = classify(ComplexBF(-1.0, 0.0, 256), 3);
    CHECK(neg.verdict == Verdict::DivergentNegativeReal);
    CHECK(kind_of([] { classify(ComplexBF(0.3, 0.2, 256), 3); }) == ErrorKind::HeuristicInconclusive);
}
