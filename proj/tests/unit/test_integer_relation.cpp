#include <doctest.h>

#include "rrcf/cyclotomic.hpp"
#include "rrcf/integer_relation.hpp"

using namespace rrcf;

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST_CASE("LLL reduces a classical basis") {
    IntMatrix b = {{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
    lll_reduce(b);
    // the lattice has determinant 3, preserved up to sign
    mpz_class det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                    b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    CHECK(abs(det) == 3);
    // first vector is no longer than the shortest input vector
    CHECK(dot(b[0], b[0]) <= 3);
    // size reduction
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(2 * abs(dot(b[i], b[0])) <= dot(b[0], b[0]));
}

TEST_CASE("relations among golden-ratio powers") {
    const mpfr_prec_t prec = 256;
    const BigFloat phi = (BigFloat(1L, prec) + sqrt(BigFloat(5L, prec))) / BigFloat(2L, prec);
    const std::vector<ComplexBF> z = {ComplexBF::one(prec), ComplexBF(phi, BigFloat(prec)),
                                      ComplexBF(phi * phi, BigFloat(prec))};
    const RelationSearch r = integer_relation(z, prec, 1000);
    REQUIRE_FALSE(r.candidates.empty());
    auto c = r.candidates.front();
    if (c[2] < 0)
        for (auto& v : c) v = -v;
    CHECK(c == std::vector<mpz_class>{-1, -1, 1});
}

TEST_CASE("square root of 5 in the fifth cyclotomic field") {
    const mpfr_prec_t prec = 512;
    std::vector<ComplexBF> z;
    for (long i = 0; i < 4; ++i) z.push_back(CycloElem::root(5, i).embed(prec));
    z.push_back(-ComplexBF(sqrt(BigFloat(5L, prec)), BigFloat(prec)));
    const RelationSearch r = integer_relation(z, prec, 1000000);
    REQUIRE_FALSE(r.candidates.empty());
    const auto& c = r.candidates.front();
    std::vector<mpz_class> coeffs(c.begin(), c.begin() + 4);
    const CycloElem s = CycloElem::from_integer_poly(5, coeffs);
    CHECK(s * s == CycloElem::integer(5, c[4] * c[4] * 5));
}

TEST_CASE("no small relation for independent values") {
    const mpfr_prec_t prec = 256;
    const std::vector<ComplexBF> z = {ComplexBF::one(prec), ComplexBF(sqrt(BigFloat(2L, prec)), BigFloat(prec)),
                                      ComplexBF(BigFloat::pi(prec), BigFloat(prec))};
    const RelationSearch r = integer_relation(z, prec, 1000000);
    CHECK(r.candidates.empty());
    CHECK(r.log2_shortest > 20);
}
