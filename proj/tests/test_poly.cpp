#include "doctest.h"

#include "cubature2d/cmatrix.hpp"
#include "cubature2d/io.hpp"
#include "cubature2d/poly.hpp"
#include "cubature2d/scalar.hpp"

using namespace c2d;

namespace {
GQ gq(long rn, long rd, long in = 0, long id = 1) { return GQ::from_rationals(rn, rd, in, id); }
}  // namespace

TEST_CASE("exact complex rational arithmetic") {
    GQ a = gq(3, 2, -1, 3);  // 3/2 - i/3
    GQ b = gq(-2, 5, 7, 4);

    CHECK(a + b - b == a);
    CHECK(a * b == b * a);
    CHECK((a * b) * a == a * (b * a));
    CHECK(a * a.inv() == gq(1, 1));
    CHECK(conj_of(conj_of(a)) == a);

    // |a|^2 = a * conj(a) is rational
    GQ n = a * conj_of(a);
    CHECK(n.is_real());
    CHECK(n.re == a.norm());
    CHECK(a.norm() == mpq_class(9, 4) + mpq_class(1, 9));

    CHECK(pow_of(a, 0) == gq(1, 1));
    CHECK(pow_of(a, 3) == a * a * a);
    CHECK(pow_of(a, -2) * a * a == gq(1, 1));

    CHECK(!exactly_zero(a));
    CHECK(exactly_zero(a - a));
}

TEST_CASE("complex literal parsing and printing") {
    CHECK(parse_complex("1") == gq(1, 1));
    CHECK(parse_complex("-3/2") == gq(-3, 2));
    CHECK(parse_complex("1.25") == gq(5, 4));
    CHECK(parse_complex("1+1i") == gq(1, 1, 1, 1));
    CHECK(parse_complex("-1-1i") == gq(-1, 1, -1, 1));
    CHECK(parse_complex("1-1/10i") == gq(1, 1, -1, 10));
    CHECK(parse_complex("i") == gq(0, 1, 1, 1));
    CHECK(parse_complex("-i") == gq(0, 1, -1, 1));
    CHECK(parse_complex("3/4i") == gq(0, 1, 3, 4));
    CHECK(parse_complex(".5") == gq(1, 2));

    CHECK_THROWS_AS(parse_complex(""), UsageError);
    CHECK_THROWS_AS(parse_complex("abc"), UsageError);
    CHECK_THROWS_AS(parse_complex("1/0"), UsageError);

    // format/parse round trip
    for (const char* s : {"1", "-3/2", "1+1i", "-1-1i", "2/3-7/5i", "1-1/10i"}) {
        GQ v = parse_complex(s);
        CHECK(parse_complex(format_gq(v)) == v);
    }
}

TEST_CASE("bivariate polynomial algebra") {
    using P = BivarPoly<GQ>;
    P z = P::var_z(), zb = P::var_zb();

    P p = z * z - zb.scaled(gq(2, 1));  // z^2 - 2 zbar
    CHECK(p.degree() == 2);
    CHECK(p.coeff(2, 0) == gq(1, 1));
    CHECK(p.coeff(0, 1) == gq(-2, 1));
    CHECK(p.coeff(1, 1) == gq(0, 1));

    // conj-reflect swaps the exponents and conjugates coefficients
    P q = p.conj_reflect();
    CHECK(q.coeff(0, 2) == gq(1, 1));
    CHECK(q.coeff(1, 0) == gq(-2, 1));
    CHECK(q.conj_reflect() == p);

    // (p*q) evaluation is multiplicative
    CD pt(0.3, -0.8);
    CD lhs = poly_to_cd(p * q).eval(pt);
    CD rhs = poly_to_cd(p).eval(pt) * poly_to_cd(q).eval(pt);
    CHECK(std::abs(lhs - rhs) <= 1e-14);

    // shifting multiplies by z^dz zbar^dzb
    CHECK(p.shifted(1, 2) == p * P::monomial(1, 2, gq(1, 1)));

    // variable rescaling composes with evaluation
    P r = p.var_scaled(gq(3, 1), gq(2, 1));
    CHECK(r.coeff(2, 0) == gq(9, 1));
    CHECK(r.coeff(0, 1) == gq(-4, 1));

    CHECK((p - p).is_zero());
    CHECK_THROWS(P::monomial(-1, 0, gq(1, 1)));
}

TEST_CASE("matrix vee and centrohermitian structure") {
    CMatrix<GQ> m(2, 3);
    m(0, 0) = gq(1, 1, 2, 1);
    m(0, 2) = gq(0, 1, -1, 1);
    m(1, 1) = gq(5, 7);

    // vee = rotate 180 degrees + conjugate
    auto v = m.vee();
    CHECK(v.rows() == 2);
    CHECK(v.cols() == 3);
    CHECK(v(1, 2) == conj_of(m(0, 0)));
    CHECK(v(0, 1) == conj_of(m(1, 1)));
    CHECK(v.vee() == m);

    // vee(M) = J_m conj(M) J_n
    auto j2 = CMatrix<GQ>::exchange(2), j3 = CMatrix<GQ>::exchange(3);
    CHECK(v == j2 * m.conj() * j3);

    // A centrohermitian matrix is fixed by vee
    CMatrix<GQ> ch(2, 2);
    ch(0, 0) = gq(1, 1, 3, 1);
    ch(0, 1) = gq(2, 1);
    ch(1, 0) = gq(-1, 2, 5, 1);
    ch(1, 1) = conj_of(ch(0, 0));
    // force (1,0) to mirror (0,1)
    ch(1, 0) = conj_of(ch(0, 1));
    CHECK(ch.vee() == ch);
    CHECK(is_centrohermitian(matrix_to_cd(ch), 1e-14));

    auto bad = matrix_to_cd(ch);
    bad(0, 1) += CD(1e-3, 0);
    CHECK(!is_centrohermitian(bad, 1e-10));
}

TEST_CASE("deterministic double formatting") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-1.5) == "-1.5");
    // shortest round-trip representation
    double v = 0.1 + 0.2;
    CHECK(format_double(v) == "0.30000000000000004");
    CHECK(format_rational(mpq_class(-7, 3)) == "-7/3");
}
