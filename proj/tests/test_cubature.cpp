#include "doctest.h"

#include <cmath>

#include "cubature2d/cubature.hpp"
#include "cubature2d/io.hpp"

using namespace c2d;

namespace {
GQ gq(long rn, long rd, long in = 0, long id = 1) { return GQ::from_rationals(rn, rd, in, id); }
}  // namespace

TEST_CASE("orthonormalized recurrence satisfies the adjoint relation") {
    GQ a = gq(1, 1), c = gq(1, 1);
    const int m = 8;
    auto [fam, coeffs] = gen_Q<GQ>(m, a, c);
    auto mu = build_moments<GQ>(2 * m, a, c);
    auto grams = gram_sequence_from_moments(m, fam, mu);

    std::vector<ThreeTermCoeffs<CD>> ccd;
    for (const auto& t : coeffs) {
        ThreeTermCoeffs<CD> tc;
        tc.m = t.m;
        tc.alpha = matrix_to_cd(t.alpha);
        tc.beta = matrix_to_cd(t.beta);
        tc.gamma = matrix_to_cd(t.gamma);
        ccd.push_back(tc);
    }
    auto onc = orthonormalize(ccd, grams_to_cd(grams), m);
    CHECK(onc.adjoint_residual <= 1e-11);

    // orthonormalized alpha and beta have norm-constant structure for n >= 2:
    // the tilde-coefficients of a fixed parameter pair stabilize
    for (int n = 2; n + 1 < m; ++n) {
        double cur = onc.alpha_t[n].max_abs(), nxt = onc.alpha_t[n + 1].max_abs();
        CHECK(std::abs(cur - nxt) <= 1e-9 * (1.0 + cur));
    }
}

TEST_CASE("jacobi pair is symmetric, banded, and nearly commuting") {
    auto rule_opts = RuleOptions{};
    GQ a = gq(1, 1), c = gq(1, 1);
    const int m = 6;
    auto [fam, coeffs] = gen_Q<GQ>(m, a, c);
    auto mu = build_moments<GQ>(2 * m, a, c);
    auto grams = gram_sequence_from_moments(m, fam, mu);
    std::vector<ThreeTermCoeffs<CD>> ccd;
    for (const auto& t : coeffs) {
        ThreeTermCoeffs<CD> tc;
        tc.m = t.m;
        tc.alpha = matrix_to_cd(t.alpha);
        tc.beta = matrix_to_cd(t.beta);
        tc.gamma = matrix_to_cd(t.gamma);
        ccd.push_back(tc);
    }
    auto onc = orthonormalize(ccd, grams_to_cd(grams), m);
    auto jp = build_jacobi(m, onc);

    const int N = m * (m + 1) / 2;
    CHECK(jp.N == N);
    CHECK(jp.T1.rows() == N);
    CHECK(jp.T2.rows() == N);
    CHECK((jp.T1 - jp.T1.transpose()).cwiseAbs().maxCoeff() == 0.0);  // symmetrized
    CHECK((jp.T2 - jp.T2.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(jp.build_residual <= 1e-12);
    CHECK(jp.scaled_commutator() <= 1e-10);
    (void)rule_opts;
}

TEST_CASE("rule at the self-adjoint point reproduces the classical pattern") {
    auto rule = make_rule(4, gq(1, 1), gq(1, 1));
    REQUIRE(rule.nodes.size() == 10);
    CHECK(rule.diag.regime == "gaussian-valid");
    CHECK(!rule.diag.posdef_fail_degree.has_value());

    double sum = 0.0;
    for (double w : rule.weights) {
        CHECK(w > 0.0);
        sum += w;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    // nodes sit inside the (three times dilated) deltoid
    for (const auto& nd : rule.nodes)
        CHECK(deltoid_g(nd[0] / 3.0, nd[1] / 3.0) >= -1e-9);

    // nodes are sorted lexicographically
    for (size_t i = 1; i < rule.nodes.size(); ++i) {
        const auto& p = rule.nodes[i - 1];
        const auto& q = rule.nodes[i];
        CHECK((p[0] < q[0] || (p[0] == q[0] && p[1] <= q[1])));
    }

    // degree-1 rule collapses to the single moment point
    auto tiny = make_rule(1, gq(1, 1), gq(1, 1));
    REQUIRE(tiny.nodes.size() == 1);
    CHECK(std::abs(tiny.nodes[0][0]) <= 1e-14);
    CHECK(std::abs(tiny.nodes[0][1]) <= 1e-14);
    CHECK(std::abs(tiny.weights[0] - 1.0) <= 1e-14);
}

TEST_CASE("rule is exact for all polynomials below twice the degree") {
    for (long anum : {1L, 3L}) {
        GQ a = gq(anum, 2), c = gq(1, 1);  // a = 1/2 and 3/2
        auto rule = make_rule(5, a, c);
        REQUIRE(rule.nodes.size() == 15);
        auto mu = build_moments<GQ>(9, a, c);
        CHECK(verify_exactness(rule, mu) <= 1e-9);
        CHECK(rule.diag.christoffel_max_rel <= 1e-8);
        CHECK(rule.diag.max_qm_at_nodes_scaled <= 1e-10);
        CHECK(rule.diag.min_node_separation > 1e-3);
    }
}

TEST_CASE("float structural mode agrees with the exact one") {
    RuleOptions opt;
    opt.exact_structure = false;
    auto rf = make_rule(5, gq(3, 2), gq(1, 1), opt);
    auto re = make_rule(5, gq(3, 2), gq(1, 1));
    REQUIRE(rf.nodes.size() == re.nodes.size());
    for (size_t i = 0; i < re.nodes.size(); ++i) {
        CHECK(std::abs(rf.nodes[i][0] - re.nodes[i][0]) <= 1e-9);
        CHECK(std::abs(rf.nodes[i][1] - re.nodes[i][1]) <= 1e-9);
        CHECK(std::abs(rf.weights[i] - re.weights[i]) <= 1e-9);
    }
}

TEST_CASE("regime refusal and forcing") {
    CHECK_THROWS_AS(make_rule(8, gq(5, 2), gq(1, 1)), RegimeRefusal);
    try {
        make_rule(8, gq(5, 2), gq(1, 1));
    } catch (const RegimeRefusal& e) {
        CHECK(e.degree == 2);
    }
    CHECK_THROWS_AS(make_rule(3, GQ{}, gq(1, 1)), UsageError);

    // forcing emits a (non-gaussian) point set, clearly marked
    RuleOptions opt;
    opt.force = true;
    auto forced = make_rule(4, gq(5, 2), gq(1, 1), opt);
    CHECK(forced.diag.forced);
    REQUIRE(forced.diag.posdef_fail_degree.has_value());
    CHECK(*forced.diag.posdef_fail_degree == 2);
}

TEST_CASE("deltoid region function") {
    CHECK(deltoid_g(0.0, 0.0) > 0.0);
    CHECK(deltoid_g(1.0, 0.0) == doctest::Approx(0.0));    // cusp
    CHECK(deltoid_g(-0.5, std::sqrt(3.0) / 2) == doctest::Approx(0.0));
    CHECK(deltoid_g(1.2, 0.0) < 0.0);
    CHECK(deltoid_g(-1.0, 0.0) < 0.0);
}

TEST_CASE("csv and json round trips") {
    auto rule = make_rule(4, gq(3, 2), gq(1, 1));

    auto csv = emit_rule_csv(rule);
    auto parsed = parse_rule_csv(csv);
    CHECK(parsed.m == 4);
    CHECK(parsed.a == "3/2");
    CHECK(parsed.c == "1");
    REQUIRE(parsed.nodes.size() == rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(parsed.nodes[i][0] == rule.nodes[i][0]);  // exact: shortest round-trip
        CHECK(parsed.nodes[i][1] == rule.nodes[i][1]);
        CHECK(parsed.weights[i] == rule.weights[i]);
    }

    auto js = emit_rule_json(rule);
    auto j = nlohmann::json::parse(js);
    CHECK(j["m"] == 4);
    CHECK(j["nodes"].size() == 10);
    CHECK(j["weights"].size() == 10);
    CHECK(j["diagnostics"]["regime"] == "gaussian-valid");

    auto svg = svg_plot(rule, true);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    size_t circles = 0;
    for (size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1))
        ++circles;
    CHECK(circles == 10);
    CHECK(svg.find("polyline") != std::string::npos);

    // without the boundary overlay there is no curve
    auto svg2 = svg_plot(rule, false);
    CHECK(svg2.find("polyline") == std::string::npos);
}
