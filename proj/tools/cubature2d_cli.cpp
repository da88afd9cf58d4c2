// Command-line front end: identity suites, family dumps, moment tables,
// node/weight generation, exactness verification, and SVG node plots.
//
// Exit codes: 0 success, 1 mathematical failure / regime refusal, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cubature2d/cubature.hpp"
#include "cubature2d/families.hpp"
#include "cubature2d/io.hpp"
#include "cubature2d/moments.hpp"
#include "cubature2d/pencil.hpp"

namespace {

using c2d::CD;
using c2d::GQ;
using c2d::ordered_json;

bool exact_mode_default() {
    const char* e = std::getenv("CUBATURE_EXACT");
    return !(e && std::string(e) == "0");
}

void write_output(const std::string& content, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw c2d::UsageError("cannot open output file: " + out);
    f << content;
}

int numeric_rank(const c2d::CMatrix<CD>& m, double tol = 1e-10) {
    Eigen::MatrixXcd e = c2d::to_eigen(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

c2d::CMatrix<CD> hstack(const c2d::CMatrix<CD>& a, const c2d::CMatrix<CD>& b) {
    c2d::CMatrix<CD> r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

c2d::CMatrix<CD> vstack(const c2d::CMatrix<CD>& a, const c2d::CMatrix<CD>& b) {
    c2d::CMatrix<CD> r(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

// ---------- identities ----------

struct CheckResult {
    std::string name, status, detail;
};

template <class K>
bool poly_equal(const c2d::BivarPoly<K>& p, const c2d::BivarPoly<K>& q, double tol) {
    if constexpr (std::is_same_v<K, GQ>) {
        (void)tol;
        return p == q;
    } else {
        double scale = std::max({1.0, p.max_coeff_abs(), q.max_coeff_abs()});
        return c2d::max_term_diff(p, q) <= tol * scale;
    }
}

template <class K>
bool matrix_equal(const c2d::CMatrix<K>& p, const c2d::CMatrix<K>& q, double tol) {
    if constexpr (std::is_same_v<K, GQ>) {
        (void)tol;
        return p == q;
    } else {
        double scale = std::max({1.0, p.max_abs(), q.max_abs()});
        return (p - q).max_abs() <= tol * scale;
    }
}

template <class K>
std::vector<CheckResult> run_identity_suite(int m_max, const K& a, const K& c,
                                            double tol) {
    std::vector<CheckResult> out;
    auto push = [&](const std::string& name, bool ok, const std::string& detail) {
        out.push_back({name, ok ? "pass" : "fail", detail});
    };

    auto [qfam, coeffs] = c2d::gen_Q<K>(m_max, a, c);
    auto pfam = c2d::gen_P<K>(m_max, c);

    {
        bool ok = true;
        std::string where;
        for (int m = 0; m <= m_max && ok; ++m)
            for (int k = 0; k <= m && ok; ++k)
                if (!poly_equal(c2d::q_via_determinant<K>(m, k, a, c), qfam.at(m, k), tol)) {
                    ok = false;
                    where = "m=" + std::to_string(m) + " k=" + std::to_string(k);
                }
        push("determinant_vs_recurrence", ok,
             ok ? "all 0<=k<=m<=" + std::to_string(m_max) : "first mismatch at " + where);
    }
    {
        bool ok = true;
        const K one = c2d::scalar_from_int<K>(1);
        for (int m = 0; m <= m_max && ok; ++m)
            for (int k = 0; k <= m && ok; ++k) {
                const auto& q = qfam.at(m, k);
                bool monic;
                if constexpr (std::is_same_v<K, GQ>) {
                    monic = q.coeff(m - k, k) == one;
                } else {
                    monic = c2d::abs_of(q.coeff(m - k, k) - one) <= tol;
                }
                ok = monic && q.degree() == m;
            }
        push("monic_leading_term_and_degree", ok, "leading z^(m-k) zbar^k coefficient 1");
    }
    {
        bool ok = true;
        for (int m = 0; m <= m_max && ok; ++m)
            for (int k = 0; k <= m && ok; ++k)
                ok = poly_equal(qfam.at(m, k).conj_reflect(), qfam.at(m, m - k), tol);
        push("conjugation_symmetry", ok, "conj_reflect(Q_k^m) = Q_{m-k}^m");
    }
    {
        bool ok = true;
        std::string where;
        for (int m = 0; m <= m_max && ok; ++m)
            for (int k = 0; k <= m && ok; ++k)
                if (!poly_equal(c2d::q_over_p_expand<K>(m, k, a, c, pfam), qfam.at(m, k),
                                tol)) {
                    ok = false;
                    where = "m=" + std::to_string(m) + " k=" + std::to_string(k);
                }
        push("q_over_p_expansion", ok,
             ok ? "Q_k^m rebuilt from the P-family" : "first mismatch at " + where);
    }
    {
        // Chebyshev reduction applies when c = conj(a)^3/|a|^2, i.e. c*a = conj(a)^2.
        const K want = c2d::conj_of(a) * c2d::conj_of(a), got = c * a;
        bool applicable;
        if constexpr (std::is_same_v<K, GQ>) {
            applicable = want == got;
        } else {
            applicable = c2d::abs_of(want - got) <= tol * (1.0 + c2d::abs_of(want));
        }
        if (!applicable) {
            out.push_back({"chebyshev_reduction", "skipped", "requires c = conj(a)^3/|a|^2"});
        } else {
            auto cheb = c2d::gen_chebyshev_U<K>(m_max);
            auto scaled = c2d::chebyshev_rescale<K>(pfam, a);
            bool ok = true;
            for (int m = 0; m <= m_max && ok; ++m)
                for (int k = 0; k <= m && ok; ++k)
                    ok = poly_equal(scaled.at(m, k), cheb.at(m, k), tol);
            push("chebyshev_reduction", ok, "rescaled P-family equals the Chebyshev table");
        }
    }

    auto mu = c2d::build_moments<K>(2 * m_max, a, c);
    auto grams = c2d::gram_sequence_from_moments(m_max, qfam, mu);
    {
        bool ok = true;
        std::string where;
        for (int n = 0; n <= m_max && ok; ++n)
            if (!matrix_equal(c2d::gram_closed<K>(n, a, c), grams.H[n], tol)) {
                ok = false;
                where = "n=" + std::to_string(n);
            }
        push("gram_closed_vs_moments", ok,
             ok ? "H_n closed form = moment route, n<=" + std::to_string(m_max)
                : "first mismatch at " + where);
    }
    if (m_max >= 3) {
        // det H_3 = |a|^2 alpha^2 |c|^6 · det H_2
        auto det = [&](const c2d::CMatrix<K>& h) {
            std::vector<std::vector<K>> m(h.rows(), std::vector<K>(h.cols()));
            for (int i = 0; i < h.rows(); ++i)
                for (int j = 0; j < h.cols(); ++j) m[i][j] = h(i, j);
            return c2d::det_numeric(std::move(m));
        };
        K alpha = c * c2d::conj_of(c) - (a - c) * c2d::conj_of(a - c);
        K cc = c * c2d::conj_of(c);
        K factor = a * c2d::conj_of(a) * alpha * alpha * cc * cc * cc;
        K lhs = det(grams.H[3]), rhs = factor * det(grams.H[2]);
        bool ok;
        if constexpr (std::is_same_v<K, GQ>) {
            ok = lhs == rhs;
        } else {
            ok = c2d::abs_of(lhs - rhs) <= tol * (1.0 + c2d::abs_of(rhs));
        }
        push("gram_det_ratio", ok, "det H_3 = |a|^2 alpha^2 |c|^6 det H_2");
    }
    {
        bool ok = true;
        for (int n = 1; n <= m_max && ok; ++n) {
            auto gm = c2d::gamma_consistency_matrix(n, coeffs, grams);
            auto [r1, r2] = c2d::band_identity_residuals(n, coeffs, grams);
            if constexpr (std::is_same_v<K, GQ>) {
                ok = gm.is_zero() && r1.is_zero() && r2.is_zero();
            } else {
                double scale = 1.0 + grams.H[n].max_abs();
                ok = gm.max_abs() <= tol * scale && r1.max_abs() <= tol * scale &&
                     r2.max_abs() <= tol * scale;
            }
        }
        push("gamma_and_gram_band_identities", ok,
             "gamma/Gram consistency and both transposed identities, n<=" +
                 std::to_string(m_max));
    }
    {
        bool ok = true;
        for (int j = 0; j <= 2 * m_max && ok; ++j)
            for (int k = 0; j + k <= 2 * m_max && ok; ++k) {
                if constexpr (std::is_same_v<K, GQ>) {
                    ok = mu.at(j, k) == mu.at(k, j).conj();
                } else {
                    ok = c2d::abs_of(mu.at(j, k) - c2d::conj_of(mu.at(k, j))) <=
                         tol * (1.0 + c2d::abs_of(mu.at(j, k)));
                }
            }
        push("moment_symmetry", ok, "mu[k][j] = conj(mu[j][k])");
    }
    {
        // The rank conditions are equivalent to quasi-definiteness of the
        // functional, so only test them where every H_n is nonsingular.
        int singular_at = -1;
        for (int n = 0; n <= m_max && singular_at < 0; ++n) {
            if (numeric_rank(c2d::matrix_to_cd(grams.H[n])) != n + 1) singular_at = n;
        }
        if (singular_at >= 0) {
            out.push_back({"recurrence_rank_conditions", "skipped",
                           "functional is not quasi-definite (H_n singular at n=" +
                               std::to_string(singular_at) + ")"});
        } else {
            bool ok = true;
            std::string where;
            for (int n = 0; n <= m_max && ok; ++n) {
                auto tt = c2d::three_term_coeffs<CD>(n, c2d::to_cd(a), c2d::to_cd(c));
                auto av = tt.alpha.vee();
                ok = numeric_rank(tt.alpha + av) == n + 1 &&
                     numeric_rank(tt.alpha - av) == n + 1 &&
                     numeric_rank(vstack(tt.alpha, av)) == n + 2;
                if (ok && n >= 1) {
                    auto gv = tt.gamma.vee();
                    ok = numeric_rank(tt.gamma + gv) == n && numeric_rank(tt.gamma - gv) == n &&
                         numeric_rank(hstack(tt.gamma, gv)) == n + 1;
                }
                if (!ok) where = "n=" + std::to_string(n);
            }
            push("recurrence_rank_conditions", ok,
                 ok ? "alpha/gamma rank conditions, n<=" + std::to_string(m_max)
                    : "violated at " + where);
        }
    }
    return out;
}

int cmd_identities(int m_max, const std::string& a_str, const std::string& c_str,
                   const std::string& out, double tol, bool exact) {
    GQ a = c2d::parse_complex(a_str), c = c2d::parse_complex(c_str);
    if (a.is_zero() || c.is_zero())
        throw c2d::UsageError("identities require nonzero a and c (degenerate parameters)");
    std::vector<CheckResult> checks;
    if (exact)
        checks = run_identity_suite<GQ>(m_max, a, c, 0.0);
    else
        checks = run_identity_suite<CD>(m_max, a.to_cd(), c.to_cd(), tol);
    ordered_json j;
    j["command"] = "identities";
    j["m_max"] = m_max;
    j["a"] = c2d::format_gq(a);
    j["c"] = c2d::format_gq(c);
    j["mode"] = exact ? "exact" : "float";
    j["checks"] = ordered_json::array();
    bool all = true;
    for (const auto& ck : checks) {
        j["checks"].push_back({{"name", ck.name}, {"status", ck.status}, {"detail", ck.detail}});
        all = all && ck.status != "fail";
    }
    j["all_pass"] = all;
    write_output(j.dump(2) + "\n", out);
    return all ? 0 : 1;
}

// ---------- family ----------

int cmd_family(int m_max, const std::string& kind, const std::string& a_str,
               const std::string& c_str, const std::string& format,
               const std::string& out) {
    GQ a = c2d::parse_complex(a_str), c = c2d::parse_complex(c_str);
    c2d::PolyFamily<GQ> fam;
    if (kind == "q") {
        fam = c2d::gen_Q<GQ>(m_max, a, c).first;
    } else if (kind == "p") {
        fam = c2d::gen_P<GQ>(m_max, c);
    } else if (kind == "u" || kind == "chebyshev") {
        fam = c2d::gen_chebyshev_U<GQ>(m_max);
    } else {
        throw c2d::UsageError("unknown family kind: " + kind + " (use q, p, or u)");
    }
    const char* kname = kind == "q" ? "Q" : (kind == "p" ? "P" : "chebyshevU");
    if (format == "json") {
        ordered_json j;
        j["command"] = "family";
        j["kind"] = kname;
        if (kind != "u" && kind != "chebyshev") {
            if (kind == "q") j["a"] = c2d::format_gq(a);
            j["c"] = c2d::format_gq(c);
        }
        j["m_max"] = m_max;
        j["table"] = ordered_json::array();
        for (int m = 0; m <= m_max; ++m)
            for (int k = 0; k <= m; ++k) {
                ordered_json e;
                e["m"] = m;
                e["k"] = k;
                e["terms"] = ordered_json::array();
                for (const auto& [ex, coef] : fam.at(m, k).terms())
                    e["terms"].push_back({{"zdeg", ex.first},
                                          {"zbardeg", ex.second},
                                          {"coeff", c2d::format_gq(coef)}});
                j["table"].push_back(std::move(e));
            }
        write_output(j.dump(2) + "\n", out);
    } else if (format == "csv") {
        std::string s;
        s += "# kind = " + std::string(kname) + "\n";
        if (kind == "q") s += "# a = " + c2d::format_gq(a) + "\n";
        if (kind != "u" && kind != "chebyshev") s += "# c = " + c2d::format_gq(c) + "\n";
        s += "m,k,zdeg,zbardeg,coeff_re,coeff_im\n";
        for (int m = 0; m <= m_max; ++m)
            for (int k = 0; k <= m; ++k)
                for (const auto& [ex, coef] : fam.at(m, k).terms())
                    s += std::to_string(m) + "," + std::to_string(k) + "," +
                         std::to_string(ex.first) + "," + std::to_string(ex.second) + "," +
                         c2d::format_rational(coef.re) + "," +
                         c2d::format_rational(coef.im) + "\n";
        write_output(s, out);
    } else {
        throw c2d::UsageError("family supports --format json|csv");
    }
    return 0;
}

// ---------- moments ----------

int cmd_moments(int degree, const std::string& a_str, const std::string& c_str,
                const std::string& format, const std::string& out, bool exact) {
    GQ a = c2d::parse_complex(a_str), c = c2d::parse_complex(c_str);
    if (format != "json" && format != "csv")
        throw c2d::UsageError("moments supports --format json|csv");
    if (exact) {
        auto mu = c2d::build_moments<GQ>(degree, a, c);
        if (format == "json") {
            ordered_json j;
            j["command"] = "moments";
            j["a"] = c2d::format_gq(a);
            j["c"] = c2d::format_gq(c);
            j["degree"] = degree;
            j["mode"] = "exact";
            j["mu"] = ordered_json::array();
            for (int jj = 0; jj <= degree; ++jj)
                for (int k = 0; jj + k <= degree; ++k)
                    j["mu"].push_back(
                        {{"j", jj}, {"k", k}, {"value", c2d::format_gq(mu.at(jj, k))}});
            write_output(j.dump(2) + "\n", out);
        } else {
            std::string s = "# a = " + c2d::format_gq(a) + "\n# c = " + c2d::format_gq(c) +
                            "\n# mode = exact\nj,k,re,im\n";
            for (int jj = 0; jj <= degree; ++jj)
                for (int k = 0; jj + k <= degree; ++k)
                    s += std::to_string(jj) + "," + std::to_string(k) + "," +
                         c2d::format_rational(mu.at(jj, k).re) + "," +
                         c2d::format_rational(mu.at(jj, k).im) + "\n";
            write_output(s, out);
        }
    } else {
        auto mu = c2d::build_moments<CD>(degree, a.to_cd(), c.to_cd());
        if (format == "json") {
            ordered_json j;
            j["command"] = "moments";
            j["a"] = c2d::format_gq(a);
            j["c"] = c2d::format_gq(c);
            j["degree"] = degree;
            j["mode"] = "float";
            j["mu"] = ordered_json::array();
            for (int jj = 0; jj <= degree; ++jj)
                for (int k = 0; jj + k <= degree; ++k)
                    j["mu"].push_back({{"j", jj},
                                       {"k", k},
                                       {"re", mu.at(jj, k).real()},
                                       {"im", mu.at(jj, k).imag()}});
            write_output(j.dump(2) + "\n", out);
        } else {
            std::string s = "# a = " + c2d::format_gq(a) + "\n# c = " + c2d::format_gq(c) +
                            "\n# mode = float\nj,k,re,im\n";
            for (int jj = 0; jj <= degree; ++jj)
                for (int k = 0; jj + k <= degree; ++k)
                    s += std::to_string(jj) + "," + std::to_string(k) + "," +
                         c2d::format_double(mu.at(jj, k).real()) + "," +
                         c2d::format_double(mu.at(jj, k).imag()) + "\n";
            write_output(s, out);
        }
    }
    return 0;
}

// ---------- nodes / plot / verify ----------

c2d::CubatureRule build_rule(int m, const std::string& a_str, const std::string& c_str,
                             bool force, bool exact) {
    GQ a = c2d::parse_complex(a_str), c = c2d::parse_complex(c_str);
    c2d::RuleOptions opt;
    opt.exact_structure = exact;
    opt.force = force;
    return c2d::make_rule(m, a, c, opt);
}

int cmd_nodes(int m, const std::string& a_str, const std::string& c_str,
              const std::string& format, const std::string& out, bool force, bool exact) {
    auto rule = build_rule(m, a_str, c_str, force, exact);
    if (format == "csv")
        write_output(c2d::emit_rule_csv(rule), out);
    else if (format == "json")
        write_output(c2d::emit_rule_json(rule), out);
    else
        throw c2d::UsageError("nodes supports --format csv|json");
    return 0;
}

int cmd_plot(int m, const std::string& a_str, const std::string& c_str,
             const std::string& out, bool force, bool exact) {
    GQ a = c2d::parse_complex(a_str), c = c2d::parse_complex(c_str);
    auto rule = build_rule(m, a_str, c_str, force, exact);
    bool overlay = a == c;  // boundary curve is only known in the a = c case
    write_output(c2d::svg_plot(rule, overlay), out);
    return 0;
}

int cmd_verify(int m, const std::string& a_str, const std::string& c_str,
               const std::string& out, bool force, bool exact, double tol_exactness,
               double tol_commutator, double tol_joint) {
    GQ a = c2d::parse_complex(a_str), c = c2d::parse_complex(c_str);
    auto rule = build_rule(m, a_str, c_str, force, exact);
    double max_err;
    if (exact) {
        auto mu = c2d::build_moments<GQ>(2 * m - 1, a, c);
        max_err = c2d::verify_exactness(rule, mu);
    } else {
        auto mu = c2d::build_moments<CD>(2 * m - 1, a.to_cd(), c.to_cd());
        max_err = c2d::verify_exactness(rule, mu);
    }
    bool pass = max_err <= tol_exactness &&
                rule.diag.commutator_scaled <= tol_commutator &&
                rule.diag.max_joint_residual <= tol_joint && rule.diag.min_weight > 0.0 &&
                std::abs(rule.diag.sum_weights - 1.0) <= 1e-12 &&
                int(rule.nodes.size()) == m * (m + 1) / 2;
    ordered_json j;
    j["command"] = "cubature-verify";
    j["m"] = rule.m;
    j["a"] = c2d::format_gq(rule.a);
    j["c"] = c2d::format_gq(rule.c);
    j["node_count"] = rule.nodes.size();
    j["max_rel_exactness_error"] = max_err;
    j["commutator_scaled"] = rule.diag.commutator_scaled;
    j["max_joint_residual"] = rule.diag.max_joint_residual;
    j["min_weight"] = rule.diag.min_weight;
    j["sum_weights_minus_1"] = rule.diag.sum_weights - 1.0;
    j["diagnostics"] = c2d::diagnostics_json(rule.diag);
    j["pass"] = pass;
    write_output(j.dump(2) + "\n", out);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Bivariate orthogonal polynomial families from structured matrix pencils,\n"
        "their common zeros, and Gaussian cubature rules of degree 2m-1."};
    app.require_subcommand(1);

    std::string a_str = "1", c_str = "1", format, out, kind = "q";
    int m = 1, m_max = 6;
    bool force = false;
    bool exact = exact_mode_default();
    double tol_float = 1e-10, tol_exactness = 1e-8, tol_commutator = 1e-10,
           tol_joint = 1e-9;

    std::function<int()> run;

    auto* cid = app.add_subcommand("identities", "run the exact identity suites");
    cid->add_option("--m-max", m_max, "max degree for the suites")->default_val(6);
    cid->add_option("--a", a_str, "parameter a (complex literal)")->default_val("1");
    cid->add_option("--c", c_str, "parameter c (complex literal)")->default_val("1");
    cid->add_option("--out", out, "output path (default stdout)");
    cid->add_option("--tol-float", tol_float, "tolerance for float mode")->default_val(1e-10);
    cid->add_flag("--float", [&exact](std::int64_t) { exact = false; },
                  "force float mode (default from CUBATURE_EXACT)");
    cid->callback([&] { run = [&] { return cmd_identities(m_max, a_str, c_str, out, tol_float, exact); }; });

    auto* cfam = app.add_subcommand("family", "dump a polynomial family table");
    cfam->add_option("--m-max", m_max, "max degree")->default_val(6);
    cfam->add_option("--kind", kind, "q | p | u (chebyshev)")->default_val("q");
    cfam->add_option("--a", a_str, "parameter a")->default_val("1");
    cfam->add_option("--c", c_str, "parameter c")->default_val("1");
    cfam->add_option("--format", format, "json | csv")->default_val("json");
    cfam->add_option("--out", out, "output path (default stdout)");
    cfam->callback([&] { run = [&] { return cmd_family(m_max, kind, a_str, c_str, format, out); }; });

    auto* cmom = app.add_subcommand("moments", "print the moment table of L");
    cmom->add_option("--m-max", m_max, "max total degree j+k")->default_val(8);
    cmom->add_option("--a", a_str, "parameter a")->default_val("1");
    cmom->add_option("--c", c_str, "parameter c")->default_val("1");
    cmom->add_option("--format", format, "json | csv")->default_val("json");
    cmom->add_option("--out", out, "output path (default stdout)");
    cmom->add_flag("--float", [&exact](std::int64_t) { exact = false; },
                   "force float mode (default from CUBATURE_EXACT)");
    cmom->callback([&] { run = [&] { return cmd_moments(m_max, a_str, c_str, format, out, exact); }; });

    auto* cnod = app.add_subcommand("nodes", "compute cubature nodes and weights");
    cnod->add_option("--m", m, "degree parameter m")->required();
    cnod->add_option("--a", a_str, "parameter a")->default_val("1");
    cnod->add_option("--c", c_str, "parameter c")->default_val("1");
    cnod->add_option("--format", format, "csv | json")->default_val("csv");
    cnod->add_option("--out", out, "output path (default stdout)");
    cnod->add_flag("--force", force, "emit even when the regime probe fails (marked)");
    cnod->callback([&] { run = [&] { return cmd_nodes(m, a_str, c_str, format, out, force, exact); }; });

    auto* cver = app.add_subcommand("cubature-verify", "build a rule and verify exactness");
    cver->add_option("--m", m, "degree parameter m")->required();
    cver->add_option("--a", a_str, "parameter a")->default_val("1");
    cver->add_option("--c", c_str, "parameter c")->default_val("1");
    cver->add_option("--out", out, "output path (default stdout)");
    cver->add_option("--tol-exactness", tol_exactness, "relative exactness tolerance")
        ->default_val(1e-8);
    cver->add_option("--tol-commutator", tol_commutator, "scaled commutator tolerance")
        ->default_val(1e-10);
    cver->add_option("--tol-joint", tol_joint, "joint eigenvector residual tolerance")
        ->default_val(1e-9);
    cver->add_flag("--force", force, "verify even when the regime probe fails");
    cver->callback([&] {
        run = [&] {
            return cmd_verify(m, a_str, c_str, out, force, exact, tol_exactness,
                              tol_commutator, tol_joint);
        };
    });

    auto* cplt = app.add_subcommand("plot", "SVG scatter plot of the nodes");
    cplt->add_option("--m", m, "degree parameter m")->required();
    cplt->add_option("--a", a_str, "parameter a")->default_val("1");
    cplt->add_option("--c", c_str, "parameter c")->default_val("1");
    cplt->add_option("--out", out, "output path (default stdout)");
    cplt->add_flag("--force", force, "plot even when the regime probe fails");
    cplt->callback([&] { run = [&] { return cmd_plot(m, a_str, c_str, out, force, exact); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return run();
    } catch (const c2d::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const c2d::RegimeRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
