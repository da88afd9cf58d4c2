// Python bindings for the main operations: family generation, moment tables,
// cubature rule construction, exactness verification, and the SVG plot.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <tuple>
#include <vector>

#include "cubature2d/cubature.hpp"
#include "cubature2d/io.hpp"

namespace py = pybind11;
using namespace c2d;

namespace {

CubatureRule build(int m, const std::string& a, const std::string& c, bool force,
                   bool exact) {
    RuleOptions opt;
    opt.force = force;
    opt.exact_structure = exact;
    return make_rule(m, parse_complex(a), parse_complex(c), opt);
}

py::dict rule_to_dict(const CubatureRule& rule) {
    py::list nodes, weights;
    for (const auto& nd : rule.nodes) nodes.append(py::make_tuple(nd[0], nd[1]));
    for (double w : rule.weights) weights.append(w);
    py::dict diag;
    diag["regime"] = rule.diag.regime;
    diag["forced"] = rule.diag.forced;
    if (rule.diag.posdef_fail_degree)
        diag["posdef_fail_degree"] = *rule.diag.posdef_fail_degree;
    else
        diag["posdef_fail_degree"] = py::none();
    diag["commutator_scaled"] = rule.diag.commutator_scaled;
    diag["max_joint_residual"] = rule.diag.max_joint_residual;
    diag["sum_weights"] = rule.diag.sum_weights;
    diag["min_weight"] = rule.diag.min_weight;
    diag["christoffel_max_rel"] = rule.diag.christoffel_max_rel;
    diag["max_qm_at_nodes_scaled"] = rule.diag.max_qm_at_nodes_scaled;
    py::dict d;
    d["m"] = rule.m;
    d["a"] = format_gq(rule.a);
    d["c"] = format_gq(rule.c);
    d["nodes"] = nodes;
    d["weights"] = weights;
    d["diagnostics"] = diag;
    return d;
}

std::string poly_to_string(const BivarPoly<GQ>& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [e, coef] : p.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + format_gq(coef) + ")";
        if (e.first) s += " z^" + std::to_string(e.first);
        if (e.second) s += " zb^" + std::to_string(e.second);
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() =
        "Bivariate orthogonal polynomial families from structured matrix pencils "
        "and Gaussian cubature rules of degree 2m-1";

    mod.def(
        "rule",
        [](int m, const std::string& a, const std::string& c, bool force, bool exact) {
            return rule_to_dict(build(m, a, c, force, exact));
        },
        py::arg("m"), py::arg("a") = "1", py::arg("c") = "1", py::arg("force") = false,
        py::arg("exact") = true,
        "Construct the degree-(2m-1) cubature rule; raises RuntimeError when the "
        "parameters fall outside the positive-definite regime.");

    mod.def(
        "verify_rule",
        [](int m, const std::string& a, const std::string& c) {
            GQ ga = parse_complex(a), gc = parse_complex(c);
            auto rule = make_rule(m, ga, gc);
            auto mu = build_moments<GQ>(2 * m - 1, ga, gc);
            return verify_exactness(rule, mu);
        },
        py::arg("m"), py::arg("a") = "1", py::arg("c") = "1",
        "Maximum relative quadrature error over all monomials of degree <= 2m-1.");

    mod.def(
        "moments",
        [](int degree, const std::string& a, const std::string& c) {
            auto mu = build_moments<GQ>(degree, parse_complex(a), parse_complex(c));
            std::vector<std::tuple<int, int, std::complex<double>>> out;
            for (int j = 0; j <= degree; ++j)
                for (int k = 0; j + k <= degree; ++k) out.emplace_back(j, k, mu.at(j, k).to_cd());
            return out;
        },
        py::arg("degree"), py::arg("a") = "1", py::arg("c") = "1",
        "Moment table of the orthogonality functional as (j, k, L(z^j zbar^k)).");

    mod.def(
        "family",
        [](const std::string& kind, int m_max, const std::string& a, const std::string& c) {
            PolyFamily<GQ> fam;
            if (kind == "q")
                fam = gen_Q<GQ>(m_max, parse_complex(a), parse_complex(c)).first;
            else if (kind == "p")
                fam = gen_P<GQ>(m_max, parse_complex(c));
            else if (kind == "u")
                fam = gen_chebyshev_U<GQ>(m_max);
            else
                throw UsageError("kind must be one of q, p, u");
            std::vector<std::tuple<int, int, std::string>> out;
            for (int m = 0; m <= m_max; ++m)
                for (int k = 0; k <= m; ++k) out.emplace_back(m, k, poly_to_string(fam.at(m, k)));
            return out;
        },
        py::arg("kind"), py::arg("m_max"), py::arg("a") = "1", py::arg("c") = "1",
        "Family table as (m, k, polynomial) with exact rational coefficients.");

    mod.def(
        "posdef_fail_degree",
        [](int n_max, const std::string& a, const std::string& c) -> py::object {
            auto r = posdef_probe<GQ>(n_max, parse_complex(a), parse_complex(c));
            if (r) return py::int_(*r);
            return py::none();
        },
        py::arg("n_max"), py::arg("a") = "1", py::arg("c") = "1",
        "First degree whose Gram matrix fails positive definiteness, or None.");

    mod.def(
        "svg_plot",
        [](int m, const std::string& a, const std::string& c) {
            GQ ga = parse_complex(a), gc = parse_complex(c);
            auto rule = make_rule(m, ga, gc);
            return svg_plot(rule, ga == gc);
        },
        py::arg("m"), py::arg("a") = "1", py::arg("c") = "1",
        "SVG scatter plot of the nodes (with the boundary curve when a = c).");

    mod.def("deltoid_g", &deltoid_g, py::arg("x"), py::arg("y"),
            "Boundary polynomial of the region; nonnegative inside.");
}
