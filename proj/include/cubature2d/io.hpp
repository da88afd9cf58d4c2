#pragma once

// Parsing of exact complex literals, deterministic number formatting, and the
// CSV / JSON / SVG emitters shared by the CLI and the tests.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "cubature2d/cubature.hpp"
#include "cubature2d/scalar.hpp"

#include "nlohmann/json.hpp"

namespace c2d {

using ordered_json = nlohmann::ordered_json;

// Shortest round-trip decimal form; deterministic for identical doubles.
inline std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

inline std::string format_rational(const mpq_class& q) { return q.get_str(); }

// Canonical complex literal: "RE" when imag = 0, else "RE+IMi"/"RE-IMi".
inline std::string format_gq(const GQ& v) {
    std::string s = format_rational(v.re);
    if (v.im != 0) {
        mpq_class ai = abs(v.im);
        s += (v.im > 0 ? "+" : "-");
        s += ai.get_str() + "i";
    }
    return s;
}

namespace detail {

// "3", "-3/2", "1.25", ".5" -> exact rational; throws UsageError.
inline mpq_class parse_rational_literal(const std::string& s) {
    if (s.empty()) throw UsageError("empty numeric literal");
    size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
        neg = s[pos] == '-';
        ++pos;
    }
    if (pos >= s.size()) throw UsageError("malformed numeric literal: '" + s + "'");
    auto digits_only = [](const std::string& t) {
        if (t.empty()) return false;
        for (char ch : t)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    std::string body = s.substr(pos);
    mpq_class v;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den) || den.find_first_not_of('0') == std::string::npos)
            throw UsageError("malformed rational literal: '" + s + "'");
        v = mpq_class(mpz_class(num), mpz_class(den));
        v.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw UsageError("malformed decimal literal: '" + s + "'");
        if ((!ip.empty() && !digits_only(ip)) || (!fp.empty() && !digits_only(fp)))
            throw UsageError("malformed decimal literal: '" + s + "'");
        mpz_class scale = 1;
        for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
        mpz_class whole(ip.empty() ? std::string("0") : ip);
        mpz_class frac(fp.empty() ? std::string("0") : fp);
        v = mpq_class(whole * scale + frac, scale);
        v.canonicalize();
    } else {
        if (!digits_only(body)) throw UsageError("malformed integer literal: '" + s + "'");
        v = mpq_class(mpz_class(body));
    }
    return neg ? mpq_class(-v) : v;
}

}  // namespace detail

// Complex literal grammar: "RE", "RE+IMi", "RE-IMi" (also pure-imaginary
// "IMi"), with RE/IM decimal or rational ("3/2"). Spaces are ignored.
inline GQ parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw UsageError("empty complex literal");
    bool has_i = s.back() == 'i' || s.back() == 'I';
    if (!has_i) return GQ(detail::parse_rational_literal(s));
    s.pop_back();
    // split at the last '+'/'-' that is not the leading sign and not after '/'
    size_t split = std::string::npos;
    for (size_t p = s.size(); p-- > 1;) {
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != '/' && s[p - 1] != '.' &&
            s[p - 1] != '+' && s[p - 1] != '-') {
            split = p;
            break;
        }
    }
    if (split == std::string::npos) {
        // pure imaginary: "i", "-i", "2i", "3/2i"
        std::string im = s;
        if (im.empty() || im == "+") im = "1";
        else if (im == "-") im = "-1";
        return GQ(mpq_class(0), detail::parse_rational_literal(im));
    }
    std::string re = s.substr(0, split);
    std::string im = s.substr(split);
    if (im == "+") im = "1";
    else if (im == "-") im = "-1";
    return GQ(detail::parse_rational_literal(re), detail::parse_rational_literal(im));
}

// ---- rule emitters ----

inline ordered_json diagnostics_json(const RuleDiagnostics& d) {
    ordered_json j;
    j["regime"] = d.regime;
    j["forced"] = d.forced;
    if (d.posdef_fail_degree) j["posdef_fail_degree"] = *d.posdef_fail_degree;
    j["adjoint_residual"] = d.adjoint_residual;
    j["jacobi_build_residual"] = d.jacobi_build_residual;
    j["commutator_scaled"] = d.commutator_scaled;
    j["max_joint_residual"] = d.max_joint_residual;
    j["sum_weights"] = d.sum_weights;
    j["min_weight"] = d.min_weight;
    j["min_node_separation"] = d.min_node_separation;
    j["node_diameter"] = d.node_diameter;
    j["christoffel_max_rel"] = d.christoffel_max_rel;
    j["max_qm_at_nodes_scaled"] = d.max_qm_at_nodes_scaled;
    return j;
}

inline std::string emit_rule_json(const CubatureRule& rule) {
    ordered_json j;
    j["m"] = rule.m;
    j["a"] = format_gq(rule.a);
    j["c"] = format_gq(rule.c);
    j["nodes"] = ordered_json::array();
    for (const auto& nd : rule.nodes) j["nodes"].push_back({nd[0], nd[1]});
    j["weights"] = rule.weights;
    j["diagnostics"] = diagnostics_json(rule.diag);
    return j.dump(2) + "\n";
}

inline std::string emit_rule_csv(const CubatureRule& rule) {
    std::string out;
    out += "# m = " + std::to_string(rule.m) + "\n";
    out += "# a = " + format_gq(rule.a) + "\n";
    out += "# c = " + format_gq(rule.c) + "\n";
    out += "# regime = " + rule.diag.regime + "\n";
    out += "# forced = " + std::string(rule.diag.forced ? "1" : "0") + "\n";
    out += "# node_count = " + std::to_string(rule.nodes.size()) + "\n";
    out += "# sum_weights = " + format_double(rule.diag.sum_weights) + "\n";
    out += "# max_joint_residual = " + format_double(rule.diag.max_joint_residual) + "\n";
    out += "# commutator_scaled = " + format_double(rule.diag.commutator_scaled) + "\n";
    out += "x,y,weight\n";
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        out += format_double(rule.nodes[i][0]) + "," + format_double(rule.nodes[i][1]) +
               "," + format_double(rule.weights[i]) + "\n";
    return out;
}

struct ParsedRule {
    int m = 0;
    std::string a, c;
    std::vector<std::array<double, 2>> nodes;
    std::vector<double> weights;
};

inline ParsedRule parse_rule_csv(const std::string& text) {
    ParsedRule r;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string t) {
                size_t b = t.find_first_not_of(" #");
                size_t e = t.find_last_not_of(" \r");
                return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
            };
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key == "m") r.m = std::stoi(val);
            else if (key == "a") r.a = val;
            else if (key == "c") r.c = val;
            continue;
        }
        if (!header_seen) {
            if (line.rfind("x,y,weight", 0) != 0)
                throw UsageError("rule CSV missing x,y,weight header");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string fx, fy, fw;
        if (!std::getline(row, fx, ',') || !std::getline(row, fy, ',') ||
            !std::getline(row, fw, ','))
            throw UsageError("rule CSV row malformed: '" + line + "'");
        r.nodes.push_back({std::stod(fx), std::stod(fy)});
        r.weights.push_back(std::stod(fw));
    }
    if (!header_seen) throw UsageError("rule CSV has no header row");
    return r;
}

// ---- SVG ----

// Fixed 640×640 canvas; node markers plus, when a = c, the deltoid boundary
// t ↦ 2e^{it} + e^{−2it} sampled at 361 angles.
inline std::string svg_plot(const CubatureRule& rule, bool overlay_deltoid) {
    const double W = 640.0, H = 640.0;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto grow = [&](double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    std::vector<std::array<double, 2>> curve;
    if (overlay_deltoid) {
        const double pi = 3.14159265358979323846;
        for (int k = 0; k <= 360; ++k) {
            double t = 2.0 * pi * double(k) / 360.0;
            double x = 2.0 * std::cos(t) + std::cos(2.0 * t);
            double y = 2.0 * std::sin(t) - std::sin(2.0 * t);
            curve.push_back({x, y});
            grow(x, y);
        }
    }
    for (const auto& nd : rule.nodes) grow(nd[0], nd[1]);
    if (xmin > xmax) {  // no geometry at all
        xmin = ymin = -1.0;
        xmax = ymax = 1.0;
    }
    double spanx = std::max(xmax - xmin, 1e-9), spany = std::max(ymax - ymin, 1e-9);
    double span = std::max(spanx, spany) * 1.16;
    double cx = (xmin + xmax) / 2.0, cy = (ymin + ymax) / 2.0;
    double scale = W / span;
    auto px = [&](double x) { return (x - cx) * scale + W / 2.0; };
    auto py = [&](double y) { return H / 2.0 - (y - cy) * scale; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
         "height=\"640\" viewBox=\"0 0 640 640\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"12\" y=\"22\" font-family=\"monospace\" font-size=\"14\" "
         "fill=\"#111111\">m=" +
         std::to_string(rule.m) + " a=" + format_gq(rule.a) + " c=" + format_gq(rule.c) +
         " nodes=" + std::to_string(rule.nodes.size()) + "</text>\n";
    if (!curve.empty()) {
        s += "<polyline fill=\"none\" stroke=\"#b91c1c\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < curve.size(); ++i) {
            if (i) s += " ";
            s += format_double(px(curve[i][0])) + "," + format_double(py(curve[i][1]));
        }
        s += "\"/>\n";
    }
    for (const auto& nd : rule.nodes)
        s += "<circle cx=\"" + format_double(px(nd[0])) + "\" cy=\"" +
             format_double(py(nd[1])) + "\" r=\"4\" fill=\"#1d4ed8\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace c2d
