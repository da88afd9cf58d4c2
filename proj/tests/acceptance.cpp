// Acceptance suite: end-to-end checks of the library against its contract.
// Each criterion prints exactly one [PASS]/[FAIL] line; the binary exits
// nonzero if any criterion fails. All checks are always-on (never compiled
// out in Release).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cubature2d/cubature.hpp"
#include "cubature2d/families.hpp"
#include "cubature2d/io.hpp"
#include "cubature2d/moments.hpp"
#include "cubature2d/pencil.hpp"

namespace {

using namespace c2d;

GQ gq(long rn, long rd, long in = 0, long id = 1) { return GQ::from_rationals(rn, rd, in, id); }

bool g_all_ok = true;

double run_criterion(int idx, const std::string& what,
                     const std::function<bool(std::string&)>& body) {
    using clock = std::chrono::steady_clock;
    std::string detail;
    bool ok = false;
    auto t0 = clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << what;
    if (!detail.empty()) std::cout << " -- " << detail;
    char buf[48];
    std::snprintf(buf, sizeof buf, " (%.2fs)", secs);
    std::cout << buf << "\n";
    if (!ok) g_all_ok = false;
    return secs;
}

const std::vector<std::pair<GQ, GQ>> kFourParams = {
    {gq(1, 1), gq(1, 1)},
    {gq(2, 1), gq(1, 1)},
    {gq(3, 2), gq(1, 1)},
    {gq(1, 1, 1, 1), gq(-1, 1, -1, 1)},
};

bool check_rule(int m, const GQ& a, const GQ& c, double tol_exact, std::string& detail,
                bool deltoid) {
    auto rule = make_rule(m, a, c);
    const int want = m * (m + 1) / 2;
    if (int(rule.nodes.size()) != want) {
        detail = "expected " + std::to_string(want) + " nodes, got " +
                 std::to_string(rule.nodes.size());
        return false;
    }
    if (rule.diag.commutator_scaled > 1e-10) {
        detail = "scaled commutator " + std::to_string(rule.diag.commutator_scaled);
        return false;
    }
    double sum = 0.0;
    for (double w : rule.weights) {
        if (!(w > 0.0)) {
            detail = "nonpositive weight " + std::to_string(w);
            return false;
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        detail = "weights sum to " + format_double(sum);
        return false;
    }
    // all nodes real and distinct
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        if (!std::isfinite(rule.nodes[i][0]) || !std::isfinite(rule.nodes[i][1])) {
            detail = "non-finite node";
            return false;
        }
        for (size_t j = i + 1; j < rule.nodes.size(); ++j) {
            double dx = rule.nodes[i][0] - rule.nodes[j][0];
            double dy = rule.nodes[i][1] - rule.nodes[j][1];
            if (std::hypot(dx, dy) < 1e-8) {
                detail = "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide";
                return false;
            }
        }
    }
    auto mu = build_moments<GQ>(2 * m - 1, a, c);
    double err = verify_exactness(rule, mu);
    if (err > tol_exact) {
        detail = "exactness error " + format_double(err) + " over degree <= " +
                 std::to_string(2 * m - 1);
        return false;
    }
    if (deltoid) {
        for (const auto& nd : rule.nodes)
            if (deltoid_g(nd[0] / 3.0, nd[1] / 3.0) < -1e-9) {
                detail = "node (" + format_double(nd[0]) + ", " + format_double(nd[1]) +
                         ") leaves the dilated deltoid";
                return false;
            }
    }
    // common-zero certificate: every degree-m family member vanishes at
    // every node relative to its own coefficient scale
    auto fam = family_to_cd(gen_Q<GQ>(m, a, c).first);
    for (int k = 0; k <= m; ++k) {
        const auto& q = fam.at(m, k);
        double scale = q.max_coeff_abs();
        for (const auto& nd : rule.nodes) {
            double v = std::abs(q.eval(CD(nd[0], nd[1])));
            if (v > 1e-8 * scale) {
                detail = "member k=" + std::to_string(k) + " of degree " + std::to_string(m) +
                         " is " + format_double(v) + " at a node (scale " +
                         format_double(scale) + ")";
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    double t1 = run_criterion(1, "determinant route equals the recurrence route, all 0<=k<=m<=7", [](std::string& detail) {
        for (const auto& [a, c] : kFourParams) {
            auto fam = gen_Q<GQ>(7, a, c).first;
            for (int m = 0; m <= 7; ++m)
                for (int k = 0; k <= m; ++k)
                    if (!(q_via_determinant<GQ>(m, k, a, c) == fam.at(m, k))) {
                        detail = "mismatch at a=" + format_gq(a) + " c=" + format_gq(c) +
                                 " m=" + std::to_string(m) + " k=" + std::to_string(k);
                        return false;
                    }
        }
        return true;
    });
    if (t1 >= 60.0) {
        std::cout << "[FAIL] criterion 1 exceeded its 60 s budget\n";
        g_all_ok = false;
    }

    run_criterion(2, "column-deleted determinants expand over the base family", [](std::string& detail) {
        for (const auto& [a, c] : kFourParams) {
            auto pfam = gen_P<GQ>(7, c);
            auto qfam = gen_Q<GQ>(7, a, c).first;
            for (int m = 0; m <= 7; ++m)
                for (int k = 0; k <= m; ++k)
                    if (!(q_over_p_expand<GQ>(m, k, a, c, pfam) == qfam.at(m, k))) {
                        detail = "mismatch at a=" + format_gq(a) + " c=" + format_gq(c) +
                                 " m=" + std::to_string(m) + " k=" + std::to_string(k);
                        return false;
                    }
        }
        return true;
    });

    run_criterion(3, "chebyshev reduction at a=c=1 and at a=1+1i, exactly", [](std::string& detail) {
        auto u = gen_chebyshev_U<GQ>(10);
        {
            auto scaled = chebyshev_rescale<GQ>(gen_P<GQ>(10, gq(1, 1)), gq(1, 1));
            for (int m = 0; m <= 10; ++m)
                for (int k = 0; k <= m; ++k)
                    if (!(scaled.at(m, k) == u.at(m, k))) {
                        detail = "a=c=1 mismatch at m=" + std::to_string(m) + " k=" + std::to_string(k);
                        return false;
                    }
        }
        {
            GQ a = gq(1, 1, 1, 1), c = gq(-1, 1, -1, 1);
            auto scaled = chebyshev_rescale<GQ>(gen_P<GQ>(10, c), a);
            for (int m = 0; m <= 10; ++m)
                for (int k = 0; k <= m; ++k)
                    if (!(scaled.at(m, k) == u.at(m, k))) {
                        detail = "a=1+1i mismatch at m=" + std::to_string(m) + " k=" + std::to_string(k);
                        return false;
                    }
        }
        return true;
    });

    run_criterion(4, "gram closed form equals the moment route, n<=8, plus the det ratio", [](std::string& detail) {
        const std::vector<std::pair<GQ, GQ>> params = {
            {gq(1, 1), gq(1, 1)}, {gq(3, 2), gq(1, 1)}, {gq(1, 2), gq(1, 1)}};
        for (const auto& [a, c] : params) {
            auto fam = gen_Q<GQ>(8, a, c).first;
            auto mu = build_moments<GQ>(16, a, c);
            std::vector<CMatrix<GQ>> H;
            for (int n = 0; n <= 8; ++n) {
                H.push_back(gram_from_moments<GQ>(n, fam, mu));
                if (!(gram_closed<GQ>(n, a, c) == H.back())) {
                    detail = "a=" + format_gq(a) + " n=" + std::to_string(n);
                    return false;
                }
            }
            auto det = [](const CMatrix<GQ>& h) {
                std::vector<std::vector<GQ>> m(h.rows(), std::vector<GQ>(h.cols()));
                for (int i = 0; i < h.rows(); ++i)
                    for (int j = 0; j < h.cols(); ++j) m[i][j] = h(i, j);
                return det_numeric(std::move(m));
            };
            GQ alpha = c * conj_of(c) - (a - c) * conj_of(a - c);
            GQ cc = c * conj_of(c);
            GQ factor = a * conj_of(a) * alpha * alpha * cc * cc * cc;
            if (!(det(H[3]) == factor * det(H[2]))) {
                detail = "det ratio fails at a=" + format_gq(a);
                return false;
            }
        }
        return true;
    });

    run_criterion(5, "band consistency identities between grams and the recurrence, n<=8", [](std::string& detail) {
        for (const auto& [a, c] : kFourParams) {
            auto [fam, coeffs] = gen_Q<GQ>(8, a, c);
            auto mu = build_moments<GQ>(16, a, c);
            auto grams = gram_sequence_from_moments(8, fam, mu);
            for (int n = 1; n <= 8; ++n) {
                auto gm = gamma_consistency_matrix(n, coeffs, grams);
                auto [r1, r2] = band_identity_residuals(n, coeffs, grams);
                if (!gm.is_zero() || !r1.is_zero() || !r2.is_zero()) {
                    detail = "residual nonzero at a=" + format_gq(a) + " n=" + std::to_string(n);
                    return false;
                }
            }
        }
        return true;
    });

    double t6 = run_criterion(6, "gaussian rules at the self-adjoint point, m=4 and m=8", [](std::string& detail) {
        for (int m : {4, 8})
            if (!check_rule(m, gq(1, 1), gq(1, 1), 1e-9, detail, /*deltoid=*/true)) {
                detail = "m=" + std::to_string(m) + ": " + detail;
                return false;
            }
        return true;
    });
    if (t6 >= 10.0) {
        std::cout << "[FAIL] criterion 6 exceeded its 10 s budget\n";
        g_all_ok = false;
    }

    double t7 = run_criterion(7, "gaussian rules off the self-adjoint point, m=8, a=1/2 and 3/2", [](std::string& detail) {
        for (long num : {1L, 3L})
            if (!check_rule(8, gq(num, 2), gq(1, 1), 1e-8, detail, /*deltoid=*/false)) {
                detail = "a=" + std::to_string(num) + "/2: " + detail;
                return false;
            }
        return true;
    });
    if (t7 >= 10.0) {
        std::cout << "[FAIL] criterion 7 exceeded its 10 s budget\n";
        g_all_ok = false;
    }

    run_criterion(8, "indefinite parameters are detected and refused", [](std::string& detail) {
        auto fail = posdef_probe<GQ>(12, gq(5, 2), gq(1, 1));
        if (!fail) {
            detail = "probe reported every gram positive definite";
            return false;
        }
        try {
            make_rule(8, gq(5, 2), gq(1, 1));
            detail = "pipeline produced a rule despite the indefinite gram";
            return false;
        } catch (const RegimeRefusal& e) {
            if (e.degree != *fail) {
                detail = "refusal degree " + std::to_string(e.degree) + " vs probe " +
                         std::to_string(*fail);
                return false;
            }
        }
        return true;
    });

    run_criterion(9, "reflection symmetry across 50 random structured pencils", [](std::string& detail) {
        std::mt19937 rng(20240811);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            int m = 2 + int(rng() % 4);      // up to 5
            int nvars = 1 + int(rng() % 2);  // up to 2
            std::map<int, CD> diag;
            for (int s = -(m - 1); s <= m + nvars - 1; ++s) {
                int mirror = nvars - s;
                if (diag.count(mirror))
                    diag[s] = std::conj(diag[mirror]);
                else if (2 * s == nvars)
                    diag[s] = CD(u(rng), 0.0);
                else
                    diag[s] = CD(u(rng), u(rng));
            }
            auto p = toeplitz_pencil<CD>(m, nvars, diag);
            if (!is_centrohermitian(p.base, 1e-14)) {
                detail = "generator produced a non-centrohermitian base";
                return false;
            }
            std::vector<int> all(p.ncols());
            for (int i = 0; i < p.ncols(); ++i) all[i] = i + 1;
            std::shuffle(all.begin(), all.end(), rng);
            all.resize(m);
            std::sort(all.begin(), all.end());
            IndexSet I{all};

            std::vector<std::vector<CD>> pts;
            for (int s = 0; s < 20; ++s) {
                std::vector<CD> pt;
                for (int v = 0; v <= nvars; ++v) pt.emplace_back(u(rng), u(rng));
                pts.push_back(pt);
            }
            worst = std::max(worst, check_reflection(p, I, pts));
        }
        if (worst > 1e-12) {
            detail = "worst residual " + format_double(worst);
            return false;
        }
        return true;
    });

    run_criterion(10, "every degree-m family member vanishes at every node", [](std::string& detail) {
        // the certificate is folded into criteria 6 and 7 rule checks above;
        // here it is recomputed standalone for the four rule configurations
        struct Cfg { int m; GQ a; };
        const std::vector<Cfg> cfgs = {{4, gq(1, 1)}, {8, gq(1, 1)}, {8, gq(1, 2)}, {8, gq(3, 2)}};
        for (const auto& cfg : cfgs) {
            auto rule = make_rule(cfg.m, cfg.a, gq(1, 1));
            auto fam = family_to_cd(gen_Q<GQ>(cfg.m, cfg.a, gq(1, 1)).first);
            for (int k = 0; k <= cfg.m; ++k) {
                const auto& q = fam.at(cfg.m, k);
                double scale = q.max_coeff_abs();
                for (const auto& nd : rule.nodes) {
                    double v = std::abs(q.eval(CD(nd[0], nd[1])));
                    if (v > 1e-8 * scale) {
                        detail = "m=" + std::to_string(cfg.m) + " a=" + format_gq(cfg.a) +
                                 " k=" + std::to_string(k) + ": |Q| = " + format_double(v) +
                                 " vs scale " + format_double(scale);
                        return false;
                    }
                }
            }
        }
        return true;
    });

    if (!g_all_ok) {
        std::cout << "acceptance: FAIL\n";
        return 1;
    }
    std::cout << "acceptance: PASS\n";
    return 0;
}
