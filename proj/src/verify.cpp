#include "sqd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>

#include "sqd/app.hpp"
#include "sqd/channels.hpp"

namespace sqd::verify {

namespace {

constexpr double kExact = 1e-12;
constexpr double kOrderSlack = 1e-9;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kClosedMonotoneSlack = 1e-12;

const XStateParams kFigureBell{0.0, 0.3, -0.4, 0.56};
const XStateParams kFigureBiased{0.2, 0.3, -0.4, 0.56};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string params_str(const XStateParams &p) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "(s=%.6g, c1=%.6g, c2=%.6g, c3=%.6g)", p.s, p.c1, p.c2, p.c3);
    return buf;
}

int scaled(int base, int samples) { return std::max(1, static_cast<int>(std::lround(base * (samples / 500.0)))); }

double multiset_distance(std::array<double, 4> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

struct Suite {
    const Options &opts;
    std::vector<CriterionResult> results;
    const Progress &progress;

    void add(CriterionResult r) {
        if (progress) {
            progress(r);
        }
        results.push_back(std::move(r));
    }

    std::mt19937_64 rng_for(int id) const { return std::mt19937_64(opts.seed * 1000003ULL + id); }
    ParamSampler sampler_for(int id) const { return ParamSampler(opts.seed * 1000003ULL + id); }

    OptimizerConfig cfg() const {
        OptimizerConfig c = opts.cfg;
        c.workers = opts.workers;
        return c;
    }

    void spectrum_and_entropy() {
        auto sampler = sampler_for(1);
        const int n = scaled(1000, opts.samples);
        double spec_worst = 0.0, ent_worst = 0.0;
        XStateParams spec_arg, ent_arg;
        for (int k = 0; k < n; ++k) {
            const auto p = sampler.relaxed();
            const Mat4 rho = to_density_matrix(p);
            const double d = multiset_distance(spectrum(p).values(), herm_eigenvalues(rho).values);
            if (d >= spec_worst) {
                spec_worst = d;
                spec_arg = p;
            }
            const double e = std::abs(joint_entropy(p) - von_neumann_entropy(rho));
            if (e >= ent_worst) {
                ent_worst = e;
                ent_arg = p;
            }
        }
        add({1, "spectrum closed form vs Jacobi (" + std::to_string(n) + " relaxed states)", spec_worst, kExact,
             spec_worst <= kExact, true, {"worst at " + params_str(spec_arg)}});
        add({2, "joint entropy closed form vs matrix entropy", ent_worst, kExact, ent_worst <= kExact, true,
             {"worst at " + params_str(ent_arg)}});
    }

    void weak_operator_completeness() {
        auto rng = rng_for(3);
        std::uniform_real_distribution<double> strength(0.0, 10.0);
        const int n = scaled(1000, opts.samples);
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const MeasurementStrength x(strength(rng));
            const auto ops = weak_operators(x, random_direction(rng));
            const Mat2 sum = ops.plus.adjoint() * ops.plus + ops.minus.adjoint() * ops.minus;
            worst = std::max(worst, sum.max_abs_diff(Mat2::identity()));
        }
        add({3, "weak operator completeness (" + std::to_string(n) + " cases)", worst, kExact, worst <= kExact, true, {}});
    }

    void posterior_and_f_eig() {
        auto rng = rng_for(4);
        auto sampler = sampler_for(4);
        std::uniform_real_distribution<double> strength(0.0, 10.0);
        const int n = scaled(1000, opts.samples);
        double post_worst = 0.0, f_worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const auto p = sampler.relaxed();
            const MeasurementStrength x(strength(rng));
            const auto dir = random_direction(rng);
            const Mat4 rho = to_density_matrix(p);
            const auto matrix = posterior_ensemble(rho, x, dir);
            const auto closed = posterior_closed_form(p, x, dir);
            post_worst = std::max({post_worst, std::abs(matrix.p_plus - closed.p_plus),
                                   std::abs(matrix.p_minus - closed.p_minus),
                                   matrix.rho_plus.max_abs_diff(closed.rho_plus),
                                   matrix.rho_minus.max_abs_diff(closed.rho_minus)});
            const double def = weak_conditional_entropy_def(rho, x, dir);
            f_worst = std::max(f_worst, std::abs(f_eig(phi_theta(p, dir), x) - def));
        }
        add({4, "posterior matrix level vs closed form (" + std::to_string(n) + " cases)", post_worst, kExact,
             post_worst <= kExact, true, {}});
        add({5, "f_eig vs definitional weak conditional entropy", f_worst, kExact, f_worst <= kExact, true, {}});
    }

    void bell_diagonal_exactness() {
        auto sampler = sampler_for(6);
        auto rng = rng_for(6);
        std::uniform_real_distribution<double> strength(0.0, 5.0);
        const int n = scaled(100, opts.samples);
        double worst = 0.0;
        std::string where;
        for (int k = 0; k < n; ++k) {
            const auto p = sampler.bell_diagonal();
            const MeasurementStrength x(strength(rng));
            const double d = std::abs(sqd_paper_closed(p, x) - sqd_oracle(p, x, cfg()).value);
            if (d >= worst) {
                worst = d;
                where = params_str(p) + " x=" + sci(x.value());
            }
        }
        add({6, "s = 0: |sqd closed form - sqd oracle| (" + std::to_string(n) + " states)", worst, opts.tol,
             worst <= opts.tol, true, {"worst at " + where}});
    }

    void projective_limit_and_ordering() {
        auto sampler = sampler_for(7);
        const int n7 = scaled(50, opts.samples);
        const MeasurementStrength strong(20.0);
        double worst = 0.0;
        for (int k = 0; k < n7; ++k) {
            const auto p = sampler.strict();
            worst = std::max(worst, std::abs(sqd_oracle(p, strong, cfg()).value - qd_oracle(p, cfg()).value));
        }
        add({7, "projective limit |sqd_oracle(x=20) - qd_oracle| (" + std::to_string(n7) + " states)", worst,
             opts.tol, worst <= opts.tol, true, {}});

        auto sampler8 = sampler_for(8);
        const int n8 = scaled(200, opts.samples);
        double min_gap = INFINITY;
        std::string where;
        for (int k = 0; k < n8; ++k) {
            const auto p = sampler8.strict();
            const double qd = qd_oracle(p, cfg()).value;
            for (double xv : {0.5, 1.0, 2.0}) {
                const double gap = sqd_oracle(p, MeasurementStrength(xv), cfg()).value - qd;
                if (gap < min_gap) {
                    min_gap = gap;
                    where = params_str(p) + " x=" + sci(xv);
                }
            }
        }
        add({8, "ordering min(sqd_oracle - qd_oracle), x in {0.5,1,2} (" + std::to_string(n8) + " states)",
             min_gap, -kOrderSlack, min_gap >= -kOrderSlack, true, {"smallest gap at " + where}});
    }

    void monotone_in_strength() {
        double worst_rise = -INFINITY;
        std::vector<std::string> details;
        for (const auto &p : {kFigureBell, kFigureBiased}) {
            double prev = 0.0;
            double rise = -INFINITY;
            for (int k = 0; k <= 50; ++k) {
                const double v = sqd_oracle(p, MeasurementStrength(0.1 * k), cfg()).value;
                if (k > 0) {
                    rise = std::max(rise, v - prev);
                }
                prev = v;
            }
            details.push_back("max adjacent increase " + sci(rise) + " for " + params_str(p));
            worst_rise = std::max(worst_rise, rise);
        }
        add({9, "sqd_oracle non-increasing in x on [0,5] step 0.1", worst_rise, kMonotoneSlack,
             worst_rise <= kMonotoneSlack, true, details});
    }

    void qd_upper_bound() {
        auto sampler = sampler_for(10);
        const int n = scaled(500, opts.samples);
        double min_gap = INFINITY, max_gap = -INFINITY;
        int above_tol = 0;
        std::string where;
        for (int k = 0; k < n; ++k) {
            const auto p = sampler.strict();
            const double gap = qd_closed(p).value - qd_oracle(p, cfg()).value;
            min_gap = std::min(min_gap, gap);
            if (gap > max_gap) {
                max_gap = gap;
                where = params_str(p);
            }
            above_tol += gap > opts.tol ? 1 : 0;
        }
        add({10,
             "qd_closed - qd_oracle >= -1e-9 (" + std::to_string(n) + " states)",
             min_gap,
             -kOrderSlack,
             min_gap >= -kOrderSlack,
             true,
             {"max positive gap " + sci(max_gap) + " at " + where,
              std::to_string(above_tol) + " states with gap above " + sci(opts.tol) + " (finding, not a failure)"}});
    }

    void channel_equivalence() {
        auto sampler = sampler_for(11);
        auto rng = rng_for(11);
        std::uniform_real_distribution<double> strength(0.0, 5.0);
        const int n = scaled(100, opts.samples);
        double kraus_worst = 0.0, closed_worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const auto q = sampler.relaxed();
            const MeasurementStrength x(strength(rng));
            const Mat4 rho = to_density_matrix(q);
            for (int j = 0; j <= 10; ++j) {
                const DephasingParams p(j / 10.0);
                const auto ops = kraus_phase_flip(p);
                const Mat4 via_kraus = apply_kraus<4>(rho, ops);
                const XStateParams evolved = evolve_params(q, p);
                kraus_worst = std::max(kraus_worst, via_kraus.max_abs_diff(to_density_matrix(evolved)));
                const double direct = sqd_dephased_closed(q, x, p);
                const double composed = sqd_paper_closed(evolved, x);
                closed_worst = std::max(closed_worst, std::abs(direct - composed));
            }
        }
        const double worst = std::max(kraus_worst, closed_worst);
        add({11,
             "channel: Kraus vs parameter map; dephased closed form vs composition (" + std::to_string(n) +
                 " states x 11 p)",
             worst,
             kExact,
             worst <= kExact,
             true,
             {"Kraus vs map " + sci(kraus_worst), "dephased closed form vs composition " + sci(closed_worst)}});
    }

    void figure_one_shape() {
        const auto &p = kFigureBell;
        const double qdc = qd_closed(p).value;
        double min_gap = INFINITY;
        for (int k = 1; k <= 500; ++k) {
            min_gap = std::min(min_gap, sqd_paper_closed(p, MeasurementStrength(0.01 * k)) - qdc);
        }
        const double at_five = std::abs(sqd_paper_closed(p, MeasurementStrength(5.0)) - qdc);
        const double at_zero = sqd_paper_closed(p, MeasurementStrength(0.0));
        const double expected_zero = 1.0 + (1.0 + binary_term(p.s) - joint_entropy(p));
        const bool ok = min_gap > 0.0 && at_five < 0.01 && at_zero == expected_zero;
        add({12,
             "panel 1a shape: sqd closed form above qd_closed on (0,5], converging by x=5",
             min_gap,
             0.0,
             ok,
             true,
             {"min(sqd_paper - qd_closed) on x in (0,5]: " + sci(min_gap) + " (must be > 0)",
              "|sqd_paper(5) - qd_closed| = " + sci(at_five) + " (must be < 1e-2)",
              "sqd_paper(0) - (1 + S_B - S_AB) = " + sci(at_zero - expected_zero) + " (must be exactly 0)"}});
    }

    void figure_two_shape() {
        const auto &p = kFigureBiased;
        double worst_rise = -INFINITY;
        std::vector<std::string> details;
        for (double xv : {1.0, 5.0}) {
            const MeasurementStrength x(xv);
            double rise = -INFINITY;
            double prev = sqd_dephased_closed(p, x, DephasingParams(0.0));
            for (int j = 1; j <= 100; ++j) {
                const double v = sqd_dephased_closed(p, x, DephasingParams(j / 100.0));
                rise = std::max(rise, v - prev);
                prev = v;
            }
            details.push_back("x=" + sci(xv) + ": max increase along p " + sci(rise));
            worst_rise = std::max(worst_rise, rise);
        }
        const auto surface = app::dephased_surface(p, app::kSurfaceSteps, app::kSurfaceSteps);
        double rise_x = -INFINITY, rise_p = -INFINITY;
        for (std::size_t j = 0; j < surface.ps.size(); ++j) {
            for (std::size_t i = 0; i < surface.xs.size(); ++i) {
                if (i > 0) {
                    rise_x = std::max(rise_x, surface.values[j][i] - surface.values[j][i - 1]);
                }
                if (j > 0) {
                    rise_p = std::max(rise_p, surface.values[j][i] - surface.values[j - 1][i]);
                }
            }
        }
        details.push_back("surface: max increase along x " + sci(rise_x) + ", along p " + sci(rise_p));
        worst_rise = std::max({worst_rise, rise_x, rise_p});
        add({13, "panel 2 shape: dephased sqd non-increasing in p (x=1,5) and on the (x,p) grid", worst_rise,
             kClosedMonotoneSlack, worst_rise <= kClosedMonotoneSlack, true, details});
    }

    void residual_audit() {
        const auto &p = kFigureBiased;
        const MeasurementDirection pole(0.0, 0.0, 1.0);
        const PhiTheta pt = phi_theta(p, pole);
        double worst = 0.0;
        std::vector<std::string> details{"x      f_eig-f_paper   s tanh x log2((1+s tanh x)/(1-s tanh x))"};
        for (int k = 0; k <= 50; ++k) {
            const MeasurementStrength x(0.1 * k);
            const double measured = f_eig(pt, x) - f_paper(pt, x);
            const double u = p.s * x.tanh();
            const double predicted = u == 0.0 ? 0.0 : u * std::log2((1.0 + u) / (1.0 - u));
            worst = std::max(worst, std::abs(measured - predicted));
            if (k % 5 == 0) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%-6.2f %-15.9f %.9f", x.value(), measured, predicted);
                details.emplace_back(buf);
            }
        }
        add({14, "audit: pairing residual vs s tanh x log2((1+s tanh x)/(1-s tanh x)) (report only)", worst, 1e-9,
             worst <= 1e-9, false, details});
    }

    void determinism() {
        namespace fs = std::filesystem;
        const fs::path dir = opts.scratch.empty() ? fs::temp_directory_path() : opts.scratch;
        app::SweepSpec spec;
        spec.variable = app::SweepVariable::X;
        spec.from = 0.0;
        spec.to = 5.0;
        spec.steps = 11;
        spec.params = kFigureBiased;
        OptimizerConfig c = opts.cfg;
        const unsigned many = std::max(2U, opts.workers);
        const std::string tag = std::to_string(opts.seed);
        const fs::path a = dir / ("sqd_determinism_" + tag + "_a.csv");
        const fs::path b = dir / ("sqd_determinism_" + tag + "_b.csv");
        const fs::path m = dir / ("sqd_determinism_" + tag + "_many.csv");
        app::run_sweep(spec, c, 1, a);
        app::run_sweep(spec, c, 1, b);
        app::run_sweep(spec, c, many, m);
        auto slurp = [](const fs::path &f) {
            std::ifstream in(f, std::ios::binary);
            return std::string(std::istreambuf_iterator<char>(in), {});
        };
        const std::string ta = slurp(a), tb = slurp(b), tm = slurp(m);
        const bool same_runs = !ta.empty() && ta == tb;
        const bool same_workers = ta == tm;
        fs::remove(a);
        fs::remove(b);
        fs::remove(m);
        add({15,
             "determinism: sweep CSV byte-identical across runs and 1 vs " + std::to_string(many) + " workers",
             same_runs && same_workers ? 0.0 : 1.0,
             0.0,
             same_runs && same_workers,
             true,
             {std::string("two runs identical: ") + (same_runs ? "yes" : "no"),
              std::string("1 vs N workers identical: ") + (same_workers ? "yes" : "no")}});
    }
};

} // namespace

std::vector<CriterionResult> run_all(const Options &opts, const Progress &progress) {
    if (opts.samples < 1) {
        throw DomainError("verify: samples >= 1 required");
    }
    if (!(opts.tol > 0.0)) {
        throw DomainError("verify: tol > 0 required");
    }
    opts.cfg.validate();
    Suite suite{opts, {}, progress};
    suite.spectrum_and_entropy();
    suite.weak_operator_completeness();
    suite.posterior_and_f_eig();
    suite.bell_diagonal_exactness();
    suite.projective_limit_and_ordering();
    suite.monotone_in_strength();
    suite.qd_upper_bound();
    suite.channel_equivalence();
    suite.figure_one_shape();
    suite.figure_two_shape();
    suite.residual_audit();
    suite.determinism();
    std::sort(suite.results.begin(), suite.results.end(),
              [](const CriterionResult &a, const CriterionResult &b) { return a.id < b.id; });
    return suite.results;
}

std::string format_line(const CriterionResult &r) {
    char buf[256];
    const char *verdict = r.passed ? "PASS" : (r.hard ? "FAIL" : "MISMATCH (report only)");
    std::snprintf(buf, sizeof buf, "[%2d] %-6s measured=%-11s tol=%-11s %s", r.id, verdict, sci(r.measured).c_str(),
                  sci(r.tolerance).c_str(), r.name.c_str());
    return buf;
}

bool all_hard_passed(const std::vector<CriterionResult> &results) {
    return std::all_of(results.begin(), results.end(), [](const auto &r) { return r.passed || !r.hard; });
}

int cmd_verify(const Options &opts, std::ostream &out, std::ostream &err) {
    try {
        const auto results = run_all(opts, [&out](const CriterionResult &r) {
            out << format_line(r) << "\n";
            for (const auto &d : r.details) {
                out << "       " << d << "\n";
            }
            out.flush();
        });
        const bool ok = all_hard_passed(results);
        out << (ok ? "all hard criteria passed" : "verification FAILED") << "\n";
        return ok ? app::kOk : app::kVerificationFailure;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << "\n";
        return app::kInputError;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return app::kVerificationFailure;
    }
}

} // namespace sqd::verify
