#include "sqd/discord.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sqd/parallel.hpp"

namespace sqd {

void OptimizerConfig::validate() const {
    std::vector<std::string> problems;
    if (polar_steps < 30) {
        problems.push_back("polar_steps >= 30");
    }
    if (azimuth_steps < 60) {
        problems.push_back("azimuth_steps >= 60");
    }
    if (!(refine_tolerance > 0.0)) {
        problems.push_back("refine_tolerance > 0");
    }
    if (max_refine_iterations < 1) {
        problems.push_back("max_refine_iterations >= 1");
    }
    if (workers < 1) {
        problems.push_back("workers >= 1");
    }
    if (!problems.empty()) {
        std::string msg = "invalid optimizer configuration, required:";
        for (const auto &p : problems) {
            msg += " " + p + ";";
        }
        throw DomainError(msg);
    }
}

namespace {

using Angles = std::array<double, 2>;

double checked_eval(const SphereObjective &objective, const MeasurementDirection &dir) {
    const double v = objective(dir);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "objective is not finite (" << v << ") at direction (" << dir.z1() << ", " << dir.z2() << ", "
            << dir.z3() << ")";
        throw NumericalError(msg.str());
    }
    return v;
}

bool better(double fa, const MeasurementDirection &a, double fb, const MeasurementDirection &b) {
    if (fa != fb) {
        return fa < fb;
    }
    return a.components() < b.components();
}

struct GridBest {
    Angles angles{0.0, 0.0};
    MeasurementDirection direction{0.0, 0.0, 1.0};
    double value = 0.0;
    int evaluations = 0;
};

GridBest grid_search(const SphereObjective &objective, const OptimizerConfig &cfg) {
    const double polar_step = std::numbers::pi / 2.0 / (cfg.polar_steps - 1);
    const double azimuth_step = 2.0 * std::numbers::pi / (cfg.azimuth_steps - 1);

    std::vector<Angles> points;
    points.push_back({0.0, 0.0}); // the pole is a single point
    for (int i = 1; i < cfg.polar_steps; ++i) {
        for (int j = 0; j + 1 < cfg.azimuth_steps; ++j) {
            points.push_back({i * polar_step, j * azimuth_step});
        }
    }

    std::vector<double> values(points.size());
    parallel_for(points.size(), cfg.workers, [&](std::size_t k) {
        values[k] = checked_eval(objective, MeasurementDirection::from_angles(points[k][0], points[k][1]));
    });

    GridBest best;
    best.angles = points[0];
    best.direction = MeasurementDirection::from_angles(points[0][0], points[0][1]);
    best.value = values[0];
    for (std::size_t k = 1; k < points.size(); ++k) {
        const auto dir = MeasurementDirection::from_angles(points[k][0], points[k][1]);
        if (better(values[k], dir, best.value, best.direction)) {
            best = {points[k], dir, values[k], 0};
        }
    }
    best.evaluations = static_cast<int>(points.size());
    return best;
}

struct Vertex {
    Angles a;
    double f;
};

class NelderMead {
  public:
    NelderMead(const SphereObjective &objective, int budget) : objective_(objective), budget_(budget) {}

    double eval(const Angles &a) {
        ++evaluations_;
        return checked_eval(objective_, MeasurementDirection::from_angles(a[0], a[1]));
    }

    Vertex run(Vertex start, double step, double orientation, double tol) {
        std::array<Vertex, 3> v;
        v[0] = start;
        for (int k = 1; k <= 2; ++k) {
            const double ang = orientation + (k - 1) * std::numbers::pi / 2.0;
            const Angles a{start.a[0] + step * std::cos(ang), start.a[1] + step * std::sin(ang)};
            v[k] = {a, eval(a)};
        }
        auto order = [&] {
            std::sort(v.begin(), v.end(), [](const Vertex &l, const Vertex &r) {
                return l.f != r.f ? l.f < r.f : l.a < r.a;
            });
        };
        auto lerp = [](const Angles &from, const Angles &to, double t) {
            return Angles{from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])};
        };
        while (evaluations_ < budget_) {
            order();
            if (v[2].f - v[0].f <= tol) {
                break;
            }
            const Angles c{(v[0].a[0] + v[1].a[0]) / 2.0, (v[0].a[1] + v[1].a[1]) / 2.0};
            const Angles xr = lerp(v[2].a, c, 2.0);
            const double fr = eval(xr);
            if (fr < v[0].f) {
                const Angles xe = lerp(v[2].a, c, 3.0);
                const double fe = eval(xe);
                v[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
                continue;
            }
            if (fr < v[1].f) {
                v[2] = {xr, fr};
                continue;
            }
            const bool outside = fr < v[2].f;
            const Angles xc = outside ? lerp(c, xr, 0.5) : lerp(c, v[2].a, 0.5);
            const double fc = eval(xc);
            if (outside ? fc <= fr : fc < v[2].f) {
                v[2] = {xc, fc};
                continue;
            }
            for (int k = 1; k <= 2; ++k) {
                const Angles a = lerp(v[0].a, v[k].a, 0.5);
                v[k] = {a, eval(a)};
            }
        }
        order();
        return v[0];
    }

    [[nodiscard]] int evaluations() const { return evaluations_; }
    [[nodiscard]] bool exhausted() const { return evaluations_ >= budget_; }

  private:
    const SphereObjective &objective_;
    int budget_;
    int evaluations_ = 0;
};

} // namespace

SphereMinimum minimize_over_sphere(const SphereObjective &objective, const OptimizerConfig &cfg) {
    cfg.validate();
    const GridBest grid = grid_search(objective, cfg);

    NelderMead nm(objective, cfg.max_refine_iterations);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> orientation(0.0, 2.0 * std::numbers::pi);
    const double step = std::numbers::pi / 2.0 / (cfg.polar_steps - 1) / 2.0;

    Vertex best{grid.angles, grid.value};
    constexpr int kMaxRestarts = 8;
    for (int restart = 0; restart < kMaxRestarts && !nm.exhausted(); ++restart) {
        const Vertex next = nm.run(best, step, orientation(rng), cfg.refine_tolerance);
        const double gain = best.f - next.f;
        if (next.f < best.f) {
            best = next;
        }
        if (gain < cfg.refine_tolerance) {
            break;
        }
    }

    SphereMinimum out;
    out.direction = MeasurementDirection::from_angles(best.a[0], best.a[1]);
    out.value = best.f;
    out.evaluations = grid.evaluations + nm.evaluations();
    return out;
}

namespace {

double closed_form_entropy_gap(const XStateParams &params) {
    return 1.0 + binary_term(params.s) - joint_entropy(params);
}

OracleResult finish_oracle(double base, const SphereMinimum &min) {
    OracleResult r;
    r.min_conditional_entropy = min.value;
    r.value = base + min.value;
    r.direction = min.direction;
    if (r.value < 0.0 && r.value >= -kDiscordClampSlack) {
        r.value = 0.0;
        r.clamped = true;
    }
    return r;
}

// S(rho_B) - S(rho_AB) from the matrix, without closed forms.
double matrix_entropy_gap(const Mat4 &rho) {
    return von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho);
}

} // namespace

double min_weak_entropy_closed(const XStateParams &params, const MeasurementStrength &x) {
    require_valid(params, ValidationMode::Relaxed);
    return f_paper({params.s, params.c3}, x);
}

double sqd_paper_closed(const XStateParams &params, const MeasurementStrength &x) {
    return min_weak_entropy_closed(params, x) + closed_form_entropy_gap(params);
}

OracleResult sqd_oracle(const XStateParams &params, const MeasurementStrength &x, const OptimizerConfig &cfg) {
    const Mat4 rho = to_density_matrix(params);
    const auto min = minimize_over_sphere(
        [&rho, &x](const MeasurementDirection &dir) { return weak_conditional_entropy_def(rho, x, dir); }, cfg);
    return finish_oracle(matrix_entropy_gap(rho), min);
}

QdClosed qd_closed(const XStateParams &params) {
    const auto lam = spectrum(params).values();
    const double s = params.s, c3 = params.c3;
    QdClosed out;
    // -n/4 log2(n/d), with 0 log 0 = 0
    auto term = [](double n, double d) { return n > 0.0 ? -n / 4.0 * std::log2(n / d) : 0.0; };
    out.breakdown.s1 = term(1 + s + c3, 2 * (1 + s)) + term(1 + s - c3, 2 * (1 + s)) +
                       term(1 - s - c3, 2 * (1 - s)) + term(1 - s + c3, 2 * (1 - s));
    out.breakdown.s2 = 1.0 + binary_term(params.c1);
    out.breakdown.s3 = 1.0 + binary_term(params.c2);
    double sum_lam_log = 0.0;
    for (double l : lam) {
        sum_lam_log += xlog2x(std::max(l, 0.0));
    }
    out.value = 1.0 + binary_term(s) + sum_lam_log +
                std::min({out.breakdown.s1, out.breakdown.s2, out.breakdown.s3});
    return out;
}

OracleResult qd_oracle(const XStateParams &params, const OptimizerConfig &cfg) {
    const Mat4 rho = to_density_matrix(params);
    const auto min = minimize_over_sphere(
        [&rho](const MeasurementDirection &dir) { return projective_conditional_entropy(rho, dir); }, cfg);
    return finish_oracle(matrix_entropy_gap(rho), min);
}

double mutual_information(const XStateParams &params) {
    const auto reduced = reduced_entropies(params);
    return reduced.s_a + reduced.s_b - joint_entropy(params);
}

double classical_correlation(const XStateParams &params, const OptimizerConfig &cfg) {
    return mutual_information(params) - qd_oracle(params, cfg).value;
}

double AuditReport::max_abs_difference() const {
    double m = 0.0;
    for (const auto &r : rows) {
        m = std::max(m, std::abs(r.difference));
    }
    return m;
}

double AuditReport::max_residual_mismatch() const {
    double m = 0.0;
    for (const auto &r : rows) {
        m = std::max(m, std::abs(r.pairing_residual - r.predicted_residual));
    }
    return m;
}

AuditReport audit_discrepancy(const XStateParams &params, const std::vector<double> &x_grid,
                              const OptimizerConfig &cfg) {
    AuditReport report;
    report.params = params;
    const MeasurementDirection pole(0.0, 0.0, 1.0);
    const PhiTheta at_pole = phi_theta(params, pole);
    for (double xv : x_grid) {
        const MeasurementStrength x(xv);
        AuditRow row;
        row.x = xv;
        row.sqd_paper = sqd_paper_closed(params, x);
        const auto oracle = sqd_oracle(params, x, cfg);
        row.sqd_oracle = oracle.value;
        row.argmin = oracle.direction;
        row.difference = row.sqd_oracle - row.sqd_paper;
        row.pairing_residual = f_eig(at_pole, x) - f_paper(at_pole, x);
        const double u = params.s * x.tanh();
        row.predicted_residual = u == 0.0 ? 0.0 : u * std::log2((1.0 + u) / (1.0 - u));
        report.rows.push_back(row);
    }
    return report;
}

CorrelationReport correlation_report(const XStateParams &params, const MeasurementStrength &x,
                                     const OptimizerConfig &cfg) {
    require_valid(params, ValidationMode::Relaxed);
    CorrelationReport r;
    r.params = params;
    r.x = x.value();
    r.strict_valid = validate(params, ValidationMode::Strict).ok();
    if (!r.strict_valid) {
        r.warnings.push_back("parameters lie outside the strict ordering region; closed forms are continuous limits");
    }
    r.mutual_information = mutual_information(params);
    const auto qc = qd_closed(params);
    r.qd_closed = qc.value;
    r.qd_breakdown = qc.breakdown;
    const auto qo = qd_oracle(params, cfg);
    r.qd_oracle = qo.value;
    r.qd_argmin = qo.direction;
    r.sqd_paper = sqd_paper_closed(params, x);
    const auto so = sqd_oracle(params, x, cfg);
    r.sqd_oracle = so.value;
    r.argmin_direction = so.direction;
    r.paper_residual = r.sqd_oracle - r.sqd_paper;
    if (qo.clamped) {
        r.warnings.push_back("qd_oracle clamped to 0 from a value within 1e-9 below zero");
    }
    if (so.clamped) {
        r.warnings.push_back("sqd_oracle clamped to 0 from a value within 1e-9 below zero");
    }
    return r;
}

} // namespace sqd
