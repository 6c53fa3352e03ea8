#include "sqd/app.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "sqd/channels.hpp"
#include "sqd/parallel.hpp"
#include "sqd/svg.hpp"

namespace sqd::app {

void SweepSpec::validate() const {
    if (!(from < to)) {
        throw DomainError("sweep: from < to required");
    }
    if (steps < 2) {
        throw DomainError("sweep: steps >= 2 required");
    }
    require_valid(params, mode);
    if (variable == SweepVariable::X) {
        (void)MeasurementStrength(from);
        (void)MeasurementStrength(to);
        (void)DephasingParams(fixed_p);
    } else {
        (void)DephasingParams(from);
        (void)DephasingParams(to);
        (void)MeasurementStrength(fixed_x);
    }
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g(steps);
    for (int k = 0; k < steps; ++k) {
        g[k] = k == steps - 1 ? to : from + (to - from) * k / (steps - 1);
    }
    return g;
}

csv::Table sweep_table(const SweepSpec &spec, const OptimizerConfig &cfg, unsigned workers) {
    spec.validate();
    const auto grid = spec.grid();
    // Rows run in parallel; the optimizer inside each row stays sequential.
    OptimizerConfig row_cfg = cfg;
    row_cfg.workers = 1;

    csv::Table table;
    table.rows.resize(grid.size());
    if (spec.variable == SweepVariable::X) {
        table.header = {"x", "sqd_paper", "sqd_oracle", "qd_closed", "qd_oracle"};
        const XStateParams state = evolve_params(spec.params, DephasingParams(spec.fixed_p));
        const double qdc = qd_closed(state).value;
        const double qdo = qd_oracle(state, row_cfg).value;
        parallel_for(grid.size(), workers, [&](std::size_t k) {
            const MeasurementStrength x(grid[k]);
            table.rows[k] = {grid[k], sqd_paper_closed(state, x), sqd_oracle(state, x, row_cfg).value, qdc, qdo};
        });
    } else {
        table.header = {"p", "sqd_paper", "sqd_oracle", "qd_closed", "qd_oracle", "sqd_dephased_closed"};
        const MeasurementStrength x(spec.fixed_x);
        parallel_for(grid.size(), workers, [&](std::size_t k) {
            const DephasingParams p(grid[k]);
            const XStateParams state = evolve_params(spec.params, p);
            table.rows[k] = {grid[k],
                             sqd_paper_closed(state, x),
                             sqd_oracle(state, x, row_cfg).value,
                             qd_closed(state).value,
                             qd_oracle(state, row_cfg).value,
                             sqd_dephased_closed(spec.params, x, p)};
        });
    }
    return table;
}

void run_sweep(const SweepSpec &spec, const OptimizerConfig &cfg, unsigned workers, const std::filesystem::path &out) {
    csv::write_file(out, sweep_table(spec, cfg, workers).render());
}

const std::vector<FigureSpec> &figure_table() {
    static const std::vector<FigureSpec> table{
        {"1a", "Super quantum discord and quantum discord, s = 0", FigureKind::StrengthSweep, {0.0, 0.3, -0.4, 0.56}},
        {"1b", "Super quantum discord and quantum discord, s = 0.2", FigureKind::StrengthSweep, {0.2, 0.3, -0.4, 0.56}},
        {"2a", "Phase-flip channel, x = 1", FigureKind::DephasingSweep, {0.2, 0.3, -0.4, 0.56}, 1.0},
        {"2b", "Phase-flip channel, x = 5", FigureKind::DephasingSweep, {0.2, 0.3, -0.4, 0.56}, 5.0},
        {"2c", "Super quantum discord under phase flip vs x and p", FigureKind::Surface, {0.2, 0.3, -0.4, 0.56}},
    };
    return table;
}

const FigureSpec &find_figure(const std::string &id) {
    for (const auto &f : figure_table()) {
        if (f.id == id) {
            return f;
        }
    }
    throw DomainError("unknown figure id '" + id + "' (expected 1a, 1b, 2a, 2b, 2c or all)");
}

SurfaceData dephased_surface(const XStateParams &params, int x_steps, int p_steps) {
    SurfaceData d;
    for (int i = 0; i < x_steps; ++i) {
        d.xs.push_back(5.0 * i / (x_steps - 1));
    }
    for (int j = 0; j < p_steps; ++j) {
        d.ps.push_back(static_cast<double>(j) / (p_steps - 1));
    }
    for (double p : d.ps) {
        std::vector<double> row;
        for (double x : d.xs) {
            row.push_back(sqd_dephased_closed(params, MeasurementStrength(x), DephasingParams(p)));
        }
        d.values.push_back(std::move(row));
    }
    return d;
}

namespace {

std::vector<double> column(const csv::Table &t, std::size_t c) {
    std::vector<double> out;
    out.reserve(t.rows.size());
    for (const auto &r : t.rows) {
        out.push_back(r[c]);
    }
    return out;
}

} // namespace

FigureFiles run_figure(const std::string &id, const std::filesystem::path &dir, const OptimizerConfig &cfg,
                       unsigned workers) {
    const FigureSpec &fig = find_figure(id);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw DomainError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    FigureFiles files{dir / ("fig" + fig.id + ".csv"), dir / ("fig" + fig.id + ".svg")};

    std::string svg_text;
    std::string csv_text;
    if (fig.kind == FigureKind::Surface) {
        const auto surface = dephased_surface(fig.params, kSurfaceSteps, kSurfaceSteps);
        csv::Table t;
        t.header = {"x", "p", "sqd_dephased_closed"};
        for (std::size_t i = 0; i < surface.xs.size(); ++i) {
            for (std::size_t j = 0; j < surface.ps.size(); ++j) {
                t.rows.push_back({surface.xs[i], surface.ps[j], surface.values[j][i]});
            }
        }
        csv_text = t.render();
        svg::Surface s;
        s.title = fig.title;
        s.x_label = "measurement strength x";
        s.y_label = "flip probability p";
        s.value_label = "super quantum discord (closed form)";
        s.xs = surface.xs;
        s.ys = surface.ps;
        s.values = surface.values;
        svg_text = svg::render_contour(s);
    } else {
        SweepSpec spec;
        spec.params = fig.params;
        spec.mode = ValidationMode::Relaxed;
        if (fig.kind == FigureKind::StrengthSweep) {
            spec.variable = SweepVariable::X;
            spec.from = 0.0;
            spec.to = 5.0;
            spec.steps = kFigureStrengthSteps;
        } else {
            spec.variable = SweepVariable::P;
            spec.from = 0.0;
            spec.to = 1.0;
            spec.steps = kFigureDephasingSteps;
            spec.fixed_x = fig.x;
        }
        const csv::Table t = sweep_table(spec, cfg, workers);
        csv_text = t.render();
        const auto xs = column(t, 0);
        svg::LineChart chart;
        chart.title = fig.title;
        chart.y_label = "discord (bits)";
        if (fig.kind == FigureKind::StrengthSweep) {
            chart.x_label = "measurement strength x";
            chart.series = {
                {"SQD closed form", xs, column(t, 1), "#1f77b4", svg::Stroke::Solid},
                {"SQD oracle", xs, column(t, 2), "#2ca02c", svg::Stroke::Dashed},
                {"QD closed form", xs, column(t, 3), "#d62728", svg::Stroke::Dotted},
            };
        } else {
            chart.x_label = "flip probability p";
            chart.series = {
                {"SQD closed form", xs, column(t, 5), "#1f77b4", svg::Stroke::Dashed},
                {"SQD oracle", xs, column(t, 2), "#2ca02c", svg::Stroke::Dotted},
                {"QD closed form", xs, column(t, 3), "#d62728", svg::Stroke::Solid},
            };
        }
        svg_text = svg::render_line_chart(chart);
    }
    csv::write_file(files.csv, csv_text);
    csv::write_file(files.svg, svg_text);
    return files;
}

nlohmann::json to_json(const CorrelationReport &r) {
    auto dir = [](const MeasurementDirection &d) { return nlohmann::json::array({d.z1(), d.z2(), d.z3()}); };
    return {
        {"params", {{"s", r.params.s}, {"c1", r.params.c1}, {"c2", r.params.c2}, {"c3", r.params.c3}}},
        {"x", r.x},
        {"mutual_information", r.mutual_information},
        {"qd_closed", r.qd_closed},
        {"qd_breakdown", {{"s1", r.qd_breakdown.s1}, {"s2", r.qd_breakdown.s2}, {"s3", r.qd_breakdown.s3}}},
        {"qd_oracle", r.qd_oracle},
        {"qd_argmin", dir(r.qd_argmin)},
        {"sqd_paper", r.sqd_paper},
        {"sqd_oracle", r.sqd_oracle},
        {"argmin_direction", dir(r.argmin_direction)},
        {"paper_residual", r.paper_residual},
        {"strict_valid", r.strict_valid},
        {"warnings", r.warnings},
    };
}

namespace {

template <class Fn> int guarded(std::ostream &err, Fn &&fn) {
    try {
        return fn();
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kVerificationFailure;
    }
}

std::string fmt(double v) { return csv::format_number(v); }

std::string fmt_dir(const MeasurementDirection &d) {
    return "(" + fmt(d.z1()) + ", " + fmt(d.z2()) + ", " + fmt(d.z3()) + ")";
}

} // namespace

int cmd_compute(const ComputeOptions &opts, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const auto validation = validate(opts.params, opts.mode);
        if (!validation) {
            err << "invalid parameters:\n";
            for (const auto &v : validation.violations) {
                err << "  " << v.constraint << " violated (margin " << v.margin << ")\n";
            }
            return static_cast<int>(kInputError);
        }
        const MeasurementStrength x(opts.x);
        std::optional<DephasingParams> dephasing;
        if (opts.gamma || opts.time) {
            if (opts.p) {
                throw DomainError("give either --p or --gamma/--time, not both");
            }
            if (!opts.gamma || !opts.time) {
                throw DomainError("--gamma and --time must be given together");
            }
            dephasing = DephasingParams::from_time(*opts.gamma, *opts.time);
        } else if (opts.p) {
            dephasing = DephasingParams(*opts.p);
        }
        const XStateParams state = dephasing ? evolve_params(opts.params, *dephasing) : opts.params;
        const CorrelationReport report = correlation_report(state, x, opts.cfg);

        out << "state               s=" << fmt(state.s) << " c1=" << fmt(state.c1) << " c2=" << fmt(state.c2)
            << " c3=" << fmt(state.c3) << "\n";
        if (dephasing) {
            out << "dephasing p         " << fmt(dephasing->p()) << "\n";
        }
        out << "strength x          " << fmt(report.x) << "\n"
            << "mutual_information  " << fmt(report.mutual_information) << "\n"
            << "qd_closed           " << fmt(report.qd_closed) << "  (S1=" << fmt(report.qd_breakdown.s1)
            << " S2=" << fmt(report.qd_breakdown.s2) << " S3=" << fmt(report.qd_breakdown.s3) << ")\n"
            << "qd_oracle           " << fmt(report.qd_oracle) << "  at z=" << fmt_dir(report.qd_argmin) << "\n"
            << "sqd_paper           " << fmt(report.sqd_paper) << "\n"
            << "sqd_oracle          " << fmt(report.sqd_oracle) << "  at z=" << fmt_dir(report.argmin_direction)
            << "\n"
            << "paper_residual      " << fmt(report.paper_residual) << "  (sqd_oracle - sqd_paper)\n";
        nlohmann::json j = to_json(report);
        if (dephasing) {
            const double dephased = sqd_dephased_closed(opts.params, x, *dephasing);
            out << "sqd_dephased_closed " << fmt(dephased) << "\n";
            j["p"] = dephasing->p();
            j["sqd_dephased_closed"] = dephased;
        }
        for (const auto &w : report.warnings) {
            out << "warning: " << w << "\n";
        }
        if (opts.out) {
            csv::write_file(*opts.out, j.dump(2) + "\n");
        }
        return static_cast<int>(kOk);
    });
}

int cmd_sweep(const SweepSpec &spec, const OptimizerConfig &cfg, unsigned workers, const std::filesystem::path &path,
              std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        run_sweep(spec, cfg, workers, path);
        out << "wrote " << spec.steps << " rows to " << path.string() << "\n";
        return static_cast<int>(kOk);
    });
}

int cmd_figures(const std::string &id, const std::filesystem::path &dir, const OptimizerConfig &cfg, unsigned workers,
                std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        std::vector<std::string> ids;
        if (id == "all") {
            for (const auto &f : figure_table()) {
                ids.push_back(f.id);
            }
        } else {
            ids.push_back(find_figure(id).id);
        }
        for (const auto &i : ids) {
            const auto files = run_figure(i, dir, cfg, workers);
            out << "figure " << i << ": " << files.csv.string() << ", " << files.svg.string() << "\n";
        }
        return static_cast<int>(kOk);
    });
}

} // namespace sqd::app
