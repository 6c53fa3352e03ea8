#pragma once

/**
 * @file
 * Batch front end: single-point reports, parameter sweeps, figure data and
 * the command implementations behind the `sqd` executable.
 *
 * Exit codes: 0 success, 2 input error, 3 verification or optimizer failure.
 */

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqd/csv.hpp"
#include "sqd/discord.hpp"

namespace sqd::app {

enum ExitCode : int { kOk = 0, kInputError = 2, kVerificationFailure = 3 };

enum class SweepVariable { X, P };

struct SweepSpec {
    SweepVariable variable = SweepVariable::X;
    double from = 0.0;
    double to = 5.0;
    int steps = 201;
    XStateParams params;
    ValidationMode mode = ValidationMode::Strict;
    /// Used when sweeping p.
    double fixed_x = 1.0;
    /// Used when sweeping x; the state is dephased with this p first.
    double fixed_p = 0.0;

    /// from < to and steps >= 2, plus parameter validation.
    void validate() const;
    /// Inclusive endpoints, ascending.
    [[nodiscard]] std::vector<double> grid() const;
};

/**
 * x sweeps: columns x,sqd_paper,sqd_oracle,qd_closed,qd_oracle.
 * p sweeps: columns p,sqd_paper,sqd_oracle,qd_closed,qd_oracle,sqd_dephased_closed,
 * where the first four are evaluated on the dephased state.
 * Rows are computed in parallel over `workers` threads; output is independent of it.
 */
csv::Table sweep_table(const SweepSpec &spec, const OptimizerConfig &cfg, unsigned workers);

void run_sweep(const SweepSpec &spec, const OptimizerConfig &cfg, unsigned workers, const std::filesystem::path &out);

enum class FigureKind { StrengthSweep, DephasingSweep, Surface };

/// Parameter pins for each reproduced figure panel.
struct FigureSpec {
    std::string id;
    std::string title;
    FigureKind kind;
    XStateParams params;
    /// Fixed x for dephasing sweeps.
    double x = 0.0;
};

const std::vector<FigureSpec> &figure_table();

/// Throws DomainError for an unknown id.
const FigureSpec &find_figure(const std::string &id);

struct FigureFiles {
    std::filesystem::path csv;
    std::filesystem::path svg;
};

inline constexpr int kFigureStrengthSteps = 101;
inline constexpr int kFigureDephasingSteps = 101;
inline constexpr int kSurfaceSteps = 51;

/// Grid of sqd_dephased_closed over x in [0, 5] and p in [0, 1]; values[ip][ix].
struct SurfaceData {
    std::vector<double> xs;
    std::vector<double> ps;
    std::vector<std::vector<double>> values;
};

SurfaceData dephased_surface(const XStateParams &params, int x_steps, int p_steps);

FigureFiles run_figure(const std::string &id, const std::filesystem::path &dir, const OptimizerConfig &cfg,
                       unsigned workers);

nlohmann::json to_json(const CorrelationReport &report);

struct ComputeOptions {
    XStateParams params;
    double x = 1.0;
    std::optional<double> p;
    std::optional<double> gamma;
    std::optional<double> time;
    ValidationMode mode = ValidationMode::Strict;
    std::optional<std::filesystem::path> out;
    OptimizerConfig cfg;
};

int cmd_compute(const ComputeOptions &opts, std::ostream &out, std::ostream &err);
int cmd_sweep(const SweepSpec &spec, const OptimizerConfig &cfg, unsigned workers, const std::filesystem::path &path,
              std::ostream &out, std::ostream &err);
int cmd_figures(const std::string &id, const std::filesystem::path &dir, const OptimizerConfig &cfg, unsigned workers,
                std::ostream &out, std::ostream &err);

} // namespace sqd::app
