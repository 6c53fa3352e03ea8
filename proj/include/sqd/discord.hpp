#pragma once

/**
 * @file
 * Quantum discord (projective) and super quantum discord (weak) for the
 * X-state family: closed forms next to definitional oracles that minimise the
 * conditional entropy over every measurement direction on B.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqd/states.hpp"
#include "sqd/weakmeas.hpp"

namespace sqd {

struct OptimizerConfig {
    /// Grid lines from the pole to the equator, both included.
    int polar_steps = 61;
    /// Grid lines over [0, 2 pi], both ends included (the last one repeats the first).
    int azimuth_steps = 121;
    double refine_tolerance = 1e-10;
    int max_refine_iterations = 4000;
    /// Orientation of the restart simplices used during refinement.
    std::uint64_t seed = 42;
    /// Threads for the grid stage; results do not depend on this.
    unsigned workers = 1;

    void validate() const;
};

struct SphereMinimum {
    MeasurementDirection direction{0.0, 0.0, 1.0};
    double value = 0.0;
    int evaluations = 0;
};

using SphereObjective = std::function<double(const MeasurementDirection &)>;

/**
 * Minimises `objective` over the unit sphere. A latitude-longitude grid over
 * the half sphere z3 >= 0 is evaluated first (in parallel when cfg.workers > 1;
 * ties go to the lexicographically smallest direction), then Nelder-Mead on
 * (polar, azimuth) refines the best grid point until a restart improves the
 * value by less than cfg.refine_tolerance.
 *
 * The objective must be even under z -> -z and safe to call concurrently.
 * Throws NumericalError on a non-finite objective value.
 */
SphereMinimum minimize_over_sphere(const SphereObjective &objective, const OptimizerConfig &cfg);

/// Minimum weak conditional entropy from the closed form: f_paper at (phi, theta) = (s, c3).
double min_weak_entropy_closed(const XStateParams &params, const MeasurementStrength &x);

/// min_weak_entropy_closed + S(rho_B) - S(rho_AB).
double sqd_paper_closed(const XStateParams &params, const MeasurementStrength &x);

/// Oracle values at or above -kDiscordClampSlack that are negative are reported as 0.
inline constexpr double kDiscordClampSlack = 1e-9;

struct OracleResult {
    double value = 0.0;
    MeasurementDirection direction{0.0, 0.0, 1.0};
    /// Minimum conditional entropy before adding S(rho_B) - S(rho_AB).
    double min_conditional_entropy = 0.0;
    bool clamped = false;
};

/// S(rho_B) - S(rho_AB) + min_z S_w(A | P^B(x)), all at matrix level.
OracleResult sqd_oracle(const XStateParams &params, const MeasurementStrength &x, const OptimizerConfig &cfg);

struct DiscordBreakdown {
    double s1 = 0.0; ///< conditional entropy measuring along z
    double s2 = 0.0; ///< 1 + binary_term(c1)
    double s3 = 0.0; ///< 1 + binary_term(c2)
};

struct QdClosed {
    double value = 0.0;
    DiscordBreakdown breakdown;
};

/// 1 + binary_term(s) + sum lambda log2 lambda + min{S1, S2, S3}.
QdClosed qd_closed(const XStateParams &params);

/// S(rho_B) - S(rho_AB) + min_z sum_i p_i S(rho_A|i), all at matrix level.
OracleResult qd_oracle(const XStateParams &params, const OptimizerConfig &cfg);

/// S(rho_A) + S(rho_B) - S(rho_AB) from the closed forms.
double mutual_information(const XStateParams &params);

/// mutual_information - qd_oracle.
double classical_correlation(const XStateParams &params, const OptimizerConfig &cfg);

struct AuditRow {
    double x = 0.0;
    double sqd_paper = 0.0;
    double sqd_oracle = 0.0;
    /// sqd_oracle - sqd_paper
    double difference = 0.0;
    MeasurementDirection argmin{0.0, 0.0, 1.0};
    /// f_eig - f_paper at z = (0, 0, 1), evaluated from the two formulas.
    double pairing_residual = 0.0;
    /// s tanh x log2((1 + s tanh x)/(1 - s tanh x)).
    double predicted_residual = 0.0;
};

struct AuditReport {
    XStateParams params;
    std::vector<AuditRow> rows;

    [[nodiscard]] double max_abs_difference() const;
    [[nodiscard]] double max_residual_mismatch() const;
};

AuditReport audit_discrepancy(const XStateParams &params, const std::vector<double> &x_grid,
                              const OptimizerConfig &cfg);

struct CorrelationReport {
    XStateParams params;
    double x = 0.0;
    double mutual_information = 0.0;
    double qd_closed = 0.0;
    DiscordBreakdown qd_breakdown;
    double qd_oracle = 0.0;
    MeasurementDirection qd_argmin{0.0, 0.0, 1.0};
    double sqd_paper = 0.0;
    double sqd_oracle = 0.0;
    MeasurementDirection argmin_direction{0.0, 0.0, 1.0};
    /// sqd_oracle - sqd_paper
    double paper_residual = 0.0;
    bool strict_valid = false;
    std::vector<std::string> warnings;
};

CorrelationReport correlation_report(const XStateParams &params, const MeasurementStrength &x,
                                     const OptimizerConfig &cfg);

} // namespace sqd
