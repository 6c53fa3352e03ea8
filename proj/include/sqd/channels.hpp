#pragma once

/**
 * @file
 * Local phase-flip (dephasing) channel applied with the same flip
 * probability p to both qubits.
 *
 * Single-qubit Kraus pair: Gamma_0 = sqrt(1 - p/2) I, Gamma_1 = sqrt(p/2) sigma_3.
 * Acting on both sides scales c1 and c2 by (1 - p)^2 and leaves s and c3 alone.
 */

#include <array>
#include <optional>

#include "sqd/linalg.hpp"
#include "sqd/states.hpp"
#include "sqd/weakmeas.hpp"

namespace sqd {

class DephasingParams {
  public:
    /// Throws DomainError unless 0 <= p <= 1.
    explicit DephasingParams(double p);

    /// p = 1 - exp(-gamma * time).
    static DephasingParams from_time(double gamma, double time);

    [[nodiscard]] double p() const { return p_; }
    [[nodiscard]] std::optional<double> gamma() const { return gamma_; }
    [[nodiscard]] std::optional<double> time() const { return time_; }

  private:
    double p_;
    std::optional<double> gamma_;
    std::optional<double> time_;
};

/// 1 - exp(-gamma * time); rejects negative or non-finite inputs.
double p_of_time(double gamma, double time);

/// Kraus pair acting on one qubit, lifted to the two-qubit space.
std::array<Mat4, 2> kraus_phase_flip_side(const DephasingParams &p, Subsystem side);

/// Both sides composed: {Gamma_i^(A) Gamma_j^(B)} for i, j in {0, 1}.
std::array<Mat4, 4> kraus_phase_flip(const DephasingParams &p);

/// (s, c1, c2, c3) -> (s, (1-p)^2 c1, (1-p)^2 c2, c3). The result is re-validated.
XStateParams evolve_params(const XStateParams &params, const DephasingParams &p);

/// Super quantum discord of the dephased state written out term by term.
double sqd_dephased_closed(const XStateParams &params, const MeasurementStrength &x, const DephasingParams &p);

} // namespace sqd
