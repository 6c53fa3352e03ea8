#pragma once

/**
 * @file
 * The four-parameter two-qubit X-state family
 *
 *     rho = 1/4 (I (x) I + s I (x) sigma_3 + sum_i c_i sigma_i (x) sigma_i)
 *
 * with closed-form spectrum and entropies.
 */

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sqd/linalg.hpp"

namespace sqd {

struct XStateParams {
    double s = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    friend bool operator==(const XStateParams &, const XStateParams &) = default;
};

/**
 * Strict: |c1| < |c2| < |c3|, 0 < |s| < 1 - |c3| and physicality.
 * Relaxed: |c_i| <= 1, |s| <= 1 and physicality; admits the boundary and
 * s = 0 cases where the closed forms are used as continuous limits.
 */
enum class ValidationMode { Strict, Relaxed };

struct Violation {
    std::string constraint;
    /// How far the constraint is violated (always >= 0).
    double margin = 0.0;
};

struct ValidationResult {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }
    [[nodiscard]] std::string describe() const;
};

inline constexpr double kPhysicalityTolerance = 1e-12;

ValidationResult validate(const XStateParams &params, ValidationMode mode);

/// Throws DomainError listing every violation.
void require_valid(const XStateParams &params, ValidationMode mode);

/// Eigenvalues labelled as in the closed form: lambda_{1,2} = (1 - c3 +- r_+)/4,
/// lambda_{3,4} = (1 + c3 +- r_-)/4 with r_+- = sqrt(s^2 + (c1 +- c2)^2).
struct StateSpectrum {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double lambda4 = 0.0;

    [[nodiscard]] std::array<double, 4> values() const { return {lambda1, lambda2, lambda3, lambda4}; }
};

/// Closed-form spectrum; no validation (used by validate itself).
StateSpectrum spectrum_unchecked(const XStateParams &params);

Mat4 to_density_matrix(const XStateParams &params);

/// Same state assembled from Pauli products; independent route for cross-checks.
Mat4 pauli_expansion(const XStateParams &params);

StateSpectrum spectrum(const XStateParams &params);

/// S(rho_AB) in bits from the closed-form spectrum.
double joint_entropy(const XStateParams &params);

/// -(1-v)/2 log2(1-v) - (1+v)/2 log2(1+v); S(rho_B) = 1 + binary_term(s).
double binary_term(double v);

struct ReducedEntropies {
    double s_a = 1.0;
    double s_b = 1.0;
};

ReducedEntropies reduced_entropies(const XStateParams &params);

/// Reproducible rejection sampler over the state family.
class ParamSampler {
  public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    XStateParams strict();
    XStateParams relaxed();
    /// Strict sample with s forced to zero (Bell-diagonal); |c3| < 1 required.
    XStateParams bell_diagonal();

  private:
    double uniform(double lo, double hi);
    std::mt19937_64 rng_;
};

XStateParams parse_params_text(const std::string &text);

} // namespace sqd
