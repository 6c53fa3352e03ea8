#pragma once

/**
 * @file
 * Two-outcome weak measurements on qubit B and the post-measurement
 * ensembles they induce on qubit A.
 *
 * The measurement basis is rotated by a unitary V = t I + i y.sigma; only the
 * Bloch vector z of V sigma_3 V^dagger matters for the outcome statistics.
 * Operators follow
 *
 *     P(+x) = sqrt((1 - tanh x)/2) V Pi_0 V^dagger + sqrt((1 + tanh x)/2) V Pi_1 V^dagger
 *     P(-x) = sqrt((1 + tanh x)/2) V Pi_0 V^dagger + sqrt((1 - tanh x)/2) V Pi_1 V^dagger
 *
 * so that P(+x) -> V Pi_1 V^dagger as x grows.
 */

#include <random>
#include <utility>

#include "sqd/linalg.hpp"
#include "sqd/states.hpp"

namespace sqd {

/// Weak-measurement strength x, with 0 <= x <= kMaxStrength.
class MeasurementStrength {
  public:
    static constexpr double kMaxStrength = 350.0;

    explicit MeasurementStrength(double x);

    [[nodiscard]] double value() const { return x_; }
    [[nodiscard]] double tanh() const { return tanh_; }

  private:
    double x_;
    double tanh_;
};

/// V = t I + i (y1 sigma_1 + y2 sigma_2 + y3 sigma_3) with t^2 + |y|^2 = 1.
struct UnitaryParams {
    double t = 1.0;
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 0.0;

    [[nodiscard]] double norm_squared() const { return t * t + y1 * y1 + y2 * y2 + y3 * y3; }
};

inline constexpr double kUnitNormTolerance = 1e-12;

/// Unit Bloch vector selecting the measured basis on B.
class MeasurementDirection {
  public:
    /// Throws DomainError unless |z|^2 = 1 within kUnitNormTolerance.
    MeasurementDirection(double z1, double z2, double z3);

    /// Point on the sphere at the given polar angle from +z and azimuth from +x.
    static MeasurementDirection from_angles(double polar, double azimuth);

    [[nodiscard]] double z1() const { return z_[0]; }
    [[nodiscard]] double z2() const { return z_[1]; }
    [[nodiscard]] double z3() const { return z_[2]; }
    [[nodiscard]] const std::array<double, 3> &components() const { return z_; }
    [[nodiscard]] MeasurementDirection antipode() const { return {-z_[0], -z_[1], -z_[2]}; }

    friend bool operator==(const MeasurementDirection &, const MeasurementDirection &) = default;

  private:
    std::array<double, 3> z_;
};

Mat2 unitary_matrix(const UnitaryParams &u);

/// z1 = 2(-t y2 + y1 y3), z2 = 2(t y1 + y2 y3), z3 = t^2 + y3^2 - y1^2 - y2^2.
MeasurementDirection direction_from_unitary(const UnitaryParams &u);

/// Uniform on the sphere (normalised Gaussian triple).
MeasurementDirection random_direction(std::mt19937_64 &rng);

/// Half-angle rotation taking +z to `dir`; the antipode -z uses V = i sigma_1.
UnitaryParams canonical_unitary(const MeasurementDirection &dir);

struct WeakOperators {
    Mat2 plus;  ///< P(+x)
    Mat2 minus; ///< P(-x)
};

WeakOperators weak_operators(const MeasurementStrength &x, const UnitaryParams &u);
WeakOperators weak_operators(const MeasurementStrength &x, const MeasurementDirection &dir);

/// Projectors V Pi_0 V^dagger and V Pi_1 V^dagger.
std::pair<Mat2, Mat2> rotated_projectors(const UnitaryParams &u);

inline constexpr double kDegenerateProbability = 1e-15;

/// Outcome probabilities and conditional states of A. A conditional state whose
/// probability is <= 1e-15 is reported as I/2 and flagged.
struct PosteriorEnsemble {
    double p_plus = 0.5;
    double p_minus = 0.5;
    Mat2 rho_plus;
    Mat2 rho_minus;
    bool degenerate_plus = false;
    bool degenerate_minus = false;
};

/// Posterior for a generic Kraus pair (K_plus, K_minus) acting on B.
PosteriorEnsemble posterior_from_operators(const Mat4 &rho, const Mat2 &k_plus, const Mat2 &k_minus);

/// Matrix-level posterior of a weak measurement on B; valid for any two-qubit state.
PosteriorEnsemble posterior_ensemble(const Mat4 &rho, const MeasurementStrength &x, const MeasurementDirection &dir);
PosteriorEnsemble posterior_ensemble(const Mat4 &rho, const MeasurementStrength &x, const UnitaryParams &u);

/// Projective measurement {V Pi_0 V^dagger, V Pi_1 V^dagger}; "plus" is outcome 0.
PosteriorEnsemble projective_ensemble(const Mat4 &rho, const MeasurementDirection &dir);

/// Closed-form posterior for the X-state family:
/// p(+-x) = (1 -+ s z3 tanh x)/2 and rho_{A|+-} = (I -+ X tanh x) / (2 (1 -+ s z3 tanh x)),
/// X = s z3 I + c1 z1 sigma_1 + c2 z2 sigma_2 + c3 z3 sigma_3.
PosteriorEnsemble posterior_closed_form(const XStateParams &params, const MeasurementStrength &x,
                                        const MeasurementDirection &dir);

/// sum over outcomes of p * S(rho_A|outcome); degenerate outcomes contribute zero.
double conditional_entropy(const PosteriorEnsemble &ensemble);

struct PhiTheta {
    double phi = 0.0;
    double theta = 0.0;
};

/// phi = s z3, theta = sqrt((c1 z1)^2 + (c2 z2)^2 + (c3 z3)^2).
PhiTheta phi_theta(const XStateParams &params, const MeasurementDirection &dir);

/**
 * Weighted conditional entropy from the four-term closed form, with
 * the (1 + (phi +- theta) tanh x) numerators over 2(1 - phi tanh x) and the
 * (1 - (phi +- theta) tanh x) numerators over 2(1 + phi tanh x).
 *
 * This pairing does not match the spectra of the conditional states when
 * phi != 0; see f_eig. Throws DomainError naming the term whose numerator is
 * negative.
 */
double f_paper(const PhiTheta &pt, const MeasurementStrength &x);

/// Weighted conditional entropy from the actual conditional-state spectra:
/// rho_{A|+} has eigenvalues (1 - (phi +- theta) tanh x) / (2 (1 - phi tanh x)),
/// rho_{A|-} has (1 + (phi +- theta) tanh x) / (2 (1 + phi tanh x)).
double f_eig(const PhiTheta &pt, const MeasurementStrength &x);

/// f_eig - f_paper = phi tanh x log2((1 + phi tanh x)/(1 - phi tanh x)).
double pairing_residual(const PhiTheta &pt, const MeasurementStrength &x);

/// S_w(A | P^B(x)) computed at matrix level, no closed forms.
double weak_conditional_entropy_def(const XStateParams &params, const MeasurementStrength &x,
                                    const MeasurementDirection &dir);
double weak_conditional_entropy_def(const Mat4 &rho, const MeasurementStrength &x, const MeasurementDirection &dir);

/// sum_i p_i S(rho_A|i) for the projective measurement along `dir`.
double projective_conditional_entropy(const Mat4 &rho, const MeasurementDirection &dir);

} // namespace sqd
