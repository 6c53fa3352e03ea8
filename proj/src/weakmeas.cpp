#include "sqd/weakmeas.hpp"

#include <cmath>
#include <sstream>

namespace sqd {

MeasurementStrength::MeasurementStrength(double x) : x_(x), tanh_(std::tanh(x)) {
    if (!(x >= 0.0 && x <= kMaxStrength)) {
        std::ostringstream msg;
        msg << "measurement strength must lie in [0, " << kMaxStrength << "], got " << x;
        throw DomainError(msg.str());
    }
}

MeasurementDirection::MeasurementDirection(double z1, double z2, double z3) : z_{z1, z2, z3} {
    const double n2 = z1 * z1 + z2 * z2 + z3 * z3;
    if (!(std::abs(n2 - 1.0) <= kUnitNormTolerance)) {
        std::ostringstream msg;
        msg << "measurement direction must be a unit vector, |z|^2 = " << n2;
        throw DomainError(msg.str());
    }
}

MeasurementDirection MeasurementDirection::from_angles(double polar, double azimuth) {
    const double sp = std::sin(polar);
    return {sp * std::cos(azimuth), sp * std::sin(azimuth), std::cos(polar)};
}

MeasurementDirection random_direction(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    for (;;) {
        const double a = normal(rng), b = normal(rng), c = normal(rng);
        const double n = std::sqrt(a * a + b * b + c * c);
        if (n > 1e-6) {
            return {a / n, b / n, c / n};
        }
    }
}

namespace {

void require_unit(const UnitaryParams &u) {
    const double n2 = u.norm_squared();
    if (!(std::abs(n2 - 1.0) <= kUnitNormTolerance)) {
        std::ostringstream msg;
        msg << "unitary parameters must satisfy t^2 + |y|^2 = 1, got " << n2;
        throw DomainError(msg.str());
    }
}

} // namespace

Mat2 unitary_matrix(const UnitaryParams &u) {
    require_unit(u);
    const cplx i(0.0, 1.0);
    return cplx(u.t) * pauli::identity() + i * (cplx(u.y1) * pauli::x() + cplx(u.y2) * pauli::y() +
                                                cplx(u.y3) * pauli::z());
}

MeasurementDirection direction_from_unitary(const UnitaryParams &u) {
    require_unit(u);
    const auto [t, y1, y2, y3] = u;
    return {2.0 * (-t * y2 + y1 * y3), 2.0 * (t * y1 + y2 * y3), t * t + y3 * y3 - y1 * y1 - y2 * y2};
}

UnitaryParams canonical_unitary(const MeasurementDirection &dir) {
    const double z1 = dir.z1(), z2 = dir.z2(), z3 = dir.z3();
    const double rho2 = z1 * z1 + z2 * z2;
    if (rho2 == 0.0) {
        return z3 > 0.0 ? UnitaryParams{1.0, 0.0, 0.0, 0.0} : UnitaryParams{0.0, 1.0, 0.0, 0.0};
    }
    // Unnormalised (t, y) = (1 + z3, z2, -z1, 0); 1 + z3 computed without cancellation near the south pole.
    const double one_plus_z3 = z3 >= 0.0 ? 1.0 + z3 : rho2 / (1.0 - z3);
    const double norm = std::sqrt(one_plus_z3 * one_plus_z3 + rho2);
    return {one_plus_z3 / norm, z2 / norm, -z1 / norm, 0.0};
}

std::pair<Mat2, Mat2> rotated_projectors(const UnitaryParams &u) {
    const Mat2 v = unitary_matrix(u);
    const Mat2 vd = v.adjoint();
    const Mat2 pi0 = Mat2::diagonal({1.0, 0.0});
    const Mat2 pi1 = Mat2::diagonal({0.0, 1.0});
    return {v * pi0 * vd, v * pi1 * vd};
}

WeakOperators weak_operators(const MeasurementStrength &x, const UnitaryParams &u) {
    const auto [q0, q1] = rotated_projectors(u);
    const double th = x.tanh();
    const double weak = std::sqrt((1.0 - th) / 2.0);
    const double strong = std::sqrt((1.0 + th) / 2.0);
    return {cplx(weak) * q0 + cplx(strong) * q1, cplx(strong) * q0 + cplx(weak) * q1};
}

WeakOperators weak_operators(const MeasurementStrength &x, const MeasurementDirection &dir) {
    return weak_operators(x, canonical_unitary(dir));
}

namespace {

void fill_outcome(const Mat4 &rho, const Mat2 &k, double &prob, Mat2 &state, bool &degenerate) {
    const Mat4 lifted = kron(pauli::identity(), k);
    const Mat4 post = lifted * rho * lifted.adjoint();
    prob = post.trace().real();
    if (prob <= kDegenerateProbability) {
        degenerate = true;
        state = cplx(0.5) * pauli::identity();
        return;
    }
    degenerate = false;
    state = cplx(1.0 / prob) * detail::partial_trace_unchecked(post, Subsystem::A);
}

} // namespace

PosteriorEnsemble posterior_from_operators(const Mat4 &rho, const Mat2 &k_plus, const Mat2 &k_minus) {
    PosteriorEnsemble e;
    fill_outcome(rho, k_plus, e.p_plus, e.rho_plus, e.degenerate_plus);
    fill_outcome(rho, k_minus, e.p_minus, e.rho_minus, e.degenerate_minus);
    return e;
}

PosteriorEnsemble posterior_ensemble(const Mat4 &rho, const MeasurementStrength &x, const UnitaryParams &u) {
    const auto ops = weak_operators(x, u);
    return posterior_from_operators(rho, ops.plus, ops.minus);
}

PosteriorEnsemble posterior_ensemble(const Mat4 &rho, const MeasurementStrength &x, const MeasurementDirection &dir) {
    return posterior_ensemble(rho, x, canonical_unitary(dir));
}

PosteriorEnsemble projective_ensemble(const Mat4 &rho, const MeasurementDirection &dir) {
    const auto [q0, q1] = rotated_projectors(canonical_unitary(dir));
    return posterior_from_operators(rho, q0, q1);
}

PosteriorEnsemble posterior_closed_form(const XStateParams &params, const MeasurementStrength &x,
                                        const MeasurementDirection &dir) {
    const double th = x.tanh();
    const double phi = params.s * dir.z3();
    const Mat2 big_x = cplx(phi) * pauli::identity() + cplx(params.c1 * dir.z1()) * pauli::x() +
                       cplx(params.c2 * dir.z2()) * pauli::y() + cplx(params.c3 * dir.z3()) * pauli::z();
    PosteriorEnsemble e;
    e.p_plus = (1.0 - phi * th) / 2.0;
    e.p_minus = (1.0 + phi * th) / 2.0;
    const Mat2 half_id = cplx(0.5) * pauli::identity();
    if (e.p_plus <= kDegenerateProbability) {
        e.degenerate_plus = true;
        e.rho_plus = half_id;
    } else {
        e.rho_plus = cplx(1.0 / (2.0 * (1.0 - phi * th))) * (pauli::identity() - cplx(th) * big_x);
    }
    if (e.p_minus <= kDegenerateProbability) {
        e.degenerate_minus = true;
        e.rho_minus = half_id;
    } else {
        e.rho_minus = cplx(1.0 / (2.0 * (1.0 + phi * th))) * (pauli::identity() + cplx(th) * big_x);
    }
    return e;
}

double conditional_entropy(const PosteriorEnsemble &e) {
    double h = 0.0;
    if (!e.degenerate_plus) {
        h += e.p_plus * von_neumann_entropy(e.rho_plus);
    }
    if (!e.degenerate_minus) {
        h += e.p_minus * von_neumann_entropy(e.rho_minus);
    }
    return h;
}

PhiTheta phi_theta(const XStateParams &params, const MeasurementDirection &dir) {
    const double a = params.c1 * dir.z1();
    const double b = params.c2 * dir.z2();
    const double c = params.c3 * dir.z3();
    return {params.s * dir.z3(), std::sqrt(a * a + b * b + c * c)};
}

namespace {

// Numerators this close to zero are treated as exact zeros (0 log 0 = 0).
constexpr double kLogDomainSlack = 1e-12;

// -n/4 log2(n/d) with the log-domain checks shared by both pairings.
double entropy_term(double numerator, double denominator, const char *label) {
    if (numerator < -kLogDomainSlack) {
        std::ostringstream msg;
        msg << "log-domain violation in term " << label << ": numerator " << numerator << " < 0";
        throw DomainError(msg.str());
    }
    if (numerator <= 0.0) {
        return 0.0;
    }
    if (!(denominator > 0.0)) {
        std::ostringstream msg;
        msg << "log-domain violation in term " << label << ": denominator " << denominator << " <= 0";
        throw DomainError(msg.str());
    }
    return -numerator / 4.0 * std::log2(numerator / denominator);
}

} // namespace

double f_paper(const PhiTheta &pt, const MeasurementStrength &x) {
    const double th = x.tanh();
    const double phi = pt.phi, theta = pt.theta;
    const double d_minus = 2.0 * (1.0 - phi * th);
    const double d_plus = 2.0 * (1.0 + phi * th);
    return entropy_term(1.0 + (phi + theta) * th, d_minus, "1+(phi+theta)tanh x") +
           entropy_term(1.0 + (phi - theta) * th, d_minus, "1+(phi-theta)tanh x") +
           entropy_term(1.0 + (-phi - theta) * th, d_plus, "1+(-phi-theta)tanh x") +
           entropy_term(1.0 + (-phi + theta) * th, d_plus, "1+(-phi+theta)tanh x");
}

double f_eig(const PhiTheta &pt, const MeasurementStrength &x) {
    const double th = x.tanh();
    const double phi = pt.phi, theta = pt.theta;
    const double d_minus = 2.0 * (1.0 - phi * th);
    const double d_plus = 2.0 * (1.0 + phi * th);
    return entropy_term(1.0 - (phi + theta) * th, d_minus, "1-(phi+theta)tanh x") +
           entropy_term(1.0 - (phi - theta) * th, d_minus, "1-(phi-theta)tanh x") +
           entropy_term(1.0 + (phi + theta) * th, d_plus, "1+(phi+theta)tanh x") +
           entropy_term(1.0 + (phi - theta) * th, d_plus, "1+(phi-theta)tanh x");
}

double pairing_residual(const PhiTheta &pt, const MeasurementStrength &x) {
    const double u = pt.phi * x.tanh();
    if (u == 0.0) {
        return 0.0;
    }
    return u * std::log2((1.0 + u) / (1.0 - u));
}

double weak_conditional_entropy_def(const Mat4 &rho, const MeasurementStrength &x, const MeasurementDirection &dir) {
    return conditional_entropy(posterior_ensemble(rho, x, dir));
}

double weak_conditional_entropy_def(const XStateParams &params, const MeasurementStrength &x,
                                    const MeasurementDirection &dir) {
    return weak_conditional_entropy_def(to_density_matrix(params), x, dir);
}

double projective_conditional_entropy(const Mat4 &rho, const MeasurementDirection &dir) {
    return conditional_entropy(projective_ensemble(rho, dir));
}

} // namespace sqd
