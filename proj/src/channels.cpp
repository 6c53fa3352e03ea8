#include "sqd/channels.hpp"

#include <cmath>
#include <sstream>

#include "sqd/discord.hpp"

namespace sqd {

DephasingParams::DephasingParams(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "dephasing probability must lie in [0, 1], got " << p;
        throw DomainError(msg.str());
    }
}

DephasingParams DephasingParams::from_time(double gamma, double time) {
    DephasingParams out(p_of_time(gamma, time));
    out.gamma_ = gamma;
    out.time_ = time;
    return out;
}

double p_of_time(double gamma, double time) {
    if (!(gamma >= 0.0) || !(time >= 0.0) || !std::isfinite(gamma) || !std::isfinite(time)) {
        std::ostringstream msg;
        msg << "p_of_time: gamma and time must be finite and non-negative, got gamma=" << gamma
            << " time=" << time;
        throw DomainError(msg.str());
    }
    return -std::expm1(-gamma * time);
}

std::array<Mat4, 2> kraus_phase_flip_side(const DephasingParams &p, Subsystem side) {
    const Mat2 g0 = cplx(std::sqrt(1.0 - p.p() / 2.0)) * pauli::identity();
    const Mat2 g1 = cplx(std::sqrt(p.p() / 2.0)) * pauli::z();
    const Mat2 id = pauli::identity();
    if (side == Subsystem::A) {
        return {kron(g0, id), kron(g1, id)};
    }
    return {kron(id, g0), kron(id, g1)};
}

std::array<Mat4, 4> kraus_phase_flip(const DephasingParams &p) {
    const auto a = kraus_phase_flip_side(p, Subsystem::A);
    const auto b = kraus_phase_flip_side(p, Subsystem::B);
    return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

XStateParams evolve_params(const XStateParams &params, const DephasingParams &p) {
    require_valid(params, ValidationMode::Relaxed);
    const double factor = (1.0 - p.p()) * (1.0 - p.p());
    const XStateParams out{params.s, factor * params.c1, factor * params.c2, params.c3};
    require_valid(out, ValidationMode::Relaxed);
    return out;
}

double sqd_dephased_closed(const XStateParams &params, const MeasurementStrength &x, const DephasingParams &p) {
    require_valid(params, ValidationMode::Relaxed);
    const double s = params.s, c1 = params.c1, c2 = params.c2, c3 = params.c3;
    const double th = x.tanh();
    const double q4 = std::pow(1.0 - p.p(), 4);

    auto entropy_term = [](double n, double d) {
        if (n < -1e-12) {
            throw DomainError("sqd_dephased_closed: log-domain violation, numerator " + std::to_string(n));
        }
        return n > 0.0 ? n * std::log2(n / d) : 0.0;
    };
    const double weak = -0.25 * (entropy_term(1 + (s + c3) * th, 2 * (1 - s * th)) +
                                 entropy_term(1 + (s - c3) * th, 2 * (1 - s * th)) +
                                 entropy_term(1 + (-s - c3) * th, 2 * (1 + s * th)) +
                                 entropy_term(1 + (-s + c3) * th, 2 * (1 + s * th)));
    const double reduced = -0.5 * (xlog2x(1 - s) + xlog2x(1 + s));
    const double r_plus = std::sqrt(s * s + q4 * (c1 + c2) * (c1 + c2));
    const double r_minus = std::sqrt(s * s + q4 * (c1 - c2) * (c1 - c2));
    const double joint = 0.25 * (xlog2x(1 - c3 + r_plus) + xlog2x(std::max(0.0, 1 - c3 - r_plus)) +
                                 xlog2x(1 + c3 + r_minus) + xlog2x(std::max(0.0, 1 + c3 - r_minus)));
    // reduced = S(rho_B) - 1 and joint = 2 - S(rho_AB), so the three brackets alone sum to one bit
    // above weak + S(rho_B) - S(rho_AB).
    return weak + reduced + joint - 1.0;
}

} // namespace sqd
