#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqd/channels.hpp"
#include "sqd/discord.hpp"

using namespace sqd;

namespace {

const XStateParams kFigB{0.2, 0.3, -0.4, 0.56};

Mat4 map_side(const Mat4 &rho, const std::array<Mat4, 2> &ops) { return apply_kraus<4>(rho, ops); }

} // namespace

TEST_CASE("DephasingParams domain and p_of_time") {
    CHECK_NOTHROW(DephasingParams(0.0));
    CHECK_NOTHROW(DephasingParams(1.0));
    CHECK_THROWS_AS(DephasingParams(-0.01), DomainError);
    CHECK_THROWS_AS(DephasingParams(1.01), DomainError);

    CHECK(p_of_time(1.0, std::numbers::ln2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p_of_time(0.0, 5.0) == 0.0);
    CHECK(p_of_time(2.0, 0.0) == 0.0);
    CHECK(p_of_time(1e3, 1e3) == 1.0);
    CHECK_THROWS_AS(p_of_time(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(p_of_time(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(p_of_time(INFINITY, 1.0), DomainError);

    const auto d = DephasingParams::from_time(0.5, 2.0);
    CHECK(d.p() == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(d.gamma().value() == 0.5);
    CHECK(d.time().value() == 2.0);
    CHECK_FALSE(DephasingParams(0.3).gamma().has_value());
}

TEST_CASE("Kraus operators are complete") {
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
        Mat4 sum;
        for (const auto &k : kraus_phase_flip(DephasingParams(p))) {
            sum = sum + k.adjoint() * k;
        }
        CHECK(sum.max_abs_diff(Mat4::identity()) <= 1e-15);
    }
}

TEST_CASE("p = 0 is the identity channel and p = 1 removes the sigma_1, sigma_2 correlations") {
    const Mat4 rho = to_density_matrix(kFigB);
    const auto id = kraus_phase_flip(DephasingParams(0.0));
    CHECK(apply_kraus<4>(rho, id).max_abs_diff(rho) <= 1e-16);

    const Mat4 full = apply_kraus<4>(rho, kraus_phase_flip(DephasingParams(1.0)));
    CHECK(full.max_abs_diff(to_density_matrix({0.2, 0.0, 0.0, 0.56})) <= 1e-15);
}

TEST_CASE("evolve_params examples") {
    const auto half = evolve_params(kFigB, DephasingParams(0.5));
    CHECK(half.s == 0.2);
    CHECK(half.c1 == doctest::Approx(0.075).epsilon(1e-15));
    CHECK(half.c2 == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(half.c3 == 0.56);
    CHECK(evolve_params(kFigB, DephasingParams(0.0)) == kFigB);
    CHECK_THROWS_AS(evolve_params({0.5, 0.3, -0.4, 0.56}, DephasingParams(0.1)), DomainError);
}

TEST_CASE("Kraus map agrees with the parameter update") {
    ParamSampler sampler(83);
    for (int i = 0; i < 100; ++i) {
        const XStateParams params = sampler.strict();
        for (int k = 0; k <= 10; ++k) {
            const DephasingParams p(k / 10.0);
            const Mat4 mapped = apply_kraus<4>(to_density_matrix(params), kraus_phase_flip(p));
            CHECK(mapped.max_abs_diff(to_density_matrix(evolve_params(params, p))) <= 1e-12);
        }
    }
}

TEST_CASE("the channels on A and B commute") {
    ParamSampler sampler(89);
    for (int i = 0; i < 100; ++i) {
        const Mat4 rho = to_density_matrix(sampler.strict());
        const DephasingParams p(0.37);
        const auto a = kraus_phase_flip_side(p, Subsystem::A);
        const auto b = kraus_phase_flip_side(p, Subsystem::B);
        CHECK(map_side(map_side(rho, a), b).max_abs_diff(map_side(map_side(rho, b), a)) <= 1e-14);
        CHECK(map_side(map_side(rho, a), b).max_abs_diff(apply_kraus<4>(rho, kraus_phase_flip(p))) <= 1e-14);
    }
}

TEST_CASE("sqd_dephased_closed") {
    // p = 0 reduces to the undephased closed form.
    for (double xv : {0.0, 0.5, 1.0, 5.0}) {
        const MeasurementStrength x(xv);
        CHECK(std::abs(sqd_dephased_closed(kFigB, x, DephasingParams(0.0)) - sqd_paper_closed(kFigB, x)) <= 1e-14);
    }

    /* numpy: q = 0.49; rho(0.2, 0.3 q, -0.4 q, 0.56)
     *   S_AB = 1.6871631572435395
     *   f_paper(0.2, 0.56, 1) + S_B - S_AB = 0.07696557081658817
     */
    CHECK(std::abs(sqd_dephased_closed(kFigB, MeasurementStrength(1.0), DephasingParams(0.3)) - 0.07696557081658817) <=
          1e-13);

    ParamSampler sampler(97);
    for (int i = 0; i < 50; ++i) {
        const XStateParams params = sampler.strict();
        for (double pv : {0.1, 0.6, 1.0}) {
            const DephasingParams p(pv);
            const MeasurementStrength x(1.4);
            CHECK(std::abs(sqd_dephased_closed(params, x, p) - sqd_paper_closed(evolve_params(params, p), x)) <= 1e-12);
        }
    }
}

TEST_CASE("dephasing never increases the closed form along p") {
    for (double xv : {1.0, 5.0}) {
        const MeasurementStrength x(xv);
        double prev = sqd_dephased_closed(kFigB, x, DephasingParams(0.0));
        for (int k = 1; k <= 100; ++k) {
            const double v = sqd_dephased_closed(kFigB, x, DephasingParams(k / 100.0));
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("successive dephasings multiply the correlation factors") {
    ParamSampler sampler(103);
    for (int i = 0; i < 50; ++i) {
        const XStateParams q = sampler.strict();
        const double p1 = 0.05 * i / 2.5, p2 = 0.3;
        const auto twice = evolve_params(evolve_params(q, DephasingParams(p1)), DephasingParams(p2));
        const double factor = (1 - p1) * (1 - p1) * (1 - p2) * (1 - p2);
        CHECK(std::abs(twice.c1 - factor * q.c1) <= 1e-15);
        CHECK(std::abs(twice.c2 - factor * q.c2) <= 1e-15);
        CHECK(twice.s == q.s);
        CHECK(twice.c3 == q.c3);
    }
}

TEST_CASE("full dephasing leaves the state (s, 0, 0, c3)") {
    const DephasingParams full(1.0);
    for (double xv : {0.5, 1.0, 5.0}) {
        const MeasurementStrength x(xv);
        CHECK(std::abs(sqd_dephased_closed(kFigB, x, full) - sqd_paper_closed({0.2, 0.0, 0.0, 0.56}, x)) <= 1e-14);
    }
}
