#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sqd/linalg.hpp"

using namespace sqd;

namespace {

Mat2 random_mat2(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Mat2::Storage e;
    for (auto &v : e) {
        v = cplx(g(rng), g(rng));
    }
    return Mat2(e);
}

Mat4 random_hermitian4(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Mat4::Storage e;
    for (auto &v : e) {
        v = cplx(g(rng), g(rng));
    }
    const Mat4 a(e);
    return cplx(0.5) * (a + a.adjoint());
}

// Random mixed state G G^dagger / tr.
Mat4 random_density4(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Mat4::Storage e;
    for (auto &v : e) {
        v = cplx(g(rng), g(rng));
    }
    const Mat4 a(e);
    const Mat4 p = a * a.adjoint();
    return cplx(1.0 / p.trace().real()) * p;
}

Mat2 ket_projector(cplx a, cplx b) {
    return Mat2({a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b)});
}

} // namespace

TEST_CASE("kron places a(0,0) b in the top-left block") {
    const Mat4 zi = kron(pauli::z(), pauli::identity());
    CHECK(zi.max_abs_diff(Mat4::diagonal({1, 1, -1, -1})) == 0.0);

    const Mat4 iz = kron(pauli::identity(), pauli::z());
    CHECK(iz.max_abs_diff(Mat4::diagonal({1, -1, 1, -1})) == 0.0);

    const Mat4 xx = kron(pauli::x(), pauli::x());
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(xx(i, j) == cplx(i + j == 3 ? 1.0 : 0.0));
        }
    }

    // sigma_2 (x) sigma_2 has -1 on the outer anti-diagonal and +1 on the inner one.
    const Mat4 yy = kron(pauli::y(), pauli::y());
    CHECK(yy(0, 3) == cplx(-1.0));
    CHECK(yy(3, 0) == cplx(-1.0));
    CHECK(yy(1, 2) == cplx(1.0));
    CHECK(yy(2, 1) == cplx(1.0));
}

TEST_CASE("kron: mixed-product and trace identities") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Mat2 a = random_mat2(rng), b = random_mat2(rng), c = random_mat2(rng), d = random_mat2(rng);
        const cplx lhs = kron(a, b).trace();
        const cplx rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        CHECK((kron(a, b) * kron(c, d)).max_abs_diff(kron(a * c, b * d)) <= 1e-12 * 100.0);
    }
}

TEST_CASE("herm_eigenvalues on Pauli matrices and the identity") {
    const auto sx = herm_eigenvalues(pauli::x());
    REQUIRE(sx.values.size() == 2);
    CHECK(sx.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sx.values[1] == doctest::Approx(-1.0).epsilon(1e-14));

    const auto sy = herm_eigenvalues(pauli::y());
    CHECK(std::abs(sy.values[0] - 1.0) <= 1e-14);
    CHECK(std::abs(sy.values[1] + 1.0) <= 1e-14);

    const auto id = herm_eigenvalues(Mat4::identity());
    for (double v : id.values) {
        CHECK(v == 1.0);
    }
}

TEST_CASE("herm_eigenvalues rejects non-Hermitian input") {
    const Mat2 upper({0.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(herm_eigenvalues(upper), DomainError);
    // Within the 1e-10 Hermiticity tolerance the input is accepted.
    const Mat2 almost({1.0, cplx(0.5, 1e-12), 0.5, 0.0});
    CHECK_NOTHROW(herm_eigenvalues(almost));
}

TEST_CASE("herm_eigenvalues: trace, sorting and unitary invariance") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat4 h = random_hermitian4(rng);
        const auto spec = herm_eigenvalues(h);
        REQUIRE(spec.values.size() == 4);
        CHECK(std::abs(spec.sum() - h.trace().real()) <= 1e-12 * (1.0 + h.frobenius_norm()));
        for (std::size_t i = 1; i < 4; ++i) {
            CHECK(spec.values[i - 1] >= spec.values[i]);
        }
        // Conjugating by a local unitary leaves the spectrum alone.
        const double a = 0.3 + trial * 0.01;
        const Mat2 u({std::cos(a), cplx(0.0, std::sin(a)), cplx(0.0, std::sin(a)), std::cos(a)});
        const Mat4 uu = kron(u, pauli::identity());
        const auto rotated = herm_eigenvalues(uu * h * uu.adjoint());
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(rotated.values[i] - spec.values[i]) <= 1e-11);
        }
    }
}

TEST_CASE("von_neumann_entropy examples") {
    CHECK(von_neumann_entropy(cplx(0.25) * Mat4::identity()) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(von_neumann_entropy(Mat4::diagonal({1, 0, 0, 0}))) <= 1e-14);
    CHECK(von_neumann_entropy(Mat4::diagonal({0.5, 0.5, 0, 0})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(von_neumann_entropy(cplx(0.5) * Mat2::identity()) == doctest::Approx(1.0).epsilon(1e-14));

    // Bell state (|00> + |11>)/sqrt 2: pure, maximally mixed marginals.
    Mat4::Storage bell{};
    bell[0] = bell[3] = bell[12] = bell[15] = 0.5;
    const Mat4 phi(bell);
    CHECK(std::abs(von_neumann_entropy(phi)) <= 1e-12);
    CHECK(von_neumann_entropy(partial_trace(phi, Subsystem::A)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("von_neumann_entropy names the violated property") {
    try {
        von_neumann_entropy(Mat4::diagonal({1.5, -0.5, 0, 0}));
        FAIL("expected DomainError");
    } catch (const DomainError &e) {
        CHECK(std::string(e.what()).find("PSD") != std::string::npos);
    }
    try {
        von_neumann_entropy(Mat4::diagonal({0.5, 0.2, 0, 0}));
        FAIL("expected DomainError");
    } catch (const DomainError &e) {
        CHECK(std::string(e.what()).find("trace") != std::string::npos);
    }
    try {
        von_neumann_entropy(Mat2({0.5, 0.3, 0.0, 0.5}));
        FAIL("expected DomainError");
    } catch (const DomainError &e) {
        CHECK(std::string(e.what()).find("Hermiticity") != std::string::npos);
    }
}

TEST_CASE("von_neumann_entropy bounds on random states") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat4 rho = random_density4(rng);
        const double s = von_neumann_entropy(rho);
        CHECK(s >= -1e-12);
        CHECK(s <= 2.0 + 1e-12);
        // Subadditivity and the Araki-Lieb bound.
        const double sa = von_neumann_entropy(partial_trace(rho, Subsystem::A));
        const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
        CHECK(s <= sa + sb + 1e-10);
        CHECK(s >= std::abs(sa - sb) - 1e-10);
    }
}

TEST_CASE("partial_trace examples") {
    // |01><01| keeps |0><0| on A and |1><1| on B.
    const Mat4 k01 = Mat4::diagonal({0, 1, 0, 0});
    CHECK(partial_trace(k01, Subsystem::A).max_abs_diff(Mat2::diagonal({1, 0})) == 0.0);
    CHECK(partial_trace(k01, Subsystem::B).max_abs_diff(Mat2::diagonal({0, 1})) == 0.0);

    // Product states factor exactly (up to rounding).
    const Mat2 a = ket_projector(std::cos(0.4), cplx(0.0, std::sin(0.4)));
    const Mat2 b = cplx(0.5) * (Mat2::identity() + cplx(0.6) * pauli::x());
    const Mat4 ab = kron(a, b);
    CHECK(partial_trace(ab, Subsystem::A).max_abs_diff(a) <= 1e-15);
    CHECK(partial_trace(ab, Subsystem::B).max_abs_diff(b) <= 1e-15);

    CHECK_THROWS_AS(partial_trace(Mat4::diagonal({1.5, -0.5, 0, 0}), Subsystem::A), DomainError);
}

TEST_CASE("is_density_matrix examples") {
    CHECK(is_density_matrix(cplx(0.25) * Mat4::identity(), 1e-12).valid);

    const auto neg = is_density_matrix(Mat4::diagonal({1.5, -0.5, 0, 0}), 1e-8);
    CHECK_FALSE(neg.valid);
    CHECK(neg.min_eigenvalue == doctest::Approx(-0.5));
    REQUIRE(neg.violations.size() == 1);
    CHECK(neg.violations[0].find("PSD") != std::string::npos);

    // sigma_1 is Hermitian but has trace 0 and eigenvalue -1.
    const auto sx = is_density_matrix(pauli::x(), 1e-8);
    CHECK_FALSE(sx.valid);
    CHECK(sx.violations.size() == 2);
    CHECK(sx.trace_deviation == doctest::Approx(1.0));

    const auto nh = is_density_matrix(Mat2({0.5, 0.1, 0.0, 0.5}), 1e-8);
    CHECK_FALSE(nh.valid);
    CHECK(nh.hermiticity_deviation == doctest::Approx(0.1));
}

TEST_CASE("apply_kraus examples") {
    std::mt19937_64 rng(5);
    const Mat4 rho = random_density4(rng);

    const std::array<Mat4, 1> identity{Mat4::identity()};
    CHECK(apply_kraus<4>(rho, identity).max_abs_diff(rho) <= 1e-15);

    // Full dephasing of one qubit, {Pi_0, Pi_1} on A: kills coherences between A blocks.
    const std::array<Mat4, 2> dephase{kron(Mat2::diagonal({1, 0}), Mat2::identity()),
                                      kron(Mat2::diagonal({0, 1}), Mat2::identity())};
    const Mat4 out = apply_kraus<4>(rho, dephase);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const cplx expected = (i / 2 == j / 2) ? rho(i, j) : cplx{};
            CHECK(std::abs(out(i, j) - expected) <= 1e-15);
        }
    }

    const std::array<Mat2, 1> half{cplx(0.5) * Mat2::identity()};
    CHECK_THROWS_AS(apply_kraus<2>(Mat2::diagonal({1, 0}), half), DomainError);
}

TEST_CASE("apply_kraus preserves trace and positivity for random channels") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double p = u(rng);
        const std::array<Mat4, 2> ops{cplx(std::sqrt(1.0 - p)) * Mat4::identity(),
                                      cplx(std::sqrt(p)) * kron(pauli::x(), pauli::y())};
        const Mat4 rho = random_density4(rng);
        const Mat4 out = apply_kraus<4>(rho, ops);
        const auto check = is_density_matrix(out, 1e-12);
        CHECK(check.valid);
    }
}

TEST_CASE("shannon_entropy") {
    const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
    CHECK(shannon_entropy(uniform) == doctest::Approx(2.0).epsilon(1e-15));
    const std::array<double, 2> tiny{1.0, -1e-12};
    CHECK(shannon_entropy(tiny) == 0.0);
    const std::array<double, 2> bad{1.1, -0.1};
    CHECK_THROWS_AS(shannon_entropy(bad), DomainError);
    CHECK(xlog2x(0.0) == 0.0);
    CHECK(xlog2x(0.5) == -0.5);
}
