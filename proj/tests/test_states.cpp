#include <doctest.h>

#include <cmath>

#include "sqd/states.hpp"

using namespace sqd;

namespace {

const XStateParams kFigA{0.0, 0.3, -0.4, 0.56};
const XStateParams kFigB{0.2, 0.3, -0.4, 0.56};

bool mentions(const ValidationResult &r, const std::string &needle) {
    for (const auto &v : r.violations) {
        if (v.constraint.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("validate: strict ordering and bounds") {
    CHECK(validate(kFigB, ValidationMode::Strict).ok());

    // s = 0 is outside the strict family but fine in relaxed mode.
    const auto bell = validate(kFigA, ValidationMode::Strict);
    CHECK_FALSE(bell.ok());
    CHECK(mentions(bell, "0 < |s|"));
    CHECK(validate(kFigA, ValidationMode::Relaxed).ok());

    const auto unordered = validate({0.1, 0.5, 0.4, 0.6}, ValidationMode::Strict);
    CHECK(mentions(unordered, "|c1| < |c2|"));

    const auto wide = validate({0.5, 0.3, -0.4, 0.56}, ValidationMode::Strict);
    CHECK(mentions(wide, "|s| < 1-|c3|"));
    CHECK(mentions(wide, "physicality"));
    for (const auto &v : wide.violations) {
        CHECK(v.margin >= 0.0);
    }
}

TEST_CASE("validate: ordering does not imply physicality") {
    // Strictly ordered, |s| < 1 - |c3|, yet lambda_2 < 0.
    const XStateParams p{0.4, 0.3, 0.4, 0.5};
    const auto r = validate(p, ValidationMode::Strict);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].constraint.find("physicality: 1 - c3") != std::string::npos);
    CHECK(r.violations[0].margin == doctest::Approx(-4.0 * spectrum_unchecked(p).lambda2));
    CHECK(spectrum_unchecked(p).lambda2 == doctest::Approx(-0.0765564437).epsilon(1e-9));
    CHECK_THROWS_AS(require_valid(p, ValidationMode::Relaxed), DomainError);
}

TEST_CASE("validate: relaxed bounds and non-finite input") {
    CHECK(validate({0, 0, 0, 0}, ValidationMode::Relaxed).ok());
    CHECK(mentions(validate({0, 0, 0, 1.2}, ValidationMode::Relaxed), "|c3| <= 1"));
    CHECK(mentions(validate({NAN, 0, 0, 0}, ValidationMode::Relaxed), "finite"));
    // A Bell state sits on the boundary.
    CHECK(validate({0, 1, -1, 1}, ValidationMode::Relaxed).ok());
}

TEST_CASE("require_valid lists every violation") {
    try {
        require_valid({0.5, 0.5, 0.4, 0.56}, ValidationMode::Strict);
        FAIL("expected DomainError");
    } catch (const DomainError &e) {
        const std::string msg = e.what();
        CHECK(msg.find("|c1| < |c2|") != std::string::npos);
        CHECK(msg.find("|s| < 1-|c3|") != std::string::npos);
    }
}

TEST_CASE("to_density_matrix matches the Pauli expansion and the closed spectrum") {
    const Mat4 rho = to_density_matrix(kFigB);
    CHECK(rho.max_abs_diff(pauli_expansion(kFigB)) <= 1e-16);
    CHECK(rho(0, 0) == cplx(0.25 * (1 + 0.2 + 0.56)));
    CHECK(rho(0, 3) == cplx(0.25 * (0.3 + 0.4)));
    CHECK(rho(1, 2) == cplx(0.25 * (0.3 - 0.4)));

    ParamSampler sampler(17);
    for (int i = 0; i < 300; ++i) {
        const XStateParams p = sampler.relaxed();
        const Mat4 m = to_density_matrix(p);
        CHECK(m.max_abs_diff(pauli_expansion(p)) <= 1e-15);
        CHECK(is_density_matrix(m, 1e-12).valid);
        auto closed = spectrum(p).values();
        std::sort(closed.begin(), closed.end(), std::greater<>());
        const auto numeric = herm_eigenvalues(m);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(std::abs(closed[k] - numeric.values[k]) <= 1e-12);
        }
    }
}

TEST_CASE("spectrum and entropies at the figure parameters") {
    // numpy: np.linalg.eigvalsh(rho(0, 0.3, -0.4, 0.56)) -> [0.085, 0.135, 0.215, 0.565]
    const auto a = spectrum(kFigA);
    CHECK(a.lambda1 == doctest::Approx(0.135).epsilon(1e-14));
    CHECK(a.lambda2 == doctest::Approx(0.085).epsilon(1e-14));
    CHECK(a.lambda3 == doctest::Approx(0.565).epsilon(1e-14));
    CHECK(a.lambda4 == doctest::Approx(0.215).epsilon(1e-14));

    /* numpy:
     *   w = np.linalg.eigvalsh(rho(*p)); -np.sum(w * np.log2(w))
     *   p = (0, .3, -.4, .56)  -> 1.6344639994508454
     *   p = (.2, .3, -.4, .56) -> 1.5897810293426857
     *   S(tr_A rho), p = (.2, ...) -> 0.9709505944546686
     */
    CHECK(std::abs(joint_entropy(kFigA) - 1.6344639994508454) <= 1e-13);
    CHECK(std::abs(joint_entropy(kFigB) - 1.5897810293426857) <= 1e-13);
    const auto red = reduced_entropies(kFigB);
    CHECK(red.s_a == 1.0);
    CHECK(std::abs(red.s_b - 0.9709505944546686) <= 1e-14);

    // Closed forms against matrix-level entropies of the reduced states.
    const Mat4 rho = to_density_matrix(kFigB);
    CHECK(std::abs(von_neumann_entropy(partial_trace(rho, Subsystem::B)) - red.s_b) <= 1e-13);
    CHECK(std::abs(von_neumann_entropy(partial_trace(rho, Subsystem::A)) - red.s_a) <= 1e-13);
    CHECK(std::abs(von_neumann_entropy(rho) - joint_entropy(kFigB)) <= 1e-12);
}

TEST_CASE("binary_term") {
    CHECK(binary_term(0.0) == 0.0);
    CHECK(binary_term(1.0) == doctest::Approx(-1.0));
    CHECK(binary_term(-1.0) == doctest::Approx(-1.0));
    CHECK(binary_term(0.3) == binary_term(-0.3));
    CHECK_THROWS_AS(binary_term(1.0 + 1e-9), DomainError);
}

TEST_CASE("entropy bounds on sampled states") {
    ParamSampler sampler(23);
    for (int i = 0; i < 300; ++i) {
        const XStateParams p = sampler.strict();
        const double sab = joint_entropy(p);
        const auto red = reduced_entropies(p);
        CHECK(sab >= 0.0);
        CHECK(sab <= 2.0);
        CHECK(red.s_b <= 1.0);
        // Mutual information is non-negative.
        CHECK(red.s_a + red.s_b - sab >= -1e-12);
    }
}

TEST_CASE("ParamSampler is reproducible and respects each family") {
    ParamSampler a(99), b(99);
    for (int i = 0; i < 50; ++i) {
        const auto pa = a.strict();
        CHECK(pa == b.strict());
        CHECK(validate(pa, ValidationMode::Strict).ok());
    }
    ParamSampler c(5);
    for (int i = 0; i < 50; ++i) {
        const auto p = c.bell_diagonal();
        CHECK(p.s == 0.0);
        CHECK(std::abs(p.c1) < std::abs(p.c2));
        CHECK(std::abs(p.c2) < std::abs(p.c3));
        CHECK(std::abs(p.c3) < 1.0);
    }
}

TEST_CASE("parse_params_text") {
    CHECK(parse_params_text("0.2 0.3 -0.4 0.56\n") == kFigB);
    CHECK(parse_params_text("0.2, 0.3, -0.4, 0.56") == kFigB);
    CHECK(parse_params_text("# figure state\ns = 0.2\nc1 = 0.3\nc2=-0.4\nc3 = 0.56 # trailing\n") == kFigB);

    CHECK_THROWS_AS(parse_params_text("0.2 0.3 -0.4"), DomainError);
    CHECK_THROWS_AS(parse_params_text("0.2 0.3 -0.4 abc"), DomainError);
    CHECK_THROWS_AS(parse_params_text("s = 0.2\nc1 = 0.3\nc2 = -0.4\n"), DomainError);
    CHECK_THROWS_AS(parse_params_text("s = 0.2\nc4 = 0.3\n"), DomainError);
    CHECK_THROWS_AS(parse_params_text("s = 0.2\n0.3 -0.4 0.56\n"), DomainError);
}
