#include "sqd/states.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace sqd {

std::string ValidationResult::describe() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i != 0) {
            out << "; ";
        }
        out << violations[i].constraint << " violated (margin " << violations[i].margin << ")";
    }
    return out.str();
}

StateSpectrum spectrum_unchecked(const XStateParams &p) {
    const double r_plus = std::hypot(p.s, p.c1 + p.c2);
    const double r_minus = std::hypot(p.s, p.c1 - p.c2);
    return {(1.0 - p.c3 + r_plus) / 4.0, (1.0 - p.c3 - r_plus) / 4.0, (1.0 + p.c3 + r_minus) / 4.0,
            (1.0 + p.c3 - r_minus) / 4.0};
}

ValidationResult validate(const XStateParams &p, ValidationMode mode) {
    ValidationResult result;
    auto check = [&](bool ok, const char *constraint, double margin) {
        if (!ok) {
            result.violations.push_back({constraint, margin});
        }
    };
    for (double v : {p.s, p.c1, p.c2, p.c3}) {
        if (!std::isfinite(v)) {
            result.violations.push_back({"finite parameters", std::numeric_limits<double>::infinity()});
            return result;
        }
    }

    if (mode == ValidationMode::Strict) {
        const double a1 = std::abs(p.c1), a2 = std::abs(p.c2), a3 = std::abs(p.c3), as = std::abs(p.s);
        check(a1 < a2, "|c1| < |c2|", a1 - a2);
        check(a2 < a3, "|c2| < |c3|", a2 - a3);
        check(as > 0.0, "0 < |s|", -as);
        check(as < 1.0 - a3, "|s| < 1-|c3|", as - (1.0 - a3));
    } else {
        check(std::abs(p.s) <= 1.0, "|s| <= 1", std::abs(p.s) - 1.0);
        check(std::abs(p.c1) <= 1.0, "|c1| <= 1", std::abs(p.c1) - 1.0);
        check(std::abs(p.c2) <= 1.0, "|c2| <= 1", std::abs(p.c2) - 1.0);
        check(std::abs(p.c3) <= 1.0, "|c3| <= 1", std::abs(p.c3) - 1.0);
    }

    // The ordering constraints alone do not imply a positive spectrum.
    const auto lam = spectrum_unchecked(p);
    check(lam.lambda2 >= -kPhysicalityTolerance, "physicality: 1 - c3 - sqrt(s^2+(c1+c2)^2) >= 0",
          -4.0 * lam.lambda2);
    check(lam.lambda4 >= -kPhysicalityTolerance, "physicality: 1 + c3 - sqrt(s^2+(c1-c2)^2) >= 0",
          -4.0 * lam.lambda4);
    return result;
}

void require_valid(const XStateParams &params, ValidationMode mode) {
    const auto result = validate(params, mode);
    if (!result) {
        throw DomainError("invalid X-state parameters: " + result.describe());
    }
}

Mat4 to_density_matrix(const XStateParams &p) {
    require_valid(p, ValidationMode::Relaxed);
    const double q = 0.25;
    // clang-format off
    return Mat4({
        q * (1 + p.s + p.c3), 0.0,                  0.0,                  q * (p.c1 - p.c2),
        0.0,                  q * (1 - p.s - p.c3), q * (p.c1 + p.c2),    0.0,
        0.0,                  q * (p.c1 + p.c2),    q * (1 + p.s - p.c3), 0.0,
        q * (p.c1 - p.c2),    0.0,                  0.0,                  q * (1 - p.s + p.c3),
    });
    // clang-format on
}

Mat4 pauli_expansion(const XStateParams &p) {
    const Mat2 id = pauli::identity();
    const Mat4 sum = kron(id, id) + cplx(p.s) * kron(id, pauli::z()) + cplx(p.c1) * kron(pauli::x(), pauli::x()) +
                     cplx(p.c2) * kron(pauli::y(), pauli::y()) + cplx(p.c3) * kron(pauli::z(), pauli::z());
    return cplx(0.25) * sum;
}

StateSpectrum spectrum(const XStateParams &params) {
    require_valid(params, ValidationMode::Relaxed);
    return spectrum_unchecked(params);
}

double joint_entropy(const XStateParams &params) {
    const auto lam = spectrum(params).values();
    return shannon_entropy(lam);
}

double binary_term(double v) {
    if (!(std::abs(v) <= 1.0)) {
        throw DomainError("binary_term: |v| <= 1 required, got " + std::to_string(v));
    }
    return -0.5 * (xlog2x(1.0 - v) + xlog2x(1.0 + v));
}

ReducedEntropies reduced_entropies(const XStateParams &params) {
    require_valid(params, ValidationMode::Relaxed);
    return {1.0, 1.0 + binary_term(params.s)};
}

double ParamSampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

XStateParams ParamSampler::strict() {
    for (;;) {
        const XStateParams p{uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        if (validate(p, ValidationMode::Strict)) {
            return p;
        }
    }
}

XStateParams ParamSampler::relaxed() {
    for (;;) {
        const XStateParams p{uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        if (validate(p, ValidationMode::Relaxed)) {
            return p;
        }
    }
}

XStateParams ParamSampler::bell_diagonal() {
    for (;;) {
        const XStateParams p{0.0, uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
        const bool ordered =
            std::abs(p.c1) < std::abs(p.c2) && std::abs(p.c2) < std::abs(p.c3) && std::abs(p.c3) < 1.0;
        if (ordered && validate(p, ValidationMode::Relaxed)) {
            return p;
        }
    }
}

namespace {

double parse_number(std::string_view token) {
    double v = 0.0;
    const auto *end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw DomainError("parameter file: not a decimal number: '" + std::string(token) + "'");
    }
    return v;
}

} // namespace

// Accepts either four bare numbers in the order s c1 c2 c3, or "key = value"
// lines for the keys s, c1, c2, c3. '#' starts a comment; commas count as
// whitespace.
XStateParams parse_params_text(const std::string &text) {
    std::vector<std::string> bare;
    std::map<std::string, double> keyed;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        for (char &ch : line) {
            if (ch == ',' || ch == '\t' || ch == '\r') {
                ch = ' ';
            }
        }
        if (const auto eq = line.find('='); eq != std::string::npos) {
            std::istringstream key_in(line.substr(0, eq)), val_in(line.substr(eq + 1));
            std::string key, val, extra;
            key_in >> key;
            val_in >> val;
            if (key.empty() || val.empty() || (val_in >> extra)) {
                throw DomainError("parameter file: malformed line '" + line + "'");
            }
            if (key != "s" && key != "c1" && key != "c2" && key != "c3") {
                throw DomainError("parameter file: unknown key '" + key + "'");
            }
            keyed[key] = parse_number(val);
        } else {
            std::istringstream in(line);
            std::string tok;
            while (in >> tok) {
                bare.push_back(tok);
            }
        }
    }
    if (!bare.empty() && !keyed.empty()) {
        throw DomainError("parameter file: mixes bare values and key = value lines");
    }
    if (!bare.empty()) {
        if (bare.size() != 4) {
            throw DomainError("parameter file: expected 4 values (s c1 c2 c3), got " + std::to_string(bare.size()));
        }
        return {parse_number(bare[0]), parse_number(bare[1]), parse_number(bare[2]), parse_number(bare[3])};
    }
    for (const char *key : {"s", "c1", "c2", "c3"}) {
        if (!keyed.contains(key)) {
            throw DomainError(std::string("parameter file: missing key '") + key + "'");
        }
    }
    return {keyed["s"], keyed["c1"], keyed["c2"], keyed["c3"]};
}

} // namespace sqd
