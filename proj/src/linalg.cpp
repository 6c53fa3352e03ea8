#include "sqd/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sqd {

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4::Storage e;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    e[(2 * i + k) * 4 + (2 * j + l)] = a(i, j) * b(k, l);
                }
            }
        }
    }
    return Mat4(e);
}

double Spectrum::sum() const {
    double s = 0.0;
    for (double v : values) {
        s += v;
    }
    return s;
}

namespace {

template <std::size_t N> using Embedding = std::array<std::array<double, 2 * N>, 2 * N>;

template <std::size_t N> Embedding<N> real_embedding(const Matrix<N> &m) {
    Embedding<N> a{};
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            // Hermitian part only; the caller has already bounded the anti-Hermitian residue.
            const cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a[i][j] = h.real();
            a[i + N][j + N] = h.real();
            a[i][j + N] = -h.imag();
            a[i + N][j] = h.imag();
        }
    }
    return a;
}

template <std::size_t M> double off_diagonal_norm(const std::array<std::array<double, M>, M> &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            if (i != j) {
                s += a[i][j] * a[i][j];
            }
        }
    }
    return std::sqrt(s);
}

template <std::size_t M> void jacobi_rotate(std::array<std::array<double, M>, M> &a, std::size_t p, std::size_t q) {
    const double apq = a[p][q];
    if (apq == 0.0) {
        return;
    }
    const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) {
        t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    for (std::size_t k = 0; k < M; ++k) {
        if (k == p || k == q) {
            continue;
        }
        const double akp = a[k][p];
        const double akq = a[k][q];
        a[k][p] = a[p][k] = c * akp - s * akq;
        a[k][q] = a[q][k] = s * akp + c * akq;
    }
    a[p][p] -= t * apq;
    a[q][q] += t * apq;
    a[p][q] = a[q][p] = 0.0;
}

} // namespace

template <std::size_t N> Spectrum herm_eigenvalues(const Matrix<N> &m, double tol) {
    const double asym = m.hermiticity_deviation();
    if (!(asym <= kHermiticityTolerance)) {
        std::ostringstream msg;
        msg << "herm_eigenvalues: matrix is not Hermitian (max |a_ij - conj(a_ji)| = " << asym << ")";
        throw DomainError(msg.str());
    }
    constexpr std::size_t M = 2 * N;
    auto a = real_embedding(m);
    const double scale = std::max(1.0, m.frobenius_norm());

    double off = off_diagonal_norm(a);
    int sweep = 0;
    while (off > tol * scale) {
        if (sweep == kJacobiMaxSweeps) {
            std::ostringstream msg;
            msg << "herm_eigenvalues: no convergence after " << kJacobiMaxSweeps
                << " sweeps (off-diagonal norm " << off << ")";
            throw NumericalError(msg.str());
        }
        for (std::size_t p = 0; p + 1 < M; ++p) {
            for (std::size_t q = p + 1; q < M; ++q) {
                jacobi_rotate(a, p, q);
            }
        }
        off = off_diagonal_norm(a);
        ++sweep;
    }

    std::array<double, M> diag;
    for (std::size_t i = 0; i < M; ++i) {
        diag[i] = a[i][i];
    }
    std::sort(diag.begin(), diag.end(), std::greater<>());
    Spectrum out;
    out.values.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        out.values.push_back(0.5 * (diag[2 * i] + diag[2 * i + 1]));
    }
    return out;
}

template <std::size_t N> DensityCheck is_density_matrix(const Matrix<N> &m, double tol) {
    DensityCheck check;
    check.hermiticity_deviation = m.hermiticity_deviation();
    const cplx tr = m.trace();
    check.trace_deviation = std::abs(tr - 1.0);
    if (check.hermiticity_deviation > tol) {
        std::ostringstream msg;
        msg << "Hermiticity: deviation " << check.hermiticity_deviation << " > " << tol;
        check.violations.push_back(msg.str());
    }
    if (check.trace_deviation > tol) {
        std::ostringstream msg;
        msg << "trace: |tr - 1| = " << check.trace_deviation << " > " << tol;
        check.violations.push_back(msg.str());
    }
    // Spectrum of the Hermitian part; meaningful even when the input is slightly off.
    const Matrix<N> herm = cplx(0.5) * (m + m.adjoint());
    check.min_eigenvalue = herm_eigenvalues(herm).min();
    if (check.min_eigenvalue < -tol) {
        std::ostringstream msg;
        msg << "PSD: minimum eigenvalue " << check.min_eigenvalue << " < " << -tol;
        check.violations.push_back(msg.str());
    }
    check.valid = check.violations.empty();
    return check;
}

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p >= -kEigenClamp) {
            h -= xlog2x(std::max(p, 0.0));
        } else {
            throw DomainError("shannon_entropy: negative probability " + std::to_string(p));
        }
    }
    return h;
}

template <std::size_t N> double von_neumann_entropy(const Matrix<N> &rho) {
    const double herm = rho.hermiticity_deviation();
    const double trace_dev = std::abs(rho.trace() - 1.0);
    std::vector<std::string> violations;
    if (herm > kDensityTolerance) {
        violations.push_back("Hermiticity (deviation " + std::to_string(herm) + ")");
    }
    if (trace_dev > kDensityTolerance) {
        violations.push_back("trace (|tr - 1| = " + std::to_string(trace_dev) + ")");
    }
    Spectrum spec;
    if (violations.empty()) {
        spec = herm_eigenvalues(cplx(0.5) * (rho + rho.adjoint()));
        if (spec.min() < -kDensityTolerance) {
            violations.push_back("PSD (minimum eigenvalue " + std::to_string(spec.min()) + ")");
        }
    }
    if (!violations.empty()) {
        std::string msg = "von_neumann_entropy: not a density matrix:";
        for (const auto &v : violations) {
            msg += " " + v + ";";
        }
        throw DomainError(msg);
    }
    double h = 0.0;
    for (double v : spec.values) {
        h -= xlog2x(std::max(v, 0.0));
    }
    return h;
}

namespace detail {

Mat2 partial_trace_unchecked(const Mat4 &m, Subsystem keep) {
    Mat2::Storage e{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < 2; ++k) {
                // basis index = 2 * a + b
                acc += keep == Subsystem::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
            }
            e[i * 2 + j] = acc;
        }
    }
    return Mat2(e);
}

} // namespace detail

Mat2 partial_trace(const Mat4 &rho, Subsystem keep) {
    const auto check = is_density_matrix(rho, kDensityTolerance);
    if (!check) {
        std::string msg = "partial_trace: input is not a density matrix:";
        for (const auto &v : check.violations) {
            msg += " " + v + ";";
        }
        throw DomainError(msg);
    }
    return detail::partial_trace_unchecked(rho, keep);
}

inline constexpr double kKrausCompleteness = 1e-10;

template <std::size_t N>
Matrix<N> apply_kraus(const Matrix<N> &rho, std::span<const Matrix<N>> ops) {
    Matrix<N> completeness;
    for (const auto &k : ops) {
        completeness = completeness + k.adjoint() * k;
    }
    const double dev = completeness.max_abs_diff(Matrix<N>::identity());
    if (dev > kKrausCompleteness) {
        std::ostringstream msg;
        msg << "apply_kraus: sum K^dagger K deviates from identity by " << dev;
        throw DomainError(msg.str());
    }
    Matrix<N> out;
    for (const auto &k : ops) {
        out = out + k * rho * k.adjoint();
    }
    return out;
}

template Spectrum herm_eigenvalues<2>(const Mat2 &, double);
template Spectrum herm_eigenvalues<4>(const Mat4 &, double);
template DensityCheck is_density_matrix<2>(const Mat2 &, double);
template DensityCheck is_density_matrix<4>(const Mat4 &, double);
template double von_neumann_entropy<2>(const Mat2 &);
template double von_neumann_entropy<4>(const Mat4 &);
template Mat2 apply_kraus<2>(const Mat2 &, std::span<const Mat2>);
template Mat4 apply_kraus<4>(const Mat4 &, std::span<const Mat4>);

} // namespace sqd
