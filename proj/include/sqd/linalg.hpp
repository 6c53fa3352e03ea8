#pragma once

/**
 * @file
 * Small dense complex matrices for one- and two-qubit states: Pauli
 * algebra, Kronecker products, Hermitian spectra, partial traces, von
 * Neumann entropy and Kraus maps.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sqd {

using cplx = std::complex<double>;

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (invalid state, bad parameter).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Numerical failure: non-convergence, non-finite values.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Immutable N x N complex matrix stored row-major.
template <std::size_t N> class Matrix {
  public:
    static constexpr std::size_t dim = N;
    using Storage = std::array<cplx, N * N>;

    constexpr Matrix() : entries_{} {}
    constexpr explicit Matrix(const Storage &entries) : entries_(entries) {}

    static constexpr Matrix identity() {
        Storage e{};
        for (std::size_t i = 0; i < N; ++i) {
            e[i * N + i] = 1.0;
        }
        return Matrix(e);
    }

    static constexpr Matrix diagonal(const std::array<double, N> &d) {
        Storage e{};
        for (std::size_t i = 0; i < N; ++i) {
            e[i * N + i] = d[i];
        }
        return Matrix(e);
    }

    constexpr cplx operator()(std::size_t row, std::size_t col) const {
        return entries_[row * N + col];
    }

    [[nodiscard]] const Storage &entries() const { return entries_; }

    [[nodiscard]] Matrix adjoint() const {
        Storage e;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                e[i * N + j] = std::conj(entries_[j * N + i]);
            }
        }
        return Matrix(e);
    }

    [[nodiscard]] cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            t += entries_[i * N + i];
        }
        return t;
    }

    /// max |a_ij - conj(a_ji)|
    [[nodiscard]] double hermiticity_deviation() const {
        double dev = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = i; j < N; ++j) {
                dev = std::max(dev, std::abs(entries_[i * N + j] -
                                             std::conj(entries_[j * N + i])));
            }
        }
        return dev;
    }

    [[nodiscard]] double max_abs_diff(const Matrix &other) const {
        double d = 0.0;
        for (std::size_t k = 0; k < N * N; ++k) {
            d = std::max(d, std::abs(entries_[k] - other.entries_[k]));
        }
        return d;
    }

    [[nodiscard]] double frobenius_norm() const {
        double s = 0.0;
        for (const auto &v : entries_) {
            s += std::norm(v);
        }
        return std::sqrt(s);
    }

    friend Matrix operator+(const Matrix &a, const Matrix &b) {
        Storage e;
        for (std::size_t k = 0; k < N * N; ++k) {
            e[k] = a.entries_[k] + b.entries_[k];
        }
        return Matrix(e);
    }

    friend Matrix operator-(const Matrix &a, const Matrix &b) {
        Storage e;
        for (std::size_t k = 0; k < N * N; ++k) {
            e[k] = a.entries_[k] - b.entries_[k];
        }
        return Matrix(e);
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        Storage e{};
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t k = 0; k < N; ++k) {
                const cplx aik = a.entries_[i * N + k];
                if (aik == cplx{}) {
                    continue;
                }
                for (std::size_t j = 0; j < N; ++j) {
                    e[i * N + j] += aik * b.entries_[k * N + j];
                }
            }
        }
        return Matrix(e);
    }

    friend Matrix operator*(cplx scalar, const Matrix &a) {
        Storage e;
        for (std::size_t k = 0; k < N * N; ++k) {
            e[k] = scalar * a.entries_[k];
        }
        return Matrix(e);
    }

    friend Matrix operator*(const Matrix &a, cplx scalar) { return scalar * a; }

  private:
    Storage entries_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

namespace pauli {
inline Mat2 identity() { return Mat2::identity(); }
inline Mat2 x() { return Mat2({0.0, 1.0, 1.0, 0.0}); }
inline Mat2 y() { return Mat2({0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}); }
inline Mat2 z() { return Mat2({1.0, 0.0, 0.0, -1.0}); }
} // namespace pauli

/// Kronecker product a (x) b; a(0,0)*b occupies the top-left block.
Mat4 kron(const Mat2 &a, const Mat2 &b);

/// Eigenvalues sorted in descending order.
struct Spectrum {
    std::vector<double> values;

    [[nodiscard]] double sum() const;
    [[nodiscard]] double min() const { return values.back(); }
    [[nodiscard]] double max() const { return values.front(); }
};

inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 50;
inline constexpr double kHermiticityTolerance = 1e-10;

/**
 * Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on the real
 * symmetric embedding [[Re, -Im], [Im, Re]]. Each eigenvalue of the embedding
 * appears twice; pairs are averaged.
 *
 * Throws DomainError when the Hermiticity deviation exceeds 1e-10 and
 * NumericalError when the off-diagonal norm is still above `tol` (relative to
 * max(1, ||m||_F)) after kJacobiMaxSweeps sweeps.
 */
template <std::size_t N>
Spectrum herm_eigenvalues(const Matrix<N> &m, double tol = kJacobiTolerance);

struct DensityCheck {
    bool valid = false;
    double hermiticity_deviation = 0.0;
    double trace_deviation = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<std::string> violations;

    explicit operator bool() const { return valid; }
};

/// Hermitian, unit trace and positive semidefinite, each within `tol`.
template <std::size_t N> DensityCheck is_density_matrix(const Matrix<N> &m, double tol);

/// Eigenvalues in [-1e-10, 0) are treated as exact zeros.
inline constexpr double kEigenClamp = 1e-10;
inline constexpr double kDensityTolerance = 1e-8;

/// v * log2(v) with 0 log 0 = 0.
inline double xlog2x(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

/// -sum p log2 p over a probability vector, clamping tiny negatives to zero.
double shannon_entropy(std::span<const double> probabilities);

/// -tr(rho log2 rho) in bits. Rejects inputs that fail is_density_matrix(1e-8).
template <std::size_t N> double von_neumann_entropy(const Matrix<N> &rho);

enum class Subsystem { A, B };

/// Reduced state of a two-qubit density matrix, keeping `keep`.
Mat2 partial_trace(const Mat4 &rho, Subsystem keep);

/// sum_k K rho K^dagger. Rejects operator sets with completeness deviation > 1e-10.
template <std::size_t N>
Matrix<N> apply_kraus(const Matrix<N> &rho, std::span<const Matrix<N>> ops);

namespace detail {
/// Partial trace without any validation; used for unnormalised operators.
Mat2 partial_trace_unchecked(const Mat4 &m, Subsystem keep);
} // namespace detail

} // namespace sqd
