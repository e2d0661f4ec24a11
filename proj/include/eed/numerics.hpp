// SPDX-License-Identifier: Apache-2.0
//
// eed - optimum end-to-end distortion analysis for wideband MIMO channels
// Copyright (C) 2026 The eed authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eed::numerics
{
    using cdouble = std::complex<double>;

    /// Thrown when a spectrum is too close to degenerate for a formula that needs distinct eigenvalues.
    class DegenerateSpectrumError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // ---------------------------------------------------------------------
    // Log-domain scalar

    /// Signed value stored as sign and natural log of the magnitude.
    ///
    /// Products of gamma functions in the distortion factors routinely leave the double range
    /// (e.g. Gamma(40) * 4^20), so they are accumulated here and only converted at the end.
    /// sign == 0 represents exactly zero; ln_magnitude is then ignored.
    struct LogValue
    {
        int sign = 1;
        double ln_magnitude = 0.0;

        static LogValue one() { return {}; }
        static LogValue zero() { return {0, 0.0}; }
        static LogValue from_double(double x);
        static LogValue from_ln(double ln_magnitude, int sign = 1) { return {sign, ln_magnitude}; }

        [[nodiscard]] bool is_zero() const { return sign == 0; }

        /// Converts to double; overflows to +/-inf and underflows to 0 like std::exp.
        [[nodiscard]] double to_double() const;

        /// True when to_double() is finite and, for nonzero values, nonzero.
        [[nodiscard]] bool fits_double() const;

        /// Raises a positive value to a real power. Throws std::domain_error for non-positive values
        /// unless the exponent is an integer.
        [[nodiscard]] LogValue pow(double exponent) const;

        LogValue &operator*=(const LogValue &rhs);
        LogValue &operator/=(const LogValue &rhs);
        LogValue &operator*=(double rhs) { return *this *= from_double(rhs); }
        LogValue &operator/=(double rhs) { return *this /= from_double(rhs); }
    };

    inline LogValue operator*(LogValue a, const LogValue &b) { return a *= b; }
    inline LogValue operator/(LogValue a, const LogValue &b) { return a /= b; }

    // ---------------------------------------------------------------------
    // Special functions

    /// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms; reflection below 0.5).
    double ln_gamma(double x);

    /// Rising factorial (a)_n as the explicit product a (a+1) ... (a+n-1).
    /// Valid for negative non-integer a. Throws std::domain_error if a factor is zero.
    double pochhammer(double a, int n);

    /// Harmonic number H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
    double harmonic(int n);

    inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

    // ---------------------------------------------------------------------
    // Small complex matrices

    /// Dense row-major complex matrix. Intended for the 1..16 dimensional matrices of a MIMO link.
    class ComplexMatrix
    {
    public:
        ComplexMatrix() = default;
        ComplexMatrix(std::size_t rows, std::size_t cols);
        ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

        static ComplexMatrix identity(std::size_t n);
        static ComplexMatrix diagonal(std::span<const double> d);

        [[nodiscard]] std::size_t rows() const { return rows_; }
        [[nodiscard]] std::size_t cols() const { return cols_; }
        [[nodiscard]] bool is_square() const { return rows_ == cols_; }

        cdouble &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const cdouble &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        [[nodiscard]] std::span<cdouble> entries() { return data_; }
        [[nodiscard]] std::span<const cdouble> entries() const { return data_; }

        [[nodiscard]] ComplexMatrix adjoint() const;
        [[nodiscard]] double frobenius_norm() const;
        [[nodiscard]] double max_abs() const;

        friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
        friend ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
        friend ComplexMatrix operator*(double s, const ComplexMatrix &a);

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cdouble> data_;
    };

    /// Hermitian eigen-decomposition: ascending real eigenvalues and the matching unit eigenvectors
    /// stored as the columns of a unitary matrix.
    struct HermitianEigen
    {
        std::vector<double> values;
        ComplexMatrix vectors;
    };

    /// Cyclic complex Jacobi. Requires a square matrix that is Hermitian to within 1e-12
    /// (relative to max(1, max|m_ij|)); otherwise throws std::domain_error.
    HermitianEigen hermitian_eigen(const ComplexMatrix &m);

    /// Eigenvalues of a Hermitian matrix in ascending order.
    std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

    /// ln det(m) of a Hermitian positive definite matrix via Cholesky.
    /// Throws std::domain_error when the factorization breaks down.
    double logdet_hermitian_pd(const ComplexMatrix &m);

    /// Same as logdet_hermitian_pd but factorizes in place, overwriting the lower triangle of m.
    /// Used in sampling loops to avoid a copy per draw.
    double logdet_hermitian_pd_inplace(ComplexMatrix &m);

    /// Hermitian square root S of a positive semidefinite matrix, S S^H = m.
    /// Eigenvalues in [-1e-10, 0) are clamped to zero; anything lower throws std::domain_error.
    ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &m);

    // ---------------------------------------------------------------------
    // Random sampling

    using Rng = std::mt19937_64;

    /// Standard normal pair via Box-Muller. Independent of the standard library's distributions,
    /// so a seed reproduces the same stream with any toolchain.
    std::pair<double, double> standard_normal_pair(Rng &rng);

    /// Fills m with i.i.d. CN(0,1) entries (real and imaginary parts each of variance 1/2).
    void fill_complex_gaussian(Rng &rng, ComplexMatrix &m);

    ComplexMatrix sample_complex_gaussian(Rng &rng, std::size_t rows, std::size_t cols);

} // namespace eed::numerics
