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

#include "eed/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eed::numerics
{
    ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols)
    {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }

    ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        if (data_.size() != rows * cols)
            throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
    }

    ComplexMatrix ComplexMatrix::identity(std::size_t n)
    {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d)
    {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    ComplexMatrix ComplexMatrix::adjoint() const
    {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    double ComplexMatrix::frobenius_norm() const
    {
        double s = 0.0;
        for (const auto &z : data_)
            s += std::norm(z);
        return std::sqrt(s);
    }

    double ComplexMatrix::max_abs() const
    {
        double m = 0.0;
        for (const auto &z : data_)
            m = std::max(m, std::abs(z));
        return m;
    }

    ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("ComplexMatrix: inner dimensions do not match");
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
            {
                const cdouble aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("ComplexMatrix: shapes do not match");
        ComplexMatrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i)
            out.data_[i] += b.data_[i];
        return out;
    }

    ComplexMatrix operator*(double s, const ComplexMatrix &a)
    {
        ComplexMatrix out = a;
        for (auto &z : out.data_)
            z *= s;
        return out;
    }

    namespace
    {
        constexpr double hermitian_tolerance = 1e-12;
        constexpr double jacobi_tolerance = 1e-13;
        constexpr int jacobi_max_sweeps = 100;

        void require_hermitian(const ComplexMatrix &m, const char *who)
        {
            if (!m.is_square())
                throw std::domain_error(std::string(who) + ": matrix is not square");
            const double tol = hermitian_tolerance * std::max(1.0, m.max_abs());
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = i; j < m.cols(); ++j)
                    if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
                        throw std::domain_error(std::string(who) + ": matrix is not Hermitian");
        }

        double off_diagonal_norm(const ComplexMatrix &a)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j)
                    if (i != j)
                        s += std::norm(a(i, j));
            return std::sqrt(s);
        }
    } // namespace

    HermitianEigen hermitian_eigen(const ComplexMatrix &m)
    {
        require_hermitian(m, "hermitian_eigen");
        const std::size_t n = m.rows();

        // Work on the exactly Hermitian part.
        ComplexMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
        {
            a(i, i) = m(i, i).real();
            for (std::size_t j = i + 1; j < n; ++j)
            {
                a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
                a(j, i) = std::conj(a(i, j));
            }
        }
        ComplexMatrix v = ComplexMatrix::identity(n);

        const double scale = a.frobenius_norm();
        bool converged = scale == 0.0;
        for (int sweep = 0; sweep < jacobi_max_sweeps && !converged; ++sweep)
        {
            if (off_diagonal_norm(a) <= jacobi_tolerance * scale)
            {
                converged = true;
                break;
            }
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                {
                    const cdouble apq = a(p, q);
                    const double g = std::abs(apq);
                    if (g == 0.0)
                        continue;

                    // Phase e^{-i arg a_pq} on column q makes the pivot real, then a real rotation zeroes it.
                    const cdouble phase = std::conj(apq) / g;
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double theta = (aqq - app) / (2.0 * g);
                    double t;
                    if (std::fabs(theta) > 1e150)
                        t = 0.5 / theta;
                    else
                        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;

                    const cdouble u_pp = c;
                    const cdouble u_pq = s;
                    const cdouble u_qp = -s * phase;
                    const cdouble u_qq = c * phase;

                    for (std::size_t k = 0; k < n; ++k) // A <- A U
                    {
                        const cdouble akp = a(k, p), akq = a(k, q);
                        a(k, p) = akp * u_pp + akq * u_qp;
                        a(k, q) = akp * u_pq + akq * u_qq;
                    }
                    for (std::size_t k = 0; k < n; ++k) // A <- U^H A
                    {
                        const cdouble apk = a(p, k), aqk = a(q, k);
                        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = app - t * g;
                    a(q, q) = aqq + t * g;

                    for (std::size_t k = 0; k < n; ++k) // V <- V U
                    {
                        const cdouble vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = vkp * u_pp + vkq * u_qp;
                        v(k, q) = vkp * u_pq + vkq * u_qq;
                    }
                }
        }
        if (!converged && off_diagonal_norm(a) > jacobi_tolerance * scale)
            throw std::domain_error("hermitian_eigen: Jacobi iteration did not converge");

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j)
                         { return a(i, i).real() < a(j, j).real(); });

        HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
        for (std::size_t c = 0; c < n; ++c)
        {
            out.values[c] = a(order[c], order[c]).real();
            for (std::size_t r = 0; r < n; ++r)
                out.vectors(r, c) = v(r, order[c]);
        }
        return out;
    }

    std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m)
    {
        return hermitian_eigen(m).values;
    }

    double logdet_hermitian_pd_inplace(ComplexMatrix &m)
    {
        if (!m.is_square())
            throw std::domain_error("logdet_hermitian_pd: matrix is not square");
        const std::size_t n = m.rows();
        double logdet = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            double d = m(j, j).real();
            for (std::size_t k = 0; k < j; ++k)
                d -= std::norm(m(j, k));
            if (!(d > 0.0))
                throw std::domain_error("logdet_hermitian_pd: matrix is not positive definite");
            const double ljj = std::sqrt(d);
            m(j, j) = ljj;
            logdet += std::log(ljj);
            for (std::size_t i = j + 1; i < n; ++i)
            {
                cdouble x = m(i, j);
                for (std::size_t k = 0; k < j; ++k)
                    x -= m(i, k) * std::conj(m(j, k));
                m(i, j) = x / ljj;
            }
        }
        return 2.0 * logdet;
    }

    double logdet_hermitian_pd(const ComplexMatrix &m)
    {
        ComplexMatrix work = m;
        return logdet_hermitian_pd_inplace(work);
    }

    ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &m)
    {
        const HermitianEigen eig = hermitian_eigen(m);
        const std::size_t n = m.rows();
        std::vector<double> root(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (eig.values[i] < -1e-10)
                throw std::domain_error("matrix_sqrt_psd: matrix has a negative eigenvalue");
            root[i] = std::sqrt(std::max(eig.values[i], 0.0));
        }
        ComplexMatrix s(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
            {
                cdouble x = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    x += eig.vectors(i, k) * root[k] * std::conj(eig.vectors(j, k));
                s(i, j) = x;
            }
        return s;
    }

} // namespace eed::numerics
