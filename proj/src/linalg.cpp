// Copyright 2026 The Spintomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spintomo/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "spintomo/errors.hpp"

namespace spintomo {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

CMatrix kron_all(std::span<const CMatrix> factors) {
    if (factors.empty()) {
        return CMatrix::Identity(1, 1);
    }
    CMatrix out = factors.front();
    for (const auto& f : factors.subspan(1)) {
        out = kron(out, f);
    }
    return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("commutator: dimension mismatch");
    }
    return a * b - b * a;
}

double hermiticity_deviation(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermiticity_deviation: matrix is not square");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void check_hermitian(const CMatrix& h, double tol) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("eigensystem: matrix is not square");
    }
    if (!h.allFinite()) {
        throw NumericError("eigensystem: matrix has non-finite entries");
    }
    const double dev = hermiticity_deviation(h);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (dev > tol * scale) {
        throw std::invalid_argument("eigensystem: matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
    }
}

bool lex_less(const CVector& a, const CVector& b) {
    constexpr double kTol = 1e-12;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].real() - b[i].real()) > kTol) {
            return a[i].real() < b[i].real();
        }
        if (std::abs(a[i].imag() - b[i].imag()) > kTol) {
            return a[i].imag() < b[i].imag();
        }
    }
    return false;
}

}  // namespace

Eigensystem eigensystem(const CMatrix& h, double hermitian_tol, double degeneracy_tol) {
    check_hermitian(h, hermitian_tol);
    const CMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigensystem: Hermitian eigensolver did not converge");
    }
    Eigensystem out{solver.eigenvalues(), solver.eigenvectors()};

    const Eigen::Index n = out.values.size();
    for (Eigen::Index c = 0; c < n; ++c) {
        auto col = out.vectors.col(c);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (std::abs(col[r]) > 1e-12) {
                col *= std::conj(col[r]) / std::abs(col[r]);
                col[r] = std::abs(col[r]);
                break;
            }
        }
    }

    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && out.values[end] - out.values[start] < degeneracy_tol) {
            ++end;
        }
        if (end - start > 1) {
            std::vector<CVector> cluster;
            for (Eigen::Index c = start; c < end; ++c) {
                cluster.emplace_back(out.vectors.col(c));
            }
            std::stable_sort(cluster.begin(), cluster.end(), lex_less);
            for (Eigen::Index c = start; c < end; ++c) {
                out.vectors.col(c) = cluster[static_cast<std::size_t>(c - start)];
            }
        }
        start = end;
    }
    return out;
}

RVector hermitian_eigenvalues(const CMatrix& h, double hermitian_tol) {
    check_hermitian(h, hermitian_tol);
    const CMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("hermitian_eigenvalues: Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

}  // namespace spintomo
