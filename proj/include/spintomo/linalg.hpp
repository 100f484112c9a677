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

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spintomo {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Kronecker product A (x) B with A as the slow (leftmost) index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Left-associated Kronecker product of all factors: ((f0 (x) f1) (x) f2) ...
CMatrix kron_all(std::span<const CMatrix> factors);

/// AB - BA.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Largest entrywise |A - A^dagger|.
double hermiticity_deviation(const CMatrix& a);

struct Eigensystem {
    RVector values;   // ascending
    CMatrix vectors;  // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are ascending. Each eigenvector is phase-fixed so that its
/// first component with modulus above 1e-12 is real and positive; vectors
/// inside a degenerate cluster (eigenvalue spread below `degeneracy_tol`)
/// are then sorted lexicographically by (re, im) of their components.
///
/// Throws std::invalid_argument when the input deviates from Hermitian by
/// more than `hermitian_tol`, NumericError on non-finite entries or when the
/// solver does not converge.
Eigensystem eigensystem(const CMatrix& h, double hermitian_tol = 1e-9, double degeneracy_tol = 1e-9);

/// Eigenvalues only, ascending.
RVector hermitian_eigenvalues(const CMatrix& h, double hermitian_tol = 1e-9);

}  // namespace spintomo
