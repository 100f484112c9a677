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

#include <span>
#include <string>
#include <vector>

#include "spintomo/coeff_table.hpp"
#include "spintomo/tensor.hpp"

namespace spintomo {

inline constexpr double kValidityTolerance = 1e-9;

struct ValidationReport {
    bool dimension_ok = true;
    double hermiticity_deviation = 0.0;
    double trace_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double tolerance = kValidityTolerance;

    bool hermitian() const { return hermiticity_deviation <= tolerance; }
    bool unit_trace() const { return trace_deviation <= tolerance; }
    bool positive() const { return min_eigenvalue >= -tolerance; }
    bool ok() const { return dimension_ok && hermitian() && unit_trace() && positive(); }
    /// Human-readable list of the failed checks; empty when ok().
    std::string failures() const;
};

/// Checks Hermiticity, unit trace and positivity. An empty `system` skips
/// the dimension check.
ValidationReport validate_density(const CMatrix& rho, std::span<const SpinValue> system = {},
                                  double tol = kValidityTolerance);

/// A validated density matrix on the product space of `system`.
class DensityMatrix {
   public:
    /// Throws InvalidState when validation fails.
    DensityMatrix(CMatrix matrix, std::vector<SpinValue> system, double tol = kValidityTolerance);

    /// Skips validation; for unitary images of already valid states.
    static DensityMatrix unchecked(CMatrix matrix, std::vector<SpinValue> system);

    const CMatrix& matrix() const { return matrix_; }
    const std::vector<SpinValue>& system() const { return system_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

   private:
    struct Trusted {};
    DensityMatrix(Trusted, CMatrix matrix, std::vector<SpinValue> system);

    CMatrix matrix_;
    std::vector<SpinValue> system_;
};

/// A unit-norm pure state on the product space of `system`.
class StateVector {
   public:
    /// Throws std::invalid_argument unless the norm is 1 within 1e-12.
    StateVector(CVector amplitudes, std::vector<SpinValue> system);

    const CVector& amplitudes() const { return amplitudes_; }
    const std::vector<SpinValue>& system() const { return system_; }
    DensityMatrix density() const;

   private:
    CVector amplitudes_;
    std::vector<SpinValue> system_;
};

/// coeff(L, M) = Tr(T_{L,M}^dagger A) for any square A of dimension 2S+1.
CoeffTable decompose(const CMatrix& a, SpinValue spin);

/// sum coeff * basis operator, for single, product or coupled tables.
CMatrix reconstruct(const CoeffTable& coeffs);

/// Decomposition over T_{L1 M1} (x) ... (x) T_{Ln Mn}.
CoeffTable decompose_product(const CMatrix& a, const std::vector<SpinValue>& system);

/// Decomposition over the pairwise-coupled operators. For a single spin the
/// table has layout {L, M} like the single basis.
CoeffTable decompose_coupled(const CMatrix& a, const std::vector<SpinValue>& system);

/// Single-spin table for n = 1, coupled table otherwise: the representation
/// whose entries transform irreducibly under collective rotations.
CoeffTable decompose_irreducible(const CMatrix& a, const std::vector<SpinValue>& system);

/// Product-basis table whose entries are products of single-spin coefficients.
CoeffTable product_coeffs(std::span<const CoeffTable> tables);

/// Product basis -> coupled basis (any number of spins, left-to-right coupling).
CoeffTable couple_coeffs(const CoeffTable& product);

/// Coupled basis -> product basis.
CoeffTable uncouple_coeffs(const CoeffTable& coupled);

/// Two-spin coupling of a product-basis table; rejects other shapes.
CoeffTable couple_two_spin_coeffs(const CoeffTable& product);

/// Reconstructs a two-spin coupled table in the |S12, M12> frame, building
/// each operator as U O U^dagger with U = coupled_basis_transform(S1, S2).
CMatrix reconstruct_in_coupled_frame(const CoeffTable& coupled);

DensityMatrix kron_density(std::span<const DensityMatrix> states);

enum class RotationMode {
    collective,   // the same rotation on every site: D(S1) (x) D(S2) (x) ...
    single_spin,  // the whole space treated as one spin (dim - 1) / 2
};

CMatrix rotation_operator(const std::vector<SpinValue>& system, const EulerAngles& angles,
                          RotationMode mode = RotationMode::collective);

/// D rho D^dagger.
DensityMatrix rotate_density(const DensityMatrix& rho, const EulerAngles& angles,
                             RotationMode mode = RotationMode::collective);

/// Coefficient-space image of a collective rotation: each rank-K family mixes
/// as c'_{M'} = sum_M D^K_{M',M} c_M. Accepts single and coupled tables.
CoeffTable rotate_coeffs(const CoeffTable& coeffs, const EulerAngles& angles);

}  // namespace spintomo
