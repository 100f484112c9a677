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

// Polarization (irreducible spherical tensor) operators T_{L,M}(S).
//
//   <m'| T_{L,M}(S) |m> = sqrt((2L+1)/(2S+1)) <S m; L M | S m'>
//
// The family is orthonormal under Tr(A^dagger B) and obeys
// T_{L,M}^dagger = (-1)^M T_{L,-M}.

#include <memory>
#include <vector>

#include "spintomo/angular.hpp"
#include "spintomo/coeff_table.hpp"

namespace spintomo {

struct TensorIndex {
    int rank = 0;        // L
    int projection = 0;  // M

    constexpr auto operator<=>(const TensorIndex&) const = default;
};

struct TensorElement {
    TensorIndex index;
    CMatrix matrix;
};

/// Full operator basis of one spin, ordered by L ascending then M ascending.
struct TensorBasis {
    SpinValue spin;
    std::vector<TensorElement> elements;

    /// Position of (L, M) in `elements`.
    static std::size_t position(TensorIndex idx) {
        return static_cast<std::size_t>(idx.rank * idx.rank + idx.rank + idx.projection);
    }
    const CMatrix& at(TensorIndex idx) const;
};

CMatrix polarization_tensor(SpinValue spin, TensorIndex idx);

TensorBasis tensor_basis(SpinValue spin);

/// Process-wide cache of tensor bases; safe to call concurrently.
std::shared_ptr<const TensorBasis> shared_tensor_basis(SpinValue spin);

/// Rotated rank-L family T'_{L,M} = D T_{L,M} D^dagger, ordered by M ascending,
/// computed as sum_{M'} D^L_{M',M}(angles) T_{L,M'}.
std::vector<CMatrix> rotate_tensor_family(const TensorBasis& basis, int rank, const EulerAngles& angles);

/// Same family computed by conjugation with the spin-S rotation matrix.
std::vector<CMatrix> rotate_tensor_family_by_conjugation(const TensorBasis& basis, int rank,
                                                         const EulerAngles& angles);

/// Unitary mapping product states |m1>|m2> (columns, m1 major, both
/// descending) to coupled states |S12, M12> (rows, S12 descending from
/// S1+S2, then M12 descending).
CMatrix coupled_basis_transform(SpinValue s1, SpinValue s2);

/// Expansion of T_{L1,M1}(S1) (x) T_{L2,M2}(S2) over coupled operators:
/// coupled table over {S1, S2} with entries {L1, L2, K, M1+M2} holding
/// <L1 M1; L2 M2 | K M1+M2>.
CoeffTable couple_tensor_product(SpinValue s1, TensorIndex idx1, SpinValue s2, TensorIndex idx2);

/// One term relating the product and coupled bases for a fixed rank pattern.
struct CouplingWeight {
    CoeffTable::Key coupled;  // {L1..Ln, K2..Kn, M}
    CoeffTable::Key product;  // {L1, M1, ..., Ln, Mn}
    double weight = 0.0;      // product of Clebsch-Gordan factors
};

/// All nonzero weights W with O_coupled = sum W * (T_{L1 M1} (x) ... (x) T_{Ln Mn})
/// for the given per-spin ranks. The weights form a real orthogonal matrix.
const std::vector<CouplingWeight>& coupling_weights(const std::vector<int>& ranks);

/// Product-frame matrix of the coupled operator with index `key`.
CMatrix coupled_operator(const std::vector<SpinValue>& system, const CoeffTable::Key& key);

/// Parity p of a coupled index such that O_{K,M}^dagger = (-1)^(M+p) O_{K,-M}.
/// The observable i^p O_{K,0} is Hermitian.
int coupled_phase_parity(const CoeffTable::Key& key, std::size_t n_spins);

}  // namespace spintomo
