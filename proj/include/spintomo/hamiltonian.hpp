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

// Spin-1/2 chain operators and the Zeeman + exchange Hamiltonians
//
//   H = -muB0 sum_i sigma_z^(i) + sum_{i<j} J_ij (sigma_x^(i) sigma_x^(j) + sigma_y^(i) sigma_y^(j))
//
// with hbar = 1. Site 0 is the leftmost Kronecker factor.

#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "spintomo/linalg.hpp"

namespace spintomo {

enum class Axis { x, y, z };

char axis_letter(Axis axis);
Axis axis_from_string(std::string_view text);

/// 2x2 Pauli matrix in the descending-m basis (sigma_z = diag(1, -1)).
CMatrix pauli(Axis axis);

/// I (x) ... (x) op (x) ... (x) I with `op` in slot `site` of `n` qubit slots.
CMatrix embed_site(const CMatrix& op, int site, int n);

/// S_axis = 1/2 sum_i sigma_axis^(i).
CMatrix total_spin_component(Axis axis, int n);

/// S^2 = S_x^2 + S_y^2 + S_z^2 of the total spin (cross terms included).
CMatrix total_spin_squared(int n);

enum class CouplingModel {
    xy,          // J (xx + yy)
    heisenberg,  // J (xx + yy + zz)
};

inline constexpr int kMaxSites = 12;

struct SpinSystemSpec {
    int n = 1;
    double mu_b0 = 0.0;
    std::map<std::pair<int, int>, double> couplings;  // keys normalized to i < j
    CouplingModel model = CouplingModel::xy;

    /// Stores J for the unordered pair {i, j}.
    void set_coupling(int i, int j, double value);
    double coupling(int i, int j) const;
    /// Throws std::invalid_argument on n outside [1, 12] or bad coupling keys.
    void validate() const;
};

/// Two-site Hamiltonian term by term as written for a pair of spins 1/2.
CMatrix build_h2(const SpinSystemSpec& spec);

/// Three-site Hamiltonian; each J_ij acts on slots i and j.
CMatrix build_h3(const SpinSystemSpec& spec);

/// Any n in [1, 12].
CMatrix build_hn(const SpinSystemSpec& spec);

/// Eigensystem of `h` whose degenerate clusters are further diagonalized
/// with respect to `conserved` (which must commute with `h`); inside a
/// cluster vectors are ordered by ascending eigenvalue of `conserved`.
Eigensystem joint_eigensystem(const CMatrix& h, const CMatrix& conserved, double degeneracy_tol = 1e-9);

struct SpectrumReport {
    std::vector<double> eigenvalues;      // ascending
    std::vector<int> degeneracies;        // multiplicity of each distinct level
    std::vector<double> sz_expectations;  // <v|S_z|v> per eigenvector
};

SpectrumReport spectrum(const SpinSystemSpec& spec, double degeneracy_tol = 1e-9);

}  // namespace spintomo
