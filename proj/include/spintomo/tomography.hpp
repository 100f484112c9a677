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

// Rotation tomography of spin states, moment accessibility, and single-site
// Pauli error detection/correction in coefficient space.
//
// A tomogram records, for every grid rotation R and every irreducible
// channel (coupled rank-K family O_K), the real moment
//
//     m(R) = Tr(rho * i^p D(R) O_{K,0} D(R)^dagger)
//
// i.e. the rank-K axial observable carried into the rotated frame. Because
// O_{K,0} is axially symmetric the moments do not depend on gamma, and the
// coefficients follow from Wigner-D orthogonality over SO(3):
//
//     c_{K,M} = (2K+1) / (8 pi^2) * sum_R w(R) D^K_{M,0}(R) i^p m(R).

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "spintomo/density.hpp"
#include "spintomo/hamiltonian.hpp"

namespace spintomo {

struct PauliError {
    int site = 0;
    Axis axis = Axis::x;

    auto operator<=>(const PauliError&) const = default;
};

/// A product of single-site errors applied left to right; empty is the identity.
using ErrorProduct = std::vector<PauliError>;

std::string to_string(const PauliError& e);
std::string to_string(const ErrorProduct& e);

/// Full-space operator of a single-site Pauli error; sigma_y is formed as
/// i sigma_x sigma_z. The site must carry spin 1/2.
CMatrix pauli_error_operator(const std::vector<SpinValue>& system, const PauliError& e);

StateVector apply_pauli_state(const StateVector& phi, const PauliError& e);
DensityMatrix apply_pauli_density(const DensityMatrix& rho, const PauliError& e);
DensityMatrix apply_errors(const DensityMatrix& rho, const ErrorProduct& errors);

struct AccessibilityPolicy {
    int max_observable_rank = 2;  // dipole and quadrupole
};

struct RankPartition {
    std::vector<int> observable;
    std::vector<int> unobservable;
};

/// Splits the ranks 0 .. sum(2 S_i) of `system` by the policy cap.
RankPartition accessible_ranks(const std::vector<SpinValue>& system, const AccessibilityPolicy& policy);

inline constexpr double kSo3Volume = 8.0 * std::numbers::pi * std::numbers::pi;

struct GridPoint {
    EulerAngles angles;
    double weight = 0.0;
};

/// Gauss-Legendre in cos(beta) x uniform trapezoid in alpha x one gamma node.
/// Zero sizes select the minimal grid for the system's maximal rank.
struct GridSpec {
    int n_beta = 0;
    int n_alpha = 0;
};

/// Smallest product grid integrating rank <= `max_rank` families exactly:
/// max_rank + 1 beta nodes and 2 * max_rank + 1 alpha nodes.
GridSpec minimal_grid(int max_rank);

std::vector<GridPoint> so3_grid(const GridSpec& spec);

struct MomentRecord {
    std::size_t point_index = 0;
    std::vector<int> block;  // coupled index without total rank and M; empty for one spin
    int rank = 0;            // total rank K
    double value = 0.0;
};

struct Tomogram {
    std::vector<SpinValue> system;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
    std::vector<GridPoint> grid;
    std::vector<MomentRecord> records;
};

struct SimulationOptions {
    GridSpec grid;                              // zeros: minimal grid
    std::optional<AccessibilityPolicy> policy;  // set: record observable ranks only
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// One moment record: Re(i^p Tr(D^dagger rho D O_{K,0})) for the channel
/// (`block`, `rank`) at `angles`, with D the collective rotation.
double measure_moment(const DensityMatrix& rho, const std::vector<int>& block, int rank, const EulerAngles& angles);

Tomogram simulate_tomogram(const DensityMatrix& rho, const SimulationOptions& options = {});

/// Coefficients (single basis for one spin, coupled basis otherwise) of every
/// channel present in the tomogram. Throws std::invalid_argument when the
/// grid cannot integrate a recorded rank exactly.
CoeffTable invert_tomogram(const Tomogram& tomogram);

struct TruncationResult {
    CoeffTable kept;
    CMatrix candidate;  // may be indefinite; not repaired
    double frobenius_deficit = 0.0;
    cdouble trace;
    double min_eigenvalue = 0.0;
};

/// Reconstruction from observable ranks only. Accepts single and coupled tables.
TruncationResult truncated_reconstruct(const CoeffTable& coeffs, const AccessibilityPolicy& policy);

struct ErrorSignature {
    ErrorProduct error;
    CoeffTable delta;  // observable part of coeffs(E rho E^dagger) - coeffs(rho)
};

struct SignatureSet {
    CoeffTable reference;  // observable coefficients of the reference state
    AccessibilityPolicy policy;
    std::vector<ErrorSignature> signatures;
};

/// The identity followed by every single-site Pauli error, in tie-break order.
std::vector<ErrorProduct> default_candidates(const std::vector<SpinValue>& system);

SignatureSet build_signatures(const DensityMatrix& reference, const std::vector<ErrorProduct>& candidates,
                              const AccessibilityPolicy& policy);

inline constexpr double kAmbiguityTolerance = 1e-9;

struct DetectionResult {
    ErrorProduct detected;
    double residual = 0.0;
    bool ambiguous = false;
    std::optional<ErrorProduct> runner_up;
    double runner_up_residual = 0.0;
};

/// Nearest signature to `observed` over observable ranks. Ties resolve to the
/// earlier candidate (identity, then site ascending, then X < Y < Z) and set
/// `ambiguous`. Throws std::invalid_argument on an empty signature set.
DetectionResult detect_error(const CoeffTable& observed, const SignatureSet& signatures);

/// Undoes `errors` (each Pauli is self-inverse).
DensityMatrix correct_error(const DensityMatrix& observed, const ErrorProduct& errors);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 in [0, 1].
/// Throws InvalidState when either input fails validation.
double fidelity(const DensityMatrix& a, const DensityMatrix& b, double tol = kValidityTolerance);

}  // namespace spintomo
