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

// Multipole expansion of the potential of point sources:
//
//   Q^(l)_m = sum_a e_a r_a^l sqrt(4 pi / (2l+1)) Y_{l,m}(theta_a, phi_a)
//   phi^(l) = R0^-(l+1) sum_m sqrt(4 pi / (2l+1)) Q^(l)_m conj(Y_{l,m}(Theta, Phi))
//
// The magnetostatic series has the same form with e_a read as a pole strength.

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "spintomo/linalg.hpp"

namespace spintomo {

enum class SourceKind { electric, magnetic };

std::string_view to_string(SourceKind kind);
SourceKind source_kind_from_string(std::string_view text);

struct PointSource {
    double charge = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

struct ObservationPoint {
    double r0 = 1.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Q^(l)_m. Throws std::invalid_argument when |m| > l or l < 0.
cdouble multipole_moment(std::span<const PointSource> sources, int l, int m);

/// Order-l term of the expansion at `point`.
cdouble potential_term(std::span<const PointSource> sources, int l, const ObservationPoint& point);

/// Sum_a e_a / |R0 - r_a|.
double direct_potential(std::span<const PointSource> sources, const ObservationPoint& point);

struct SeriesResult {
    SourceKind kind = SourceKind::electric;
    double value = 0.0;
    std::vector<double> terms;  // real part of each order 0..lmax
    bool converged = false;     // |last term| < 1e-9 |value|
    bool inside_sources = false;  // R0 <= max r_a: series not valid
    double direct_sum = 0.0;
    double rel_error = 0.0;
};

SeriesResult potential_series(std::span<const PointSource> sources, int lmax, const ObservationPoint& point,
                              SourceKind kind = SourceKind::electric);

/// Spin-1 basis label of Y_{1,m}: m = 1 -> (0,0,1), m = 0 -> (0,1,0), m = -1 -> (1,0,0).
std::array<int, 3> harmonic_basis_vector(int l, int m);

}  // namespace spintomo
