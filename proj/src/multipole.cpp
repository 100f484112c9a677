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

#include "spintomo/multipole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spintomo/angular.hpp"

namespace spintomo {

std::string_view to_string(SourceKind kind) {
    return kind == SourceKind::electric ? "electric" : "magnetic";
}

SourceKind source_kind_from_string(std::string_view text) {
    if (text == "electric") return SourceKind::electric;
    if (text == "magnetic") return SourceKind::magnetic;
    throw std::invalid_argument("unknown source kind '" + std::string(text) + "'");
}

cdouble multipole_moment(std::span<const PointSource> sources, int l, int m) {
    if (l < 0 || std::abs(m) > l) {
        throw std::invalid_argument("multipole_moment: need l >= 0 and |m| <= l");
    }
    const double norm = std::sqrt(4.0 * std::numbers::pi / (2.0 * l + 1.0));
    cdouble q{};
    for (const auto& s : sources) {
        if (s.r < 0.0) {
            throw std::invalid_argument("multipole_moment: source radius must be non-negative");
        }
        if (s.charge == 0.0) {
            continue;
        }
        q += s.charge * std::pow(s.r, l) * norm * spherical_harmonic(l, m, s.theta, s.phi);
    }
    return q;
}

cdouble potential_term(std::span<const PointSource> sources, int l, const ObservationPoint& point) {
    if (l < 0) {
        throw std::invalid_argument("potential_term: l must be non-negative");
    }
    if (!(point.r0 > 0.0)) {
        throw std::invalid_argument("potential_term: observation radius must be positive");
    }
    const double norm = std::sqrt(4.0 * std::numbers::pi / (2.0 * l + 1.0));
    cdouble acc{};
    for (int m = -l; m <= l; ++m) {
        acc += norm * multipole_moment(sources, l, m) * std::conj(spherical_harmonic(l, m, point.theta, point.phi));
    }
    return acc / std::pow(point.r0, l + 1);
}

double direct_potential(std::span<const PointSource> sources, const ObservationPoint& point) {
    auto cartesian = [](double r, double theta, double phi) {
        return std::array<double, 3>{r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                                     r * std::cos(theta)};
    };
    const auto obs = cartesian(point.r0, point.theta, point.phi);
    double total = 0.0;
    for (const auto& s : sources) {
        const auto src = cartesian(s.r, s.theta, s.phi);
        const double dx = obs[0] - src[0], dy = obs[1] - src[1], dz = obs[2] - src[2];
        total += s.charge / std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    return total;
}

SeriesResult potential_series(std::span<const PointSource> sources, int lmax, const ObservationPoint& point,
                              SourceKind kind) {
    if (lmax < 0) {
        throw std::invalid_argument("potential_series: lmax must be non-negative");
    }
    SeriesResult out;
    out.kind = kind;
    double max_r = 0.0;
    for (const auto& s : sources) {
        max_r = std::max(max_r, s.r);
    }
    out.inside_sources = point.r0 <= max_r;
    for (int l = 0; l <= lmax; ++l) {
        const double term = potential_term(sources, l, point).real();
        out.terms.push_back(term);
        out.value += term;
    }
    const double last = std::abs(out.terms.back());
    out.converged = !out.inside_sources && (last == 0.0 || last < 1e-9 * std::abs(out.value));
    out.direct_sum = direct_potential(sources, point);
    out.rel_error = out.direct_sum == 0.0 ? std::abs(out.value) : std::abs(out.value - out.direct_sum) / std::abs(out.direct_sum);
    return out;
}

std::array<int, 3> harmonic_basis_vector(int l, int m) {
    if (l != 1) {
        throw std::invalid_argument("harmonic_basis_vector: only l = 1 has a spin-1 basis label");
    }
    switch (m) {
        case 1:
            return {0, 0, 1};
        case 0:
            return {0, 1, 0};
        case -1:
            return {1, 0, 0};
        default:
            throw std::invalid_argument("harmonic_basis_vector: m must be -1, 0 or 1");
    }
}

}  // namespace spintomo
