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

// Angular-momentum special functions: Clebsch-Gordan coefficients, Wigner
// rotation functions, spherical harmonics and the Gauss-Legendre rule used
// for integrating over rotations.
//
// Conventions used throughout the library:
//   * Condon-Shortley phase.
//   * Euler angles are z-y-z, active:
//       D^j_{m',m}(a, b, g) = exp(-i m' a) d^j_{m',m}(b) exp(-i m g).
//   * Basis states of a spin are ordered by descending projection
//     (m = +j first), so |0> of a qubit is m = +1/2 at index 0.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "spintomo/linalg.hpp"

namespace spintomo {

/// A non-negative spin quantum number j stored exactly as 2j.
class SpinValue {
   public:
    constexpr SpinValue() = default;

    static SpinValue from_twice(int twice_j);
    static SpinValue integer(int j) { return from_twice(2 * j); }
    /// Accepts "1/2", "3/2", "1", "0.5", "1.5", ...
    static SpinValue parse(std::string_view text);

    constexpr int twice() const { return twice_; }
    constexpr int dim() const { return twice_ + 1; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr double value() const { return 0.5 * twice_; }
    /// Integer value; only meaningful when is_integer().
    constexpr int as_int() const { return twice_ / 2; }
    std::string str() const;

    constexpr auto operator<=>(const SpinValue&) const = default;

   private:
    int twice_ = 0;
};

/// Spin 1/2.
inline SpinValue spin_half() { return SpinValue::from_twice(1); }

/// A magnetic projection m stored exactly as 2m.
struct Projection {
    int twice = 0;

    static constexpr Projection from_twice(int twice_m) { return Projection{twice_m}; }
    static constexpr Projection integer(int m) { return Projection{2 * m}; }
    constexpr double value() const { return 0.5 * twice; }
    constexpr auto operator<=>(const Projection&) const = default;
};

/// |m| <= j and m has the parity of j.
bool is_valid_projection(SpinValue j, Projection m);

/// Projections of `j` in basis order (descending, m = +j first).
std::vector<Projection> projections(SpinValue j);

/// Basis index of projection `m` for spin `j` (0 for m = +j).
int projection_index(SpinValue j, Projection m);

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// The inverse rotation: R(a, b, g)^-1 = R(-g, -b, -a).
EulerAngles inverse(const EulerAngles& angles);

/// <j1 m1; j2 m2 | J M>. Exactly zero when m1 + m2 != M or the triangle rule
/// fails. Throws std::invalid_argument on malformed (j, m) pairs.
double clebsch_gordan(SpinValue j1, Projection m1, SpinValue j2, Projection m2, SpinValue J, Projection M);

/// Wigner small-d function d^j_{m_to, m_from}(beta).
double wigner_small_d(SpinValue j, Projection m_to, Projection m_from, double beta);

/// Wigner D function D^j_{m_to, m_from}(alpha, beta, gamma).
cdouble wigner_D(SpinValue j, Projection m_to, Projection m_from, const EulerAngles& angles);

/// The (2j+1) x (2j+1) rotation matrix, rows and columns in descending m.
CMatrix wigner_D_matrix(SpinValue j, const EulerAngles& angles);

/// Y_{l,m}(theta, phi), orthonormal on the unit sphere.
/// Throws std::invalid_argument for half-integer l or |m| > l.
cdouble spherical_harmonic(SpinValue l, Projection m, double theta, double phi);
cdouble spherical_harmonic(int l, int m, double theta, double phi);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

}  // namespace spintomo
