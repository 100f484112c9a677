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

#include "spintomo/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spintomo/errors.hpp"

namespace spintomo {

std::string ValidationReport::failures() const {
    std::ostringstream out;
    const char* sep = "";
    if (!dimension_ok) {
        out << sep << "dimension does not match the spin system";
        sep = "; ";
    }
    if (!hermitian()) {
        out << sep << "not Hermitian (deviation " << hermiticity_deviation << ")";
        sep = "; ";
    }
    if (!unit_trace()) {
        out << sep << "trace deviates from 1 by " << trace_deviation;
        sep = "; ";
    }
    if (!positive()) {
        out << sep << "negative eigenvalue " << min_eigenvalue;
    }
    return out.str();
}

ValidationReport validate_density(const CMatrix& rho, std::span<const SpinValue> system, double tol) {
    ValidationReport report;
    report.tolerance = tol;
    if (rho.rows() != rho.cols() || rho.rows() == 0 || !rho.allFinite()) {
        report.dimension_ok = false;
        report.hermiticity_deviation = std::numeric_limits<double>::infinity();
        report.trace_deviation = std::numeric_limits<double>::infinity();
        report.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return report;
    }
    if (!system.empty() && system_dimension(system) != rho.rows()) {
        report.dimension_ok = false;
    }
    report.hermiticity_deviation = hermiticity_deviation(rho);
    report.trace_deviation = std::abs(rho.trace() - cdouble{1.0, 0.0});
    const CMatrix hermitian_part = 0.5 * (rho + rho.adjoint());
    report.min_eigenvalue = hermitian_eigenvalues(hermitian_part).minCoeff();
    return report;
}

DensityMatrix::DensityMatrix(CMatrix matrix, std::vector<SpinValue> system, double tol)
    : matrix_(std::move(matrix)), system_(std::move(system)) {
    if (system_.empty()) {
        throw InvalidState("density matrix needs a non-empty spin system");
    }
    const auto report = validate_density(matrix_, system_, tol);
    if (!report.ok()) {
        throw InvalidState("invalid density matrix: " + report.failures());
    }
}

DensityMatrix::DensityMatrix(Trusted, CMatrix matrix, std::vector<SpinValue> system)
    : matrix_(std::move(matrix)), system_(std::move(system)) {}

DensityMatrix DensityMatrix::unchecked(CMatrix matrix, std::vector<SpinValue> system) {
    return DensityMatrix(Trusted{}, std::move(matrix), std::move(system));
}

StateVector::StateVector(CVector amplitudes, std::vector<SpinValue> system)
    : amplitudes_(std::move(amplitudes)), system_(std::move(system)) {
    if (system_.empty() || system_dimension(system_) != amplitudes_.size()) {
        throw std::invalid_argument("state vector dimension does not match the spin system");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("state vector is not normalized");
    }
}

DensityMatrix StateVector::density() const {
    return DensityMatrix::unchecked(amplitudes_ * amplitudes_.adjoint(), system_);
}

namespace {

// Tr(A^dagger B)
cdouble inner(const CMatrix& a, const CMatrix& b) {
    return a.conjugate().cwiseProduct(b).sum();
}

void require_square(const CMatrix& a, int dim, const char* what) {
    if (a.rows() != a.cols() || a.rows() != dim) {
        throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(dim) + "x" +
                                    std::to_string(dim) + " matrix, got " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()));
    }
}

std::vector<int> ranks_of_product_key(const CoeffTable::Key& key) {
    std::vector<int> ranks;
    for (std::size_t i = 0; i < key.size(); i += 2) {
        ranks.push_back(key[i]);
    }
    return ranks;
}

}  // namespace

CoeffTable decompose(const CMatrix& a, SpinValue spin) {
    require_square(a, spin.dim(), "decompose");
    const auto basis = shared_tensor_basis(spin);
    CoeffTable out(BasisKind::single, {spin});
    for (const auto& el : basis->elements) {
        const cdouble c = inner(el.matrix, a);
        if (c != cdouble{}) {
            out.set({el.index.rank, el.index.projection}, c);
        }
    }
    return out;
}

CoeffTable decompose_product(const CMatrix& a, const std::vector<SpinValue>& system) {
    require_square(a, system_dimension(system), "decompose_product");
    if (system.size() == 1) {
        return decompose(a, system.front());
    }
    CoeffTable out(BasisKind::product, system);

    // Recursive enumeration over per-site basis elements.
    std::vector<std::shared_ptr<const TensorBasis>> bases;
    for (const auto s : system) {
        bases.push_back(shared_tensor_basis(s));
    }
    CoeffTable::Key key;
    auto visit = [&](auto&& self, std::size_t site, const CMatrix& partial) -> void {
        if (site == system.size()) {
            const cdouble c = inner(partial, a);
            if (c != cdouble{}) {
                out.set(key, c);
            }
            return;
        }
        for (const auto& el : bases[site]->elements) {
            key.push_back(el.index.rank);
            key.push_back(el.index.projection);
            self(self, site + 1, site == 0 ? el.matrix : kron(partial, el.matrix));
            key.resize(key.size() - 2);
        }
    };
    visit(visit, 0, CMatrix());
    return out;
}

CoeffTable decompose_coupled(const CMatrix& a, const std::vector<SpinValue>& system) {
    if (system.size() == 1) {
        const CoeffTable single = decompose(a, system.front());
        CoeffTable out(BasisKind::coupled, system);
        for (const auto& [key, value] : single.entries()) {
            out.set(key, value);
        }
        return out;
    }
    return couple_coeffs(decompose_product(a, system));
}

CoeffTable decompose_irreducible(const CMatrix& a, const std::vector<SpinValue>& system) {
    return system.size() == 1 ? decompose(a, system.front()) : decompose_coupled(a, system);
}

CMatrix reconstruct(const CoeffTable& coeffs) {
    const auto& system = coeffs.system();
    const int dim = system_dimension(system);
    CMatrix out = CMatrix::Zero(dim, dim);
    if (coeffs.kind() == BasisKind::coupled && system.size() > 1) {
        return reconstruct(uncouple_coeffs(coeffs));
    }
    if (system.size() == 1) {
        const auto basis = shared_tensor_basis(system.front());
        for (const auto& [key, value] : coeffs.entries()) {
            out += value * basis->at(TensorIndex{key[0], key[1]});
        }
        return out;
    }
    std::vector<std::shared_ptr<const TensorBasis>> bases;
    for (const auto s : system) {
        bases.push_back(shared_tensor_basis(s));
    }
    for (const auto& [key, value] : coeffs.entries()) {
        std::vector<CMatrix> factors;
        for (std::size_t i = 0; i < system.size(); ++i) {
            factors.push_back(bases[i]->at(TensorIndex{key[2 * i], key[2 * i + 1]}));
        }
        out += value * kron_all(factors);
    }
    return out;
}

CoeffTable product_coeffs(std::span<const CoeffTable> tables) {
    if (tables.empty()) {
        throw std::invalid_argument("product_coeffs: no tables");
    }
    std::vector<SpinValue> system;
    for (const auto& t : tables) {
        if (t.kind() != BasisKind::single) {
            throw std::invalid_argument("product_coeffs: every factor must be a single-spin table");
        }
        system.push_back(t.system().front());
    }
    CoeffTable out(tables.size() == 1 ? BasisKind::single : BasisKind::product, system);

    CoeffTable::Key key;
    auto visit = [&](auto&& self, std::size_t site, cdouble partial) -> void {
        if (site == tables.size()) {
            out.set(key, partial);
            return;
        }
        for (const auto& [k, v] : tables[site].entries()) {
            key.insert(key.end(), k.begin(), k.end());
            self(self, site + 1, partial * v);
            key.resize(key.size() - 2);
        }
    };
    visit(visit, 0, cdouble{1.0, 0.0});
    return out;
}

CoeffTable couple_coeffs(const CoeffTable& product) {
    if (product.kind() != BasisKind::product) {
        throw std::invalid_argument("couple_coeffs: expected a product-basis table");
    }
    CoeffTable out(BasisKind::coupled, product.system());
    std::set<std::vector<int>> patterns;
    for (const auto& [key, value] : product.entries()) {
        patterns.insert(ranks_of_product_key(key));
    }
    for (const auto& ranks : patterns) {
        for (const auto& w : coupling_weights(ranks)) {
            const cdouble v = product.get(w.product);
            if (v != cdouble{}) {
                out.add(w.coupled, w.weight * v);
            }
        }
    }
    return out;
}

CoeffTable uncouple_coeffs(const CoeffTable& coupled) {
    if (coupled.kind() != BasisKind::coupled) {
        throw std::invalid_argument("uncouple_coeffs: expected a coupled-basis table");
    }
    const auto n = coupled.system().size();
    if (n == 1) {
        CoeffTable out(BasisKind::single, coupled.system());
        for (const auto& [key, value] : coupled.entries()) {
            out.set(key, value);
        }
        return out;
    }
    CoeffTable out(BasisKind::product, coupled.system());
    std::set<std::vector<int>> patterns;
    for (const auto& [key, value] : coupled.entries()) {
        patterns.emplace(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(n));
    }
    for (const auto& ranks : patterns) {
        for (const auto& w : coupling_weights(ranks)) {
            const cdouble v = coupled.get(w.coupled);
            if (v != cdouble{}) {
                out.add(w.product, w.weight * v);
            }
        }
    }
    return out;
}

CoeffTable couple_two_spin_coeffs(const CoeffTable& product) {
    if (product.kind() != BasisKind::product || product.system().size() != 2) {
        throw std::invalid_argument("couple_two_spin_coeffs: expected a two-spin product-basis table");
    }
    return couple_coeffs(product);
}

CMatrix reconstruct_in_coupled_frame(const CoeffTable& coupled) {
    if (coupled.kind() != BasisKind::coupled || coupled.system().size() != 2) {
        throw std::invalid_argument("reconstruct_in_coupled_frame: expected a two-spin coupled table");
    }
    const auto& system = coupled.system();
    const CMatrix u = coupled_basis_transform(system[0], system[1]);
    CMatrix out = CMatrix::Zero(u.rows(), u.cols());
    for (const auto& [key, value] : coupled.entries()) {
        out += value * (u * coupled_operator(system, key) * u.adjoint());
    }
    return out;
}

DensityMatrix kron_density(std::span<const DensityMatrix> states) {
    if (states.empty()) {
        throw std::invalid_argument("kron_density: no states");
    }
    CMatrix out = states.front().matrix();
    std::vector<SpinValue> system = states.front().system();
    for (const auto& s : states.subspan(1)) {
        out = kron(out, s.matrix());
        system.insert(system.end(), s.system().begin(), s.system().end());
    }
    return DensityMatrix::unchecked(std::move(out), std::move(system));
}

CMatrix rotation_operator(const std::vector<SpinValue>& system, const EulerAngles& angles, RotationMode mode) {
    if (mode == RotationMode::single_spin) {
        return wigner_D_matrix(SpinValue::from_twice(system_dimension(system) - 1), angles);
    }
    std::vector<CMatrix> factors;
    for (const auto s : system) {
        factors.push_back(wigner_D_matrix(s, angles));
    }
    return kron_all(factors);
}

DensityMatrix rotate_density(const DensityMatrix& rho, const EulerAngles& angles, RotationMode mode) {
    const CMatrix d = rotation_operator(rho.system(), angles, mode);
    return DensityMatrix::unchecked(d * rho.matrix() * d.adjoint(), rho.system());
}

CoeffTable rotate_coeffs(const CoeffTable& coeffs, const EulerAngles& angles) {
    if (coeffs.kind() == BasisKind::product) {
        throw std::invalid_argument("rotate_coeffs: product-basis entries do not transform irreducibly");
    }
    CoeffTable out(coeffs.kind(), coeffs.system());
    for (const auto& [key, value] : coeffs.entries()) {
        const int K = coeffs.total_rank(key);
        const int M = key.back();
        CoeffTable::Key target = key;
        for (int Mp = -K; Mp <= K; ++Mp) {
            target.back() = Mp;
            out.add(target, wigner_D(SpinValue::integer(K), Projection::integer(Mp), Projection::integer(M), angles) *
                                value);
        }
    }
    return out;
}

}  // namespace spintomo
