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

#include "spintomo/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spintomo {

char axis_letter(Axis axis) {
    switch (axis) {
        case Axis::x:
            return 'X';
        case Axis::y:
            return 'Y';
        case Axis::z:
            return 'Z';
    }
    return '?';
}

Axis axis_from_string(std::string_view text) {
    if (text == "X" || text == "x") return Axis::x;
    if (text == "Y" || text == "y") return Axis::y;
    if (text == "Z" || text == "z") return Axis::z;
    throw std::invalid_argument("unknown Pauli axis '" + std::string(text) + "'");
}

CMatrix pauli(Axis axis) {
    CMatrix m(2, 2);
    const cdouble i{0.0, 1.0};
    switch (axis) {
        case Axis::x:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case Axis::y:
            m << 0.0, -i, i, 0.0;
            break;
        case Axis::z:
            m << 1.0, 0.0, 0.0, -1.0;
            break;
    }
    return m;
}

CMatrix embed_site(const CMatrix& op, int site, int n) {
    if (n < 1 || n > kMaxSites) {
        throw std::invalid_argument("embed_site: number of sites must be in [1, 12]");
    }
    if (site < 0 || site >= n) {
        throw std::invalid_argument("embed_site: site " + std::to_string(site) + " out of range for " +
                                    std::to_string(n) + " sites");
    }
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("embed_site: operator must be 2x2");
    }
    const CMatrix before = CMatrix::Identity(1 << site, 1 << site);
    const CMatrix after = CMatrix::Identity(1 << (n - site - 1), 1 << (n - site - 1));
    return kron(kron(before, op), after);
}

CMatrix total_spin_component(Axis axis, int n) {
    const CMatrix sigma = pauli(axis);
    CMatrix out = CMatrix::Zero(1 << n, 1 << n);
    for (int i = 0; i < n; ++i) {
        out += 0.5 * embed_site(sigma, i, n);
    }
    return out;
}

CMatrix total_spin_squared(int n) {
    CMatrix out = CMatrix::Zero(1 << n, 1 << n);
    for (const auto axis : {Axis::x, Axis::y, Axis::z}) {
        const CMatrix s = total_spin_component(axis, n);
        out += s * s;
    }
    return out;
}

void SpinSystemSpec::set_coupling(int i, int j, double value) {
    if (i == j) {
        throw std::invalid_argument("coupling needs two distinct sites");
    }
    couplings[{std::min(i, j), std::max(i, j)}] = value;
}

double SpinSystemSpec::coupling(int i, int j) const {
    const auto it = couplings.find({std::min(i, j), std::max(i, j)});
    return it == couplings.end() ? 0.0 : it->second;
}

void SpinSystemSpec::validate() const {
    if (n < 1 || n > kMaxSites) {
        throw std::invalid_argument("number of sites must be in [1, 12] (dimension guard 4096), got " +
                                    std::to_string(n));
    }
    if (!std::isfinite(mu_b0)) {
        throw std::invalid_argument("mu_b0 must be finite");
    }
    for (const auto& [key, value] : couplings) {
        const auto [i, j] = key;
        if (i >= j || i < 0 || j >= n) {
            throw std::invalid_argument("coupling key (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") is not a pair of distinct sites below n");
        }
        if (!std::isfinite(value)) {
            throw std::invalid_argument("coupling values must be finite");
        }
    }
}

namespace {

CMatrix pair_term(Axis axis, int i, int j, int n) {
    std::vector<CMatrix> factors(static_cast<std::size_t>(n), CMatrix::Identity(2, 2));
    factors[static_cast<std::size_t>(i)] = pauli(axis);
    factors[static_cast<std::size_t>(j)] = pauli(axis);
    return kron_all(factors);
}

CMatrix exchange(const SpinSystemSpec& spec, int i, int j) {
    CMatrix term = pair_term(Axis::x, i, j, spec.n) + pair_term(Axis::y, i, j, spec.n);
    if (spec.model == CouplingModel::heisenberg) {
        term += pair_term(Axis::z, i, j, spec.n);
    }
    return term;
}

void require_sites(const SpinSystemSpec& spec, int n, const char* what) {
    spec.validate();
    if (spec.n != n) {
        throw std::invalid_argument(std::string(what) + " needs exactly " + std::to_string(n) + " sites");
    }
}

}  // namespace

CMatrix build_h2(const SpinSystemSpec& spec) {
    require_sites(spec, 2, "build_h2");
    const CMatrix e = CMatrix::Identity(2, 2);
    const CMatrix sx = pauli(Axis::x), sy = pauli(Axis::y), sz = pauli(Axis::z);
    const double j12 = spec.coupling(0, 1);
    CMatrix h = -spec.mu_b0 * kron(sz, e) - spec.mu_b0 * kron(e, sz) + j12 * kron(sx, sx) + j12 * kron(sy, sy);
    if (spec.model == CouplingModel::heisenberg) {
        h += j12 * kron(sz, sz);
    }
    return h;
}

CMatrix build_h3(const SpinSystemSpec& spec) {
    require_sites(spec, 3, "build_h3");
    const CMatrix e = CMatrix::Identity(2, 2);
    const CMatrix sz = pauli(Axis::z);
    CMatrix h = -spec.mu_b0 * kron(kron(sz, e), e) - spec.mu_b0 * kron(kron(e, sz), e) -
                spec.mu_b0 * kron(kron(e, e), sz);

    std::vector<Axis> axes{Axis::x, Axis::y};
    if (spec.model == CouplingModel::heisenberg) {
        axes.push_back(Axis::z);
    }
    for (const auto axis : axes) {
        const CMatrix s = pauli(axis);
        h += spec.coupling(0, 1) * kron(kron(s, s), e);
        h += spec.coupling(1, 2) * kron(kron(e, s), s);
        // J31 couples spins 3 and 1, which live in slots 3 and 1.
        h += spec.coupling(0, 2) * kron(kron(s, e), s);
    }
    return h;
}

CMatrix build_hn(const SpinSystemSpec& spec) {
    spec.validate();
    CMatrix h = -2.0 * spec.mu_b0 * total_spin_component(Axis::z, spec.n);
    for (const auto& [key, value] : spec.couplings) {
        h += value * exchange(spec, key.first, key.second);
    }
    return h;
}

Eigensystem joint_eigensystem(const CMatrix& h, const CMatrix& conserved, double degeneracy_tol) {
    Eigensystem es = eigensystem(h, 1e-9, degeneracy_tol);
    const Eigen::Index n = es.values.size();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && es.values[end] - es.values[start] < degeneracy_tol) {
            ++end;
        }
        if (end - start > 1) {
            const CMatrix block = es.vectors.middleCols(start, end - start);
            const CMatrix reduced = block.adjoint() * conserved * block;
            const Eigensystem inner = eigensystem(0.5 * (reduced + reduced.adjoint()), 1e-9, degeneracy_tol);
            es.vectors.middleCols(start, end - start) = block * inner.vectors;
        }
        start = end;
    }
    for (Eigen::Index c = 0; c < n; ++c) {
        auto col = es.vectors.col(c);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (std::abs(col[r]) > 1e-12) {
                col *= std::conj(col[r]) / std::abs(col[r]);
                col[r] = std::abs(col[r]);
                break;
            }
        }
    }
    return es;
}

SpectrumReport spectrum(const SpinSystemSpec& spec, double degeneracy_tol) {
    const CMatrix h = build_hn(spec);
    const CMatrix sz = total_spin_component(Axis::z, spec.n);
    const Eigensystem es = joint_eigensystem(h, sz, degeneracy_tol);

    SpectrumReport report;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        report.eigenvalues.push_back(es.values[i]);
        const auto v = es.vectors.col(i);
        report.sz_expectations.push_back((v.adjoint() * sz * v)(0, 0).real());
    }
    std::size_t start = 0;
    while (start < report.eigenvalues.size()) {
        std::size_t end = start + 1;
        while (end < report.eigenvalues.size() && report.eigenvalues[end] - report.eigenvalues[start] < degeneracy_tol) {
            ++end;
        }
        report.degeneracies.push_back(static_cast<int>(end - start));
        start = end;
    }
    return report;
}

}  // namespace spintomo
