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

#include "spintomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

#include "spintomo/errors.hpp"

namespace spintomo {

std::string to_string(const PauliError& e) {
    return std::string(1, axis_letter(e.axis)) + "@" + std::to_string(e.site);
}

std::string to_string(const ErrorProduct& e) {
    if (e.empty()) {
        return "none";
    }
    std::string out;
    for (const auto& p : e) {
        if (!out.empty()) {
            out += "*";
        }
        out += to_string(p);
    }
    return out;
}

CMatrix pauli_error_operator(const std::vector<SpinValue>& system, const PauliError& e) {
    if (e.site < 0 || static_cast<std::size_t>(e.site) >= system.size()) {
        throw std::invalid_argument("Pauli error site " + std::to_string(e.site) + " out of range for " +
                                    std::to_string(system.size()) + " spins");
    }
    if (system[static_cast<std::size_t>(e.site)] != spin_half()) {
        throw std::invalid_argument("Pauli errors act on spin-1/2 sites only");
    }
    CMatrix sigma;
    if (e.axis == Axis::y) {
        sigma = cdouble{0.0, 1.0} * pauli(Axis::x) * pauli(Axis::z);
    } else {
        sigma = pauli(e.axis);
    }
    std::vector<CMatrix> factors;
    for (std::size_t i = 0; i < system.size(); ++i) {
        factors.push_back(static_cast<int>(i) == e.site ? sigma : CMatrix::Identity(system[i].dim(), system[i].dim()));
    }
    return kron_all(factors);
}

StateVector apply_pauli_state(const StateVector& phi, const PauliError& e) {
    return StateVector(pauli_error_operator(phi.system(), e) * phi.amplitudes(), phi.system());
}

DensityMatrix apply_pauli_density(const DensityMatrix& rho, const PauliError& e) {
    const CMatrix op = pauli_error_operator(rho.system(), e);
    return DensityMatrix::unchecked(op * rho.matrix() * op.adjoint(), rho.system());
}

DensityMatrix apply_errors(const DensityMatrix& rho, const ErrorProduct& errors) {
    DensityMatrix out = rho;
    for (const auto& e : errors) {
        out = apply_pauli_density(out, e);
    }
    return out;
}

RankPartition accessible_ranks(const std::vector<SpinValue>& system, const AccessibilityPolicy& policy) {
    if (policy.max_observable_rank < 0) {
        throw std::invalid_argument("accessibility cap must be non-negative");
    }
    int max_rank = 0;
    for (const auto s : system) {
        max_rank += s.twice();
    }
    RankPartition out;
    for (int L = 0; L <= max_rank; ++L) {
        (L <= policy.max_observable_rank ? out.observable : out.unobservable).push_back(L);
    }
    return out;
}

GridSpec minimal_grid(int max_rank) {
    return GridSpec{max_rank + 1, 2 * max_rank + 1};
}

std::vector<GridPoint> so3_grid(const GridSpec& spec) {
    if (spec.n_beta < 1 || spec.n_alpha < 1) {
        throw std::invalid_argument("so3_grid: need at least one node per axis");
    }
    const QuadratureRule gl = gauss_legendre(spec.n_beta);
    const double alpha_step = 2.0 * std::numbers::pi / spec.n_alpha;
    const double gamma_weight = 2.0 * std::numbers::pi;
    std::vector<GridPoint> grid;
    grid.reserve(static_cast<std::size_t>(spec.n_beta * spec.n_alpha));
    for (std::size_t b = 0; b < gl.nodes.size(); ++b) {
        const double beta = std::acos(gl.nodes[b]);
        for (int a = 0; a < spec.n_alpha; ++a) {
            grid.push_back({EulerAngles{a * alpha_step, beta, 0.0}, gl.weights[b] * alpha_step * gamma_weight});
        }
    }
    return grid;
}

namespace {

struct Channel {
    std::vector<int> block;
    int rank = 0;
    int parity = 0;
    CMatrix observable;  // O_{K,0} in the product frame
};

int max_rank_of(const std::vector<SpinValue>& system) {
    int r = 0;
    for (const auto s : system) {
        r += s.twice();
    }
    return r;
}

CoeffTable::Key channel_key(const std::vector<int>& block, int rank, int projection) {
    CoeffTable::Key key = block;
    key.push_back(rank);
    key.push_back(projection);
    return key;
}

std::vector<Channel> channels_for(const std::vector<SpinValue>& system, int rank_cap) {
    const std::size_t n = system.size();
    std::vector<Channel> out;
    std::vector<int> ranks(n, 0);
    auto visit = [&](auto&& self, std::size_t site) -> void {
        if (site == n) {
            std::set<CoeffTable::Key> seen;
            for (const auto& w : coupling_weights(ranks)) {
                if (w.coupled.back() != 0 || !seen.insert(w.coupled).second) {
                    continue;
                }
                const int K = n == 1 ? w.coupled[0] : w.coupled[w.coupled.size() - 2];
                if (K > rank_cap) {
                    continue;
                }
                Channel ch;
                ch.block.assign(w.coupled.begin(), w.coupled.end() - 2);
                ch.rank = K;
                ch.parity = coupled_phase_parity(w.coupled, n);
                ch.observable = coupled_operator(system, w.coupled);
                out.push_back(std::move(ch));
            }
            return;
        }
        for (int L = 0; L <= system[site].twice(); ++L) {
            ranks[site] = L;
            self(self, site + 1);
        }
    };
    visit(visit, 0);
    return out;
}

cdouble i_power(int p) {
    switch (((p % 4) + 4) % 4) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
    }
}

int distinct_count(const std::vector<GridPoint>& grid, double EulerAngles::*field) {
    std::set<double> values;
    for (const auto& p : grid) {
        values.insert(p.angles.*field);
    }
    return static_cast<int>(values.size());
}

double channel_moment(const CMatrix& frame, const Channel& ch) {
    return (i_power(ch.parity) * frame.cwiseProduct(ch.observable.transpose()).sum()).real();
}

}  // namespace

double measure_moment(const DensityMatrix& rho, const std::vector<int>& block, int rank, const EulerAngles& angles) {
    const auto& system = rho.system();
    const CoeffTable::Key key = channel_key(block, rank, 0);
    CoeffTable(BasisKind::coupled, system).check_key(key);
    Channel ch;
    ch.block = block;
    ch.rank = rank;
    ch.parity = coupled_phase_parity(key, system.size());
    ch.observable = coupled_operator(system, key);
    const CMatrix d = rotation_operator(system, angles);
    return channel_moment(d.adjoint() * rho.matrix() * d, ch);
}

Tomogram simulate_tomogram(const DensityMatrix& rho, const SimulationOptions& options) {
    const auto& system = rho.system();
    const int max_rank = max_rank_of(system);
    const int rank_cap = options.policy ? std::min(max_rank, options.policy->max_observable_rank) : max_rank;
    if (options.noise_sigma < 0.0 || !std::isfinite(options.noise_sigma)) {
        throw std::invalid_argument("noise_sigma must be a non-negative finite number");
    }

    GridSpec spec = options.grid;
    const GridSpec minimal = minimal_grid(max_rank);
    if (spec.n_beta == 0) spec.n_beta = minimal.n_beta;
    if (spec.n_alpha == 0) spec.n_alpha = minimal.n_alpha;

    Tomogram t;
    t.system = system;
    t.seed = options.seed;
    t.noise_sigma = options.noise_sigma;
    t.grid = so3_grid(spec);

    const auto channels = channels_for(system, rank_cap);
    t.records.reserve(t.grid.size() * channels.size());
    for (std::size_t p = 0; p < t.grid.size(); ++p) {
        const CMatrix d = rotation_operator(system, t.grid[p].angles);
        const CMatrix frame = d.adjoint() * rho.matrix() * d;
        for (const auto& ch : channels) {
            t.records.push_back({p, ch.block, ch.rank, channel_moment(frame, ch)});
        }
    }

    if (options.noise_sigma > 0.0) {
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> noise(0.0, options.noise_sigma);
        for (auto& r : t.records) {
            r.value += noise(rng);
        }
    }
    return t;
}

CoeffTable invert_tomogram(const Tomogram& tomogram) {
    if (tomogram.system.empty()) {
        throw std::invalid_argument("invert_tomogram: tomogram has no spin system");
    }
    double total_weight = 0.0;
    for (const auto& p : tomogram.grid) {
        total_weight += p.weight;
    }
    if (std::abs(total_weight - kSo3Volume) > 1e-10) {
        throw std::invalid_argument("invert_tomogram: grid weights sum to " + std::to_string(total_weight) +
                                    ", expected 8 pi^2");
    }
    const int n_beta = distinct_count(tomogram.grid, &EulerAngles::beta);
    const int n_alpha = distinct_count(tomogram.grid, &EulerAngles::alpha);

    const BasisKind kind = tomogram.system.size() == 1 ? BasisKind::single : BasisKind::coupled;
    CoeffTable out(kind, tomogram.system);
    std::map<std::pair<std::vector<int>, int>, std::size_t> counts;
    for (const auto& r : tomogram.records) {
        if (r.point_index >= tomogram.grid.size()) {
            throw std::invalid_argument("invert_tomogram: record refers to a missing grid point");
        }
        if (n_beta < r.rank + 1 || n_alpha < 2 * r.rank + 1) {
            throw std::invalid_argument("invert_tomogram: grid with " + std::to_string(n_beta) + " beta and " +
                                        std::to_string(n_alpha) + " alpha nodes cannot resolve rank " +
                                        std::to_string(r.rank) + " (needs " + std::to_string(r.rank + 1) +
                                        " and " + std::to_string(2 * r.rank + 1) + ")");
        }
        ++counts[{r.block, r.rank}];
        const auto& point = tomogram.grid[r.point_index];
        const SpinValue K = SpinValue::integer(r.rank);
        const double scale = (2.0 * r.rank + 1.0) / kSo3Volume * point.weight * r.value;
        const cdouble phase = i_power(coupled_phase_parity(channel_key(r.block, r.rank, 0), tomogram.system.size()));
        for (int M = -r.rank; M <= r.rank; ++M) {
            out.add(channel_key(r.block, r.rank, M),
                    scale * phase * wigner_D(K, Projection::integer(M), Projection::integer(0), point.angles));
        }
    }
    for (const auto& [channel, count] : counts) {
        if (count != tomogram.grid.size()) {
            throw std::invalid_argument("invert_tomogram: a channel is missing records at some grid points");
        }
    }
    return out;
}

TruncationResult truncated_reconstruct(const CoeffTable& coeffs, const AccessibilityPolicy& policy) {
    if (coeffs.kind() == BasisKind::product) {
        throw std::invalid_argument("truncated_reconstruct: product-basis tables have no total rank; couple first");
    }
    if (policy.max_observable_rank < 0) {
        throw std::invalid_argument("accessibility cap must be non-negative");
    }
    TruncationResult out{coeffs.restricted_to_rank(policy.max_observable_rank), {}, 0.0, {}, 0.0};
    out.candidate = reconstruct(out.kept);
    const CMatrix full = reconstruct(coeffs);
    out.frobenius_deficit = (full - out.candidate).norm();
    out.trace = out.candidate.trace();
    const CMatrix hermitian_part = 0.5 * (out.candidate + out.candidate.adjoint());
    out.min_eigenvalue = hermitian_eigenvalues(hermitian_part).minCoeff();
    return out;
}

std::vector<ErrorProduct> default_candidates(const std::vector<SpinValue>& system) {
    std::vector<ErrorProduct> out{ErrorProduct{}};
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (system[i] != spin_half()) {
            continue;
        }
        for (const auto axis : {Axis::x, Axis::y, Axis::z}) {
            out.push_back({PauliError{static_cast<int>(i), axis}});
        }
    }
    return out;
}

SignatureSet build_signatures(const DensityMatrix& reference, const std::vector<ErrorProduct>& candidates,
                              const AccessibilityPolicy& policy) {
    const auto& system = reference.system();
    const int cap = policy.max_observable_rank;
    SignatureSet out{decompose_irreducible(reference.matrix(), system).restricted_to_rank(cap), policy, {}};
    for (const auto& candidate : candidates) {
        const DensityMatrix image = apply_errors(reference, candidate);
        const CoeffTable coeffs = decompose_irreducible(image.matrix(), system).restricted_to_rank(cap);
        out.signatures.push_back({candidate, difference(coeffs, out.reference)});
    }
    return out;
}

DetectionResult detect_error(const CoeffTable& observed, const SignatureSet& set) {
    if (set.signatures.empty()) {
        throw std::invalid_argument("detect_error: empty signature set");
    }
    const CoeffTable coupled = observed.kind() == BasisKind::product ? couple_coeffs(observed) : observed;
    CoeffTable visible = coupled.restricted_to_rank(set.policy.max_observable_rank);
    if (visible.kind() != set.reference.kind()) {
        // One-spin tables may arrive in either of the equivalent layouts.
        CoeffTable converted(set.reference.kind(), visible.system());
        for (const auto& [key, value] : visible.entries()) {
            converted.set(key, value);
        }
        visible = std::move(converted);
    }

    struct Scored {
        double residual;
        const ErrorProduct* error;
    };
    std::vector<Scored> scored;
    for (const auto& sig : set.signatures) {
        const CoeffTable predicted = sum(set.reference, sig.delta);
        scored.push_back({distance(visible, predicted), &sig.error});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        return a.residual != b.residual ? a.residual < b.residual : *a.error < *b.error;
    });

    // Candidates within the ambiguity tolerance of the best residual form a
    // tie group; inside it the tie-break order decides.
    const double best = scored.front().residual;
    const auto tie_end = std::find_if(scored.begin(), scored.end(), [&](const Scored& s) {
        return s.residual - best > kAmbiguityTolerance;
    });
    std::stable_sort(scored.begin(), tie_end, [](const Scored& a, const Scored& b) { return *a.error < *b.error; });

    DetectionResult result;
    result.detected = *scored.front().error;
    result.residual = scored.front().residual;
    result.ambiguous = std::distance(scored.begin(), tie_end) > 1;
    if (scored.size() > 1) {
        result.runner_up = *scored[1].error;
        result.runner_up_residual = scored[1].residual;
    }
    return result;
}

DensityMatrix correct_error(const DensityMatrix& observed, const ErrorProduct& errors) {
    ErrorProduct undo(errors.rbegin(), errors.rend());
    return apply_errors(observed, undo);
}

namespace {

// Eigenvalues below this are roundoff for unit-trace inputs and are treated as zero.
constexpr double kSpectralFloor = 1e-14;

CMatrix psd_sqrt(const CMatrix& a) {
    const Eigensystem es = eigensystem(0.5 * (a + a.adjoint()));
    const RVector roots = es.values.unaryExpr([](double v) { return v > kSpectralFloor ? std::sqrt(v) : 0.0; });
    return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b, double tol) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    for (const auto* rho : {&a, &b}) {
        const auto report = validate_density(rho->matrix(), {}, tol);
        if (!report.ok()) {
            throw InvalidState("fidelity: " + report.failures());
        }
    }
    // Tr sqrt(sqrt(a) b sqrt(a)) is the nuclear norm of sqrt(a) sqrt(b).
    const CMatrix product = psd_sqrt(a.matrix()) * psd_sqrt(b.matrix());
    const double s = Eigen::JacobiSVD<CMatrix>(product).singularValues().sum();
    return std::clamp(s * s, 0.0, 1.0);
}

}  // namespace spintomo
