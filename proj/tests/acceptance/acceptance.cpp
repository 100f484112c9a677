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

// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "oracle/jacobi_eigen.hpp"
#include "spintomo/hamiltonian.hpp"
#include "spintomo/multipole.hpp"
#include "spintomo/tomography.hpp"
#include "test_util.hpp"

using namespace spintomo;

namespace {

constexpr double kBasisTol = 1e-12;
constexpr double kBasisSeconds = 1.0;
constexpr double kRoundTripTol = 1e-12;
constexpr double kRotationTol = 1e-10;
constexpr double kKronTol = 1e-12;
constexpr double kInversionTol = 1e-8;
constexpr double kInversionSeconds = 5.0;
constexpr double kFidelityFloor = 1 - 1e-10;
constexpr double kCommutatorTol = 1e-12;
constexpr double kSpectrumTol = 1e-10;
constexpr double kZeroCoefficient = 1e-12;
constexpr double kZeroDeficit = 1e-12;
constexpr double kSeriesRelTol = 1e-6;
constexpr double kMonopoleTol = 1e-14;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpinValue sv(int twice) { return SpinValue::from_twice(twice); }

Verdict tensor_basis_identities() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const int ts : {1, 2, 3, 4}) {
        const TensorBasis basis = tensor_basis(sv(ts));
        for (const auto& a : basis.elements) {
            for (const auto& b : basis.elements) {
                const cdouble g = (a.matrix.adjoint() * b.matrix).trace();
                worst = std::max(worst, std::abs(g - cdouble(a.index == b.index ? 1.0 : 0.0)));
            }
            const int M = a.index.projection;
            const double sign = M % 2 == 0 ? 1.0 : -1.0;
            worst = std::max(worst, (a.matrix.adjoint() - sign * basis.at({a.index.rank, -M})).norm());
        }
    }
    const double dt = seconds_since(t0);
    return {worst < kBasisTol && dt < kBasisSeconds,
            fmt("max deviation %.2e (tol %.0e), %.3f s (limit %.0f s)", worst, kBasisTol, dt, kBasisSeconds)};
}

Verdict round_trip() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int dim = 2; dim <= 5; ++dim)
        for (int trial = 0; trial < 100; ++trial) {
            const CMatrix a = testutil::random_matrix(rng, dim);
            const SpinValue s = sv(dim - 1);
            worst = std::max(worst, (reconstruct(decompose(a, s)) - a).norm() / a.norm());
        }
    return {worst < kRoundTripTol, fmt("400 matrices, max relative error %.2e (tol %.0e)", worst, kRoundTripTol)};
}

Verdict rotation_covariance() {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (const int ts : {1, 2})
        for (int trial = 0; trial < 50; ++trial) {
            const auto rho = testutil::random_mixed(rng, {sv(ts)});
            const auto angles = testutil::random_angles(rng);
            const auto by_matrix = decompose(rotate_density(rho, angles).matrix(), sv(ts));
            const auto by_coeffs = rotate_coeffs(decompose(rho.matrix(), sv(ts)), angles);
            worst = std::max(worst, max_abs_difference(by_matrix, by_coeffs));
        }
    return {worst < kRotationTol, fmt("100 pairs, max deviation %.2e (tol %.0e)", worst, kRotationTol)};
}

Verdict kron_coupling() {
    std::mt19937_64 rng(103);
    const auto sys = testutil::qubits(2);
    const CMatrix u = coupled_basis_transform(spin_half(), spin_half());
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<DensityMatrix> pair = {testutil::random_mixed(rng, {spin_half()}),
                                                 testutil::random_mixed(rng, {spin_half()})};
        const CMatrix target = kron(pair[0].matrix(), pair[1].matrix());
        const std::vector<CoeffTable> singles = {decompose(pair[0].matrix(), spin_half()),
                                                 decompose(pair[1].matrix(), spin_half())};
        const CoeffTable product = product_coeffs(singles);
        const CoeffTable coupled = couple_two_spin_coeffs(product);
        worst = std::max(worst, (reconstruct(product) - target).cwiseAbs().maxCoeff());
        worst = std::max(worst, (reconstruct(coupled) - target).cwiseAbs().maxCoeff());
        worst = std::max(worst, (reconstruct_in_coupled_frame(coupled) - u * target * u.adjoint()).cwiseAbs().maxCoeff());
    }
    return {worst < kKronTol, fmt("50 pairs, max deviation %.2e (tol %.0e)", worst, kKronTol)};
}

Verdict tomographic_inversion() {
    std::mt19937_64 rng(104);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int states = 0;
    for (const int ts : {1, 2})
        for (int trial = 0; trial < 50; ++trial, ++states) {
            const auto rho = trial % 2 ? testutil::random_pure(rng, {sv(ts)}) : testutil::random_mixed(rng, {sv(ts)});
            const auto inverted = invert_tomogram(simulate_tomogram(rho));
            worst = std::max(worst, max_abs_difference(inverted, decompose(rho.matrix(), sv(ts))));
        }
    const double dt = seconds_since(t0);
    return {worst < kInversionTol && dt < kInversionSeconds,
            fmt("%d states, max deviation %.2e (tol %.0e), %.3f s (limit %.0f s)", states, worst, kInversionTol, dt,
                kInversionSeconds)};
}

Verdict error_detection() {
    std::mt19937_64 rng(105);
    int cases = 0, correct = 0, flagged = 0, silent = 0, unjustified_flags = 0;
    double min_fidelity = 1.0;
    for (int n = 1; n <= 3; ++n) {
        const auto sys = testutil::qubits(n);
        const AccessibilityPolicy policy{};
        SimulationOptions opt;
        opt.policy = policy;
        const auto candidates = default_candidates(sys);
        for (int trial = 0; trial < 50; ++trial) {
            const auto ref = testutil::random_pure(rng, sys);
            const auto set = build_signatures(ref, candidates, policy);
            for (std::size_t c = 1; c < candidates.size(); ++c, ++cases) {
                const auto corrupted = apply_errors(ref, candidates[c]);
                const auto observed = invert_tomogram(simulate_tomogram(corrupted, opt));
                const auto d = detect_error(observed, set);
                if (d.detected == candidates[c]) {
                    ++correct;
                } else if (d.ambiguous) {
                    ++flagged;
                } else {
                    ++silent;
                }
                if (d.ambiguous) {
                    // A flag is justified only when two signatures really coincide.
                    if (!d.runner_up || std::abs(d.runner_up_residual - d.residual) > kAmbiguityTolerance) ++unjustified_flags;
                }
                min_fidelity = std::min(min_fidelity, fidelity(correct_error(corrupted, d.detected), ref));
            }
        }
    }
    return {silent == 0 && unjustified_flags == 0 && min_fidelity > kFidelityFloor,
            fmt("%d injections: %d correct, %d flagged ambiguous, %d silent; min fidelity 1-%.1e (floor 1-1e-10)",
                cases, correct, flagged, silent, 1 - min_fidelity)};
}

Verdict conserved_quantities() {
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const CMatrix sz = total_spin_component(Axis::z, n);
        worst = std::max(worst, commutator(sz, total_spin_squared(n)).norm());
        for (int trial = 0; trial < 20; ++trial) {
            SpinSystemSpec spec;
            spec.n = n;
            spec.mu_b0 = u(rng);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) spec.set_coupling(i, j, u(rng));
            worst = std::max(worst, commutator(build_hn(spec), sz).norm());
        }
    }
    SpinSystemSpec h2;
    h2.n = 2;
    h2.mu_b0 = 1.0;
    h2.set_coupling(0, 1, 0.5);
    const auto values = oracle::jacobi_hermitian_eigenvalues(build_h2(h2));
    const double expected[4] = {-2, -1, 1, 2};
    double spec_err = 0.0;
    for (int i = 0; i < 4; ++i) spec_err = std::max(spec_err, std::abs(values[static_cast<std::size_t>(i)] - expected[i]));
    const auto lib = spectrum(h2).eigenvalues;
    for (int i = 0; i < 4; ++i) spec_err = std::max(spec_err, std::abs(lib[static_cast<std::size_t>(i)] - expected[i]));
    return {worst < kCommutatorTol && spec_err < kSpectrumTol,
            fmt("max commutator norm %.2e (tol %.0e); H2 spectrum error %.2e (tol %.0e)", worst, kCommutatorTol,
                spec_err, kSpectrumTol)};
}

Verdict moment_truncation() {
    std::mt19937_64 rng(107);
    const auto sys = testutil::qubits(3);
    const AccessibilityPolicy policy{};
    int random_ok = 0, zero_cases = 0, zero_ok = 0;
    double min_deficit = 1e300, max_zero_deficit = 0.0;
    auto rank3_norm = [](const CoeffTable& c) {
        double s = 0.0;
        for (const auto& [k, v] : c.entries())
            if (c.total_rank(k) == 3) s = std::max(s, std::abs(v));
        return s;
    };
    auto check = [&](const DensityMatrix& rho) {
        const auto c = decompose_coupled(rho.matrix(), sys);
        const auto r = truncated_reconstruct(c, policy);
        if (rank3_norm(c) <= kZeroCoefficient) {
            ++zero_cases;
            max_zero_deficit = std::max(max_zero_deficit, r.frobenius_deficit);
            if (r.frobenius_deficit <= kZeroDeficit) ++zero_ok;
            return false;
        }
        min_deficit = std::min(min_deficit, r.frobenius_deficit);
        return r.frobenius_deficit > 0.0;
    };
    for (int trial = 0; trial < 20; ++trial) {
        if (check(testutil::random_pure(rng, sys))) ++random_ok;
    }
    // States without rank-3 content: one site maximally mixed.
    const DensityMatrix mixed_site(CMatrix::Identity(2, 2) / 2.0, {spin_half()});
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<DensityMatrix> parts = {testutil::random_pure(rng, testutil::qubits(2)), mixed_site};
        check(kron_density(parts));
    }
    check(DensityMatrix(CMatrix::Identity(8, 8) / 8.0, sys));
    return {random_ok == 20 && zero_cases == 21 && zero_ok == zero_cases,
            fmt("%d/20 random pure states with positive deficit (min %.2e); %d/%d rank-3-free states with deficit <= "
                "%.0e (max %.2e)",
                random_ok, min_deficit, zero_ok, zero_cases, kZeroDeficit, max_zero_deficit)};
}

double coulomb(const std::vector<PointSource>& src, const ObservationPoint& p) {
    auto cart = [](double r, double t, double f) {
        return std::array<double, 3>{r * std::sin(t) * std::cos(f), r * std::sin(t) * std::sin(f), r * std::cos(t)};
    };
    const auto o = cart(p.r0, p.theta, p.phi);
    double v = 0.0;
    for (const auto& s : src) {
        const auto q = cart(s.r, s.theta, s.phi);
        v += s.charge / std::hypot(o[0] - q[0], o[1] - q[1], o[2] - q[2]);
    }
    return v;
}

Verdict multipole_series() {
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> q(-1.0, 1.0), r(0.05, 1.0), th(0.0, std::numbers::pi), ph(0.0, 2 * std::numbers::pi);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PointSource> src;
        double rmax = 0.0;
        for (int i = 0; i < 5; ++i) {
            src.push_back({q(rng), r(rng), th(rng), ph(rng)});
            rmax = std::max(rmax, src.back().r);
        }
        const ObservationPoint p{10.0 * rmax, th(rng), ph(rng)};
        const double direct = coulomb(src, p);
        worst = std::max(worst, std::abs(potential_series(src, 8, p).value - direct) / std::abs(direct));
    }
    double mono = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double charge = q(rng), r0 = 0.5 + 5.0 * r(rng);
        const std::vector<PointSource> origin = {{charge, 0.0, th(rng), ph(rng)}};
        for (int lmax = 0; lmax <= 8; ++lmax)
            mono = std::max(mono, std::abs(potential_series(origin, lmax, {r0, th(rng), ph(rng)}).value - charge / r0));
    }
    return {worst < kSeriesRelTol && mono < kMonopoleTol,
            fmt("100 distributions, max relative error %.2e (tol %.0e); monopole error %.2e (tol %.0e)", worst,
                kSeriesRelTol, mono, kMonopoleTol)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict cli_determinism() {
    const std::filesystem::path golden = SPINTOMO_GOLDEN_DIR "/pipeline";
    const std::string fixture = SPINTOMO_FIXTURE_DIR "/two_qubit_state.json";
    const auto work = std::filesystem::temp_directory_path() / ("spintomo_acceptance_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(work);
    auto at = [&](const char* name) { return (work / name).string(); };
    const std::vector<std::pair<std::string, std::vector<std::string>>> stages = {
        {"inject", {"inject", fixture, "--site", "0", "--axis", "y"}},
        {"tomogram", {"tomo-simulate", at("inject.json"), "--seed", "0"}},
        {"coeffs", {"tomo-invert", at("tomogram.json")}},
        {"detect", {"detect", fixture, at("coeffs.json")}},
        {"correct", {"correct", at("coeffs.json"), at("detect.json"), "--reference", fixture}},
    };
    int matched = 0;
    std::string first_mismatch;
    for (auto [name, args] : stages) {
        args.push_back("--output");
        args.push_back(at((name + ".json").c_str()));
        const auto outcome = cli::run(args);
        const bool same = outcome.exit_code == 0 &&
                          slurp(work / (name + ".json")) == slurp(golden / (name + ".json")) &&
                          !slurp(golden / (name + ".json")).empty();
        if (same) ++matched;
        else if (first_mismatch.empty()) first_mismatch = name;
    }
    std::filesystem::remove_all(work);
    return {matched == static_cast<int>(stages.size()),
            fmt("%d/%zu stages byte-identical to golden files%s%s", matched, stages.size(),
                first_mismatch.empty() ? "" : "; first mismatch: ", first_mismatch.c_str())};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
        {"tensor basis orthonormality and adjoint rule", tensor_basis_identities},
        {"decompose/reconstruct round trip", round_trip},
        {"rotation covariance of coefficients", rotation_covariance},
        {"Kronecker product and coupling consistency", kron_coupling},
        {"noiseless tomographic inversion", tomographic_inversion},
        {"Pauli error detection and correction", error_detection},
        {"conserved quantities and H2 spectrum", conserved_quantities},
        {"moment truncation deficit", moment_truncation},
        {"multipole series against direct summation", multipole_series},
        {"CLI pipeline determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += v.pass ? 0 : 1;
        std::printf("%s  criterion %2zu  %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed;
}
