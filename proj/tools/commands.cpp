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

#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "spintomo/density.hpp"
#include "spintomo/errors.hpp"
#include "spintomo/hamiltonian.hpp"
#include "spintomo/json_io.hpp"
#include "spintomo/multipole.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo::cli {

namespace {

using json_io::Json;

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return json_io::parse(text.str());
}

Json error_object(const std::string& code, const std::string& message, const std::string& command) {
    return Json{{"code", code}, {"message", message}, {"context", Json{{"command", command}}}};
}

double to_radians(double value, bool degrees) { return degrees ? value * std::numbers::pi / 180.0 : value; }

// A coefficient file has "basis"; anything else is read as a state.
CoeffTable observed_coeffs(const Json& j, double tol) {
    if (j.contains("basis")) {
        return json_io::coeffs_from_json(j);
    }
    const DensityMatrix rho = json_io::state_from_json(j, tol);
    return decompose_irreducible(rho.matrix(), rho.system());
}

DensityMatrix observed_state(const Json& j, double tol) {
    if (j.contains("basis")) {
        const CoeffTable c = json_io::coeffs_from_json(j);
        return DensityMatrix(reconstruct(c), c.system(), tol);
    }
    return json_io::state_from_json(j, tol);
}

std::vector<SpinValue> parse_spins(const std::vector<std::string>& spins, int n) {
    if (!spins.empty()) {
        std::vector<SpinValue> out;
        for (const auto& s : spins) out.push_back(SpinValue::parse(s));
        return out;
    }
    if (n < 1) {
        throw std::invalid_argument("need --n >= 1 or --spins");
    }
    return std::vector<SpinValue>(static_cast<std::size_t>(n), spin_half());
}

struct Options {
    std::string output = "-";
    // shared inputs
    std::string state, reference, observed, coeffs, tomogram, spec, sources, error_file;
    std::vector<std::string> states;
    std::string spin = "1/2", basis, mode = "collective", axis = "x", kind = "electric";
    std::vector<std::string> spins;
    double alpha = 0.0, beta = 0.0, gamma = 0.0, theta = 0.0, phi = 0.0, r0 = 1.0, noise = 0.0;
    bool degrees = false;
    int site = 0, lmax = 8, n = 0, grid_beta = 0, grid_alpha = 0;
    std::optional<int> cap;
    std::uint64_t seed = 0;
};

}  // namespace

Environment environment_from_process() {
    Environment env;
    if (const char* raw = std::getenv(kToleranceVariable); raw != nullptr && *raw != '\0') {
        char* end = nullptr;
        const double v = std::strtod(raw, &end);
        if (end == raw || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument(std::string(kToleranceVariable) + " must be a positive number");
        }
        env.tolerance = v;
    }
    return env;
}

Outcome run(const std::vector<std::string>& args, const Environment& env) {
    Options o;
    CLI::App app{"Polarization-tensor tomography of spin systems", "spintomo"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-o,--output", o.output, "Output file, - for stdout")->capture_default_str();

    std::function<Json()> action;
    std::string command;
    auto sub = [&](const std::string& name, const std::string& help, std::function<Json()> body) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&, name, body] {
            command = name;
            action = body;
        });
        return s;
    };
    const double tol = env.tolerance;

    auto* basis = sub("basis", "Polarization tensor basis of one spin", [&] {
        return json_io::basis_to_json(*shared_tensor_basis(SpinValue::parse(o.spin)));
    });
    basis->add_option("--spin", o.spin, "Spin value such as 1/2 or 3/2")->capture_default_str();

    auto* decompose_cmd = sub("decompose", "Tensor coefficients of a state or operator", [&] {
        const Json j = read_json(o.state);
        const auto system = json_io::system_from_json(j.at("system"));
        const CMatrix m = json_io::matrix_from_json(j.at("matrix"));
        if (m.rows() != system_dimension(system)) {
            throw FormatError("matrix dimension does not match the spin system");
        }
        std::string kind = o.basis.empty() ? (system.size() == 1 ? "single" : "product") : o.basis;
        switch (basis_kind_from_string(kind)) {
            case BasisKind::single:
                if (system.size() != 1) throw std::invalid_argument("single basis needs a one-spin system");
                return json_io::coeffs_to_json(decompose(m, system[0]));
            case BasisKind::product:
                return json_io::coeffs_to_json(decompose_product(m, system));
            case BasisKind::coupled:
                return json_io::coeffs_to_json(decompose_coupled(m, system));
        }
        return Json{};
    });
    decompose_cmd->add_option("state", o.state, "State or matrix JSON")->required();
    decompose_cmd->add_option("--basis", o.basis, "single, product or coupled");

    auto* reconstruct_cmd = sub("reconstruct", "Matrix from tensor coefficients", [&] {
        const CoeffTable c = json_io::coeffs_from_json(read_json(o.coeffs));
        return json_io::state_to_json(reconstruct(c), c.system());
    });
    reconstruct_cmd->add_option("coeffs", o.coeffs, "Coefficient JSON")->required();

    auto* rotate = sub("rotate", "Rotate a state by Euler angles", [&] {
        const DensityMatrix rho = json_io::state_from_json(read_json(o.state), tol);
        const EulerAngles a{to_radians(o.alpha, o.degrees), to_radians(o.beta, o.degrees),
                            to_radians(o.gamma, o.degrees)};
        RotationMode mode;
        if (o.mode == "collective") mode = RotationMode::collective;
        else if (o.mode == "single_spin") mode = RotationMode::single_spin;
        else throw std::invalid_argument("unknown rotation mode '" + o.mode + "'");
        return json_io::state_to_json(rotate_density(rho, a, mode));
    });
    rotate->add_option("state", o.state, "State JSON")->required();
    rotate->add_option("--alpha", o.alpha);
    rotate->add_option("--beta", o.beta);
    rotate->add_option("--gamma", o.gamma);
    rotate->add_flag("--degrees", o.degrees, "Angles are in degrees");
    rotate->add_option("--mode", o.mode, "collective or single_spin")->capture_default_str();

    auto* kron_cmd = sub("kron", "Kronecker product of states", [&] {
        std::vector<DensityMatrix> parts;
        for (const auto& p : o.states) parts.push_back(json_io::state_from_json(read_json(p), tol));
        return json_io::state_to_json(kron_density(parts));
    });
    kron_cmd->add_option("states", o.states, "State JSON files, leftmost first")->required();

    auto* spectrum_cmd = sub("spectrum", "Spectrum of the spin Hamiltonian", [&] {
        const SpinSystemSpec s = json_io::spin_spec_from_json(read_json(o.spec));
        return json_io::spectrum_to_json(s, spectrum(s));
    });
    spectrum_cmd->add_option("spec", o.spec, "Spin system JSON")->required();

    auto* simulate = sub("tomo-simulate", "Simulate rotate-and-measure records", [&] {
        const DensityMatrix rho = json_io::state_from_json(read_json(o.state), tol);
        SimulationOptions opt;
        opt.grid = {o.grid_beta, o.grid_alpha};
        opt.noise_sigma = o.noise;
        opt.seed = o.seed;
        if (o.cap) opt.policy = AccessibilityPolicy{*o.cap};
        return json_io::tomogram_to_json(simulate_tomogram(rho, opt));
    });
    simulate->add_option("state", o.state, "State JSON")->required();
    simulate->add_option("--grid-beta", o.grid_beta, "Beta nodes, 0 for minimal")->check(CLI::NonNegativeNumber);
    simulate->add_option("--grid-alpha", o.grid_alpha, "Alpha nodes, 0 for minimal")->check(CLI::NonNegativeNumber);
    simulate->add_option("--noise", o.noise, "Gaussian noise width")->check(CLI::NonNegativeNumber);
    simulate->add_option("--seed", o.seed)->capture_default_str();
    simulate->add_option("--cap", o.cap, "Record ranks up to this cap only")->check(CLI::NonNegativeNumber);

    auto* invert = sub("tomo-invert", "Coefficients from a tomogram", [&] {
        return json_io::coeffs_to_json(invert_tomogram(json_io::tomogram_from_json(read_json(o.tomogram))));
    });
    invert->add_option("tomogram", o.tomogram, "Tomogram JSON")->required();

    auto* inject = sub("inject", "Apply a single-site Pauli error", [&] {
        const DensityMatrix rho = json_io::state_from_json(read_json(o.state), tol);
        const PauliError e{o.site, axis_from_string(o.axis)};
        return json_io::state_to_json(apply_pauli_density(rho, e));
    });
    inject->add_option("state", o.state, "State JSON")->required();
    inject->add_option("--site", o.site, "Zero-based site index")->capture_default_str();
    inject->add_option("--axis", o.axis, "x, y or z")->capture_default_str();

    auto* detect = sub("detect", "Identify a Pauli error from observed coefficients", [&] {
        const DensityMatrix ref = json_io::state_from_json(read_json(o.reference), tol);
        const AccessibilityPolicy policy{o.cap.value_or(AccessibilityPolicy{}.max_observable_rank)};
        const SignatureSet set = build_signatures(ref, default_candidates(ref.system()), policy);
        const CoeffTable observed = observed_coeffs(read_json(o.observed), tol);
        return json_io::detection_to_json(detect_error(observed.restricted_to_rank(policy.max_observable_rank), set));
    });
    detect->add_option("reference", o.reference, "Reference state JSON")->required();
    detect->add_option("observed", o.observed, "Observed coefficients or state JSON")->required();
    detect->add_option("--cap", o.cap, "Largest observable rank")->check(CLI::NonNegativeNumber);

    auto* correct = sub("correct", "Undo a detected error", [&] {
        const DensityMatrix observed = observed_state(read_json(o.observed), tol);
        const ErrorProduct errors = json_io::error_product_from_json(read_json(o.error_file));
        const DensityMatrix fixed = correct_error(observed, errors);
        Json out = json_io::state_to_json(fixed);
        out["applied"] = json_io::error_product_to_json(errors);
        if (!o.reference.empty()) {
            out["fidelity"] = fidelity(fixed, json_io::state_from_json(read_json(o.reference), tol), tol);
        }
        return out;
    });
    correct->add_option("observed", o.observed, "Observed coefficients or state JSON")->required();
    correct->add_option("error", o.error_file, "Error or detection report JSON")->required();
    correct->add_option("--reference", o.reference, "Reference state for a fidelity report");

    auto* multipole = sub("multipole", "Multipole series of point sources", [&] {
        const auto src = json_io::sources_from_json(read_json(o.sources));
        const ObservationPoint p{o.r0, to_radians(o.theta, o.degrees), to_radians(o.phi, o.degrees)};
        return json_io::series_to_json(potential_series(src, o.lmax, p, source_kind_from_string(o.kind)));
    });
    multipole->add_option("sources", o.sources, "Source JSON")->required();
    multipole->add_option("--lmax", o.lmax)->capture_default_str()->check(CLI::NonNegativeNumber);
    multipole->add_option("--r0", o.r0, "Observation radius")->capture_default_str();
    multipole->add_option("--theta", o.theta);
    multipole->add_option("--phi", o.phi);
    multipole->add_flag("--degrees", o.degrees, "Angles are in degrees");
    multipole->add_option("--kind", o.kind, "electric or magnetic")->capture_default_str();

    auto* access = sub("access", "Observable and unobservable ranks", [&] {
        const auto system = parse_spins(o.spins, o.n);
        const AccessibilityPolicy policy{o.cap.value_or(AccessibilityPolicy{}.max_observable_rank)};
        const RankPartition part = accessible_ranks(system, policy);
        return Json{{"system", json_io::system_to_json(system)},
                    {"cap", policy.max_observable_rank},
                    {"observable", part.observable},
                    {"unobservable", part.unobservable}};
    });
    access->add_option("--n", o.n, "Number of spin-1/2 sites");
    access->add_option("--spins", o.spins, "Explicit spin values");
    access->add_option("--cap", o.cap, "Largest observable rank")->check(CLI::NonNegativeNumber);

    Outcome result;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        if (code == 0) {
            result.out = out.str();
            return result;
        }
        result.exit_code = 2;
        result.err = error_object("usage", e.what(), command).dump() + "\n";
        return result;
    }

    auto fail = [&](int exit_code, const std::string& code, const std::string& message) {
        result.exit_code = exit_code;
        result.err = error_object(code, message, command).dump() + "\n";
        return result;
    };
    try {
        const std::string text = action().dump(2) + "\n";
        if (o.output == "-") {
            result.out = text;
        } else {
            std::ofstream file(o.output, std::ios::binary);
            if (!file || !(file << text)) {
                throw IoError("cannot write " + o.output);
            }
        }
        return result;
    } catch (const FormatError& e) {
        return fail(2, "parse", e.what());
    } catch (const InvalidState& e) {
        return fail(2, "invalid_state", e.what());
    } catch (const IoError& e) {
        return fail(2, "io", e.what());
    } catch (const NumericError& e) {
        return fail(3, "numeric", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, "invalid_argument", e.what());
    } catch (const std::exception& e) {
        return fail(3, "internal", e.what());
    }
}

}  // namespace spintomo::cli
