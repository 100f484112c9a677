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

// JSON encodings of the library's values. Complex numbers are {"re", "im"};
// spins are stored as 2j integers. Object keys are emitted in a fixed order.
// Decoders throw FormatError on schema violations.

#include <json.hpp>

#include "spintomo/density.hpp"
#include "spintomo/hamiltonian.hpp"
#include "spintomo/multipole.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo::json_io {

using Json = nlohmann::ordered_json;

Json to_json(cdouble z);
Json to_json(const CMatrix& m);
Json system_to_json(const std::vector<SpinValue>& system);

cdouble complex_from_json(const Json& j);
CMatrix matrix_from_json(const Json& j);
std::vector<SpinValue> system_from_json(const Json& j);

/// {"system": [...], "matrix": [[{re, im}, ...], ...]}
Json state_to_json(const CMatrix& matrix, const std::vector<SpinValue>& system);
Json state_to_json(const DensityMatrix& rho);
/// Validates the state; throws InvalidState when it is not a density matrix.
DensityMatrix state_from_json(const Json& j, double tol = kValidityTolerance);

/// {"basis": "single|product|coupled", "system": [...], "entries": [{"index", "re", "im"}]}
Json coeffs_to_json(const CoeffTable& table);
CoeffTable coeffs_from_json(const Json& j);

/// {"spin_twice": 2S, "elements": [{"L", "M", "matrix"}]}
Json basis_to_json(const TensorBasis& basis);

/// {"system", "seed", "noise_sigma", "grid": [{alpha, beta, gamma, weight}],
///  "records": [{point_index, [block], L, value}]}
Json tomogram_to_json(const Tomogram& t);
Tomogram tomogram_from_json(const Json& j);

/// {"detected": {"site", "axis"} | "none" | [...], "residual", "ambiguous", "runner_up", "runner_up_residual"}
Json detection_to_json(const DetectionResult& r);
Json error_product_to_json(const ErrorProduct& e);
ErrorProduct error_product_from_json(const Json& j);

/// {"n", "mu_b0", "couplings": [{"i", "j", "J"}], "model": "xy|heisenberg"}
SpinSystemSpec spin_spec_from_json(const Json& j);
Json spectrum_to_json(const SpinSystemSpec& spec, const SpectrumReport& report);

/// {"sources": [{"e", "r", "theta", "phi"}]}
std::vector<PointSource> sources_from_json(const Json& j);
Json series_to_json(const SeriesResult& r);

/// Parses text, mapping syntax errors to FormatError.
Json parse(const std::string& text);

}  // namespace spintomo::json_io
