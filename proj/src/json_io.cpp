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

#include "spintomo/json_io.hpp"

#include <string>

#include "spintomo/errors.hpp"

namespace spintomo::json_io {

namespace {

const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) {
        throw FormatError(std::string("expected an object containing '") + key + "'");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw FormatError(std::string("missing field '") + key + "'");
    }
    return *it;
}

template <typename T>
T value_of(const Json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("field '") + what + "' has the wrong type: " + e.what());
    }
}

template <typename T>
T field(const Json& j, const char* key) {
    return value_of<T>(member(j, key), key);
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = member(j, key);
    if (!a.is_array()) {
        throw FormatError(std::string("field '") + key + "' must be an array");
    }
    return a;
}

}  // namespace

Json to_json(cdouble z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json system_to_json(const std::vector<SpinValue>& system) {
    Json out = Json::array();
    for (const auto s : system) {
        out.push_back(s.twice());
    }
    return out;
}

cdouble complex_from_json(const Json& j) {
    if (j.is_number()) {
        return {value_of<double>(j, "value"), 0.0};
    }
    return {field<double>(j, "re"), field<double>(j, "im")};
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw FormatError("matrix must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    CMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw FormatError("matrix must be square");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

std::vector<SpinValue> system_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw FormatError("system must be a non-empty array of 2j integers");
    }
    std::vector<SpinValue> out;
    for (const auto& v : j) {
        const int twice = value_of<int>(v, "system");
        if (twice < 0) {
            throw FormatError("system entries must be non-negative");
        }
        out.push_back(SpinValue::from_twice(twice));
    }
    return out;
}

Json state_to_json(const CMatrix& matrix, const std::vector<SpinValue>& system) {
    return Json{{"system", system_to_json(system)}, {"matrix", to_json(matrix)}};
}

Json state_to_json(const DensityMatrix& rho) {
    return state_to_json(rho.matrix(), rho.system());
}

DensityMatrix state_from_json(const Json& j, double tol) {
    auto system = system_from_json(member(j, "system"));
    CMatrix m = matrix_from_json(member(j, "matrix"));
    if (m.rows() != system_dimension(system)) {
        throw FormatError("matrix dimension " + std::to_string(m.rows()) + " does not match the spin system (" +
                          std::to_string(system_dimension(system)) + ")");
    }
    return DensityMatrix(std::move(m), std::move(system), tol);
}

Json coeffs_to_json(const CoeffTable& table) {
    Json entries = Json::array();
    for (const auto& [key, value] : table.entries()) {
        entries.push_back(Json{{"index", key}, {"re", value.real()}, {"im", value.imag()}});
    }
    return Json{{"basis", std::string(to_string(table.kind()))},
                {"system", system_to_json(table.system())},
                {"entries", std::move(entries)}};
}

CoeffTable coeffs_from_json(const Json& j) {
    BasisKind kind;
    try {
        kind = basis_kind_from_string(field<std::string>(j, "basis"));
    } catch (const FormatError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    CoeffTable table(kind, system_from_json(member(j, "system")));
    for (const auto& entry : array_field(j, "entries")) {
        const auto key = field<std::vector<int>>(entry, "index");
        try {
            table.set(key, {field<double>(entry, "re"), field<double>(entry, "im")});
        } catch (const FormatError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    return table;
}

Json basis_to_json(const TensorBasis& basis) {
    Json elements = Json::array();
    for (const auto& el : basis.elements) {
        elements.push_back(Json{{"L", el.index.rank}, {"M", el.index.projection}, {"matrix", to_json(el.matrix)}});
    }
    return Json{{"spin_twice", basis.spin.twice()}, {"elements", std::move(elements)}};
}

Json tomogram_to_json(const Tomogram& t) {
    Json grid = Json::array();
    for (const auto& p : t.grid) {
        grid.push_back(Json{{"alpha", p.angles.alpha},
                            {"beta", p.angles.beta},
                            {"gamma", p.angles.gamma},
                            {"weight", p.weight}});
    }
    Json records = Json::array();
    for (const auto& r : t.records) {
        Json rec{{"point_index", r.point_index}};
        if (!r.block.empty()) {
            rec["block"] = r.block;
        }
        rec["L"] = r.rank;
        rec["value"] = r.value;
        records.push_back(std::move(rec));
    }
    return Json{{"system", system_to_json(t.system)},
                {"seed", t.seed},
                {"noise_sigma", t.noise_sigma},
                {"grid", std::move(grid)},
                {"records", std::move(records)}};
}

Tomogram tomogram_from_json(const Json& j) {
    Tomogram t;
    t.system = system_from_json(member(j, "system"));
    t.seed = field<std::uint64_t>(j, "seed");
    t.noise_sigma = field<double>(j, "noise_sigma");
    for (const auto& p : array_field(j, "grid")) {
        t.grid.push_back({EulerAngles{field<double>(p, "alpha"), field<double>(p, "beta"), field<double>(p, "gamma")},
                          field<double>(p, "weight")});
    }
    const std::size_t block_size = t.system.size() == 1 ? 0 : 2 * t.system.size() - 2;
    for (const auto& r : array_field(j, "records")) {
        MomentRecord rec;
        rec.point_index = field<std::size_t>(r, "point_index");
        if (r.contains("block")) {
            rec.block = field<std::vector<int>>(r, "block");
        }
        if (rec.block.size() != block_size) {
            throw FormatError("record block has " + std::to_string(rec.block.size()) + " entries, expected " +
                              std::to_string(block_size));
        }
        rec.rank = field<int>(r, "L");
        rec.value = field<double>(r, "value");
        if (rec.rank < 0) {
            throw FormatError("record rank must be non-negative");
        }
        t.records.push_back(std::move(rec));
    }
    return t;
}

Json error_product_to_json(const ErrorProduct& e) {
    auto one = [](const PauliError& p) {
        return Json{{"site", p.site}, {"axis", std::string(1, axis_letter(p.axis))}};
    };
    if (e.empty()) {
        return "none";
    }
    if (e.size() == 1) {
        return one(e.front());
    }
    Json out = Json::array();
    for (const auto& p : e) {
        out.push_back(one(p));
    }
    return out;
}

ErrorProduct error_product_from_json(const Json& j) {
    auto one = [](const Json& p) {
        try {
            return PauliError{field<int>(p, "site"), axis_from_string(field<std::string>(p, "axis"))};
        } catch (const FormatError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    };
    if (j.is_string()) {
        if (j.get<std::string>() != "none") {
            throw FormatError("error must be \"none\", an object or an array");
        }
        return {};
    }
    if (j.is_object()) {
        if (j.contains("detected")) {
            return error_product_from_json(j["detected"]);
        }
        return {one(j)};
    }
    if (j.is_array()) {
        ErrorProduct out;
        for (const auto& p : j) {
            out.push_back(one(p));
        }
        return out;
    }
    throw FormatError("error must be \"none\", an object or an array");
}

Json detection_to_json(const DetectionResult& r) {
    Json out{{"detected", error_product_to_json(r.detected)},
             {"residual", r.residual},
             {"ambiguous", r.ambiguous}};
    if (r.runner_up) {
        out["runner_up"] = error_product_to_json(*r.runner_up);
        out["runner_up_residual"] = r.runner_up_residual;
    } else {
        out["runner_up"] = nullptr;
    }
    return out;
}

SpinSystemSpec spin_spec_from_json(const Json& j) {
    SpinSystemSpec spec;
    spec.n = field<int>(j, "n");
    spec.mu_b0 = field<double>(j, "mu_b0");
    if (j.contains("model")) {
        const auto model = field<std::string>(j, "model");
        if (model == "xy") {
            spec.model = CouplingModel::xy;
        } else if (model == "heisenberg") {
            spec.model = CouplingModel::heisenberg;
        } else {
            throw FormatError("model must be \"xy\" or \"heisenberg\"");
        }
    }
    if (j.contains("couplings")) {
        for (const auto& c : array_field(j, "couplings")) {
            try {
                spec.set_coupling(field<int>(c, "i"), field<int>(c, "j"), field<double>(c, "J"));
            } catch (const FormatError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw FormatError(e.what());
            }
        }
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return spec;
}

Json spectrum_to_json(const SpinSystemSpec& spec, const SpectrumReport& report) {
    Json couplings = Json::array();
    for (const auto& [key, value] : spec.couplings) {
        couplings.push_back(Json{{"i", key.first}, {"j", key.second}, {"J", value}});
    }
    return Json{{"n", spec.n},
                {"mu_b0", spec.mu_b0},
                {"model", spec.model == CouplingModel::xy ? "xy" : "heisenberg"},
                {"couplings", std::move(couplings)},
                {"eigenvalues", report.eigenvalues},
                {"degeneracies", report.degeneracies},
                {"sz_expectations", report.sz_expectations}};
}

std::vector<PointSource> sources_from_json(const Json& j) {
    std::vector<PointSource> out;
    for (const auto& s : array_field(j, "sources")) {
        PointSource p{field<double>(s, "e"), field<double>(s, "r"), field<double>(s, "theta"),
                      field<double>(s, "phi")};
        if (p.r < 0.0) {
            throw FormatError("source radius must be non-negative");
        }
        out.push_back(p);
    }
    return out;
}

Json series_to_json(const SeriesResult& r) {
    Json terms = Json::array();
    for (std::size_t l = 0; l < r.terms.size(); ++l) {
        terms.push_back(Json{{"l", l}, {"value", r.terms[l]}});
    }
    return Json{{"kind", std::string(to_string(r.kind))},
                {"terms", std::move(terms)},
                {"total", r.value},
                {"direct_sum", r.direct_sum},
                {"rel_error", r.rel_error},
                {"converged", r.converged},
                {"inside_sources", r.inside_sources}};
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace spintomo::json_io
