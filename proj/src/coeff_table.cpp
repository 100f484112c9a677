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

#include "spintomo/coeff_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace spintomo {

std::string_view to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::single:
            return "single";
        case BasisKind::product:
            return "product";
        case BasisKind::coupled:
            return "coupled";
    }
    return "unknown";
}

BasisKind basis_kind_from_string(std::string_view text) {
    if (text == "single") return BasisKind::single;
    if (text == "product") return BasisKind::product;
    if (text == "coupled") return BasisKind::coupled;
    throw std::invalid_argument("unknown basis kind '" + std::string(text) + "'");
}

CoeffTable::CoeffTable(BasisKind kind, std::vector<SpinValue> system) : kind_(kind), system_(std::move(system)) {
    if (system_.empty()) {
        throw std::invalid_argument("CoeffTable: empty spin system");
    }
    if (kind_ == BasisKind::single && system_.size() != 1) {
        throw std::invalid_argument("CoeffTable: single basis needs exactly one spin");
    }
}

void CoeffTable::check_key(const Key& key) const {
    const auto n = system_.size();
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("CoeffTable: invalid " + std::string(to_string(kind_)) + " index: " + why);
    };
    auto check_rank = [&](int rank, SpinValue s) {
        if (rank < 0 || rank > s.twice()) {
            fail("rank " + std::to_string(rank) + " outside [0, " + std::to_string(s.twice()) + "]");
        }
    };
    switch (kind_) {
        case BasisKind::single:
        case BasisKind::product: {
            if (key.size() != 2 * n) {
                fail("expected " + std::to_string(2 * n) + " integers");
            }
            for (std::size_t i = 0; i < n; ++i) {
                check_rank(key[2 * i], system_[i]);
                if (std::abs(key[2 * i + 1]) > key[2 * i]) {
                    fail("|M| exceeds L");
                }
            }
            return;
        }
        case BasisKind::coupled: {
            const std::size_t expected = n == 1 ? 2 : 2 * n;
            if (key.size() != expected) {
                fail("expected " + std::to_string(expected) + " integers");
            }
            for (std::size_t i = 0; i < n; ++i) {
                check_rank(key[i], system_[i]);
            }
            int previous = key[0];
            for (std::size_t i = 1; i < n; ++i) {
                const int coupled = key[n + i - 1];
                if (coupled < std::abs(previous - key[i]) || coupled > previous + key[i]) {
                    fail("coupled rank violates the triangle rule");
                }
                previous = coupled;
            }
            if (std::abs(key.back()) > previous) {
                fail("|M| exceeds total rank");
            }
            return;
        }
    }
}

cdouble CoeffTable::get(const Key& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? cdouble{} : it->second;
}

void CoeffTable::set(const Key& key, cdouble value) {
    check_key(key);
    entries_[key] = value;
}

void CoeffTable::add(const Key& key, cdouble value) {
    check_key(key);
    entries_[key] += value;
}

int CoeffTable::total_rank(const Key& key) const {
    switch (kind_) {
        case BasisKind::single:
            return key.at(0);
        case BasisKind::coupled:
            return key.size() == 2 ? key[0] : key.at(key.size() - 2);
        case BasisKind::product:
            break;
    }
    throw std::invalid_argument("CoeffTable: product-basis entries have no total rank; couple them first");
}

int CoeffTable::projection(const Key& key) const {
    if (kind_ == BasisKind::product) {
        int m = 0;
        for (std::size_t i = 1; i < key.size(); i += 2) {
            m += key[i];
        }
        return m;
    }
    return key.back();
}

CoeffTable CoeffTable::restricted_to_rank(int max_rank) const {
    CoeffTable out(kind_, system_);
    for (const auto& [key, value] : entries_) {
        if (total_rank(key) <= max_rank) {
            out.entries_.emplace(key, value);
        }
    }
    return out;
}

void CoeffTable::prune(double tol) {
    std::erase_if(entries_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

namespace {

void require_compatible(const CoeffTable& a, const CoeffTable& b) {
    if (a.kind() != b.kind() || a.system() != b.system()) {
        throw std::invalid_argument("coefficient tables use different bases or spin systems");
    }
}

}  // namespace

CoeffTable difference(const CoeffTable& a, const CoeffTable& b) {
    require_compatible(a, b);
    CoeffTable out = a;
    for (const auto& [key, value] : b.entries()) {
        out.add(key, -value);
    }
    return out;
}

CoeffTable sum(const CoeffTable& a, const CoeffTable& b) {
    require_compatible(a, b);
    CoeffTable out = a;
    for (const auto& [key, value] : b.entries()) {
        out.add(key, value);
    }
    return out;
}

double distance(const CoeffTable& a, const CoeffTable& b) {
    const CoeffTable diff = difference(a, b);
    double total = 0.0;
    for (const auto& [key, value] : diff.entries()) {
        total += std::norm(value);
    }
    return std::sqrt(total);
}

double max_abs_difference(const CoeffTable& a, const CoeffTable& b) {
    const CoeffTable diff = difference(a, b);
    double worst = 0.0;
    for (const auto& [key, value] : diff.entries()) {
        worst = std::max(worst, std::abs(value));
    }
    return worst;
}

int system_dimension(std::span<const SpinValue> system) {
    int dim = 1;
    for (const auto s : system) {
        dim *= s.dim();
    }
    return dim;
}

}  // namespace spintomo
