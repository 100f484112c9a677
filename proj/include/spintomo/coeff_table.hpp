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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spintomo/angular.hpp"

namespace spintomo {

/// Which operator basis a coefficient table is expressed in.
///
/// Index layouts (all integers):
///   single   {L, M}                          one spin
///   product  {L1, M1, L2, M2, ..., Ln, Mn}   T_{L1 M1} (x) ... (x) T_{Ln Mn}
///   coupled  {L1, ..., Ln, K2, ..., Kn, M}   left-to-right pairwise coupling;
///            K2 couples L1 with L2, K3 couples K2 with L3, ..., Kn is the
///            total rank and M its projection. For n = 1 this is {L1, M}.
enum class BasisKind { single, product, coupled };

std::string_view to_string(BasisKind kind);
BasisKind basis_kind_from_string(std::string_view text);

/// Sparse table of complex expansion coefficients over a tensor basis.
/// Absent entries are zero.
class CoeffTable {
   public:
    using Key = std::vector<int>;

    CoeffTable(BasisKind kind, std::vector<SpinValue> system);

    BasisKind kind() const { return kind_; }
    const std::vector<SpinValue>& system() const { return system_; }
    const std::map<Key, cdouble>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    cdouble get(const Key& key) const;
    void set(const Key& key, cdouble value);
    void add(const Key& key, cdouble value);

    /// Throws std::invalid_argument if `key` is not a valid index for this
    /// table's basis and system.
    void check_key(const Key& key) const;

    /// Total rank of an entry (L for single, Kn for coupled). Product-basis
    /// entries have no single rank; asking for one throws.
    int total_rank(const Key& key) const;

    /// Total projection of an entry.
    int projection(const Key& key) const;

    /// Entries whose total rank is at most `max_rank`.
    CoeffTable restricted_to_rank(int max_rank) const;

    /// Drop entries with modulus at or below `tol`.
    void prune(double tol);

   private:
    BasisKind kind_;
    std::vector<SpinValue> system_;
    std::map<Key, cdouble> entries_;
};

/// Euclidean distance over the union of entries. Tables must share basis and system.
double distance(const CoeffTable& a, const CoeffTable& b);

/// a - b over the union of entries.
CoeffTable difference(const CoeffTable& a, const CoeffTable& b);

/// a + b over the union of entries.
CoeffTable sum(const CoeffTable& a, const CoeffTable& b);

/// Largest |a - b| over the union of entries.
double max_abs_difference(const CoeffTable& a, const CoeffTable& b);

/// Dimension of the product space of `system`.
int system_dimension(std::span<const SpinValue> system);

}  // namespace spintomo
