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

#include "spintomo/tensor.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spintomo {

namespace {

void require_index(SpinValue spin, TensorIndex idx) {
    if (idx.rank < 0 || idx.rank > spin.twice()) {
        throw std::invalid_argument("tensor rank " + std::to_string(idx.rank) + " outside [0, 2S] for S = " +
                                    spin.str());
    }
    if (std::abs(idx.projection) > idx.rank) {
        throw std::invalid_argument("tensor projection exceeds rank");
    }
}

}  // namespace

const CMatrix& TensorBasis::at(TensorIndex idx) const {
    require_index(spin, idx);
    return elements.at(position(idx)).matrix;
}

CMatrix polarization_tensor(SpinValue spin, TensorIndex idx) {
    require_index(spin, idx);
    const auto ms = projections(spin);
    const SpinValue rank = SpinValue::integer(idx.rank);
    const Projection proj = Projection::integer(idx.projection);
    const double norm = std::sqrt((2.0 * idx.rank + 1.0) / spin.dim());

    CMatrix out = CMatrix::Zero(spin.dim(), spin.dim());
    for (std::size_t col = 0; col < ms.size(); ++col) {
        const Projection target{ms[col].twice + proj.twice};
        if (!is_valid_projection(spin, target)) {
            continue;
        }
        const auto row = projection_index(spin, target);
        out(row, static_cast<Eigen::Index>(col)) = norm * clebsch_gordan(spin, ms[col], rank, proj, spin, target);
    }
    return out;
}

TensorBasis tensor_basis(SpinValue spin) {
    TensorBasis basis{spin, {}};
    basis.elements.reserve(static_cast<std::size_t>(spin.dim() * spin.dim()));
    for (int L = 0; L <= spin.twice(); ++L) {
        for (int M = -L; M <= L; ++M) {
            basis.elements.push_back({TensorIndex{L, M}, polarization_tensor(spin, TensorIndex{L, M})});
        }
    }
    return basis;
}

std::shared_ptr<const TensorBasis> shared_tensor_basis(SpinValue spin) {
    static std::mutex mutex;
    static std::map<SpinValue, std::shared_ptr<const TensorBasis>> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(spin); it != cache.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const TensorBasis>(tensor_basis(spin));
    std::lock_guard lock(mutex);
    return cache.try_emplace(spin, std::move(built)).first->second;
}

std::vector<CMatrix> rotate_tensor_family(const TensorBasis& basis, int rank, const EulerAngles& angles) {
    require_index(basis.spin, TensorIndex{rank, 0});
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(2 * rank + 1));
    if (rank == 0) {
        out.push_back(basis.at(TensorIndex{0, 0}));
        return out;
    }
    const SpinValue L = SpinValue::integer(rank);
    for (int M = -rank; M <= rank; ++M) {
        CMatrix acc = CMatrix::Zero(basis.spin.dim(), basis.spin.dim());
        for (int Mp = -rank; Mp <= rank; ++Mp) {
            acc += wigner_D(L, Projection::integer(Mp), Projection::integer(M), angles) *
                   basis.at(TensorIndex{rank, Mp});
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<CMatrix> rotate_tensor_family_by_conjugation(const TensorBasis& basis, int rank,
                                                         const EulerAngles& angles) {
    require_index(basis.spin, TensorIndex{rank, 0});
    const CMatrix d = wigner_D_matrix(basis.spin, angles);
    std::vector<CMatrix> out;
    for (int M = -rank; M <= rank; ++M) {
        out.push_back(d * basis.at(TensorIndex{rank, M}) * d.adjoint());
    }
    return out;
}

CMatrix coupled_basis_transform(SpinValue s1, SpinValue s2) {
    const int dim = s1.dim() * s2.dim();
    CMatrix u = CMatrix::Zero(dim, dim);
    const auto ms1 = projections(s1);
    const auto ms2 = projections(s2);
    Eigen::Index row = 0;
    for (int t12 = s1.twice() + s2.twice(); t12 >= std::abs(s1.twice() - s2.twice()); t12 -= 2) {
        const SpinValue s12 = SpinValue::from_twice(t12);
        for (const auto m12 : projections(s12)) {
            Eigen::Index col = 0;
            for (const auto m1 : ms1) {
                for (const auto m2 : ms2) {
                    u(row, col) = clebsch_gordan(s1, m1, s2, m2, s12, m12);
                    ++col;
                }
            }
            ++row;
        }
    }
    return u;
}

CoeffTable couple_tensor_product(SpinValue s1, TensorIndex idx1, SpinValue s2, TensorIndex idx2) {
    require_index(s1, idx1);
    require_index(s2, idx2);
    CoeffTable out(BasisKind::coupled, {s1, s2});
    const int M = idx1.projection + idx2.projection;
    for (int K = std::abs(idx1.rank - idx2.rank); K <= idx1.rank + idx2.rank; ++K) {
        if (std::abs(M) > K) {
            continue;
        }
        const double c = clebsch_gordan(SpinValue::integer(idx1.rank), Projection::integer(idx1.projection),
                                        SpinValue::integer(idx2.rank), Projection::integer(idx2.projection),
                                        SpinValue::integer(K), Projection::integer(M));
        if (c != 0.0) {
            out.set({idx1.rank, idx2.rank, K, M}, c);
        }
    }
    return out;
}

namespace {

struct PartialChain {
    int rank;
    int projection;
    std::vector<int> intermediates;
    CoeffTable::Key product;
    double weight;
};

std::vector<CouplingWeight> build_coupling_weights(const std::vector<int>& ranks) {
    std::vector<PartialChain> chains;
    for (int M1 = -ranks[0]; M1 <= ranks[0]; ++M1) {
        chains.push_back({ranks[0], M1, {}, {ranks[0], M1}, 1.0});
    }
    for (std::size_t k = 1; k < ranks.size(); ++k) {
        const int Lk = ranks[k];
        std::vector<PartialChain> next;
        for (const auto& chain : chains) {
            for (int Mk = -Lk; Mk <= Lk; ++Mk) {
                const int M = chain.projection + Mk;
                for (int K = std::abs(chain.rank - Lk); K <= chain.rank + Lk; ++K) {
                    if (std::abs(M) > K) {
                        continue;
                    }
                    const double c = clebsch_gordan(SpinValue::integer(chain.rank),
                                                    Projection::integer(chain.projection), SpinValue::integer(Lk),
                                                    Projection::integer(Mk), SpinValue::integer(K),
                                                    Projection::integer(M));
                    if (c == 0.0) {
                        continue;
                    }
                    PartialChain extended{K, M, chain.intermediates, chain.product, chain.weight * c};
                    extended.intermediates.push_back(K);
                    extended.product.push_back(Lk);
                    extended.product.push_back(Mk);
                    next.push_back(std::move(extended));
                }
            }
        }
        chains = std::move(next);
    }

    std::vector<CouplingWeight> out;
    out.reserve(chains.size());
    for (auto& chain : chains) {
        CoeffTable::Key coupled(ranks.begin(), ranks.end());
        coupled.insert(coupled.end(), chain.intermediates.begin(), chain.intermediates.end());
        coupled.push_back(chain.projection);
        out.push_back({std::move(coupled), std::move(chain.product), chain.weight});
    }
    return out;
}

}  // namespace

const std::vector<CouplingWeight>& coupling_weights(const std::vector<int>& ranks) {
    if (ranks.empty()) {
        throw std::invalid_argument("coupling_weights: empty rank list");
    }
    static std::mutex mutex;
    static std::map<std::vector<int>, std::vector<CouplingWeight>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(ranks);
    if (it == cache.end()) {
        it = cache.emplace(ranks, build_coupling_weights(ranks)).first;
    }
    return it->second;
}

CMatrix coupled_operator(const std::vector<SpinValue>& system, const CoeffTable::Key& key) {
    CoeffTable probe(BasisKind::coupled, system);
    probe.check_key(key);
    const std::vector<int> ranks(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(system.size()));
    const int dim = system_dimension(system);
    CMatrix out = CMatrix::Zero(dim, dim);
    for (const auto& w : coupling_weights(ranks)) {
        if (w.coupled != key) {
            continue;
        }
        std::vector<CMatrix> factors;
        for (std::size_t i = 0; i < system.size(); ++i) {
            factors.push_back(shared_tensor_basis(system[i])->at(TensorIndex{w.product[2 * i], w.product[2 * i + 1]}));
        }
        out += w.weight * kron_all(factors);
    }
    return out;
}

int coupled_phase_parity(const CoeffTable::Key& key, std::size_t n_spins) {
    int parity = 0;
    int previous = key.at(0);
    for (std::size_t k = 1; k < n_spins; ++k) {
        const int coupled = key.at(n_spins + k - 1);
        parity += previous + key.at(k) - coupled;
        previous = coupled;
    }
    return parity;
}

}  // namespace spintomo
