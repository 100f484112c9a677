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

#include "spintomo/angular.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spintomo {

namespace {

constexpr int kMaxTwiceJ = 100;  // j <= 50
constexpr int kLogFactorialSize = 4 * kMaxTwiceJ;

const std::array<long double, kLogFactorialSize>& log_factorials() {
    static const auto table = [] {
        std::array<long double, kLogFactorialSize> t{};
        t[0] = 0.0L;
        for (int k = 1; k < kLogFactorialSize; ++k) {
            t[k] = t[k - 1] + std::log(static_cast<long double>(k));
        }
        return t;
    }();
    return table;
}

long double lf(int k) {
    return log_factorials().at(static_cast<std::size_t>(k));
}

long double pairwise_sum(const std::vector<long double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 4) {
        long double s = 0.0L;
        for (std::size_t i = lo; i < hi; ++i) {
            s += v[i];
        }
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

void require_pair(SpinValue j, Projection m, const char* what) {
    if (j.twice() > kMaxTwiceJ) {
        throw std::invalid_argument(std::string(what) + ": spin above 50 is not supported");
    }
    if (!is_valid_projection(j, m)) {
        throw std::invalid_argument(std::string(what) + ": projection " + std::to_string(m.twice) +
                                    "/2 is invalid for spin " + j.str());
    }
}

}  // namespace

SpinValue SpinValue::from_twice(int twice_j) {
    if (twice_j < 0) {
        throw std::invalid_argument("spin must be non-negative");
    }
    SpinValue s;
    s.twice_ = twice_j;
    return s;
}

SpinValue SpinValue::parse(std::string_view text) {
    auto parse_int = [&](std::string_view part) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) {
            throw std::invalid_argument("cannot parse spin '" + std::string(text) + "'");
        }
        return v;
    };
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        if (parse_int(text.substr(slash + 1)) != 2) {
            throw std::invalid_argument("spin '" + std::string(text) + "' is not a multiple of 1/2");
        }
        return from_twice(parse_int(text.substr(0, slash)));
    }
    if (text.find('.') != std::string_view::npos) {
        const double v = std::stod(std::string(text));
        const double twice = 2.0 * v;
        if (std::abs(twice - std::round(twice)) > 1e-12) {
            throw std::invalid_argument("spin '" + std::string(text) + "' is not a multiple of 1/2");
        }
        return from_twice(static_cast<int>(std::lround(twice)));
    }
    return integer(parse_int(text));
}

std::string SpinValue::str() const {
    return is_integer() ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2";
}

bool is_valid_projection(SpinValue j, Projection m) {
    return std::abs(m.twice) <= j.twice() && (j.twice() - m.twice) % 2 == 0;
}

std::vector<Projection> projections(SpinValue j) {
    std::vector<Projection> out;
    out.reserve(static_cast<std::size_t>(j.dim()));
    for (int tm = j.twice(); tm >= -j.twice(); tm -= 2) {
        out.push_back(Projection{tm});
    }
    return out;
}

int projection_index(SpinValue j, Projection m) {
    if (!is_valid_projection(j, m)) {
        throw std::invalid_argument("projection_index: invalid projection");
    }
    return (j.twice() - m.twice) / 2;
}

EulerAngles inverse(const EulerAngles& angles) {
    return EulerAngles{-angles.gamma, -angles.beta, -angles.alpha};
}

double clebsch_gordan(SpinValue j1, Projection m1, SpinValue j2, Projection m2, SpinValue J, Projection M) {
    require_pair(j1, m1, "clebsch_gordan");
    require_pair(j2, m2, "clebsch_gordan");
    require_pair(J, M, "clebsch_gordan");

    const int tj1 = j1.twice(), tj2 = j2.twice(), tJ = J.twice();
    if (m1.twice + m2.twice != M.twice) {
        return 0.0;
    }
    if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2 != 0) {
        return 0.0;
    }

    const int a = (tj1 + tj2 - tJ) / 2;  // j1 + j2 - J
    const int b = (tj1 - tj2 + tJ) / 2;  // J + j1 - j2
    const int c = (-tj1 + tj2 + tJ) / 2; // J - j1 + j2
    const int d = (tj1 + tj2 + tJ) / 2 + 1;
    const int j1_minus_m1 = (tj1 - m1.twice) / 2;
    const int j2_plus_m2 = (tj2 + m2.twice) / 2;
    const int shift1 = (tJ - tj2 + m1.twice) / 2;  // J - j2 + m1
    const int shift2 = (tJ - tj1 - m2.twice) / 2;  // J - j1 - m2

    const long double log_pre =
        0.5L * (std::log(static_cast<long double>(tJ + 1)) + lf(a) + lf(b) + lf(c) - lf(d) +
                lf((tJ + M.twice) / 2) + lf((tJ - M.twice) / 2) + lf(j1_minus_m1) +
                lf((tj1 + m1.twice) / 2) + lf((tj2 - m2.twice) / 2) + lf(j2_plus_m2));

    const int k_min = std::max({0, -shift1, -shift2});
    const int k_max = std::min({a, j1_minus_m1, j2_plus_m2});
    std::vector<long double> terms;
    for (int k = k_min; k <= k_max; ++k) {
        const long double log_den =
            lf(k) + lf(a - k) + lf(j1_minus_m1 - k) + lf(j2_plus_m2 - k) + lf(shift1 + k) + lf(shift2 + k);
        const long double mag = std::exp(log_pre - log_den);
        terms.push_back(k % 2 == 0 ? mag : -mag);
    }
    return static_cast<double>(pairwise_sum(terms, 0, terms.size()));
}

double wigner_small_d(SpinValue j, Projection m_to, Projection m_from, double beta) {
    require_pair(j, m_to, "wigner_small_d");
    require_pair(j, m_from, "wigner_small_d");

    const int tj = j.twice();
    const int jpm_to = (tj + m_to.twice) / 2;
    const int jmm_to = (tj - m_to.twice) / 2;
    const int jpm_from = (tj + m_from.twice) / 2;
    const int jmm_from = (tj - m_from.twice) / 2;
    const int delta = (m_from.twice - m_to.twice) / 2;  // m - m'

    const long double log_pre = 0.5L * (lf(jpm_to) + lf(jmm_to) + lf(jpm_from) + lf(jmm_from));
    const long double c = std::cos(0.5L * static_cast<long double>(beta));
    const long double s = std::sin(0.5L * static_cast<long double>(beta));

    const int k_min = std::max(0, delta);
    const int k_max = std::min(jpm_from, jmm_to);
    std::vector<long double> terms;
    for (int k = k_min; k <= k_max; ++k) {
        const int cos_power = tj - 2 * k + delta;
        const int sin_power = 2 * k - delta;
        const long double log_den = lf(jpm_from - k) + lf(k) + lf(jmm_to - k) + lf(k - delta);
        long double term = std::exp(log_pre - log_den);
        if (cos_power > 0) {
            term *= std::pow(c, cos_power);
        }
        if (sin_power > 0) {
            term *= std::pow(s, sin_power);
        }
        // (-1)^(k - m + m') = (-1)^(k - delta)
        terms.push_back((k - delta) % 2 == 0 ? term : -term);
    }
    return static_cast<double>(pairwise_sum(terms, 0, terms.size()));
}

cdouble wigner_D(SpinValue j, Projection m_to, Projection m_from, const EulerAngles& angles) {
    const double d = wigner_small_d(j, m_to, m_from, angles.beta);
    const double phase = -(m_to.value() * angles.alpha + m_from.value() * angles.gamma);
    return std::polar(d, phase);
}

CMatrix wigner_D_matrix(SpinValue j, const EulerAngles& angles) {
    const auto ms = projections(j);
    CMatrix out(j.dim(), j.dim());
    for (std::size_t r = 0; r < ms.size(); ++r) {
        for (std::size_t c = 0; c < ms.size(); ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = wigner_D(j, ms[r], ms[c], angles);
        }
    }
    return out;
}

cdouble spherical_harmonic(SpinValue l, Projection m, double theta, double phi) {
    if (!l.is_integer()) {
        throw std::invalid_argument("spherical_harmonic: degree must be an integer");
    }
    if (!is_valid_projection(l, m)) {
        throw std::invalid_argument("spherical_harmonic: |m| > l");
    }
    return spherical_harmonic(l.as_int(), m.twice / 2, theta, phi);
}

cdouble spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || std::abs(m) > l) {
        throw std::invalid_argument("spherical_harmonic: need l >= 0 and |m| <= l");
    }
    const int am = std::abs(m);
    const double x = std::cos(theta);
    const double sx = std::sin(theta);

    // Fully normalized associated Legendre recursion, Condon-Shortley phase.
    double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
    for (int k = 1; k <= am; ++k) {
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sx;
    }
    double value = pmm;
    if (l > am) {
        double prev = pmm;
        double cur = x * std::sqrt(2.0 * am + 3.0) * pmm;
        for (int ll = am + 2; ll <= l; ++ll) {
            const double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - am * am));
            const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - am * am) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
            const double next = a * (x * cur - b * prev);
            prev = cur;
            cur = next;
        }
        value = cur;
    }
    const cdouble positive = std::polar(value, am * phi);
    if (m >= 0) {
        return positive;
    }
    return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(positive);
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: need at least one node");
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return rule;
}

}  // namespace spintomo
