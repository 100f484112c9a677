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

// Test-only exact Racah-formula oracle for Clebsch-Gordan coefficients.
// The squared coefficient is a rational number; it is accumulated with
// arbitrary-precision integers and only the final square root is inexact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>

namespace spintomo::oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int factorial(int n) {
    cpp_int f = 1;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

/// Signed square: sign(C) * C^2 as an exact rational. Arguments are 2j / 2m.
inline cpp_rational clebsch_gordan_signed_square(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    if (tm1 + tm2 != tM) return 0;
    if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2 != 0) return 0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0;

    const int a = (tj1 + tj2 - tJ) / 2;
    const int b = (tj1 - tj2 + tJ) / 2;
    const int c = (-tj1 + tj2 + tJ) / 2;
    const int d = (tj1 + tj2 + tJ) / 2 + 1;
    cpp_rational pre = cpp_rational(cpp_int(tJ + 1) * factorial(a) * factorial(b) * factorial(c), factorial(d));
    pre *= factorial((tJ + tM) / 2) * factorial((tJ - tM) / 2) * factorial((tj1 - tm1) / 2) *
           factorial((tj1 + tm1) / 2) * factorial((tj2 - tm2) / 2) * factorial((tj2 + tm2) / 2);

    cpp_rational s = 0;
    for (int k = 0; k <= a; ++k) {
        const int f1 = (tj1 - tm1) / 2 - k;
        const int f2 = (tj2 + tm2) / 2 - k;
        const int f3 = (tJ - tj2 + tm1) / 2 + k;
        const int f4 = (tJ - tj1 - tm2) / 2 + k;
        if (f1 < 0 || f2 < 0 || f3 < 0 || f4 < 0) continue;
        cpp_rational term(1, factorial(k) * factorial(a - k) * factorial(f1) * factorial(f2) * factorial(f3) *
                                 factorial(f4));
        s += (k % 2 == 0) ? term : cpp_rational(-term);
    }
    const cpp_rational squared = pre * s * s;
    return s < 0 ? cpp_rational(-squared) : squared;
}

inline long double clebsch_gordan_exact(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    const cpp_rational ss = clebsch_gordan_signed_square(tj1, tm1, tj2, tm2, tJ, tM);
    const long double mag = std::sqrt(std::abs(ss.convert_to<long double>()));
    return ss < 0 ? -mag : mag;
}

}  // namespace spintomo::oracle
