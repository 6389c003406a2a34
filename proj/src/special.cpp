/**
 * Copyright 2026 The chaoscomp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chaoscomp/special.hpp"

#include <cmath>
#include <limits>

#include "chaoscomp/errors.hpp"

namespace chaoscomp::analysis {
namespace {

constexpr int max_iterations = 1000000;
constexpr double eps = 1e-16;

void check_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a)) {
        throw Error(Errc::contract_violation, "incomplete gamma needs a > 0 and x >= 0");
    }
}

// x^a e^-x / Gamma(a), in log space.
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// P(a, x) by its power series; converges quickly for x < a + 1.
double series_p(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < max_iterations; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * eps) break;
    }
    return sum * std::exp(log_prefactor(a, x));
}

// Q(a, x) by modified Lentz evaluation of the Legendre continued fraction.
double continued_fraction_q(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < eps) break;
    }
    return std::exp(log_prefactor(a, x)) * h;
}

}  // namespace

double igam(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return series_p(a, x);
    return 1.0 - continued_fraction_q(a, x);
}

double igamc(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - series_p(a, x);
    return continued_fraction_q(a, x);
}

}  // namespace chaoscomp::analysis
