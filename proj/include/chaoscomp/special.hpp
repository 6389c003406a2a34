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

#pragma once

namespace chaoscomp::analysis {

/// Regularized lower incomplete gamma P(a, x). Requires a > 0, x >= 0.
double igam(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), evaluated
/// directly by continued fraction for x >= a + 1 so small tails keep their
/// relative accuracy. Requires a > 0, x >= 0.
double igamc(double a, double x);

}  // namespace chaoscomp::analysis
