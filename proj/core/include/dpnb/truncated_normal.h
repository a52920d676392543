//
// Copyright 2026 The dpnb Authors
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
//

#ifndef DPNB_TRUNCATED_NORMAL_H_
#define DPNB_TRUNCATED_NORMAL_H_

namespace dpnb {

// log N(x; mu, sigma^2).
double NormalLogPdf(double x, double mu, double sigma);

// log of the standard normal upper tail, log(1 - Phi(z)), accurate for
// large z where the tail underflows.
double LogNormalTail(double z);

// Log density of N(mu, sigma^2) restricted to [a, b]:
//   log phi((x - mu)/sigma) - log sigma - log(Phi(beta) - Phi(alpha))
// with alpha = (a - mu)/sigma and beta = (b - mu)/sigma. The normalizer is
// evaluated in the tail where it is not close to 1, so means far outside
// [a, b] stay finite. Requires a < b, sigma > 0; x outside [a, b] gives
// -infinity.
double TruncatedNormalLogPdf(double x, double mu, double sigma, double a,
                             double b);

}  // namespace dpnb

#endif  // DPNB_TRUNCATED_NORMAL_H_
