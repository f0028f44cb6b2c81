/* Copyright 2026 The qkr Authors
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

#include <complex>
#include <span>

namespace qkr::detail {

/// In-place unnormalised DFT, out_k = sum_j in_j exp(-2 pi i j k / n).
void forward_dft(std::span<std::complex<double>> data);

/// In-place unnormalised DFT, out_j = sum_k in_k exp(+2 pi i j k / n).
void backward_dft(std::span<std::complex<double>> data);

} // namespace qkr::detail
