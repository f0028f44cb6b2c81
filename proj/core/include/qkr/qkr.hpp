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

#include "qkr/bessel.hpp"
#include "qkr/config.hpp"
#include "qkr/dense.hpp"
#include "qkr/error.hpp"
#include "qkr/io.hpp"
#include "qkr/observables.hpp"
#include "qkr/propagator.hpp"
#include "qkr/resonance.hpp"
#include "qkr/scanner.hpp"
#include "qkr/wavefunction.hpp"
