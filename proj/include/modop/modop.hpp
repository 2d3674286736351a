// SPDX-License-Identifier: Apache-2.0
//
// modop - numerical time-frequency operator calculus
// Copyright (C) 2026 The modop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

// Everything in the library except the lab harness.

#include "modop/error.hpp"
#include "modop/exponent.hpp"
#include "modop/grid.hpp"
#include "modop/operator_matrix.hpp"
#include "modop/opnorm.hpp"
#include "modop/quantize.hpp"
#include "modop/regions.hpp"
#include "modop/rng.hpp"
#include "modop/symbol.hpp"
#include "modop/symbolgen.hpp"
#include "modop/tf_analysis.hpp"
