// Copyright 2026 The noisescramble Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "noisescramble/ansatz.hpp"
#include "noisescramble/arrowhead.hpp"
#include "noisescramble/circuit.hpp"
#include "noisescramble/config.hpp"
#include "noisescramble/density_matrix.hpp"
#include "noisescramble/error.hpp"
#include "noisescramble/hamiltonians.hpp"
#include "noisescramble/harness.hpp"
#include "noisescramble/pauli.hpp"
#include "noisescramble/random.hpp"
#include "noisescramble/results.hpp"
#include "noisescramble/scaling_fit.hpp"
#include "noisescramble/simulator.hpp"
#include "noisescramble/spectral.hpp"
