// Copyright 2026 The qpi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Umbrella header pulling in the whole library.

#include "qpi/tolerances.hpp"
#include "qpi/matrix.hpp"
#include "qpi/eig.hpp"
#include "qpi/rng.hpp"
#include "qpi/quantum_state.hpp"
#include "qpi/states.hpp"
#include "qpi/measures.hpp"
#include "qpi/relations.hpp"
#include "qpi/io.hpp"
#include "qpi/suites.hpp"
