// Copyright 2026 The lindblad Authors
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

#include "lindblad/types.hpp"
#include "lindblad/su_basis.hpp"
#include "lindblad/liouville.hpp"
#include "lindblad/integrator.hpp"
#include "lindblad/propagate.hpp"
#include "lindblad/qubit_exact.hpp"
#include "lindblad/floquet.hpp"
#include "lindblad/coherence.hpp"
#include "lindblad/engine.hpp"
