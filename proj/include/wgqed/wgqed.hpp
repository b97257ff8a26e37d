// Copyright 2026 The wgqed Authors
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

#include "wgqed/config.hpp"
#include "wgqed/ensemble.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/experiment.hpp"
#include "wgqed/lindblad.hpp"
#include "wgqed/measures.hpp"
#include "wgqed/model.hpp"
#include "wgqed/oracles.hpp"
#include "wgqed/qmat.hpp"
#include "wgqed/record.hpp"
#include "wgqed/rng.hpp"
#include "wgqed/trajectories.hpp"
