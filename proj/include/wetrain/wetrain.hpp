// SPDX-License-Identifier: Apache-2.0
//
// wetrain: training design for multi-antenna multi-band wireless energy transfer
// Copyright (C) 2026 The wetrain authors
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

#ifndef WETRAIN_WETRAIN_HPP
#define WETRAIN_WETRAIN_HPP

#include "error.hpp"
#include "system_params.hpp"
#include "random.hpp"
#include "parallel.hpp"
#include "order_stats.hpp"
#include "training_model.hpp"
#include "poly_roots.hpp"
#include "optimizer.hpp"
#include "channel_sim.hpp"
#include "asymptotics.hpp"
#include "thresholds.hpp"
#include "config.hpp"
#include "experiments.hpp"

#endif
