// SPDX-License-Identifier: Apache-2.0
//
// otfslab - OTFS/OFDM link-level simulation and BER analysis over Nakagami-m fading
// Copyright (C) 2026 The otfslab Authors
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

#include "otfslab/analytic.hpp"
#include "otfslab/config.hpp"
#include "otfslab/constellation.hpp"
#include "otfslab/csv.hpp"
#include "otfslab/diversity.hpp"
#include "otfslab/errors.hpp"
#include "otfslab/fading.hpp"
#include "otfslab/modem.hpp"
#include "otfslab/montecarlo.hpp"
#include "otfslab/multiuser.hpp"
#include "otfslab/random.hpp"
#include "otfslab/specfun.hpp"
