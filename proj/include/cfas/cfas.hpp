// SPDX-License-Identifier: Apache-2.0
//
// cfas -- high-SNR probability of continuous fluid antenna systems
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

#pragma once

#include "cfas/analytic.hpp"
#include "cfas/correlation.hpp"
#include "cfas/error.hpp"
#include "cfas/geometry.hpp"
#include "cfas/montecarlo.hpp"
#include "cfas/shapeopt.hpp"
