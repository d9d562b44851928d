// Copyright 2026 The vcsched Authors
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

#ifndef VCSCHED_VCSCHED_HPP_
#define VCSCHED_VCSCHED_HPP_

#include "vcsched/adaptation.hpp"
#include "vcsched/algorithms.hpp"
#include "vcsched/bench.hpp"
#include "vcsched/bounds.hpp"
#include "vcsched/greedy.hpp"
#include "vcsched/io.hpp"
#include "vcsched/mcb.hpp"
#include "vcsched/model.hpp"
#include "vcsched/parallel.hpp"
#include "vcsched/phase2.hpp"
#include "vcsched/rounding.hpp"
#include "vcsched/workload.hpp"

#endif  // VCSCHED_VCSCHED_HPP_
