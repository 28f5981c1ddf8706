// Copyright 2026 The arbocc Authors
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

#ifndef ARBOCC_ARBOCC_HPP_
#define ARBOCC_ARBOCC_HPP_

#include "arbocc/cluster_algs.hpp"
#include "arbocc/common.hpp"
#include "arbocc/generators.hpp"
#include "arbocc/graph.hpp"
#include "arbocc/greedy_mis.hpp"
#include "arbocc/matching.hpp"
#include "arbocc/mpc.hpp"
#include "arbocc/oracle.hpp"
#include "arbocc/ordering.hpp"

#endif  // ARBOCC_ARBOCC_HPP_
