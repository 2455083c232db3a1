// Copyright 2026 The npoint Authors
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

// Umbrella header.

#ifndef NPOINT_NPOINT_HPP_
#define NPOINT_NPOINT_HPP_

#include "npoint/coalgebra.hpp"
#include "npoint/errors.hpp"
#include "npoint/field_algebra.hpp"
#include "npoint/functional.hpp"
#include "npoint/model.hpp"
#include "npoint/oracle.hpp"
#include "npoint/propagator.hpp"
#include "npoint/rational.hpp"
#include "npoint/tree_engine.hpp"
#include "npoint/tree_graph.hpp"
#include "npoint/tree_io.hpp"

#endif  // NPOINT_NPOINT_HPP_
