// Copyright 2026 The spinnet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINNET_SPINNET_HPP
#define SPINNET_SPINNET_HPP

#include "circuit.hpp"
#include "coupling_tree.hpp"
#include "exact.hpp"
#include "gate_engine.hpp"
#include "half_int.hpp"
#include "identities.hpp"
#include "ponzano_regge.hpp"
#include "recoupling_graph.hpp"
#include "verify.hpp"
#include "wigner.hpp"

#endif // SPINNET_SPINNET_HPP
