// Copyright 2026 The qfe Authors
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

#ifndef QFE_EMI_H_
#define QFE_EMI_H_

#include "qfe/ir.h"
#include "qfe/simulator.h"

namespace qfe {

// Deletes every instruction inside a dead region. Control constructs that
// host a region stay in place with whatever body remains, except
// ControlledOnInt nodes, which are removed once their body is gone. Ancilla
// registers and guard preparation are kept, so both programs share register
// layout and outcome width. The result has no dead regions.
Program derive_variant(const Program& p);

// L-infinity distance between the exact output distributions.
double check_equivalence_exact(const Program& p, const Program& q,
                               const EnumerationCaps& caps = {});

double linf_distance(const Distribution& a, const Distribution& b);

}  // namespace qfe

#endif  // QFE_EMI_H_
