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

#include "qfe/emi.h"

#include <cmath>
#include <map>
#include <set>

namespace qfe {

namespace {

struct Stripper {
  std::map<BodyPath, std::vector<std::pair<std::uint32_t, std::uint32_t>>> dead;
  std::set<BodyPath> hosted;  // bodies that contained a dead span

  bool is_dead(const BodyPath& path, std::uint32_t i) const {
    auto it = dead.find(path);
    if (it == dead.end()) return false;
    for (auto [b, e] : it->second) {
      if (i >= b && i < e) return true;
    }
    return false;
  }

  Body strip(const Body& body, const BodyPath& path) const {
    Body out;
    for (std::uint32_t i = 0; i < body.size(); ++i) {
      if (is_dead(path, i)) continue;
      Instruction copy = body[i];
      for (std::size_t s = 0; s < num_child_bodies(copy); ++s) {
        BodyPath child = path;
        child.push_back({i, static_cast<std::uint32_t>(s)});
        *child_body(copy, s) = strip(*child_body(body[i], s), child);
      }
      if (const auto* coi = copy.get_if<ControlledOnInt>()) {
        BodyPath own = path;
        own.push_back({i, 0});
        if (coi->body.empty() && hosted.count(own)) continue;
      }
      out.push_back(std::move(copy));
    }
    return out;
  }
};

}  // namespace

Program derive_variant(const Program& p) {
  Stripper s;
  for (const auto& r : p.dead_regions) {
    s.dead[r.span.body].emplace_back(r.span.begin, r.span.end);
    s.hosted.insert(r.span.body);
  }
  Program out;
  out.qregs = p.qregs;
  out.cregs = p.cregs;
  out.meta = p.meta;
  out.body = s.strip(p.body, {});
  return out;
}

double linf_distance(const Distribution& a, const Distribution& b) {
  double worst = 0;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    worst = std::max(worst, std::abs(v - (it == b.end() ? 0.0 : it->second)));
  }
  for (const auto& [k, v] : b) {
    if (!a.count(k)) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

double check_equivalence_exact(const Program& p, const Program& q,
                               const EnumerationCaps& caps) {
  return linf_distance(enumerate_distribution(p, caps).distribution,
                       enumerate_distribution(q, caps).distribution);
}

}  // namespace qfe
