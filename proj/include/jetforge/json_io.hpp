// Copyright 2026 The jetforge Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//         http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include "jetforge/coefficient.hpp"
#include "jetforge/folijet.hpp"
#include "jetforge/itertangent.hpp"
#include "jetforge/jet.hpp"
#include "jetforge/linalg.hpp"
#include "jetforge/transversal.hpp"
#include "jetforge/weil.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace jetforge {

using json = nlohmann::json;

// Sorted keys, two-space indent, scalar arrays on one line, reals with 17
// significant digits.
std::string canonical_dump(const json& j);

// Parse errors become ValidationError.
json parse_json(const std::string& text);

// Rationals as "p/q" strings, reals as numbers. In the rational domain JSON
// integers are accepted and JSON reals are rejected.
json to_json(const Coefficient& c);
Coefficient coefficient_from_json(const json& j, Domain d);

json point_to_json(const Point& p);
Point point_from_json(const json& j, Domain d);

json jet_to_json(const JetMap& jet);
JetMap jet_from_json(const json& j, Domain d);

// Dense rows; rational by default.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, Domain d);

// Index sets are written 1-based.
json index_set_to_json(const IndexSet& s);
IndexSet index_set_from_json(const json& j);

json poset_to_json(const Poset& p);
Poset poset_from_json(const json& j);
PosetMap poset_map_from_json(const json& poset, const json& p);

json multifoliation_to_json(const Multifoliation& f);
Multifoliation multifoliation_from_json(const json& j);

json folijet_to_json(const FoliJet& a);
FoliJet folijet_from_json(const json& j, Domain d);

FiberedShape fibered_shape_from_json(const json& j);
json rsq_to_json(const RSQJet& a);

json level_set_to_json(LevelSet s);
LevelSet level_set_from_json(const json& j);

json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const json& j, std::size_t rows, std::size_t dim, std::size_t arity, Domain d);

json nonhol_to_json(const NonholJet& jet);
NonholJet nonhol_from_json(const json& j, Domain d);

json quasi_to_json(const QuasiJet& q);
QuasiJet quasi_from_json(const json& j, Domain d);

json tangent_to_json(const IterTangentVector& v);
IterTangentVector tangent_from_json(const json& j, Domain d);

std::vector<Subspace> subspaces_from_json(const json& j, std::size_t ambient);

json weil_to_json(const WeilAlgebra& a);
WeilAlgebra weil_from_json(const json& j);
InductiveSystem inductive_system_from_json(const json& j);

} // namespace jetforge
