/*
 * Copyright 2026 The distnorm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DISTNORM_IO_HPP
#define DISTNORM_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "distnorm/designs.hpp"
#include "distnorm/info.hpp"

namespace distnorm::io {

using json = nlohmann::json;

// File formats. Every parser throws Error(ErrorCode::Parse) on malformed
// input, including operator data that is not Hermitian within tolerance.
//
//   operator: {"dim": d, "shape": [dA, dB] | null, "entries": [[re, im], ...]}
//             entries row-major, d*d of them
//   povm:     {"dim": d, "effects": [operator, ...]}
//   family:   [povm, ...]
//   design:   {"dim": d, "t": t, "items": [{"weight": p, "vector": [[re, im], ...]}, ...]}
//   ensemble: {"items": [{"p": x, "state": operator}, ...]}

HermitianOp operator_from_json(const json& j);
json operator_to_json(const HermitianOp& h);

Povm povm_from_json(const json& j);
json povm_to_json(const Povm& p);

MeasurementFamily family_from_json(const json& j);

WeightedDesign design_from_json(const json& j);
json design_to_json(const WeightedDesign& d);

Ensemble ensemble_from_json(const json& j);
json ensemble_to_json(const Ensemble& e);

/// Parses text, mapping syntax errors to ErrorCode::Parse.
json parse(const std::string& text);
/// Reads and parses a file; unreadable paths are ErrorCode::Parse as well.
json read_file(const std::string& path);

/// Deterministic JSON: keys sorted, two-space indent, every floating-point
/// number printed with 17 significant digits. Non-finite numbers become null.
std::string emit_json(const json& j);

/// CSV: if `j` carries a "records" array of objects, one row per record;
/// otherwise a single row of the top-level scalar fields. The columns `seed`,
/// `samples` and `tol` from the top level lead every row.
std::string emit_csv(const json& j);

/// %.17g formatting shared by both emitters.
std::string format_double(double x);

}  // namespace distnorm::io

#endif  // DISTNORM_IO_HPP
