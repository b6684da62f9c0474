#pragma once

// JSON forms of the library's values. Rationals are "p/q" strings in lowest
// terms; vertex indices are 1-based.

#include <json.hpp>

#include "transpoly/ehrhart.hpp"
#include "transpoly/graph.hpp"
#include "transpoly/mgf.hpp"
#include "transpoly/perturb.hpp"
#include "transpoly/polytope.hpp"

namespace transpoly {

using Json = nlohmann::ordered_json;

/// {"r": [...], "c": [...]}; entries may be "p/q" strings or integers.
Margins margins_from_json(const Json& j);
Json margins_to_json(const Margins& mar);

Json forest_to_json(const LabeledForest& forest);
LabeledForest forest_from_json(const Json& j);

Json matrix_to_json(const RationalMatrix& mat);
Json matrix_to_json(const IntMatrix& mat);
RationalMatrix rational_matrix_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);

Json vertex_to_json(const VertexRecord& v);

Json mgf_to_json(const MgfExpression& expr);
MgfExpression mgf_from_json(const Json& j);

Json perturbation_to_json(const PerturbationSpec& spec, const Grouping& grouping);

Json ehrhart_to_json(const EhrhartPolynomial& poly, const Volume& vol, const DirectionVector& dir);

}  // namespace transpoly
