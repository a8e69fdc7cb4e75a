#pragma once

// JSON encoding of labels, matrices, contexts, coefficient tables and reports.
// Labels are [j2, l2, m2, mu] (doubled half-integers); complex numbers are [re, im].

#include <json.hpp>

#include "fuzzsuper/cohomology.hpp"
#include "fuzzsuper/fuzzy.hpp"

namespace fuzzsuper {

using Json = nlohmann::json;

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

Json label_to_json(const HarmonicLabel& l);
HarmonicLabel label_from_json(const Json& j);

Json matrix_to_json(const GradedMatrix& m);
GradedMatrix matrix_from_json(const Json& j);

Json element_to_json(const FuzzyElement& e);
FuzzyElement element_from_json(const Json& j);

/// q, rho, graded dimensions and the harmonic table (optionally with the matrices).
Json context_to_json(const FuzzySuperSphere& ctx, bool with_matrices);
Json context_to_json(const FuzzySphere& ctx, bool with_matrices);

Json rank_to_json(const RankReport& r);
Json cohomology_to_json(const CohomologyReport& r);

}  // namespace fuzzsuper
