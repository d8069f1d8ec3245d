// JSON encodings of problems, variables, solutions and reports.
//
// Exact scalars are strings "p/q"; multiprecision complex scalars are objects
// {"re": "...", "im": "..."} of decimal strings.  Every numeric payload sits
// next to a "domain" field ("exact" or "float") and, for floats, "precision_bits".
#pragma once

#include "gaudin/bethe.hpp"
#include "gaudin/identities.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace gaudin {

using Json = nlohmann::ordered_json;

/// Raised for any structurally or numerically invalid input document.
struct MalformedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Accepts integers, "p/q" strings and decimal strings.
Rational rational_from_json(const Json& j);
Json to_json(const Rational& q);

Json to_json(const Weight& w);
Weight weight_from_json(const Json& j);

Json to_json(const Complex& c);
Complex complex_from_json(const Json& j, unsigned precision_bits);

Json to_json(const BetheProblem& p);
/// Validates the problem; MalformedInput on any defect.
BetheProblem problem_from_json(const Json& j);

Json to_json(const BetheVariables<Rational>& t);
Json to_json(const BetheVariables<Complex>& t);

/// Variables from {"t": [[...], ...]}; entries may be exact or {"re","im"} objects.
BetheVariables<Complex> complex_variables_from_json(const Json& j, unsigned precision_bits);
/// The exact reading when every entry is exact, nullopt otherwise.
std::optional<BetheVariables<Rational>> exact_variables_from_json(const Json& j);

Json to_json(const MultiStartStats& s);
Json to_json(const BetheSolution& s);
Json solutions_to_json(const std::vector<BetheSolution>& solutions, unsigned precision_bits);
/// Reads {"solutions": [{"t": ...}, ...]}; residual and converged fields are ignored.
std::vector<BetheVariables<Complex>> solutions_from_json(const Json& j, unsigned precision_bits);

template <class S>
Json to_json(const ModuleState<S>& v);

template <class S>
Json to_json(const EigenReport<S>& r);

Json to_json(const IdentityReport& r);

Json load_json_file(const std::string& path);

} // namespace gaudin
