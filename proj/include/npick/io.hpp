#pragma once

#include <string>

#include "json.hpp"

#include "npick/fronts.hpp"
#include "npick/problem.hpp"
#include "npick/rational.hpp"
#include "npick/solver.hpp"
#include "npick/verify.hpp"

namespace npick {

using Json = nlohmann::json;

// Matrices travel as nested row-major arrays whose entries are [re, im]
// pairs; bare numbers are accepted and promoted to real entries.
ComplexMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& M);

ProblemData problem_from_json(const Json& j);
Json problem_to_json(const ProblemData& prob);

RationalSystem system_from_json(const Json& j);
Json system_to_json(const RationalSystem& sys);

// {"constant": matrix} or {"system": {alpha, beta, gamma, delta}}.
SchurParameter parameter_from_json(const Json& j);

// {"G": [matrices], "K": [matrices], "N": int}.
LeechInstance leech_from_json(const Json& j);

Json report_to_json(const VerificationReport& report);

Json load_json_file(const std::string& path);
void write_json_output(const std::string& path, const Json& j);

}  // namespace npick
