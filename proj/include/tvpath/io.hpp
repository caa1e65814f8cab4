#pragma once

#include <istream>
#include <optional>
#include <string>

#include <json.hpp>

#include "tvpath/path.hpp"
#include "tvpath/signal.hpp"

namespace tvpath {

nlohmann::json signal_to_json(const Signal& signal);
Signal signal_from_json(const nlohmann::json& j);

// CSV with `length,value` rows (header optional), or a single column of
// samples when dx is given.
Signal signal_from_csv(std::istream& in, std::optional<double> dx);

// {"p":..., "segments":[{"lambda_lo":..., "lambda_hi":null|..., "groups":
//  [{"range":[i,j], "a":..., "M":..., "c":...}]}], "events":[{"lambda":...,
//  "merges":[[g,g+1],...]}], "terminal_value":...}
// Ranges and merge pairs are 1-based; M and c appear only for p = 2; a null
// lambda_hi encodes +infinity.
nlohmann::json path_to_json(const SolutionPath& path);

// Rebuild an evaluable path from the schema above. Group weights and means
// are recomputed from the signal; only the range and the coefficient a are
// needed to evaluate a group.
SolutionPath path_from_json(const nlohmann::json& j, const Signal& signal);

}  // namespace tvpath
