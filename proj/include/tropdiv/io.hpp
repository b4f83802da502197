#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/plfunction.hpp"

namespace tropdiv {

using Json = nlohmann::ordered_json;

// {"vertices":[{"id":"v1","weight":0}], "edges":[{"id":"e1","ends":["v1","v2"],"length":"3/2"}]}.
// Weight and length are optional (0 and 1). Errors name the offending field.
Json graph_to_json(const MetricGraph& g);
MetricGraph graph_from_json(const Json& j);

// {"chips":[{"at":"v1","n":2},{"at":{"edge":"e1","offset":"1/3"},"n":-1}]},
// sorted by point.
Json point_to_json(const MetricGraph& g, const GraphPoint& p);
GraphPoint point_from_json(const MetricGraph& g, const Json& j);
Json divisor_to_json(const MetricGraph& g, const Divisor& d);
Divisor divisor_from_json(const MetricGraph& g, const Json& j);

// {"values":[{"at":"v1","value":"0"},{"at":{"edge":"e1","offset":"1/3"},"value":"1/2"}]}:
// every vertex plus the interior knots.
Json plfunction_to_json(const MetricGraph& g, const PLFunction& f);
PLFunction plfunction_from_json(const MetricGraph& g, const Json& j);

Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j, std::string_view field);

// Parse errors report line and column.
Json parse_json_text(std::string_view text, std::string_view source);
Json load_json_file(const std::string& path);

}  // namespace tropdiv
