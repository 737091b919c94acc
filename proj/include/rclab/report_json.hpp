#pragma once

#include <json.hpp>

#include "rclab/convexity.hpp"

namespace rclab {

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const ConvexityReport& r);
nlohmann::json to_json(const ThresholdReport& r);

}  // namespace rclab
