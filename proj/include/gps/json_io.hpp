#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gps/calculus.hpp"
#include "gps/residues.hpp"
#include "gps/series.hpp"

namespace gps {

using Json = nlohmann::ordered_json;

/// Series schema: order, split, field, box ("everywhere" or lo/hi), terms in
/// ascending term order, plus the support cone of truncated series.
Json to_json(const Series& f);
Series series_from_json(const Json& j);

/// Series schema plus "basis".
Json to_json(const NForm& w);
NForm nform_from_json(const Json& j);

/// {"numerator": NForm, "denominator": [Series, ...]}; deferred members are rejected.
Json to_json(const GeneralizedFraction& fr);
GeneralizedFraction fraction_from_json(const Json& j);

/// Structural check of a series document; returns the first problem or "".
std::string validate_series_json(const Json& j);

}  // namespace gps
