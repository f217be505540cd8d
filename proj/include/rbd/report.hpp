#pragma once

#include "rbd/runner.hpp"

#include "json.hpp"

#include <string>

namespace rbd {

/// Plain-text report. ANSI colour only when requested.
std::string render_text(const Report& r, bool color);

/// Deterministic JSON with a top-level "schema": 1. Integers are numbers,
/// other fractions are "num/den" strings.
nlohmann::ordered_json to_json(const Report& r);

} // namespace rbd
