#pragma once

#include <optional>
#include <string>

#include "cone/core.hpp"

namespace cone {

/// Writes `stage,decision,y_1..y_d,value` rows (17 significant digits) and
/// a `<path>.meta.json` sidecar carrying the context box and decision
/// count, which the CSV schema itself cannot represent.
void save_dataset(const Dataset& dataset, const std::string& path);

/// Loads a dataset saved by save_dataset. Without the sidecar the box is
/// inferred from per-coordinate data ranges (slightly padded) and the
/// decision count from the largest index seen.
Dataset load_dataset(const std::string& path);

}  // namespace cone
