#pragma once

#include "binwise/partition.hpp"

#include <string>
#include <string_view>

namespace binwise {

/// {"partitions":[{"id":..,"capacity":"..","count":".."}],"total_count":"..","total_capacity":".."}
/// Big numbers are decimal strings. A total_capacity above the listed sum is
/// the unutilized complement.
std::string model_to_json(const PartitionModel& model, int indent = -1);

/// Accepts decimal strings or JSON integers for every number. Throws
/// InvalidModel on a malformed document or a total_count mismatch.
PartitionModel model_from_json(std::string_view text);

}  // namespace binwise
