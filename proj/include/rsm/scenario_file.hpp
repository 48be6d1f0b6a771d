#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsm/experiment.hpp"

namespace rsm::config {

using json = nlohmann::json;

/// Every key the scenario file understands, with its default value. Keys
/// whose default is null are optional paths.
const json& defaults();

/// Reads a scenario (or a run manifest, whose "scenario" member is used),
/// merges it over the defaults, applies `key=value` overrides and turns
/// relative file paths into absolute ones. Unknown keys, type mismatches and
/// missing stage fields are collected into one ValidationError, each naming
/// its full key path.
json load(const std::filesystem::path& scenario_file, const std::vector<std::string>& overrides = {});

/// Same as `load` for an in-memory document; relative paths resolve against
/// `base_dir`.
json resolve(const json& document, const std::vector<std::string>& overrides,
             const std::filesystem::path& base_dir);

/// Builds the network, populations and parameters described by a resolved
/// config and validates the result.
Scenario build(const json& resolved);

/// Stage schedule from the "platform" section.
StageSchedule schedule(const json& resolved);

/// Hex FNV-1a over the resolved config and the bytes of every referenced
/// input file.
std::string input_hash(const json& resolved);

json manifest(const json& resolved);

/// Fixed-width text table of the schedule: days, name, marketing, commission,
/// discount.
std::string stage_table(const StageSchedule& schedule);

}  // namespace rsm::config
