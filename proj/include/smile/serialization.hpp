#pragma once

// JSON snapshots for checkpointing and exact replay.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "smile/baselines.hpp"
#include "smile/ceo.hpp"
#include "smile/dirichlet.hpp"
#include "smile/environments.hpp"

namespace smile {

using Json = nlohmann::json;

// {"num_states": n, "rows": {"<state id>": [alpha...]}}
Json table_to_json(const TransitionBeliefTable& table);
TransitionBeliefTable table_from_json(const Json& j);

Json em_state_to_json(const OnlineEmState& state);
OnlineEmState em_state_from_json(const Json& j);

// {"rooms": n, "doors": [[a, b, c, d], ...]}
Json topology_to_json(const MazeTopology& topology);
MazeTopology topology_from_json(const Json& j);

Json ceo_fixture_to_json(const CeoFixture& fixture);
CeoFixture ceo_fixture_from_json(const Json& j);

// ConfigError when the file is missing or not valid JSON.
Json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace smile
