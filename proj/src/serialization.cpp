#include "smile/serialization.hpp"

#include <fstream>

#include "smile/errors.hpp"

namespace smile {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

Json table_to_json(const TransitionBeliefTable& table) {
  Json rows = Json::object();
  for (std::size_t s = 0; s < table.num_states(); ++s) {
    const auto a = table.row(s).alpha();
    rows[std::to_string(s)] = std::vector<double>(a.begin(), a.end());
  }
  return {{"num_states", table.num_states()}, {"rows", rows}};
}

TransitionBeliefTable table_from_json(const Json& j) {
  const auto n = field<std::size_t>(j, "num_states");
  const Json& rows = j.at("rows");
  if (!rows.is_object() || rows.size() != n) {
    throw ValidationError("table needs one row per state");
  }
  std::vector<DirichletParams> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    out.emplace_back(field<std::vector<double>>(rows, std::to_string(s).c_str()));
  }
  return TransitionBeliefTable(std::move(out));
}

Json em_state_to_json(const OnlineEmState& st) {
  return {{"num_states", st.num_states},
          {"p_hat", st.p_hat},
          {"t_hat", st.t_hat},
          {"q_hat", st.q_hat},
          {"phi", st.phi},
          {"eta", st.eta},
          {"step_count", st.step_count},
          {"burn_in", st.burn_in},
          {"last_step_degenerate", st.last_step_degenerate},
          {"degenerate_steps", st.degenerate_steps}};
}

OnlineEmState em_state_from_json(const Json& j) {
  OnlineEmState st;
  st.num_states = field<std::size_t>(j, "num_states");
  st.p_hat = field<std::array<double, 4>>(j, "p_hat");
  st.t_hat = field<std::vector<double>>(j, "t_hat");
  st.q_hat = field<std::array<double, 2>>(j, "q_hat");
  st.phi = field<std::vector<double>>(j, "phi");
  st.eta = field<double>(j, "eta");
  st.step_count = field<std::int64_t>(j, "step_count");
  st.burn_in = field<std::int64_t>(j, "burn_in");
  st.last_step_degenerate = field<bool>(j, "last_step_degenerate");
  st.degenerate_steps = field<std::int64_t>(j, "degenerate_steps");
  st.validate();
  return st;
}

Json topology_to_json(const MazeTopology& topology) {
  return {{"rooms", topology.num_rooms()}, {"doors", topology.table()}};
}

MazeTopology topology_from_json(const Json& j) {
  auto doors = field<std::vector<MazeTopology::Doors>>(j, "doors");
  if (doors.size() != field<std::size_t>(j, "rooms")) {
    throw ValidationError("room count does not match the door table");
  }
  return MazeTopology(std::move(doors));
}

Json ceo_fixture_to_json(const CeoFixture& f) {
  auto vec = [](const CategoricalBelief& b) {
    return std::vector<double>(b.weights().begin(), b.weights().end());
  };
  return {{"epsilon", f.epsilon},
          {"colleague_a", vec(f.colleague_a)},
          {"colleague_b", vec(f.colleague_b)},
          {"colleague_c", vec(f.colleague_c)}};
}

CeoFixture ceo_fixture_from_json(const Json& j) {
  return CeoFixture{
      field<double>(j, "epsilon"),
      CategoricalBelief(field<std::vector<double>>(j, "colleague_a")),
      CategoricalBelief(field<std::vector<double>>(j, "colleague_b")),
      CategoricalBelief(field<std::vector<double>>(j, "colleague_c")),
  };
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace smile
