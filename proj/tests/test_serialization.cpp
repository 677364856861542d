#include <doctest.h>

#include <filesystem>

#include "smile/baselines.hpp"
#include "smile/ceo.hpp"
#include "smile/errors.hpp"
#include "smile/serialization.hpp"

using namespace smile;

TEST_CASE("belief table round trip") {
  TransitionBeliefTable t(5);
  maze_smile_step_inplace(t, 2, 4);
  maze_smile_step_inplace(t, 4, 0);
  const Json j = table_to_json(t);
  CHECK(j["num_states"] == 5);
  CHECK(j["rows"]["2"].size() == 4);
  CHECK(table_from_json(Json::parse(j.dump())) == t);

  Json bad = j;
  bad["rows"]["1"] = {0.5, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(table_from_json(bad), ValidationError);
  bad = j;
  bad["rows"].erase("3");
  CHECK_THROWS_AS(table_from_json(bad), ValidationError);
}

TEST_CASE("online EM state round trip") {
  auto st = online_em_init(0.1, 0.05, 0, 4, 0.01, 1, 1);
  online_em_step_inplace(st, 0, 2);
  online_em_step_inplace(st, 2, 3);
  const auto back = em_state_from_json(Json::parse(em_state_to_json(st).dump()));
  CHECK(back.t_hat == st.t_hat);
  CHECK(back.phi == st.phi);
  CHECK(back.q_hat == st.q_hat);
  CHECK(back.step_count == 2);

  Json bad = em_state_to_json(st);
  bad["q_hat"] = {0.9, 0.9};
  CHECK_THROWS_AS(em_state_from_json(bad), ValidationError);
}

TEST_CASE("topology round trip") {
  const auto t = build_torus_topology();
  const Json j = topology_to_json(t);
  CHECK(j["doors"][0] == Json({12, 4, 3, 1}));
  CHECK(topology_from_json(j) == t);
  Json bad = j;
  bad["doors"][0][0] = 0;
  CHECK_THROWS_AS(topology_from_json(bad), ValidationError);
}

TEST_CASE("CEO fixture round trip and file IO") {
  const auto f = ceo_fixture();
  const auto back = ceo_fixture_from_json(ceo_fixture_to_json(f));
  CHECK(back.epsilon == f.epsilon);
  CHECK(back.colleague_b[2] == f.colleague_b[2]);

  const auto path = std::filesystem::temp_directory_path() / "smile_io_test.json";
  save_json_file(path, ceo_fixture_to_json(f));
  CHECK(load_json_file(path) == ceo_fixture_to_json(f));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_json_file(path), ConfigError);
}
