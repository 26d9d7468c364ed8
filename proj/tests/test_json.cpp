#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpsfft/json_io.hpp"

using namespace mpsfft;

TEST_CASE("allocation json round trip and golden form") {
  const BinAllocation a(3, {4, 2, 1, 1});
  const std::string text = to_json(a);
  CHECK(text == R"({"n":3,"sizes":[4,2,1,1]})");
  CHECK(allocation_from_json(text) == a);
  CHECK_THROWS_AS(allocation_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(allocation_from_json(R"({"n":3})"), std::invalid_argument);
  CHECK_THROWS_AS(allocation_from_json(R"({"n":3,"sizes":[4,2,1]})"),
                  std::invalid_argument);
}

TEST_CASE("graph json lists stages and taps") {
  const PrecedenceGraph g =
      PrecedenceGraph::build(BinAllocation(3, {4, 2, 1, 1}));
  CHECK(to_json(g) ==
        R"({"n":3,"stages":[[0,1,2,3],[2,3],[3]],)"
        R"("taps":[[0,0,0],[0,1,0],[0,2,0],[0,3,0],[1,4,1],[1,5,1],)"
        R"([2,6,2],[2,7,3]]})");
}

TEST_CASE("schedule json round trip") {
  const PrecedenceGraph g =
      PrecedenceGraph::build(BinAllocation(3, {4, 2, 1, 1}));
  const Schedule s = mps_schedule(g, 2);
  const std::string text = to_json(s);
  const Schedule back = schedule_from_json(text);
  CHECK(back.processors == s.processors);
  CHECK(back.slots == s.slots);
  CHECK_THROWS_AS(schedule_from_json(R"({"M":2,"T":5,"slots":[]})"),
                  std::invalid_argument);  // T disagrees with slots
  CHECK_THROWS_AS(schedule_from_json(R"({"M":2,"slots":[[[0]]]})"),
                  std::invalid_argument);
}

TEST_CASE("bound report json") {
  const PrecedenceGraph g =
      PrecedenceGraph::build(BinAllocation(5, {16, 8, 4, 2, 1, 1}));
  const TrunkClassification c = classify(g);
  const std::string text = to_json(lower_bound(c, 5), c);
  CHECK(text.find("\"T_lower\":8") != std::string::npos);
  CHECK(text.find("\"trunk_counts\":[16,8,4,2,1]") != std::string::npos);
}
