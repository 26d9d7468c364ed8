#include "mpsfft/json_io.hpp"

#include <json.hpp>
#include <stdexcept>

namespace mpsfft {

using nlohmann::json;

std::string to_json(const BinAllocation& alloc) {
  json j;
  j["n"] = alloc.log2_bins();
  j["sizes"] = alloc.sizes();
  return j.dump();
}

BinAllocation allocation_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("allocation JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("sizes")) {
    throw std::invalid_argument(
        "allocation JSON: expected {\"n\": ..., \"sizes\": [...]}");
  }
  return BinAllocation(j.at("n").get<int>(),
                       j.at("sizes").get<std::vector<std::uint32_t>>());
}

std::string to_json(const PrecedenceGraph& g) {
  json stages = json::array();
  for (int i = 0; i < g.log2_size(); ++i) {
    json rows = json::array();
    for (std::uint32_t j = 0; j < g.rows(); ++j) {
      if (g.contains(Vertex{i, int(j)})) rows.push_back(j);
    }
    stages.push_back(std::move(rows));
  }
  json taps = json::array();
  for (const TapPoint& t : g.taps()) {
    taps.push_back(json::array({t.stage, t.output, t.stream}));
  }
  json j;
  j["n"] = g.log2_size();
  j["stages"] = std::move(stages);
  j["taps"] = std::move(taps);
  return j.dump();
}

std::string to_json(const Schedule& s) {
  json slots = json::array();
  for (const auto& slot : s.slots) {
    json entries = json::array();
    for (const Vertex v : slot) {
      entries.push_back(json::array({v.stage, v.row}));
    }
    slots.push_back(std::move(entries));
  }
  json j;
  j["M"] = s.processors;
  j["T"] = s.makespan();
  j["slots"] = std::move(slots);
  return j.dump();
}

Schedule schedule_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("schedule JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("M") || !j.contains("slots")) {
    throw std::invalid_argument(
        "schedule JSON: expected {\"M\": ..., \"slots\": [...]}");
  }
  Schedule s;
  s.processors = j.at("M").get<std::uint32_t>();
  for (const auto& slot : j.at("slots")) {
    std::vector<Vertex> entries;
    for (const auto& v : slot) {
      if (!v.is_array() || v.size() != 2) {
        throw std::invalid_argument(
            "schedule JSON: vertexes must be [stage, row] pairs");
      }
      entries.push_back(Vertex{v[0].get<int>(), v[1].get<int>()});
    }
    s.slots.push_back(std::move(entries));
  }
  if (j.contains("T") &&
      j.at("T").get<std::size_t>() != s.slots.size()) {
    throw std::invalid_argument("schedule JSON: T does not match slot count");
  }
  return s;
}

std::string to_json(const BoundReport& report, const TrunkClassification& c) {
  json j;
  j["beta"] = c.beta;
  j["stage_totals"] = c.stage_totals;
  j["trunk_counts"] = c.trunk_counts;
  j["m"] = report.suffix_len;
  j["T_tr_lower"] = report.trunk_lower;
  j["T_br_lower"] = report.branch_lower;
  j["T_lower"] = report.lower;
  j["trivial_lower"] = report.trivial_lower;
  j["unused_capacity"] = report.unused_capacity;
  j["unpacked"] = report.unpacked;
  return j.dump();
}

std::string to_json(const StatsReport& report) {
  json per_m = json::array();
  for (const PerProcessorStats& s : report.per_m) {
    json row;
    row["M"] = s.processors;
    row["runs"] = s.runs;
    row["reached"] = s.reached;
    row["eta"] = s.eta;
    row["gamma"] = s.gamma;
    per_m.push_back(std::move(row));
  }
  json j;
  j["n"] = report.n;
  j["alpha"] = report.alpha;
  j["mode"] = report.sampled ? "sampled" : "complete";
  j["per_M"] = std::move(per_m);
  j["eta"] = report.eta;
  j["gamma"] = report.gamma;
  j["xi0"] = report.xi0;
  j["xi1"] = report.xi1;
  j["gap_mean"] = report.gap_mean;
  j["gap_variance"] = report.gap_variance;
  if (report.sampled) {
    j["eta_lower"] = report.eta_lower;
    j["gamma_interval"] =
        json::array({report.gamma_ci.low, report.gamma_ci.high});
    j["gamma_interval_degenerate"] = report.gamma_ci.degenerate;
  }
  return j.dump();
}

}  // namespace mpsfft
