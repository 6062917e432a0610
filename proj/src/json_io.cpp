#include "csqfplan/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace csqf {

using nlohmann::json;

namespace {

void require_version(const json& j, const char* what) {
  if (!j.contains("format_version") || !j["format_version"].is_number_integer())
    throw StructuralError(std::string(what) + ": missing format_version");
  const int v = j["format_version"].get<int>();
  if (v != kFormatVersion)
    throw StructuralError(std::string(what) + ": unsupported format_version " +
                          std::to_string(v));
}

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw StructuralError(std::string(what) + ": invalid JSON");
  return j;
}

}  // namespace

std::string instance_to_json(const Instance& inst, int indent) {
  json j;
  j["format_version"] = kFormatVersion;
  j["params"] = {{"C", inst.params().hypercycle_len},
                 {"R", inst.params().max_extra_shift},
                 {"cycle_duration_us", inst.params().cycle_duration_us},
                 {"du_size_bytes", inst.params().du_size_bytes}};
  j["nodes"] = inst.node_names();
  json arcs = json::array();
  for (const Arc& a : inst.arcs()) {
    arcs.push_back({{"src", inst.node_name(a.src)},
                    {"dst", inst.node_name(a.dst)},
                    {"delay_cycles", a.delay_cycles},
                    {"capacity_du", a.capacity_du}});
  }
  j["arcs"] = std::move(arcs);
  json demands = json::array();
  for (const Demand& d : inst.demands()) {
    demands.push_back({{"id", d.id},
                       {"src", inst.node_name(d.src)},
                       {"dst", inst.node_name(d.dst)},
                       {"pattern", d.pattern},
                       {"deadline_cycles", d.deadline_cycles},
                       {"packet_size_du", d.packet_size_du}});
  }
  j["demands"] = std::move(demands);
  return j.dump(indent);
}

Instance instance_from_json(const std::string& text) {
  const json j = parse(text, "instance");
  require_version(j, "instance");
  try {
    GlobalParams params;
    const json& p = j.at("params");
    params.hypercycle_len = p.at("C").get<int>();
    params.max_extra_shift = p.at("R").get<int>();
    params.cycle_duration_us = p.value("cycle_duration_us", 10.0);
    params.du_size_bytes = p.value("du_size_bytes", 500);

    std::vector<std::string> nodes =
        j.at("nodes").get<std::vector<std::string>>();
    std::unordered_map<std::string, NodeId> index;
    for (size_t v = 0; v < nodes.size(); ++v)
      index.emplace(nodes[v], static_cast<NodeId>(v));
    const auto node_of = [&](const json& name) {
      const auto it = index.find(name.get<std::string>());
      if (it == index.end())
        throw StructuralError("unknown node id: " + name.get<std::string>());
      return it->second;
    };

    std::vector<Arc> arcs;
    for (const json& ja : j.at("arcs")) {
      Arc a;
      a.src = node_of(ja.at("src"));
      a.dst = node_of(ja.at("dst"));
      a.delay_cycles = ja.at("delay_cycles").get<int>();
      a.capacity_du = ja.at("capacity_du").get<int64_t>();
      arcs.push_back(a);
    }

    std::vector<Demand> demands;
    for (const json& jd : j.at("demands")) {
      Demand d;
      d.id = jd.at("id").get<int64_t>();
      d.src = node_of(jd.at("src"));
      d.dst = node_of(jd.at("dst"));
      d.pattern = jd.at("pattern").get<std::vector<int64_t>>();
      d.deadline_cycles = jd.at("deadline_cycles").get<int>();
      d.packet_size_du = jd.at("packet_size_du").get<int64_t>();
      demands.push_back(std::move(d));
    }
    return Instance(params, std::move(nodes), std::move(arcs),
                    std::move(demands));
  } catch (const json::exception& e) {
    throw StructuralError(std::string("instance: ") + e.what());
  }
}

std::string solution_to_json(const Instance& inst, const PlanSolution& sol,
                             int indent) {
  json j;
  j["format_version"] = kFormatVersion;
  json assignments = json::array();
  for (const SPath& p : sol.assignments) {
    json arcs = json::array();
    for (const ArcId a : p.arcs)
      arcs.push_back(
          {inst.node_name(inst.arc(a).src), inst.node_name(inst.arc(a).dst)});
    assignments.push_back({{"demand", inst.demand(p.demand).id},
                           {"arcs", std::move(arcs)},
                           {"shifts", p.shifts}});
  }
  j["assignments"] = std::move(assignments);
  j["objective"] = sol.objective;
  return j.dump(indent);
}

PlanSolution solution_from_json(const Instance& inst,
                                const std::string& text) {
  const json j = parse(text, "solution");
  require_version(j, "solution");
  try {
    PlanSolution sol;
    for (const json& ja : j.at("assignments")) {
      SPath p;
      const int64_t demand_id = ja.at("demand").get<int64_t>();
      p.demand = inst.find_demand(demand_id);
      if (p.demand < 0)
        throw StructuralError("solution references unknown demand " +
                              std::to_string(demand_id));
      for (const json& pair : ja.at("arcs")) {
        if (!pair.is_array() || pair.size() != 2)
          throw StructuralError("arc reference must be a [src, dst] pair");
        const NodeId src = inst.find_node(pair[0].get<std::string>());
        const NodeId dst = inst.find_node(pair[1].get<std::string>());
        const ArcId a = inst.find_arc(src, dst);
        if (a < 0)
          throw StructuralError("solution references unknown arc " +
                                pair[0].get<std::string>() + " -> " +
                                pair[1].get<std::string>());
        p.arcs.push_back(a);
      }
      p.shifts = ja.at("shifts").get<std::vector<int>>();
      if (!p.arcs.empty() && p.shifts.size() + 1 != p.arcs.size())
        throw StructuralError("shift vector length must be path length - 1");
      sol.assignments.push_back(std::move(p));
    }
    sol.objective = j.at("objective").get<int64_t>();
    return sol;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("solution: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot open for writing: " + path);
  out << text;
  if (!out) throw StructuralError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) {
  return instance_from_json(read_text_file(path));
}

void save_instance(const Instance& inst, const std::string& path) {
  write_text_file(path, instance_to_json(inst) + "\n");
}

PlanSolution load_solution(const Instance& inst, const std::string& path) {
  return solution_from_json(inst, read_text_file(path));
}

void save_solution(const Instance& inst, const PlanSolution& sol,
                   const std::string& path) {
  write_text_file(path, solution_to_json(inst, sol) + "\n");
}

}  // namespace csqf
