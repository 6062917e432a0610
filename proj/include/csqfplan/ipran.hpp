#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "csqfplan/model.hpp"

namespace csqf {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Knobs for the layered radio-access topology and its demand scenarios.
// Defaults reproduce the full-scale layout; presets scale it down.
struct IpranParams {
  // Layout. ASGs pair up within a domain; each CSG dual-homes to the two
  // ASGs of its pair, each BS hangs off one CSG. Domain rings connect the
  // domain's ASGs and RSGs; all RSGs form a full core mesh.
  int domains = 10;
  int asg_per_domain = 8;  // even
  int csg_per_asg_pair = 20;
  int bs_per_csg = 1;
  int rsg_per_domain = 2;
  int ring_nodes_per_chord = 4;  // one random ring shortcut per this many

  // Link tiers. BS and CSG share a cell site, so their link is a short
  // patch, not a 10-40 km access span; the access delay range applies to the
  // CSG uplinks.
  double access_gbps = 10.0;
  double agg_gbps = 40.0;
  double core_gbps_low = 100.0;
  double core_gbps_high = 400.0;
  double bs_csg_delay_ms_min = 0.002, bs_csg_delay_ms_max = 0.01;
  double access_delay_ms_min = 0.2, access_delay_ms_max = 0.8;
  double agg_delay_ms_min = 0.8, agg_delay_ms_max = 1.6;
  double core_delay_ms_min = 2.0, core_delay_ms_max = 10.0;

  // Cycle model and unit conversions.
  double cycle_duration_us = 10.0;
  double processing_us = 30.0;
  double detnet_share = 0.5;  // fraction of each cycle reserved for this traffic
  int du_size_bytes = 500;
  int hypercycle_len = 12;  // C
  int max_extra_shift = 1;  // R

  // Demands. Patterns emit packets*packet_du data units every `period`
  // cycles starting at a random phase; deadlines depend on the destination
  // class (same ASG pair / same domain / other domain).
  int demand_count = 250;
  std::array<int, 3> scenario_mix = {60, 30, 10};  // percent D1/D2/D3
  std::vector<int> period_choices = {2, 3, 6};     // must divide C
  std::vector<int> packets_choices = {1, 2};
  int packet_du = 1;
  std::array<double, 3> deadline_ms_d1 = {1, 2, 3};
  std::array<double, 3> deadline_ms_d2 = {4, 5, 6};
  std::array<double, 3> deadline_ms_d3 = {40, 50, 60};

  uint64_t seed = 1;
};

// Named presets: "tiny" (single domain, oracle-sized, C=4), "desk"
// (two domains, 100 nodes, planning-solver scale), "paper" (full scale).
IpranParams ipran_preset(std::string_view name);

// Applies a destination-class mix: "sc1" 60/30/10, "sc2" 100/0/0,
// "sc3" 34/33/33.
void apply_scenario(IpranParams& params, std::string_view name);

struct IpranTopology {
  std::vector<std::string> node_names;
  std::vector<Arc> arcs;
  struct BaseStation {
    NodeId node;
    int pair;    // global ASG-pair index
    int domain;
  };
  std::vector<BaseStation> base_stations;
};

// du per cycle for a line rate, after the cycle share reserved for this
// traffic class: floor(rate * cycle / (8 * du_size) * share).
int64_t capacity_du_per_cycle(double gbps, const IpranParams& params);

// ceil(propagation / cycle) + ceil(processing / cycle), at least 1.
int delay_to_cycles(double propagation_ms, const IpranParams& params);

IpranTopology generate_topology(const IpranParams& params);

std::vector<Demand> generate_demands(const IpranParams& params,
                                     const IpranTopology& topo);

Instance generate_instance(const IpranParams& params);

}  // namespace csqf
