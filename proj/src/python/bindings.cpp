#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "csqfplan/ipran.hpp"
#include "csqfplan/json_io.hpp"
#include "csqfplan/oracle.hpp"
#include "csqfplan/runner.hpp"
#include "csqfplan/validate.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace csqf;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  const py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

std::shared_ptr<Instance> generate(const std::string& preset,
                                   const std::string& scenario, int demands,
                                   uint64_t seed, int extra_shift,
                                   int packet_du) {
  IpranParams params = ipran_preset(preset);
  apply_scenario(params, scenario);
  if (demands >= 0) params.demand_count = demands;
  params.seed = seed;
  if (extra_shift >= 0) params.max_extra_shift = extra_shift;
  if (packet_du >= 1) params.packet_du = packet_du;
  return std::make_shared<Instance>(generate_instance(params));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cycle-scheduled deterministic-network planning core";

  py::register_exception<StructuralError>(m, "StructuralError",
                                          PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<LimitError>(m, "LimitError", PyExc_RuntimeError);
  py::register_exception<GenerationError>(m, "GenerationError",
                                          PyExc_RuntimeError);

  py::class_<Instance, std::shared_ptr<Instance>>(m, "Instance")
      .def_static("from_json",
                  [](const std::string& text) {
                    return std::make_shared<Instance>(instance_from_json(text));
                  })
      .def_static("load",
                  [](const std::string& path) {
                    return std::make_shared<Instance>(load_instance(path));
                  })
      .def("to_json", [](const Instance& i) { return instance_to_json(i); })
      .def("save",
           [](const Instance& i, const std::string& path) {
             save_instance(i, path);
           })
      .def_property_readonly("num_nodes", &Instance::num_nodes)
      .def_property_readonly("num_arcs", &Instance::num_arcs)
      .def_property_readonly("num_demands", &Instance::num_demands)
      .def_property_readonly("cycles", &Instance::cycles)
      .def_property_readonly("max_extra_shift", &Instance::max_extra_shift)
      .def_property_readonly("total_demand_du", [](const Instance& i) {
        int64_t total = 0;
        for (const Demand& d : i.demands()) total += total_bandwidth(d);
        return total;
      });

  py::class_<PlanSolution>(m, "Solution")
      .def_property_readonly("objective",
                             [](const PlanSolution& s) { return s.objective; })
      .def_property_readonly("accepted_demands",
                             [](const PlanSolution& s) {
                               return s.assignments.size();
                             })
      .def("to_json",
           [](const PlanSolution& s, const Instance& inst) {
             return solution_to_json(inst, s);
           })
      .def_static("from_json", [](const Instance& inst,
                                  const std::string& text) {
        return solution_from_json(inst, text);
      });

  m.def("generate", &generate, py::arg("preset"), py::arg("scenario") = "sc1",
        py::arg("demands") = -1, py::arg("seed") = 1,
        py::arg("extra_shift") = -1, py::arg("packet_du") = -1,
        "Build a seeded IPRAN-style instance from a preset");

  m.def(
      "solve",
      [](std::shared_ptr<Instance> inst, const std::string& algorithm,
         const std::string& order, int k, double epsilon, bool strengthen,
         int rr_runs, uint64_t seed) {
        SolveOptions options;
        options.algorithm = algorithm;
        options.order = order;
        options.k = k;
        options.epsilon = epsilon;
        options.strengthen = strengthen;
        options.rr_runs = rr_runs;
        options.seed = seed;
        const SolveResult result = run_solve(*inst, options);
        const py::object metrics = json_to_py(
            nlohmann::json::parse(metrics_json(*inst, options, result)));
        return py::make_tuple(result.solution, metrics);
      },
      py::arg("instance"), py::arg("algorithm") = "greedy",
      py::arg("order") = "input", py::arg("k") = 0,
      py::arg("epsilon") = 1e-6, py::arg("strengthen") = false,
      py::arg("rr_runs") = 50, py::arg("seed") = 0,
      "Run a planner; returns (solution, metrics)");

  m.def(
      "validate",
      [](const Instance& inst, const PlanSolution& sol) {
        return json_to_py(nlohmann::json::parse(validate(inst, sol).to_json()));
      },
      py::arg("instance"), py::arg("solution"));

  m.def(
      "oracle",
      [](const Instance& inst, size_t max_spaths) {
        OracleLimits limits;
        limits.max_spaths_per_demand = max_spaths;
        OracleResult result = brute_force_optimum(inst, limits);
        return result.solution;
      },
      py::arg("instance"), py::arg("max_spaths") = 64,
      "Provably optimal plan for oracle-sized instances");

  m.def(
      "path_delay",
      [](const Instance& inst, const PlanSolution& sol, int64_t demand_id) {
        const DemandId d = inst.find_demand(demand_id);
        if (d < 0) throw StructuralError("unknown demand id");
        const SPath* p = sol.assignment_for(d);
        if (!p) throw ModelError("demand has no assigned path");
        return path_delay(inst, *p);
      },
      py::arg("instance"), py::arg("solution"), py::arg("demand_id"),
      "End-to-end delay in cycles of the assigned path");
}
