#pragma once

#include <string>

#include "csqfplan/model.hpp"

namespace csqf {

// Versioned JSON file formats. Instance files carry params/nodes/arcs/demands,
// solution files carry per-demand arc/shift assignments and the objective.
// Parsers reject unknown format versions and malformed references with
// StructuralError; semantic problems (capacity, deadlines) are left to the
// validator.

inline constexpr int kFormatVersion = 1;

std::string instance_to_json(const Instance& inst, int indent = 2);
Instance instance_from_json(const std::string& text);

std::string solution_to_json(const Instance& inst, const PlanSolution& sol,
                             int indent = 2);
PlanSolution solution_from_json(const Instance& inst, const std::string& text);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);
PlanSolution load_solution(const Instance& inst, const std::string& path);
void save_solution(const Instance& inst, const PlanSolution& sol,
                   const std::string& path);

}  // namespace csqf
