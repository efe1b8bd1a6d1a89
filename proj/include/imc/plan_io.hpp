#ifndef IMC_PLAN_IO_HPP
#define IMC_PLAN_IO_HPP

#include <string>

#include "imc/coordination.hpp"
#include "imc/executor.hpp"

namespace imc {

// Round-trippable JSON serialization of a motion plan. Serializing the
// result of plan_from_text reproduces the original text byte for byte;
// derived fields (first-visit bookkeeping, slot occupancy, costs) are
// reconstructed on load. plan_from_text throws ConfigError on malformed
// input; structural soundness is judged separately by check_admissible.
std::string plan_to_text(const MotionPlan& plan);
MotionPlan plan_from_text(const std::string& text);

// Human-readable plan rendering: the walk, the slot layout, placement
// legs, and every round column by column.
std::string plan_to_report(const MotionPlan& plan);

// Flat CSV: one row per robot per step per column.
std::string plan_to_csv(const MotionPlan& plan);

// Trace renderings. Numbers are printed with fixed precision so repeated
// runs produce byte-identical files.
std::string trace_to_report(const ExecutionTrace& trace);
std::string travels_to_csv(const ExecutionTrace& trace);
std::string meetings_to_csv(const ExecutionTrace& trace);
std::string waits_to_csv(const ExecutionTrace& trace);
std::string consensus_to_csv(const ExecutionTrace& trace);

}  // namespace imc

#endif
