#ifndef IMC_CONFIG_HPP
#define IMC_CONFIG_HPP

#include <cstdint>
#include <string>

#include "imc/network.hpp"

namespace imc {

struct ProblemConfig {
  MobilityGraph graph;
  TeamStructure teams;
};

// Strict JSON configuration schema:
//   {
//     "locations": [{"id": 1, "coords": [x, y, ...]}, ...],
//     "edges":     [{"i": 1, "j": 2, "weight": 2.5}, ...],   // weight optional
//     "teams":     [{"members": [1, 2], "comm_points": [1, 2]}, ...],
//     "robots":    [{"start": 1, "speed": 1.0}, ...]         // speed optional
//   }
// All four top-level arrays are required; unknown fields anywhere are
// rejected. Throws ConfigError for unreadable files, malformed JSON, or
// schema violations. Semantic validity is judged separately by
// validate_network.
ProblemConfig load_config(const std::string& path);
ProblemConfig parse_config_text(const std::string& text);

std::string config_to_text(const MobilityGraph& graph, const TeamStructure& teams);
void save_config(const std::string& path, const MobilityGraph& graph,
                 const TeamStructure& teams);

// Whole-file helpers shared by every emitter; both throw ConfigError on
// I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Seeded random instance generation: `robots` robots, `teams` teams, and
// `locations` graph nodes. The generated team graph and mobility graph are
// both connected, every robot belongs to at least one team, communication
// sets are disjoint location clusters of size 1..4, robot starts follow the
// placement the planner assumes, and speeds vary per robot. The seed fully
// determines the instance. Throws DomainError("SizeInfeasible") when the
// requested sizes cannot produce a valid instance.
struct GenSpec {
  int robots = 5;
  int teams = 5;
  int locations = 20;
  double area = 40.0;  // coordinates fall in [0, area)^2
  std::uint64_t seed = 1;
};

ProblemConfig generate_instance(const GenSpec& spec);

}  // namespace imc

#endif
