#pragma once

#include <cstdint>

#include "mathkg/graph.hpp"

namespace mathkg {

// Random schema-conformant graph with exactly `entities` typed entities and
// `triples` triples (triples must be large enough for the structure, about
// 5x entities). Inverse edges are included, so the validator reports no
// errors. The first research problem is mmdb:GravitationalEffectsOnFruit so
// the fruit query can be run unchanged.
Graph synthetic_graph(size_t entities, size_t triples, uint64_t seed);

}  // namespace mathkg
