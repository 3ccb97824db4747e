#pragma once

#include <string>

#include "exekg/rdf.hpp"
#include "exekg/schema.hpp"

namespace exekg {

// Graphviz rendering of a pipeline KG: one node per task, method and data
// entity, edges for hasNextTask/hasMethod/hasInput/hasOutput. Node and edge
// order is stable across runs.
std::string dot_export(const Graph& graph, const Schema& schema);

}  // namespace exekg
