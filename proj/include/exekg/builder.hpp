#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exekg/rdf.hpp"
#include "exekg/schema.hpp"

namespace exekg {

// Reference to a data entity (user-created or task output) usable as a task
// input: the individual's IRI plus its declared data-structure tag.
using DataEntityRef = TypedRef;

struct TaskRef {
  Iri iri;
  Iri task_type;
  std::vector<DataEntityRef> outputs;  // in output-role order

  const DataEntityRef& output(std::size_t i = 0) const { return outputs.at(i); }
};

// A validated, frozen executable pipeline KG.
class PipelineKG {
 public:
  const Graph& graph() const { return graph_; }
  const Iri& pipeline_iri() const { return pipeline_iri_; }
  const Iri& start_task() const { return start_task_; }
  const std::string& dataset_path() const { return dataset_path_; }
  const std::vector<Iri>& task_order() const { return task_order_; }

 private:
  friend PipelineKG pipeline_from_graph(const Schema& schema, Graph graph);
  Graph graph_;
  Iri pipeline_iri_;
  Iri start_task_;
  std::string dataset_path_;
  std::vector<Iri> task_order_;
};

// Authoring API: creates data entities and tasks, links them per the schema,
// keeps the task chain linear, and checks compatibility eagerly on every
// add_task. Single-owner, not thread-safe.
class PipelineBuilder {
 public:
  // `name` must be a valid IRI local-name fragment ([A-Za-z_][A-Za-z0-9_]*).
  PipelineBuilder(const Schema& schema, const std::string& name, const std::string& dataset_path);

  // Adds the entity individual with source column, structure and semantics
  // literals. Entity names share one namespace with task output names.
  DataEntityRef create_data_entity(const std::string& name, const std::string& source_column,
                                   const std::string& structure, const std::string& semantics);

  // Appends a task to the chain: mints the task and its method individual,
  // attaches params and input slots, and mints one output entity per output
  // role (named by output_names). Rejects on any compatibility violation.
  TaskRef add_task(const Iri& task_type, const Iri& method_type,
                   const std::vector<DataEntityRef>& inputs,
                   const std::vector<std::pair<Iri, Literal>>& params,
                   const std::vector<std::string>& output_names);

  // Whole-graph validation, then freeze. Idempotent; the builder stays valid.
  PipelineKG finalize() const;

  const Graph& graph() const { return graph_; }
  const Iri& pipeline_iri() const { return pipeline_iri_; }
  const Schema& schema() const { return *schema_; }

 private:
  Iri mint(const std::string& suffix) const;

  const Schema* schema_;
  Graph graph_;
  std::string name_;
  Iri pipeline_iri_;
  std::optional<Iri> last_task_;
  int task_counter_ = 0;
  std::set<std::string> entity_names_;
  std::set<std::string> known_input_iris_;
};

// Every structural rule a pipeline graph must satisfy: exactly one pipeline
// individual with a dataset path, a linear acyclic hasNextTask chain from
// hasStartTask, well-formed tasks (method, slots, outputs), resolvable inputs
// produced before use, and per-task schema compatibility.
std::vector<Violation> validate_pipeline_graph(const Schema& schema, const Graph& graph);

// Validates and freezes; throws ValidationError listing every violation.
PipelineKG pipeline_from_graph(const Schema& schema, Graph graph);

void save_pipeline(const PipelineKG& pipeline, const std::filesystem::path& path);

// Parses, re-validates, freezes. A hand-edited invalid KG is rejected with
// the full violation list.
PipelineKG load_pipeline(const Schema& schema, const std::filesystem::path& path);

// The namespace minted pipeline individuals live under.
const std::string& pipeline_namespace();

}  // namespace exekg
