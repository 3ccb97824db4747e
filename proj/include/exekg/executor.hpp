#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exekg/builder.hpp"
#include "exekg/ml.hpp"
#include "exekg/plot.hpp"
#include "exekg/rdf.hpp"
#include "exekg/schema.hpp"
#include "exekg/table.hpp"

namespace exekg {

using ModelValue = std::variant<KnnModel<double>, KnnModel<std::string>, LinRegModel, MlpModel>;

// A runtime value flowing between tasks, keyed by data-entity IRI.
using Value = std::variant<Column, SplitIndices, ModelValue, MetricValue, Canvas>;

// The data-structure tag a value realizes (NumericColumn, Model, ...).
std::string value_structure(const Value& v);

// Named-value store threading tables, columns, splits, models, metrics and
// canvases between tasks. Single-assignment: writing an IRI twice is an error.
class ExecutionContext {
 public:
  ExecutionContext(Table dataset, std::filesystem::path output_dir);

  const Table& dataset() const { return dataset_; }
  const std::filesystem::path& output_dir() const { return output_dir_; }

  void write(const Iri& iri, Value value);
  const Value& read(const Iri& iri) const;
  bool has(const Iri& iri) const { return values_.count(iri.str()) != 0; }

  void record_artifact(const std::filesystem::path& path) { artifacts_.push_back(path); }
  const std::vector<std::filesystem::path>& artifacts() const { return artifacts_; }
  const std::vector<std::string>& write_log() const { return write_log_; }

 private:
  Table dataset_;
  std::filesystem::path output_dir_;
  std::map<std::string, Value> values_;
  std::vector<std::string> write_log_;
  std::vector<std::filesystem::path> artifacts_;
};

struct ResolvedInput {
  Iri entity;
  std::string role;
  std::string structure;
};

struct ResolvedOutput {
  Iri entity;
  std::string role;
  std::string structure;
};

// A task read back from the graph: type, method, ordered inputs, params,
// outputs and the successor task.
struct ResolvedTask {
  Iri iri;
  Iri task_type;
  Iri method_iri;
  Iri method_type;
  std::vector<ResolvedInput> inputs;        // slot order
  std::map<std::string, Literal> params;    // property IRI -> value
  std::vector<ResolvedOutput> outputs;      // output-role order
  std::optional<Iri> next;
};

// Reads every field via basic-graph-pattern queries. Throws Error listing the
// missing or malformed triples.
ResolvedTask resolve_task(const Graph& graph, const Iri& task_iri, const Schema& schema);

// What a method implementation receives: the resolved task with schema
// defaults filled into params.
struct MethodCall {
  Iri task_iri;
  Iri task_type;
  Iri method_type;
  std::vector<ResolvedInput> inputs;
  std::map<std::string, Literal> params;
  std::vector<ResolvedOutput> outputs;

  const Literal& param(const Iri& property) const;
  std::vector<const ResolvedInput*> inputs_for_role(const std::string& role) const;
  const ResolvedInput& input_for_role(const std::string& role) const;  // exactly one
};

// Returns one Value per declared output, in output order.
using MethodImpl = std::function<std::vector<Value>(const MethodCall&, ExecutionContext&)>;

// Mapping from method-type IRI to native implementation; the extension point.
class MethodRegistry {
 public:
  // Duplicate registration is an error.
  void register_method(const Iri& method_type, MethodImpl impl);
  bool has(const Iri& method_type) const { return impls_.count(method_type.str()) != 0; }
  // Unregistered-method error naming the IRI.
  const MethodImpl& implementation(const Iri& method_type) const;
  std::vector<Iri> registered_methods() const;

 private:
  std::map<std::string, MethodImpl> impls_;
};

struct TaskRun {
  Iri task;
  Iri method_type;
  std::int64_t millis = 0;
};

struct ExecutionReport {
  std::vector<TaskRun> tasks;                    // in chain order
  std::map<std::string, MetricValue> metrics;    // metric entity name -> value
  std::vector<std::string> artifacts;            // emitted files
};

std::string report_to_json(const ExecutionReport& report);

// Implementations for every shipped method type.
MethodRegistry default_registry();

// Startup self-check: every method type the schema declares has a
// registration. Throws Error when one is missing.
void verify_registry_complete(const MethodRegistry& registry, const Schema& schema);

// Traverses the chain from the start task, resolving and dispatching each
// task's method. Dataset columns referenced by entities are bound into the
// context up front. Aborts on the first task error.
ExecutionReport execute(const PipelineKG& pipeline, const Schema& schema,
                        const MethodRegistry& registry, Table dataset,
                        const std::filesystem::path& output_dir);

// Convenience overload loading the CSV named by the pipeline's dataset path.
ExecutionReport execute(const PipelineKG& pipeline, const Schema& schema,
                        const MethodRegistry& registry,
                        const std::filesystem::path& output_dir);

}  // namespace exekg
