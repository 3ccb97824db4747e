#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exekg/rdf.hpp"

namespace exekg {

// One datatype property a method accepts, as declared by the schema.
struct ParamSpec {
  Iri property;
  Datatype datatype = Datatype::String;
  bool required = false;
  std::optional<Literal> default_value;
  int index = 0;
};

// One input position of a task type. A variadic role absorbs every input not
// claimed by the fixed roles; a task type has at most one variadic role.
struct InputRole {
  std::string name;
  std::set<std::string> allowed_structures;
  bool variadic = false;
  int min_count = 1;
  int index = 0;
};

struct OutputRole {
  std::string name;
  std::string structure;
  int index = 0;
};

struct IoSpec {
  std::vector<InputRole> inputs;    // sorted by index
  std::vector<OutputRole> outputs;  // sorted by index
};

// A reference to a data entity as seen by the compatibility check: its IRI
// and its declared data-structure tag.
struct TypedRef {
  Iri iri;
  std::string structure;
};

// Class/property model loaded from the shipped Turtle documents. Immutable
// after load; freely shareable across threads.
class Schema {
 public:
  const Graph& graph() const { return graph_; }
  const std::set<Iri>& task_types() const { return task_types_; }
  const std::set<Iri>& method_types() const { return method_types_; }
  const std::set<std::string>& data_structures() const { return data_structures_; }

  bool is_task_type(const Iri& iri) const { return task_types_.count(iri) != 0; }
  bool is_method_type(const Iri& iri) const { return method_types_.count(iri) != 0; }
  bool is_data_structure(const std::string& tag) const { return data_structures_.count(tag) != 0; }

  // The methods applicable to a task type. Throws ValidationError with
  // UNKNOWN_TASK_TYPE if the task type is not declared.
  const std::set<Iri>& methods_for_task(const Iri& task_type) const;

  const std::vector<ParamSpec>& param_specs(const Iri& method_type) const;
  const IoSpec& io_spec(const Iri& task_type) const;

  // Pure: empty result iff the method is applicable to the task, the inputs
  // fill every input role with matching structures, and the params are
  // complete and well-typed. Violations are data, not errors.
  std::vector<Violation> check_compatibility(const Iri& task_type, const Iri& method_type,
                                             const std::vector<TypedRef>& inputs,
                                             const std::vector<std::pair<Iri, Literal>>& params) const;

  // Assigns inputs to the task's input roles positionally (the variadic role
  // absorbs the surplus). Returns one role name per input, or nullopt when the
  // arity cannot fit.
  std::optional<std::vector<std::string>> assign_roles(const Iri& task_type,
                                                       std::size_t input_count) const;

  // In-code extension point: declares a new method type for an existing task
  // type, with the given parameter specs. The registry maps it to an
  // implementation separately.
  void extend_with_method(const Iri& task_type, const Iri& method_type,
                          std::vector<ParamSpec> params);

  // The four shipped Turtle documents, keyed by short name (ds, visu, stats, ml).
  static const std::vector<std::pair<std::string, std::string>>& builtin_documents();

 private:
  friend Schema load_builtin_schemata();
  friend Schema load_schema_from_graph(Graph g);

  Graph graph_;
  std::set<Iri> task_types_;
  std::set<Iri> method_types_;
  std::set<std::string> data_structures_;
  std::map<Iri, std::set<Iri>> compat_;              // task type -> method types
  std::map<Iri, std::vector<ParamSpec>> param_specs_;  // method type -> specs
  std::map<Iri, IoSpec> io_specs_;                   // task type -> roles
};

// Builds the schema from the four embedded Turtle documents. Idempotent.
// Throws Error if the embedded documents violate their own invariants.
Schema load_builtin_schemata();

// Internal: builds a Schema from an already-merged schema graph.
Schema load_schema_from_graph(Graph g);

}  // namespace exekg
