#pragma once

#include <string>

#include "exekg/rdf.hpp"

// IRI constants for the shipped vocabulary. The namespaces mirror the
// upper/bottom schema split: one upper data-science namespace plus one
// namespace per task family.
namespace exekg::vocab {

inline const std::string kDsNs = "https://exekg.example/ds#";
inline const std::string kVisuNs = "https://exekg.example/visu#";
inline const std::string kStatsNs = "https://exekg.example/stats#";
inline const std::string kMlNs = "https://exekg.example/ml#";
inline const std::string kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kOwlNs = "http://www.w3.org/2002/07/owl#";

inline Iri ds(const std::string& local) { return Iri(kDsNs + local); }
inline Iri visu(const std::string& local) { return Iri(kVisuNs + local); }
inline Iri stats(const std::string& local) { return Iri(kStatsNs + local); }
inline Iri ml(const std::string& local) { return Iri(kMlNs + local); }

#define EXEKG_DS_IRI(name, local)            \
  inline const Iri& name() {                 \
    static const Iri iri{kDsNs + local};     \
    return iri;                              \
  }

EXEKG_DS_IRI(pipeline_class, "Pipeline")
EXEKG_DS_IRI(task_class, "Task")
EXEKG_DS_IRI(method_class, "Method")
EXEKG_DS_IRI(data_entity_class, "DataEntity")
EXEKG_DS_IRI(input_slot_class, "InputSlot")

EXEKG_DS_IRI(has_start_task, "hasStartTask")
EXEKG_DS_IRI(has_next_task, "hasNextTask")
EXEKG_DS_IRI(has_method, "hasMethod")
EXEKG_DS_IRI(has_input, "hasInput")
EXEKG_DS_IRI(has_output, "hasOutput")
EXEKG_DS_IRI(has_input_slot, "hasInputSlot")
EXEKG_DS_IRI(slot_content, "slotContent")
EXEKG_DS_IRI(slot_index, "slotIndex")
EXEKG_DS_IRI(slot_role, "slotRole")
EXEKG_DS_IRI(output_role, "outputRole")

EXEKG_DS_IRI(has_input_data_path, "hasInputDataPath")
EXEKG_DS_IRI(has_source, "hasSource")
EXEKG_DS_IRI(has_data_structure, "hasDataStructure")
EXEKG_DS_IRI(has_data_semantics, "hasDataSemantics")

// Schema-description vocabulary (used by the shipped .ttl documents).
EXEKG_DS_IRI(implements_task, "implementsTask")
EXEKG_DS_IRI(has_param, "hasParam")
EXEKG_DS_IRI(on_property, "onProperty")
EXEKG_DS_IRI(param_datatype, "paramDatatype")
EXEKG_DS_IRI(param_required, "required")
EXEKG_DS_IRI(default_value, "defaultValue")
EXEKG_DS_IRI(param_index, "paramIndex")
EXEKG_DS_IRI(has_input_role, "hasInputRole")
EXEKG_DS_IRI(has_output_role, "hasOutputRole")
EXEKG_DS_IRI(role_name, "roleName")
EXEKG_DS_IRI(allows_structure, "allowsStructure")
EXEKG_DS_IRI(produces_structure, "producesStructure")
EXEKG_DS_IRI(role_variadic, "variadic")
EXEKG_DS_IRI(role_index, "roleIndex")
EXEKG_DS_IRI(data_structure_class, "DataStructure")

#undef EXEKG_DS_IRI

inline const Iri& rdfs_subclass_of() {
  static const Iri iri{kRdfsNs + "subClassOf"};
  return iri;
}
inline const Iri& owl_class() {
  static const Iri iri{kOwlNs + "Class"};
  return iri;
}

// Data-structure tags carried by ds:hasDataStructure literals.
inline const std::string kNumericColumn = "NumericColumn";
inline const std::string kCategoricalColumn = "CategoricalColumn";
inline const std::string kTableStructure = "Table";
inline const std::string kSplitIndices = "SplitIndices";
inline const std::string kModel = "Model";
inline const std::string kMetric = "Metric";
inline const std::string kCanvas = "Canvas";

}  // namespace exekg::vocab
