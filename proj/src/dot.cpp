#include "exekg/dot.hpp"

#include <map>
#include <set>
#include <sstream>

#include "exekg/vocab.hpp"

namespace exekg {

namespace {

std::string node_id(const Iri& iri) {
  std::string id;
  for (char c : iri.local_name()) id += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return "n_" + id;
}

std::string type_label(const Graph& g, const Iri& iri) {
  for (const Term& t : g.objects_of(iri, iris::rdf_type()))
    if (const auto* type = std::get_if<Iri>(&t)) return std::string(type->local_name());
  return "?";
}

}  // namespace

std::string dot_export(const Graph& graph, const Schema& schema) {
  std::set<Iri> tasks, methods, entities;
  for (const Triple& t : graph.triples()) {
    if (t.predicate != iris::rdf_type()) continue;
    const auto* type = std::get_if<Iri>(&t.object);
    if (!type) continue;
    if (schema.is_task_type(*type)) tasks.insert(t.subject);
    if (schema.is_method_type(*type)) methods.insert(t.subject);
    if (*type == vocab::data_entity_class()) entities.insert(t.subject);
  }

  std::ostringstream out;
  out << "digraph pipeline {\n";
  out << "  rankdir=LR;\n";
  out << "  node [fontname=\"sans-serif\", fontsize=11];\n";
  for (const Iri& task : tasks)
    out << "  " << node_id(task) << " [shape=box, style=filled, fillcolor=\"#dbeafe\", label=\""
        << task.local_name() << "\\n" << type_label(graph, task) << "\"];\n";
  for (const Iri& method : methods)
    out << "  " << node_id(method) << " [shape=ellipse, style=filled, fillcolor=\"#dcfce7\", label=\""
        << method.local_name() << "\\n" << type_label(graph, method) << "\"];\n";
  for (const Iri& entity : entities)
    out << "  " << node_id(entity) << " [shape=note, style=filled, fillcolor=\"#fef9c3\", label=\""
        << entity.local_name() << "\"];\n";

  struct EdgeKind {
    const Iri& predicate;
    const char* attrs;
  };
  const EdgeKind kinds[] = {
      {vocab::has_next_task(), "[label=\"hasNextTask\", style=bold]"},
      {vocab::has_method(), "[label=\"hasMethod\"]"},
      {vocab::has_input(), "[label=\"hasInput\"]"},
      {vocab::has_output(), "[label=\"hasOutput\"]"},
  };
  for (const auto& kind : kinds) {
    std::set<std::pair<Iri, Iri>> edges;
    for (const Triple* t : graph.with_predicate(kind.predicate))
      if (const auto* object = std::get_if<Iri>(&t->object)) edges.insert({t->subject, *object});
    for (const auto& [from, to] : edges) {
      // hasInput is drawn entity -> task so data flows left to right.
      if (kind.predicate == vocab::has_input())
        out << "  " << node_id(to) << " -> " << node_id(from) << " " << kind.attrs << ";\n";
      else
        out << "  " << node_id(from) << " -> " << node_id(to) << " " << kind.attrs << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace exekg
