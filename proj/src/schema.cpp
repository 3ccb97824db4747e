#include "exekg/schema.hpp"

#include <algorithm>

#include "exekg/vocab.hpp"

namespace exekg {

namespace {

[[noreturn]] void corrupt(const std::string& what) {
  throw Error("schema document corrupt: " + what);
}

std::string require_string(const Graph& g, const Iri& s, const Iri& p) {
  auto term = g.object_of(s, p);
  if (!term) corrupt("<" + s.str() + "> needs exactly one " + std::string(p.local_name()));
  const auto* lit = std::get_if<Literal>(&*term);
  if (!lit || lit->datatype() != Datatype::String)
    corrupt("<" + s.str() + "> " + std::string(p.local_name()) + " must be a string literal");
  return lit->lexical();
}

std::int64_t require_integer(const Graph& g, const Iri& s, const Iri& p) {
  auto term = g.object_of(s, p);
  if (!term) corrupt("<" + s.str() + "> needs exactly one " + std::string(p.local_name()));
  const auto* lit = std::get_if<Literal>(&*term);
  if (!lit || lit->datatype() != Datatype::Integer)
    corrupt("<" + s.str() + "> " + std::string(p.local_name()) + " must be an integer literal");
  return lit->as_integer();
}

bool require_boolean(const Graph& g, const Iri& s, const Iri& p) {
  auto term = g.object_of(s, p);
  if (!term) corrupt("<" + s.str() + "> needs exactly one " + std::string(p.local_name()));
  const auto* lit = std::get_if<Literal>(&*term);
  if (!lit || lit->datatype() != Datatype::Boolean)
    corrupt("<" + s.str() + "> " + std::string(p.local_name()) + " must be a boolean literal");
  return lit->as_boolean();
}

Iri require_iri(const Graph& g, const Iri& s, const Iri& p) {
  auto term = g.object_of(s, p);
  if (!term) corrupt("<" + s.str() + "> needs exactly one " + std::string(p.local_name()));
  const auto* iri = std::get_if<Iri>(&*term);
  if (!iri) corrupt("<" + s.str() + "> " + std::string(p.local_name()) + " must be an IRI");
  return *iri;
}

Datatype datatype_from_tag(const std::string& tag) {
  if (tag == "string") return Datatype::String;
  if (tag == "integer") return Datatype::Integer;
  if (tag == "double") return Datatype::Double;
  if (tag == "boolean") return Datatype::Boolean;
  corrupt("unknown parameter datatype '" + tag + "'");
}

bool declared_in(const Graph& g, const Iri& iri) { return !g.with_subject(iri).empty(); }

}  // namespace

Schema load_schema_from_graph(Graph g) {
  Schema schema;
  schema.graph_ = std::move(g);
  const Graph& graph = schema.graph_;

  for (const Iri& t : graph.subjects_with(vocab::rdfs_subclass_of(), Term(vocab::task_class())))
    schema.task_types_.insert(t);
  for (const Iri& m : graph.subjects_with(vocab::rdfs_subclass_of(), Term(vocab::method_class())))
    schema.method_types_.insert(m);
  for (const Iri& s :
       graph.subjects_with(iris::rdf_type(), Term(vocab::data_structure_class())))
    schema.data_structures_.insert(std::string(s.local_name()));

  for (const Triple* t : graph.with_predicate(vocab::implements_task())) {
    const auto* task = std::get_if<Iri>(&t->object);
    if (!task) corrupt("ds:implementsTask object must be an IRI");
    if (!schema.task_types_.count(*task))
      corrupt("<" + task->str() + "> used in compatibility but not declared a task type");
    if (!schema.method_types_.count(t->subject))
      corrupt("<" + t->subject.str() + "> used in compatibility but not declared a method type");
    schema.compat_[*task].insert(t->subject);
  }

  for (const Iri& method : schema.method_types_) {
    bool applicable = false;
    for (const auto& [task, methods] : schema.compat_) applicable |= methods.count(method) != 0;
    if (!applicable) corrupt("method <" + method.str() + "> implements no task");

    std::vector<ParamSpec> specs;
    for (const Term& term : graph.objects_of(method, vocab::has_param())) {
      const auto* spec_iri = std::get_if<Iri>(&term);
      if (!spec_iri) corrupt("ds:hasParam object must be an IRI");
      ParamSpec spec;
      spec.property = require_iri(graph, *spec_iri, vocab::on_property());
      if (!declared_in(graph, spec.property))
        corrupt("param property <" + spec.property.str() + "> is not declared");
      spec.datatype = datatype_from_tag(require_string(graph, *spec_iri, vocab::param_datatype()));
      spec.required = require_boolean(graph, *spec_iri, vocab::param_required());
      spec.index = static_cast<int>(require_integer(graph, *spec_iri, vocab::param_index()));
      if (auto dflt = graph.object_of(*spec_iri, vocab::default_value())) {
        const auto* lit = std::get_if<Literal>(&*dflt);
        if (!lit) corrupt("ds:defaultValue must be a literal");
        // Re-validate the default under the declared datatype.
        spec.default_value = Literal::typed(lit->lexical(), spec.datatype);
      }
      if (spec.required && spec.default_value)
        corrupt("required param <" + spec.property.str() + "> must not carry a default");
      specs.push_back(std::move(spec));
    }
    std::sort(specs.begin(), specs.end(),
              [](const ParamSpec& a, const ParamSpec& b) { return a.index < b.index; });
    schema.param_specs_[method] = std::move(specs);
  }

  for (const Iri& task : schema.task_types_) {
    IoSpec io;
    for (const Term& term : graph.objects_of(task, vocab::has_input_role())) {
      const auto* role_iri = std::get_if<Iri>(&term);
      if (!role_iri) corrupt("ds:hasInputRole object must be an IRI");
      InputRole role;
      role.name = require_string(graph, *role_iri, vocab::role_name());
      for (const Term& s : graph.objects_of(*role_iri, vocab::allows_structure())) {
        const auto* lit = std::get_if<Literal>(&s);
        if (!lit || lit->datatype() != Datatype::String)
          corrupt("ds:allowsStructure must be a string literal");
        if (!schema.data_structures_.count(lit->lexical()))
          corrupt("input role references unknown structure '" + lit->lexical() + "'");
        role.allowed_structures.insert(lit->lexical());
      }
      if (role.allowed_structures.empty())
        corrupt("input role <" + role_iri->str() + "> allows no structure");
      role.variadic = require_boolean(graph, *role_iri, vocab::role_variadic());
      role.index = static_cast<int>(require_integer(graph, *role_iri, vocab::role_index()));
      io.inputs.push_back(std::move(role));
    }
    for (const Term& term : graph.objects_of(task, vocab::has_output_role())) {
      const auto* role_iri = std::get_if<Iri>(&term);
      if (!role_iri) corrupt("ds:hasOutputRole object must be an IRI");
      OutputRole role;
      role.name = require_string(graph, *role_iri, vocab::role_name());
      role.structure = require_string(graph, *role_iri, vocab::produces_structure());
      if (!schema.data_structures_.count(role.structure))
        corrupt("output role references unknown structure '" + role.structure + "'");
      role.index = static_cast<int>(require_integer(graph, *role_iri, vocab::role_index()));
      io.outputs.push_back(std::move(role));
    }
    auto by_index = [](const auto& a, const auto& b) { return a.index < b.index; };
    std::sort(io.inputs.begin(), io.inputs.end(), by_index);
    std::sort(io.outputs.begin(), io.outputs.end(), by_index);
    int variadic_count = 0;
    for (const auto& r : io.inputs) variadic_count += r.variadic ? 1 : 0;
    if (variadic_count > 1)
      corrupt("task <" + task.str() + "> declares more than one variadic input role");
    schema.io_specs_[task] = std::move(io);
  }

  return schema;
}

Schema load_builtin_schemata() {
  Graph merged;
  for (const auto& [name, text] : Schema::builtin_documents()) {
    Graph doc = parse_turtle(text);
    merged.add_all(doc);
  }
  return load_schema_from_graph(std::move(merged));
}

const std::set<Iri>& Schema::methods_for_task(const Iri& task_type) const {
  auto it = compat_.find(task_type);
  if (it == compat_.end())
    throw ValidationError({Violation{ViolationCode::UnknownTaskType,
                                     "unknown task type",
                                     {task_type.str()}}});
  return it->second;
}

const std::vector<ParamSpec>& Schema::param_specs(const Iri& method_type) const {
  auto it = param_specs_.find(method_type);
  if (it == param_specs_.end())
    throw ValidationError({Violation{ViolationCode::UnknownMethodType,
                                     "unknown method type",
                                     {method_type.str()}}});
  return it->second;
}

const IoSpec& Schema::io_spec(const Iri& task_type) const {
  auto it = io_specs_.find(task_type);
  if (it == io_specs_.end())
    throw ValidationError({Violation{ViolationCode::UnknownTaskType,
                                     "unknown task type",
                                     {task_type.str()}}});
  return it->second;
}

std::optional<std::vector<std::string>> Schema::assign_roles(const Iri& task_type,
                                                             std::size_t input_count) const {
  const IoSpec& io = io_spec(task_type);
  std::size_t fixed = 0;
  const InputRole* variadic = nullptr;
  for (const auto& role : io.inputs) {
    if (role.variadic)
      variadic = &role;
    else
      fixed++;
  }
  std::size_t variadic_take = 0;
  if (variadic) {
    if (input_count < fixed + static_cast<std::size_t>(variadic->min_count)) return std::nullopt;
    variadic_take = input_count - fixed;
  } else if (input_count != fixed) {
    return std::nullopt;
  }

  std::vector<std::string> assignment;
  assignment.reserve(input_count);
  for (const auto& role : io.inputs) {
    std::size_t take = role.variadic ? variadic_take : 1;
    for (std::size_t i = 0; i < take; i++) assignment.push_back(role.name);
  }
  return assignment;
}

std::vector<Violation> Schema::check_compatibility(
    const Iri& task_type, const Iri& method_type, const std::vector<TypedRef>& inputs,
    const std::vector<std::pair<Iri, Literal>>& params) const {
  std::vector<Violation> violations;

  if (!is_task_type(task_type)) {
    violations.push_back({ViolationCode::UnknownTaskType, "unknown task type", {task_type.str()}});
    return violations;
  }
  if (!is_method_type(method_type)) {
    violations.push_back(
        {ViolationCode::UnknownMethodType, "unknown method type", {method_type.str()}});
    return violations;
  }
  const auto& methods = compat_.at(task_type);
  if (!methods.count(method_type)) {
    violations.push_back({ViolationCode::MethodNotApplicable,
                          "method is not applicable to task type",
                          {method_type.str(), task_type.str()}});
    return violations;
  }

  const IoSpec& io = io_specs_.at(task_type);
  auto assignment = assign_roles(task_type, inputs.size());
  if (!assignment) {
    violations.push_back({ViolationCode::InputArityMismatch,
                          "task type takes a different number of inputs (got " +
                              std::to_string(inputs.size()) + ")",
                          {task_type.str()}});
  } else {
    std::map<std::string, const InputRole*> roles_by_name;
    for (const auto& role : io.inputs) roles_by_name[role.name] = &role;
    for (std::size_t i = 0; i < inputs.size(); i++) {
      const InputRole* role = roles_by_name.at((*assignment)[i]);
      if (!role->allowed_structures.count(inputs[i].structure))
        violations.push_back({ViolationCode::InputStructureMismatch,
                              "input " + std::to_string(i) + " has structure '" +
                                  inputs[i].structure + "' but role '" + role->name +
                                  "' expects one of its allowed structures",
                              {inputs[i].iri.str()}});
    }
  }

  const auto& specs = param_specs_.at(method_type);
  std::set<std::string> seen;
  for (const auto& [property, literal] : params) {
    const ParamSpec* spec = nullptr;
    for (const auto& s : specs)
      if (s.property == property) spec = &s;
    if (!spec) {
      violations.push_back(
          {ViolationCode::UnknownParam, "method does not take this parameter", {property.str()}});
      continue;
    }
    if (!seen.insert(property.str()).second) {
      violations.push_back(
          {ViolationCode::DuplicateParam, "parameter supplied more than once", {property.str()}});
      continue;
    }
    if (literal.datatype() != spec->datatype)
      violations.push_back({ViolationCode::ParamTypeMismatch,
                            std::string("parameter must be ") + to_string(spec->datatype) +
                                ", got " + to_string(literal.datatype()),
                            {property.str()}});
  }
  for (const auto& spec : specs) {
    if (!spec.required) continue;
    if (!seen.count(spec.property.str()))
      violations.push_back(
          {ViolationCode::MissingParam, "required parameter missing", {spec.property.str()}});
  }

  return violations;
}

void Schema::extend_with_method(const Iri& task_type, const Iri& method_type,
                                std::vector<ParamSpec> params) {
  if (!is_task_type(task_type))
    throw ValidationError(
        {Violation{ViolationCode::UnknownTaskType, "unknown task type", {task_type.str()}}});
  if (is_method_type(method_type))
    throw Error("method type <" + method_type.str() + "> is already declared");
  std::sort(params.begin(), params.end(),
            [](const ParamSpec& a, const ParamSpec& b) { return a.index < b.index; });
  method_types_.insert(method_type);
  compat_[task_type].insert(method_type);
  param_specs_[method_type] = std::move(params);
  graph_.add({method_type, vocab::rdfs_subclass_of(), Term(vocab::method_class())});
  graph_.add({method_type, vocab::implements_task(), Term(task_type)});
}

}  // namespace exekg
