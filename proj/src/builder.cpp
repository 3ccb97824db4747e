#include "exekg/builder.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "exekg/vocab.hpp"

namespace exekg {

namespace {

const std::string kPipelineNs = "https://exekg.example/pipelines#";

bool valid_fragment(const std::string& s) {
  if (s.empty()) return false;
  auto start = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!start(s[0])) return false;
  return std::all_of(s.begin(), s.end(),
                     [&](char c) { return start(c) || (c >= '0' && c <= '9'); });
}

[[noreturn]] void reject(ViolationCode code, const std::string& message,
                         std::vector<std::string> iris = {}) {
  throw ValidationError({Violation{code, message, std::move(iris)}});
}

std::optional<std::string> string_object(const Graph& g, const Iri& s, const Iri& p) {
  auto term = g.object_of(s, p);
  if (!term) return std::nullopt;
  const auto* lit = std::get_if<Literal>(&*term);
  if (!lit || lit->datatype() != Datatype::String) return std::nullopt;
  return lit->lexical();
}

}  // namespace

const std::string& pipeline_namespace() { return kPipelineNs; }

PipelineBuilder::PipelineBuilder(const Schema& schema, const std::string& name,
                                 const std::string& dataset_path)
    : schema_(&schema), name_(name) {
  if (!valid_fragment(name))
    reject(ViolationCode::InvalidName,
           "pipeline name must match [A-Za-z_][A-Za-z0-9_]*, got '" + name + "'");
  if (dataset_path.empty())
    reject(ViolationCode::MissingDataPath, "pipeline needs an input dataset path");
  pipeline_iri_ = Iri(kPipelineNs + name);

  graph_.register_prefix("ds", vocab::kDsNs);
  graph_.register_prefix("ml", vocab::kMlNs);
  graph_.register_prefix("pipe", kPipelineNs);
  graph_.register_prefix("stats", vocab::kStatsNs);
  graph_.register_prefix("visu", vocab::kVisuNs);

  graph_.add({pipeline_iri_, iris::rdf_type(), Term(vocab::pipeline_class())});
  graph_.add({pipeline_iri_, vocab::has_input_data_path(), Term(Literal::str(dataset_path))});
}

Iri PipelineBuilder::mint(const std::string& suffix) const {
  return Iri(kPipelineNs + name_ + "_" + suffix);
}

DataEntityRef PipelineBuilder::create_data_entity(const std::string& name,
                                                  const std::string& source_column,
                                                  const std::string& structure,
                                                  const std::string& semantics) {
  if (!valid_fragment(name))
    reject(ViolationCode::InvalidName,
           "entity name must match [A-Za-z_][A-Za-z0-9_]*, got '" + name + "'");
  if (entity_names_.count(name))
    reject(ViolationCode::DuplicateEntity, "entity name '" + name + "' is already in use");
  if (!schema_->is_data_structure(structure))
    reject(ViolationCode::UnknownStructure, "unknown data structure '" + structure + "'");

  Iri iri = mint("entity_" + name);
  graph_.add({iri, iris::rdf_type(), Term(vocab::data_entity_class())});
  graph_.add({iri, vocab::has_source(), Term(Literal::str(source_column))});
  graph_.add({iri, vocab::has_data_structure(), Term(Literal::str(structure))});
  graph_.add({iri, vocab::has_data_semantics(), Term(Literal::str(semantics))});

  entity_names_.insert(name);
  known_input_iris_.insert(iri.str());
  return DataEntityRef{iri, structure};
}

TaskRef PipelineBuilder::add_task(const Iri& task_type, const Iri& method_type,
                                  const std::vector<DataEntityRef>& inputs,
                                  const std::vector<std::pair<Iri, Literal>>& params,
                                  const std::vector<std::string>& output_names) {
  for (const auto& input : inputs)
    if (!known_input_iris_.count(input.iri.str()))
      reject(ViolationCode::UnknownIri, "input does not exist in this pipeline",
             {input.iri.str()});

  auto violations = schema_->check_compatibility(task_type, method_type, inputs, params);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const IoSpec& io = schema_->io_spec(task_type);
  if (output_names.size() != io.outputs.size())
    reject(ViolationCode::OutputArityMismatch,
           "task type produces " + std::to_string(io.outputs.size()) + " output(s), " +
               std::to_string(output_names.size()) + " name(s) given",
           {task_type.str()});
  for (const auto& name : output_names) {
    if (!valid_fragment(name))
      reject(ViolationCode::InvalidName,
             "output name must match [A-Za-z_][A-Za-z0-9_]*, got '" + name + "'");
    if (entity_names_.count(name))
      reject(ViolationCode::DuplicateEntity, "entity name '" + name + "' is already in use");
  }

  task_counter_++;
  Iri task = mint("task_" + std::to_string(task_counter_));
  graph_.add({task, iris::rdf_type(), Term(task_type)});

  if (last_task_)
    graph_.add({*last_task_, vocab::has_next_task(), Term(task)});
  else
    graph_.add({pipeline_iri_, vocab::has_start_task(), Term(task)});
  last_task_ = task;

  Iri method = mint("task_" + std::to_string(task_counter_) + "_method");
  graph_.add({task, vocab::has_method(), Term(method)});
  graph_.add({method, iris::rdf_type(), Term(method_type)});
  for (const auto& [property, literal] : params)
    graph_.add({method, property, Term(literal)});

  auto roles = schema_->assign_roles(task_type, inputs.size());
  for (std::size_t j = 0; j < inputs.size(); j++) {
    graph_.add({task, vocab::has_input(), Term(inputs[j].iri)});
    Iri slot = mint("task_" + std::to_string(task_counter_) + "_in_" + std::to_string(j));
    graph_.add({task, vocab::has_input_slot(), Term(slot)});
    graph_.add({slot, iris::rdf_type(), Term(vocab::input_slot_class())});
    graph_.add({slot, vocab::slot_index(), Term(Literal::integer(static_cast<std::int64_t>(j)))});
    graph_.add({slot, vocab::slot_role(), Term(Literal::str((*roles)[j]))});
    graph_.add({slot, vocab::slot_content(), Term(inputs[j].iri)});
  }

  TaskRef ref{task, task_type, {}};
  for (std::size_t i = 0; i < io.outputs.size(); i++) {
    const OutputRole& role = io.outputs[i];
    Iri entity = mint("entity_" + output_names[i]);
    graph_.add({entity, iris::rdf_type(), Term(vocab::data_entity_class())});
    graph_.add({entity, vocab::has_data_structure(), Term(Literal::str(role.structure))});
    graph_.add({entity, vocab::output_role(), Term(Literal::str(role.name))});
    graph_.add({task, vocab::has_output(), Term(entity)});
    entity_names_.insert(output_names[i]);
    known_input_iris_.insert(entity.str());
    ref.outputs.push_back(DataEntityRef{entity, role.structure});
  }
  return ref;
}

PipelineKG PipelineBuilder::finalize() const {
  if (task_counter_ == 0)
    reject(ViolationCode::EmptyPipeline, "pipeline has no tasks", {pipeline_iri_.str()});
  return pipeline_from_graph(*schema_, graph_);
}

// ---------------------------------------------------------------------------
// Whole-graph validation

namespace {

struct TaskFacts {
  Iri iri;
  std::optional<Iri> task_type;
  std::optional<Iri> method_iri;
  std::optional<Iri> method_type;
  std::vector<TypedRef> inputs;  // in slot order, structure resolved
  std::vector<std::pair<Iri, Literal>> params;
  bool slots_ok = true;
};

class Validator {
 public:
  Validator(const Schema& schema, const Graph& graph) : schema_(schema), graph_(graph) {}

  std::vector<Violation> run() {
    find_pipeline();
    collect_tasks();
    if (tasks_.empty()) {
      add(ViolationCode::EmptyPipeline, "pipeline has no tasks");
      return std::move(violations_);
    }
    walk_chain();
    for (const Iri& task : tasks_) check_task(task);
    return std::move(violations_);
  }

  // Valid only after a clean run().
  Iri pipeline_iri() const { return pipeline_; }
  std::string dataset_path() const { return dataset_path_; }
  std::vector<Iri> order() const { return order_; }

 private:
  void add(ViolationCode code, const std::string& message, std::vector<std::string> iris = {}) {
    violations_.push_back({code, message, std::move(iris)});
  }

  void find_pipeline() {
    auto pipelines = graph_.subjects_with(iris::rdf_type(), Term(vocab::pipeline_class()));
    if (pipelines.size() != 1) {
      add(ViolationCode::MissingPipeline,
          "expected exactly one ds:Pipeline individual, found " +
              std::to_string(pipelines.size()));
      return;
    }
    pipeline_ = pipelines[0];
    if (auto path = string_object(graph_, pipeline_, vocab::has_input_data_path()))
      dataset_path_ = *path;
    else
      add(ViolationCode::MissingDataPath, "pipeline has no ds:hasInputDataPath",
          {pipeline_.str()});
  }

  void collect_tasks() {
    for (const Iri& type : schema_.task_types())
      for (const Iri& task : graph_.subjects_with(iris::rdf_type(), Term(type)))
        tasks_.insert(task);
  }

  bool is_task(const Iri& iri) const { return tasks_.count(iri) != 0; }

  void walk_chain() {
    if (pipeline_.str().empty()) return;
    auto starts = graph_.objects_of(pipeline_, vocab::has_start_task());
    if (starts.size() != 1) {
      add(starts.empty() ? ViolationCode::MissingStartTask : ViolationCode::NonlinearChain,
          "pipeline must designate exactly one start task, found " +
              std::to_string(starts.size()),
          {pipeline_.str()});
      return;
    }
    const auto* start = std::get_if<Iri>(&starts[0]);
    if (!start || !is_task(*start)) {
      add(ViolationCode::MissingStartTask, "ds:hasStartTask does not point at a task",
          {pipeline_.str()});
      return;
    }

    // Multiple incoming successor edges are nonlinear even when unreachable.
    std::map<std::string, int> incoming;
    for (const Triple* t : graph_.with_predicate(vocab::has_next_task()))
      if (const auto* next = std::get_if<Iri>(&t->object)) incoming[next->str()]++;
    for (const auto& [iri, count] : incoming)
      if (count > 1)
        add(ViolationCode::NonlinearChain,
            "task has " + std::to_string(count) + " incoming ds:hasNextTask edges", {iri});

    std::set<std::string> visited;
    Iri current = *start;
    while (true) {
      if (visited.count(current.str())) {
        add(ViolationCode::Cycle, "ds:hasNextTask chain revisits a task", {current.str()});
        break;
      }
      visited.insert(current.str());
      order_.push_back(current);
      position_[current.str()] = order_.size() - 1;

      auto nexts = graph_.objects_of(current, vocab::has_next_task());
      if (nexts.empty()) break;
      if (nexts.size() > 1) {
        add(ViolationCode::NonlinearChain,
            "task has " + std::to_string(nexts.size()) + " outgoing ds:hasNextTask edges",
            {current.str()});
        break;
      }
      const auto* next = std::get_if<Iri>(&nexts[0]);
      if (!next || !is_task(*next)) {
        add(ViolationCode::MalformedTask, "ds:hasNextTask does not point at a task",
            {current.str()});
        break;
      }
      current = *next;
    }

    for (const Iri& task : tasks_)
      if (!visited.count(task.str()))
        add(ViolationCode::UnreachableTask, "task is not reachable from the start task",
            {task.str()});
  }

  TaskFacts resolve_facts(const Iri& task) {
    TaskFacts facts;
    facts.iri = task;

    std::vector<Iri> types;
    for (const Term& t : graph_.objects_of(task, iris::rdf_type()))
      if (const auto* type = std::get_if<Iri>(&t); type && schema_.is_task_type(*type))
        types.push_back(*type);
    if (types.size() != 1)
      add(ViolationCode::MalformedTask, "task must have exactly one task type", {task.str()});
    else
      facts.task_type = types[0];

    auto methods = graph_.objects_of(task, vocab::has_method());
    if (methods.empty()) {
      add(ViolationCode::MissingMethod, "task has no ds:hasMethod", {task.str()});
    } else if (methods.size() > 1) {
      add(ViolationCode::MalformedTask, "task has more than one ds:hasMethod", {task.str()});
    } else if (const auto* method = std::get_if<Iri>(&methods[0])) {
      facts.method_iri = *method;
      std::vector<Iri> mtypes;
      for (const Term& t : graph_.objects_of(*method, iris::rdf_type()))
        if (const auto* type = std::get_if<Iri>(&t); type && schema_.is_method_type(*type))
          mtypes.push_back(*type);
      if (mtypes.size() != 1)
        add(ViolationCode::UnknownMethodType,
            "method individual must have exactly one declared method type", {method->str()});
      else
        facts.method_type = mtypes[0];

      for (const Triple* t : graph_.with_subject(*method)) {
        if (t->predicate == iris::rdf_type()) continue;
        if (const auto* lit = std::get_if<Literal>(&t->object))
          facts.params.emplace_back(t->predicate, *lit);
        else
          add(ViolationCode::MalformedTask, "method parameter value must be a literal",
              {method->str(), t->predicate.str()});
      }
      std::sort(facts.params.begin(), facts.params.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    } else {
      add(ViolationCode::MissingMethod, "ds:hasMethod must point at an individual", {task.str()});
    }

    // Input slots carry the order the roles were bound in.
    std::map<std::int64_t, Iri> by_index;
    for (const Term& t : graph_.objects_of(task, vocab::has_input_slot())) {
      const auto* slot = std::get_if<Iri>(&t);
      if (!slot) {
        add(ViolationCode::MalformedTask, "ds:hasInputSlot must point at an individual",
            {task.str()});
        facts.slots_ok = false;
        continue;
      }
      auto index_term = graph_.object_of(*slot, vocab::slot_index());
      const Literal* index_lit =
          index_term ? std::get_if<Literal>(&*index_term) : nullptr;
      if (!index_lit || index_lit->datatype() != Datatype::Integer) {
        add(ViolationCode::MalformedTask, "input slot needs one integer ds:slotIndex",
            {slot->str()});
        facts.slots_ok = false;
        continue;
      }
      if (!by_index.emplace(index_lit->as_integer(), *slot).second) {
        add(ViolationCode::MalformedTask, "duplicate input slot index", {slot->str()});
        facts.slots_ok = false;
      }
    }
    std::int64_t expected = 0;
    for (const auto& [index, slot] : by_index) {
      if (index != expected++) {
        add(ViolationCode::MalformedTask, "input slot indexes must be contiguous from 0",
            {task.str()});
        facts.slots_ok = false;
        break;
      }
    }
    if (facts.slots_ok) {
      for (const auto& [index, slot] : by_index) {
        auto content = graph_.object_of(slot, vocab::slot_content());
        const Iri* entity = content ? std::get_if<Iri>(&*content) : nullptr;
        if (!entity) {
          add(ViolationCode::MalformedTask, "input slot needs one ds:slotContent IRI",
              {slot.str()});
          facts.slots_ok = false;
          continue;
        }
        if (!graph_.contains({task, vocab::has_input(), Term(*entity)}))
          add(ViolationCode::MalformedTask, "slot content is missing its ds:hasInput edge",
              {task.str(), entity->str()});
        auto structure = string_object(graph_, *entity, vocab::has_data_structure());
        bool typed = graph_.contains({*entity, iris::rdf_type(), Term(vocab::data_entity_class())});
        if (!structure || !typed) {
          add(ViolationCode::DanglingInput,
              "input is not a declared data entity with a data structure",
              {task.str(), entity->str()});
          facts.slots_ok = false;
          continue;
        }
        facts.inputs.push_back(TypedRef{*entity, *structure});
      }
    }
    return facts;
  }

  void check_task(const Iri& task) {
    TaskFacts facts = resolve_facts(task);
    if (!facts.task_type) return;

    // Inputs must be dataset columns or outputs of earlier tasks.
    auto task_pos = position_.find(task.str());
    for (const auto& input : facts.inputs) {
      bool from_dataset = string_object(graph_, input.iri, vocab::has_source()).has_value();
      auto producers = graph_.subjects_with(vocab::has_output(), Term(input.iri));
      if (!from_dataset && producers.empty()) {
        add(ViolationCode::DanglingInput, "input is neither a dataset column nor a task output",
            {task.str(), input.iri.str()});
        continue;
      }
      if (!from_dataset && task_pos != position_.end()) {
        bool produced_earlier = false;
        for (const Iri& producer : producers) {
          auto it = position_.find(producer.str());
          if (it != position_.end() && it->second < task_pos->second) produced_earlier = true;
        }
        if (!produced_earlier)
          add(ViolationCode::DanglingInput, "input is produced by a later or unreachable task",
              {task.str(), input.iri.str()});
      }
    }

    // Outputs must realize the task type's output roles exactly.
    const IoSpec& io = schema_.io_spec(*facts.task_type);
    auto outputs = graph_.objects_of(task, vocab::has_output());
    if (outputs.size() != io.outputs.size()) {
      add(ViolationCode::OutputArityMismatch,
          "task declares " + std::to_string(outputs.size()) + " outputs, type needs " +
              std::to_string(io.outputs.size()),
          {task.str()});
    } else {
      std::set<std::string> seen_roles;
      for (const Term& t : outputs) {
        const auto* entity = std::get_if<Iri>(&t);
        if (!entity) {
          add(ViolationCode::MalformedTask, "ds:hasOutput must point at an individual",
              {task.str()});
          continue;
        }
        auto role_name = string_object(graph_, *entity, vocab::output_role());
        auto structure = string_object(graph_, *entity, vocab::has_data_structure());
        const OutputRole* role = nullptr;
        if (role_name)
          for (const auto& r : io.outputs)
            if (r.name == *role_name) role = &r;
        if (!role || !structure) {
          add(ViolationCode::MalformedTask,
              "output entity needs ds:outputRole and ds:hasDataStructure matching the task type",
              {entity->str()});
          continue;
        }
        if (!seen_roles.insert(*role_name).second)
          add(ViolationCode::MalformedTask, "output role bound more than once",
              {task.str(), *role_name});
        if (*structure != role->structure)
          add(ViolationCode::MalformedTask,
              "output structure '" + *structure + "' does not match role structure '" +
                  role->structure + "'",
              {entity->str()});
      }
    }

    if (facts.method_type && facts.slots_ok) {
      auto violations =
          schema_.check_compatibility(*facts.task_type, *facts.method_type, facts.inputs,
                                      facts.params);
      for (auto& v : violations) {
        v.iris.insert(v.iris.begin(), task.str());
        violations_.push_back(std::move(v));
      }
    }
  }

  const Schema& schema_;
  const Graph& graph_;
  std::vector<Violation> violations_;
  Iri pipeline_;
  std::string dataset_path_;
  std::set<Iri> tasks_;
  std::vector<Iri> order_;
  std::map<std::string, std::size_t> position_;
};

}  // namespace

std::vector<Violation> validate_pipeline_graph(const Schema& schema, const Graph& graph) {
  return Validator(schema, graph).run();
}

PipelineKG pipeline_from_graph(const Schema& schema, Graph graph) {
  Validator validator(schema, graph);
  auto violations = validator.run();
  if (!violations.empty()) throw ValidationError(std::move(violations));

  PipelineKG kg;
  kg.pipeline_iri_ = validator.pipeline_iri();
  kg.start_task_ = validator.order().front();
  kg.dataset_path_ = validator.dataset_path();
  kg.task_order_ = validator.order();
  kg.graph_ = std::move(graph);
  return kg;
}

void save_pipeline(const PipelineKG& pipeline, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << serialize_turtle(pipeline.graph());
  if (!out) throw IoError("failed writing: " + path.string());
}

PipelineKG load_pipeline(const Schema& schema, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open pipeline file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Graph graph = parse_turtle(buf.str());
  return pipeline_from_graph(schema, std::move(graph));
}

}  // namespace exekg
