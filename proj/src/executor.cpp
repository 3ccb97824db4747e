#include "exekg/executor.hpp"

#include <algorithm>
#include <chrono>

#include <nlohmann/json.hpp>

#include "exekg/vocab.hpp"

namespace exekg {

std::string value_structure(const Value& v) {
  struct Visitor {
    std::string operator()(const Column& c) const {
      return c.is_numeric() ? vocab::kNumericColumn : vocab::kCategoricalColumn;
    }
    std::string operator()(const SplitIndices&) const { return vocab::kSplitIndices; }
    std::string operator()(const ModelValue&) const { return vocab::kModel; }
    std::string operator()(const MetricValue&) const { return vocab::kMetric; }
    std::string operator()(const Canvas&) const { return vocab::kCanvas; }
  };
  return std::visit(Visitor{}, v);
}

ExecutionContext::ExecutionContext(Table dataset, std::filesystem::path output_dir)
    : dataset_(std::move(dataset)), output_dir_(std::move(output_dir)) {}

void ExecutionContext::write(const Iri& iri, Value value) {
  if (values_.count(iri.str()))
    throw Error("value <" + iri.str() + "> is already bound (single-assignment context)");
  values_.emplace(iri.str(), std::move(value));
  write_log_.push_back(iri.str());
}

const Value& ExecutionContext::read(const Iri& iri) const {
  auto it = values_.find(iri.str());
  if (it == values_.end()) throw Error("value <" + iri.str() + "> has not been produced yet");
  return it->second;
}

// ---------------------------------------------------------------------------
// Task resolution via BGP queries

namespace {

Variable var(const char* name) { return Variable(name); }

[[noreturn]] void malformed(const Iri& task, const std::string& missing) {
  throw Error("malformed task <" + task.str() + ">: " + missing);
}

}  // namespace

ResolvedTask resolve_task(const Graph& graph, const Iri& task_iri, const Schema& schema) {
  ResolvedTask task;
  task.iri = task_iri;

  std::vector<Iri> types;
  for (const auto& binding :
       match_bgp(graph, {TriplePattern(task_iri, iris::rdf_type(), var("type"))})) {
    const auto& term = binding.at("type");
    if (const auto* type = std::get_if<Iri>(&term); type && schema.is_task_type(*type))
      types.push_back(*type);
  }
  if (types.size() != 1)
    malformed(task_iri, "expected exactly one (task, rdf:type, <task type>) triple");
  task.task_type = types[0];

  auto method_bindings = match_bgp(
      graph, {TriplePattern(task_iri, vocab::has_method(), var("m")),
              TriplePattern(var("m"), iris::rdf_type(), var("mt"))});
  std::vector<std::pair<Iri, Iri>> methods;
  for (const auto& binding : method_bindings) {
    const auto* method = std::get_if<Iri>(&binding.at("m"));
    const auto* type = std::get_if<Iri>(&binding.at("mt"));
    if (method && type && schema.is_method_type(*type)) methods.emplace_back(*method, *type);
  }
  if (methods.size() != 1)
    malformed(task_iri,
              "expected exactly one ds:hasMethod triple with a typed method individual");
  task.method_iri = methods[0].first;
  task.method_type = methods[0].second;

  for (const auto& binding :
       match_bgp(graph, {TriplePattern(task.method_iri, var("p"), var("v"))})) {
    const auto& property = std::get<Iri>(binding.at("p"));
    if (property == iris::rdf_type()) continue;
    const auto* literal = std::get_if<Literal>(&binding.at("v"));
    if (!literal) malformed(task_iri, "method parameter " + property.str() + " is not a literal");
    if (!task.params.emplace(property.str(), *literal).second)
      malformed(task_iri, "method parameter " + property.str() + " is set more than once");
  }

  // One joined pattern resolves each input slot with its order, role, entity
  // and declared structure.
  auto slot_bindings = match_bgp(
      graph, {TriplePattern(task_iri, vocab::has_input_slot(), var("slot")),
              TriplePattern(var("slot"), vocab::slot_index(), var("idx")),
              TriplePattern(var("slot"), vocab::slot_role(), var("role")),
              TriplePattern(var("slot"), vocab::slot_content(), var("entity")),
              TriplePattern(var("entity"), vocab::has_data_structure(), var("structure"))});
  std::map<std::int64_t, ResolvedInput> by_index;
  for (const auto& binding : slot_bindings) {
    const auto& index_lit = std::get<Literal>(binding.at("idx"));
    ResolvedInput input;
    input.entity = std::get<Iri>(binding.at("entity"));
    input.role = std::get<Literal>(binding.at("role")).lexical();
    input.structure = std::get<Literal>(binding.at("structure")).lexical();
    if (!by_index.emplace(index_lit.as_integer(), std::move(input)).second)
      malformed(task_iri, "duplicate input slot index");
  }
  auto slot_count = match_bgp(graph, {TriplePattern(task_iri, vocab::has_input_slot(), var("s"))});
  if (slot_count.size() != by_index.size())
    malformed(task_iri, "an input slot is missing slotIndex, slotRole, slotContent or the "
                        "entity's data structure");
  for (auto& [index, input] : by_index) task.inputs.push_back(std::move(input));

  auto output_bindings = match_bgp(
      graph, {TriplePattern(task_iri, vocab::has_output(), var("entity")),
              TriplePattern(var("entity"), vocab::output_role(), var("role")),
              TriplePattern(var("entity"), vocab::has_data_structure(), var("structure"))});
  const IoSpec& io = schema.io_spec(task.task_type);
  for (const auto& role : io.outputs) {
    bool found = false;
    for (const auto& binding : output_bindings) {
      if (std::get<Literal>(binding.at("role")).lexical() != role.name) continue;
      ResolvedOutput output;
      output.entity = std::get<Iri>(binding.at("entity"));
      output.role = role.name;
      output.structure = std::get<Literal>(binding.at("structure")).lexical();
      task.outputs.push_back(std::move(output));
      found = true;
    }
    if (!found)
      malformed(task_iri, "no output entity bound to role '" + role.name + "'");
  }

  auto next_bindings = match_bgp(graph, {TriplePattern(task_iri, vocab::has_next_task(), var("n"))});
  if (next_bindings.size() > 1) malformed(task_iri, "more than one ds:hasNextTask successor");
  if (next_bindings.size() == 1) task.next = std::get<Iri>(next_bindings[0].at("n"));

  return task;
}

// ---------------------------------------------------------------------------
// MethodCall / MethodRegistry

const Literal& MethodCall::param(const Iri& property) const {
  auto it = params.find(property.str());
  if (it == params.end())
    throw Error("parameter <" + property.str() + "> missing for " + method_type.str());
  return it->second;
}

std::vector<const ResolvedInput*> MethodCall::inputs_for_role(const std::string& role) const {
  std::vector<const ResolvedInput*> out;
  for (const auto& input : inputs)
    if (input.role == role) out.push_back(&input);
  return out;
}

const ResolvedInput& MethodCall::input_for_role(const std::string& role) const {
  auto matches = inputs_for_role(role);
  if (matches.size() != 1)
    throw Error("expected exactly one input for role '" + role + "', got " +
                std::to_string(matches.size()));
  return *matches[0];
}

void MethodRegistry::register_method(const Iri& method_type, MethodImpl impl) {
  if (!impls_.emplace(method_type.str(), std::move(impl)).second)
    throw Error("method <" + method_type.str() + "> is already registered");
}

const MethodImpl& MethodRegistry::implementation(const Iri& method_type) const {
  auto it = impls_.find(method_type.str());
  if (it == impls_.end())
    throw Error("no implementation registered for method <" + method_type.str() + ">");
  return it->second;
}

std::vector<Iri> MethodRegistry::registered_methods() const {
  std::vector<Iri> out;
  out.reserve(impls_.size());
  for (const auto& [iri, impl] : impls_) out.push_back(Iri(iri));
  return out;
}

void verify_registry_complete(const MethodRegistry& registry, const Schema& schema) {
  for (const Iri& task_type : schema.task_types())
    for (const Iri& method_type : schema.methods_for_task(task_type))
      if (!registry.has(method_type))
        throw Error("schema method <" + method_type.str() + "> has no registered implementation");
}

// ---------------------------------------------------------------------------
// Execution

namespace {

void bind_dataset_entities(const PipelineKG& pipeline, const Table& dataset,
                           ExecutionContext& context) {
  for (const Iri& entity : pipeline.graph().subjects_with(
           iris::rdf_type(), Term(vocab::data_entity_class()))) {
    auto source = pipeline.graph().object_of(entity, vocab::has_source());
    if (!source) continue;
    const auto* lit = std::get_if<Literal>(&*source);
    if (!lit) continue;
    if (!dataset.has_column(lit->lexical()))
      throw Error("dataset has no column '" + lit->lexical() + "' (needed by <" + entity.str() +
                  ">)");
    context.write(entity, Value(dataset.column(lit->lexical())));
  }
}

}  // namespace

ExecutionReport execute(const PipelineKG& pipeline, const Schema& schema,
                        const MethodRegistry& registry, Table dataset,
                        const std::filesystem::path& output_dir) {
  std::filesystem::create_directories(output_dir / "plots");
  ExecutionContext context(std::move(dataset), output_dir);
  bind_dataset_entities(pipeline, context.dataset(), context);

  ExecutionReport report;
  std::optional<Iri> current = pipeline.start_task();
  while (current) {
    ResolvedTask resolved = resolve_task(pipeline.graph(), *current, schema);
    const MethodImpl* impl = nullptr;
    try {
      impl = &registry.implementation(resolved.method_type);
    } catch (const Error& e) {
      throw ExecutionError(current->str(), e.what());
    }

    MethodCall call{resolved.iri,    resolved.task_type, resolved.method_type,
                    resolved.inputs, resolved.params,    resolved.outputs};
    for (const ParamSpec& spec : schema.param_specs(resolved.method_type))
      if (spec.default_value && !call.params.count(spec.property.str()))
        call.params.emplace(spec.property.str(), *spec.default_value);

    auto started = std::chrono::steady_clock::now();
    std::vector<Value> results;
    try {
      results = (*impl)(call, context);
      if (results.size() != resolved.outputs.size())
        throw Error("method returned " + std::to_string(results.size()) + " value(s), task has " +
                    std::to_string(resolved.outputs.size()) + " output(s)");
      for (std::size_t i = 0; i < results.size(); i++) {
        const auto& declared = resolved.outputs[i].structure;
        auto actual = value_structure(results[i]);
        if (actual != declared)
          throw Error("output <" + resolved.outputs[i].entity.str() + "> is declared '" +
                      declared + "' but the method produced '" + actual + "'");
        context.write(resolved.outputs[i].entity, std::move(results[i]));
      }
    } catch (const ExecutionError&) {
      throw;
    } catch (const std::exception& e) {
      throw ExecutionError(current->str(), e.what());
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);

    report.tasks.push_back(TaskRun{resolved.iri, resolved.method_type, elapsed.count()});
    for (const auto& output : resolved.outputs) {
      const Value& value = context.read(output.entity);
      if (const auto* metric = std::get_if<MetricValue>(&value))
        report.metrics[std::string(output.entity.local_name())] = *metric;
    }
    current = resolved.next;
  }

  for (const auto& artifact : context.artifacts()) report.artifacts.push_back(artifact.string());
  return report;
}

ExecutionReport execute(const PipelineKG& pipeline, const Schema& schema,
                        const MethodRegistry& registry,
                        const std::filesystem::path& output_dir) {
  return execute(pipeline, schema, registry, load_csv(pipeline.dataset_path()), output_dir);
}

std::string report_to_json(const ExecutionReport& report) {
  nlohmann::ordered_json doc;
  doc["tasks"] = nlohmann::ordered_json::array();
  for (const auto& run : report.tasks)
    doc["tasks"].push_back({{"iri", run.task.str()},
                            {"method", run.method_type.str()},
                            {"millis", run.millis}});
  doc["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [name, metric] : report.metrics) {
    if (metric.is_scalar())
      doc["metrics"][name] = metric.scalar();
    else
      doc["metrics"][name] = metric.vec();
  }
  doc["artifacts"] = report.artifacts;
  return doc.dump(2) + "\n";
}

}  // namespace exekg
