#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "exekg/builder.hpp"
#include "exekg/dot.hpp"
#include "exekg/executor.hpp"
#include "exekg/table.hpp"
#include "exekg/vocab.hpp"

namespace fs = std::filesystem;
using namespace exekg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitExecution = 3;

// Prompt source: interactive stdin or a scripted answers file. Running out of
// scripted answers (or EOF on stdin) aborts the wizard.
class PromptSession {
 public:
  PromptSession(std::istream& in, bool scripted) : in_(in), scripted_(scripted) {}

  std::string ask(const std::string& prompt) {
    std::cout << prompt << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw Error("input ended before the pipeline was finished");
    // Keep scripted transcripts readable.
    if (scripted_) std::cout << line << "\n";
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
  }

 private:
  std::istream& in_;
  bool scripted_;
};

std::vector<std::string> split_list(const std::string& line) {
  std::vector<std::string> items;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string sanitize_fragment(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (out.empty() || (out[0] >= '0' && out[0] <= '9')) out = "c_" + out;
  return out;
}

// Picks from a numbered menu; accepts the number or the exact name. Blank
// returns nullopt when allowed, otherwise re-prompts.
template <typename GetName>
std::optional<std::size_t> pick(PromptSession& session, const std::string& prompt,
                                std::size_t count, GetName name, bool allow_blank) {
  while (true) {
    std::string answer = session.ask(prompt);
    if (answer.empty()) {
      if (allow_blank) return std::nullopt;
      std::cerr << "a choice is required\n";
      continue;
    }
    for (std::size_t i = 0; i < count; i++)
      if (name(i) == answer) return i;
    try {
      std::size_t index = std::stoul(answer);
      if (index >= 1 && index <= count) return index - 1;
    } catch (...) {
    }
    std::cerr << "invalid choice '" << answer << "'\n";
  }
}

struct AvailableRef {
  std::string name;
  DataEntityRef ref;
};

// The wizard: dataset path, columns to expose, then repeated task/method/
// input/param prompts. Builder violations re-prompt; nothing is written until
// the whole pipeline validates.
int cmd_build(const Schema& schema, const std::optional<std::string>& answers_path,
              const std::string& out_path) {
  std::ifstream answers_file;
  bool scripted = answers_path.has_value();
  if (scripted) {
    answers_file.open(*answers_path);
    if (!answers_file) {
      std::cerr << "error: cannot open answers file: " << *answers_path << "\n";
      return kExitUsage;
    }
  }
  PromptSession session(scripted ? answers_file : std::cin, scripted);

  try {
    std::string name;
    std::string dataset_path;
    std::optional<Table> table;
    std::optional<PipelineBuilder> builder;
    while (!builder) {
      if (name.empty()) name = session.ask("Pipeline name: ");
      dataset_path = session.ask("Dataset CSV path: ");
      try {
        table = load_csv(dataset_path);
        builder.emplace(schema, name, dataset_path);
      } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        name.clear();  // bad name: ask for both again
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
      }
    }

    std::vector<AvailableRef> available;
    std::cout << "Columns in " << dataset_path << ":\n";
    for (const auto& column_name : table->column_names())
      std::cout << "  " << column_name << " ("
                << (table->column(column_name).is_numeric() ? "numeric" : "categorical")
                << ")\n";
    while (true) {
      std::string answer =
          session.ask("Columns to expose as data entities (comma-separated, blank for all): ");
      auto wanted = answer.empty() ? table->column_names() : split_list(answer);
      bool ok = !wanted.empty();
      for (const auto& w : wanted)
        if (!table->has_column(w)) {
          std::cerr << "no such column '" << w << "'\n";
          ok = false;
        }
      if (!ok) continue;
      for (const auto& w : wanted) {
        const Column& column = table->column(w);
        auto structure = column.is_numeric() ? vocab::kNumericColumn : vocab::kCategoricalColumn;
        auto ref = builder->create_data_entity(sanitize_fragment(w), w, structure, "feature");
        available.push_back({sanitize_fragment(w), ref});
      }
      break;
    }

    std::vector<Iri> task_types(schema.task_types().begin(), schema.task_types().end());
    int added = 0;
    while (true) {
      std::cout << "Task types:\n";
      for (std::size_t i = 0; i < task_types.size(); i++)
        std::cout << "  " << (i + 1) << ". " << task_types[i].local_name() << "\n";
      auto task_pick = pick(
          session, "Add task (number or name, blank to finish): ", task_types.size(),
          [&](std::size_t i) { return std::string(task_types[i].local_name()); }, true);
      if (!task_pick) break;
      const Iri& task_type = task_types[*task_pick];

      const auto& method_set = schema.methods_for_task(task_type);
      std::vector<Iri> methods(method_set.begin(), method_set.end());
      std::cout << "Methods for " << task_type.local_name() << ":\n";
      for (std::size_t i = 0; i < methods.size(); i++)
        std::cout << "  " << (i + 1) << ". " << methods[i].local_name() << "\n";
      auto method_pick = pick(
          session, "Method (number or name): ", methods.size(),
          [&](std::size_t i) { return std::string(methods[i].local_name()); }, false);
      const Iri& method_type = methods[*method_pick];

      const IoSpec& io = schema.io_spec(task_type);
      std::vector<DataEntityRef> inputs;
      bool inputs_ok = true;
      if (!io.inputs.empty()) {
        std::cout << "Available inputs:\n";
        for (const auto& a : available)
          std::cout << "  " << a.name << " (" << a.ref.structure << ")\n";
      }
      for (const auto& role : io.inputs) {
        std::string structures;
        for (const auto& s : role.allowed_structures)
          structures += (structures.empty() ? "" : "|") + s;
        std::string answer = session.ask("Input" + std::string(role.variadic ? "s" : "") +
                                         " for role '" + role.name + "' (" + structures + ")" +
                                         (role.variadic ? ", comma-separated" : "") + ": ");
        auto names = role.variadic ? split_list(answer) : std::vector<std::string>{answer};
        for (const auto& n : names) {
          bool found = false;
          for (const auto& a : available)
            if (a.name == n) {
              inputs.push_back(a.ref);
              found = true;
            }
          if (!found) {
            std::cerr << "no such entity '" << n << "'\n";
            inputs_ok = false;
          }
        }
      }
      if (!inputs_ok) {
        std::cerr << "task discarded, try again\n";
        continue;
      }

      std::vector<std::pair<Iri, Literal>> params;
      for (const auto& spec : schema.param_specs(method_type)) {
        std::string label =
            std::string(spec.property.local_name()) + " (" + to_string(spec.datatype) + ")";
        if (spec.default_value) label += " [default " + spec.default_value->lexical() + "]";
        while (true) {
          std::string answer = session.ask("Param " + label + ": ");
          if (answer.empty()) {
            if (spec.required) {
              std::cerr << "parameter is required\n";
              continue;
            }
            break;  // schema default applies at execution time
          }
          try {
            params.emplace_back(spec.property, Literal::typed(answer, spec.datatype));
            break;
          } catch (const Error& e) {
            std::cerr << e.what() << "\n";
          }
        }
      }

      std::vector<std::string> output_names;
      for (const auto& role : io.outputs) {
        std::string fallback = "task" + std::to_string(added + 1) + "_" + role.name;
        std::string answer =
            session.ask("Name for output '" + role.name + "' [" + fallback + "]: ");
        output_names.push_back(answer.empty() ? fallback : sanitize_fragment(answer));
      }

      try {
        TaskRef ref = builder->add_task(task_type, method_type, inputs, params, output_names);
        for (std::size_t i = 0; i < ref.outputs.size(); i++)
          available.push_back({output_names[i], ref.outputs[i]});
        added++;
        std::cout << "Added " << ref.iri.local_name() << "\n";
      } catch (const ValidationError& e) {
        std::cerr << e.what() << "\ntask discarded, try again\n";
      }
    }

    PipelineKG pipeline = builder->finalize();
    save_pipeline(pipeline, out_path);
    std::cout << "Wrote " << out_path << " (" << pipeline.task_order().size() << " tasks)\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_run(const Schema& schema, const std::string& pipeline_path,
            const std::optional<std::string>& data_override, const std::string& out_dir) {
  if (!fs::exists(pipeline_path)) {
    std::cerr << "error: no such pipeline file: " << pipeline_path << "\n";
    return kExitUsage;
  }
  if (data_override && !fs::exists(*data_override)) {
    std::cerr << "error: no such dataset file: " << *data_override << "\n";
    return kExitUsage;
  }

  PipelineKG pipeline;
  try {
    pipeline = load_pipeline(schema, pipeline_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    MethodRegistry registry = default_registry();
    verify_registry_complete(registry, schema);
    Table dataset = load_csv(data_override ? *data_override : pipeline.dataset_path());
    ExecutionReport report = execute(pipeline, schema, registry, std::move(dataset), out_dir);

    fs::path report_path = fs::path(out_dir) / "report.json";
    std::ofstream report_file(report_path, std::ios::binary);
    if (!report_file) throw IoError("cannot write " + report_path.string());
    report_file << report_to_json(report);

    std::cout << "pipeline: " << pipeline.pipeline_iri().local_name() << "\n";
    std::cout << "tasks executed: " << report.tasks.size() << "\n";
    for (const auto& run : report.tasks)
      std::cout << "  " << run.task.local_name() << " -> " << run.method_type.local_name() << " ("
                << run.millis << " ms)\n";
    for (const auto& [metric, value] : report.metrics) {
      if (value.is_scalar())
        std::cout << "metric " << metric << " = " << value.scalar() << "\n";
      else
        std::cout << "metric " << metric << " = vector[" << value.vec().size() << "]\n";
    }
    for (const auto& artifact : report.artifacts) std::cout << "artifact " << artifact << "\n";
    std::cout << "report " << report_path.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExecution;
  }
}

int cmd_viz(const Schema& schema, const std::string& pipeline_path, const std::string& out_path) {
  if (!fs::exists(pipeline_path)) {
    std::cerr << "error: no such pipeline file: " << pipeline_path << "\n";
    return kExitUsage;
  }
  PipelineKG pipeline;
  try {
    pipeline = load_pipeline(schema, pipeline_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  std::string dot = dot_export(pipeline.graph(), schema);
  if (out_path.empty() || out_path == "-") {
    std::cout << dot;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    out << dot;
    std::cout << "Wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_export_schemas(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << "\n";
    return kExitUsage;
  }
  for (const auto& [name, text] : Schema::builtin_documents()) {
    fs::path path = fs::path(out_dir) / (name + ".ttl");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << path.string() << "\n";
      return kExitUsage;
    }
    out << text;
    std::cout << "Wrote " << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Executable knowledge-graph ML pipelines"};
  app.require_subcommand(1);

  const char* env_out = std::getenv("EXEKG_OUT");
  std::string default_out_dir = env_out ? env_out : "out";

  auto* build = app.add_subcommand("build", "Interactively build a pipeline KG");
  std::optional<std::string> answers_path;
  std::string build_out = "pipeline.ttl";
  build->add_option("--answers", answers_path,
                    "Scripted answers file (one prompt answer per line)");
  build->add_option("--out", build_out, "Output .ttl path")->capture_default_str();

  auto* run = app.add_subcommand("run", "Validate and execute a pipeline KG");
  std::string run_pipeline;
  std::optional<std::string> run_data;
  std::string run_out = default_out_dir;
  run->add_option("pipeline", run_pipeline, "Pipeline .ttl file")->required();
  run->add_option("--data", run_data, "Override the dataset CSV recorded in the KG");
  run->add_option("--out", run_out, "Output directory")->capture_default_str();

  auto* viz = app.add_subcommand("viz", "Export a pipeline KG as Graphviz DOT");
  std::string viz_pipeline;
  std::string viz_out;
  viz->add_option("pipeline", viz_pipeline, "Pipeline .ttl file")->required();
  viz->add_option("--out", viz_out, "Output .dot path ('-' for stdout)");

  auto* export_schemas = app.add_subcommand("export-schemas", "Write the shipped KG schemata");
  std::string schemas_out = "schemata";
  export_schemas->add_option("--out", schemas_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Schema schema = load_builtin_schemata();
    if (build->parsed()) return cmd_build(schema, answers_path, build_out);
    if (run->parsed()) return cmd_run(schema, run_pipeline, run_data, run_out);
    if (viz->parsed()) return cmd_viz(schema, viz_pipeline, viz_out);
    if (export_schemas->parsed()) return cmd_export_schemas(schemas_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExecution;
  }
  return kExitUsage;
}
