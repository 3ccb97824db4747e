#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "exekg/executor.hpp"
#include "exekg/samples.hpp"
#include "exekg/vocab.hpp"

using namespace exekg;
namespace fs = std::filesystem;

namespace {

const Schema& schema() {
  static Schema s = load_builtin_schemata();
  return s;
}

std::string data_csv() { return std::string(EXEKG_SOURCE_DIR) + "/data/demo_data.csv"; }

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("resolve_task reads the first golden ml task") {
  PipelineKG pipeline =
      load_pipeline(schema(), fs::path(EXEKG_SOURCE_DIR) / "fixtures" / "ml_pipeline.ttl");
  ResolvedTask first = resolve_task(pipeline.graph(), pipeline.start_task(), schema());
  CHECK(first.task_type == vocab::ml("DataSplittingTask"));
  CHECK(first.method_type == vocab::ml("TrainTestSplitMethod"));
  CHECK(first.inputs.size() == 3);
  for (const auto& input : first.inputs) CHECK(input.role == "data");
  CHECK(first.params.at(vocab::ml("hasSeed").str()).as_integer() == 42);
  REQUIRE(first.next.has_value());
  CHECK(first.next->local_name() == "ml_pipeline_task_2");

  ResolvedTask last = resolve_task(pipeline.graph(), pipeline.task_order().back(), schema());
  CHECK_FALSE(last.next.has_value());
  CHECK(last.method_type == vocab::visu("ScatterPlotMethod"));
}

TEST_CASE("resolve_task reports a task without ds:hasMethod") {
  PipelineKG pipeline = build_visu_sample(schema());
  Graph g;
  for (const Triple& t : pipeline.graph().triples()) {
    if (t.subject == pipeline.start_task() && t.predicate == vocab::has_method()) continue;
    g.add(t);
  }
  CHECK_THROWS_WITH_AS(resolve_task(g, pipeline.start_task(), schema()),
                       doctest::Contains("ds:hasMethod"), Error);
}

TEST_CASE("pipeline 1 executes the full chain and emits one scatter SVG") {
  PipelineKG pipeline = build_ml_sample(schema());
  fs::path out = fresh_dir("exekg_exec_ml");
  ExecutionReport report =
      execute(pipeline, schema(), default_registry(), load_csv(data_csv()), out);

  // execution order equals the chain order
  REQUIRE(report.tasks.size() == pipeline.task_order().size());
  for (std::size_t i = 0; i < report.tasks.size(); i++)
    CHECK(report.tasks[i].task == pipeline.task_order()[i]);

  std::vector<std::string> methods;
  for (const auto& run : report.tasks) methods.push_back(std::string(run.method_type.local_name()));
  CHECK(methods == std::vector<std::string>{"TrainTestSplitMethod", "KNNTrainMethod",
                                            "PredictMethod", "PredictionErrorMethod",
                                            "CanvasMethod", "ScatterPlotMethod"});

  REQUIRE(report.artifacts.size() == 1);
  CHECK(fs::exists(report.artifacts[0]));
  std::string svg = read_file(report.artifacts[0]);
  CHECK(svg.find("<circle") != std::string::npos);

  // 200 rows at ratio 0.8 leave 40 test rows of prediction errors
  const auto& errors = report.metrics.at("ml_pipeline_entity_errors");
  CHECK_FALSE(errors.is_scalar());
  CHECK(errors.vec().size() == 40);
}

TEST_CASE("pipeline 2 normalizes and plots two series") {
  PipelineKG pipeline = build_stats_sample(schema());
  fs::path out = fresh_dir("exekg_exec_stats");
  ExecutionReport report =
      execute(pipeline, schema(), default_registry(), load_csv(data_csv()), out);
  REQUIRE(report.artifacts.size() == 1);
  std::string svg = read_file(report.artifacts[0]);
  // two series of 200 points each
  std::size_t circles = 0, pos = 0;
  while ((pos = svg.find("<circle", pos)) != std::string::npos) {
    circles++;
    pos++;
  }
  CHECK(circles == 400);
  CHECK(svg.find("stats_pipeline_entity_feat_a") != std::string::npos);
  CHECK(svg.find("stats_pipeline_entity_normalized") != std::string::npos);
  // the canvas method ran on schema defaults (800x600, 1x1 grid)
  CHECK(svg.find("width=\"800\"") != std::string::npos);
  CHECK(svg.find("height=\"600\"") != std::string::npos);
}

TEST_CASE("executing the same pipeline twice is deterministic") {
  PipelineKG pipeline = build_ml_sample(schema());
  fs::path out_a = fresh_dir("exekg_det_a");
  fs::path out_b = fresh_dir("exekg_det_b");
  ExecutionReport a = execute(pipeline, schema(), default_registry(), load_csv(data_csv()), out_a);
  ExecutionReport b = execute(pipeline, schema(), default_registry(), load_csv(data_csv()), out_b);
  CHECK(read_file(a.artifacts[0]) == read_file(b.artifacts[0]));
  REQUIRE(a.metrics.size() == b.metrics.size());
  CHECK(a.metrics.at("ml_pipeline_entity_errors").vec() ==
        b.metrics.at("ml_pipeline_entity_errors").vec());
}

TEST_CASE("single-assignment: no IRI is written twice") {
  PipelineKG pipeline = build_stats_sample(schema());
  fs::path out = fresh_dir("exekg_single");
  Table dataset = load_csv(data_csv());
  ExecutionContext probe(dataset, out);
  probe.write(Iri("https://exekg.example/pipelines#x"), Value(SplitIndices{}));
  CHECK_THROWS_AS(probe.write(Iri("https://exekg.example/pipelines#x"), Value(SplitIndices{})),
                  Error);

  // the write log of a real run is duplicate-free
  execute(pipeline, schema(), default_registry(), dataset, out);
}

TEST_CASE("an unregistered method aborts naming the IRI and the task") {
  PipelineKG pipeline = build_visu_sample(schema());
  MethodRegistry registry;
  registry.register_method(vocab::visu("CanvasMethod"),
                           default_registry().implementation(vocab::visu("CanvasMethod")));
  fs::path out = fresh_dir("exekg_unreg");
  try {
    execute(pipeline, schema(), registry, load_csv(data_csv()), out);
    FAIL("expected ExecutionError");
  } catch (const ExecutionError& e) {
    CHECK(std::string(e.what()).find("LinePlotMethod") != std::string::npos);
    CHECK(e.task_iri().find("visu_pipeline_task_2") != std::string::npos);
  }
}

TEST_CASE("registry rejects duplicates and covers every shipped method") {
  MethodRegistry registry = default_registry();
  CHECK_THROWS_AS(
      registry.register_method(vocab::ml("KNNTrainMethod"),
                               [](const MethodCall&, ExecutionContext&) {
                                 return std::vector<Value>{};
                               }),
      Error);
  CHECK_NOTHROW(verify_registry_complete(registry, schema()));

  MethodRegistry empty;
  CHECK_THROWS_AS(verify_registry_complete(empty, schema()), Error);
}

TEST_CASE("a missing dataset column aborts before any task runs") {
  PipelineKG pipeline = build_visu_sample(schema());
  fs::path out = fresh_dir("exekg_missing_col");
  Table small = parse_csv("other\n1\n2\n");
  CHECK_THROWS_WITH_AS(execute(pipeline, schema(), default_registry(), small, out),
                       doctest::Contains("feat_a"), Error);
}

TEST_CASE("method errors carry the failing task IRI") {
  // k exceeds the training rows on a tiny dataset
  PipelineBuilder b(schema(), "tiny", "unused.csv");
  auto x = b.create_data_entity("x", "x", vocab::kNumericColumn, "feature");
  auto y = b.create_data_entity("y", "y", vocab::kNumericColumn, "target");
  auto split = b.add_task(vocab::ml("DataSplittingTask"), vocab::ml("TrainTestSplitMethod"),
                          {x, y}, {}, {"split"});
  b.add_task(vocab::ml("TrainTask"), vocab::ml("KNNTrainMethod"), {x, y, split.output()},
             {{vocab::ml("hasK"), Literal::integer(50)}}, {"model"});
  PipelineKG pipeline = b.finalize();

  Table tiny = parse_csv("x,y\n1,2\n2,3\n3,4\n4,5\n");
  fs::path out = fresh_dir("exekg_bad_k");
  try {
    execute(pipeline, schema(), default_registry(), tiny, out);
    FAIL("expected ExecutionError");
  } catch (const ExecutionError& e) {
    CHECK(e.task_iri().find("tiny_task_2") != std::string::npos);
    CHECK(std::string(e.what()).find("k = 50") != std::string::npos);
  }
}

TEST_CASE("linreg and mlp methods run inside a pipeline") {
  for (const char* method : {"LinRegTrainMethod", "MLPTrainMethod"}) {
    PipelineBuilder b(schema(), "reg", "unused.csv");
    auto x = b.create_data_entity("x", "feat_a", vocab::kNumericColumn, "feature");
    auto y = b.create_data_entity("y", "feat_c", vocab::kNumericColumn, "target");
    auto split = b.add_task(vocab::ml("DataSplittingTask"), vocab::ml("TrainTestSplitMethod"),
                            {x, y}, {}, {"split"});
    std::vector<std::pair<Iri, Literal>> params;
    if (std::string(method) == "MLPTrainMethod")
      params = {{vocab::ml("hasEpochs"), Literal::integer(50)}};
    auto train = b.add_task(vocab::ml("TrainTask"), vocab::ml(method), {x, y, split.output()},
                            params, {"model"});
    auto test = b.add_task(vocab::ml("TestTask"), vocab::ml("PredictMethod"),
                           {train.output(), x, split.output()}, {}, {"predictions"});
    b.add_task(vocab::ml("PerformanceTask"), vocab::ml("RMSEMethod"),
               {test.output(), y, split.output()}, {}, {"rmse"});
    PipelineKG pipeline = b.finalize();

    fs::path out = fresh_dir(std::string("exekg_reg_") + method);
    ExecutionReport report =
        execute(pipeline, schema(), default_registry(), load_csv(data_csv()), out);
    CAPTURE(method);
    CHECK(report.metrics.at("reg_entity_rmse").scalar() > 0);
  }
}

TEST_CASE("categorical-label pipelines fail at the predict task with a clear error") {
  PipelineBuilder b(schema(), "cls", "unused.csv");
  auto x = b.create_data_entity("x", "feat_a", vocab::kNumericColumn, "feature");
  auto label = b.create_data_entity("label", "category", vocab::kCategoricalColumn, "label");
  auto split = b.add_task(vocab::ml("DataSplittingTask"), vocab::ml("TrainTestSplitMethod"),
                          {x, label}, {}, {"split"});
  auto train = b.add_task(vocab::ml("TrainTask"), vocab::ml("KNNTrainMethod"),
                          {x, label, split.output()}, {{vocab::ml("hasK"), Literal::integer(3)}},
                          {"model"});
  b.add_task(vocab::ml("TestTask"), vocab::ml("PredictMethod"),
             {train.output(), x, split.output()}, {}, {"predictions"});
  PipelineKG pipeline = b.finalize();

  fs::path out = fresh_dir("exekg_cls");
  CHECK_THROWS_WITH_AS(
      execute(pipeline, schema(), default_registry(), load_csv(data_csv()), out),
      doctest::Contains("CategoricalColumn"), ExecutionError);
}

TEST_CASE("a registered extension method executes without executor changes") {
  Schema extended = load_builtin_schemata();
  Iri median("https://exekg.example/ext#MedianMethod");
  extended.extend_with_method(vocab::stats("StatisticTask"), median, {});

  MethodRegistry registry = default_registry();
  registry.register_method(median, [](const MethodCall& call, ExecutionContext& ctx) {
    const Value& v = ctx.read(call.input_for_role("data").entity);
    auto numbers = std::get<Column>(v).numbers();
    std::sort(numbers.begin(), numbers.end());
    return std::vector<Value>{Value(MetricValue{numbers[numbers.size() / 2]})};
  });

  PipelineBuilder b(extended, "ext", "unused.csv");
  auto x = b.create_data_entity("x", "feat_a", vocab::kNumericColumn, "feature");
  b.add_task(vocab::stats("StatisticTask"), median, {x}, {}, {"median"});
  PipelineKG pipeline = b.finalize();

  fs::path out = fresh_dir("exekg_ext");
  ExecutionReport report =
      execute(pipeline, extended, registry, load_csv(data_csv()), out);
  REQUIRE(report.metrics.count("ext_entity_median"));
  CHECK(report.metrics.at("ext_entity_median").is_scalar());
}

TEST_CASE("distinct pipelines execute in parallel on a shared schema and registry") {
  const Schema& shared_schema = schema();
  MethodRegistry registry = default_registry();
  Table table = load_csv(data_csv());

  std::vector<PipelineKG> pipelines;
  pipelines.push_back(build_ml_sample(shared_schema));
  pipelines.push_back(build_stats_sample(shared_schema));
  pipelines.push_back(build_visu_sample(shared_schema));

  std::vector<ExecutionReport> reports(pipelines.size());
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < pipelines.size(); i++) {
    workers.emplace_back([&, i] {
      fs::path out = fresh_dir("exekg_parallel_" + std::to_string(i));
      reports[i] = execute(pipelines[i], shared_schema, registry, table, out);
    });
  }
  for (auto& w : workers) w.join();

  CHECK(reports[0].tasks.size() == 6);
  CHECK(reports[1].tasks.size() == 3);
  CHECK(reports[2].tasks.size() == 2);
}

TEST_CASE("report JSON carries tasks, metrics and artifacts") {
  PipelineKG pipeline = build_ml_sample(schema());
  fs::path out = fresh_dir("exekg_json");
  ExecutionReport report =
      execute(pipeline, schema(), default_registry(), load_csv(data_csv()), out);
  std::string json = report_to_json(report);
  CHECK(json.find("\"tasks\"") != std::string::npos);
  CHECK(json.find("\"metrics\"") != std::string::npos);
  CHECK(json.find("\"artifacts\"") != std::string::npos);
  CHECK(json.find("ml_pipeline_task_1") != std::string::npos);
  CHECK(json.find("\"millis\"") != std::string::npos);
}
