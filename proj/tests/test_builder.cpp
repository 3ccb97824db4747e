#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "exekg/builder.hpp"
#include "exekg/samples.hpp"
#include "exekg/vocab.hpp"

using namespace exekg;

namespace {

const Schema& schema() {
  static Schema s = load_builtin_schemata();
  return s;
}

bool has_violation(const std::vector<Violation>& violations, ViolationCode code) {
  for (const auto& v : violations)
    if (v.code == code) return true;
  return false;
}

bool throws_with_code(ViolationCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return has_violation(e.violations(), code);
  }
  return false;
}

// Copy of a graph without the triples the predicate selects.
Graph without(const Graph& g, const std::function<bool(const Triple&)>& drop) {
  Graph out;
  for (const auto& [prefix, ns] : g.prefixes()) out.register_prefix(prefix, ns);
  for (const auto& t : g.triples())
    if (!drop(t)) out.add(t);
  return out;
}

}  // namespace

TEST_CASE("create_pipeline mints the pipeline individual and records the path") {
  PipelineBuilder b(schema(), "demo", "data.csv");
  CHECK(b.graph().contains(
      {b.pipeline_iri(), iris::rdf_type(), Term(vocab::pipeline_class())}));
  CHECK(b.graph().contains(
      {b.pipeline_iri(), vocab::has_input_data_path(), Term(Literal::str("data.csv"))}));
  CHECK(b.pipeline_iri().str() == pipeline_namespace() + "demo");
}

TEST_CASE("invalid pipeline names are rejected") {
  CHECK(throws_with_code(ViolationCode::InvalidName,
                         [] { PipelineBuilder(schema(), "has space", "d.csv"); }));
  CHECK(throws_with_code(ViolationCode::InvalidName,
                         [] { PipelineBuilder(schema(), "", "d.csv"); }));
  CHECK(throws_with_code(ViolationCode::InvalidName,
                         [] { PipelineBuilder(schema(), "1leading", "d.csv"); }));
}

TEST_CASE("two builders with the same name produce independent graphs") {
  PipelineBuilder a(schema(), "demo", "a.csv");
  PipelineBuilder b(schema(), "demo", "b.csv");
  a.create_data_entity("x", "x", vocab::kNumericColumn, "feature");
  CHECK(a.graph().size() == 6);
  CHECK(b.graph().size() == 2);
}

TEST_CASE("create_data_entity adds exactly 4 triples") {
  PipelineBuilder b(schema(), "demo", "data.csv");
  std::size_t before = b.graph().size();
  auto ref = b.create_data_entity("feat_x", "x", vocab::kNumericColumn, "feature");
  CHECK(b.graph().size() == before + 4);
  CHECK(ref.structure == vocab::kNumericColumn);
  CHECK(b.graph().contains({ref.iri, iris::rdf_type(), Term(vocab::data_entity_class())}));
  CHECK(b.graph().contains({ref.iri, vocab::has_source(), Term(Literal::str("x"))}));
  CHECK(b.graph().contains(
      {ref.iri, vocab::has_data_structure(), Term(Literal::str("NumericColumn"))}));
  CHECK(b.graph().contains(
      {ref.iri, vocab::has_data_semantics(), Term(Literal::str("feature"))}));
}

TEST_CASE("duplicate entity names and unknown structures are rejected") {
  PipelineBuilder b(schema(), "demo", "data.csv");
  b.create_data_entity("feat_x", "x", vocab::kNumericColumn, "feature");
  CHECK(throws_with_code(ViolationCode::DuplicateEntity, [&] {
    b.create_data_entity("feat_x", "other", vocab::kNumericColumn, "feature");
  }));
  CHECK(throws_with_code(ViolationCode::UnknownStructure, [&] {
    b.create_data_entity("t5", "x", "Tensor5D", "feature");
  }));
}

TEST_CASE("first add_task starts the chain, the second links hasNextTask") {
  PipelineBuilder b(schema(), "demo", "data.csv");
  auto col = b.create_data_entity("col", "x", vocab::kNumericColumn, "feature");

  auto t1 = b.add_task(vocab::stats("NormalizationTask"), vocab::stats("ZScoreMethod"), {col},
                       {}, {"norm"});
  CHECK(b.graph().contains({b.pipeline_iri(), vocab::has_start_task(), Term(t1.iri)}));
  CHECK(b.graph().with_predicate(vocab::has_next_task()).empty());

  auto t2 = b.add_task(vocab::stats("StatisticTask"), vocab::stats("MeanMethod"),
                       {t1.output()}, {}, {"m"});
  auto next_edges = b.graph().with_predicate(vocab::has_next_task());
  REQUIRE(next_edges.size() == 1);
  CHECK(next_edges[0]->subject == t1.iri);
  CHECK(std::get<Iri>(next_edges[0]->object) == t2.iri);
}

TEST_CASE("add_task rejects incompatible methods eagerly") {
  PipelineBuilder b(schema(), "demo", "data.csv");
  auto col = b.create_data_entity("col", "x", vocab::kNumericColumn, "feature");
  std::size_t before = b.graph().size();
  CHECK(throws_with_code(ViolationCode::MethodNotApplicable, [&] {
    b.add_task(vocab::visu("PlotTask"), vocab::ml("KNNTrainMethod"), {col},
               {{vocab::ml("hasK"), Literal::integer(3)}}, {"out"});
  }));
  CHECK(b.graph().size() == before);  // rejected task leaves no triples
}

TEST_CASE("add_task rejects unknown input refs and wrong output arity") {
  PipelineBuilder b(schema(), "demo", "data.csv");
  auto col = b.create_data_entity("col", "x", vocab::kNumericColumn, "feature");
  DataEntityRef stranger{Iri("https://exekg.example/pipelines#other_entity"), "NumericColumn"};
  CHECK(throws_with_code(ViolationCode::UnknownIri, [&] {
    b.add_task(vocab::stats("NormalizationTask"), vocab::stats("ZScoreMethod"), {stranger}, {},
               {"n"});
  }));
  CHECK(throws_with_code(ViolationCode::OutputArityMismatch, [&] {
    b.add_task(vocab::stats("NormalizationTask"), vocab::stats("ZScoreMethod"), {col}, {},
               {"a", "b"});
  }));
}

TEST_CASE("finalize validates, freezes and is idempotent") {
  PipelineBuilder b(schema(), "demo", "data.csv");
  CHECK(throws_with_code(ViolationCode::EmptyPipeline, [&] { b.finalize(); }));

  auto col = b.create_data_entity("col", "x", vocab::kNumericColumn, "feature");
  auto canvas = b.add_task(vocab::visu("CanvasTask"), vocab::visu("CanvasMethod"), {}, {},
                           {"canvas"});
  b.add_task(vocab::visu("PlotTask"), vocab::visu("LinePlotMethod"), {canvas.output(), col}, {},
             {"final"});

  PipelineKG first = b.finalize();
  PipelineKG second = b.finalize();
  CHECK(graph_equal(first.graph(), second.graph()));
  CHECK(first.task_order().size() == 2);
  CHECK(first.start_task() == first.task_order()[0]);
  CHECK(first.dataset_path() == "data.csv");
}

TEST_CASE("save then load round-trips with graph equality") {
  auto path = std::filesystem::temp_directory_path() / "exekg_roundtrip.ttl";
  PipelineKG pipeline = build_visu_sample(schema());
  save_pipeline(pipeline, path);
  PipelineKG loaded = load_pipeline(schema(), path);
  CHECK(graph_equal(loaded.graph(), pipeline.graph()));
  CHECK(loaded.task_order() == pipeline.task_order());
  std::filesystem::remove(path);
}

TEST_CASE("chain linearity holds in every sample pipeline") {
  for (const PipelineKG& pipeline :
       {build_ml_sample(schema()), build_stats_sample(schema()), build_visu_sample(schema())}) {
    const Graph& g = pipeline.graph();
    std::map<std::string, int> outgoing, incoming;
    for (const Triple* t : g.with_predicate(vocab::has_next_task())) {
      outgoing[t->subject.str()]++;
      incoming[std::get<Iri>(t->object).str()]++;
    }
    for (const auto& [iri, n] : outgoing) CHECK(n <= 1);
    for (const auto& [iri, n] : incoming) CHECK(n <= 1);

    // exactly one task lacks an incoming edge, and it is the start task
    std::size_t no_incoming = 0;
    for (const Iri& task : pipeline.task_order())
      if (!incoming.count(task.str())) {
        no_incoming++;
        CHECK(task == pipeline.start_task());
      }
    CHECK(no_incoming == 1);

    // exactly one task lacks an outgoing edge
    std::size_t no_outgoing = 0;
    for (const Iri& task : pipeline.task_order())
      if (!outgoing.count(task.str())) no_outgoing++;
    CHECK(no_outgoing == 1);
  }
}

TEST_CASE("builder emits only schema-declared IRIs plus minted individuals") {
  PipelineKG pipeline = build_ml_sample(schema());
  const Graph& schema_graph = schema().graph();
  auto known = [&](const Iri& iri) {
    if (iri == iris::rdf_type()) return true;
    if (iri.str().rfind(pipeline_namespace(), 0) == 0) return true;
    return !schema_graph.with_subject(iri).empty();
  };
  for (const Triple& t : pipeline.graph().triples()) {
    CAPTURE(t.subject.str());
    CAPTURE(t.predicate.str());
    CHECK(known(t.subject));
    CHECK(known(t.predicate));
    if (const auto* iri = std::get_if<Iri>(&t.object)) CHECK(known(*iri));
  }
}

TEST_CASE("builder output equals the shipped golden fixtures byte for byte") {
  std::map<std::string, PipelineKG> built;
  built.emplace("ml_pipeline.ttl", build_ml_sample(schema()));
  built.emplace("stats_pipeline.ttl", build_stats_sample(schema()));
  built.emplace("visu_pipeline.ttl", build_visu_sample(schema()));
  for (const auto& [name, pipeline] : built) {
    std::filesystem::path fixture = std::filesystem::path(EXEKG_SOURCE_DIR) / "fixtures" / name;
    REQUIRE(std::filesystem::exists(fixture));
    std::ifstream in(fixture, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    CAPTURE(name);
    CHECK(serialize_turtle(pipeline.graph()) == buf.str());
    CHECK(graph_equal(parse_turtle(buf.str()), pipeline.graph()));
  }
}

TEST_CASE("mutated pipeline graphs are rejected with the designated codes") {
  PipelineKG pipeline = build_ml_sample(schema());
  const Graph& g = pipeline.graph();
  Iri task1 = pipeline.task_order()[0];
  Iri last_task = pipeline.task_order().back();

  SUBCASE("deleting ds:hasMethod yields MISSING_METHOD") {
    Graph mutated = without(g, [&](const Triple& t) {
      return t.subject == task1 && t.predicate == vocab::has_method();
    });
    auto violations = validate_pipeline_graph(schema(), mutated);
    CHECK(has_violation(violations, ViolationCode::MissingMethod));
  }

  SUBCASE("a second hasNextTask successor yields NONLINEAR_CHAIN") {
    Graph mutated = g;
    mutated.add({task1, vocab::has_next_task(), Term(pipeline.task_order()[2])});
    auto violations = validate_pipeline_graph(schema(), mutated);
    CHECK(has_violation(violations, ViolationCode::NonlinearChain));
  }

  SUBCASE("a hasNextTask cycle yields CYCLE") {
    Graph mutated = g;
    mutated.add({last_task, vocab::has_next_task(), Term(task1)});
    auto violations = validate_pipeline_graph(schema(), mutated);
    CHECK(has_violation(violations, ViolationCode::Cycle));
  }

  SUBCASE("dangling an input yields DANGLING_INPUT") {
    // drop every triple describing one input entity
    Iri entity(pipeline_namespace() + "ml_pipeline_entity_feat_a");
    Graph mutated = without(g, [&](const Triple& t) { return t.subject == entity; });
    auto violations = validate_pipeline_graph(schema(), mutated);
    CHECK(has_violation(violations, ViolationCode::DanglingInput));
  }
}

TEST_CASE("loading a hand-broken KG file is rejected") {
  auto dir = std::filesystem::temp_directory_path();
  PipelineKG pipeline = build_visu_sample(schema());

  // two successors written straight into the Turtle text
  Graph mutated = pipeline.graph();
  mutated.add({pipeline.task_order()[0], vocab::has_next_task(),
               Term(pipeline.task_order()[0])});
  auto path = dir / "exekg_broken.ttl";
  {
    std::ofstream out(path, std::ios::binary);
    out << serialize_turtle(mutated);
  }
  CHECK(throws_with_code(ViolationCode::NonlinearChain,
                         [&] { load_pipeline(schema(), path); }));
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_pipeline(schema(), dir / "exekg_missing.ttl"), IoError);
}

TEST_CASE("input produced by a later task is flagged") {
  // hand-assemble: task A consumes the output of task B while B follows A
  PipelineBuilder b(schema(), "demo", "data.csv");
  auto col = b.create_data_entity("col", "x", vocab::kNumericColumn, "feature");
  auto t1 = b.add_task(vocab::stats("NormalizationTask"), vocab::stats("ZScoreMethod"), {col},
                       {}, {"n1"});
  b.add_task(vocab::stats("NormalizationTask"), vocab::stats("ZScoreMethod"), {t1.output()}, {},
             {"n2"});
  Graph g = b.graph();
  // rewire task 1's slot content and hasInput onto task 2's output entity
  Iri n2(pipeline_namespace() + "demo_entity_n2");
  Graph mutated;
  for (const auto& [prefix, ns] : g.prefixes()) mutated.register_prefix(prefix, ns);
  for (const Triple& t : g.triples()) {
    Triple copy = t;
    bool about_task1_input =
        t.subject.str() == pipeline_namespace() + "demo_task_1_in_0" &&
        t.predicate == vocab::slot_content();
    if (about_task1_input) copy.object = Term(n2);
    if (t.subject.str() == pipeline_namespace() + "demo_task_1" &&
        t.predicate == vocab::has_input())
      copy.object = Term(n2);
    mutated.add(copy);
  }
  auto violations = validate_pipeline_graph(schema(), mutated);
  CHECK(has_violation(violations, ViolationCode::DanglingInput));
}
