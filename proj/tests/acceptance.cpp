// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "exekg/builder.hpp"
#include "exekg/executor.hpp"
#include "exekg/ml.hpp"
#include "exekg/prng.hpp"
#include "exekg/samples.hpp"
#include "exekg/stats.hpp"
#include "exekg/vocab.hpp"

using namespace exekg;
namespace fs = std::filesystem;

namespace {

const std::string kSourceDir = EXEKG_SOURCE_DIR;
std::ostringstream detail;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    count++;
    pos++;
  }
  return count;
}

Table demo_table() { return load_csv(kSourceDir + "/data/demo_data.csv"); }

// --------------------------------------------------------------------------
// Independent oracles (duplicated on purpose; they must not share code with
// the implementations they check).

double oracle_quantile(std::vector<double> values, double f) {
  std::sort(values.begin(), values.end());
  double pos = f * static_cast<double>(values.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = static_cast<std::size_t>(std::ceil(pos));
  return values[lo] + (pos - std::floor(pos)) * (values[hi] - values[lo]);
}

template <typename Label>
Label oracle_knn(const Matrix& train, const std::vector<Label>& labels,
                 const Eigen::RowVectorXd& query, int k) {
  std::vector<std::pair<double, std::size_t>> order;
  for (Eigen::Index i = 0; i < train.rows(); i++)
    order.emplace_back((train.row(i) - query).squaredNorm(), static_cast<std::size_t>(i));
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  std::map<Label, int> votes;
  for (int j = 0; j < k; j++) votes[labels[order[static_cast<std::size_t>(j)].second]]++;
  int best = 0;
  for (const auto& [label, count] : votes) best = std::max(best, count);
  for (int j = 0; j < k; j++) {
    const Label& candidate = labels[order[static_cast<std::size_t>(j)].second];
    if (votes[candidate] == best) return candidate;
  }
  return labels[order[0].second];
}

// --------------------------------------------------------------------------
// Criteria

bool criterion_sample_parity() {
  auto started = std::chrono::steady_clock::now();
  Schema schema = load_builtin_schemata();
  MethodRegistry registry = default_registry();
  Table table = demo_table();

  struct Expectation {
    std::string name;
    PipelineKG pipeline;
    std::string marker;
    std::size_t marker_count;
  };
  std::vector<Expectation> cases;
  cases.push_back({"ml", build_ml_sample(schema), "<circle", 40});       // 40 test-row errors
  cases.push_back({"stats", build_stats_sample(schema), "<circle", 400});  // 2 series x 200
  cases.push_back({"visu", build_visu_sample(schema), "<polyline", 1});

  for (auto& c : cases) {
    // (a) validation
    auto violations = validate_pipeline_graph(schema, c.pipeline.graph());
    if (!violations.empty()) {
      detail << c.name << ": validation produced " << violations.size() << " violations";
      return false;
    }
    // (b) Turtle round trip with graph equality
    Graph back = parse_turtle(serialize_turtle(c.pipeline.graph()));
    if (!graph_equal(back, c.pipeline.graph())) {
      detail << c.name << ": Turtle round trip lost graph equality";
      return false;
    }
    // (c) execution with the described artifact
    fs::path out = fresh_dir("exekg_acc_" + c.name);
    ExecutionReport report = execute(c.pipeline, schema, registry, table, out);
    if (report.artifacts.size() != 1 || !fs::exists(report.artifacts[0])) {
      detail << c.name << ": expected exactly one emitted SVG";
      return false;
    }
    std::string svg = read_file(report.artifacts[0]);
    std::size_t found = count_of(svg, c.marker);
    if (found != c.marker_count) {
      detail << c.name << ": expected " << c.marker_count << " of " << c.marker << ", found "
             << found;
      return false;
    }
  }

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  if (elapsed.count() >= 5000) {
    detail << "runtime " << elapsed.count() << " ms exceeds the 5 s budget";
    return false;
  }
  detail << "3 pipelines validated, round-tripped and executed in " << elapsed.count() << " ms";
  return true;
}

bool criterion_builder_loader_equivalence() {
  Schema schema = load_builtin_schemata();
  std::map<std::string, PipelineKG> built;
  built.emplace("ml_pipeline.ttl", build_ml_sample(schema));
  built.emplace("stats_pipeline.ttl", build_stats_sample(schema));
  built.emplace("visu_pipeline.ttl", build_visu_sample(schema));
  for (const auto& [name, pipeline] : built) {
    std::string golden = read_file(fs::path(kSourceDir) / "fixtures" / name);
    if (serialize_turtle(pipeline.graph()) != golden) {
      detail << name << ": serialized bytes differ from the shipped fixture";
      return false;
    }
    PipelineKG loaded = load_pipeline(schema, fs::path(kSourceDir) / "fixtures" / name);
    if (!graph_equal(loaded.graph(), pipeline.graph())) {
      detail << name << ": loaded fixture is not graph-equal to the API-built KG";
      return false;
    }
  }
  detail << "3 fixtures byte-identical and graph-equal";
  return true;
}

bool criterion_knn_oracle() {
  Lcg64 rng(4242);
  int mismatches = 0;
  const int instances = 100;
  for (int trial = 0; trial < instances; trial++) {
    Eigen::Index n = 5 + static_cast<Eigen::Index>(rng.next_below(196));  // <= 200
    Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.next_below(5));
    int k = std::vector<int>{1, 3, 5}[rng.next_below(3)];
    Matrix x(n, d);
    for (Eigen::Index r = 0; r < n; r++)
      for (Eigen::Index c = 0; c < d; c++)
        x(r, c) = static_cast<double>(rng.next_below(5));  // coarse grid forces ties
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < n; i++)
      labels.push_back(std::string(1, static_cast<char>('a' + rng.next_below(3))));
    auto model = knn_train(x, labels, k);
    for (int q = 0; q < 3; q++) {
      Eigen::RowVectorXd query(d);
      for (Eigen::Index c = 0; c < d; c++) query(c) = static_cast<double>(rng.next_below(5));
      if (knn_predict_one(model, query) != oracle_knn(x, labels, query, k)) mismatches++;
    }
  }
  detail << instances << " instances, " << mismatches << " mismatches";
  return mismatches == 0;
}

bool criterion_quartile_outlier_oracle() {
  Lcg64 rng(777);
  double worst = 0;
  for (int trial = 0; trial < 100; trial++) {
    std::size_t n = 2 + rng.next_below(999);  // <= 1000
    std::vector<double> v(n);
    for (auto& x : v) x = (rng.next_unit() - 0.5) * 1000.0;

    Quartiles q = quartiles(v);
    double q1 = oracle_quantile(v, 0.25);
    double q3 = oracle_quantile(v, 0.75);
    worst = std::max({worst, std::abs(q.q1 - q1), std::abs(q.q3 - q3),
                      std::abs(q.iqr - (q3 - q1))});
    if (worst > 1e-9) {
      detail << "quartile deviation " << worst << " at trial " << trial;
      return false;
    }

    auto mask = detect_outliers(v);
    double lo = q1 - 1.5 * (q3 - q1);
    double hi = q3 + 1.5 * (q3 - q1);
    for (std::size_t i = 0; i < n; i++) {
      if (mask[i] != (v[i] < lo || v[i] > hi)) {
        detail << "outlier mask disagrees at trial " << trial << ", index " << i;
        return false;
      }
    }
  }
  detail << "100 columns, max quartile deviation " << worst;
  return true;
}

bool criterion_ols() {
  // exact two-point fit
  Matrix two(2, 1);
  two << 0, 1;
  Vector targets(2);
  targets << 1, 3;
  LinRegModel line = linreg_fit(two, targets);
  if (std::abs(line.weights(0) - 2) > 1e-10 || std::abs(line.intercept - 1) > 1e-10) {
    detail << "two-point fit off: w=" << line.weights(0) << " b=" << line.intercept;
    return false;
  }

  Lcg64 rng(31337);
  for (int trial = 0; trial < 20; trial++) {
    Matrix x(20, 2);
    for (Eigen::Index r = 0; r < 20; r++)
      for (Eigen::Index c = 0; c < 2; c++) x(r, c) = (rng.next_unit() - 0.5) * 10;
    Vector y(20);
    for (Eigen::Index r = 0; r < 20; r++)
      y(r) = 2.0 * x(r, 0) - x(r, 1) + 0.3 + (rng.next_unit() - 0.5);

    LinRegModel model = linreg_fit(x, y);
    Vector residual = y - linreg_predict(model, x);
    for (Eigen::Index c = 0; c < 2; c++) {
      if (std::abs(residual.dot(x.col(c))) > 1e-8) {
        detail << "residual not orthogonal to column " << c;
        return false;
      }
    }
    if (std::abs(residual.sum()) > 1e-8) {
      detail << "residual not orthogonal to the intercept column";
      return false;
    }

    // affine equivariance in the targets
    double a = 1.0 + rng.next_unit() * 3.0, b = (rng.next_unit() - 0.5) * 8.0;
    Vector base = linreg_predict(model, x);
    Vector scaled = linreg_predict(linreg_fit(x, (a * y).array() + b), x);
    for (Eigen::Index i = 0; i < 20; i++) {
      if (std::abs(scaled(i) - (a * base(i) + b)) > 1e-8) {
        detail << "affine equivariance violated at row " << i;
        return false;
      }
    }
  }
  detail << "two-point exact, orthogonality and equivariance within tolerance";
  return true;
}

bool criterion_mlp_gradient() {
  Matrix x(4, 2);
  x << 0.2, -1.1, 0.9, 0.4, -0.7, 0.8, 1.5, -0.3;
  Vector y(4);
  y << 0.5, -0.2, 0.3, 1.1;
  MlpModel model = mlp_init(2, 3, 7);
  auto [loss, grad] = mlp_loss_gradient(model, x, y);
  (void)loss;

  const double h = 1e-5;
  double max_rel = 0;
  auto probe = [&](double* p, double analytic) {
    double saved = *p;
    *p = saved + h;
    double up = mlp_loss_gradient(model, x, y).first;
    *p = saved - h;
    double down = mlp_loss_gradient(model, x, y).first;
    *p = saved;
    double numeric = (up - down) / (2 * h);
    double rel =
        std::abs(numeric - analytic) / std::max({std::abs(numeric), std::abs(analytic), 1e-8});
    max_rel = std::max(max_rel, rel);
  };
  for (Eigen::Index r = 0; r < model.hidden_weights.rows(); r++)
    for (Eigen::Index c = 0; c < model.hidden_weights.cols(); c++)
      probe(&model.hidden_weights(r, c), grad.hidden_weights(r, c));
  for (Eigen::Index i = 0; i < model.hidden_bias.size(); i++)
    probe(&model.hidden_bias(i), grad.hidden_bias(i));
  for (Eigen::Index i = 0; i < model.out_weights.size(); i++)
    probe(&model.out_weights(i), grad.out_weights(i));
  probe(&model.out_bias, grad.out_bias);

  detail << "max relative error " << max_rel;
  return max_rel < 1e-4;
}

bool criterion_normalization() {
  Lcg64 rng(808);
  for (int trial = 0; trial < 50; trial++) {
    std::size_t n = 2 + rng.next_below(400);
    std::vector<double> v(n);
    for (auto& x : v) x = (rng.next_unit() - 0.5) * 50;
    auto out = normalize(v);
    if (std::abs(mean(out)) > 1e-9 || std::abs(std_dev(out) - 1.0) > 1e-9) {
      detail << "normalized column off at trial " << trial;
      return false;
    }
  }
  auto zeros = normalize(std::vector<double>{3.5, 3.5, 3.5, 3.5});
  if (zeros != std::vector<double>{0, 0, 0, 0}) {
    detail << "constant column did not map to zeros";
    return false;
  }
  detail << "mean 0 / std 1 within 1e-9; constant columns map to zeros";
  return true;
}

bool criterion_mutation_detection() {
  Schema schema = load_builtin_schemata();
  PipelineKG pipeline = build_ml_sample(schema);
  const Graph& g = pipeline.graph();
  Iri first = pipeline.task_order().front();
  Iri last = pipeline.task_order().back();

  auto has_code = [](const std::vector<Violation>& violations, ViolationCode code) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  };
  auto copy_without = [&](const std::function<bool(const Triple&)>& drop) {
    Graph out;
    for (const Triple& t : g.triples())
      if (!drop(t)) out.add(t);
    return out;
  };

  int detected = 0;

  Graph no_method = copy_without(
      [&](const Triple& t) { return t.subject == first && t.predicate == vocab::has_method(); });
  if (has_code(validate_pipeline_graph(schema, no_method), ViolationCode::MissingMethod))
    detected++;

  Graph forked = g;
  forked.add({first, vocab::has_next_task(), Term(last)});
  if (has_code(validate_pipeline_graph(schema, forked), ViolationCode::NonlinearChain))
    detected++;

  Graph cyclic = g;
  cyclic.add({last, vocab::has_next_task(), Term(first)});
  if (has_code(validate_pipeline_graph(schema, cyclic), ViolationCode::Cycle)) detected++;

  Iri entity(pipeline_namespace() + "ml_pipeline_entity_feat_a");
  Graph dangling = copy_without([&](const Triple& t) { return t.subject == entity; });
  if (has_code(validate_pipeline_graph(schema, dangling), ViolationCode::DanglingInput))
    detected++;

  detail << detected << "/4 mutations rejected with their designated codes";
  return detected == 4;
}

bool criterion_executor_determinism() {
  Schema schema = load_builtin_schemata();
  MethodRegistry registry = default_registry();
  Table table = demo_table();
  PipelineKG pipeline = build_ml_sample(schema);

  fs::path out_a = fresh_dir("exekg_acc_det_a");
  fs::path out_b = fresh_dir("exekg_acc_det_b");
  ExecutionReport a = execute(pipeline, schema, registry, table, out_a);
  ExecutionReport b = execute(pipeline, schema, registry, table, out_b);

  if (a.artifacts.size() != 1 || b.artifacts.size() != 1) {
    detail << "expected one SVG per run";
    return false;
  }
  if (read_file(a.artifacts[0]) != read_file(b.artifacts[0])) {
    detail << "SVG bytes differ between runs";
    return false;
  }
  const auto& ea = a.metrics.at("ml_pipeline_entity_errors").vec();
  const auto& eb = b.metrics.at("ml_pipeline_entity_errors").vec();
  if (ea != eb) {
    detail << "metric vectors differ between runs";
    return false;
  }
  detail << "byte-identical SVGs, equal metrics";
  return true;
}

bool criterion_registry_extensibility() {
  // a test-only plugin method: declared in code, registered, executed --
  // with the stock executor.
  Schema schema = load_builtin_schemata();
  Iri range_method("https://exekg.example/ext#RangeMethod");
  schema.extend_with_method(vocab::stats("StatisticTask"), range_method, {});

  MethodRegistry registry = default_registry();
  bool invoked = false;
  registry.register_method(range_method, [&invoked](const MethodCall& call,
                                                    ExecutionContext& ctx) {
    invoked = true;
    const auto& column = std::get<Column>(ctx.read(call.input_for_role("data").entity));
    auto [lo, hi] = std::minmax_element(column.numbers().begin(), column.numbers().end());
    return std::vector<Value>{Value(MetricValue{*hi - *lo})};
  });

  PipelineBuilder builder(schema, "plugin_demo", "unused.csv");
  auto column = builder.create_data_entity("x", "feat_a", vocab::kNumericColumn, "feature");
  builder.add_task(vocab::stats("StatisticTask"), range_method, {column}, {}, {"range"});
  PipelineKG pipeline = builder.finalize();

  fs::path out = fresh_dir("exekg_acc_ext");
  ExecutionReport report = execute(pipeline, schema, registry, demo_table(), out);
  if (!invoked) {
    detail << "plugin implementation was never invoked";
    return false;
  }
  if (!report.metrics.count("plugin_demo_entity_range")) {
    detail << "plugin metric missing from the report";
    return false;
  }
  detail << "plugin method executed through the stock executor";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1. sample-pipeline parity (build, round-trip, execute < 5 s)", criterion_sample_parity},
      {"2. builder/loader equivalence with golden fixtures", criterion_builder_loader_equivalence},
      {"3. k-NN matches the brute-force oracle exactly", criterion_knn_oracle},
      {"4. quartiles/outliers match the interpolation+fence oracle (1e-9)",
       criterion_quartile_outlier_oracle},
      {"5. OLS: exact fit 1e-10, orthogonality 1e-8, equivariance 1e-8", criterion_ols},
      {"6. MLP analytic vs finite-difference gradient (< 1e-4)", criterion_mlp_gradient},
      {"7. normalization: mean 0 / std 1 (1e-9), constants to zeros", criterion_normalization},
      {"8. chain invariants: 4/4 mutations rejected with designated codes",
       criterion_mutation_detection},
      {"9. executor determinism: byte-identical SVGs, equal metrics",
       criterion_executor_determinism},
      {"10. registry extensibility without executor changes", criterion_registry_extensibility},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    detail.str("");
    bool ok = false;
    std::string error;
    try {
      ok = criterion.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (!ok) failures++;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.name;
    std::string extra = error.empty() ? detail.str() : error;
    if (!extra.empty()) std::cout << "  -- " << extra;
    std::cout << "\n";
  }
  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
