#include <fstream>

#include "exekg/executor.hpp"
#include "exekg/stats.hpp"
#include "exekg/vocab.hpp"

// Native implementations backing the shipped method types. Each is a pure
// function of its resolved inputs and params; plot methods additionally write
// their rendered SVG under <out>/plots/.
namespace exekg {

namespace {

const Column& column_input(const ExecutionContext& ctx, const ResolvedInput& input) {
  const Value& value = ctx.read(input.entity);
  const auto* column = std::get_if<Column>(&value);
  if (!column)
    throw Error("input <" + input.entity.str() + "> is not a column (got " +
                value_structure(value) + ")");
  return *column;
}

const std::vector<double>& numeric_input(const ExecutionContext& ctx,
                                         const ResolvedInput& input) {
  const Column& column = column_input(ctx, input);
  if (!column.is_numeric()) throw Error("input <" + input.entity.str() + "> must be numeric");
  return column.numbers();
}

const SplitIndices& split_input(const ExecutionContext& ctx, const MethodCall& call) {
  const Value& value = ctx.read(call.input_for_role("split").entity);
  const auto* split = std::get_if<SplitIndices>(&value);
  if (!split) throw Error("'split' input is not a SplitIndices value");
  return *split;
}

std::vector<double> take_rows(const std::vector<double>& values,
                              const std::vector<std::size_t>& rows) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= values.size()) throw Error("split references row beyond the column length");
    out.push_back(values[r]);
  }
  return out;
}

std::vector<std::string> take_rows(const std::vector<std::string>& values,
                                   const std::vector<std::size_t>& rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= values.size()) throw Error("split references row beyond the column length");
    out.push_back(values[r]);
  }
  return out;
}

// Feature columns for a role, restricted to the given rows, as a matrix.
Matrix feature_matrix(const ExecutionContext& ctx, const MethodCall& call,
                      const std::vector<std::size_t>& rows) {
  auto features = call.inputs_for_role("features");
  Matrix m(rows.size(), features.size());
  for (std::size_t c = 0; c < features.size(); c++) {
    auto column = take_rows(numeric_input(ctx, *features[c]), rows);
    for (std::size_t r = 0; r < rows.size(); r++)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = column[r];
  }
  return m;
}

Vector to_vector(const std::vector<double>& values) {
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// --- visualization ---------------------------------------------------------

std::vector<Value> run_canvas(const MethodCall& call, ExecutionContext&) {
  Canvas canvas = create_canvas(
      static_cast<int>(call.param(vocab::visu("hasWidth")).as_integer()),
      static_cast<int>(call.param(vocab::visu("hasHeight")).as_integer()),
      static_cast<int>(call.param(vocab::visu("hasGridRows")).as_integer()),
      static_cast<int>(call.param(vocab::visu("hasGridCols")).as_integer()));
  return {Value(std::move(canvas))};
}

std::vector<double> series_values(const ExecutionContext& ctx, const ResolvedInput& input) {
  const Value& value = ctx.read(input.entity);
  if (const auto* column = std::get_if<Column>(&value)) {
    if (!column->is_numeric())
      throw Error("series <" + input.entity.str() + "> must be numeric");
    return column->numbers();
  }
  if (const auto* metric = std::get_if<MetricValue>(&value))
    return metric->is_scalar() ? std::vector<double>{metric->scalar()} : metric->vec();
  throw Error("series <" + input.entity.str() + "> is neither a numeric column nor a metric");
}

std::vector<Value> run_plot(PlotKind kind, const MethodCall& call, ExecutionContext& ctx) {
  const Value& canvas_value = ctx.read(call.input_for_role("canvas").entity);
  const auto* canvas = std::get_if<Canvas>(&canvas_value);
  if (!canvas) throw Error("'canvas' input is not a Canvas value");

  PlotSpec plot;
  plot.kind = kind;
  for (const ResolvedInput* input : call.inputs_for_role("series")) {
    Series series;
    series.label = std::string(input->entity.local_name());
    series.y = series_values(ctx, *input);
    plot.series.push_back(std::move(series));
  }

  Canvas updated =
      add_plot(*canvas, static_cast<int>(call.param(vocab::visu("hasSlot")).as_integer()),
               std::move(plot));

  auto path = ctx.output_dir() / "plots" /
              (std::string(call.task_iri.local_name()) + ".svg");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write plot: " + path.string());
  out << render_svg(updated);
  out.close();
  ctx.record_artifact(path);

  return {Value(std::move(updated))};
}

// --- statistics ------------------------------------------------------------

std::vector<Value> run_statistic(double (*f)(std::span<const double>), const MethodCall& call,
                                 ExecutionContext& ctx) {
  const auto& data = numeric_input(ctx, call.input_for_role("data"));
  return {Value(MetricValue{f(data)})};
}

std::vector<Value> run_iqr(const MethodCall& call, ExecutionContext& ctx) {
  const auto& data = numeric_input(ctx, call.input_for_role("data"));
  return {Value(MetricValue{quartiles(data).iqr})};
}

std::vector<Value> run_zscore(const MethodCall& call, ExecutionContext& ctx) {
  const ResolvedInput& input = call.input_for_role("data");
  Column out;
  out.name = std::string(call.outputs.at(0).entity.local_name());
  out.values = normalize(numeric_input(ctx, input));
  return {Value(std::move(out))};
}

std::vector<Value> run_outliers(const MethodCall& call, ExecutionContext& ctx) {
  const ResolvedInput& input = call.input_for_role("data");
  auto mask = detect_outliers(numeric_input(ctx, input));
  Column out;
  out.name = std::string(call.outputs.at(0).entity.local_name());
  std::vector<double> flags(mask.size());
  for (std::size_t i = 0; i < mask.size(); i++) flags[i] = mask[i] ? 1.0 : 0.0;
  out.values = std::move(flags);
  return {Value(std::move(out))};
}

// --- machine learning ------------------------------------------------------

std::vector<Value> run_split(const MethodCall& call, ExecutionContext& ctx) {
  auto data = call.inputs_for_role("data");
  std::size_t n = column_input(ctx, *data.at(0)).size();
  for (const ResolvedInput* input : data)
    if (column_input(ctx, *input).size() != n)
      throw Error("split inputs differ in length");
  auto split = train_test_split(
      n, call.param(vocab::ml("hasSplitRatio")).as_double(),
      static_cast<std::uint64_t>(call.param(vocab::ml("hasSeed")).as_integer()));
  return {Value(std::move(split))};
}

std::vector<Value> run_knn_train(const MethodCall& call, ExecutionContext& ctx) {
  const SplitIndices& split = split_input(ctx, call);
  Matrix features = feature_matrix(ctx, call, split.train_rows);
  const Column& labels = column_input(ctx, call.input_for_role("labels"));
  int k = static_cast<int>(call.param(vocab::ml("hasK")).as_integer());
  ModelValue model;
  if (labels.is_numeric())
    model = knn_train<double>(std::move(features), take_rows(labels.numbers(), split.train_rows),
                              k);
  else
    model = knn_train<std::string>(std::move(features),
                                   take_rows(labels.labels(), split.train_rows), k);
  return {Value(std::move(model))};
}

std::vector<Value> run_linreg_train(const MethodCall& call, ExecutionContext& ctx) {
  const SplitIndices& split = split_input(ctx, call);
  Matrix features = feature_matrix(ctx, call, split.train_rows);
  const auto& labels = numeric_input(ctx, call.input_for_role("labels"));
  ModelValue model = linreg_fit(features, to_vector(take_rows(labels, split.train_rows)));
  return {Value(std::move(model))};
}

std::vector<Value> run_mlp_train(const MethodCall& call, ExecutionContext& ctx) {
  const SplitIndices& split = split_input(ctx, call);
  Matrix features = feature_matrix(ctx, call, split.train_rows);
  const auto& labels = numeric_input(ctx, call.input_for_role("labels"));
  ModelValue model = mlp_fit(
      features, to_vector(take_rows(labels, split.train_rows)),
      call.param(vocab::ml("hasHiddenSize")).as_integer(),
      static_cast<int>(call.param(vocab::ml("hasEpochs")).as_integer()),
      call.param(vocab::ml("hasLearningRate")).as_double(),
      static_cast<std::uint64_t>(call.param(vocab::ml("hasSeed")).as_integer()));
  return {Value(std::move(model))};
}

std::vector<Value> run_predict(const MethodCall& call, ExecutionContext& ctx) {
  const Value& model_value = ctx.read(call.input_for_role("model").entity);
  const auto* model = std::get_if<ModelValue>(&model_value);
  if (!model) throw Error("'model' input is not a trained model");
  const SplitIndices& split = split_input(ctx, call);
  Matrix queries = feature_matrix(ctx, call, split.test_rows);

  Column out;
  out.name = std::string(call.outputs.at(0).entity.local_name());
  if (const auto* knn = std::get_if<KnnModel<double>>(model)) {
    out.values = knn_predict(*knn, queries);
  } else if (const auto* knn_cat = std::get_if<KnnModel<std::string>>(model)) {
    // Categorical predictions cannot fill the NumericColumn the test task
    // declares; the structure check in the executor reports this clearly.
    out.values = knn_predict(*knn_cat, queries);
  } else if (const auto* linreg = std::get_if<LinRegModel>(model)) {
    Vector predictions = linreg_predict(*linreg, queries);
    out.values = std::vector<double>(predictions.begin(), predictions.end());
  } else {
    Vector predictions = mlp_predict(std::get<MlpModel>(*model), queries);
    out.values = std::vector<double>(predictions.begin(), predictions.end());
  }
  return {Value(std::move(out))};
}

std::vector<Value> run_performance(PerformanceKind kind, const MethodCall& call,
                                   ExecutionContext& ctx) {
  const Column& predictions = column_input(ctx, call.input_for_role("predictions"));
  const Column& truth_full = column_input(ctx, call.input_for_role("truth"));
  const SplitIndices& split = split_input(ctx, call);

  Column truth;
  truth.name = truth_full.name;
  if (truth_full.is_numeric())
    truth.values = take_rows(truth_full.numbers(), split.test_rows);
  else
    truth.values = take_rows(truth_full.labels(), split.test_rows);
  return {Value(performance(kind, predictions, truth))};
}

}  // namespace

MethodRegistry default_registry() {
  MethodRegistry registry;

  registry.register_method(vocab::visu("CanvasMethod"), run_canvas);
  registry.register_method(vocab::visu("LinePlotMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_plot(PlotKind::Line, c, x);
                           });
  registry.register_method(vocab::visu("ScatterPlotMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_plot(PlotKind::Scatter, c, x);
                           });
  registry.register_method(vocab::visu("BarPlotMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_plot(PlotKind::Bar, c, x);
                           });

  registry.register_method(vocab::stats("MeanMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_statistic(mean, c, x);
                           });
  registry.register_method(vocab::stats("StdMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_statistic(std_dev, c, x);
                           });
  registry.register_method(vocab::stats("IQRMethod"), run_iqr);
  registry.register_method(vocab::stats("ZScoreMethod"), run_zscore);
  registry.register_method(vocab::stats("IQRFenceMethod"), run_outliers);

  registry.register_method(vocab::ml("TrainTestSplitMethod"), run_split);
  registry.register_method(vocab::ml("KNNTrainMethod"), run_knn_train);
  registry.register_method(vocab::ml("LinRegTrainMethod"), run_linreg_train);
  registry.register_method(vocab::ml("MLPTrainMethod"), run_mlp_train);
  registry.register_method(vocab::ml("PredictMethod"), run_predict);
  registry.register_method(vocab::ml("AccuracyMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_performance(PerformanceKind::Accuracy, c, x);
                           });
  registry.register_method(vocab::ml("MAEMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_performance(PerformanceKind::MAE, c, x);
                           });
  registry.register_method(vocab::ml("RMSEMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_performance(PerformanceKind::RMSE, c, x);
                           });
  registry.register_method(vocab::ml("PredictionErrorMethod"),
                           [](const MethodCall& c, ExecutionContext& x) {
                             return run_performance(PerformanceKind::PredictionError, c, x);
                           });
  return registry;
}

}  // namespace exekg
