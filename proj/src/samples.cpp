#include "exekg/samples.hpp"

#include "exekg/vocab.hpp"

namespace exekg {

PipelineKG build_ml_sample(const Schema& schema, const std::string& dataset_path) {
  PipelineBuilder builder(schema, "ml_pipeline", dataset_path);
  auto feat_a = builder.create_data_entity("feat_a", "feat_a", vocab::kNumericColumn, "feature");
  auto feat_b = builder.create_data_entity("feat_b", "feat_b", vocab::kNumericColumn, "feature");
  auto target = builder.create_data_entity("target", "feat_c", vocab::kNumericColumn, "target");

  auto split = builder.add_task(vocab::ml("DataSplittingTask"), vocab::ml("TrainTestSplitMethod"),
                                {feat_a, feat_b, target},
                                {{vocab::ml("hasSplitRatio"), Literal::number(0.8)},
                                 {vocab::ml("hasSeed"), Literal::integer(42)}},
                                {"split"});
  auto train = builder.add_task(vocab::ml("TrainTask"), vocab::ml("KNNTrainMethod"),
                                {feat_a, feat_b, target, split.output()},
                                {{vocab::ml("hasK"), Literal::integer(3)}}, {"model"});
  auto test = builder.add_task(vocab::ml("TestTask"), vocab::ml("PredictMethod"),
                               {train.output(), feat_a, feat_b, split.output()}, {},
                               {"predictions"});
  auto perf = builder.add_task(vocab::ml("PerformanceTask"), vocab::ml("PredictionErrorMethod"),
                               {test.output(), target, split.output()}, {}, {"errors"});
  auto canvas = builder.add_task(vocab::visu("CanvasTask"), vocab::visu("CanvasMethod"), {}, {},
                                 {"canvas"});
  builder.add_task(vocab::visu("PlotTask"), vocab::visu("ScatterPlotMethod"),
                   {canvas.output(), perf.output()}, {}, {"final_canvas"});
  return builder.finalize();
}

PipelineKG build_stats_sample(const Schema& schema, const std::string& dataset_path) {
  PipelineBuilder builder(schema, "stats_pipeline", dataset_path);
  auto feat_a = builder.create_data_entity("feat_a", "feat_a", vocab::kNumericColumn, "feature");

  auto normalize = builder.add_task(vocab::stats("NormalizationTask"),
                                    vocab::stats("ZScoreMethod"), {feat_a}, {}, {"normalized"});
  auto canvas = builder.add_task(vocab::visu("CanvasTask"), vocab::visu("CanvasMethod"), {}, {},
                                 {"canvas"});
  builder.add_task(vocab::visu("PlotTask"), vocab::visu("ScatterPlotMethod"),
                   {canvas.output(), feat_a, normalize.output()}, {}, {"final_canvas"});
  return builder.finalize();
}

PipelineKG build_visu_sample(const Schema& schema, const std::string& dataset_path) {
  PipelineBuilder builder(schema, "visu_pipeline", dataset_path);
  auto feat_a = builder.create_data_entity("feat_a", "feat_a", vocab::kNumericColumn, "feature");

  auto canvas = builder.add_task(vocab::visu("CanvasTask"), vocab::visu("CanvasMethod"), {}, {},
                                 {"canvas"});
  builder.add_task(vocab::visu("PlotTask"), vocab::visu("LinePlotMethod"),
                   {canvas.output(), feat_a}, {}, {"final_canvas"});
  return builder.finalize();
}

}  // namespace exekg
