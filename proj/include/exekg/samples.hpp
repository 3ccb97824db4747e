#pragma once

#include <string>

#include "exekg/builder.hpp"
#include "exekg/schema.hpp"

namespace exekg {

// The three bundled pipelines over the demo dataset (numeric columns feat_a,
// feat_b, feat_c plus a categorical column category).

// Splits the data, trains and tests a k-NN model on feat_a/feat_b against
// feat_c, and scatter-plots the prediction errors.
PipelineKG build_ml_sample(const Schema& schema,
                           const std::string& dataset_path = "data/demo_data.csv");

// Normalizes feat_a and scatter-plots it before and after normalization.
PipelineKG build_stats_sample(const Schema& schema,
                              const std::string& dataset_path = "data/demo_data.csv");

// Line-plots feat_a.
PipelineKG build_visu_sample(const Schema& schema,
                             const std::string& dataset_path = "data/demo_data.csv");

}  // namespace exekg
