#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "exekg/errors.hpp"
#include "exekg/prng.hpp"
#include "exekg/table.hpp"

namespace exekg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Disjoint sorted row-index sets covering 0..n-1.
struct SplitIndices {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;

  std::size_t total() const { return train_rows.size() + test_rows.size(); }
  bool operator==(const SplitIndices&) const = default;
};

// Fisher-Yates shuffle of 0..n-1 driven by Lcg64(seed); the first
// ceil(ratio*n) shuffled rows train, the rest test. The ratio is clamped so
// both parts stay non-empty.
SplitIndices train_test_split(std::size_t n, double ratio, std::uint64_t seed);

// ---------------------------------------------------------------------------
// k-NN

// Label is double (regression-style vote over exact values) or std::string.
template <typename Label>
struct KnnModel {
  int k = 1;
  Matrix train_features;          // rows x features
  std::vector<Label> train_labels;  // one per row
};

template <typename Label>
KnnModel<Label> knn_train(Matrix features, std::vector<Label> labels, int k) {
  if (static_cast<std::size_t>(features.rows()) != labels.size())
    throw Error("k-NN: feature rows and label count differ");
  if (k < 1) throw Error("k-NN: k must be >= 1");
  if (k > features.rows())
    throw Error("k-NN: k = " + std::to_string(k) + " exceeds " +
                std::to_string(features.rows()) + " training rows");
  return KnnModel<Label>{k, std::move(features), std::move(labels)};
}

// Majority label among the k Euclidean-nearest training rows. Distance ties
// break toward the lower training-row index; vote ties break toward the tied
// class whose nearest member comes first in that order.
template <typename Label>
Label knn_predict_one(const KnnModel<Label>& model, const Eigen::RowVectorXd& query) {
  if (query.cols() != model.train_features.cols())
    throw Error("k-NN: query has " + std::to_string(query.cols()) + " features, model expects " +
                std::to_string(model.train_features.cols()));
  const auto rows = static_cast<std::size_t>(model.train_features.rows());
  std::vector<std::pair<double, std::size_t>> order(rows);
  for (std::size_t i = 0; i < rows; i++)
    order[i] = {(model.train_features.row(static_cast<Eigen::Index>(i)) - query).squaredNorm(), i};
  std::sort(order.begin(), order.end());  // (distance, row index)

  // Count votes over the first k neighbors; remember each class's earliest
  // position in the neighbor order.
  std::vector<Label> classes;
  std::vector<int> votes;
  std::vector<std::size_t> first_seen;
  for (int j = 0; j < model.k; j++) {
    const Label& label = model.train_labels[order[static_cast<std::size_t>(j)].second];
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) {
      classes.push_back(label);
      votes.push_back(1);
      first_seen.push_back(static_cast<std::size_t>(j));
    } else {
      votes[static_cast<std::size_t>(it - classes.begin())]++;
    }
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes.size(); c++) {
    if (votes[c] > votes[best] || (votes[c] == votes[best] && first_seen[c] < first_seen[best]))
      best = c;
  }
  return classes[best];
}

template <typename Label>
std::vector<Label> knn_predict(const KnnModel<Label>& model, const Matrix& queries) {
  std::vector<Label> out;
  out.reserve(static_cast<std::size_t>(queries.rows()));
  for (Eigen::Index q = 0; q < queries.rows(); q++)
    out.push_back(knn_predict_one(model, Eigen::RowVectorXd(queries.row(q))));
  return out;
}

// ---------------------------------------------------------------------------
// Ordinary least squares

struct LinRegModel {
  Vector weights;
  double intercept = 0;
};

// Normal equations on the intercept-augmented design, solved by Gaussian
// elimination with partial pivoting. A pivot below 1e-12 raises a
// singular-system error. Requires rows > feature count.
LinRegModel linreg_fit(const Matrix& features, const Vector& targets);
Vector linreg_predict(const LinRegModel& model, const Matrix& queries);

// ---------------------------------------------------------------------------
// Single-hidden-layer MLP: tanh activation, linear output, full-batch
// gradient descent on mean squared error.

struct MlpModel {
  Matrix hidden_weights;  // hidden x features
  Vector hidden_bias;     // hidden
  Vector out_weights;     // hidden
  double out_bias = 0;
};

struct MlpGradient {
  Matrix hidden_weights;
  Vector hidden_bias;
  Vector out_weights;
  double out_bias = 0;
};

// Uniform [-0.5, 0.5) weights drawn from Lcg64(seed), in this order:
// hidden_weights row by row, hidden_bias, out_weights, out_bias.
MlpModel mlp_init(Eigen::Index feature_count, Eigen::Index hidden_size, std::uint64_t seed);

// MSE over the batch and its analytic gradient.
std::pair<double, MlpGradient> mlp_loss_gradient(const MlpModel& model, const Matrix& features,
                                                 const Vector& targets);

// Full-batch descent from an explicit starting point (also the test hook for
// fixed initializations). A non-finite loss surfaces as an error.
MlpModel mlp_train(MlpModel model, const Matrix& features, const Vector& targets, int epochs,
                   double learning_rate);

MlpModel mlp_fit(const Matrix& features, const Vector& targets, Eigen::Index hidden_size,
                 int epochs, double learning_rate, std::uint64_t seed);

Vector mlp_predict(const MlpModel& model, const Matrix& queries);

// ---------------------------------------------------------------------------
// Performance metrics

enum class PerformanceKind { Accuracy, MAE, RMSE, PredictionError };

struct MetricValue {
  std::variant<double, std::vector<double>> value;

  bool is_scalar() const { return value.index() == 0; }
  double scalar() const { return std::get<0>(value); }
  const std::vector<double>& vec() const { return std::get<1>(value); }
};

// Accuracy = matches/n over label-valued columns (both categorical, compared
// by string equality, or both numeric, compared exactly). MAE, RMSE and
// PredictionError require numeric columns.
MetricValue performance(PerformanceKind kind, const Column& predictions, const Column& truth);

}  // namespace exekg
