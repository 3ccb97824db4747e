#include "exekg/ml.hpp"

#include <numeric>

namespace exekg {

SplitIndices train_test_split(std::size_t n, double ratio, std::uint64_t seed) {
  if (n < 2) throw Error("train/test split needs at least 2 rows");
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error("split ratio must lie in (0, 1)");

  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  Lcg64 rng(seed);
  for (std::size_t i = n - 1; i > 0; i--) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(rows[i], rows[j]);
  }

  auto train_count = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
  if (train_count >= n) train_count = n - 1;  // keep the test side non-empty
  if (train_count == 0) train_count = 1;

  SplitIndices split;
  split.train_rows.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(train_count));
  split.test_rows.assign(rows.begin() + static_cast<std::ptrdiff_t>(train_count), rows.end());
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  return split;
}

LinRegModel linreg_fit(const Matrix& features, const Vector& targets) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (targets.size() != n) throw Error("OLS: target length differs from feature rows");
  if (n <= d) throw Error("OLS: needs more rows than features");

  Matrix design(n, d + 1);
  design.leftCols(d) = features;
  design.col(d).setOnes();

  Matrix system = design.transpose() * design;     // (d+1) x (d+1)
  Vector rhs = design.transpose() * targets;

  // Gaussian elimination with partial pivoting on the augmented system.
  const Eigen::Index m = d + 1;
  for (Eigen::Index col = 0; col < m; col++) {
    Eigen::Index pivot_row = col;
    for (Eigen::Index r = col + 1; r < m; r++)
      if (std::abs(system(r, col)) > std::abs(system(pivot_row, col))) pivot_row = r;
    if (std::abs(system(pivot_row, col)) < 1e-12)
      throw Error("OLS: singular system (rank-deficient design)");
    if (pivot_row != col) {
      system.row(pivot_row).swap(system.row(col));
      std::swap(rhs(pivot_row), rhs(col));
    }
    for (Eigen::Index r = col + 1; r < m; r++) {
      double factor = system(r, col) / system(col, col);
      system.row(r).tail(m - col) -= factor * system.row(col).tail(m - col);
      rhs(r) -= factor * rhs(col);
    }
  }
  Vector solution(m);
  for (Eigen::Index r = m - 1; r >= 0; r--) {
    double acc = rhs(r);
    for (Eigen::Index c = r + 1; c < m; c++) acc -= system(r, c) * solution(c);
    solution(r) = acc / system(r, r);
  }

  LinRegModel model;
  model.weights = solution.head(d);
  model.intercept = solution(d);
  return model;
}

Vector linreg_predict(const LinRegModel& model, const Matrix& queries) {
  if (queries.cols() != model.weights.size())
    throw Error("OLS: query feature count differs from model");
  return (queries * model.weights).array() + model.intercept;
}

MlpModel mlp_init(Eigen::Index feature_count, Eigen::Index hidden_size, std::uint64_t seed) {
  if (hidden_size < 1) throw Error("MLP: hidden size must be >= 1");
  if (feature_count < 1) throw Error("MLP: feature count must be >= 1");
  Lcg64 rng(seed);
  auto draw = [&rng] { return rng.next_unit() - 0.5; };

  MlpModel model;
  model.hidden_weights.resize(hidden_size, feature_count);
  for (Eigen::Index h = 0; h < hidden_size; h++)
    for (Eigen::Index f = 0; f < feature_count; f++) model.hidden_weights(h, f) = draw();
  model.hidden_bias.resize(hidden_size);
  for (Eigen::Index h = 0; h < hidden_size; h++) model.hidden_bias(h) = draw();
  model.out_weights.resize(hidden_size);
  for (Eigen::Index h = 0; h < hidden_size; h++) model.out_weights(h) = draw();
  model.out_bias = draw();
  return model;
}

namespace {
Matrix hidden_activations(const MlpModel& model, const Matrix& features) {
  Matrix pre = features * model.hidden_weights.transpose();
  pre.rowwise() += model.hidden_bias.transpose();
  return pre.array().tanh();
}
}  // namespace

std::pair<double, MlpGradient> mlp_loss_gradient(const MlpModel& model, const Matrix& features,
                                                 const Vector& targets) {
  const Eigen::Index n = features.rows();
  if (targets.size() != n) throw Error("MLP: target length differs from feature rows");
  if (features.cols() != model.hidden_weights.cols())
    throw Error("MLP: feature count differs from model");

  Matrix hidden = hidden_activations(model, features);          // n x h
  Vector predictions = hidden * model.out_weights;
  predictions.array() += model.out_bias;
  Vector residual = predictions - targets;
  double loss = residual.squaredNorm() / static_cast<double>(n);

  Vector d_pred = (2.0 / static_cast<double>(n)) * residual;    // dL/dpred
  Matrix d_hidden = d_pred * model.out_weights.transpose();     // n x h
  Matrix d_pre = d_hidden.array() * (1.0 - hidden.array().square());

  MlpGradient grad;
  grad.out_weights = hidden.transpose() * d_pred;
  grad.out_bias = d_pred.sum();
  grad.hidden_weights = d_pre.transpose() * features;           // h x d
  grad.hidden_bias = d_pre.colwise().sum().transpose();
  return {loss, std::move(grad)};
}

MlpModel mlp_train(MlpModel model, const Matrix& features, const Vector& targets, int epochs,
                   double learning_rate) {
  if (epochs < 0) throw Error("MLP: epochs must be >= 0");
  for (int epoch = 0; epoch < epochs; epoch++) {
    auto [loss, grad] = mlp_loss_gradient(model, features, targets);
    if (!std::isfinite(loss))
      throw Error("MLP: training diverged (non-finite loss at epoch " + std::to_string(epoch) +
                  ")");
    model.hidden_weights -= learning_rate * grad.hidden_weights;
    model.hidden_bias -= learning_rate * grad.hidden_bias;
    model.out_weights -= learning_rate * grad.out_weights;
    model.out_bias -= learning_rate * grad.out_bias;
  }
  return model;
}

MlpModel mlp_fit(const Matrix& features, const Vector& targets, Eigen::Index hidden_size,
                 int epochs, double learning_rate, std::uint64_t seed) {
  return mlp_train(mlp_init(features.cols(), hidden_size, seed), features, targets, epochs,
                   learning_rate);
}

Vector mlp_predict(const MlpModel& model, const Matrix& queries) {
  if (queries.cols() != model.hidden_weights.cols())
    throw Error("MLP: query feature count differs from model");
  Vector out = hidden_activations(model, queries) * model.out_weights;
  out.array() += model.out_bias;
  return out;
}

namespace {
void require_same_length(std::size_t a, std::size_t b) {
  if (a == 0) throw Error("performance: empty inputs");
  if (a != b)
    throw Error("performance: length mismatch (" + std::to_string(a) + " vs " + std::to_string(b) +
                ")");
}
}  // namespace

MetricValue performance(PerformanceKind kind, const Column& predictions, const Column& truth) {
  if (kind == PerformanceKind::Accuracy) {
    if (predictions.is_numeric() != truth.is_numeric())
      throw Error("accuracy: predictions and truth must share a value kind");
    std::size_t n = predictions.size();
    require_same_length(n, truth.size());
    std::size_t matches = 0;
    if (predictions.is_numeric()) {
      for (std::size_t i = 0; i < n; i++)
        matches += predictions.numbers()[i] == truth.numbers()[i] ? 1 : 0;
    } else {
      for (std::size_t i = 0; i < n; i++)
        matches += predictions.labels()[i] == truth.labels()[i] ? 1 : 0;
    }
    return {static_cast<double>(matches) / static_cast<double>(n)};
  }

  if (!predictions.is_numeric() || !truth.is_numeric())
    throw Error("performance: this metric requires numeric columns");
  const auto& p = predictions.numbers();
  const auto& t = truth.numbers();
  require_same_length(p.size(), t.size());

  switch (kind) {
    case PerformanceKind::MAE: {
      double sum = 0;
      for (std::size_t i = 0; i < p.size(); i++) sum += std::abs(p[i] - t[i]);
      return {sum / static_cast<double>(p.size())};
    }
    case PerformanceKind::RMSE: {
      double sum = 0;
      for (std::size_t i = 0; i < p.size(); i++) sum += (p[i] - t[i]) * (p[i] - t[i]);
      return {std::sqrt(sum / static_cast<double>(p.size()))};
    }
    case PerformanceKind::PredictionError: {
      std::vector<double> errors(p.size());
      for (std::size_t i = 0; i < p.size(); i++) errors[i] = p[i] - t[i];
      return {std::move(errors)};
    }
    case PerformanceKind::Accuracy: break;  // handled above
  }
  throw Error("performance: unknown metric kind");
}

}  // namespace exekg
