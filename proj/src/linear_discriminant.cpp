#include <Eigen/Dense>
#include <cmath>

#include "salience/error.hpp"
#include "salience/learners.hpp"

namespace salience {

// Fisher discriminant on z-scored features: w = (S_w + ridge I)^-1 (mu+ - mu-),
// threshold halfway between the projected class means.
LinearModel train_linear_discriminant(const LabeledSet& train, double ridge) {
  const auto& data = train.vectors;
  if (data.empty()) throw NumericError("empty training set");
  if (ridge < 0.0) throw ConfigError("ridge must be non-negative");
  std::size_t n_pos = 0;
  for (const auto& v : data) n_pos += v.label.value_or(false) ? 1 : 0;
  if (n_pos == 0 || n_pos == data.size()) {
    throw NumericError("linear discriminant needs at least one example of each class");
  }

  LinearModel model;
  const double n = static_cast<double>(data.size());
  for (const auto f : usable_features(data)) {
    double mean = 0.0;
    for (const auto& v : data) mean += v.value(f);
    mean /= n;
    double var = 0.0;
    for (const auto& v : data) var += (v.value(f) - mean) * (v.value(f) - mean);
    const double std = std::sqrt(var / n);
    if (std <= 1e-12 * std::max(1.0, std::fabs(mean))) continue;
    model.features.push_back(f);
    model.means.push_back(mean);
    model.stds.push_back(std);
  }
  const auto d = static_cast<Eigen::Index>(model.features.size());
  if (d == 0) throw NumericError("every feature is constant on the training set");

  Eigen::MatrixXd z(static_cast<Eigen::Index>(data.size()), d);
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto i = static_cast<std::size_t>(c);
      z(static_cast<Eigen::Index>(r), c) = (data[r].value(model.features[i]) - model.means[i]) / model.stds[i];
    }
  }

  Eigen::VectorXd mu_pos = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd mu_neg = Eigen::VectorXd::Zero(d);
  for (std::size_t r = 0; r < data.size(); ++r) {
    (data[r].label.value_or(false) ? mu_pos : mu_neg) += z.row(static_cast<Eigen::Index>(r)).transpose();
  }
  mu_pos /= static_cast<double>(n_pos);
  mu_neg /= static_cast<double>(data.size() - n_pos);

  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const Eigen::VectorXd centered =
        z.row(static_cast<Eigen::Index>(r)).transpose() - (data[r].label.value_or(false) ? mu_pos : mu_neg);
    scatter.noalias() += centered * centered.transpose();
  }
  scatter.diagonal().array() += ridge;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(scatter);
  if (ridge == 0.0 && lu.rank() < d) {
    throw NumericError("within-class scatter is singular; retrain with ridge > 0 (e.g. 1e-6)");
  }
  if (lu.rank() < d) throw NumericError("within-class scatter is numerically singular; increase ridge");
  const Eigen::VectorXd w = lu.solve(mu_pos - mu_neg);
  if (!w.allFinite()) throw NumericError("linear discriminant produced non-finite weights");

  model.weights.assign(w.data(), w.data() + d);
  model.threshold = 0.5 * (w.dot(mu_pos) + w.dot(mu_neg));
  return model;
}

}  // namespace salience
