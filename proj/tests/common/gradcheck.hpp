#pragma once

#include <algorithm>
#include <cmath>

#include "faqkit/batch.hpp"
#include "faqkit/trainer.hpp"

namespace faqkit::testing {

struct GradCheck {
  double max_relative_error = 0.0;
  double max_abs_gradient = 0.0;
  std::size_t entries = 0;
};

// Central differences of the batch loss with respect to every entry of W
// against batch_gradient's analytic dW. Relative error per entry is
// |a - n| / max(|a|, |n|, floor), the floor guarding entries whose true
// gradient is zero.
inline GradCheck finite_difference_check(const Eigen::MatrixXd& w, const BatchFeatures& features, double eps = 1e-5,
                                         double floor = 1e-8) {
  const BatchGradient g = batch_gradient(w, features);
  Eigen::MatrixXd analytic = Eigen::MatrixXd::Zero(w.rows(), w.cols());
  for (std::size_t k = 0; k < g.columns.size(); ++k) analytic.col(g.columns[k]) = g.d_weights.col(static_cast<Eigen::Index>(k));

  GradCheck r;
  Eigen::MatrixXd probe = w;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      probe(i, j) = w(i, j) + eps;
      const double up = batch_gradient(probe, features).loss;
      probe(i, j) = w(i, j) - eps;
      const double down = batch_gradient(probe, features).loss;
      probe(i, j) = w(i, j);
      const double numeric = (up - down) / (2 * eps);
      const double a = analytic(i, j);
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
      r.max_relative_error = std::max(r.max_relative_error, rel);
      r.max_abs_gradient = std::max(r.max_abs_gradient, std::abs(a));
      ++r.entries;
    }
  return r;
}

inline TrainingBatch three_pair_batch() {
  TrainingBatch b;
  b.language = "en";
  b.entries = {{"p", 0, "What is the lopi pass?", "The lopi pass opens the east gate."},
               {"p", 1, "Who cleans the ramu room?", "Our night staff clean the ramu room."},
               {"p", 2, "How heavy is a seta crate?", "A full seta crate weighs nine kilograms."}};
  b.capacity = 3;
  return b;
}

}  // namespace faqkit::testing
