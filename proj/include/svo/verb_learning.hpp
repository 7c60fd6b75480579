//
// Copyright (C) 2026 The svocomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svo/embedding_space.hpp"
#include "svo/training_data.hpp"

namespace svo {

enum class Regime { dist, reg, reg_plus };
std::string_view to_string(Regime r);
Regime parse_regime(std::string_view s);

enum class LossKind { xent, mse };
std::string_view to_string(LossKind k);
LossKind parse_loss(std::string_view s);

struct RegressionConfig {
  double lambda = 1e-3;
  double rho = 0.95;
  double epsilon = 1e-6;
  int max_epochs = 500;
  int patience = 10;
  std::size_t batch = 32;
  std::uint64_t seed = 0;
  LossKind loss = LossKind::xent;
  double validation_fraction = 0.1;

  /// Throws Error naming the first out-of-range field.
  void validate() const;
};

struct AdadeltaState {
  Mat acc_grad_sq;    // E[g^2]
  Mat acc_update_sq;  // E[dx^2]
  long step_count = 0;

  static AdadeltaState zeros(Eigen::Index rows, Eigen::Index cols);
};

/// One ADADELTA update. Mutates the accumulators and returns the step to
/// add to the parameters.
Mat adadelta_step(AdadeltaState& state, const Mat& gradient, double rho, double epsilon);

struct TrainingMeta {
  int epochs_run = 0;
  int best_epoch = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
  std::size_t n_train = 0;
  std::size_t n_validation = 0;
  RegressionConfig config;
};

struct VerbMatrix {
  std::string verb;
  Mat v;
  Regime regime = Regime::dist;
  TrainingMeta meta;
};

/// Encoded examples: row i of `s`/`o` holds the subject/object vectors.
struct Examples {
  Mat s;
  Mat o;
  Vec t;
  std::size_t size() const { return static_cast<std::size_t>(t.size()); }
};

/// Looks up subject/object vectors; OOV triples are skipped with a warning.
Examples encode(std::span<const LabeledTriple> data, const EmbeddingSpace& space);

double sigmoid(double x);

/// sigma(s^T V o).
double plausibility(const Mat& v, const Vec& s, const Vec& o);

struct LossGrad {
  double loss = 0.0;
  Mat gradient;
};

/// Regularized loss and its gradient over `rows` of `ex` (all rows if empty).
LossGrad loss_and_gradient(const Mat& v, const Examples& ex, std::span<const std::size_t> rows,
                           double lambda, LossKind kind = LossKind::xent);
LossGrad loss_and_gradient(const Mat& v, const Examples& ex, double lambda,
                           LossKind kind = LossKind::xent);

/// Unregularized mean data term, the early-stopping criterion.
double data_loss(const Mat& v, const Examples& ex, LossKind kind = LossKind::xent);

/// Outer-product average over attested pairs.
VerbMatrix train_dist(const std::string& verb, std::span<const SVOTriple> positives,
                      const EmbeddingSpace& space);

struct RegressionFit {
  Mat v;
  TrainingMeta meta;
  std::vector<double> validation_curve;  // one entry per epoch run
};

/// Zero-initialized ADADELTA mini-batch training with early stopping on
/// `validation`. Returns the snapshot with the best validation loss.
RegressionFit fit_regression(const Examples& train, const Examples& validation,
                             const RegressionConfig& config);

VerbMatrix train_reg(const std::string& verb, std::span<const LabeledTriple> train,
                     std::span<const LabeledTriple> validation, const EmbeddingSpace& space,
                     const RegressionConfig& config);

/// Positives only; the validation split is drawn from the positives.
VerbMatrix train_reg_plus(const std::string& verb, std::span<const LabeledTriple> positives,
                          const EmbeddingSpace& space, const RegressionConfig& config);

/// Dispatches on regime; for reg the set is split with `config.validation_fraction`.
VerbMatrix train_verb(const VerbTrainingSet& set, const EmbeddingSpace& space, Regime regime,
                      const RegressionConfig& config);

// "VERB <word> K <dim> REGIME <regime>", K rows, then "# key=value ..." trailer.
void save_verb_matrix(const VerbMatrix& vm, const std::string& path,
                      const std::vector<std::string>& metadata = {});
VerbMatrix load_verb_matrix(const std::string& path);
/// Every "*.mat" file in `dir`, keyed by verb.
std::map<std::string, VerbMatrix> load_verb_dir(const std::string& dir);

}  // namespace svo
