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

#include "svo/verb_learning.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "svo/kernels.hpp"

namespace svo {

namespace fs = std::filesystem;

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::dist: return "dist";
    case Regime::reg: return "reg";
    case Regime::reg_plus: return "reg+";
  }
  return "?";
}

Regime parse_regime(std::string_view s) {
  if (s == "dist") return Regime::dist;
  if (s == "reg") return Regime::reg;
  if (s == "reg+") return Regime::reg_plus;
  throw Error("unknown regime '" + std::string(s) + "' (valid: dist, reg, reg+)");
}

std::string_view to_string(LossKind k) { return k == LossKind::xent ? "xent" : "mse"; }

LossKind parse_loss(std::string_view s) {
  if (s == "xent") return LossKind::xent;
  if (s == "mse") return LossKind::mse;
  throw Error("unknown loss '" + std::string(s) + "' (valid: xent, mse)");
}

void RegressionConfig::validate() const {
  if (!(lambda >= 0.0)) throw Error("lambda must be >= 0");
  if (!(rho > 0.0 && rho < 1.0)) throw Error("rho must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw Error("epsilon must be > 0");
  if (max_epochs < 1) throw Error("max_epochs must be >= 1");
  if (patience < 1) throw Error("patience must be >= 1");
  if (batch < 1) throw Error("batch must be >= 1");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw Error("validation fraction must lie in (0, 1)");
  }
}

AdadeltaState AdadeltaState::zeros(Eigen::Index rows, Eigen::Index cols) {
  return {Mat::Zero(rows, cols), Mat::Zero(rows, cols), 0};
}

Mat adadelta_step(AdadeltaState& state, const Mat& gradient, double rho, double epsilon) {
  state.acc_grad_sq = rho * state.acc_grad_sq + (1.0 - rho) * gradient.cwiseAbs2();
  Mat delta = -((state.acc_update_sq.array() + epsilon).sqrt() /
                (state.acc_grad_sq.array() + epsilon).sqrt() * gradient.array())
                   .matrix();
  state.acc_update_sq = rho * state.acc_update_sq + (1.0 - rho) * delta.cwiseAbs2();
  ++state.step_count;
  return delta;
}

Examples encode(std::span<const LabeledTriple> data, const EmbeddingSpace& space) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& t = data[i].triple;
    if (space.contains(t.subject) && space.contains(t.object)) {
      keep.push_back(i);
    } else {
      warn("out-of-vocabulary triple skipped: " + t.subject + " " + t.verb + " " + t.object);
    }
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  Examples ex{Mat(n, space.dim()), Mat(n, space.dim()), Vec(n)};
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& lt = data[keep[static_cast<std::size_t>(r)]];
    ex.s.row(r) = space.vector_of(lt.triple.subject).transpose();
    ex.o.row(r) = space.vector_of(lt.triple.object).transpose();
    ex.t(r) = lt.label;
  }
  return ex;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double plausibility(const Mat& v, const Vec& s, const Vec& o) {
  if (v.rows() != s.size() || v.cols() != o.size()) throw Error("plausibility: dimension mismatch");
  return sigmoid(s.dot(v * o));
}

namespace {
constexpr double kClamp = 1e-12;

std::vector<std::size_t> all_rows(const Examples& ex) {
  std::vector<std::size_t> rows(ex.size());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}
}  // namespace

LossGrad loss_and_gradient(const Mat& v, const Examples& ex, std::span<const std::size_t> rows,
                           double lambda, LossKind kind) {
  std::vector<std::size_t> owned;
  if (rows.empty()) {
    owned = all_rows(ex);
    rows = owned;
  }
  if (rows.empty()) throw Error("loss_and_gradient: empty batch");
  const auto m = static_cast<Eigen::Index>(rows.size());
  const double inv_m = 1.0 / static_cast<double>(m);

  const auto logits = kernels::parallel::bilinear_logits(v, ex.s, ex.o, rows);
  Vec coef(m);
  Mat sb(m, v.rows());
  Mat ob(m, v.cols());
  double data = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto r = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]);
    const double t = ex.t(r);
    const double h = sigmoid(logits[static_cast<std::size_t>(i)]);
    if (kind == LossKind::xent) {
      const double hc = std::clamp(h, kClamp, 1.0 - kClamp);
      data -= t * std::log(hc) + (1.0 - t) * std::log(1.0 - hc);
      coef(i) = h - t;
    } else {
      data += 0.5 * (h - t) * (h - t);
      coef(i) = (h - t) * h * (1.0 - h);
    }
    sb.row(i) = ex.s.row(r);
    ob.row(i) = ex.o.row(r);
  }
  LossGrad out;
  out.loss = data * inv_m + 0.5 * lambda * v.squaredNorm();
  out.gradient = inv_m * (sb.transpose() * coef.asDiagonal() * ob) + lambda * v;
  return out;
}

LossGrad loss_and_gradient(const Mat& v, const Examples& ex, double lambda, LossKind kind) {
  return loss_and_gradient(v, ex, std::span<const std::size_t>{}, lambda, kind);
}

double data_loss(const Mat& v, const Examples& ex, LossKind kind) {
  if (ex.size() == 0) throw Error("data_loss: no examples");
  const auto rows = all_rows(ex);
  const auto logits = kernels::parallel::bilinear_logits(v, ex.s, ex.o, rows);
  double acc = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double t = ex.t(static_cast<Eigen::Index>(i));
    const double h = sigmoid(logits[i]);
    if (kind == LossKind::xent) {
      const double hc = std::clamp(h, kClamp, 1.0 - kClamp);
      acc -= t * std::log(hc) + (1.0 - t) * std::log(1.0 - hc);
    } else {
      acc += 0.5 * (h - t) * (h - t);
    }
  }
  return acc / static_cast<double>(rows.size());
}

VerbMatrix train_dist(const std::string& verb, std::span<const SVOTriple> positives,
                      const EmbeddingSpace& space) {
  std::vector<LabeledTriple> labeled;
  labeled.reserve(positives.size());
  for (const auto& p : positives) labeled.push_back({p, 1});
  const Examples ex = encode(labeled, space);
  if (ex.size() == 0) throw Error("no training data for verb '" + verb + "'");

  VerbMatrix vm;
  vm.verb = verb;
  vm.regime = Regime::dist;
  vm.v = ex.s.transpose() * ex.o / static_cast<double>(ex.size());
  vm.meta.n_train = ex.size();
  return vm;
}

RegressionFit fit_regression(const Examples& train, const Examples& validation,
                             const RegressionConfig& config) {
  config.validate();
  if (train.size() == 0) throw Error("no training examples");
  if (validation.size() == 0) throw Error("empty validation set");
  const Eigen::Index k = train.s.cols();

  Mat v = Mat::Zero(k, k);
  AdadeltaState state = AdadeltaState::zeros(k, k);
  Rng rng(config.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  RegressionFit fit;
  fit.meta.config = config;
  fit.meta.n_train = train.size();
  fit.meta.n_validation = validation.size();
  fit.v = v;
  double best = std::numeric_limits<double>::infinity();
  int stale = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch, ++batch_index) {
      const std::size_t len = std::min(config.batch, order.size() - start);
      const std::span<const std::size_t> rows(order.data() + start, len);
      const LossGrad lg = loss_and_gradient(v, train, rows, config.lambda, config.loss);
      if (!std::isfinite(lg.loss) || !lg.gradient.allFinite()) {
        throw Error("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                    std::to_string(batch_index));
      }
      v += adadelta_step(state, lg.gradient, config.rho, config.epsilon);
    }
    const double val = data_loss(v, validation, config.loss);
    if (!std::isfinite(val)) {
      throw Error("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    fit.validation_curve.push_back(val);
    fit.meta.epochs_run = epoch;
    if (val < best) {
      best = val;
      fit.v = v;
      fit.meta.best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  fit.meta.validation_loss = best;
  fit.meta.train_loss = loss_and_gradient(fit.v, train, config.lambda, config.loss).loss;
  return fit;
}

namespace {
bool has_label(const Examples& ex, double label) {
  for (Eigen::Index i = 0; i < ex.t.size(); ++i) {
    if (ex.t(i) == label) return true;
  }
  return false;
}
}  // namespace

VerbMatrix train_reg(const std::string& verb, std::span<const LabeledTriple> train,
                     std::span<const LabeledTriple> validation, const EmbeddingSpace& space,
                     const RegressionConfig& config) {
  const Examples tr = encode(train, space);
  const Examples va = encode(validation, space);
  if (!has_label(tr, 1.0) || !has_label(tr, 0.0)) {
    throw Error("reg training for '" + verb + "' needs both positive and negative examples");
  }
  RegressionFit fit = fit_regression(tr, va, config);
  return {verb, std::move(fit.v), Regime::reg, fit.meta};
}

VerbMatrix train_reg_plus(const std::string& verb, std::span<const LabeledTriple> positives,
                          const EmbeddingSpace& space, const RegressionConfig& config) {
  if (positives.empty()) throw Error("no training data for verb '" + verb + "'");
  for (const auto& p : positives) {
    if (p.label != 1) throw Error("reg+ training accepts positives only");
  }
  const Split split = split_validation(positives, config.validation_fraction,
                                       derive_seed(config.seed, "split"));
  RegressionFit fit = fit_regression(encode(split.train, space), encode(split.validation, space),
                                     config);
  return {verb, std::move(fit.v), Regime::reg_plus, fit.meta};
}

VerbMatrix train_verb(const VerbTrainingSet& set, const EmbeddingSpace& space, Regime regime,
                      const RegressionConfig& config) {
  switch (regime) {
    case Regime::dist: {
      std::vector<SVOTriple> pos;
      pos.reserve(set.positives.size());
      for (const auto& p : set.positives) pos.push_back(p.triple);
      return train_dist(set.verb, pos, space);
    }
    case Regime::reg: {
      const auto data = set.all();
      const Split split = split_validation(data, config.validation_fraction,
                                           derive_seed(config.seed, "split"));
      return train_reg(set.verb, split.train, split.validation, space, config);
    }
    case Regime::reg_plus:
      return train_reg_plus(set.verb, set.positives, space, config);
  }
  throw Error("unreachable regime");
}

void save_verb_matrix(const VerbMatrix& vm, const std::string& path,
                      const std::vector<std::string>& metadata) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "VERB " << vm.verb << " K " << vm.v.rows() << " REGIME " << to_string(vm.regime) << '\n';
  for (Eigen::Index i = 0; i < vm.v.rows(); ++i) {
    for (Eigen::Index j = 0; j < vm.v.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(vm.v(i, j));
    }
    out << '\n';
  }
  const auto& m = vm.meta;
  const auto& c = m.config;
  out << "# epochs=" << m.epochs_run << " best_epoch=" << m.best_epoch
      << " train_loss=" << format_double(m.train_loss)
      << " validation_loss=" << format_double(m.validation_loss) << " n_train=" << m.n_train
      << " n_validation=" << m.n_validation << '\n';
  if (vm.regime != Regime::dist) {
    out << "# lambda=" << format_double(c.lambda) << " rho=" << format_double(c.rho)
        << " epsilon=" << format_double(c.epsilon) << " batch=" << c.batch
        << " max_epochs=" << c.max_epochs << " patience=" << c.patience << " seed=" << c.seed
        << " loss=" << to_string(c.loss) << '\n';
  }
  for (const auto& line : metadata) out << "# " << line << '\n';
  if (!out) throw Error("write failed: " + path);
}

VerbMatrix load_verb_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open verb matrix " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ": empty file");
  const auto h = split_ws(line);
  if (h.size() != 6 || h[0] != "VERB" || h[2] != "K" || h[4] != "REGIME") {
    throw Error(path + ":1: expected 'VERB <word> K <dim> REGIME <regime>'");
  }
  VerbMatrix vm;
  vm.verb = h[1];
  const auto k = parse_int(h[3]);
  if (k < 1) throw Error(path + ":1: bad dimension");
  vm.regime = parse_regime(h[5]);
  vm.v.resize(k, k);
  for (long long i = 0; i < k; ++i) {
    if (!std::getline(in, line)) throw Error(path + ": truncated matrix");
    const auto cols = split_ws(line);
    if (static_cast<long long>(cols.size()) != k) {
      throw Error(path + ":" + std::to_string(i + 2) + ": expected " + std::to_string(k) +
                  " values");
    }
    for (long long j = 0; j < k; ++j) vm.v(i, j) = parse_double(cols[static_cast<std::size_t>(j)]);
  }
  if (!vm.v.allFinite()) throw Error(path + ": non-finite entries");
  while (std::getline(in, line)) {
    for (const auto& kv : split_ws(line)) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      const auto key = kv.substr(0, eq);
      const auto val = kv.substr(eq + 1);
      try {
        if (key == "epochs") vm.meta.epochs_run = static_cast<int>(parse_int(val));
        else if (key == "best_epoch") vm.meta.best_epoch = static_cast<int>(parse_int(val));
        else if (key == "train_loss") vm.meta.train_loss = parse_double(val);
        else if (key == "validation_loss") vm.meta.validation_loss = parse_double(val);
      } catch (const Error&) {
        // metadata is informational
      }
    }
  }
  return vm;
}

std::map<std::string, VerbMatrix> load_verb_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mat") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, VerbMatrix> out;
  for (const auto& f : files) {
    VerbMatrix vm = load_verb_matrix(f.string());
    std::string verb = vm.verb;
    if (!out.emplace(verb, std::move(vm)).second) throw Error("duplicate verb matrix for " + verb);
  }
  return out;
}

}  // namespace svo
