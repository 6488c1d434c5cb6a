#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace swr {

/// Lag features over a contiguous window. Row i is
/// [w[i+k-1], w[i+k-2], ..., w[i]] (most recent lag first) with target
/// w[i+k]. Stored row-major.
struct LagMatrix {
  std::size_t k = 0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::size_t> row_times;  // source index of each target

  std::size_t rows() const noexcept { return y.size(); }
  std::span<const double> row(std::size_t i) const { return {x.data() + i * k, k}; }
};

/// `first_index` is the source index of window[0]; it only feeds row_times.
LagMatrix make_lag_matrix(std::span<const double> window, std::size_t k,
                          std::size_t first_index = 0);

/// Per-column z-score. Column k is the target.
struct Scaler {
  static constexpr double kStdFloor = 1e-12;

  std::vector<double> means;
  std::vector<double> stds;

  static Scaler fit(const LagMatrix& m);
  /// Scaler that leaves every column untouched.
  static Scaler identity(std::size_t k);

  std::size_t k() const noexcept { return means.empty() ? 0 : means.size() - 1; }
  LagMatrix apply(const LagMatrix& m) const;
  void scale_features(std::span<const double> x, std::span<double> out) const;
  void invert_features(std::span<const double> z, std::span<double> out) const;
  double scale_target(double y) const { return (y - means.back()) / stds.back(); }
  double invert_target(double z) const { return z * stds.back() + means.back(); }
};

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

struct SvrParams {
  double C = 1.0;
  double epsilon = 0.01;
  double gamma = 0.0;  // 0 selects 1/k
  double tol = 1e-3;
  int max_passes = 200;
};

struct SvrModel {
  std::size_t k = 0;
  std::vector<double> support;  // n_sv x k, row-major
  std::vector<double> coef;     // alpha_i - alpha_i* per support vector
  double bias = 0.0;
  double gamma = 0.0;
  double C = 0.0;
  double epsilon = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
  double dual_objective = 0.0;  // maximized dual value at the returned iterate

  std::size_t n_support() const noexcept { return coef.size(); }
  double predict(std::span<const double> x) const;
};

/// Epsilon-SVR with RBF kernel, dual solved by SMO with second-order working
/// set selection. Expects scaled inputs. Never throws on non-convergence:
/// the last iterate is returned with converged = false.
SvrModel fit_svr_smo(const LagMatrix& m, const SvrParams& params);

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;

  double predict(std::span<const double> x) const;
};

/// Least squares with an unpenalized intercept via normal equations,
/// `ridge` added to the diagonal.
LinearModel fit_linear(const LagMatrix& m, double ridge = 1e-8);

struct TreeParams {
  std::size_t max_depth = 8;
  std::size_t min_leaf = 2;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // mean target of the node's rows
  std::size_t count = 0;
};

struct TreeModel {
  std::size_t k = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
};

TreeModel fit_tree(const LagMatrix& m, const TreeParams& params);

struct ForestParams {
  std::size_t n_trees = 100;
  TreeParams tree{};
  std::size_t mtry = 0;  // 0 selects ceil(k / 3)
  std::uint64_t seed = 42;
  bool bootstrap = true;
};

struct ForestModel {
  std::vector<TreeModel> trees;
  std::size_t mtry = 0;
  std::uint64_t seed = 0;

  double predict(std::span<const double> x) const;
};

/// Each tree sees a bootstrap resample and draws mtry candidate features per
/// split. Tree t uses the RNG stream (seed, t).
ForestModel fit_forest(const LagMatrix& m, const ForestParams& params);

/// Predicts the most recent lag.
struct PersistenceModel {
  double predict(std::span<const double> x) const { return x[0]; }
};

enum class RegressorKind { svr, linear, tree, forest, persistence };

std::string_view to_string(RegressorKind kind);
RegressorKind parse_regressor_kind(std::string_view name);

struct RegressorSpec {
  RegressorKind kind = RegressorKind::svr;
  SvrParams svr{};
  double ridge = 1e-8;
  TreeParams tree{};
  ForestParams forest{};
};

/// A fitted model together with its scaler. predict() takes and returns MW.
class Regressor {
 public:
  using Model = std::variant<SvrModel, LinearModel, TreeModel, ForestModel, PersistenceModel>;

  static Regressor fit(const LagMatrix& raw, const RegressorSpec& spec);

  double predict(std::span<const double> lags) const;

  RegressorKind kind() const noexcept { return kind_; }
  std::size_t lags() const noexcept { return k_; }
  bool converged() const noexcept;
  const Scaler& scaler() const noexcept { return scaler_; }
  const Model& model() const noexcept { return model_; }

 private:
  Regressor(RegressorKind kind, std::size_t k, Scaler scaler, Model model)
      : kind_(kind), k_(k), scaler_(std::move(scaler)), model_(std::move(model)) {}

  RegressorKind kind_;
  std::size_t k_;
  Scaler scaler_;
  Model model_;
};

}  // namespace swr
