#include "swr/regressors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "swr/error.hpp"
#include "swr/rng.hpp"

namespace swr {

LagMatrix make_lag_matrix(std::span<const double> window, std::size_t k,
                          std::size_t first_index) {
  require(k >= 1, "lag count must be >= 1");
  if (window.size() <= k) {
    fail(ErrorCode::insufficient_data, "window of " + std::to_string(window.size()) +
                                           " samples too short for " + std::to_string(k) +
                                           " lags");
  }
  LagMatrix m;
  m.k = k;
  const std::size_t rows = window.size() - k;
  m.x.resize(rows * k);
  m.y.resize(rows);
  m.row_times.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < k; ++j) m.x[i * k + j] = window[i + k - 1 - j];
    m.y[i] = window[i + k];
    m.row_times[i] = first_index + i + k;
  }
  return m;
}

// ---------------------------------------------------------------- Scaler

Scaler Scaler::fit(const LagMatrix& m) {
  require(m.rows() >= 1, "cannot fit a scaler on an empty matrix");
  const std::size_t k = m.k;
  const double n = static_cast<double>(m.rows());
  Scaler s;
  s.means.assign(k + 1, 0.0);
  s.stds.assign(k + 1, 0.0);
  auto at = [&](std::size_t i, std::size_t j) { return j < k ? m.x[i * k + j] : m.y[i]; };
  for (std::size_t j = 0; j <= k; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) mean += at(i, j);
    mean /= n;
    double ss = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) ss += (at(i, j) - mean) * (at(i, j) - mean);
    s.means[j] = mean;
    s.stds[j] = std::max(std::sqrt(ss / n), kStdFloor);
  }
  return s;
}

Scaler Scaler::identity(std::size_t k) {
  Scaler s;
  s.means.assign(k + 1, 0.0);
  s.stds.assign(k + 1, 1.0);
  return s;
}

LagMatrix Scaler::apply(const LagMatrix& m) const {
  require(m.k == k(), "scaler/matrix lag count mismatch");
  LagMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.k; ++j) {
      out.x[i * m.k + j] = (m.x[i * m.k + j] - means[j]) / stds[j];
    }
    out.y[i] = scale_target(m.y[i]);
  }
  return out;
}

void Scaler::scale_features(std::span<const double> x, std::span<double> out) const {
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - means[j]) / stds[j];
}

void Scaler::invert_features(std::span<const double> z, std::span<double> out) const {
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j] * stds[j] + means[j];
}

// ---------------------------------------------------------------- SVR

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  require(a.size() == b.size(), "kernel arguments differ in dimension");
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

double SvrModel::predict(std::span<const double> x) const {
  double f = bias;
  for (std::size_t s = 0; s < coef.size(); ++s) {
    f += coef[s] * rbf_kernel({support.data() + s * k, k}, x, gamma);
  }
  return f;
}

namespace {

/// Solver state for the 2l-variable form: beta = [alpha; alpha*],
/// sign = [+1..; -1..], Q_ts = sign_t sign_s K, linear term
/// p = [eps - y; eps + y]. Minimizes 0.5 b'Qb + p'b.
class SmoSolver {
 public:
  SmoSolver(const LagMatrix& m, const SvrParams& p, double gamma)
      : l_(m.rows()), C_(p.C), tol_(p.tol), kernel_(l_ * l_) {
    for (std::size_t i = 0; i < l_; ++i) {
      for (std::size_t j = i; j < l_; ++j) {
        const double v = rbf_kernel(m.row(i), m.row(j), gamma);
        kernel_[i * l_ + j] = v;
        kernel_[j * l_ + i] = v;
      }
    }
    const std::size_t n = 2 * l_;
    beta_.assign(n, 0.0);
    linear_.resize(n);
    for (std::size_t i = 0; i < l_; ++i) {
      linear_[i] = p.epsilon - m.y[i];
      linear_[i + l_] = p.epsilon + m.y[i];
    }
    grad_ = linear_;
  }

  /// Returns true when the KKT gap fell below tol.
  bool solve(std::size_t max_iter, std::size_t& iterations) {
    iterations = 0;
    while (iterations < max_iter) {
      std::size_t i = 0, j = 0;
      if (!select_working_set(i, j)) return true;
      update_pair(i, j);
      ++iterations;
    }
    std::size_t i = 0, j = 0;
    return !select_working_set(i, j);
  }

  double bias() const {
    // Average y*G over free variables; midpoint of the feasible interval
    // when none are free.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -ub;
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      const double yg = sign(t) * grad_[t];
      if (at_upper(t)) {
        if (sign(t) < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else if (at_lower(t)) {
        if (sign(t) > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);
    return -rho;
  }

  double dual_objective() const {
    double obj = 0.0;
    for (std::size_t t = 0; t < 2 * l_; ++t) obj += beta_[t] * (grad_[t] + linear_[t]);
    return -0.5 * obj;
  }

  double coef(std::size_t i) const { return beta_[i] - beta_[i + l_]; }

 private:
  static constexpr double kTau = 1e-12;

  double sign(std::size_t t) const { return t < l_ ? 1.0 : -1.0; }
  bool at_upper(std::size_t t) const { return beta_[t] >= C_; }
  bool at_lower(std::size_t t) const { return beta_[t] <= 0.0; }
  double q(std::size_t s, std::size_t t) const {
    return sign(s) * sign(t) * kernel_[(s % l_) * l_ + (t % l_)];
  }
  double qd(std::size_t t) const { return kernel_[(t % l_) * l_ + (t % l_)]; }

  bool select_working_set(std::size_t& out_i, std::size_t& out_j) const {
    const std::size_t n = 2 * l_;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t gmax_idx = -1, gmin_idx = -1;
    double obj_diff_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (sign(t) > 0) {
        if (!at_upper(t) && -grad_[t] >= gmax) {
          gmax = -grad_[t];
          gmax_idx = static_cast<std::ptrdiff_t>(t);
        }
      } else if (!at_lower(t) && grad_[t] >= gmax) {
        gmax = grad_[t];
        gmax_idx = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (gmax_idx < 0) return false;
    const auto i = static_cast<std::size_t>(gmax_idx);
    for (std::size_t t = 0; t < n; ++t) {
      double grad_diff = 0.0, quad = 0.0;
      if (sign(t) > 0) {
        if (at_lower(t)) continue;
        grad_diff = gmax + grad_[t];
        gmax2 = std::max(gmax2, grad_[t]);
        if (grad_diff <= 0.0) continue;
        quad = qd(i) + qd(t) - 2.0 * sign(i) * q(i, t);
      } else {
        if (at_upper(t)) continue;
        grad_diff = gmax - grad_[t];
        gmax2 = std::max(gmax2, -grad_[t]);
        if (grad_diff <= 0.0) continue;
        quad = qd(i) + qd(t) + 2.0 * sign(i) * q(i, t);
      }
      const double obj_diff = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
      if (obj_diff <= obj_diff_min) {
        obj_diff_min = obj_diff;
        gmin_idx = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (gmax + gmax2 < tol_ || gmin_idx < 0) return false;
    out_i = i;
    out_j = static_cast<std::size_t>(gmin_idx);
    return true;
  }

  void update_pair(std::size_t i, std::size_t j) {
    const double old_i = beta_[i];
    const double old_j = beta_[j];
    double& ai = beta_[i];
    double& aj = beta_[j];
    const double qij = q(i, j);
    if (sign(i) != sign(j)) {
      double quad = qd(i) + qd(j) + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) { aj = 0.0; ai = diff; }
      } else if (ai < 0.0) {
        ai = 0.0; aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > C_) { ai = C_; aj = C_ - diff; }
      } else if (aj > C_) {
        aj = C_; ai = C_ + diff;
      }
    } else {
      double quad = qd(i) + qd(j) - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > C_) {
        if (ai > C_) { ai = C_; aj = sum - C_; }
      } else if (aj < 0.0) {
        aj = 0.0; ai = sum;
      }
      if (sum > C_) {
        if (aj > C_) { aj = C_; ai = sum - C_; }
      } else if (ai < 0.0) {
        ai = 0.0; aj = sum;
      }
    }
    const double di = ai - old_i;
    const double dj = aj - old_j;
    for (std::size_t t = 0; t < 2 * l_; ++t) {
      grad_[t] += q(t, i) * di + q(t, j) * dj;
    }
  }

  std::size_t l_;
  double C_;
  double tol_;
  std::vector<double> kernel_;
  std::vector<double> beta_;
  std::vector<double> linear_;
  std::vector<double> grad_;
};

}  // namespace

SvrModel fit_svr_smo(const LagMatrix& m, const SvrParams& params) {
  if (m.rows() < 2) fail(ErrorCode::insufficient_data, "SVR needs >= 2 training rows");
  require(params.C > 0.0, "C must be positive");
  require(params.epsilon >= 0.0, "epsilon must be >= 0");
  require(params.tol > 0.0, "tol must be positive");
  require(params.max_passes >= 1, "max_passes must be >= 1");
  const double gamma = params.gamma > 0.0 ? params.gamma : 1.0 / static_cast<double>(m.k);

  SmoSolver solver(m, params, gamma);
  SvrModel model;
  model.k = m.k;
  model.gamma = gamma;
  model.C = params.C;
  model.epsilon = params.epsilon;
  const std::size_t max_iter =
      static_cast<std::size_t>(params.max_passes) * std::max<std::size_t>(2 * m.rows(), 1);
  model.converged = solver.solve(max_iter, model.iterations);
  model.bias = solver.bias();
  model.dual_objective = solver.dual_objective();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double c = solver.coef(i);
    if (c != 0.0) {
      model.coef.push_back(c);
      const auto r = m.row(i);
      model.support.insert(model.support.end(), r.begin(), r.end());
    }
  }
  return model;
}

// ---------------------------------------------------------------- Linear

double LinearModel::predict(std::span<const double> x) const {
  double f = intercept;
  for (std::size_t j = 0; j < weights.size(); ++j) f += weights[j] * x[j];
  return f;
}

namespace {

/// In-place Cholesky solve of A x = b for symmetric positive definite A.
bool cholesky_solve(std::vector<double> a, std::vector<double>& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t p = 0; p < j; ++p) d -= a[j * n + p] * a[j * n + p];
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t p = 0; p < j; ++p) s -= a[i * n + p] * a[j * n + p];
      a[i * n + j] = s / ljj;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t p = 0; p < i; ++p) s -= a[i * n + p] * b[p];
    b[i] = s / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t p = i + 1; p < n; ++p) s -= a[p * n + i] * b[p];
    b[i] = s / a[i * n + i];
  }
  return true;
}

}  // namespace

LinearModel fit_linear(const LagMatrix& m, double ridge) {
  const std::size_t k = m.k;
  const std::size_t n = m.rows();
  if (n < k + 1) {
    fail(ErrorCode::insufficient_data, "linear fit needs >= k+1 rows");
  }
  require(ridge >= 0.0, "ridge must be >= 0");
  // Centering makes the intercept unpenalized and improves conditioning.
  std::vector<double> xm(k, 0.0);
  double ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) xm[j] += m.x[i * k + j];
    ym += m.y[i];
  }
  for (double& v : xm) v /= static_cast<double>(n);
  ym /= static_cast<double>(n);

  std::vector<double> xtx(k * k, 0.0);
  std::vector<double> xty(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double yc = m.y[i] - ym;
    for (std::size_t a = 0; a < k; ++a) {
      const double xa = m.x[i * k + a] - xm[a];
      xty[a] += xa * yc;
      for (std::size_t b = 0; b <= a; ++b) xtx[a * k + b] += xa * (m.x[i * k + b] - xm[b]);
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < a; ++b) xtx[b * k + a] = xtx[a * k + b];
  }

  double lambda = ridge;
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto a = xtx;
    for (std::size_t d = 0; d < k; ++d) a[d * k + d] += lambda;
    auto w = xty;
    if (cholesky_solve(std::move(a), w, k)) {
      LinearModel model;
      model.weights = std::move(w);
      model.intercept = ym;
      for (std::size_t j = 0; j < k; ++j) model.intercept -= model.weights[j] * xm[j];
      return model;
    }
    // Rounding made the jittered Gram matrix indefinite; grow the jitter.
    lambda = std::max(lambda * 100.0, 1e-12);
  }
  fail(ErrorCode::numerical, "normal equations are not positive definite");
}

// ---------------------------------------------------------------- Trees

double TreeModel::predict(std::span<const double> x) const {
  std::size_t n = 0;
  while (nodes[n].feature >= 0) {
    n = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes[n].feature)] <=
                                         nodes[n].threshold
                                     ? nodes[n].left
                                     : nodes[n].right);
  }
  return nodes[n].value;
}

std::size_t TreeModel::depth() const {
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (nodes[n].feature >= 0) {
      stack.push_back({static_cast<std::size_t>(nodes[n].left), d + 1});
      stack.push_back({static_cast<std::size_t>(nodes[n].right), d + 1});
    }
  }
  return best;
}

std::size_t TreeModel::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const LagMatrix& m, const TreeParams& p, std::size_t mtry, Rng* rng)
      : m_(m), p_(p), mtry_(mtry), rng_(rng) {}

  TreeModel build(std::vector<std::size_t> rows) {
    TreeModel t;
    t.k = m_.k;
    grow(t, rows, 0);
    return t;
  }

 private:
  double feature(std::size_t row, std::size_t f) const { return m_.x[row * m_.k + f]; }

  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> f(m_.k);
    std::iota(f.begin(), f.end(), 0);
    if (rng_ == nullptr || mtry_ >= m_.k) return f;
    for (std::size_t i = 0; i < mtry_; ++i) {
      const auto r = i + static_cast<std::size_t>(rng_->below(m_.k - i));
      std::swap(f[i], f[r]);
    }
    f.resize(mtry_);
    std::sort(f.begin(), f.end());
    return f;
  }

  Split best_split(const std::vector<std::size_t>& rows, double mean, double sse) {
    const std::size_t n = rows.size();
    Split best;
    // Relative slack: near-equal gains keep the earlier (lower feature,
    // lower threshold) candidate.
    const double slack = 1e-12 * std::max(sse, 1e-300);
    std::vector<std::size_t> order(rows);
    for (std::size_t f : candidate_features()) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return feature(a, f) < feature(b, f);
      });
      double total = 0.0;
      for (std::size_t r : order) total += m_.y[r] - mean;
      double left_sum = 0.0;
      for (std::size_t pos = 0; pos + 1 < n; ++pos) {
        left_sum += m_.y[order[pos]] - mean;
        const std::size_t nl = pos + 1;
        const std::size_t nr = n - nl;
        if (nl < p_.min_leaf) continue;
        if (nr < p_.min_leaf) break;
        const double lo = feature(order[pos], f);
        const double hi = feature(order[pos + 1], f);
        if (!(lo < hi)) continue;
        const double right_sum = total - left_sum;
        // SSE reduction for centred targets.
        const double gain = left_sum * left_sum / static_cast<double>(nl) +
                            right_sum * right_sum / static_cast<double>(nr) -
                            total * total / static_cast<double>(n);
        if (gain > best.gain + slack) {
          double thr = 0.5 * (lo + hi);
          if (!(thr < hi)) thr = lo;
          best = {static_cast<int>(f), thr, gain};
        }
      }
    }
    return best;
  }

  int grow(TreeModel& t, const std::vector<std::size_t>& rows, std::size_t depth) {
    const int id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    double mean = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t r : rows) {
      mean += m_.y[r];
      lo = std::min(lo, m_.y[r]);
      hi = std::max(hi, m_.y[r]);
    }
    mean /= static_cast<double>(rows.size());
    double sse = 0.0;
    for (std::size_t r : rows) sse += (m_.y[r] - mean) * (m_.y[r] - mean);
    t.nodes[id].value = mean;
    t.nodes[id].count = rows.size();

    if (depth >= p_.max_depth || rows.size() < 2 * p_.min_leaf || lo == hi) return id;
    const Split s = best_split(rows, mean, sse);
    if (s.feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (feature(r, static_cast<std::size_t>(s.feature)) <= s.threshold ? left : right).push_back(r);
    }
    t.nodes[id].feature = s.feature;
    t.nodes[id].threshold = s.threshold;
    const int l = grow(t, left, depth + 1);
    const int r = grow(t, right, depth + 1);
    t.nodes[id].left = l;
    t.nodes[id].right = r;
    return id;
  }

  const LagMatrix& m_;
  TreeParams p_;
  std::size_t mtry_;
  Rng* rng_;
};

}  // namespace

TreeModel fit_tree(const LagMatrix& m, const TreeParams& params) {
  if (m.rows() < 1) fail(ErrorCode::insufficient_data, "tree needs >= 1 training row");
  require(params.min_leaf >= 1, "min_leaf must be >= 1");
  std::vector<std::size_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return TreeBuilder(m, params, m.k, nullptr).build(std::move(rows));
}

double ForestModel::predict(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& t : trees) s += t.predict(x);
  return s / static_cast<double>(trees.size());
}

ForestModel fit_forest(const LagMatrix& m, const ForestParams& params) {
  if (m.rows() < 1) fail(ErrorCode::insufficient_data, "forest needs >= 1 training row");
  require(params.n_trees >= 1, "n_trees must be >= 1");
  require(params.tree.min_leaf >= 1, "min_leaf must be >= 1");
  const std::size_t mtry = params.mtry > 0 ? params.mtry : (m.k + 2) / 3;
  require(mtry >= 1 && mtry <= m.k, "mtry must lie in [1, k]");

  ForestModel forest;
  forest.mtry = mtry;
  forest.seed = params.seed;
  forest.trees.reserve(params.n_trees);
  const std::size_t n = m.rows();
  for (std::size_t t = 0; t < params.n_trees; ++t) {
    Rng rng = Rng::stream(params.seed, t);
    std::vector<std::size_t> rows(n);
    if (params.bootstrap) {
      for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    forest.trees.push_back(TreeBuilder(m, params.tree, mtry, &rng).build(std::move(rows)));
  }
  return forest;
}

// ---------------------------------------------------------------- Regressor

std::string_view to_string(RegressorKind kind) {
  switch (kind) {
    case RegressorKind::svr: return "svr";
    case RegressorKind::linear: return "linear";
    case RegressorKind::tree: return "tree";
    case RegressorKind::forest: return "forest";
    case RegressorKind::persistence: return "persistence";
  }
  return "unknown";
}

RegressorKind parse_regressor_kind(std::string_view name) {
  for (auto k : {RegressorKind::svr, RegressorKind::linear, RegressorKind::tree,
                 RegressorKind::forest, RegressorKind::persistence}) {
    if (name == to_string(k)) return k;
  }
  fail(ErrorCode::invalid_argument, "unknown regressor '" + std::string(name) + "'");
}

Regressor Regressor::fit(const LagMatrix& raw, const RegressorSpec& spec) {
  const std::size_t k = raw.k;
  if (spec.kind == RegressorKind::persistence) {
    return Regressor(spec.kind, k, Scaler::identity(k), PersistenceModel{});
  }
  Scaler scaler = Scaler::fit(raw);
  const LagMatrix scaled = scaler.apply(raw);
  Model model;
  switch (spec.kind) {
    case RegressorKind::svr: model = fit_svr_smo(scaled, spec.svr); break;
    case RegressorKind::linear: model = fit_linear(scaled, spec.ridge); break;
    case RegressorKind::tree: model = fit_tree(scaled, spec.tree); break;
    case RegressorKind::forest: model = fit_forest(scaled, spec.forest); break;
    case RegressorKind::persistence: break;
  }
  return Regressor(spec.kind, k, std::move(scaler), std::move(model));
}

double Regressor::predict(std::span<const double> lags) const {
  if (lags.size() != k_) {
    fail(ErrorCode::invalid_argument, "expected " + std::to_string(k_) + " lags, got " +
                                          std::to_string(lags.size()));
  }
  std::vector<double> z(k_);
  scaler_.scale_features(lags, z);
  const double out = std::visit([&](const auto& m) { return m.predict(z); }, model_);
  return scaler_.invert_target(out);
}

bool Regressor::converged() const noexcept {
  if (const auto* svr = std::get_if<SvrModel>(&model_)) return svr->converged;
  return true;
}

}  // namespace swr
