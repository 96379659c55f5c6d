#include "aoi/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aoi/kernels.hpp"

namespace aoi {

namespace {

constexpr double kStochasticTol = 1e-12;
constexpr double kResidualTol = 1e-10;
constexpr int kDirectLimit = 2000;

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("oracle: " + what); }

}  // namespace

InducedChain induce_chain(const Policy& policy, const ModelParams& params) {
  validate_policy(policy, params);
  const int n = params.state_count();
  InducedChain chain;
  chain.states = state_space(params);
  chain.age_max = params.age_max;
  chain.matrix.assign(static_cast<std::size_t>(n) * n, 0.0);
  chain.age_cost.resize(n);
  for (int i = 0; i < n; ++i) {
    chain.age_cost[i] = chain.states[i].age;
    const TransitionDist dist = transition(chain.states[i], policy.decision[i], params);
    for (const TransitionDist::Entry& e : dist.entries)
      chain.matrix[static_cast<std::size_t>(i) * n + state_index(e.next, params)] += e.prob;
  }
  return chain;
}

namespace {

double at(const InducedChain& c, int i, int j) {
  return c.matrix[static_cast<std::size_t>(i) * c.size() + j];
}

void check_stochastic(const InducedChain& c) {
  const int n = c.size();
  if (n == 0) fail("empty chain");
  if (c.matrix.size() != static_cast<std::size_t>(n) * n || c.age_cost.size() != c.states.size())
    fail("matrix/cost dimensions do not match the state list");
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p = at(c, i, j);
      if (p < 0.0) fail("negative probability in row " + std::to_string(i));
      sum += p;
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
      fail("row " + std::to_string(i) + " sums to " + std::to_string(sum));
  }
}

std::vector<std::vector<int>> adjacency(const InducedChain& c) {
  const int n = c.size();
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(c, i, j) > 0.0) adj[i].push_back(j);
  return adj;
}

std::vector<char> reachable_from(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
  }
  return seen;
}

// Kosaraju over the reachable subgraph; nodes outside `keep` get component -1.
std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& adj,
                                               const std::vector<char>& keep, int* count_out) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  std::vector<std::pair<int, std::size_t>> stack;
  for (int root = 0; root < n; ++root) {
    if (!keep[root] || visited[root]) continue;
    visited[root] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < adj[node].size()) {
        const int child = adj[node][next++];
        if (!visited[child]) {
          visited[child] = 1;
          stack.emplace_back(child, 0);
        }
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
  }

  std::vector<std::vector<int>> rev(n);
  for (int i = 0; i < n; ++i)
    if (keep[i])
      for (int j : adj[i]) rev[j].push_back(i);

  std::vector<int> comp(n, -1);
  int count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != -1) continue;
    std::vector<int> dfs{*it};
    comp[*it] = count;
    while (!dfs.empty()) {
      const int i = dfs.back();
      dfs.pop_back();
      for (int j : rev[i])
        if (comp[j] == -1) {
          comp[j] = count;
          dfs.push_back(j);
        }
    }
    ++count;
  }
  *count_out = count;
  return comp;
}

struct ClassValue {
  std::vector<int> members;
  double average = 0.0;
};

void verify_stationary(const InducedChain& chain, const std::vector<int>& members,
                       const std::vector<double>& mu) {
  const int m = static_cast<int>(members.size());
  double total = 0.0;
  for (double v : mu) {
    if (v < -kResidualTol) fail("stationary solve produced a negative mass");
    total += v;
  }
  if (std::abs(total - 1.0) > kResidualTol) fail("stationary mass sums to " + std::to_string(total));
  for (int c = 0; c < m; ++c) {
    double flow = 0.0;
    for (int r = 0; r < m; ++r) flow += mu[r] * at(chain, members[r], members[c]);
    if (std::abs(flow - mu[c]) > kResidualTol)
      fail("stationary residual " + std::to_string(std::abs(flow - mu[c])) +
           " exceeds 1e-10; solve did not converge");
  }
}

std::vector<double> stationary_direct(const InducedChain& chain, const std::vector<int>& members) {
  const int m = static_cast<int>(members.size());
  Eigen::MatrixXd a(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      a(r, c) = at(chain, members[c], members[r]) - (r == c ? 1.0 : 0.0);
  a.row(m - 1).setOnes();  // replace one redundant balance equation with normalization
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;
  const Eigen::VectorXd mu = a.partialPivLu().solve(rhs);
  return std::vector<double>(mu.data(), mu.data() + m);
}

std::vector<double> stationary_power(const InducedChain& chain, const std::vector<int>& members) {
  const int m = static_cast<int>(members.size());
  // Transposed restriction of P, so one matvec computes mu * P.
  std::vector<double> pt(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      pt[static_cast<std::size_t>(r) * m + c] = at(chain, members[c], members[r]);

  const kernels::Kind kind = kernels::preferred_kind();
  std::vector<double> mu(m, 1.0 / m), next(m);
  const long max_iters = 2000000;
  for (long it = 0; it < max_iters; ++it) {
    kernels::matvec_transposed(kind, pt.data(), mu.data(), next.data(), m);
    double residual = 0.0;
    for (int i = 0; i < m; ++i) residual += std::abs(next[i] - mu[i]);
    // Damped update keeps the same fixed point but converges on periodic
    // classes as well.
    for (int i = 0; i < m; ++i) mu[i] = 0.5 * (mu[i] + next[i]);
    if (residual < 1e-13) return mu;
  }
  fail("power iteration did not reach the residual target");
}

double class_average(const InducedChain& chain, const std::vector<int>& members,
                     StationaryMethod method) {
  const bool direct = method == StationaryMethod::direct ||
                      (method == StationaryMethod::automatic &&
                       static_cast<int>(members.size()) <= kDirectLimit);
  std::vector<double> mu = direct ? stationary_direct(chain, members)
                                  : stationary_power(chain, members);
  verify_stationary(chain, members, mu);
  double avg = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) avg += mu[i] * chain.age_cost[members[i]];
  return avg;
}

// Probability of absorption into each closed class, solved on the transient
// states: (I - Q) A = R.
std::vector<double> absorption_weights(const InducedChain& chain,
                                       const std::vector<int>& transient,
                                       const std::vector<ClassValue>& classes,
                                       const std::vector<int>& class_of, int start) {
  const int m = static_cast<int>(transient.size());
  const int k = static_cast<int>(classes.size());
  std::vector<int> transient_pos(chain.size(), -1);
  for (int r = 0; r < m; ++r) transient_pos[transient[r]] = r;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, k);
  for (int r = 0; r < m; ++r) {
    a(r, r) = 1.0;
    const int i = transient[r];
    for (int j = 0; j < chain.size(); ++j) {
      const double p = at(chain, i, j);
      if (p <= 0.0) continue;
      if (transient_pos[j] >= 0)
        a(r, transient_pos[j]) -= p;
      else if (class_of[j] >= 0)
        rhs(r, class_of[j]) += p;
    }
  }
  const Eigen::MatrixXd sol = a.partialPivLu().solve(rhs);
  const int row = transient_pos[start];
  std::vector<double> weights(k);
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    weights[c] = sol(row, c);
    total += weights[c];
  }
  if (std::abs(total - 1.0) > kResidualTol)
    fail("absorption probabilities sum to " + std::to_string(total));
  return weights;
}

}  // namespace

double exact_average_aoi(const InducedChain& chain, const State& start, StationaryMethod method) {
  check_stochastic(chain);
  const int n = chain.size();
  int start_idx = -1;
  for (int i = 0; i < n; ++i)
    if (chain.states[i] == start) {
      start_idx = i;
      break;
    }
  if (start_idx < 0) fail("start state " + to_string(start) + " not in the chain");

  const auto adj = adjacency(chain);
  const auto keep = reachable_from(adj, start_idx);
  int comp_count = 0;
  const auto comp = strongly_connected_components(adj, keep, &comp_count);

  // A component is closed when no edge leaves it; those are the recurrent
  // classes of the reachable sub-chain.
  std::vector<char> closed(comp_count, 1);
  for (int i = 0; i < n; ++i)
    if (keep[i])
      for (int j : adj[i])
        if (comp[j] != comp[i]) closed[comp[i]] = 0;

  std::vector<ClassValue> classes;
  std::vector<int> class_of(n, -1);  // index into `classes` for recurrent states
  for (int c = 0; c < comp_count; ++c) {
    if (!closed[c]) continue;
    ClassValue cv;
    for (int i = 0; i < n; ++i)
      if (keep[i] && comp[i] == c) cv.members.push_back(i);
    for (int i : cv.members) class_of[i] = static_cast<int>(classes.size());
    classes.push_back(std::move(cv));
  }
  if (classes.empty()) fail("no recurrent class reachable");  // impossible for finite chains
  for (ClassValue& cv : classes) cv.average = class_average(chain, cv.members, method);

  if (class_of[start_idx] >= 0) return classes[class_of[start_idx]].average;
  if (classes.size() == 1) return classes.front().average;

  std::vector<int> transient;
  for (int i = 0; i < n; ++i)
    if (keep[i] && class_of[i] < 0) transient.push_back(i);
  const auto weights = absorption_weights(chain, transient, classes, class_of, start_idx);
  double avg = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) avg += weights[c] * classes[c].average;
  return avg;
}

double policy_average_aoi(const Policy& policy, const ModelParams& params,
                          std::optional<State> start, StationaryMethod method) {
  const State s0 = start.value_or(State{0, params.age_max});
  return exact_average_aoi(induce_chain(policy, params), s0, method);
}

}  // namespace aoi
