#include "adestar/mckay.hpp"

#include "adestar/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace adestar {

std::string DynkinTag::name() const {
  const char* f = family == DynkinFamily::A ? "A" : family == DynkinFamily::D ? "D" : "E";
  return std::string(f) + "~" + std::to_string(rank);
}

std::vector<int> McKayGraph::neighbours(int v) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (adjacency(v, w) > 0) out.push_back(w);
  return out;
}

McKayGraph mckay_graph(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps) {
  const ConjugacyClassSet classes = conjugacy_classes(group);
  const int n = static_cast<int>(irreps.size());
  // V is reducible for cyclic groups, so work with its character directly.
  CVec chi_v(classes.size());
  for (int c = 0; c < classes.size(); ++c) chi_v(c) = group.matrix(classes.representatives[static_cast<std::size_t>(c)]).trace();

  McKayGraph g;
  for (const auto& r : irreps)
    if (r.dim == 2 && max_abs(r.character - chi_v) <= kCharacterTol) g.tautological = r.label;
  g.adjacency = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CVec prod = chi_v.cwiseProduct(irreps[static_cast<std::size_t>(j)].character);
      const cplx m = character_inner(classes, irreps[static_cast<std::size_t>(i)].character, prod);
      const long r = std::lround(m.real());
      if (std::abs(m - cplx(static_cast<double>(r), 0.0)) > 1e-6 || r < 0) {
        std::ostringstream os;
        os << "multiplicity of V_" << i << " in V (x) V_" << j << " is " << m;
        throw Error(ErrorCode::NonIntegerMultiplicity, os.str());
      }
      g.adjacency(i, j) = static_cast<int>(r);
    }

  g.extending_vertex = -1;
  for (const auto& r : irreps)
    if (r.dim == 1 && max_abs(r.character - CVec::Ones(r.character.size())) <= kCharacterTol) g.extending_vertex = r.label;
  if (g.extending_vertex < 0) throw Error(ErrorCode::NotFound, "trivial representation missing");

  for (const auto& r : irreps) g.delta.push_back(r.dim);

  // Bipartition by BFS from the extending vertex, which is even.
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  dist[static_cast<std::size_t>(g.extending_vertex)] = 0;
  std::deque<int> queue{g.extending_vertex};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbours(v))
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
  }
  g.sigma.resize(static_cast<std::size_t>(n));
  g.lambda.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (dist[static_cast<std::size_t>(v)] < 0) throw Error(ErrorCode::NotADE, "McKay graph is disconnected");
    g.sigma[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(v)] % 2 == 0 ? 1 : -1;
    g.lambda[static_cast<std::size_t>(v)] = g.sigma[static_cast<std::size_t>(v)] * g.delta[static_cast<std::size_t>(v)];
  }
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbours(v))
      if (g.sigma[static_cast<std::size_t>(v)] == g.sigma[static_cast<std::size_t>(w)])
        throw Error(ErrorCode::NotADE, "McKay graph is not bipartite");

  // tr_{V_i}(tau) must reproduce lambda.
  const int tau_class = classes.class_of[static_cast<std::size_t>(group.tau())];
  for (int v = 0; v < n; ++v) {
    const cplx t = irreps[static_cast<std::size_t>(v)].character(tau_class);
    if (std::lround(t.real()) != g.lambda[static_cast<std::size_t>(v)] || std::abs(t.imag()) > 1e-6)
      throw Error(ErrorCode::NonIntegerMultiplicity, "trace of -I disagrees with sigma * delta at vertex " + std::to_string(v));
  }

  // Names: BFS distance from the extending vertex, then rank among vertices
  // at that distance.
  std::vector<int> seen_at(static_cast<std::size_t>(n + 1), 0);
  g.names.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const int d = dist[static_cast<std::size_t>(v)];
    g.names[static_cast<std::size_t>(v)] = "d" + std::to_string(d) + "." + std::to_string(seen_at[static_cast<std::size_t>(d)]++);
  }
  return g;
}

DynkinTag graph_shape(const McKayGraph& g) {
  const int n = g.size();
  std::vector<int> degree(static_cast<std::size_t>(n));
  int edges = 0;
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      degree[static_cast<std::size_t>(v)] += g.adjacency(v, w);
      if (w > v) edges += g.adjacency(v, w);
    }
  }
  if (n == 2 && g.adjacency(0, 1) == 2 && g.adjacency(0, 0) == 0) return {DynkinFamily::A, 1};
  if (g.adjacency.maxCoeff() > 1 || g.adjacency.diagonal().any()) throw Error(ErrorCode::NotADE, "multiple edges or loops");

  const bool all_two = std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
  if (all_two && edges == n) return {DynkinFamily::A, n - 1};
  if (edges != n - 1) throw Error(ErrorCode::NotADE, "graph is neither a cycle nor a tree");

  std::vector<int> branch;
  for (int v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] > 4) throw Error(ErrorCode::NotADE, "vertex of degree > 4");
    if (degree[static_cast<std::size_t>(v)] >= 3) branch.push_back(v);
  }
  if (branch.size() == 1 && degree[static_cast<std::size_t>(branch[0])] == 4 && n == 5) return {DynkinFamily::D, 4};
  if (branch.size() == 2) {
    auto leaves_at = [&](int v) {
      int leaves = 0;
      for (int w : g.neighbours(v))
        if (degree[static_cast<std::size_t>(w)] == 1) ++leaves;
      return leaves;
    };
    if (degree[static_cast<std::size_t>(branch[0])] == 3 && degree[static_cast<std::size_t>(branch[1])] == 3 &&
        leaves_at(branch[0]) == 2 && leaves_at(branch[1]) == 2)
      return {DynkinFamily::D, n - 1};
  }
  if (branch.size() == 1 && degree[static_cast<std::size_t>(branch[0])] == 3) {
    std::vector<int> lengths;
    for (int start : g.neighbours(branch[0])) {
      int prev = branch[0], cur = start, len = 1;
      while (degree[static_cast<std::size_t>(cur)] == 2) {
        for (int w : g.neighbours(cur))
          if (w != prev) {
            prev = cur;
            cur = w;
            break;
          }
        ++len;
      }
      lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    if (lengths == std::vector<int>{2, 2, 2}) return {DynkinFamily::E, 6};
    if (lengths == std::vector<int>{1, 3, 3}) return {DynkinFamily::E, 7};
    if (lengths == std::vector<int>{1, 2, 5}) return {DynkinFamily::E, 8};
  }
  throw Error(ErrorCode::NotADE, "degree sequence matches no affine ADE diagram");
}

StarArms star_arms(const McKayGraph& g) {
  StarArms out;
  for (int v = 0; v < g.size(); ++v)
    if (out.center < 0 || g.delta[static_cast<std::size_t>(v)] > g.delta[static_cast<std::size_t>(out.center)]) out.center = v;
  for (int start : g.neighbours(out.center)) {
    std::vector<int> arm{start};
    int prev = out.center, cur = start;
    for (;;) {
      int next = -1;
      for (int w : g.neighbours(cur))
        if (w != prev) next = w;
      if (next < 0 || g.neighbours(cur).size() != 2) break;
      prev = cur;
      cur = next;
      arm.push_back(cur);
    }
    out.arms.push_back(std::move(arm));
  }
  // Longest arm first, then by the first vertex label.
  std::sort(out.arms.begin(), out.arms.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
  });
  return out;
}

std::string to_dot(const McKayGraph& g, const std::string& title) {
  std::ostringstream os;
  os << "graph \"" << title << "\" {\n";
  for (int v = 0; v < g.size(); ++v) {
    os << "  v" << v << " [label=\"" << g.lambda[static_cast<std::size_t>(v)] << "\"";
    if (v == g.extending_vertex) os << ", shape=box";
    os << "];\n";
  }
  for (int v = 0; v < g.size(); ++v)
    for (int w = v; w < g.size(); ++w)
      for (int k = 0; k < g.adjacency(v, w); ++k) os << "  v" << v << " -- v" << w << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace adestar
