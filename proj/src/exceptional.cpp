#include "adestar/exceptional.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace adestar {

namespace {

constexpr double kScalarTol = 1e-8;
constexpr double kLabelTol = 1e-6;

std::vector<cplx> grid(int dim, bool even) {
  std::vector<cplx> out;
  for (int v = -dim; v <= dim; v += 2) out.push_back(even ? cplx(v, 0) : cplx(0, v));
  return out;
}

// Nearest point of (1/2) Z[i], or nullopt if further than kLabelTol.
std::optional<cplx> snap(cplx z) {
  const cplx s(std::round(2 * z.real()) / 2, std::round(2 * z.imag()) / 2);
  if (std::abs(z - s) > kLabelTol) return std::nullopt;
  return s;
}

bool lex_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

}  // namespace

std::vector<ExceptionalIrrep> find_exceptional(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps) {
  std::vector<int> order4;
  for (int g = 0; g < group.order(); ++g)
    if (element_order(group, g) == 4) order4.push_back(g);
  std::vector<ExceptionalIrrep> out;
  for (const UnitaryIrrep& rep : irreps) {
    ExceptionalIrrep e{rep.label, rep.dim, {}, {}};
    for (int g : order4) {
      const Mat& m = rep(g);
      const cplx c = m.trace() / static_cast<double>(rep.dim);
      if ((m - c * Mat::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff() <= kScalarTol) {
        e.elements.push_back(g);
        e.scalars.push_back(c);
      }
    }
    if (!e.elements.empty()) out.push_back(std::move(e));
  }
  return out;
}

bool exceptional_by_character(const FiniteSubgroup& group, const UnitaryIrrep& irrep) {
  const ConjugacyClassSet classes = conjugacy_classes(group);
  for (std::size_t c = 0; c < classes.representatives.size(); ++c) {
    if (element_order(group, classes.representatives[c]) != 4) continue;
    if (std::abs(std::abs(irrep.character(static_cast<Eigen::Index>(c))) - irrep.dim) <= kLabelTol) return true;
  }
  return false;
}

double TraceLabeling::norm_squared() const {
  double s = 0;
  for (cplx z : labels) s += std::norm(z);
  return s;
}

bool admissible(const McKayGraph& graph, const TraceLabeling& labeling) {
  const int n = graph.size();
  if (static_cast<int>(labeling.labels.size()) != n) return false;
  if (std::abs(labeling.labels[static_cast<std::size_t>(graph.extending_vertex)] - cplx(1.0)) > kLabelTol) return false;
  for (int v = 0; v < n; ++v) {
    const auto cands = grid(graph.delta[static_cast<std::size_t>(v)], graph.sigma[static_cast<std::size_t>(v)] > 0);
    const cplx z = labeling.labels[static_cast<std::size_t>(v)];
    if (std::none_of(cands.begin(), cands.end(), [&](cplx c) { return std::abs(c - z) <= kLabelTol; })) return false;
    cplx sum = 0;
    for (int w : graph.neighbours(v)) sum += static_cast<double>(graph.adjacency(v, w)) * labeling.labels[static_cast<std::size_t>(w)];
    if (std::abs(sum) > kLabelTol) return false;
  }
  return true;
}

std::vector<TraceLabeling> enumerate_labelings(const McKayGraph& graph) {
  const int n = graph.size();
  // Breadth-first order from the extending vertex, so neighbour sums close
  // as early as possible.
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<int> queue{graph.extending_vertex};
  seen[static_cast<std::size_t>(graph.extending_vertex)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int w : graph.neighbours(v))
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        queue.push_back(w);
      }
  }

  std::vector<std::vector<cplx>> cands(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    cands[static_cast<std::size_t>(v)] = grid(graph.delta[static_cast<std::size_t>(v)], graph.sigma[static_cast<std::size_t>(v)] > 0);
  cands[static_cast<std::size_t>(graph.extending_vertex)] = {cplx(1.0)};

  std::vector<cplx> labels(static_cast<std::size_t>(n));
  std::vector<bool> assigned(static_cast<std::size_t>(n), false);
  std::vector<TraceLabeling> out;

  auto closes = [&](int v) {
    cplx sum = 0;
    for (int w : graph.neighbours(v)) {
      if (!assigned[static_cast<std::size_t>(w)]) return true;
      sum += static_cast<double>(graph.adjacency(v, w)) * labels[static_cast<std::size_t>(w)];
    }
    return std::abs(sum) <= kLabelTol;
  };

  auto search = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      out.push_back({labels});
      return;
    }
    const int v = order[depth];
    for (cplx c : cands[static_cast<std::size_t>(v)]) {
      labels[static_cast<std::size_t>(v)] = c;
      assigned[static_cast<std::size_t>(v)] = true;
      bool ok = closes(v);
      for (int w : graph.neighbours(v)) ok = ok && closes(w);
      if (ok) self(self, depth + 1);
      assigned[static_cast<std::size_t>(v)] = false;
    }
  };
  search(search, 0);

  std::sort(out.begin(), out.end(), [](const TraceLabeling& a, const TraceLabeling& b) {
    if (a.norm_squared() != b.norm_squared()) return a.norm_squared() < b.norm_squared();
    return lex_less(a.labels, b.labels);
  });
  return out;
}

std::optional<int> realizability_check(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps,
                                       const McKayGraph& graph, const TraceLabeling& labeling) {
  if (!admissible(graph, labeling)) return std::nullopt;
  for (int g = 0; g < group.order(); ++g) {
    if (element_order(group, g) != 4) continue;
    bool match = true;
    for (const UnitaryIrrep& rep : irreps) {
      const auto chi = snap(rep(g).trace());
      if (!chi || std::abs(*chi - labeling.labels[static_cast<std::size_t>(rep.label)]) > kLabelTol) {
        match = false;
        break;
      }
    }
    if (match) return g;
  }
  return std::nullopt;
}

}  // namespace adestar
