#include "wh/graph.hpp"

#include <cmath>
#include <sstream>

namespace wh {

std::size_t edge_index(int k, Letter p, Letter q) {
  const int n = 2 * k;
  int lo = p.code();
  int hi = q.code();
  if (lo == hi || lo >= n || hi >= n) throw DomainError("edge needs two distinct letters of the alphabet");
  if (lo > hi) std::swap(lo, hi);
  return static_cast<std::size_t>(lo * (n - 1) - lo * (lo - 1) / 2 + (hi - lo - 1));
}

std::pair<Letter, Letter> edge_endpoints(int k, std::size_t i) {
  const int n = 2 * k;
  int lo = 0;
  auto remaining = static_cast<int>(i);
  while (remaining >= n - 1 - lo) {
    remaining -= n - 1 - lo;
    ++lo;
  }
  return {Letter::from_code(lo), Letter::from_code(lo + 1 + remaining)};
}

std::int64_t WhiteheadGraph::total() const {
  std::int64_t s = 0;
  for (auto r : labels_) s += r;
  return s;
}

namespace {

template <typename Label>
nlohmann::json graph_json(int k, const std::vector<Label>& labels) {
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [u, v] = edge_endpoints(k, i);
    edges.push_back({{"u", std::string(1, u.to_char())}, {"v", std::string(1, v.to_char())}, {"r", labels[i]}});
  }
  return {{"k", k}, {"edges", std::move(edges)}};
}

template <typename Graph>
auto dot_impl(LetterSet p, LetterSet q, const Graph& g) {
  using Label = typename std::decay_t<decltype(g.labels())>::value_type;
  Label s{};
  const auto& labels = g.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [u, v] = edge_endpoints(g.rank(), i);
    if ((p.contains(u) && q.contains(v)) || (p.contains(v) && q.contains(u))) s += labels[i];
  }
  return s;
}

template <typename Graph>
auto length_change_impl(const CharPair& tau, const Graph& g) {
  if (tau.rank != g.rank()) throw DomainError("rank mismatch between Whitehead move and graph");
  // T.T' - a.Sigma is stated for edges {x, y^-1}; ours are {x^-1, y}, so the
  // pair is read through inversion.
  const LetterSet all = LetterSet::all(g.rank());
  const LetterSet t = tau.subset.inverted();
  return dot_impl(t, t.complement(g.rank()), g) - dot_impl(LetterSet::of({tau.multiplier.inverse()}), all, g);
}

}  // namespace

nlohmann::json WhiteheadGraph::to_json() const { return graph_json(k_, labels_); }

NormalizedWhiteheadGraph::NormalizedWhiteheadGraph(int k, std::vector<double> labels)
    : k_(k), labels_(std::move(labels)) {
  if (labels_.size() != edge_count(k)) throw DomainError("label vector has the wrong dimension");
}

nlohmann::json NormalizedWhiteheadGraph::to_json() const { return graph_json(k_, labels_); }

std::string NormalizedWhiteheadGraph::csv_row() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) os << ',';
    os << labels_[i];
  }
  return os.str();
}

std::string NormalizedWhiteheadGraph::csv_header(int k) {
  std::string s;
  for (std::size_t i = 0; i < edge_count(k); ++i) {
    const auto [u, v] = edge_endpoints(k, i);
    if (i) s += ',';
    s += "e_";
    s += u.to_char();
    s += v.to_char();
  }
  return s;
}

WhiteheadGraph whitehead_graph(int k, const CyclicWord& w) {
  if (w.max_generator() > k) throw DomainError("cyclic word exceeds rank " + std::to_string(k));
  WhiteheadGraph g(k);
  // Each cyclic 2-subword xy lands on edge {x^-1, y}; the reversed inverse
  // y^-1 x^-1 lands on the same edge, so one pass accumulates both terms.
  for (std::size_t i = 0; i < w.size(); ++i) {
    g.add(w[i].inverse(), w.at(i + 1), 1);
  }
  return g;
}

NormalizedWhiteheadGraph normalize(const WhiteheadGraph& g, std::int64_t n) {
  if (n <= 0) throw DomainError("normalizing length must be positive");
  std::vector<double> labels;
  labels.reserve(g.labels().size());
  const auto denom = static_cast<double>(n);
  for (auto r : g.labels()) labels.push_back(static_cast<double>(r) / denom);
  return NormalizedWhiteheadGraph(g.rank(), std::move(labels));
}

NormalizedWhiteheadGraph normalized_graph(int k, const CyclicWord& w) {
  return normalize(whitehead_graph(k, w), static_cast<std::int64_t>(w.size()));
}

double graph_distance(const NormalizedWhiteheadGraph& g, const NormalizedWhiteheadGraph& h) {
  if (g.rank() != h.rank()) throw DomainError("rank mismatch in graph distance");
  double d = 0.0;
  for (std::size_t i = 0; i < g.labels().size(); ++i) {
    d = std::max(d, std::abs(g.labels()[i] - h.labels()[i]));
  }
  return d;
}

std::int64_t dot(LetterSet p, LetterSet q, const WhiteheadGraph& g) { return dot_impl(p, q, g); }
double dot(LetterSet p, LetterSet q, const NormalizedWhiteheadGraph& g) { return dot_impl(p, q, g); }

std::int64_t length_change(const CharPair& tau, const WhiteheadGraph& g) {
  return length_change_impl(tau, g);
}

double length_change(const CharPair& tau, const NormalizedWhiteheadGraph& g) {
  return length_change_impl(tau, g);
}

}  // namespace wh
