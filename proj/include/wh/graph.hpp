#pragma once

// Weighted and normalized Whitehead graphs. Vertices are the letters of
// Sigma; edges are the k(2k-1) unordered pairs of distinct letters, indexed
// in lexicographic order of (smaller code, larger code).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wh/autos.hpp"
#include "wh/core.hpp"

namespace wh {

constexpr std::size_t edge_count(int k) {
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(2 * k - 1);
}

/// Position of the unordered edge {p, q}, p != q.
std::size_t edge_index(int k, Letter p, Letter q);
/// Endpoints of edge i, smaller code first.
std::pair<Letter, Letter> edge_endpoints(int k, std::size_t i);

class WhiteheadGraph {
 public:
  explicit WhiteheadGraph(int k) : k_(k), labels_(edge_count(k), 0) {}

  int rank() const { return k_; }
  std::int64_t label(Letter p, Letter q) const { return labels_[edge_index(k_, p, q)]; }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  std::int64_t total() const;
  void add(Letter p, Letter q, std::int64_t amount) { labels_[edge_index(k_, p, q)] += amount; }

  nlohmann::json to_json() const;

 private:
  int k_;
  std::vector<std::int64_t> labels_;
};

class NormalizedWhiteheadGraph {
 public:
  NormalizedWhiteheadGraph(int k, std::vector<double> labels);

  int rank() const { return k_; }
  double label(Letter p, Letter q) const { return labels_[edge_index(k_, p, q)]; }
  /// Flat feature vector of dimension k(2k-1).
  const std::vector<double>& labels() const { return labels_; }

  nlohmann::json to_json() const;
  /// Comma-separated labels.
  std::string csv_row() const;
  /// Column names "e_aA,e_ab,..." matching csv_row.
  static std::string csv_header(int k);

 private:
  int k_;
  std::vector<double> labels_;
};

/// Edge {x^-1, y} carries <xy, w> + <y^-1 x^-1, w>.
WhiteheadGraph whitehead_graph(int k, const CyclicWord& w);
NormalizedWhiteheadGraph normalize(const WhiteheadGraph& g, std::int64_t n);
/// normalize(whitehead_graph(w), ||w||).
NormalizedWhiteheadGraph normalized_graph(int k, const CyclicWord& w);

/// Max-norm distance between label vectors.
double graph_distance(const NormalizedWhiteheadGraph& g, const NormalizedWhiteheadGraph& h);

/// P.Q: total label of edges joining a vertex of P to a vertex of Q.
std::int64_t dot(LetterSet p, LetterSet q, const WhiteheadGraph& g);
double dot(LetterSet p, LetterSet q, const NormalizedWhiteheadGraph& g);

/// ||tau(w)|| - ||w||, i.e. T.T' - a.Sigma after inverting T and a (edges here are {x^-1, y}).
std::int64_t length_change(const CharPair& tau, const WhiteheadGraph& g);
/// The same quantity divided by ||w||.
double length_change(const CharPair& tau, const NormalizedWhiteheadGraph& g);

}  // namespace wh
