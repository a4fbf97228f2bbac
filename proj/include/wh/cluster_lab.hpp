#pragma once

// Experiment harness: random minimal words are pushed through a set of
// automorphisms, and the normalized Whitehead graphs of the images are
// compared against the centroids predicted from phi(n_A).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wh/autos.hpp"
#include "wh/graph.hpp"
#include "wh/ideal.hpp"

namespace wh {

struct ExperimentConfig {
  int k = 2;
  std::size_t sample_size = 1000;
  std::size_t word_length = 1000;
  std::vector<std::string> automorphisms;
  double apply_probability = 0.5;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
  /// Output directory; optional, the CLI's --out takes precedence.
  std::string out;
  /// Worker threads; 0 picks the hardware concurrency. Output does not depend on it.
  unsigned threads = 0;

  /// Throws DomainError on a violated invariant.
  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

constexpr int kUnlabeled = -1;

struct ElementRecord {
  std::size_t id = 0;
  /// Index into the automorphism set, or kUnlabeled.
  int label = kUnlabeled;
  std::size_t sampled_length = 0;  // ||w|| in W1
  std::size_t minimal_length = 0;  // ||w|| in W2
  std::size_t final_length = 0;    // ||phi(w)|| in W3
  bool minimal = true;             // W2 element admits no decreasing move
  bool rejected = false;           // drew an automorphism that did not lengthen w
  std::vector<double> features;
  /// graph_distance to each predicted centroid.
  std::vector<double> centroid_distances;
  /// For labeled elements: ||tau phi(w)|| < ||phi(w)|| with tau the cluster's move.
  std::optional<bool> reduced_by_tau;
};

struct ClusterSummary {
  std::string automorphism;
  Rational lambda;
  std::string tau;
  std::vector<double> centroid;
  std::size_t members = 0;
  double mean_distance = 0.0;
  double max_distance = 0.0;
  double p95_distance = 0.0;
  double fraction_reduced = 0.0;
  double fraction_within_epsilon = 0.0;
};

struct ClusterReport {
  ExperimentConfig config;
  std::vector<ElementRecord> records;
  std::vector<ClusterSummary> clusters;
  std::vector<std::vector<double>> centroid_distances;
  std::size_t nonminimal_in_w1 = 0;
  /// Draws where the chosen automorphism did not lengthen the word.
  std::size_t rejected_applications = 0;

  std::size_t transformed() const;
  nlohmann::json to_json() const;
};

ClusterReport run_experiment(const ExperimentConfig& cfg);

/// Fraction of labeled elements whose nearest predicted centroid is their own.
double nearest_centroid_classify(const ClusterReport& report);

/// Minimum inter-centroid distance over the maximum per-cluster mean distance.
double separation_ratio(const ClusterReport& report);

/// Writes report.json, features.csv and clusters.svg into `dir`.
void write_report(const ClusterReport& report, const std::filesystem::path& dir);
std::string features_csv(const ClusterReport& report);
std::string clusters_svg(const ClusterReport& report);

enum class SampleDomain { kReduced, kCyclicallyReduced };

/// Predicates see the cyclic reduction of each sampled element.
using WordPredicate = std::function<bool(const CyclicWord&)>;

struct GenericityRow {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t hits = 0;
  double frequency() const { return samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples); }
};

std::vector<GenericityRow> estimate_genericity(const WordPredicate& predicate, int k, SampleDomain domain,
                                               const std::vector<std::size_t>& lengths, std::size_t samples,
                                               Rng& rng);

/// Every |v| = m occurs in w with frequency within eps of the uniform value.
bool in_uniform_neighborhood(int k, const CyclicWord& w, double eps, int m);

}  // namespace wh
