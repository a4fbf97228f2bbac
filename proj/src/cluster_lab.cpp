#include "wh/cluster_lab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "wh/currents.hpp"
#include "wh/minimizer.hpp"

namespace wh {

void ExperimentConfig::validate() const {
  if (k < 2 || k > 10) throw DomainError("experiment rank must be in [2, 10]");
  if (sample_size < 1) throw DomainError("sample_size must be at least 1");
  if (word_length < 2) throw DomainError("word_length must be at least 2");
  if (automorphisms.empty()) throw DomainError("the automorphism set must be nonempty");
  if (!(apply_probability >= 0.0 && apply_probability <= 1.0)) {
    throw DomainError("apply_probability must lie in [0, 1]");
  }
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j = {{"k", k},
                      {"sample_size", sample_size},
                      {"word_length", word_length},
                      {"automorphisms", automorphisms},
                      {"apply_probability", apply_probability},
                      {"epsilon", epsilon},
                      {"seed", seed}};
  if (!out.empty()) j["out"] = out;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known = {"k",       "sample_size", "word_length", "automorphisms",
                                                 "apply_probability", "epsilon", "seed", "threads", "out"};
  ExperimentConfig cfg;
  try {
    if (!j.is_object()) throw DomainError("experiment config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw DomainError("unknown config field '" + key + "'");
      }
    }
    cfg.k = j.value("k", cfg.k);
    cfg.sample_size = j.value("sample_size", cfg.sample_size);
    cfg.word_length = j.value("word_length", cfg.word_length);
    cfg.automorphisms = j.at("automorphisms").get<std::vector<std::string>>();
    cfg.apply_probability = j.value("apply_probability", cfg.apply_probability);
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.out = j.value("out", cfg.out);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::size_t ClusterReport::transformed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const ElementRecord& r) { return r.label != kUnlabeled; }));
}

nlohmann::json ClusterReport::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const ElementRecord& r : records) {
    nlohmann::json j = {{"id", r.id},
                        {"label", r.label == kUnlabeled ? nlohmann::json(nullptr)
                                                        : nlohmann::json(config.automorphisms[static_cast<std::size_t>(r.label)])},
                        {"sampled_length", r.sampled_length},
                        {"minimal_length", r.minimal_length},
                        {"final_length", r.final_length},
                        {"minimal", r.minimal},
                        {"features", r.features},
                        {"centroid_distances", r.centroid_distances}};
    if (r.label != kUnlabeled) {
      j["distance_to_predicted"] = r.centroid_distances[static_cast<std::size_t>(r.label)];
      j["reduced_by_tau"] = *r.reduced_by_tau;
    } else {
      j["distance_to_predicted"] = nullptr;
      j["reduced_by_tau"] = nullptr;
    }
    recs.push_back(std::move(j));
  }
  nlohmann::json cl = nlohmann::json::array();
  for (const ClusterSummary& c : clusters) {
    cl.push_back({{"automorphism", c.automorphism},
                  {"lambda", c.lambda.to_json()},
                  {"tau", c.tau},
                  {"centroid", c.centroid},
                  {"members", c.members},
                  {"mean_distance", c.mean_distance},
                  {"max_distance", c.max_distance},
                  {"p95_distance", c.p95_distance},
                  {"fraction_reduced", c.fraction_reduced},
                  {"fraction_within_epsilon", c.fraction_within_epsilon}});
  }
  nlohmann::json out = {{"config", config.to_json()},
                        {"clusters", std::move(cl)},
                        {"centroid_distances", centroid_distances},
                        {"nonminimal_in_w1", nonminimal_in_w1},
                        {"rejected_applications", rejected_applications},
                        {"transformed", transformed()},
                        {"records", std::move(recs)}};
  if (transformed() > 0) {
    out["nearest_centroid_accuracy"] = nearest_centroid_classify(*this);
  }
  if (clusters.size() > 1 && transformed() > 0) out["separation_ratio"] = separation_ratio(*this);
  return out;
}

namespace {

struct Prediction {
  Automorphism phi;
  NormalizedWhiteheadGraph centroid;
  CharPair tau;
  Rational lambda;
};

ElementRecord sample_element(const ExperimentConfig& cfg, const std::vector<Prediction>& predictions,
                             std::size_t id) {
  Rng rng = Rng(cfg.seed).derive(id);
  ElementRecord rec;
  rec.id = id;
  const CyclicWord w1 = sample_cyclically_reduced(cfg.k, cfg.word_length, rng);
  rec.sampled_length = w1.size();
  const CyclicWord w2 = is_minimal(cfg.k, w1) ? w1 : minimize(cfg.k, w1).result;
  rec.minimal_length = w2.size();
  rec.minimal = is_minimal(cfg.k, w2);

  CyclicWord w3 = w2;
  if (cfg.apply_probability > 0.0 && rng.uniform() < cfg.apply_probability) {
    const auto j = static_cast<std::size_t>(rng.below(predictions.size()));
    CyclicWord image = apply_cyclic(predictions[j].phi, w2);
    if (image.size() > w2.size()) {
      rec.label = static_cast<int>(j);
      w3 = std::move(image);
    } else {
      rec.rejected = true;
    }
  }
  rec.final_length = w3.size();

  const WhiteheadGraph graph = whitehead_graph(cfg.k, w3);
  const NormalizedWhiteheadGraph features = normalize(graph, static_cast<std::int64_t>(w3.size()));
  rec.features = features.labels();
  for (const Prediction& p : predictions) rec.centroid_distances.push_back(graph_distance(features, p.centroid));
  if (rec.label != kUnlabeled) {
    rec.reduced_by_tau = length_change(predictions[static_cast<std::size_t>(rec.label)].tau, graph) < 0;
  }
  return rec;
}

double percentile95(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(xs.size())));
  return xs[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace

ClusterReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<Prediction> predictions;
  for (const std::string& literal : cfg.automorphisms) {
    const Automorphism phi = parse_automorphism(literal, cfg.k);
    if (is_simple(phi)) {
      throw DomainError("automorphism " + literal +
                        " is a relabeling composed with an inner automorphism; it has no cluster prediction");
    }
    const IdealStep step = ideal_step(phi);
    predictions.push_back({phi, phi_nA_graph(phi), step.move, step.lambda_before});
  }

  ClusterReport report;
  report.config = cfg;
  report.records.resize(cfg.sample_size);
  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.sample_size));
  {
    std::vector<std::jthread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < cfg.sample_size; i += threads) {
            report.records[i] = sample_element(cfg, predictions, i);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    workers.clear();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (const ElementRecord& r : report.records) {
    if (r.sampled_length != r.minimal_length) ++report.nonminimal_in_w1;
  }
  for (const ElementRecord& r : report.records) {
    if (r.rejected) ++report.rejected_applications;
  }

  for (std::size_t j = 0; j < predictions.size(); ++j) {
    ClusterSummary s;
    s.automorphism = cfg.automorphisms[j];
    s.lambda = predictions[j].lambda;
    s.tau = predictions[j].tau.str();
    s.centroid = predictions[j].centroid.labels();
    std::vector<double> dists;
    std::size_t reduced = 0;
    std::size_t within = 0;
    for (const ElementRecord& r : report.records) {
      if (r.label != static_cast<int>(j)) continue;
      const double d = r.centroid_distances[j];
      dists.push_back(d);
      if (*r.reduced_by_tau) ++reduced;
      if (d <= cfg.epsilon) ++within;
    }
    s.members = dists.size();
    if (!dists.empty()) {
      double sum = 0.0;
      for (double d : dists) sum += d;
      s.mean_distance = sum / static_cast<double>(dists.size());
      s.max_distance = *std::max_element(dists.begin(), dists.end());
      s.p95_distance = percentile95(dists);
      s.fraction_reduced = static_cast<double>(reduced) / static_cast<double>(dists.size());
      s.fraction_within_epsilon = static_cast<double>(within) / static_cast<double>(dists.size());
    }
    report.clusters.push_back(std::move(s));
  }

  report.centroid_distances.assign(predictions.size(), std::vector<double>(predictions.size(), 0.0));
  for (std::size_t a = 0; a < predictions.size(); ++a) {
    for (std::size_t b = 0; b < predictions.size(); ++b) {
      report.centroid_distances[a][b] = graph_distance(predictions[a].centroid, predictions[b].centroid);
    }
  }
  return report;
}

double nearest_centroid_classify(const ClusterReport& report) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const ElementRecord& r : report.records) {
    if (r.label == kUnlabeled) continue;
    ++total;
    const auto nearest = std::min_element(r.centroid_distances.begin(), r.centroid_distances.end());
    const auto guess = static_cast<int>(nearest - r.centroid_distances.begin());
    // Centroids that coincide describe the same cluster.
    if (guess == r.label || std::abs(*nearest - r.centroid_distances[static_cast<std::size_t>(r.label)]) <= 1e-12) {
      ++correct;
    }
  }
  if (total == 0) throw DomainError("no transformed elements to classify");
  return static_cast<double>(correct) / static_cast<double>(total);
}

double separation_ratio(const ClusterReport& report) {
  double min_inter = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < report.centroid_distances.size(); ++a) {
    for (std::size_t b = a + 1; b < report.centroid_distances.size(); ++b) {
      min_inter = std::min(min_inter, report.centroid_distances[a][b]);
    }
  }
  double max_mean = 0.0;
  for (const ClusterSummary& c : report.clusters) max_mean = std::max(max_mean, c.mean_distance);
  return max_mean == 0.0 ? std::numeric_limits<double>::infinity() : min_inter / max_mean;
}

std::string features_csv(const ClusterReport& report) {
  std::ostringstream os;
  os << "id,label," << NormalizedWhiteheadGraph::csv_header(report.config.k);
  for (std::size_t j = 0; j < report.clusters.size(); ++j) os << ",dist_" << j;
  os << '\n';
  os.precision(17);
  for (const ElementRecord& r : report.records) {
    os << r.id << ',';
    if (r.label != kUnlabeled) os << r.label;
    for (double f : r.features) os << ',' << f;
    for (double d : r.centroid_distances) os << ',' << d;
    os << '\n';
  }
  return os.str();
}

std::string clusters_svg(const ClusterReport& report) {
  const std::size_t dim = edge_count(report.config.k);
  // The two feature coordinates with the highest variance over all records.
  std::vector<double> mean(dim, 0.0);
  std::vector<double> var(dim, 0.0);
  const auto n = static_cast<double>(report.records.size());
  for (const auto& r : report.records) {
    for (std::size_t i = 0; i < dim; ++i) mean[i] += r.features[i] / n;
  }
  for (const auto& r : report.records) {
    for (std::size_t i = 0; i < dim; ++i) var[i] += (r.features[i] - mean[i]) * (r.features[i] - mean[i]);
  }
  std::vector<std::size_t> order(dim);
  for (std::size_t i = 0; i < dim; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return var[a] > var[b]; });
  const std::size_t ix = order[0];
  const std::size_t iy = order.size() > 1 ? order[1] : order[0];

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto extend = [&](double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& r : report.records) extend(r.features[ix], r.features[iy]);
  for (const auto& c : report.clusters) extend(c.centroid[ix], c.centroid[iy]);
  if (xmax - xmin < 1e-9) xmax = xmin + 1e-9;
  if (ymax - ymin < 1e-9) ymax = ymin + 1e-9;

  constexpr double kWidth = 640, kHeight = 480, kMargin = 40;
  auto px = [&](double x) { return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  auto color = [&](int label) { return label == kUnlabeled ? "#bbbbbb" : palette[label % 10]; };

  const auto [ux, vx] = edge_endpoints(report.config.k, ix);
  const auto [uy, vy] = edge_endpoints(report.config.k, iy);
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8 << "\" text-anchor=\"middle\" font-size=\"12\">edge {"
     << ux.to_char() << "," << vx.to_char() << "}</text>\n";
  os << "<text x=\"12\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 12 " << kHeight / 2
     << ")\" text-anchor=\"middle\">edge {" << uy.to_char() << "," << vy.to_char() << "}</text>\n";
  for (const auto& r : report.records) {
    os << "<circle cx=\"" << px(r.features[ix]) << "\" cy=\"" << py(r.features[iy]) << "\" r=\"2\" fill=\""
       << color(r.label) << "\" fill-opacity=\"0.6\"/>\n";
  }
  for (std::size_t j = 0; j < report.clusters.size(); ++j) {
    const double cx = px(report.clusters[j].centroid[ix]);
    const double cy = py(report.clusters[j].centroid[iy]);
    os << "<path d=\"M" << cx - 7 << ' ' << cy - 7 << " L" << cx + 7 << ' ' << cy + 7 << " M" << cx - 7 << ' '
       << cy + 7 << " L" << cx + 7 << ' ' << cy - 7 << "\" stroke=\"black\" stroke-width=\"2.5\"/>\n";
    os << "<path d=\"M" << cx - 6 << ' ' << cy - 6 << " L" << cx + 6 << ' ' << cy + 6 << " M" << cx - 6 << ' '
       << cy + 6 << " L" << cx + 6 << ' ' << cy - 6 << "\" stroke=\"" << color(static_cast<int>(j))
       << "\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_report(const ClusterReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw DomainError("cannot write " + (dir / name).string());
    out << content;
  };
  write("report.json", report.to_json().dump(2) + "\n");
  write("features.csv", features_csv(report));
  write("clusters.svg", clusters_svg(report));
}

std::vector<GenericityRow> estimate_genericity(const WordPredicate& predicate, int k, SampleDomain domain,
                                               const std::vector<std::size_t>& lengths, std::size_t samples,
                                               Rng& rng) {
  if (samples == 0) throw DomainError("need at least one sample");
  std::vector<GenericityRow> rows;
  for (std::size_t n : lengths) {
    if (n == 0) throw DomainError("sample length must be positive");
    GenericityRow row{n, samples, 0};
    for (std::size_t i = 0; i < samples; ++i) {
      const CyclicWord w = domain == SampleDomain::kCyclicallyReduced
                               ? sample_cyclically_reduced(k, n, rng)
                               : cyclic_reduce(sample_reduced(k, n, rng)).cyclic;
      if (predicate(w)) ++row.hits;
    }
    rows.push_back(row);
  }
  return rows;
}

bool in_uniform_neighborhood(int k, const CyclicWord& w, double eps, int m) {
  if (m < 1) throw DomainError("neighborhood degree must be positive");
  const double target = 1.0 / (2.0 * k * std::pow(2.0 * k - 1.0, m - 1));
  const auto nu = rational_current(k, w.linear(), m);
  const auto n = static_cast<double>(w.size());
  for (const auto& [v, count] : nu.coords()) {
    if (v.size() != static_cast<std::size_t>(m)) continue;
    if (std::abs(count / n - target) > eps) return false;
  }
  return true;
}

}  // namespace wh
