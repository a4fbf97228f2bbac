#include "wh/currents.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "wh/ideal.hpp"

namespace wh {

namespace {

// Dense per-length tables indexed by the base-2k value of the letter codes.
class WindowCounts {
 public:
  WindowCounts(int k, int radius) : k_(k), radius_(radius) {
    std::size_t size = 1;
    for (int len = 1; len <= radius; ++len) {
      size *= static_cast<std::size_t>(2 * k);
      counts_.emplace_back(size, 0.0);
    }
  }

  /// Adds `weight` for every reading of length 1..R starting at each
  /// position of the circle.
  void add_cyclic(const CyclicWord& w, double weight) {
    const std::size_t n = w.size();
    const auto base = static_cast<std::size_t>(2 * k_);
    for (std::size_t start = 0; start < n; ++start) {
      std::size_t key = 0;
      for (int len = 1; len <= radius_; ++len) {
        key = key * base + static_cast<std::size_t>(w.at(start + static_cast<std::size_t>(len) - 1).code());
        counts_[static_cast<std::size_t>(len - 1)][key] += weight;
      }
    }
  }

  double get(const Word& v) const {
    std::size_t key = 0;
    for (Letter x : v.letters()) key = key * static_cast<std::size_t>(2 * k_) + static_cast<std::size_t>(x.code());
    return counts_[v.size() - 1][key];
  }

 private:
  int k_;
  int radius_;
  std::vector<std::vector<double>> counts_;
};

void check_radius(int k, int radius) {
  if (k < 1 || k > kMaxRank) throw DomainError("rank must be in [1, 26]");
  if (radius < 1 || radius > 12) throw DomainError("current radius must be in [1, 12]");
}

bool close(double expected, double actual, double tolerance) {
  const double scale = std::max(std::abs(expected), std::abs(actual));
  return std::abs(expected - actual) <= tolerance * scale;
}

}  // namespace

TruncatedCurrent::TruncatedCurrent(int k, int radius) : k_(k), radius_(radius) {
  check_radius(k, radius);
  for (int len = 1; len <= radius; ++len) {
    for (Word& v : reduced_words(k, static_cast<std::size_t>(len))) coords_.emplace(std::move(v), 0.0);
  }
}

void TruncatedCurrent::check_key(const Word& v) const {
  if (v.empty() || v.size() > static_cast<std::size_t>(radius_) || v.max_generator() > k_) {
    throw DomainError("coordinate " + v.str() + " outside the truncated table");
  }
}

double TruncatedCurrent::at(const Word& v) const {
  check_key(v);
  return coords_.at(v);
}

void TruncatedCurrent::set(const Word& v, double value) {
  check_key(v);
  coords_.at(v) = value;
}

double TruncatedCurrent::level_sum(int m) const {
  double s = 0.0;
  for (const auto& [v, x] : coords_) {
    if (v.size() == static_cast<std::size_t>(m)) s += x;
  }
  return s;
}

TruncatedCurrent TruncatedCurrent::scaled(double s) const {
  TruncatedCurrent out = *this;
  for (auto& [v, x] : out.coords_) x *= s;
  return out;
}

nlohmann::json TruncatedCurrent::to_json() const {
  nlohmann::json coords = nlohmann::json::object();
  for (const auto& [v, x] : coords_) coords[v.str()] = x;
  return {{"k", k_}, {"R", radius_}, {"coords", std::move(coords)}};
}

TruncatedCurrent TruncatedCurrent::from_json(const nlohmann::json& j) {
  try {
    TruncatedCurrent nu(j.at("k").get<int>(), j.at("R").get<int>());
    for (const auto& [key, value] : j.at("coords").items()) {
      const auto letters = parse_letters(key);
      if (!is_freely_reduced(letters)) throw DomainError("coordinate key " + key + " is not reduced");
      nu.set(Word::from_reduced(letters), value.get<double>());
    }
    return nu;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed current JSON: ") + e.what());
  }
}

TruncatedCurrent uniform_current(int k, int radius) {
  TruncatedCurrent nu(k, radius);
  for (const auto& [v, x] : nu.coords()) {
    const double value = 1.0 / (2.0 * k * std::pow(2.0 * k - 1.0, static_cast<double>(v.size()) - 1.0));
    nu.set(v, value);
  }
  return nu;
}

TruncatedCurrent rational_current(int k, const Word& g, int radius) {
  if (g.empty()) throw DomainError("the trivial element has no counting current");
  if (g.max_generator() > k) throw DomainError("element exceeds rank " + std::to_string(k));
  const CyclicWord w = cyclic_reduce(g).cyclic;
  if (static_cast<std::size_t>(radius) > kMaxWraps * w.size()) {
    throw DomainError("radius exceeds the supported number of wraps");
  }
  TruncatedCurrent nu(k, radius);
  WindowCounts counts(k, radius);
  counts.add_cyclic(w, 1.0);
  for (const auto& [v, x] : nu.coords()) nu.set(v, counts.get(v));
  return nu;
}

std::vector<InvarianceViolation> check_invariance(const TruncatedCurrent& nu, double tolerance) {
  std::vector<InvarianceViolation> out;
  const int k = nu.rank();
  for (const auto& [v, value] : nu.coords()) {
    if (v.size() >= static_cast<std::size_t>(nu.radius())) continue;
    double right = 0.0;
    double left = 0.0;
    for (int c = 0; c < 2 * k; ++c) {
      const Letter x = Letter::from_code(c);
      if (x != v.back().inverse()) right += nu.at(concat(v, Word::from_reduced({x})));
      if (x != v.front().inverse()) left += nu.at(concat(Word::from_reduced({x}), v));
    }
    if (!close(value, right, tolerance)) out.push_back({v, InvarianceViolation::Side::kRight, value, right});
    if (!close(value, left, tolerance)) out.push_back({v, InvarianceViolation::Side::kLeft, value, left});
  }
  return out;
}

double length(const TruncatedCurrent& nu) { return nu.level_sum(1); }

std::uint64_t euler_word_length(int k, int m, std::uint64_t cap) {
  if (k < 2 || m < 2) return 0;
  std::uint64_t len = static_cast<std::uint64_t>(2 * k);
  for (int i = 1; i < m; ++i) {
    len *= static_cast<std::uint64_t>(2 * k - 1);
    if (len > cap) return 0;
  }
  return len;
}

EulerWord euler_word(int k, int m, std::uint64_t cap) {
  if (k < 2 || k > kMaxRank) throw DomainError("Euler words need rank at least 2");
  if (m < 2) throw DomainError("Euler word degree must be at least 2");
  const std::uint64_t edges = euler_word_length(k, m, cap);
  if (edges == 0) {
    throw DomainError("Euler word of degree " + std::to_string(m) + " exceeds the size cap of " +
                      std::to_string(cap) + " letters");
  }

  // Vertices are reduced words of length L = m-1, indexed by their first
  // letter followed by successor ranks in base 2k-1.
  const int L = m - 1;
  const auto branch = static_cast<std::uint64_t>(2 * k - 1);
  std::uint64_t p = 1;  // branch^(L-1)
  for (int i = 1; i < L; ++i) p *= branch;
  const std::uint64_t q = L >= 2 ? p / branch : 1;  // branch^(L-2)
  const std::uint64_t vertices = static_cast<std::uint64_t>(2 * k) * p;

  auto target = [&](std::uint64_t u, Letter last, Letter x) -> std::uint64_t {
    if (L == 1) return static_cast<std::uint64_t>(x.code());
    const std::uint64_t first = u / p;
    const std::uint64_t rest = u % p;
    const Letter second = nth_successor(Letter::from_code(static_cast<int>(first)), static_cast<int>(rest / q));
    return static_cast<std::uint64_t>(second.code()) * p + (rest % q) * branch +
           static_cast<std::uint64_t>(successor_rank(last, x));
  };

  struct Frame {
    std::uint64_t vertex;
    Letter label;  // label of the edge used to arrive; also the vertex's last letter
  };
  std::vector<std::uint8_t> used(vertices, 0);
  std::vector<Frame> stack;
  stack.reserve(edges + 1);
  std::vector<Letter> circuit;
  circuit.reserve(edges);

  // Start at a^L, whose index is 0 and whose last letter is a.
  stack.push_back({0, Letter::from_code(0)});
  while (!stack.empty()) {
    const Frame top = stack.back();
    auto& next = used[top.vertex];
    if (next < branch) {
      const Letter x = nth_successor(top.label, next);
      ++next;
      stack.push_back({target(top.vertex, top.label, x), x});
    } else {
      stack.pop_back();
      if (!stack.empty()) circuit.push_back(top.label);
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != edges) throw std::logic_error("Euler circuit does not cover every edge");
  if (!is_cyclically_reduced(circuit)) throw std::logic_error("Euler circuit labels are not cyclically reduced");
  return EulerWord{k, m, CyclicWord::from_cyclically_reduced(std::move(circuit))};
}

const EulerWord& cached_euler_word(int k, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<EulerWord>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({k, m});
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<EulerWord>(euler_word(k, m));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(k, m), std::move(built));
  return *it->second;
}

nlohmann::json LimitCheckReport::to_json() const {
  return {{"k", rank},
          {"n", n},
          {"samples", samples},
          {"radius", radius},
          {"reference_degree", reference_degree},
          {"max_deviation", max_deviation},
          {"worst_word", worst_word.str()},
          {"mean_length_ratio", mean_length_ratio}};
}

LimitCheckReport empirical_limit_check(const Automorphism& phi, std::size_t n, std::size_t samples,
                                       Rng& rng, int radius) {
  if (n == 0) throw DomainError("prefix length must be positive");
  if (samples == 0) throw DomainError("need at least one sample");
  const int k = phi.rank();
  check_radius(k, radius);

  // Reference coordinates of phi(n_A) from the Euler-word surrogate; reading
  // radius-long windows of the image needs radius-1 more letters of context.
  const StretchResult stretch = stretch_factor(phi);
  const int degree = std::max(stretch.m_used + radius - 1, 2);
  const EulerWord& euler = cached_euler_word(k, degree);
  WindowCounts reference(k, radius);
  reference.add_cyclic(apply_cyclic(phi, euler.word), 1.0 / static_cast<double>(euler.word.size()));

  WindowCounts observed(k, radius);
  double length_ratio = 0.0;
  const double weight = 1.0 / (static_cast<double>(n) * static_cast<double>(samples));
  for (std::size_t i = 0; i < samples; ++i) {
    const Word omega = sample_reduced(k, n, rng);
    const CyclicWord image = cyclic_reduce(apply(phi, omega)).cyclic;
    observed.add_cyclic(image, weight);
    length_ratio += static_cast<double>(image.size()) * weight;
  }

  LimitCheckReport report;
  report.rank = k;
  report.n = n;
  report.samples = samples;
  report.radius = radius;
  report.reference_degree = degree;
  report.mean_length_ratio = length_ratio;
  for (int len = 1; len <= radius; ++len) {
    for (const Word& v : reduced_words(k, static_cast<std::size_t>(len))) {
      const double dev = std::abs(observed.get(v) - reference.get(v));
      if (report.worst_word.empty() || dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_word = v;
      }
    }
  }
  return report;
}

}  // namespace wh
