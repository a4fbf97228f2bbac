// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "wh/autos.hpp"
#include "wh/cluster_lab.hpp"
#include "wh/core.hpp"
#include "wh/currents.hpp"
#include "wh/graph.hpp"
#include "wh/ideal.hpp"
#include "wh/minimizer.hpp"

using namespace wh;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

Outcome euler_exactness() {
  Outcome o;
  for (auto [k, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const EulerWord e = euler_word(k, m);
    std::size_t expected = static_cast<std::size_t>(2 * k);
    for (int i = 1; i < m; ++i) expected *= static_cast<std::size_t>(2 * k - 1);
    bool once = true;
    for (const Word& v : reduced_words(k, static_cast<std::size_t>(m))) once = once && count_occurrences(v, e.word) == 1;
    const bool ok = e.word.size() == expected && once && is_cyclically_reduced(e.word.letters());
    o.pass = o.pass && ok;
    o.detail += "(" + std::to_string(k) + "," + std::to_string(m) + ")=" + std::to_string(e.word.size()) + " ";
  }
  return o;
}

Outcome length_change_oracle() {
  Outcome o;
  Rng rng(1002);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const int k = 2 + i % 2;
    const auto pairs = enumerate_wh2(k);
    const CharPair tau = pairs[rng.below(pairs.size())];
    const CyclicWord w = sample_cyclically_reduced(k, 1 + rng.below(60), rng);
    const auto direct = static_cast<std::int64_t>(apply_cyclic(wh2_images(tau), w).size()) -
                        static_cast<std::int64_t>(w.size());
    if (length_change(tau, whitehead_graph(k, w)) != direct) ++mismatches;
  }
  o.pass = mismatches == 0;
  o.detail = std::to_string(mismatches) + " mismatches in 1000 pairs";
  return o;
}

Outcome current_identities() {
  Outcome o;
  const auto nA = uniform_current(2, 4);
  bool ok = length(nA) == 1.0 && check_invariance(nA).empty();
  for (int m = 1; m <= 4; ++m) ok = ok && std::abs(nA.level_sum(m) - 1.0) <= 1e-9;
  Rng rng(1003);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const int k = 2 + i % 2;
    const CyclicWord w = sample_cyclically_reduced(k, 1 + rng.below(80), rng);
    const auto eta = rational_current(k, w.linear(), 4);
    bool good = length(eta) == static_cast<double>(w.size()) && check_invariance(eta).empty();
    for (int m = 1; m <= 4; ++m) good = good && std::abs(eta.level_sum(m) - length(eta)) <= 1e-9 * length(eta);
    if (!good) ++bad;
  }
  o.pass = ok && bad == 0;
  o.detail = "L(n_A)=" + num(length(nA)) + ", " + std::to_string(bad) + " of 100 rational currents off";
  return o;
}

Outcome generic_stretch() {
  Outcome o;
  const Rational target{4, 3};
  const auto phi = parse_automorphism("a->ab, b->b", 2);
  const Rational lambda = stretch_factor(phi).lambda;
  const std::size_t image_w2 = image_cyclic_length(phi, cached_euler_word(2, 2).word);
  const Rational at3 = stretch_at(phi, 3);

  Rng rng(1004);
  double mc = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Word omega = sample_reduced(2, 10000, rng);
    mc += static_cast<double>(cyclic_reduce(apply(phi, omega)).cyclic.size()) / 10000.0 / 100.0;
  }
  const bool exact_ok = lambda == target && image_w2 == 16 && at3 == target;
  const bool mc_ok = std::abs(mc - target.value()) <= 0.01 * target.value();
  const bool methods_agree = std::abs(mc - lambda.value()) <= 0.01 * lambda.value();
  o.pass = exact_ok && mc_ok;
  o.detail = "expected 4/3 with ||phi(w2)||=16; measured lambda=" + lambda.reduced().str() +
             ", ||phi(w2)||=" + std::to_string(image_w2) + ", m=3 value " + at3.reduced().str() +
             ", Monte Carlo " + num(mc) + (methods_agree ? "; the two methods agree with each other" : "");
  return o;
}

Outcome ideal_steps() {
  Outcome o;
  int bad = 0;
  for (const std::string& lit : fixtures::non_simple_rank2()) {
    const auto phi = parse_automorphism(lit, 2);
    const IdealStep s = ideal_step(phi);
    if (!(stretch_factor(compose(wh2_images(s.move), phi)).lambda < stretch_factor(phi).lambda)) ++bad;
  }
  for (const Relabeling& r : enumerate_relabelings(2)) {
    if (stretch_factor(r.to_automorphism()).lambda != Rational{1, 1}) ++bad;
  }
  Rng rng(1005);
  for (int i = 0; i < 20; ++i) {
    const Word g = sample_reduced(2, 1 + rng.below(2), rng);
    if (stretch_factor(conjugation(2, g)).lambda != Rational{1, 1}) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(bad) + " failures over 10 steps, 8 relabelings, 20 inner automorphisms";
  return o;
}

Outcome factorizations() {
  Outcome o;
  int bad = 0;
  for (const std::string& lit : fixtures::non_simple_rank2()) {
    const auto phi = parse_automorphism(lit, 2);
    const Factorization f = factorize(phi);
    bool ok = f.reconstruct() == phi && is_simple(f.alpha) && f.lengths.front() == Rational{1, 1};
    for (std::size_t i = 1; i < f.lengths.size(); ++i) ok = ok && f.lengths[i - 1] < f.lengths[i];
    if (!ok) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(bad) + " of 10 factorizations wrong";
  return o;
}

ExperimentConfig experiment(std::vector<std::string> autos) {
  ExperimentConfig c;
  c.k = 2;
  c.sample_size = 1000;
  c.word_length = 1000;
  c.automorphisms = std::move(autos);
  c.apply_probability = 1.0;
  c.epsilon = 0.05;
  c.seed = 2024;
  return c;
}

Outcome theorem_empirics() {
  Outcome o;
  const auto r = run_experiment(experiment({"a->ab, b->b"}));
  const ClusterSummary& c = r.clusters.at(0);
  o.pass = c.members > 0 && c.fraction_reduced >= 0.99 && c.mean_distance <= 0.02 && c.p95_distance <= 0.05;
  o.detail = std::to_string(c.members) + " transformed, reduced " + num(c.fraction_reduced) + ", mean distance " +
             num(c.mean_distance) + ", p95 " + num(c.p95_distance);
  return o;
}

Outcome clustering() {
  Outcome o;
  const auto r = run_experiment(experiment({"a->ab, b->b", "b->ba, a->a"}));
  const double accuracy = nearest_centroid_classify(r);
  const double ratio = separation_ratio(r);
  o.pass = accuracy >= 0.95 && ratio > 3.0;
  o.detail = "accuracy " + num(accuracy) + ", inter-centroid " + num(r.centroid_distances[0][1]) +
             " vs max mean intra " + num(std::max(r.clusters[0].mean_distance, r.clusters[1].mean_distance)) +
             " (ratio " + num(ratio) + ")";
  return o;
}

Outcome whitehead_sanity() {
  Outcome o;
  const bool a = minimize(2, CyclicWord::parse("abab")).result.size() == 2;
  const bool b = minimize(2, CyclicWord::parse("abAB")).result.size() == 4;
  const bool c = automorphic_equivalence(2, CyclicWord::parse("ab"), CyclicWord::parse("a")).verdict ==
                 Equivalence::kEquivalent;
  const bool d = automorphic_equivalence(2, CyclicWord::parse("abAB"), CyclicWord::parse("abab")).verdict ==
                 Equivalence::kInequivalent;
  o.pass = a && b && c && d;
  o.detail = std::string(a ? "" : "abab ") + (b ? "" : "abAB ") + (c ? "" : "ab~a ") + (d ? "" : "abAB!~abab");
  if (o.pass) o.detail = "all four exact checks hold";
  return o;
}

Outcome genericity() {
  Outcome o;
  Rng rng(1010);
  int strict = 0;
  for (int i = 0; i < 1000; ++i) strict += is_strictly_minimal(2, sample_cyclically_reduced(2, 500, rng)) ? 1 : 0;
  o.pass = strict >= 990;
  o.detail = std::to_string(strict) + " of 1000 strictly minimal";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "Euler word exactness", euler_exactness},
      {2, "length-change oracle", length_change_oracle},
      {3, "current identities", current_identities},
      {4, "generic stretching factor of a->ab is 4/3", generic_stretch},
      {5, "ideal step and strict minimality of n_A", ideal_steps},
      {6, "factorization", factorizations},
      {7, "generic reduction and centroid distance", theorem_empirics},
      {8, "nearest-centroid clustering", clustering},
      {9, "Whitehead algorithm sanity", whitehead_sanity},
      {10, "random cyclic words are strictly minimal", genericity},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
              << num(secs) << "s)" << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed;
}
