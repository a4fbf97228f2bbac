#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "wh/currents.hpp"
#include "wh/ideal.hpp"

using namespace wh;

namespace {

std::vector<std::string> image_strings(const Automorphism& phi) {
  std::vector<std::string> out;
  for (const Word& w : phi.images()) out.push_back(w.empty() ? "" : w.str());
  return out;
}

// Mean of ||phi(omega_n)|| / n over random reduced prefixes drawn with the
// standard library generator.
double monte_carlo_stretch(const Automorphism& phi, std::size_t n, int samples, unsigned seed) {
  std::mt19937 gen(seed);
  const auto images = image_strings(phi);
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    std::string w;
    std::uniform_int_distribution<int> first(0, 3), next(0, 2);
    w += oracle::letter(first(gen));
    while (w.size() < n) {
      // Uniform among the three letters that do not cancel the last one.
      std::vector<char> options;
      for (int c = 0; c < 4; ++c) {
        if (oracle::letter(c)[0] != oracle::inv(w.back())) options.push_back(oracle::letter(c)[0]);
      }
      w += options[static_cast<std::size_t>(next(gen))];
    }
    sum += static_cast<double>(oracle::cyclic(oracle::apply(images, w)).size()) / static_cast<double>(n);
  }
  return sum / samples;
}

Rational exact_oracle_stretch(const Automorphism& phi, int m) {
  const std::string w = euler_word(2, m).word.str();
  return Rational{static_cast<std::int64_t>(oracle::cyclic(oracle::apply(image_strings(phi), w)).size()),
                  static_cast<std::int64_t>(w.size())};
}

}  // namespace

TEST_SUITE("ideal") {
  TEST_CASE("rationals") {
    CHECK(Rational{14, 12}.reduced().num == 7);
    CHECK(Rational{14, 12}.reduced().den == 6);
    CHECK(Rational{14, 12} == Rational{7, 6});
    CHECK(Rational{7, 6} < Rational{4, 3});
    CHECK(Rational{14, 12}.str() == "7/6");
    CHECK(Rational{4, 2}.str() == "2");
    CHECK(Rational{14, 12}.to_json() == nlohmann::json{{"num", 7}, {"den", 6}});
  }

  TEST_CASE("stretch_factor of simple automorphisms is one") {
    CHECK(stretch_factor(Automorphism::identity(2)).lambda == Rational{1, 1});
    CHECK(stretch_factor(conjugation(2, Word::parse("a"))).lambda == Rational{1, 1});
    CHECK(stretch_factor(parse_automorphism("perm(a->B, b->a)", 2)).lambda == Rational{1, 1});
  }

  TEST_CASE("stretch_factor of a->ab agrees with two independent oracles") {
    const auto phi = parse_automorphism("a->ab, b->b", 2);
    const StretchResult r = stretch_factor(phi);
    // Exact oracle: substitute into the degree-2 and degree-3 Euler words.
    CHECK(exact_oracle_stretch(phi, 2) == Rational{14, 12});
    CHECK(exact_oracle_stretch(phi, 3) == Rational{7, 6});
    CHECK(r.lambda == Rational{7, 6});
    CHECK(r.stabilized);
    // Monte Carlo oracle.
    const double mc = monte_carlo_stretch(phi, 10000, 100, 71);
    CHECK(std::abs(mc - 7.0 / 6.0) < 0.01 * 7.0 / 6.0);
  }

  TEST_CASE("stretch result invariants") {
    for (const std::string& lit : fixtures::non_simple_rank2()) {
      const auto phi = parse_automorphism(lit, 2);
      const StretchResult r = stretch_factor(phi);
      CHECK(r.m_used >= initial_degree(phi));
      CHECK(static_cast<std::uint64_t>(r.lambda.den) == euler_word_length(2, r.m_used));
      CHECK(r.lambda > Rational{1, 1});
      CHECK(stretch_at(phi, r.m_used + 1) == r.lambda);
      CHECK(exact_oracle_stretch(phi, r.m_used) == r.lambda);
    }
    const auto j = stretch_factor(parse_automorphism("a->ab", 2)).to_json();
    CHECK(j["num"] == 7);
    CHECK(j["den"] == 6);
    CHECK(j["stabilized"] == true);
  }

  TEST_CASE("stretch_factor values of compositions") {
    CHECK(stretch_factor(parse_automorphism("a->ab * a->ab", 2)).lambda == Rational{13, 9});
    CHECK(stretch_factor(parse_automorphism("a->ab * b->ba", 2)).lambda == Rational{29, 18});
    for (const char* lit : {"a->abb", "a->ab * b->ba"}) {
      const auto phi = parse_automorphism(lit, 2);
      CHECK(std::abs(monte_carlo_stretch(phi, 4000, 100, 72) - stretch_factor(phi).lambda.value()) < 0.02);
    }
  }

  TEST_CASE("stretch_factor is a class invariant") {
    const auto& list = fixtures::non_simple_rank2();
    int checked = 0;
    for (std::size_t i = 0; i < list.size() && checked < 50; ++i) {
      const auto phi = parse_automorphism(list[i], 2);
      const Rational lambda = stretch_factor(phi).lambda;
      for (const char* g : {"a", "A", "b", "B"}) {
        const auto inner = conjugation(2, Word::parse(g));
        CHECK(stretch_factor(compose(inner, phi)).lambda == lambda);
        CHECK(stretch_factor(compose(phi, inner)).lambda == lambda);
        checked += 2;
      }
    }
    CHECK(checked >= 50);
  }

  TEST_CASE("stretch_factor size cap") {
    const auto phi = parse_automorphism("a->abbbbbbbb", 2);
    CHECK_THROWS_AS(stretch_factor(phi), DomainError);
  }

  TEST_CASE("phi_nA_graph") {
    const auto id = phi_nA_graph(Automorphism::identity(2));
    for (double x : id.labels()) CHECK(x == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    const auto swap = phi_nA_graph(parse_automorphism("perm(a->b, b->a)", 2));
    CHECK(swap.labels() == id.labels());

    // Frozen fixture for a->ab; the oracle recomputes it by direct substitution and scan.
    const auto phi = parse_automorphism("a->ab, b->b", 2);
    const auto g = phi_nA_graph(phi);
    const std::vector<double> frozen = {1.0 / 21, 2.0 / 21, 6.0 / 21, 6.0 / 21, 2.0 / 21, 4.0 / 21};
    const int m = stretch_factor(phi).m_used;
    const std::string image = oracle::cyclic(oracle::apply(image_strings(phi), euler_word(2, m).word.str()));
    const auto scan = oracle::whitehead(image);
    for (std::size_t e = 0; e < 6; ++e) {
      const auto [p, q] = edge_endpoints(2, e);
      auto it = scan.find({p.code(), q.code()});
      const double expected = it == scan.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(image.size());
      CHECK(expected == doctest::Approx(frozen[e]).epsilon(1e-15));
      CHECK(g.labels()[e] == doctest::Approx(frozen[e]).epsilon(1e-15));
    }
    double sum = 0.0;
    for (double x : g.labels()) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("random images cluster around phi_nA_graph") {
    for (const char* lit : {"a->ab", "a->ab * b->ba"}) {
      const auto phi = parse_automorphism(lit, 2);
      const auto centroid = phi_nA_graph(phi);
      Rng rng(73);
      std::vector<double> mean(6, 0.0);
      for (int i = 0; i < 200; ++i) {
        const CyclicWord img = cyclic_reduce(apply(phi, sample_reduced(2, 2000, rng))).cyclic;
        const auto g = normalized_graph(2, img);
        for (std::size_t e = 0; e < 6; ++e) mean[e] += g.labels()[e] / 200.0;
      }
      CHECK(graph_distance(NormalizedWhiteheadGraph(2, mean), centroid) <= 0.02);
    }
  }

  TEST_CASE("ideal_step examples") {
    auto s = ideal_step(parse_automorphism("a->ab, b->b", 2));
    CHECK(s.move.str() == "wh2(T={a,B}; m=B)");
    CHECK(s.lambda_after == Rational{1, 1});
    CHECK(compose(wh2_images(s.move), parse_automorphism("a->ab, b->b", 2)).is_identity());

    s = ideal_step(parse_automorphism("a->ba, b->b", 2));
    CHECK(s.lambda_after == Rational{1, 1});
    CHECK(stretch_factor(compose(wh2_images(s.move), parse_automorphism("a->ba", 2))).lambda == Rational{1, 1});

    CHECK_THROWS_AS(ideal_step(conjugation(2, Word::parse("a"))), DomainError);
    CHECK_THROWS_AS(ideal_step(Automorphism::identity(2)), DomainError);
  }

  TEST_CASE("ideal_step strictly decreases lambda") {
    for (const std::string& lit : fixtures::non_simple_rank2()) {
      const auto phi = parse_automorphism(lit, 2);
      const IdealStep s = ideal_step(phi);
      const Rational before = stretch_factor(phi).lambda;
      const Rational after = stretch_factor(compose(wh2_images(s.move), phi)).lambda;
      CHECK(s.lambda_before == before);
      CHECK(s.lambda_after == after);
      CHECK(after < before);
      CHECK(Rational{1, 1} <= after);
    }
  }

  TEST_CASE("factorize") {
    auto f = factorize(parse_automorphism("a->ab, b->b", 2));
    REQUIRE(f.sigmas.size() == 1);
    CHECK(f.sigmas[0].str() == "wh2(T={a,b}; m=b)");
    CHECK(f.alpha.is_identity());
    REQUIRE(f.lengths.size() == 2);
    CHECK(f.lengths[0] == Rational{1, 1});
    CHECK(f.lengths[1] == Rational{7, 6});

    const auto simple = conjugation(2, Word::parse("ab"));
    f = factorize(simple);
    CHECK(f.sigmas.empty());
    CHECK(f.alpha == simple);
    CHECK(f.lengths.size() == 1);

    const auto twice = parse_automorphism("a->abb, b->b", 2);
    f = factorize(twice);
    CHECK(f.sigmas.size() >= 2);
    CHECK(f.reconstruct() == twice);
    CHECK(f.lengths.back() == Rational{13, 9});

    CHECK_THROWS_AS(factorize(twice, 1), DomainError);
    const auto j = factorize(parse_automorphism("a->ab", 2)).to_json();
    CHECK(j["sigmas"][0] == "wh2(T={a,b}; m=b)");
    CHECK(j["L_sequence"][1] == nlohmann::json{{"num", 7}, {"den", 6}});
  }

  TEST_CASE("factorize reconstructs every fixture") {
    for (const std::string& lit : fixtures::non_simple_rank2()) {
      const auto phi = parse_automorphism(lit, 2);
      const Factorization f = factorize(phi);
      const Automorphism rebuilt = f.reconstruct();
      for (int i = 1; i <= 2; ++i) {
        const Letter x(i, false);
        CHECK(rebuilt.image(x) == phi.image(x));
      }
      CHECK(is_simple(f.alpha));
      CHECK(f.lengths.front() == Rational{1, 1});
      for (std::size_t i = 1; i < f.lengths.size(); ++i) CHECK(f.lengths[i - 1] < f.lengths[i]);
      CHECK(f.lengths.back() == stretch_factor(phi).lambda);
    }
  }

  TEST_CASE("inverse_pair") {
    for (const CharPair& p : enumerate_wh2(2)) {
      CHECK(compose(wh2_images(inverse_pair(p)), wh2_images(p)).is_identity());
    }
  }
}
