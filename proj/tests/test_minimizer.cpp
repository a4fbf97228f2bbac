#include "doctest.h"
#include "oracles.hpp"
#include "wh/currents.hpp"
#include "wh/graph.hpp"
#include "wh/minimizer.hpp"

using namespace wh;

TEST_SUITE("minimizer") {
  TEST_CASE("minimize examples") {
    auto t = minimize(2, CyclicWord::parse("abab"));
    CHECK(t.result.str() == "aa");
    REQUIRE(t.steps.size() == 1);
    CHECK(t.steps[0].move.str() == "wh2(T={a,B}; m=B)");

    t = minimize(2, CyclicWord::parse("abAB"));
    CHECK(t.result.str() == "abAB");
    CHECK(t.steps.empty());

    t = minimize(2, CyclicWord::parse("ab"));
    CHECK(t.result.str() == "a");
    CHECK(t.steps.size() == 1);
  }

  TEST_CASE("commutator is minimal by brute force over all 16 moves") {
    const CyclicWord w = CyclicWord::parse("abAB");
    for (const CharPair& p : enumerate_wh2(2)) {
      std::vector<std::string> images;
      const Automorphism move = wh2_images(p);
      for (const Word& img : move.images()) images.push_back(img.str());
      CHECK(oracle::cyclic(oracle::apply(images, "abAB")).size() >= 4);
    }
    CHECK(is_minimal(2, w));
  }

  TEST_CASE("traces replay, decrease strictly and end minimal") {
    Rng rng(51);
    for (int i = 0; i < 100; ++i) {
      const int k = 2 + i % 2;
      // Push a random word off its minimal length with a few moves.
      const auto pairs = enumerate_wh2(k);
      CyclicWord w = sample_cyclically_reduced(k, 10 + static_cast<std::size_t>(i % 20), rng);
      for (int j = 0; j < 3; ++j) w = apply_cyclic(wh2_images(pairs[rng.below(pairs.size())]), w);
      const auto t = minimize(k, w);
      CHECK(t.result.size() <= w.size());
      CyclicWord cur = t.start;
      for (const auto& s : t.steps) {
        const CyclicWord next = apply_cyclic(wh2_images(s.move), cur);
        CHECK(next == s.result);
        CHECK(next.size() < cur.size());
        cur = next;
      }
      CHECK(cur == t.result);
      for (const CharPair& p : pairs) CHECK(length_change(p, whitehead_graph(k, t.result)) >= 0);
    }
  }

  TEST_CASE("minimal length is invariant under relabeling") {
    Rng rng(52);
    for (int i = 0; i < 100; ++i) {
      CyclicWord w = sample_cyclically_reduced(2, 12, rng);
      w = apply_cyclic(parse_automorphism("a->ab", 2), w);
      const std::size_t base = minimize(2, w).result.size();
      for (const Relabeling& r : enumerate_relabelings(2)) {
        CHECK(minimize(2, apply_cyclic(r.to_automorphism(), w)).result.size() == base);
      }
    }
  }

  TEST_CASE("steepest_decrease") {
    CHECK_FALSE(steepest_decrease(2, CyclicWord::parse("abAB")).has_value());
    const auto p = steepest_decrease(2, CyclicWord::parse("abab"));
    REQUIRE(p.has_value());
    CHECK(p->str() == "wh2(T={a,B}; m=B)");
  }

  TEST_CASE("strict minimality") {
    CHECK(is_strictly_minimal(2, euler_word(2, 2).word));
    CHECK(is_strictly_minimal(2, euler_word(2, 3).word));
    CHECK(is_strictly_minimal(3, euler_word(3, 2).word));
    CHECK_FALSE(is_strictly_minimal(2, CyclicWord::parse("abAB")));
    CHECK_FALSE(is_strictly_minimal(2, CyclicWord::parse("a")));
    // (T={a,b}, a) leaves the commutator's length unchanged.
    CHECK(length_change(CharPair::make(2, LetterSet::of({Letter::from_char('a'), Letter::from_char('b')}),
                                       Letter::from_char('a')),
                        whitehead_graph(2, CyclicWord::parse("abAB"))) == 0);
  }

  TEST_CASE("automorphic_equivalence examples") {
    CHECK(automorphic_equivalence(2, CyclicWord::parse("a"), CyclicWord::parse("b")).verdict == Equivalence::kEquivalent);
    CHECK(automorphic_equivalence(2, CyclicWord::parse("ab"), CyclicWord::parse("a")).verdict ==
          Equivalence::kEquivalent);
    CHECK(automorphic_equivalence(2, CyclicWord::parse("abAB"), CyclicWord::parse("abab")).verdict ==
          Equivalence::kInequivalent);
    // The inverse commutator lies in the same orbit.
    CHECK(automorphic_equivalence(2, CyclicWord::parse("abAB"), CyclicWord::parse("baBA")).verdict ==
          Equivalence::kEquivalent);
    // Same minimal length, different orbits.
    CHECK(automorphic_equivalence(2, CyclicWord::parse("aabb"), CyclicWord::parse("abAB")).verdict ==
          Equivalence::kInequivalent);
    CHECK(std::string(to_string(Equivalence::kCapExceeded)) == "cap_exceeded");
  }

  TEST_CASE("automorphic_equivalence finds images and honors the cap") {
    Rng rng(53);
    const auto pairs = enumerate_wh2(2);
    for (int i = 0; i < 20; ++i) {
      const CyclicWord u = sample_cyclically_reduced(2, 8, rng);
      CyclicWord v = u;
      for (int j = 0; j < 4; ++j) v = apply_cyclic(wh2_images(pairs[rng.below(pairs.size())]), v);
      CHECK(automorphic_equivalence(2, u, v).verdict == Equivalence::kEquivalent);
    }
    const auto capped = automorphic_equivalence(2, CyclicWord::parse("aabb"), CyclicWord::parse("abAB"), 1);
    CHECK(capped.verdict == Equivalence::kCapExceeded);
  }

  TEST_CASE("random long words are strictly minimal") {
    Rng rng(54);
    int strict = 0;
    for (int i = 0; i < 1000; ++i) strict += is_strictly_minimal(2, sample_cyclically_reduced(2, 500, rng)) ? 1 : 0;
    CHECK(strict >= 990);
  }

  TEST_CASE("trace json") {
    const auto j = minimize(2, CyclicWord::parse("abab")).to_json();
    CHECK(j["result"] == "aa");
    CHECK(j["steps"][0]["move"] == "wh2(T={a,B}; m=B)");
  }
}
