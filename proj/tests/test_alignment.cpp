#include <random>
#include <vector>

#include "doctest.h"
#include "rhotica/alignment.hpp"
#include "rhotica/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rhotica;

namespace {

PhonemeInventory gb() { return load_inventory_file(fixtures::data_path("inventories/en-GB.json")); }
PhonemeInventory us() { return load_inventory_file(fixtures::data_path("inventories/en-US.json")); }

std::vector<Phoneme> seq(const PhonemeInventory& inv, const std::string& text) {
  return parse_sequence(text, inv);
}

}  // namespace

TEST_CASE("car park: each long vowel covers the vowel plus /r/") {
  const CostConfig cfg;
  const auto a = seq(gb(), "k A: p A: k");            // en-GB
  const auto b = seq(us(), "k A: r p A: r k");        // en-US
  const auto path = align(a, b, cfg);

  const std::vector<PathStep> expected = {
      {0, 0}, {1, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}};
  CHECK(path.steps == expected);
  CHECK(path.total_cost == doctest::Approx(2 * cfg.indel_cost).epsilon(1e-12));
  CHECK(path_cost(path, a, b, cfg) == path.total_cost);

  const auto contexts = find_rhotic_contrasts(path, b, a, SequenceSlot::b, "car_park");
  REQUIRE(contexts.size() == 2);
  CHECK(contexts[0].kind == ContextKind::r_insertion);
  CHECK(contexts[0].rhotic_span == IndexSpan{1, 2});
  CHECK(contexts[0].nonrhotic_index == 1);
  CHECK(contexts[0].utterance == "car_park");
  CHECK(contexts[1].kind == ContextKind::r_insertion);
  CHECK(contexts[1].rhotic_span == IndexSpan{4, 5});
  CHECK(contexts[1].nonrhotic_index == 3);
}

TEST_CASE("car park: context count survives swapping the argument order") {
  const CostConfig cfg;
  const auto a = seq(gb(), "k A: p A: k");
  const auto b = seq(us(), "k A: r p A: r k");
  const auto fwd = find_rhotic_contrasts(align(a, b, cfg), b, a, SequenceSlot::b);
  const auto rev = find_rhotic_contrasts(align(b, a, cfg), b, a, SequenceSlot::a);
  REQUIRE(fwd.size() == rev.size());
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    CHECK(fwd[i].kind == rev[i].kind);
    CHECK(fwd[i].rhotic_span == rev[i].rhotic_span);
    CHECK(fwd[i].nonrhotic_index == rev[i].nonrhotic_index);
  }
}

TEST_CASE("thirteen: rhotacized vowel pairs diagonally") {
  const CostConfig cfg;
  const auto us_seq = seq(us(), "T 3` t i: n");
  const auto gb_seq = seq(gb(), "T 3: t i: n");
  const auto path = align(us_seq, gb_seq, cfg);

  // All five positions pair one to one.
  REQUIRE(path.steps.size() == 5);
  CHECK(path.total_cost == doctest::Approx(0.2).epsilon(1e-12));

  const auto contexts = find_rhotic_contrasts(path, us_seq, gb_seq, SequenceSlot::a, "thirteen");
  REQUIRE(contexts.size() == 1);
  CHECK(contexts[0].kind == ContextKind::rhotacized_vowel);
  CHECK(contexts[0].rhotic_span == IndexSpan{1, 1});
  CHECK(contexts[0].nonrhotic_index == 1);
}

TEST_CASE("rhotacized vowel in the initial cell is still reported") {
  const CostConfig cfg;
  const auto us_seq = seq(us(), "3` t");
  const auto gb_seq = seq(gb(), "3: t");
  const auto contexts =
      find_rhotic_contrasts(align(us_seq, gb_seq, cfg), us_seq, gb_seq, SequenceSlot::a);
  REQUIRE(contexts.size() == 1);
  CHECK(contexts[0].rhotic_span == IndexSpan{0, 0});
}

TEST_CASE("identical sequences produce no contexts") {
  const CostConfig cfg;
  const auto a = seq(gb(), "k A: p A: k");
  const auto path = align(a, a, cfg);
  CHECK(path.total_cost == 0.0);
  CHECK(find_rhotic_contrasts(path, a, a, SequenceSlot::a).empty());
}

TEST_CASE("prevocalic r is not an insertion context") {
  const CostConfig cfg;
  // "red" vs "red": /r/ sits before a vowel and pairs diagonally anyway.
  const auto us_seq = seq(us(), "r E d");
  const auto gb_seq = seq(gb(), "r e d");
  const auto path = align(us_seq, gb_seq, cfg);
  const auto contexts = find_rhotic_contrasts(path, us_seq, gb_seq, SequenceSlot::a);
  CHECK(contexts.empty());
}

TEST_CASE("word-final r after a vowel counts (end of sequence is a non-vowel)") {
  const CostConfig cfg;
  // "car": en-GB [k A:] vs en-US [k A: r].
  const auto gb_seq = seq(gb(), "k A:");
  const auto us_seq = seq(us(), "k A: r");
  const auto path = align(gb_seq, us_seq, cfg);
  const auto contexts = find_rhotic_contrasts(path, us_seq, gb_seq, SequenceSlot::b);
  REQUIRE(contexts.size() == 1);
  CHECK(contexts[0].kind == ContextKind::r_insertion);
  CHECK(contexts[0].rhotic_span == IndexSpan{1, 2});
  CHECK(contexts[0].nonrhotic_index == 1);
}

TEST_CASE("declared rhotic side without rhotic phonemes yields empty, flagged by helper") {
  const CostConfig cfg;
  const auto a = seq(gb(), "k A: p");
  const auto b = seq(gb(), "k Q p");
  CHECK_FALSE(has_rhotic_phoneme(a));
  CHECK(has_rhotic_phoneme(seq(us(), "k A: r")));
  const auto contexts = find_rhotic_contrasts(align(a, b, cfg), a, b, SequenceSlot::a);
  CHECK(contexts.empty());
}

TEST_CASE("align validates inputs") {
  const CostConfig cfg;
  const auto a = seq(gb(), "k A:");
  CHECK_THROWS_AS(align({}, a, cfg), ValidationError);
  CHECK_THROWS_AS(align(a, {}, cfg), ValidationError);
}

TEST_CASE("path_cost rejects malformed paths") {
  const CostConfig cfg;
  const auto a = seq(gb(), "k A: p");
  const auto b = seq(gb(), "k A: p");
  auto path = align(a, b, cfg);

  AlignmentPath empty_path;
  CHECK_THROWS_AS(path_cost(empty_path, a, b, cfg), ValidationError);

  AlignmentPath bad_start = path;
  bad_start.steps[0] = {1, 0};
  CHECK_THROWS_AS(path_cost(bad_start, a, b, cfg), ValidationError);

  AlignmentPath bad_end = path;
  bad_end.steps.pop_back();
  CHECK_THROWS_AS(path_cost(bad_end, a, b, cfg), ValidationError);

  AlignmentPath bad_step = path;
  bad_step.steps[1] = {2, 2};  // jump of two
  CHECK_THROWS_AS(path_cost(bad_step, a, b, cfg), ValidationError);
}

TEST_CASE("path structure invariants hold on random inputs") {
  const CostConfig cfg;
  const auto inv = us();
  const std::vector<std::string> alphabet = {"k", "A:", "r", "p", "3`"};
  std::mt19937 rng(404);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);

  auto random_seq = [&] {
    std::vector<Phoneme> s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(inv.at(alphabet[pick(rng)]));
    return s;
  };

  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_seq();
    const auto b = random_seq();
    const auto path = align(a, b, cfg);
    REQUIRE_FALSE(path.steps.empty());
    CHECK(path.steps.front() == PathStep{0, 0});
    CHECK(path.steps.back() == PathStep{a.size() - 1, b.size() - 1});
    for (std::size_t s = 1; s < path.steps.size(); ++s) {
      const auto di = path.steps[s].i - path.steps[s - 1].i;
      const auto dj = path.steps[s].j - path.steps[s - 1].j;
      CHECK(di <= 1);
      CHECK(dj <= 1);
      CHECK(di + dj >= 1);
    }
    // Recomputing the cost from the steps reproduces the DP total exactly.
    CHECK(path_cost(path, a, b, cfg) == path.total_cost);
  }
}

TEST_CASE("DP equals exhaustive path enumeration on small random instances") {
  const CostConfig cfg;
  const auto inv = us();
  const std::vector<std::string> alphabet = {"k", "A:", "r", "p", "3`"};
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);

  auto random_seq = [&] {
    std::vector<Phoneme> s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(inv.at(alphabet[pick(rng)]));
    return s;
  };

  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_seq();
    const auto b = random_seq();
    const double dp = align(a, b, cfg).total_cost;
    const double brute = oracle::cheapest_path_cost(a, b, cfg);
    CHECK(dp == brute);  // identical accumulation order makes this exact
  }
}

TEST_CASE("appending a shared phoneme never raises cost by more than its pairing") {
  const CostConfig cfg;
  const auto inv = us();
  const std::vector<std::string> alphabet = {"k", "A:", "r", "p", "3`"};
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Phoneme> a, b;
    const int na = len(rng), nb = len(rng);
    for (int i = 0; i < na; ++i) a.push_back(inv.at(alphabet[pick(rng)]));
    for (int i = 0; i < nb; ++i) b.push_back(inv.at(alphabet[pick(rng)]));
    const Phoneme& extra = inv.at(alphabet[pick(rng)]);

    const double base = align(a, b, cfg).total_cost;
    auto a2 = a;
    auto b2 = b;
    a2.push_back(extra);
    b2.push_back(extra);
    const double grown = align(a2, b2, cfg).total_cost;
    CHECK(grown <= base + phoneme_distance(extra, extra, cfg) + 1e-12);
  }
}

TEST_CASE("tie break prefers diagonal, then expansion of B, then of A") {
  const CostConfig cfg;
  const auto inv = us();
  // Identical one-symbol sequences: the only path is the initial cell.
  const auto single = align({inv.at("k")}, {inv.at("k")}, cfg);
  CHECK(single.steps == std::vector<PathStep>{{0, 0}});
  CHECK(single.total_cost == 0.0);

  // [k,k] vs [k]: forced expansion, cost one indel.
  const auto expand = align({inv.at("k"), inv.at("k")}, {inv.at("k")}, cfg);
  CHECK(expand.steps == std::vector<PathStep>{{0, 0}, {1, 0}});
  CHECK(expand.total_cost == cfg.indel_cost);
}
