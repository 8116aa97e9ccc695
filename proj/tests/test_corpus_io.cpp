#include <string>
#include <vector>

#include "doctest.h"
#include "rhotica/corpus_io.hpp"
#include "rhotica/errors.hpp"
#include "support/fixtures.hpp"

using namespace rhotica;

TEST_CASE("single CTM line") {
  const auto timings = parse_ctm("u1 1 0.48 0.09 A:\n");
  REQUIRE(timings.size() == 1);
  CHECK(timings[0] == PhoneTiming{"u1", "A:", 0.48, 0.09});
}

TEST_CASE("CTM parses, sorts per utterance, skips blank lines") {
  const std::string text =
      "u2 1 0.10 0.20 k\n"
      "\n"
      "u1 1 0.30 0.10 p\n"
      "u1 1 0.05 0.20 k\n";
  const auto timings = parse_ctm(text);
  REQUIRE(timings.size() == 3);
  CHECK(timings[0].utterance == "u1");
  CHECK(timings[0].start == 0.05);
  CHECK(timings[1].utterance == "u1");
  CHECK(timings[1].start == 0.30);
  CHECK(timings[2].utterance == "u2");
}

TEST_CASE("CTM errors carry line numbers and name the utterance on overlap") {
  CHECK_THROWS_AS(parse_ctm("u1 1 oops 0.09 A:\n"), ParseError);
  CHECK_THROWS_AS(parse_ctm("u1 1 0.48 0.09\n"), ParseError);           // missing symbol
  CHECK_THROWS_AS(parse_ctm("u1 1 0.48 0.09 A: extra\n"), ParseError);  // trailing token
  CHECK_THROWS_AS(parse_ctm("u1 1 -0.1 0.09 A:\n"), ParseError);        // negative start
  CHECK_THROWS_AS(parse_ctm("u1 1 0.48 0 A:\n"), ParseError);           // zero duration

  try {
    parse_ctm("u1 1 0.0 0.5 k\nu1 1 0.3 0.2 A:\n");
    FAIL("expected an overlap error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("u1") != std::string::npos);
  }

  // Touching intervals are fine.
  CHECK_NOTHROW(parse_ctm("u1 1 0.0 0.5 k\nu1 1 0.5 0.2 A:\n"));
}

TEST_CASE("CTM round trip on the car park fixture") {
  const std::string fixture =
      "car_park 1 0.10 0.08 k\n"
      "car_park 1 0.18 0.22 A:\n"
      "car_park 1 0.40 0.09 p\n"
      "car_park 1 0.49 0.21 A:\n"
      "car_park 1 0.70 0.08 k\n";
  const auto timings = parse_ctm(fixture);
  REQUIRE(timings.size() == 5);
  CHECK(parse_ctm(serialize_ctm(timings)) == timings);
  CHECK(timings_for(timings, "car_park").size() == 5);
  CHECK(timings_for(timings, "other").empty());
}

TEST_CASE("manifest parses and validates") {
  const std::string text = R"({
    "donor": "gb_female_1",
    "target_accent": "en-IE",
    "speakers": [
      {"id": "gb_female_1", "accent": "en-GB", "utterances": [
        {"id": "u1", "audio": "gb/u1.wav", "text": "hello"}]},
      {"id": "ie_m_1", "accent": "en-IE", "utterances": [
        {"id": "u1", "audio": "ie/u1.wav", "text": "hello"},
        {"id": "u2", "audio": "ie/u2.wav", "text": "car park"}]}
    ]})";
  const auto m = parse_manifest(text);
  CHECK(m.donor == "gb_female_1");
  CHECK(m.target_accent == "en-IE");
  REQUIRE(m.speakers.size() == 2);
  REQUIRE(m.find_speaker("ie_m_1") != nullptr);
  CHECK(m.find_speaker("ie_m_1")->utterances.size() == 2);
  CHECK(m.find_speaker("nobody") == nullptr);

  // Round trip.
  CHECK(parse_manifest(serialize_manifest(m)) == m);
}

TEST_CASE("manifest invariant violations are rejected") {
  // Donor not listed.
  CHECK_THROWS_AS(parse_manifest(R"({"donor":"x","target_accent":"en-IE","speakers":[
    {"id":"a","accent":"en-GB","utterances":[]}]})"),
                  ValidationError);

  // Donor accent equals the target accent.
  CHECK_THROWS_AS(parse_manifest(R"({"donor":"a","target_accent":"en-GB","speakers":[
    {"id":"a","accent":"en-GB","utterances":[]}]})"),
                  ValidationError);

  // Duplicate utterance id within one speaker.
  CHECK_THROWS_AS(parse_manifest(R"({"donor":"a","target_accent":"en-IE","speakers":[
    {"id":"a","accent":"en-GB","utterances":[
      {"id":"u1","audio":"1.wav","text":"x"},
      {"id":"u1","audio":"2.wav","text":"y"}]}]})"),
                  ValidationError);

  // Structural problems are parse errors.
  CHECK_THROWS_AS(parse_manifest("[]"), ParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"donor":"a","speakers":[]})"), ParseError);
}

TEST_CASE("mushra scores parse with the fixed header") {
  const std::string csv =
      "listener,testcase,system,score\n"
      "l1,t1,vc,80\n"
      "l1,t1,base,60.5\n"
      "l2,t1,vc,70\n"
      "l2,t1,base,55\n"
      "l1,t2,vc,90\n"
      "l1,t2,base,61\n"
      "l2,t2,vc,75\n"
      "l2,t2,base,58\n";
  const auto table = parse_scores(csv, ScoreKind::mushra);
  CHECK(table.kind == ScoreKind::mushra);
  REQUIRE(table.rows.size() == 8);
  CHECK(table.rows[1].system == "base");
  CHECK(table.rows[1].score == 60.5);

  const auto again = parse_scores(serialize_scores(table), ScoreKind::mushra);
  CHECK(again.rows == table.rows);
}

TEST_CASE("score table rejections") {
  CHECK_THROWS_AS(parse_scores("l,t,s,score\nl1,t1,a,50\n", ScoreKind::mushra), ParseError);
  CHECK_THROWS_AS(parse_scores("listener,testcase,system,score\nl1,t1,a,101\n", ScoreKind::mushra),
                  ValidationError);
  CHECK_THROWS_AS(parse_scores("listener,testcase,system,score\nl1,t1,a,-1\n", ScoreKind::mushra),
                  ValidationError);
  CHECK_THROWS_AS(parse_scores("listener,testcase,system,score\nl1,t1,a,50\nl1,t1,a,60\n",
                               ScoreKind::mushra),
                  ValidationError);
  CHECK_THROWS_AS(parse_scores("listener,testcase,system,score\nl1,t1,a,\n", ScoreKind::mushra),
                  ParseError);
}

TEST_CASE("preference scores accept A, B and tie") {
  const std::string csv =
      "listener,testcase,system,score\n"
      "l1,t1,ab,A\n"
      "l2,t1,ab,B\n"
      "l3,t1,ab,tie\n";
  const auto table = parse_scores(csv, ScoreKind::preference);
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[0].choice == Choice::a);
  CHECK(table.rows[1].choice == Choice::b);
  CHECK(table.rows[2].choice == Choice::tie);
  CHECK_THROWS_AS(parse_scores("listener,testcase,system,score\nl1,t1,ab,C\n",
                               ScoreKind::preference),
                  ParseError);

  const auto again = parse_scores(serialize_scores(table), ScoreKind::preference);
  CHECK(again.rows == table.rows);
}

TEST_CASE("text file helpers") {
  fixtures::TempDir tmp;
  const auto path = tmp.file("note.txt");
  write_text_file(path, "two\nlines\n");
  CHECK(read_text_file(path) == "two\nlines\n");
  CHECK_THROWS_AS(read_text_file(tmp.file("missing.txt")), IoError);
}
