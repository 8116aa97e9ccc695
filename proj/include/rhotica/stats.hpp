#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rhotica/corpus_io.hpp"
#include "rhotica/formant.hpp"

namespace rhotica {

struct TestResult {
  double t = 0.0;
  double degrees_of_freedom = 0.0;
  double p = 1.0;  // two-sided
  bool rejected = false;
  double alpha = 0.05;
  // Zero-variance samples with unequal means: p is 0 by convention and t is
  // a signed infinity. Consumers should surface the flag, not the t value.
  bool degenerate = false;
};

// Two-sided t-test. paired requires equal sizes; unpaired uses Welch's
// statistic with Satterthwaite degrees of freedom. rejected = p <= alpha.
TestResult t_test(std::span<const double> xs, std::span<const double> ys, bool paired,
                  double alpha = 0.05);

// P(|T| >= |t|) for Student's t with df degrees of freedom, via the
// regularized incomplete beta function.
double student_t_two_sided_p(double t, double df);

// Smallest t with student_t_two_sided_p(t, df) <= alpha (two-sided critical value).
double student_t_critical(double df, double alpha);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

struct HolmEntry {
  double adjusted_p = 1.0;
  bool rejected = false;
};

// Holm step-down correction. Results are in input order.
std::vector<HolmEntry> holm_bonferroni(std::span<const double> p_values, double alpha);

// Exact two-sided sign-test p: X ~ Binomial(n, 1/2), doubled smaller tail
// around k, clamped to 1.
double binomial_two_sided_p(long long k, long long n);

struct MushraOptions {
  double alpha = 0.05;
  // Comparison family: top system vs each other system (default), or every pair.
  bool all_pairs = false;
  // Pairing unit for the t-tests: raw (listener, testcase) ratings (default),
  // or per-testcase means across listeners.
  bool pair_on_testcase_mean = false;
};

struct MushraSystem {
  std::string system;
  double mean = 0.0;
  int n = 0;
  double ci_lo = 0.0;  // 95% t-interval; collapses to the mean when n < 2
  double ci_hi = 0.0;
  std::optional<double> adjusted_p;  // Holm-adjusted p vs the top system
  bool in_best_group = false;
};

struct MushraPair {
  std::string system_a;
  std::string system_b;
  TestResult test;
  double adjusted_p = 1.0;
};

struct MushraSummary {
  std::vector<MushraSystem> systems;  // descending mean, then name
  std::vector<MushraPair> pairs;
  std::vector<std::string> best_group;  // sorted names
  std::string top_system;
  double alpha = 0.05;
};

// Per-system means, 95% intervals, and the best group: the top-mean system
// plus every system whose difference from it survives Holm correction
// nowhere (i.e. is not rejected).
MushraSummary mushra_summary(const ScoreTable& scores, const MushraOptions& opts = {});

struct PreferenceSummary {
  long long n_a = 0;
  long long n_b = 0;
  long long n_tie = 0;
  double share_a = 0.0;
  double share_b = 0.0;
  double share_tie = 0.0;
  std::optional<double> sign_test_p;  // absent when every response is a tie
};

PreferenceSummary preference_summary(const ScoreTable& scores);

// One measured context for one system; context ids decide whether two
// systems can be compared paired.
struct SlopeSample {
  std::string context;
  SlopeStat stat;
};

struct SlopePair {
  std::string system_a;
  std::string system_b;
  bool paired = false;
  TestResult test;
  double adjusted_p = 1.0;
};

struct SlopeSystem {
  std::string system;
  int n = 0;
  double mean_ols_slope = 0.0;
  double mean_net_change = 0.0;
};

struct SlopeComparison {
  std::vector<SlopeSystem> systems;  // name order
  std::vector<SlopePair> pairs;      // all unordered pairs, name order
  double alpha = 0.05;
};

// Pairwise ols_slope tests across systems: paired when the two context id
// lists are identical in order, Welch otherwise; Holm across all pairs.
SlopeComparison slope_comparison(const std::map<std::string, std::vector<SlopeSample>>& per_system,
                                 double alpha = 0.05);

}  // namespace rhotica
