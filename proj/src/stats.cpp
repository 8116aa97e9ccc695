#include "rhotica/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "rhotica/errors.hpp"

namespace rhotica {

namespace {

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Unbiased sample variance (n - 1 denominator).
double variance_of(std::span<const double> xs, double mean) {
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size() - 1);
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericError("incomplete beta continued fraction did not converge");
}

TestResult finish_test(double t, double df, double alpha) {
  TestResult r;
  r.t = t;
  r.degrees_of_freedom = df;
  r.alpha = alpha;
  r.p = student_t_two_sided_p(t, df);
  r.rejected = r.p <= alpha;
  return r;
}

TestResult degenerate_test(double mean_diff, double df, double alpha) {
  TestResult r;
  r.degrees_of_freedom = df;
  r.alpha = alpha;
  if (mean_diff == 0.0) {
    r.t = 0.0;
    r.p = 1.0;
    r.rejected = false;
  } else {
    r.t = std::copysign(std::numeric_limits<double>::infinity(), mean_diff);
    r.p = 0.0;
    r.rejected = true;
    r.degenerate = true;
  }
  return r;
}

double critical_or_zero(int n, double alpha) {
  if (n < 2) return 0.0;
  return student_t_critical(static_cast<double>(n - 1), alpha);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("incomplete beta: a, b must be positive");
  if (std::isnan(x)) throw ValidationError("incomplete beta: x is NaN");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw ValidationError("t p-value: degrees of freedom must be positive");
  if (std::isnan(t)) throw NumericError("t p-value: t is NaN");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double student_t_critical(double df, double alpha) {
  if (!(df > 0.0)) throw ValidationError("t critical: degrees of freedom must be positive");
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw ValidationError("t critical: alpha must be in (0,1)");
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_two_sided_p(hi, df) > alpha) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("t critical: bracket expansion failed");
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(1.0, lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_two_sided_p(mid, df) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

TestResult t_test(std::span<const double> xs, std::span<const double> ys, bool paired,
                  double alpha) {
  if (paired && xs.size() != ys.size())
    throw ValidationError("t_test: paired samples must have equal sizes");
  if (xs.size() < 2 || ys.size() < 2)
    throw ValidationError("t_test: each sample needs at least 2 values");

  if (paired) {
    const auto n = xs.size();
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = xs[i] - ys[i];
    const double md = mean_of(diff);
    const double vd = variance_of(diff, md);
    const double df = static_cast<double>(n - 1);
    if (vd <= 0.0) return degenerate_test(md, df, alpha);
    const double t = md / std::sqrt(vd / static_cast<double>(n));
    return finish_test(t, df, alpha);
  }

  const double nx = static_cast<double>(xs.size());
  const double ny = static_cast<double>(ys.size());
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  const double vx = variance_of(xs, mx);
  const double vy = variance_of(ys, my);
  const double se2 = vx / nx + vy / ny;
  if (se2 <= 0.0) return degenerate_test(mx - my, nx + ny - 2.0, alpha);
  const double t = (mx - my) / std::sqrt(se2);
  const double df =
      se2 * se2 / (vx * vx / (nx * nx * (nx - 1.0)) + vy * vy / (ny * ny * (ny - 1.0)));
  return finish_test(t, df, alpha);
}

std::vector<HolmEntry> holm_bonferroni(std::span<const double> p_values, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw ValidationError("holm_bonferroni: alpha must be in (0,1)");
  for (double p : p_values)
    if (!(p >= 0.0) || !(p <= 1.0))
      throw ValidationError("holm_bonferroni: p-values must lie in [0,1]");

  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

  std::vector<HolmEntry> out(m);
  double running_adjusted = 0.0;
  bool stopped = false;
  for (std::size_t j = 0; j < m; ++j) {
    const double p = p_values[order[j]];
    const double scale = static_cast<double>(m - j);
    running_adjusted = std::max(running_adjusted, std::min(1.0, scale * p));
    if (!stopped && p > alpha / scale) stopped = true;
    out[order[j]] = {running_adjusted, !stopped};
  }
  return out;
}

double binomial_two_sided_p(long long k, long long n) {
  if (n <= 0) throw ValidationError("sign test: need at least one informative trial");
  if (k < 0 || k > n) throw ValidationError("sign test: k out of range");
  const long long tail_max = std::min(k, n - k);
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  double tail = 0.0;
  for (long long i = 0; i <= tail_max; ++i) {
    const double log_c = std::lgamma(static_cast<double>(n) + 1.0) -
                         std::lgamma(static_cast<double>(i) + 1.0) -
                         std::lgamma(static_cast<double>(n - i) + 1.0);
    tail += std::exp(log_c + log_half_n);
  }
  return std::min(1.0, 2.0 * tail);
}

MushraSummary mushra_summary(const ScoreTable& scores, const MushraOptions& opts) {
  if (scores.kind != ScoreKind::mushra)
    throw ValidationError("mushra_summary: table kind is not mushra");
  if (scores.rows.empty()) throw ValidationError("mushra_summary: empty score table");
  if (!(opts.alpha > 0.0) || !(opts.alpha < 1.0))
    throw ValidationError("mushra_summary: alpha must be in (0,1)");

  // system -> pairing key -> rating. Keys are (listener, testcase) or, under
  // the testcase-mean option, testcase alone with listener means folded in.
  std::map<std::string, std::map<std::pair<std::string, std::string>, double>> raw;
  for (const auto& row : scores.rows)
    raw[row.system][{row.listener, row.testcase}] = row.score;

  std::map<std::string, std::map<std::string, double>> keyed;
  if (opts.pair_on_testcase_mean) {
    for (const auto& [system, cells] : raw) {
      std::map<std::string, std::pair<double, int>> acc;
      for (const auto& [key, score] : cells) {
        acc[key.second].first += score;
        acc[key.second].second += 1;
      }
      for (const auto& [testcase, sum_count] : acc)
        keyed[system][testcase] = sum_count.first / sum_count.second;
    }
  } else {
    for (const auto& [system, cells] : raw)
      for (const auto& [key, score] : cells)
        keyed[system][key.first + "\x1f" + key.second] = score;
  }

  MushraSummary summary;
  summary.alpha = opts.alpha;

  for (const auto& [system, cells] : raw) {
    MushraSystem s;
    s.system = system;
    s.n = static_cast<int>(cells.size());
    double sum = 0.0;
    for (const auto& [key, score] : cells) sum += score;
    s.mean = sum / s.n;
    if (s.n >= 2) {
      std::vector<double> vals;
      vals.reserve(cells.size());
      for (const auto& [key, score] : cells) vals.push_back(score);
      const double sd = std::sqrt(variance_of(vals, s.mean));
      const double half = critical_or_zero(s.n, 0.05) * sd / std::sqrt(static_cast<double>(s.n));
      s.ci_lo = s.mean - half;
      s.ci_hi = s.mean + half;
    } else {
      s.ci_lo = s.ci_hi = s.mean;
    }
    summary.systems.push_back(std::move(s));
  }

  std::stable_sort(summary.systems.begin(), summary.systems.end(),
                   [](const MushraSystem& a, const MushraSystem& b) {
                     if (a.mean != b.mean) return a.mean > b.mean;
                     return a.system < b.system;
                   });
  summary.top_system = summary.systems.front().system;

  auto paired_vectors = [&](const std::string& a, const std::string& b) {
    const auto& ka = keyed.at(a);
    const auto& kb = keyed.at(b);
    if (ka.size() != kb.size())
      throw ValidationError("mushra_summary: systems " + a + " and " + b +
                            " were not rated on the same pairs");
    std::vector<double> xs, ys;
    xs.reserve(ka.size());
    ys.reserve(ka.size());
    for (const auto& [key, score] : ka) {
      auto it = kb.find(key);
      if (it == kb.end())
        throw ValidationError("mushra_summary: systems " + a + " and " + b +
                              " were not rated on the same pairs");
      xs.push_back(score);
      ys.push_back(it->second);
    }
    return std::make_pair(std::move(xs), std::move(ys));
  };

  std::vector<std::pair<std::string, std::string>> family;
  if (opts.all_pairs) {
    for (std::size_t i = 0; i < summary.systems.size(); ++i)
      for (std::size_t j = i + 1; j < summary.systems.size(); ++j)
        family.emplace_back(summary.systems[i].system, summary.systems[j].system);
  } else {
    for (std::size_t j = 1; j < summary.systems.size(); ++j)
      family.emplace_back(summary.top_system, summary.systems[j].system);
  }

  std::vector<double> ps;
  for (const auto& [a, b] : family) {
    auto [xs, ys] = paired_vectors(a, b);
    if (xs.size() < 2)
      throw ValidationError("mushra_summary: need at least 2 shared ratings per comparison");
    MushraPair pair;
    pair.system_a = a;
    pair.system_b = b;
    pair.test = t_test(xs, ys, true, opts.alpha);
    summary.pairs.push_back(std::move(pair));
    ps.push_back(summary.pairs.back().test.p);
  }

  const auto holm = holm_bonferroni(ps, opts.alpha);
  for (std::size_t i = 0; i < summary.pairs.size(); ++i) {
    summary.pairs[i].adjusted_p = holm[i].adjusted_p;
    summary.pairs[i].test.rejected = holm[i].rejected;
  }

  std::set<std::string> best{summary.top_system};
  for (const auto& pair : summary.pairs) {
    if (pair.system_a != summary.top_system && pair.system_b != summary.top_system) continue;
    const std::string& other =
        pair.system_a == summary.top_system ? pair.system_b : pair.system_a;
    if (!pair.test.rejected) best.insert(other);
    for (auto& s : summary.systems)
      if (s.system == other) s.adjusted_p = pair.adjusted_p;
  }
  for (auto& s : summary.systems) s.in_best_group = best.count(s.system) > 0;
  summary.best_group.assign(best.begin(), best.end());
  return summary;
}

PreferenceSummary preference_summary(const ScoreTable& scores) {
  if (scores.kind != ScoreKind::preference)
    throw ValidationError("preference_summary: table kind is not preference");
  if (scores.rows.empty()) throw ValidationError("preference_summary: empty score table");

  PreferenceSummary out;
  for (const auto& row : scores.rows) {
    switch (row.choice) {
      case Choice::a: ++out.n_a; break;
      case Choice::b: ++out.n_b; break;
      case Choice::tie: ++out.n_tie; break;
    }
  }
  const double total = static_cast<double>(out.n_a + out.n_b + out.n_tie);
  out.share_a = out.n_a / total;
  out.share_b = out.n_b / total;
  out.share_tie = out.n_tie / total;
  if (out.n_a + out.n_b > 0)
    out.sign_test_p = binomial_two_sided_p(out.n_a, out.n_a + out.n_b);
  return out;
}

SlopeComparison slope_comparison(const std::map<std::string, std::vector<SlopeSample>>& per_system,
                                 double alpha) {
  if (per_system.size() < 2)
    throw ValidationError("slope_comparison: need at least 2 systems");
  for (const auto& [system, samples] : per_system)
    if (samples.size() < 2)
      throw ValidationError("slope_comparison: system " + system +
                            " has fewer than 2 contexts");

  SlopeComparison cmp;
  cmp.alpha = alpha;
  for (const auto& [system, samples] : per_system) {
    SlopeSystem s;
    s.system = system;
    s.n = static_cast<int>(samples.size());
    for (const auto& sample : samples) {
      s.mean_ols_slope += sample.stat.ols_slope;
      s.mean_net_change += sample.stat.net_change;
    }
    s.mean_ols_slope /= s.n;
    s.mean_net_change /= s.n;
    cmp.systems.push_back(std::move(s));
  }

  std::vector<double> ps;
  for (auto ia = per_system.begin(); ia != per_system.end(); ++ia) {
    for (auto ib = std::next(ia); ib != per_system.end(); ++ib) {
      const auto& sa = ia->second;
      const auto& sb = ib->second;
      bool same_contexts = sa.size() == sb.size();
      for (std::size_t i = 0; same_contexts && i < sa.size(); ++i)
        same_contexts = sa[i].context == sb[i].context;

      std::vector<double> xs, ys;
      for (const auto& s : sa) xs.push_back(s.stat.ols_slope);
      for (const auto& s : sb) ys.push_back(s.stat.ols_slope);

      SlopePair pair;
      pair.system_a = ia->first;
      pair.system_b = ib->first;
      pair.paired = same_contexts;
      pair.test = t_test(xs, ys, same_contexts, alpha);
      cmp.pairs.push_back(std::move(pair));
      ps.push_back(cmp.pairs.back().test.p);
    }
  }

  const auto holm = holm_bonferroni(ps, alpha);
  for (std::size_t i = 0; i < cmp.pairs.size(); ++i) {
    cmp.pairs[i].adjusted_p = holm[i].adjusted_p;
    cmp.pairs[i].test.rejected = holm[i].rejected;
  }
  return cmp;
}

}  // namespace rhotica
