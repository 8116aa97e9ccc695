#include "rhotica/alignment.hpp"

#include <algorithm>

#include "rhotica/errors.hpp"

namespace rhotica {

namespace {

enum class Move : unsigned char { none, diag, horiz, vert };

}  // namespace

AlignmentPath align(const std::vector<Phoneme>& a, const std::vector<Phoneme>& b,
                    const CostConfig& cfg) {
  if (a.empty() || b.empty()) throw ValidationError("align: sequences must be non-empty");
  cfg.validate();

  const std::size_t n = a.size(), m = b.size();
  std::vector<double> cost(n * m, 0.0);
  std::vector<Move> from(n * m, Move::none);
  auto at = [m](std::size_t i, std::size_t j) { return i * m + j; };

  cost[at(0, 0)] = 0.0;  // the initial cell pairs a[0] with b[0] for free
  for (std::size_t j = 1; j < m; ++j) {
    cost[at(0, j)] = cost[at(0, j - 1)] + cfg.indel_cost;
    from[at(0, j)] = Move::horiz;
  }
  for (std::size_t i = 1; i < n; ++i) {
    cost[at(i, 0)] = cost[at(i - 1, 0)] + cfg.indel_cost;
    from[at(i, 0)] = Move::vert;
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < m; ++j) {
      const double diag = cost[at(i - 1, j - 1)] + phoneme_distance(a[i], b[j], cfg);
      const double horiz = cost[at(i, j - 1)] + cfg.indel_cost;
      const double vert = cost[at(i - 1, j)] + cfg.indel_cost;
      double best = diag;
      Move mv = Move::diag;
      if (horiz < best) {
        best = horiz;
        mv = Move::horiz;
      }
      if (vert < best) {
        best = vert;
        mv = Move::vert;
      }
      cost[at(i, j)] = best;
      from[at(i, j)] = mv;
    }
  }

  AlignmentPath path;
  path.total_cost = cost[at(n - 1, m - 1)];
  std::size_t i = n - 1, j = m - 1;
  path.steps.push_back({i, j});
  while (i != 0 || j != 0) {
    switch (from[at(i, j)]) {
      case Move::diag:
        --i;
        --j;
        break;
      case Move::horiz:
        --j;
        break;
      case Move::vert:
        --i;
        break;
      case Move::none:
        throw NumericError("align: traceback reached a dead cell");
    }
    path.steps.push_back({i, j});
  }
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

double path_cost(const AlignmentPath& path, const std::vector<Phoneme>& a,
                 const std::vector<Phoneme>& b, const CostConfig& cfg) {
  if (path.steps.empty()) throw ValidationError("path_cost: empty path");
  if (path.steps.front() != PathStep{0, 0})
    throw ValidationError("path_cost: path must start at (0,0)");
  if (path.steps.back().i + 1 != a.size() || path.steps.back().j + 1 != b.size())
    throw ValidationError("path_cost: path must end at (|A|-1,|B|-1)");
  double total = 0.0;
  for (std::size_t s = 1; s < path.steps.size(); ++s) {
    const auto [pi, pj] = path.steps[s - 1];
    const auto [ci, cj] = path.steps[s];
    const std::size_t di = ci - pi, dj = cj - pj;
    if (ci < pi || cj < pj || di > 1 || dj > 1 || (di == 0 && dj == 0))
      throw ValidationError("path_cost: invalid step");
    if (di == 1 && dj == 1)
      total += phoneme_distance(a[ci], b[cj], cfg);
    else
      total += cfg.indel_cost;
  }
  return total;
}

bool has_rhotic_phoneme(const std::vector<Phoneme>& seq) {
  return std::any_of(seq.begin(), seq.end(), [](const Phoneme& p) { return p.rhotic; });
}

std::vector<RhoticContext> find_rhotic_contrasts(const AlignmentPath& path,
                                                 const std::vector<Phoneme>& rhotic_seq,
                                                 const std::vector<Phoneme>& nonrhotic_seq,
                                                 SequenceSlot rhotic_slot,
                                                 const std::string& utterance) {
  if (path.steps.empty()) throw ValidationError("find_rhotic_contrasts: empty path");
  std::vector<RhoticContext> out;
  if (!has_rhotic_phoneme(rhotic_seq)) return out;  // warning-level: declared side has no rhotic

  // Normalize to (r, n) index pairs, r on the rhotic-frontend sequence.
  auto rn = [&](const PathStep& s) {
    return rhotic_slot == SequenceSlot::a ? std::pair{s.i, s.j} : std::pair{s.j, s.i};
  };

  auto check_rhotacized = [&](std::size_t r, std::size_t n) {
    const Phoneme& pr = rhotic_seq[r];
    const Phoneme& pn = nonrhotic_seq[n];
    if (pr.is_vowel() && pr.rhotic && pn.is_vowel() && !pn.rhotic)
      out.push_back({ContextKind::rhotacized_vowel, {r, r}, n, utterance});
  };

  const auto [r0, n0] = rn(path.steps.front());
  check_rhotacized(r0, n0);

  for (std::size_t s = 1; s < path.steps.size(); ++s) {
    const auto [pr, pn] = rn(path.steps[s - 1]);
    const auto [r, n] = rn(path.steps[s]);
    const bool diag = (r == pr + 1) && (n == pn + 1);
    const bool rhotic_expansion = (r == pr + 1) && (n == pn);
    if (diag) {
      check_rhotacized(r, n);
    } else if (rhotic_expansion) {
      const Phoneme& pc = rhotic_seq[r];
      if (pc.rhotic && !pc.is_vowel() && nonrhotic_seq[n].is_vowel() && r >= 1 &&
          rhotic_seq[r - 1].is_vowel() &&
          (r + 1 == rhotic_seq.size() || !rhotic_seq[r + 1].is_vowel())) {
        out.push_back({ContextKind::r_insertion, {r - 1, r}, n, utterance});
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const RhoticContext& a, const RhoticContext& b) {
    return std::tie(a.rhotic_span.first, a.rhotic_span.last) <
           std::tie(b.rhotic_span.first, b.rhotic_span.last);
  });
  return out;
}

}  // namespace rhotica
