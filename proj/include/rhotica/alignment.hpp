#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rhotica/phoneme.hpp"

namespace rhotica {

struct PathStep {
  std::size_t i = 0;  // index into sequence A
  std::size_t j = 0;  // index into sequence B
  bool operator==(const PathStep&) const = default;
};

// Monotone cell path through the alignment matrix: starts at (0,0), ends at
// (|A|-1,|B|-1), each move is (1,0), (0,1) or (1,1). Diagonal moves charge
// the substitution cost of the newly paired cell, non-diagonal moves charge
// indel_cost; the initial cell is free.
struct AlignmentPath {
  std::vector<PathStep> steps;
  double total_cost = 0.0;
};

// Cost-optimal global alignment under the three-move step set. Ties are
// broken during traceback by preferring (1,1) over (0,1) over (1,0).
AlignmentPath align(const std::vector<Phoneme>& a, const std::vector<Phoneme>& b,
                    const CostConfig& cfg);

// Recomputes a path's cost from its steps. Throws ValidationError if the
// path is not a valid monotone cell path for the two sequences.
double path_cost(const AlignmentPath& path, const std::vector<Phoneme>& a,
                 const std::vector<Phoneme>& b, const CostConfig& cfg);

enum class ContextKind { r_insertion, rhotacized_vowel };

// Which align() argument slot held the rhotic-frontend sequence.
enum class SequenceSlot { a, b };

struct IndexSpan {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
  bool operator==(const IndexSpan&) const = default;
};

// A site where the rhotic frontend realizes /r/ (or a rhotacized vowel) and
// the non-rhotic frontend does not.
struct RhoticContext {
  ContextKind kind = ContextKind::r_insertion;
  IndexSpan rhotic_span;              // vowel..r, or the rhotacized vowel alone
  std::size_t nonrhotic_index = 0;    // aligned vowel in the non-rhotic sequence
  std::string utterance;
};

// Walks the alignment path and reports, ordered by rhotic-side index:
//   r_insertion      — a rhotic consonant covered by an expansion step against
//                      a non-rhotic-side vowel, preceded on the rhotic side by
//                      a vowel and followed by a non-vowel (end of sequence
//                      counts as a non-vowel);
//   rhotacized_vowel — a diagonal pairing of a rhotic vowel with a non-rhotic
//                      vowel (the initial cell counts as a diagonal pairing).
// If the declared rhotic sequence contains no rhotic phoneme at all the
// result is empty; use has_rhotic_phoneme() to surface a warning.
std::vector<RhoticContext> find_rhotic_contrasts(const AlignmentPath& path,
                                                 const std::vector<Phoneme>& rhotic_seq,
                                                 const std::vector<Phoneme>& nonrhotic_seq,
                                                 SequenceSlot rhotic_slot,
                                                 const std::string& utterance = {});

bool has_rhotic_phoneme(const std::vector<Phoneme>& seq);

}  // namespace rhotica
