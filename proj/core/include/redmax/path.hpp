#pragma once

#include <string>
#include <vector>

#include "redmax/permutation.hpp"

namespace redmax {

// A k-subset of [n], kept strictly increasing.
using KSubset = std::vector<int>;

void validate_ksubset(const KSubset& s, int n);

// max(I-J) < min(J-I) or max(J-I) < min(I-J), with equal sets allowed.
// Throws InvalidInputError if |I| != |J|.
bool is_weakly_separated(const KSubset& I, const KSubset& J);

// A_0, ..., A_N; consecutive sets differ by swapping one element x for a
// larger one y, and the whole collection is pairwise weakly separated.
struct MonotonePath {
  int k = 0;
  int n = 0;
  std::vector<KSubset> sets;
  bool operator==(const MonotonePath&) const = default;

  int steps() const { return static_cast<int>(sets.size()) - 1; }
};

struct PathCheck {
  bool ok = true;
  std::string reason;  // first violating pair or step when !ok
};

PathCheck validate_path_detail(const MonotonePath& p);
bool validate_path(const MonotonePath& p);

// The set swapped out / swapped in across one step; both singletons on a
// valid path.
struct StepDiff {
  int removed = 0;
  int added = 0;
};
StepDiff step_diff(const KSubset& from, const KSubset& to);

// P_k(w): A_0 = {1..k}, then the first-k-positions value set after each
// prefix ending at an occurrence of s_k. Requires w reduced.
MonotonePath word_to_path(const Word& w, int k);

// Inverse direction: builds a reduced word whose P_k equals the given path,
// following the explicit generator schedule
//   w <- w (s_a ... s_{k-1})(s_{b-1} ... s_{k+1}) s_k
// per step, where a, b are the positions of the swapped values.
// Requires A_0 = {1..k} and a valid path.
Word path_to_word(const MonotonePath& p);

// Extends a reduced word to a reduced word of w0 by greedily appending
// length-increasing generators (smallest ascent first). The input stays a
// prefix, so its s_k count can only grow.
Word complete_to_w0(const Word& w);

std::string format_set(const KSubset& s);

}  // namespace redmax
