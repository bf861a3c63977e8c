#include "redmax/path.hpp"

#include <algorithm>

#include "redmax/errors.hpp"

namespace redmax {

void validate_ksubset(const KSubset& s, int n) {
  if (s.empty()) throw InvalidInputError("empty subset");
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > n) throw InvalidInputError("subset element out of range");
    if (i > 0 && s[i] <= s[i - 1]) throw InvalidInputError("subset not strictly increasing");
  }
}

bool is_weakly_separated(const KSubset& I, const KSubset& J) {
  if (I.size() != J.size())
    throw InvalidInputError("weak separation needs subsets of equal size");
  // One merge pass gives max(I-J), min(J-I), max(J-I), min(I-J).
  int max_IJ = 0, max_JI = 0;
  int min_IJ = 0, min_JI = 0;  // 0 = none seen
  size_t a = 0, b = 0;
  while (a < I.size() || b < J.size()) {
    if (b == J.size() || (a < I.size() && I[a] < J[b])) {
      if (min_IJ == 0) min_IJ = I[a];
      max_IJ = I[a];
      ++a;
    } else if (a == I.size() || J[b] < I[a]) {
      if (min_JI == 0) min_JI = J[b];
      max_JI = J[b];
      ++b;
    } else {
      ++a;
      ++b;
    }
  }
  if (min_IJ == 0 || min_JI == 0) return true;  // one difference empty => I == J
  return max_IJ < min_JI || max_JI < min_IJ;
}

StepDiff step_diff(const KSubset& from, const KSubset& to) {
  StepDiff d;
  size_t a = 0, b = 0;
  int removed = 0, added = 0, nrem = 0, nadd = 0;
  while (a < from.size() || b < to.size()) {
    if (b == to.size() || (a < from.size() && from[a] < to[b])) {
      removed = from[a++];
      ++nrem;
    } else if (a == from.size() || to[b] < from[a]) {
      added = to[b++];
      ++nadd;
    } else {
      ++a;
      ++b;
    }
  }
  if (nrem != 1 || nadd != 1) return {0, 0};
  d.removed = removed;
  d.added = added;
  return d;
}

std::string format_set(const KSubset& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

PathCheck validate_path_detail(const MonotonePath& p) {
  PathCheck c;
  auto fail = [&c](std::string why) {
    c.ok = false;
    c.reason = std::move(why);
    return c;
  };
  if (p.sets.empty()) return fail("path has no sets");
  if (p.k < 1) return fail("k must be >= 1");
  for (const auto& s : p.sets) {
    if (static_cast<int>(s.size()) != p.k)
      return fail("set " + format_set(s) + " does not have size k");
    try {
      validate_ksubset(s, p.n);
    } catch (const InvalidInputError& e) {
      return fail(std::string(e.what()) + " in " + format_set(s));
    }
  }
  for (size_t i = 0; i + 1 < p.sets.size(); ++i) {
    StepDiff d = step_diff(p.sets[i], p.sets[i + 1]);
    if (d.removed == 0)
      return fail("step " + std::to_string(i) + ": " + format_set(p.sets[i]) + " -> " +
                  format_set(p.sets[i + 1]) + " is not a single swap");
    if (d.added <= d.removed)
      return fail("step " + std::to_string(i) + ": swapped " + std::to_string(d.removed) +
                  " for smaller " + std::to_string(d.added));
  }
  // Whole-collection weak separation, all O(N^2) pairs.
  for (size_t i = 0; i < p.sets.size(); ++i)
    for (size_t j = i + 1; j < p.sets.size(); ++j)
      if (!is_weakly_separated(p.sets[i], p.sets[j]))
        return fail("sets " + format_set(p.sets[i]) + " and " + format_set(p.sets[j]) +
                    " are not weakly separated");
  return c;
}

bool validate_path(const MonotonePath& p) { return validate_path_detail(p).ok; }

MonotonePath word_to_path(const Word& w, int k) {
  if (k < 1 || k > w.n - 1)
    throw InvalidInputError("word_to_path needs 1 <= k <= n-1");
  if (!is_reduced(w)) throw InvalidInputError("word_to_path requires a reduced word");
  MonotonePath p;
  p.k = k;
  p.n = w.n;
  Permutation cur = Permutation::identity(w.n);
  auto top_k = [&cur, k]() {
    KSubset s(cur.oneline.begin(), cur.oneline.begin() + k);
    std::sort(s.begin(), s.end());
    return s;
  };
  p.sets.push_back(top_k());
  for (int i : w.letters) {
    std::swap(cur.oneline[i - 1], cur.oneline[i]);
    if (i == k) p.sets.push_back(top_k());
  }
  return p;
}

Word path_to_word(const MonotonePath& p) {
  PathCheck c = validate_path_detail(p);
  if (!c.ok) throw InvalidInputError("path_to_word: invalid path: " + c.reason);
  for (int i = 0; i < p.k; ++i)
    if (p.sets[0][i] != i + 1)
      throw InvalidInputError("path_to_word requires A_0 = {1..k}");
  const int k = p.k;
  Word out;
  out.n = p.n;
  Permutation cur = Permutation::identity(p.n);
  auto pos_of = [&cur](int value) {
    for (int i = 0; i < cur.n(); ++i)
      if (cur.oneline[i] == value) return i + 1;
    throw InternalContradictionError("value missing from permutation");
  };
  auto apply = [&out, &cur](int letter) {
    out.letters.push_back(letter);
    std::swap(cur.oneline[letter - 1], cur.oneline[letter]);
  };
  for (int j = 0; j + 1 < static_cast<int>(p.sets.size()); ++j) {
    StepDiff d = step_diff(p.sets[j], p.sets[j + 1]);
    int a = pos_of(d.removed);
    int b = pos_of(d.added);
    if (a > k || b <= k)
      throw InternalContradictionError("swap positions do not straddle k");
    for (int s = a; s <= k - 1; ++s) apply(s);
    for (int s = b - 1; s >= k + 1; --s) apply(s);
    apply(k);
  }
  if (!is_reduced(out))
    throw InternalContradictionError("path_to_word produced a non-reduced word");
  return out;
}

Word complete_to_w0(const Word& w) {
  if (!is_reduced(w)) throw InvalidInputError("complete_to_w0 requires a reduced word");
  Word out = w;
  Permutation cur = word_product(w);
  for (;;) {
    int ascent = 0;
    for (int i = 1; i <= w.n - 1; ++i)
      if (cur.oneline[i - 1] < cur.oneline[i]) {
        ascent = i;
        break;
      }
    if (ascent == 0) break;  // no ascent: cur = w0
    out.letters.push_back(ascent);
    std::swap(cur.oneline[ascent - 1], cur.oneline[ascent]);
  }
  return out;
}

}  // namespace redmax
