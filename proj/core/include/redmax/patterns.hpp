#pragma once

#include <map>

#include "redmax/path.hpp"
#include "redmax/rational.hpp"

namespace redmax {

// A path (A_0, ..., A_L) with A_L = A_0 + d whose m-fold shifted
// repetitions all stay valid monotone weakly separated paths.
struct RepeatablePattern {
  MonotonePath base;
  int d = 0;

  int delta_len() const { return base.steps(); }
};

// Translate every set by t (and the ground bound accordingly).
MonotonePath shift_path(const MonotonePath& p, int t);

// P * Q glued along last(P) = first(Q) + t. Validates before returning.
MonotonePath concatenate(const MonotonePath& p, const MonotonePath& q);

// The m-fold repetition sequence (A_0..A_L, A_1+d..A_L+d, ..., A_L+md).
// No validation.
MonotonePath repeat_pattern(const MonotonePath& base, int d, int m);

// Finite certification: checking the m*-fold repetition with
// m* = ceil((max A_L - min A_0) / d) + 1 certifies all m, because copies
// further apart are order-separated. Throws on A_L != A_0 + d.
bool is_repeatable(const MonotonePath& base, int d);

// Deduces d from A_L - A_0 (throws if A_L is not a translate of A_0).
bool is_repeatable(const MonotonePath& base);

int certification_bound(const MonotonePath& base, int d);  // m*

// A repeatable pattern plus explicit seed paths for small n; witnesses for
// larger n are built by pattern * witness(n - d).
struct PatternFamily {
  int k = 0;
  RepeatablePattern pattern;
  std::map<int, MonotonePath> prefixes;
};

// Families realizing M(k,n) for k = 1, 2, 3, seeds stored verbatim.
const PatternFamily& builtin_family(int k);

MonotonePath assemble_witness(const PatternFamily& family, int n);

// delta_len / d, exact. Requires the pattern to be repeatable.
Rat density(const RepeatablePattern& r);

// Small enumerative search used by property tests: all repeatable patterns
// with elements within [1, span_cap] and at most len_cap steps, A_0
// starting at 1.
std::vector<RepeatablePattern> enumerate_repeatable_patterns(int k, int span_cap, int len_cap);

}  // namespace redmax
