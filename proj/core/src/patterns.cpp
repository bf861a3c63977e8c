#include "redmax/patterns.hpp"

#include <algorithm>

#include "redmax/errors.hpp"

namespace redmax {

namespace {

KSubset shift_set(const KSubset& s, int t) {
  KSubset out = s;
  for (int& v : out) v += t;
  return out;
}

int max_element_of(const MonotonePath& p) {
  int m = 0;
  for (const auto& s : p.sets) m = std::max(m, s.back());
  return m;
}

MonotonePath parse_path_literal(int k, std::initializer_list<const char*> sets) {
  MonotonePath p;
  p.k = k;
  for (const char* s : sets) {
    KSubset sub;
    for (const char* c = s; *c; ++c) sub.push_back(*c - '0');
    p.sets.push_back(sub);
  }
  p.n = max_element_of(p);
  return p;
}

}  // namespace

MonotonePath shift_path(const MonotonePath& p, int t) {
  MonotonePath out;
  out.k = p.k;
  for (const auto& s : p.sets) out.sets.push_back(shift_set(s, t));
  out.n = max_element_of(out);
  return out;
}

MonotonePath concatenate(const MonotonePath& p, const MonotonePath& q) {
  if (p.sets.empty() || q.sets.empty())
    throw InvalidInputError("concatenate: empty path");
  if (p.k != q.k) throw InvalidInputError("concatenate: subset sizes differ");
  const KSubset& last = p.sets.back();
  const KSubset& first = q.sets.front();
  int t = last[0] - first[0];
  for (size_t i = 0; i < last.size(); ++i)
    if (last[i] - first[i] != t)
      throw InvalidInputError("concatenate: last(P) is not a translate of first(Q)");
  MonotonePath out;
  out.k = p.k;
  out.sets.assign(p.sets.begin(), p.sets.end() - 1);
  for (const auto& s : q.sets) out.sets.push_back(shift_set(s, t));
  out.n = max_element_of(out);
  PathCheck c = validate_path_detail(out);
  if (!c.ok) throw InvalidInputError("concatenate: result is not a valid path: " + c.reason);
  return out;
}

MonotonePath repeat_pattern(const MonotonePath& base, int d, int m) {
  MonotonePath out;
  out.k = base.k;
  out.sets = base.sets;
  for (int c = 1; c <= m; ++c)
    for (size_t i = 1; i < base.sets.size(); ++i)
      out.sets.push_back(shift_set(base.sets[i], c * d));
  out.n = max_element_of(out);
  return out;
}

int certification_bound(const MonotonePath& base, int d) {
  int span = base.sets.back().back() - base.sets.front().front();
  return static_cast<int>(ceil_div(span, d)) + 1;
}

bool is_repeatable(const MonotonePath& base, int d) {
  PathCheck c = validate_path_detail(base);
  if (!c.ok) return false;
  if (d < 1) throw InvalidInputError("is_repeatable: shift d must be positive");
  if (base.sets.back() != shift_set(base.sets.front(), d))
    throw InvalidInputError("is_repeatable: A_L != A_0 + d (shift mismatch)");
  int mstar = certification_bound(base, d);
  return validate_path(repeat_pattern(base, d, mstar));
}

bool is_repeatable(const MonotonePath& base) {
  if (base.sets.size() < 2) throw InvalidInputError("is_repeatable: need at least one step");
  const KSubset& a0 = base.sets.front();
  const KSubset& al = base.sets.back();
  int d = al[0] - a0[0];
  for (size_t i = 0; i < a0.size(); ++i)
    if (al[i] - a0[i] != d)
      throw InvalidInputError("is_repeatable: A_L is not a translate of A_0");
  if (d < 1) throw InvalidInputError("is_repeatable: shift must be positive");
  return is_repeatable(base, d);
}

const PatternFamily& builtin_family(int k) {
  static const PatternFamily k1 = [] {
    PatternFamily f;
    f.k = 1;
    f.pattern.base = parse_path_literal(1, {"1", "2"});
    f.pattern.d = 1;
    f.prefixes[2] = parse_path_literal(1, {"1", "2"});
    return f;
  }();
  static const PatternFamily k2 = [] {
    PatternFamily f;
    f.k = 2;
    f.pattern.base = parse_path_literal(2, {"12", "13", "23", "34"});
    f.pattern.d = 2;
    f.prefixes[3] = parse_path_literal(2, {"12", "13", "23"});
    f.prefixes[4] = parse_path_literal(2, {"12", "13", "23", "34"});
    return f;
  }();
  static const PatternFamily k3 = [] {
    PatternFamily f;
    f.k = 3;
    f.pattern.base = parse_path_literal(
        3, {"123", "124", "125", "145", "245", "345", "456", "457", "567", "578", "678", "789"});
    f.pattern.d = 6;
    f.prefixes[4] = parse_path_literal(3, {"123", "124", "134", "234"});
    f.prefixes[5] = parse_path_literal(3, {"123", "124", "125", "145", "245", "345"});
    f.prefixes[6] =
        parse_path_literal(3, {"123", "124", "125", "145", "245", "345", "456"});
    f.prefixes[7] = parse_path_literal(
        3, {"123", "124", "125", "145", "245", "345", "456", "457", "567"});
    f.prefixes[8] = parse_path_literal(
        3, {"123", "124", "125", "145", "245", "345", "456", "457", "567", "578", "678"});
    f.prefixes[9] =
        parse_path_literal(3, {"123", "124", "125", "145", "245", "345", "456", "457", "567",
                               "578", "579", "589", "789"});
    return f;
  }();
  switch (k) {
    case 1: return k1;
    case 2: return k2;
    case 3: return k3;
    default: throw InvalidInputError("no built-in family for k = " + std::to_string(k));
  }
}

MonotonePath assemble_witness(const PatternFamily& family, int n) {
  if (n < family.k + 1)
    throw InvalidInputError("assemble_witness needs n >= k + 1");
  auto it = family.prefixes.find(n);
  if (it != family.prefixes.end()) return it->second;
  if (family.prefixes.empty() || n < family.prefixes.begin()->first)
    throw InvalidInputError("family does not cover n = " + std::to_string(n));
  MonotonePath tail = assemble_witness(family, n - family.pattern.d);
  MonotonePath out = concatenate(family.pattern.base, tail);
  // sanity: the assembled witness must run from {1..k} to {n-k+1..n}
  for (int i = 0; i < family.k; ++i) {
    if (out.sets.front()[i] != i + 1 || out.sets.back()[i] != n - family.k + i + 1)
      throw InternalContradictionError("assembled witness has wrong endpoints");
  }
  return out;
}

Rat density(const RepeatablePattern& r) {
  if (!is_repeatable(r.base, r.d))
    throw InvalidInputError("density requires a repeatable pattern");
  return Rat(r.delta_len(), r.d);
}

std::vector<RepeatablePattern> enumerate_repeatable_patterns(int k, int span_cap, int len_cap) {
  std::vector<RepeatablePattern> found;
  // all starting k-subsets of [1, span_cap] containing 1 (canonical translate)
  std::vector<KSubset> starts;
  KSubset pick;
  std::function<void(int)> choose = [&](int from) {
    if (static_cast<int>(pick.size()) == k) {
      if (pick.front() == 1) starts.push_back(pick);
      return;
    }
    for (int v = from; v <= span_cap; ++v) {
      pick.push_back(v);
      choose(v + 1);
      pick.pop_back();
    }
  };
  choose(1);

  std::function<void(MonotonePath&)> extend = [&](MonotonePath& p) {
    const KSubset& a0 = p.sets.front();
    const KSubset& al = p.sets.back();
    if (p.sets.size() >= 2) {
      int d = al[0] - a0[0];
      bool translate = d >= 1;
      for (size_t i = 0; translate && i < a0.size(); ++i)
        if (al[i] - a0[i] != d) translate = false;
      if (translate && is_repeatable(p, d)) {
        RepeatablePattern r;
        r.base = p;
        r.base.n = al.back();
        r.d = d;
        found.push_back(r);
      }
    }
    if (p.steps() >= len_cap) return;
    const KSubset cur = p.sets.back();
    for (int x : cur)
      for (int y = x + 1; y <= span_cap; ++y) {
        if (std::find(cur.begin(), cur.end(), y) != cur.end()) continue;
        KSubset next;
        for (int v : cur)
          if (v != x) next.push_back(v);
        next.insert(std::upper_bound(next.begin(), next.end(), y), y);
        bool ok = true;
        for (const auto& prev : p.sets)
          if (!is_weakly_separated(prev, next)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        p.sets.push_back(next);
        extend(p);
        p.sets.pop_back();
      }
  };

  for (const KSubset& s : starts) {
    MonotonePath p;
    p.k = k;
    p.n = span_cap;
    p.sets = {s};
    extend(p);
  }
  return found;
}

}  // namespace redmax
