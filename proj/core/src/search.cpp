#include "redmax/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "redmax/errors.hpp"

namespace redmax {

namespace {

long long lcm_upto(int m) {
  long long l = 1;
  for (int t = 2; t <= m; ++t) l = std::lcm(l, static_cast<long long>(t));
  return l;
}

// Sum of the first k terms of 1, 1/2, 1/2, 1/3, 1/3, 1/3, 1/4, ...
Rat series_prefix(int k) {
  Rat s(0);
  int t = 1, in_block = 0;
  for (int i = 0; i < k; ++i) {
    s += Rat(1, t);
    if (++in_block == t) {
      ++t;
      in_block = 0;
    }
  }
  return s;
}

struct Candidate {
  int x, y;  // swap x out, y in
};

// Depth-first search over monotone weakly separated paths. One instance per
// worker thread; shared_best is the monotone global maximum.
struct Dfs {
  int k, n;
  long long unit;                  // weight scale: lcm(1..n-1)
  long long strip_cap;             // per-strip weight cap, scaled by unit
  std::vector<long long> used;     // used weight per unit strip [i, i+1]
  std::vector<KSubset> path;
  KSubset target;
  bool prune_bound = true;
  std::atomic<long long>* shared_best = nullptr;
  std::mutex* witness_mu = nullptr;
  MonotonePath* witness = nullptr;

  const std::function<bool(const MonotonePath&)>* visitor = nullptr;
  long long paths_left = -1;
  std::mt19937* rng = nullptr;
  bool stopped = false;

  void add_arc(int x, int y, int sign) {
    long long piece = unit / (y - x) * sign;
    for (int s = x; s < y; ++s) used[s - 1] += piece;
  }

  // Future arcs live in [min(cur), n]; each strip holds at most the k-term
  // series weight, arcs have total weight 1 each.
  long long remaining_arc_bound() const {
    int lo = path.back().front();
    long long cap_sum = 0;
    for (int s = lo; s <= n - 1; ++s) cap_sum += std::max(0LL, strip_cap - used[s - 1]);
    return cap_sum / unit;
  }

  int needed_to_finish() const {
    const KSubset& cur = path.back();
    int cnt = 0;
    for (int v : cur)
      if (v < n - k + 1) ++cnt;
    return cnt;
  }

  std::vector<Candidate> candidates() const {
    const KSubset& cur = path.back();
    std::vector<Candidate> out;
    std::vector<bool> in_cur(n + 1, false);
    for (int v : cur) in_cur[v] = true;
    for (int x : cur)
      for (int y = x + 1; y <= n; ++y) {
        if (in_cur[y]) continue;
        KSubset next;
        next.reserve(k);
        for (int v : cur)
          if (v != x) next.push_back(v);
        next.insert(std::upper_bound(next.begin(), next.end(), y), y);
        bool ok = true;
        for (const auto& prev : path)
          if (!is_weakly_separated(prev, next)) {
            ok = false;
            break;
          }
        if (ok) out.push_back({x, y});
      }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      int da = a.y - a.x, db = b.y - b.x;
      if (da != db) return da < db;
      return a.x < b.x;
    });
    if (rng) std::shuffle(out.begin(), out.end(), *rng);
    return out;
  }

  void run() {
    if (stopped) return;
    const KSubset& cur = path.back();
    if (cur == target) {
      long long steps = static_cast<long long>(path.size()) - 1;
      if (visitor) {
        MonotonePath p;
        p.k = k;
        p.n = n;
        p.sets = path;
        if (!(*visitor)(p) || (paths_left > 0 && --paths_left == 0)) stopped = true;
      } else {
        long long prev = shared_best->load();
        while (steps > prev && !shared_best->compare_exchange_weak(prev, steps)) {
        }
        if (steps > prev) {
          std::lock_guard<std::mutex> lock(*witness_mu);
          if (steps >= shared_best->load()) {
            witness->k = k;
            witness->n = n;
            witness->sets = path;
          }
        }
      }
      return;  // no move leaves the top k-set
    }
    long long steps = static_cast<long long>(path.size()) - 1;
    long long room = remaining_arc_bound();
    if (room < needed_to_finish()) return;
    if (!visitor && prune_bound && steps + room <= shared_best->load()) return;
    for (const Candidate& c : candidates()) {
      KSubset next = cur;
      next.erase(std::find(next.begin(), next.end(), c.x));
      next.insert(std::upper_bound(next.begin(), next.end(), c.y), c.y);
      path.push_back(std::move(next));
      add_arc(c.x, c.y, +1);
      run();
      add_arc(c.x, c.y, -1);
      path.pop_back();
      if (stopped) return;
    }
  }
};

KSubset initial_set(int k) {
  KSubset s(k);
  std::iota(s.begin(), s.end(), 1);
  return s;
}

KSubset target_set(int k, int n) {
  KSubset s(k);
  std::iota(s.begin(), s.end(), n - k + 1);
  return s;
}

Dfs make_dfs(int k, int n) {
  Dfs d;
  d.k = k;
  d.n = n;
  d.unit = lcm_upto(n - 1);
  Rat cap = series_prefix(k) * d.unit;
  if (cap.denominator() != 1)
    throw InternalContradictionError("strip cap should be integral at scale lcm(1..n-1)");
  d.strip_cap = cap.numerator();
  d.used.assign(n - 1, 0);
  d.path.push_back(initial_set(k));
  d.target = target_set(k, n);
  return d;
}

// ---- weak order DP ----------------------------------------------------

struct LehmerCodec {
  int n;
  std::vector<long long> fact;
  explicit LehmerCodec(int n) : n(n), fact(n + 1, 1) {
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  }
  long long rank(const std::vector<int>& w) const {
    long long r = 0;
    for (int i = 0; i < n; ++i) {
      int c = 0;
      for (int j = i + 1; j < n; ++j)
        if (w[j] < w[i]) ++c;
      r += c * fact[n - 1 - i];
    }
    return r;
  }
  std::vector<int> decode(long long r) const {
    std::vector<int> avail(n);
    std::iota(avail.begin(), avail.end(), 1);
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) {
      long long f = fact[n - 1 - i];
      int c = static_cast<int>(r / f);
      r %= f;
      w[i] = avail[c];
      avail.erase(avail.begin() + c);
    }
    return w;
  }
};

}  // namespace

MonotonePath complement_reverse(const MonotonePath& p) {
  MonotonePath q;
  q.k = p.n - p.k;
  q.n = p.n;
  for (auto it = p.sets.rbegin(); it != p.sets.rend(); ++it) {
    KSubset comp;
    comp.reserve(q.k);
    size_t a = 0;
    for (int v = 1; v <= p.n; ++v) {
      if (a < it->size() && (*it)[a] == v) {
        ++a;
        continue;
      }
      comp.push_back(v);
    }
    q.sets.push_back(std::move(comp));
  }
  return q;
}

SearchResult max_multiplicity_path_dfs(int k, int n, const SearchOptions& opt) {
  if (k < 1 || k > n - 1) throw InvalidInputError("max_multiplicity needs 1 <= k <= n-1");
  int kstar = opt.use_symmetry ? std::min(k, n - k) : k;
  if (n > opt.dfs_n_cap || kstar > opt.dfs_k_cap)
    throw ResourceError("path-dfs caps exceeded (k* = " + std::to_string(kstar) +
                        ", n = " + std::to_string(n) + ")");

  std::atomic<long long> best{0};
  std::mutex witness_mu;
  MonotonePath witness;
  witness.k = kstar;
  witness.n = n;
  witness.sets = {initial_set(kstar)};

  Dfs root = make_dfs(kstar, n);
  root.prune_bound = opt.use_bound_prune;
  root.shared_best = &best;
  root.witness_mu = &witness_mu;
  root.witness = &witness;

  if (kstar == n || root.path.back() == root.target) {
    // degenerate: single-set path
  } else if (opt.jobs <= 1) {
    root.run();
  } else {
    auto first = root.candidates();
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t idx = next.fetch_add(1);
        if (idx >= first.size()) return;
        Dfs d = make_dfs(kstar, n);
        d.prune_bound = opt.use_bound_prune;
        d.shared_best = &best;
        d.witness_mu = &witness_mu;
        d.witness = &witness;
        const Candidate& c = first[idx];
        KSubset nxt = d.path.back();
        nxt.erase(std::find(nxt.begin(), nxt.end(), c.x));
        nxt.insert(std::upper_bound(nxt.begin(), nxt.end(), c.y), c.y);
        d.path.push_back(std::move(nxt));
        d.add_arc(c.x, c.y, +1);
        d.run();
      }
    };
    std::vector<std::thread> pool;
    int jobs = std::max(1, opt.jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SearchResult res;
  res.k = k;
  res.n = n;
  res.value = best.load();
  res.method = SearchMethod::path_dfs;
  res.path_witness = (kstar == k) ? witness : complement_reverse(witness);
  return res;
}

void enumerate_paths(int k, int n, const std::function<bool(const MonotonePath&)>& visit,
                     const EnumerateOptions& opt) {
  if (k < 1 || k > n - 1) throw InvalidInputError("enumerate_paths needs 1 <= k <= n-1");
  Dfs d = make_dfs(k, n);
  d.visitor = &visit;
  d.paths_left = opt.max_paths;
  std::mt19937 rng(opt.shuffle_seed);
  if (opt.shuffle_seed != 0) d.rng = &rng;
  d.run();
}

SearchResult max_multiplicity_weak_order_dp(int k, int n, DpMode mode,
                                            const SearchOptions& opt) {
  if (k < 1 || k > n - 1) throw InvalidInputError("max_multiplicity needs 1 <= k <= n-1");
  if (n > opt.dp_n_cap)
    throw ResourceError("weak-order dp cap exceeded (n = " + std::to_string(n) + " > " +
                        std::to_string(opt.dp_n_cap) + ")");

  LehmerCodec codec(n);
  long long total = codec.fact[n];
  int max_inv = n * (n - 1) / 2;

  // One pass to bucket ranks by inversion count (length level).
  std::vector<std::vector<int64_t>> levels(max_inv + 1);
  for (long long r = 0; r < total; ++r) {
    auto w = codec.decode(r);
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (w[i] > w[j]) ++inv;
    levels[inv].push_back(r);
  }

  const long long NONE = (mode == DpMode::min) ? INT64_MAX : INT64_MIN;
  std::vector<long long> dp(total, NONE);
  std::vector<int8_t> parent(total, -1);
  dp[0] = 0;  // identity has rank 0

  auto weight = [&](int letter) -> long long {
    if (mode == DpMode::max_pair) return (letter == k || letter == n - k) ? 1 : 0;
    return letter == k ? 1 : 0;
  };

  for (int level = 1; level <= max_inv; ++level) {
    for (long long r : levels[level]) {
      auto w = codec.decode(r);
      long long val = NONE;
      int8_t from = -1;
      for (int i = 1; i <= n - 1; ++i) {
        if (w[i - 1] <= w[i]) continue;  // need a right descent
        std::swap(w[i - 1], w[i]);
        long long pr = codec.rank(w);
        std::swap(w[i - 1], w[i]);
        long long cand = dp[pr];
        if (cand == NONE)
          throw InternalContradictionError("weak order level processed out of order");
        cand += weight(i);
        bool better = (mode == DpMode::min) ? cand < val : (val == NONE || cand > val);
        if (better) {
          val = cand;
          from = static_cast<int8_t>(i);
        }
      }
      dp[r] = val;
      parent[r] = from;
    }
  }

  long long w0r = codec.rank(longest_permutation(n).oneline);
  SearchResult res;
  res.k = k;
  res.n = n;
  res.value = dp[w0r];
  res.method = SearchMethod::weak_order_dp;

  Word word;
  word.n = n;
  std::vector<int> w = codec.decode(w0r);
  long long r = w0r;
  while (r != 0) {
    int i = parent[r];
    word.letters.push_back(i);
    std::swap(w[i - 1], w[i]);
    r = codec.rank(w);
  }
  std::reverse(word.letters.begin(), word.letters.end());
  res.word_witness = std::move(word);
  return res;
}

Rat series_upper_bound(int k, int n) {
  if (k < 1 || k > n - 1) throw InvalidInputError("series_upper_bound needs 1 <= k <= n-1");
  return series_prefix(k) * n;
}

double sqrt2k_bound(int k, int n) { return std::sqrt(2.0 * k) * n; }

BoundReport bound_report(int k, int n, long long value) {
  BoundReport b;
  b.series_bound = series_upper_bound(k, n);
  b.sqrt_bound = sqrt2k_bound(k, n);
  b.value = value;
  return b;
}

bool check_superadditivity(int k, int n, int m, const SearchOptions& opt) {
  if (!(k < n && n <= m)) throw InvalidInputError("check_superadditivity needs k < n <= m");
  if (n + m > opt.dfs_n_cap)
    throw ResourceError("superadditivity: n + m exceeds path-dfs cap");
  long long vn = max_multiplicity_path_dfs(k, n, opt).value;
  long long vm = max_multiplicity_path_dfs(k, m, opt).value;
  long long vnm = max_multiplicity_path_dfs(k, n + m, opt).value;
  return vn <= vm && vn + vm <= vnm;
}

}  // namespace redmax
