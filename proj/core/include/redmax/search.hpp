#pragma once

#include <functional>
#include <optional>

#include "redmax/path.hpp"
#include "redmax/rational.hpp"

namespace redmax {

enum class SearchMethod { path_dfs, weak_order_dp };
enum class DpMode { max, min, max_pair };

struct SearchOptions {
  bool use_bound_prune = true;  // admissible capacity bound; exhaustive when off
  bool use_symmetry = true;     // search with min(k, n-k)
  int jobs = 1;                 // top-level DFS fan-out
  int dfs_k_cap = 5;
  int dfs_n_cap = 14;
  int dp_n_cap = 9;
};

struct SearchResult {
  int k = 0;
  int n = 0;
  long long value = 0;
  SearchMethod method = SearchMethod::path_dfs;
  std::optional<MonotonePath> path_witness;  // path-dfs
  std::optional<Word> word_witness;          // weak-order-dp
};

// M(k,n) as the longest monotone weakly separated path from {1..k} to
// {n-k+1..n}, by depth-first search with whole-collection pruning.
SearchResult max_multiplicity_path_dfs(int k, int n, const SearchOptions& opt = {});

// Independent oracle: weighted longest/shortest maximal chain in the right
// weak order of S_n. mode max gives M(k,n); min the minimum s_k count;
// max_pair weighs letters in {k, n-k} and gives Mbar(k,n).
SearchResult max_multiplicity_weak_order_dp(int k, int n, DpMode mode,
                                            const SearchOptions& opt = {});

// n * (first k terms of 1 + 1/2 + 1/2 + 1/3 + 1/3 + 1/3 + ...), exact.
Rat series_upper_bound(int k, int n);

double sqrt2k_bound(int k, int n);

struct BoundReport {
  Rat series_bound;
  double sqrt_bound = 0.0;
  long long value = 0;
};
BoundReport bound_report(int k, int n, long long value);

// Monotonicity M(k,n) <= M(k,m) and superadditivity
// M(k,n) + M(k,m) <= M(k,n+m), all three values computed by path-dfs.
bool check_superadditivity(int k, int n, int m, const SearchOptions& opt = {});

struct EnumerateOptions {
  long long max_paths = -1;   // < 0: unlimited
  unsigned shuffle_seed = 0;  // != 0: shuffle candidate order per node
};

// Visits every complete monotone weakly separated path from {1..k} to
// {n-k+1..n} (no symmetry reduction). Visitor returns false to stop early.
void enumerate_paths(int k, int n, const std::function<bool(const MonotonePath&)>& visit,
                     const EnumerateOptions& opt = {});

// Order-reversed complementation: a bijection between paths for k and n-k.
MonotonePath complement_reverse(const MonotonePath& p);

}  // namespace redmax
