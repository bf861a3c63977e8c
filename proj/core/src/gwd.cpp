#include "redmax/gwd.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "redmax/errors.hpp"

namespace redmax {

// ---- pi state helpers --------------------------------------------------

int pi_at(const GwdPi& pi, int h) {
  return h <= static_cast<int>(pi.size()) ? pi[h - 1] : h;
}

long long pi_inversions(const GwdPi& pi) {
  long long inv = 0;
  for (size_t i = 0; i < pi.size(); ++i)
    for (size_t j = i + 1; j < pi.size(); ++j)
      if (pi[i] > pi[j]) ++inv;
  return inv;
}

int pi_inversion_positions(const GwdPi& pi) {
  int cnt = 0;
  for (size_t i = 0; i < pi.size(); ++i) {
    bool has = false;
    for (size_t j = 0; j < pi.size() && !has; ++j) {
      if (j < i && pi[j] > pi[i]) has = true;
      if (j > i && pi[j] < pi[i]) has = true;
    }
    if (has) ++cnt;
  }
  return cnt;
}

bool pi_s2_ok(const GwdPi& pi, int k) {
  for (size_t i = 0; i < pi.size(); ++i) {
    int larger = 0;
    for (size_t j = 0; j < i; ++j)
      if (pi[j] > pi[i]) ++larger;
    if (larger > k - 1) return false;
  }
  return true;
}

std::string serialize_pi(const GwdPi& pi) {
  std::string s;
  s.reserve(pi.size());
  for (int v : pi) s.push_back(static_cast<char>(v));
  return s;
}

namespace {

void trim_tail(GwdPi& pi) {
  while (!pi.empty() && pi.back() == static_cast<int>(pi.size())) pi.pop_back();
}

// count of positions j < h with pi(j) > value
int larger_above(const GwdPi& pi, int h, int value) {
  int cnt = 0;
  for (int j = 1; j < h; ++j)
    if (pi_at(pi, j) > value) ++cnt;
  return cnt;
}

}  // namespace

bool is_legal_move(const GwdPi& pi, const Move& m, int k) {
  const int len = static_cast<int>(pi.size());
  const int h = m.level;
  if (h < 1) return false;
  if (m.kind == Move::cross) {
    int a = pi_at(pi, h), b = pi_at(pi, h + 1);
    if (a > b) return false;                  // would cross the same pair twice
    if (h != k && b == a + 1) return false;   // S1: adjacent ranks only at level k
    if (larger_above(pi, h, a) + 1 > k - 1) return false;  // S2 for the sinking wire
    return true;
  }
  // fall
  int a = pi_at(pi, h);
  for (int j = h + 1; j <= len; ++j)
    if (pi[j - 1] < a) return false;  // fall must not re-cross anything below
  // S1 for the forced crossing with the successor rank, when it sits below
  int jstar = 0;
  if (a + 1 <= len) {
    for (int j = 1; j <= len; ++j)
      if (pi[j - 1] == a + 1) {
        jstar = j;
        break;
      }
    if (jstar == 0) jstar = a + 1;  // not stored => identity tail
  } else {
    jstar = a + 1;
  }
  if (jstar > h && jstar - 1 != k) return false;
  return true;
}

std::vector<Move> legal_moves(const GwdPi& pi, int k) {
  const int len = static_cast<int>(pi.size());
  std::vector<Move> out;
  std::vector<int> levels;
  for (int h = 1; h <= len; ++h) levels.push_back(h);
  if (k > len) levels.push_back(k);
  for (int h : levels) {
    Move c{Move::cross, h};
    if (is_legal_move(pi, c, k)) out.push_back(c);
  }
  for (int h : levels) {
    Move f{Move::fall, h};
    if (is_legal_move(pi, f, k)) out.push_back(f);
  }
  return out;
}

MoveResult apply_move_pi(const GwdPi& pi, const Move& m, int k) {
  if (!is_legal_move(pi, m, k))
    throw InvalidInputError("illegal move at level " + std::to_string(m.level));
  MoveResult r;
  const int h = m.level;
  if (m.kind == Move::cross) {
    GwdPi next = pi;
    while (static_cast<int>(next.size()) < h + 1)
      next.push_back(static_cast<int>(next.size()) + 1);
    std::swap(next[h - 1], next[h]);
    trim_tail(next);
    r.pi = std::move(next);
    r.dkappa = (h == k) ? 1 : 0;
    r.dfall = 0;
    return r;
  }
  GwdPi next = pi;
  while (static_cast<int>(next.size()) < h)
    next.push_back(static_cast<int>(next.size()) + 1);
  int a = next[h - 1];
  next.erase(next.begin() + (h - 1));
  for (int& v : next)
    if (v > a) --v;
  trim_tail(next);
  r.pi = std::move(next);
  r.dkappa = (h <= k) ? 1 : 0;  // the falling wire meets level k exactly once
  r.dfall = 1;
  return r;
}

GwdState apply_move(const GwdState& s, const Move& m, int k) {
  MoveResult r = apply_move_pi(s.pi, m, k);
  GwdState out;
  out.pi = std::move(r.pi);
  out.fallen = s.fallen + r.dfall;
  out.level_k = s.level_k + r.dkappa;
  return out;
}

// ---- T_k enumeration ---------------------------------------------------

int PieceGraph::node_of(const GwdPi& pi) const {
  auto it = index.find(serialize_pi(pi));
  return it == index.end() ? -1 : it->second;
}

namespace {

PieceGraph enumerate_tk_impl(int k, const TkOptions& opt, bool* complete) {
  if (k < 1) throw InvalidInputError("enumerate_Tk needs k >= 1");
  PieceGraph g;
  g.k = k;
  const long long nf_bound = static_cast<long long>(k) * k + 2 * k;
  GwdPi id;
  g.nodes.push_back(id);
  g.index[serialize_pi(id)] = 0;
  std::deque<int> queue{0};
  *complete = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    GwdPi pi = g.nodes[u];
    if (!pi_s2_ok(pi, k))
      throw InternalContradictionError("reachable state violates the S2 invariant");
    if (pi_inversion_positions(pi) > nf_bound)
      throw InternalContradictionError("reachable state exceeds the k^2+2k position bound");
    for (const Move& m : legal_moves(pi, k)) {
      MoveResult r = apply_move_pi(pi, m, k);
      if (m.kind == Move::cross && pi_inversions(r.pi) != pi_inversions(pi) + 1)
        throw InternalContradictionError("crossing did not increase inversions by one");
      std::string key = serialize_pi(r.pi);
      auto it = g.index.find(key);
      int v;
      if (it == g.index.end()) {
        if (static_cast<long long>(g.nodes.size()) >= opt.node_limit) {
          *complete = false;
          continue;  // record the edge target as unexplored? skip entirely
        }
        v = static_cast<int>(g.nodes.size());
        g.nodes.push_back(r.pi);
        g.index.emplace(std::move(key), v);
        queue.push_back(v);
      } else {
        v = it->second;
      }
      g.edges.push_back({u, v, m, r.dkappa, r.dfall});
    }
  }
  return g;
}

}  // namespace

PieceGraph enumerate_Tk(int k, const TkOptions& opt) {
  bool complete = true;
  PieceGraph g = enumerate_tk_impl(k, opt, &complete);
  if (!complete)
    throw ResourceError("T_k node limit " + std::to_string(opt.node_limit) + " exceeded");
  return g;
}

// ---- max ratio cycle ---------------------------------------------------

namespace {

struct RatioSearch {
  const PieceGraph& g;
  int V;
  std::vector<int> order;                  // nodes by inversion count: cross-edge topological
  std::vector<std::vector<int>> out;       // edge ids by source
  std::vector<long long> dist;

  explicit RatioSearch(const PieceGraph& graph) : g(graph) {
    V = static_cast<int>(g.nodes.size());
    order.resize(V);
    std::iota(order.begin(), order.end(), 0);
    std::vector<long long> inv(V);
    for (int i = 0; i < V; ++i) inv[i] = pi_inversions(g.nodes[i]);
    std::stable_sort(order.begin(), order.end(),
                     [&inv](int a, int b) { return inv[a] < inv[b]; });
    out.assign(V, {});
    for (size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].from].push_back(static_cast<int>(e));
  }

  long long weight(const PieceEdge& e, long long p, long long q) const {
    return q * e.dkappa - p * e.dfall;
  }

  // Does some cycle have positive total weight q*dkappa - p*dfall, i.e.
  // ratio > p/q? Bellman-Ford with nodes relaxed in inversion order, so
  // fall-free chains settle in one sweep.
  bool positive_cycle(long long p, long long q) {
    dist.assign(V, 0);
    long long gain_cap = 0;
    for (const auto& e : g.edges) gain_cap += std::max(weight(e, p, q), 0LL);
    for (int round = 0; round <= V; ++round) {
      bool changed = false;
      for (int u : order) {
        long long du = dist[u];
        for (int eid : out[u]) {
          const PieceEdge& e = g.edges[eid];
          long long cand = du + weight(e, p, q);
          if (cand > dist[e.to]) {
            dist[e.to] = cand;
            changed = true;
            if (cand > gain_cap) return true;  // longer than any simple path
          }
        }
        du = dist[u];
      }
      if (!changed) return false;
    }
    return true;
  }

  // With no positive cycle at p/q, zero-weight cycles live exactly in the
  // subgraph of tight edges of the converged potentials.
  std::optional<RatioCycle> zero_cycle(long long p, long long q) {
    if (positive_cycle(p, q))
      throw InternalContradictionError("zero_cycle called with a positive cycle present");
    // dist[] is converged here.
    std::vector<std::vector<int>> tight(V);
    for (size_t e = 0; e < g.edges.size(); ++e) {
      const PieceEdge& pe = g.edges[e];
      if (dist[pe.from] + weight(pe, p, q) == dist[pe.to])
        tight[pe.from].push_back(static_cast<int>(e));
    }
    std::vector<int> color(V, 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> stack, estack;
    std::function<std::optional<RatioCycle>(int)> dfs =
        [&](int u) -> std::optional<RatioCycle> {
      color[u] = 1;
      stack.push_back(u);
      for (int eid : tight[u]) {
        int v = g.edges[eid].to;
        if (color[v] == 1) {
          RatioCycle rc;
          rc.ratio = Rat(p, q == 0 ? 1 : q);
          auto it = std::find(stack.begin(), stack.end(), v);
          size_t start = it - stack.begin();
          for (size_t i = start; i < stack.size(); ++i) {
            rc.nodes.push_back(stack[i]);
            rc.edges.push_back(g.edges[i < stack.size() - 1 ? estack[i] : eid]);
          }
          for (const auto& e : rc.edges) {
            rc.sum_dkappa += e.dkappa;
            rc.sum_dfall += e.dfall;
          }
          return rc;
        }
        if (color[v] == 0) {
          estack.push_back(eid);
          auto found = dfs(v);
          if (found) return found;
          estack.pop_back();
        }
      }
      color[u] = 2;
      stack.pop_back();
      return std::nullopt;
    };
    for (int u = 0; u < V; ++u)
      if (color[u] == 0) {
        auto found = dfs(u);
        if (found) return found;
      }
    return std::nullopt;
  }
};

}  // namespace

RatioCycle max_ratio_cycle(const PieceGraph& g) {
  if (g.nodes.empty()) throw InvalidInputError("max_ratio_cycle on empty graph");
  // Reducedness analysis: crossings strictly increase inversions, so a
  // cycle with no falls is impossible.
  for (const auto& e : g.edges)
    if (e.dfall == 0 && pi_inversions(g.nodes[e.to]) <= pi_inversions(g.nodes[e.from]))
      throw InternalContradictionError("fall-free edge without inversion increase");

  RatioSearch rs(g);

  if (!rs.positive_cycle(0, 1)) {
    auto zc = rs.zero_cycle(0, 1);
    if (!zc) throw InternalContradictionError("piece graph has no directed cycle");
    return *zc;
  }

  long long ap = 0, aq = 1;  // lower: ratio > ap/aq holds
  long long cp = 1, cq = 0;  // upper: no cycle ratio exceeds cp/cq
  const int max_iter = 20000;
  for (int iter = 0; iter < max_iter; ++iter) {
    long long mp = ap + cp, mq = aq + cq;
    if (rs.positive_cycle(mp, mq)) {
      // advance the lower endpoint with doubling along (ap + t*cp)/(aq + t*cq)
      long long t = 1;
      while (rs.positive_cycle(ap + 2 * t * cp, aq + 2 * t * cq)) t *= 2;
      long long lo = t, hi = 2 * t;  // positive at lo, not positive at hi
      while (lo + 1 < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (rs.positive_cycle(ap + mid * cp, aq + mid * cq))
          lo = mid;
        else
          hi = mid;
      }
      ap = ap + lo * cp;
      aq = aq + lo * cq;
      long long np = ap + cp, nq = aq + cq;
      auto zc = rs.zero_cycle(np, nq);
      if (zc) return *zc;
      cp = np;
      cq = nq;
    } else {
      auto zc = rs.zero_cycle(mp, mq);
      if (zc) return *zc;
      cp = mp;
      cq = mq;
    }
  }
  throw InternalContradictionError("ratio search did not converge");
}

// ---- explicit diagrams -------------------------------------------------

namespace {

// Step-by-step simulation with absolute labels. Levels hold the non-fallen
// materialized wires; untouched wires are materialized on demand with
// ascending labels.
struct Sim {
  std::vector<int> labels;          // labels[h-1] = wire at level h
  int next_label = 1;
  std::vector<char> fallen;         // by label, 1-based
  std::vector<int> larger_crossings;  // per label: crossings with larger labels

  void ensure_level(int h) {
    while (static_cast<int>(labels.size()) < h) labels.push_back(next_label++);
  }
  void ensure_label(int lab) {
    if (static_cast<int>(fallen.size()) < lab + 1) {
      fallen.resize(lab + 1, 0);
      larger_crossings.resize(lab + 1, 0);
    }
  }

  bool adjacent_mod_fallen(int a, int b) const {  // a < b
    for (int c = a + 1; c < b; ++c)
      if (c >= next_label || !fallen[c]) return false;
    return true;
  }

  // smallest non-fallen label > a and its level; level is labels.size()+1
  // when the successor is not yet materialized
  std::pair<int, int> successor_of(int a) const {
    for (int c = a + 1; c < next_label; ++c) {
      if (c < static_cast<int>(fallen.size()) && fallen[c]) continue;
      for (size_t j = 0; j < labels.size(); ++j)
        if (labels[j] == c) return {c, static_cast<int>(j) + 1};
    }
    return {next_label, static_cast<int>(labels.size()) + 1};
  }
};

struct Violation {
  enum Type { none, s1_cross, s2_cross, s1_fall } type = none;
  size_t event = 0;
  int jstar = 0;          // successor level for s1_fall
  bool tail_fall = false; // the faller and everything below were untouched
};

// Simulates d, reporting the first simplicity violation. Throws
// InvalidInputError on a reducedness violation. When run_to_end, also
// fills kappa/samples.
struct ScanResult {
  Violation violation;
  long long kappa = 0;
  std::vector<KSubset> samples;
};

ScanResult scan_diagram(const ExplicitDiagram& d, int k, bool stop_at_violation,
                        bool collect_samples) {
  ScanResult res;
  Sim sim;
  sim.ensure_label(1);
  if (collect_samples) {
    sim.ensure_level(k);
    KSubset s(sim.labels.begin(), sim.labels.begin() + k);
    std::sort(s.begin(), s.end());
    res.samples.push_back(s);
  }
  for (size_t idx = 0; idx < d.events.size(); ++idx) {
    const DiagramEvent& ev = d.events[idx];
    const int h = ev.level;
    if (h < 1) throw InvalidInputError("event level must be >= 1");
    int touched = static_cast<int>(sim.labels.size());
    if (ev.kind == Move::cross) {
      sim.ensure_level(h + 1);
      int a = sim.labels[h - 1], b = sim.labels[h];
      sim.ensure_label(std::max(a, b));
      if (a > b)
        throw InvalidInputError("not reduced: wires " + std::to_string(b) + "," +
                                std::to_string(a) + " cross twice (event " +
                                std::to_string(idx) + ")");
      if (res.violation.type == Violation::none) {
        if (h != k && sim.adjacent_mod_fallen(a, b)) {
          res.violation = {Violation::s1_cross, idx, 0, false};
        } else if (sim.larger_crossings[a] + 1 >= k) {
          res.violation = {Violation::s2_cross, idx, 0, false};
        }
        if (res.violation.type != Violation::none && stop_at_violation) return res;
      }
      sim.larger_crossings[a] += 1;
      std::swap(sim.labels[h - 1], sim.labels[h]);
      if (h == k) {
        ++res.kappa;
        if (collect_samples) {
          sim.ensure_level(k);
          KSubset s(sim.labels.begin(), sim.labels.begin() + k);
          std::sort(s.begin(), s.end());
          res.samples.push_back(s);
        }
      }
    } else {
      bool tail = h > touched;
      sim.ensure_level(h);
      int a = sim.labels[h - 1];
      sim.ensure_label(a);
      for (size_t j = h; j < sim.labels.size(); ++j)
        if (sim.labels[j] < a)
          throw InvalidInputError("not reduced: fall at level " + std::to_string(h) +
                                  " re-crosses wire " + std::to_string(sim.labels[j]) +
                                  " (event " + std::to_string(idx) + ")");
      if (res.violation.type == Violation::none) {
        auto [succ, jstar] = sim.successor_of(a);
        (void)succ;
        if (jstar > h && jstar - 1 != k) {
          res.violation = {Violation::s1_fall, idx, jstar, tail};
          if (stop_at_violation) return res;
        }
      }
      sim.fallen[a] = 1;
      sim.labels.erase(sim.labels.begin() + (h - 1));
      if (h <= k) {
        ++res.kappa;
        if (collect_samples) {
          sim.ensure_level(k);
          KSubset s(sim.labels.begin(), sim.labels.begin() + k);
          std::sort(s.begin(), s.end());
          res.samples.push_back(s);
        }
      }
    }
  }
  return res;
}

}  // namespace

long long level_k_crossings(const ExplicitDiagram& d, int k) {
  long long kappa = 0;
  for (const auto& ev : d.events) {
    if (ev.kind == Move::cross && ev.level == k) ++kappa;
    if (ev.kind == Move::fall && ev.level <= k) ++kappa;
  }
  return kappa;
}

void check_reduced(const ExplicitDiagram& d) { scan_diagram(d, 1, false, false); }

bool is_reduced_diagram(const ExplicitDiagram& d) {
  try {
    check_reduced(d);
    return true;
  } catch (const InvalidInputError&) {
    return false;
  }
}

bool is_simple_diagram(const ExplicitDiagram& d, int k) {
  return scan_diagram(d, k, true, false).violation.type == Violation::none;
}

ExplicitDiagram simplify(const ExplicitDiagram& d, int k) {
  check_reduced(d);
  const long long kappa_before = level_k_crossings(d, k);
  ExplicitDiagram cur = d;
  cur.k = k;
  const size_t cap = 500 + 60 * d.events.size() + 12 * d.events.size() * d.events.size();
  for (size_t iter = 0; iter < cap; ++iter) {
    ScanResult sc = scan_diagram(cur, k, true, false);
    if (sc.violation.type == Violation::none) {
      if (level_k_crossings(cur, k) != kappa_before)
        throw InternalContradictionError("simplify changed the level-k crossing count");
      if (!is_reduced_diagram(cur))
        throw InternalContradictionError("simplify produced a non-reduced diagram");
      return cur;
    }
    const size_t at = sc.violation.event;
    const int h = cur.events[at].level;
    std::vector<DiagramEvent> next(cur.events.begin(), cur.events.begin() + at);
    switch (sc.violation.type) {
      case Violation::s1_cross:
        // uncross: the intermediate wires have fallen, so nothing can
        // cross the pair again
        break;
      case Violation::s2_cross:
        // the wire collecting its k-th larger crossing falls instead; it
        // sits at level >= k here, so the level-k count is unchanged
        if (h < k)
          throw InternalContradictionError("S2 violation below level k");
        next.push_back({Move::fall, h});
        break;
      case Violation::s1_fall: {
        int jstar = sc.violation.jstar;
        if (sc.violation.tail_fall && h > k) {
          // untouched wire falling below level k: contributes nothing and
          // interacts with nothing distinguishable; drop it
          break;
        }
        // walk the faller down to the successor, then let the successor
        // fall in its place
        for (int l = h; l <= jstar - 2; ++l) next.push_back({Move::cross, l});
        next.push_back({Move::fall, jstar});
        break;
      }
      default:
        throw InternalContradictionError("unknown violation");
    }
    next.insert(next.end(), cur.events.begin() + at + 1, cur.events.end());
    cur.events = std::move(next);
  }
  throw InternalContradictionError("simplify did not terminate within its rewrite budget");
}

MonotonePath gwd_to_path(const ExplicitDiagram& d, int k) {
  if (k < 1) throw InvalidInputError("gwd_to_path needs k >= 1");
  ScanResult sc = scan_diagram(d, k, false, true);
  MonotonePath p;
  p.k = k;
  int n = k;
  for (const auto& s : sc.samples) n = std::max(n, s.back());
  p.n = n;
  p.sets = sc.samples;
  PathCheck c = validate_path_detail(p);
  if (!c.ok)
    throw InternalContradictionError("top-k sets of a reduced diagram are not a valid path: " +
                                     c.reason);
  return p;
}

ExplicitDiagram random_reduced_diagram(std::mt19937& rng, int k, int steps, double fall_prob,
                                       int level_cap) {
  ExplicitDiagram d;
  d.k = k;
  Sim sim;
  auto legal_falls = [&]() {
    std::vector<int> out;
    int len = static_cast<int>(sim.labels.size());
    for (int h = 1; h <= std::min(len + 1, level_cap); ++h) {
      if (h > len) {
        out.push_back(h);  // untouched wire, trivially smallest below
        continue;
      }
      int a = sim.labels[h - 1];
      bool ok = true;
      for (int j = h; j < len && ok; ++j)
        if (sim.labels[j] < a) ok = false;
      if (ok) out.push_back(h);
    }
    return out;
  };
  auto legal_crosses = [&]() {
    std::vector<int> out;
    int len = static_cast<int>(sim.labels.size());
    for (int h = 1; h + 1 <= std::min(len + 1, level_cap) + 1 && h < level_cap; ++h) {
      int a = h <= len ? sim.labels[h - 1] : (sim.next_label + (h - len - 1));
      int b = h + 1 <= len ? sim.labels[h] : (sim.next_label + (h - len));
      if (a < b) out.push_back(h);
    }
    return out;
  };
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int s = 0; s < steps; ++s) {
    bool want_fall = coin(rng) < fall_prob;
    std::vector<int> falls = legal_falls();
    std::vector<int> crosses = legal_crosses();
    std::vector<int>* pick = want_fall ? &falls : &crosses;
    if (pick->empty()) pick = want_fall ? &crosses : &falls;
    if (pick->empty()) break;
    int h = (*pick)[std::uniform_int_distribution<size_t>(0, pick->size() - 1)(rng)];
    bool is_fall = (pick == &falls);
    d.events.push_back({is_fall ? Move::fall : Move::cross, h});
    if (is_fall) {
      sim.ensure_level(h);
      int a = sim.labels[h - 1];
      sim.ensure_label(a);
      sim.fallen[a] = 1;
      sim.labels.erase(sim.labels.begin() + (h - 1));
    } else {
      sim.ensure_level(h + 1);
      int a = sim.labels[h - 1];
      sim.ensure_label(std::max(a, sim.labels[h]));
      sim.larger_crossings[a] += 1;
      std::swap(sim.labels[h - 1], sim.labels[h]);
    }
  }
  return d;
}

RepeatablePattern extract_repeatable_pattern(const PieceGraph& g, const RatioCycle& cycle,
                                             int k, ExtractReport* report) {
  if (cycle.nodes.empty()) throw InvalidInputError("empty cycle");
  const int entry = cycle.nodes.front();

  // fall-free prefix from the identity to the cycle entry state
  auto bfs_prefix = [&](bool crossings_only) -> std::optional<std::vector<PieceEdge>> {
    std::vector<int> parent_edge(g.nodes.size(), -1);
    std::vector<char> seen(g.nodes.size(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      if (u == entry) break;
      for (size_t e = 0; e < g.edges.size(); ++e) {
        const PieceEdge& pe = g.edges[e];
        if (pe.from != u) continue;
        if (crossings_only && pe.dfall != 0) continue;
        if (!seen[pe.to]) {
          seen[pe.to] = 1;
          parent_edge[pe.to] = static_cast<int>(e);
          q.push_back(pe.to);
        }
      }
    }
    if (!seen[entry]) return std::nullopt;
    std::vector<PieceEdge> path;
    int v = entry;
    while (v != 0) {
      const PieceEdge& pe = g.edges[parent_edge[v]];
      path.push_back(pe);
      v = pe.from;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::optional<std::vector<PieceEdge>> prefix = bfs_prefix(true);
  long long prefix_falls = 0;
  if (!prefix) {
    prefix = bfs_prefix(false);
    if (!prefix)
      throw InternalContradictionError("cycle entry unreachable from the identity");
    for (const auto& e : *prefix) prefix_falls += e.dfall;
  }

  ExplicitDiagram diag;
  diag.k = k;
  long long prefix_kappa = 0;
  for (const auto& e : *prefix) {
    diag.events.push_back({e.move.kind, e.move.level});
    prefix_kappa += e.dkappa;
  }
  const int copies = 3;
  for (int c = 0; c < copies; ++c)
    for (const auto& e : cycle.edges) diag.events.push_back({e.move.kind, e.move.level});

  MonotonePath path = gwd_to_path(diag, k);
  const long long L = cycle.sum_dkappa;
  const long long dshift = cycle.sum_dfall;
  if (L <= 0 || dshift <= 0)
    throw InternalContradictionError("optimal cycle without crossings or falls");

  const long long total = static_cast<long long>(path.sets.size());
  auto shifted_eq = [&](long long j) {
    const KSubset& a = path.sets[j];
    const KSubset& b = path.sets[j + L];
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] + dshift != b[i]) return false;
    return true;
  };
  long long r0 = -1;
  for (long long cand = 0; cand + L < total && cand <= prefix_kappa + L; ++cand) {
    bool ok = true;
    for (long long j = cand; j + L < total && ok; ++j)
      if (!shifted_eq(j)) ok = false;
    if (ok) {
      r0 = cand;
      break;
    }
  }
  if (r0 < 0)
    throw InternalContradictionError("no periodic tail found in the instantiated diagram");

  RepeatablePattern r;
  r.base.k = k;
  r.base.sets.assign(path.sets.begin() + r0, path.sets.begin() + r0 + L + 1);
  int n = 0;
  for (const auto& s : r.base.sets) n = std::max(n, s.back());
  r.base.n = n;
  r.d = static_cast<int>(dshift);
  if (!is_repeatable(r.base, r.d))
    throw InternalContradictionError("extracted periodic tail is not repeatable");
  if (density(r) != cycle.ratio)
    throw InternalContradictionError("extracted pattern density differs from the cycle ratio");
  if (report) {
    report->prefix_falls = prefix_falls;
    report->tail_start = static_cast<int>(r0);
  }
  return r;
}

CkResult compute_ck(int k, const TkOptions& opt) {
  CkResult res;
  res.k = k;
  bool complete = true;
  PieceGraph g = enumerate_tk_impl(k, opt, &complete);
  res.tk_nodes = static_cast<long long>(g.nodes.size());
  res.tk_edges = static_cast<long long>(g.edges.size());

  std::optional<RatioCycle> cyc;
  try {
    cyc = max_ratio_cycle(g);
  } catch (const InternalContradictionError&) {
    if (complete) throw;
  }

  if (complete) {
    res.exact = true;
    res.value = cyc->ratio;
    res.lower = res.upper = cyc->ratio;
    res.cycle = std::move(cyc);
    return res;
  }

  // Degraded: cycles of the explored subgraph are genuine, so they give a
  // lower bound; the series strip bound caps c_k from above.
  res.exact = false;
  res.lower = Rat(0);
  if (cyc) res.lower = cyc->ratio;
  if (k <= 3) {
    Rat builtin = density(builtin_family(k).pattern);
    if (builtin > res.lower) res.lower = builtin;
  }
  res.upper = series_upper_bound(k, k + 1) / (k + 1);
  if (cyc) res.cycle = std::move(cyc);
  return res;
}

}  // namespace redmax
