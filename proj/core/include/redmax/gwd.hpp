#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>

#include "redmax/path.hpp"
#include "redmax/patterns.hpp"
#include "redmax/rational.hpp"

namespace redmax {

// Level-to-rank permutation of the non-fallen wires, with the maximal
// identity tail trimmed; pi[h-1] = rank of the wire at level h.
using GwdPi = std::vector<int>;

struct GwdState {
  GwdPi pi;
  long long fallen = 0;      // f
  long long level_k = 0;     // kappa
};

struct Move {
  enum Kind { cross, fall } kind = cross;
  int level = 0;
  bool operator==(const Move&) const = default;
};

// pi(h) with the identity tail extended.
int pi_at(const GwdPi& pi, int h);
long long pi_inversions(const GwdPi& pi);
// positions taking part in at least one inversion (the NF bound quantity)
int pi_inversion_positions(const GwdPi& pi);
// S2: every position has fewer than k larger entries before it
bool pi_s2_ok(const GwdPi& pi, int k);

// Moves legal in a simple reduced diagram at state pi: crossings must be
// new inversions, adjacent ranks may only cross at level k, no wire may
// collect k larger crossings; falls take the suffix-minimal rank and their
// forced crossing with the successor rank must land on level k.
std::vector<Move> legal_moves(const GwdPi& pi, int k);
bool is_legal_move(const GwdPi& pi, const Move& m, int k);

struct MoveResult {
  GwdPi pi;
  int dkappa = 0;
  int dfall = 0;
};
MoveResult apply_move_pi(const GwdPi& pi, const Move& m, int k);  // throws if illegal
GwdState apply_move(const GwdState& s, const Move& m, int k);

struct PieceEdge {
  int from = 0;
  int to = 0;
  Move move;
  int dkappa = 0;
  int dfall = 0;
};

// T_k with one edge per legal simple move.
struct PieceGraph {
  int k = 0;
  std::vector<GwdPi> nodes;  // nodes[0] = identity
  std::vector<PieceEdge> edges;
  std::unordered_map<std::string, int> index;  // serialized pi -> node id
  int node_of(const GwdPi& pi) const;
};

struct TkOptions {
  long long node_limit = 4000000;
};

// BFS from the identity over legal simple moves. Asserts the NF bound and
// that crossings strictly increase inversions.
PieceGraph enumerate_Tk(int k, const TkOptions& opt = {});

struct RatioCycle {
  Rat ratio;
  std::vector<int> nodes;            // cycle nodes, entry first
  std::vector<PieceEdge> edges;      // cycle edges in order
  long long sum_dkappa = 0;
  long long sum_dfall = 0;
};

// Exact maximum of (sum dkappa)/(sum dfall) over directed cycles, by
// Stern-Brocot parametric search with positive-cycle detection on integer
// weights q*dkappa - p*dfall. Requires (and checks) that every cycle has
// at least one fall.
RatioCycle max_ratio_cycle(const PieceGraph& g);

// A concrete diagram as a move sequence; wire labels are implied by
// simulation (wires start at levels equal to their labels).
struct DiagramEvent {
  Move::Kind kind = Move::cross;
  int level = 0;
};
struct ExplicitDiagram {
  int k = 0;
  std::vector<DiagramEvent> events;
  std::optional<int> n_hint;
};

long long level_k_crossings(const ExplicitDiagram& d, int k);
// throws InvalidInputError if some pair of wires crosses twice
void check_reduced(const ExplicitDiagram& d);
bool is_reduced_diagram(const ExplicitDiagram& d);
bool is_simple_diagram(const ExplicitDiagram& d, int k);

// Rewrites a reduced diagram into a simple one with the same number of
// level-k crossings: S1 crossings are uncrossed, S1-violating falls are
// re-routed through the successor wire, S2-violating crossings become falls.
ExplicitDiagram simplify(const ExplicitDiagram& d, int k);

// Top-k label sets sampled at each level-k crossing, initial set prepended.
MonotonePath gwd_to_path(const ExplicitDiagram& d, int k);

// Uniformly random legal reduced (not necessarily simple) moves.
ExplicitDiagram random_reduced_diagram(std::mt19937& rng, int k, int steps, double fall_prob,
                                       int level_cap);

struct ExtractReport {
  long long prefix_falls = 0;   // > 0 only when no fall-free prefix exists
  int tail_start = 0;           // first sample index of the periodic tail
};

// Instantiates prefix + repeated optimal cycle, reads off the monotone path,
// and returns the periodic tail as a repeatable pattern with
// d = falls per cycle and delta_len = level-k crossings per cycle.
RepeatablePattern extract_repeatable_pattern(const PieceGraph& g, const RatioCycle& cycle,
                                             int k, ExtractReport* report = nullptr);

struct CkResult {
  int k = 0;
  bool exact = false;
  Rat value;        // meaningful when exact
  Rat lower;        // always valid bounds
  Rat upper;
  long long tk_nodes = 0;
  long long tk_edges = 0;
  std::optional<RatioCycle> cycle;
};

// c_k by T_k enumeration + max ratio cycle; degraded bracket when the
// state space exceeds the cap.
CkResult compute_ck(int k, const TkOptions& opt = {});

std::string serialize_pi(const GwdPi& pi);

}  // namespace redmax
