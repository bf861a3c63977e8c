#pragma once

#include <set>
#include <utility>
#include <vector>

#include "redmax/path.hpp"
#include "redmax/rational.hpp"

namespace redmax {

using Arc = std::pair<int, int>;  // (i, j), i < j

// Vertex set [n]; one arc per path step, recording the swapped pair.
struct ArcDiagram {
  int n = 0;
  std::set<Arc> arcs;
  bool has_arc(int i, int j) const { return arcs.count({i, j}) > 0; }
};

ArcDiagram build_arc_diagram(const MonotonePath& p);

// Weight above the interval [lo, hi]: each arc (i, j) spreads weight 1
// uniformly across its horizontal span, contributing |overlap| / (j - i).
Rat weight(const ArcDiagram& d, const Rat& lo, const Rat& hi);
Rat weight_unit(const ArcDiagram& d, int i);  // [i, i+1]

// Piecewise per-unit budget for the k = 3 regime (n >= 6):
// wtlim([1,2]) = wtlim([n-1,n]) = 1, wtlim([2,3]) = wtlim([n-2,n-1]) = 3/2,
// 11/6 in between; additive over an integer interval [a, b].
Rat wtlim(int n, int a, int b);
Rat wtlim_unit(int n, int i);

struct Decomposition {
  std::vector<std::pair<int, int>> intervals;  // closed integer intervals
};

// The [1,n] = L0 H1 L1 ... Lm segmentation by whether a unit interval
// exceeds its weight limit. H runs exceed, L runs do not.
struct LhSegmentation {
  std::vector<std::pair<int, int>> L;
  std::vector<std::pair<int, int>> H;
};
LhSegmentation segment_lh(const ArcDiagram& d);

// The case-by-case decomposition of exceeding runs into covering intervals,
// each under its weight limit and pairwise non-overlapping. Defined to
// return the empty collection for n in {4, 5}.
Decomposition decompose(const ArcDiagram& d);

// Black arcs in path order (the C-sequence) plus red arcs recording the
// crossings between consecutive C-sequence steps. Simple as a multigraph.
struct BicoloredArcDiagram {
  int n = 0;
  std::vector<Arc> black;  // C_1, ..., C_N in order
  std::set<Arc> red;
};

BicoloredArcDiagram build_bicolored(const MonotonePath& p);

// Each consecutive C-sequence pair must land in one of the six allowed
// relative positions; false if any forbidden configuration shows up.
bool check_consecutive_configurations(const MonotonePath& p);
bool check_consecutive_pair(const Arc& c1, const Arc& c2);

std::string render_svg(const ArcDiagram& d);
std::string render_svg(const BicoloredArcDiagram& d);

}  // namespace redmax
