#include "redmax/arcdiag.hpp"

#include <algorithm>
#include <sstream>

#include "redmax/errors.hpp"

namespace redmax {

ArcDiagram build_arc_diagram(const MonotonePath& p) {
  PathCheck c = validate_path_detail(p);
  if (!c.ok) throw InvalidInputError("build_arc_diagram: invalid path: " + c.reason);
  ArcDiagram d;
  d.n = p.n;
  for (size_t i = 0; i + 1 < p.sets.size(); ++i) {
    StepDiff s = step_diff(p.sets[i], p.sets[i + 1]);
    auto [it, fresh] = d.arcs.insert({s.removed, s.added});
    if (!fresh)
      throw InternalContradictionError("duplicate arc from a valid path (wires crossing twice)");
  }
  return d;
}

Rat weight(const ArcDiagram& d, const Rat& lo, const Rat& hi) {
  if (lo < 1 || hi > d.n || lo > hi)
    throw InvalidInputError("weight: interval outside [1, n]");
  Rat total(0);
  for (const Arc& a : d.arcs) {
    Rat l = std::max(lo, Rat(a.first));
    Rat h = std::min(hi, Rat(a.second));
    if (h > l) total += (h - l) / Rat(a.second - a.first);
  }
  return total;
}

Rat weight_unit(const ArcDiagram& d, int i) { return weight(d, Rat(i), Rat(i + 1)); }

Rat wtlim_unit(int n, int i) {
  if (n < 6) throw InvalidInputError("wtlim is defined for n >= 6");
  if (i < 1 || i > n - 1) throw InvalidInputError("wtlim: unit interval outside [1, n]");
  if (i == 1 || i == n - 1) return Rat(1);
  if (i == 2 || i == n - 2) return Rat(3, 2);
  return Rat(11, 6);
}

Rat wtlim(int n, int a, int b) {
  if (a < 1 || b > n || a >= b) throw InvalidInputError("wtlim: bad interval");
  Rat s(0);
  for (int i = a; i < b; ++i) s += wtlim_unit(n, i);
  return s;
}

LhSegmentation segment_lh(const ArcDiagram& d) {
  const int n = d.n;
  std::vector<bool> exceed(n, false);  // exceed[i] for unit [i, i+1]
  for (int i = 1; i <= n - 1; ++i) exceed[i] = weight_unit(d, i) > wtlim_unit(n, i);
  LhSegmentation seg;
  int i = 1;
  while (i <= n - 1) {
    int j = i;
    bool e = exceed[i];
    while (j + 1 <= n - 1 && exceed[j + 1] == e) ++j;
    (e ? seg.H : seg.L).push_back({i, j + 1});
    i = j + 1;
  }
  return seg;
}

Decomposition decompose(const ArcDiagram& d) {
  Decomposition out;
  if (d.n < 4) throw InvalidInputError("decompose needs n >= 4");
  if (d.n < 6) return out;  // handled by symmetry before the algorithm applies
  const int n = d.n;

  LhSegmentation seg = segment_lh(d);
  if (seg.H.empty()) return out;

  // End units never exceed their limits (their vertices have bounded degree);
  // an exceeding end unit contradicts the theory.
  for (const auto& [a, b] : seg.H)
    if (a <= 2 || b >= n - 1)
      throw InternalContradictionError("exceeding unit interval at the boundary of [1, n]");

  auto add = [&out, n](int lo, int hi) {
    if (lo < 1 || hi > n)
      throw InternalContradictionError("decomposition interval outside [1, n]");
    out.intervals.push_back({lo, hi});
  };

  for (const auto& [a, b] : seg.H) {
    int mu = b - a;
    switch (mu) {
      case 4:
        add(a - 1, a + 2);
        add(a + 2, a + 5);
        break;
      case 3:
        if (!d.has_arc(a - 1, a))
          add(a - 1, a + 3);
        else
          add(a, a + 4);
        break;
      case 2:
        if (!d.has_arc(a - 1, a))
          add(a - 1, a + 2);
        else if (!d.has_arc(a + 2, a + 3))
          add(a, a + 3);
        else {
          add(a - 2, a + 1);
          add(a + 1, a + 4);
        }
        break;
      case 1:
        if (!d.has_arc(a - 1, a))
          add(a - 1, a + 1);
        else if (!d.has_arc(a + 1, a + 2))
          add(a, a + 2);
        else if (weight(d, Rat(a - 2), Rat(a + 1)) <= wtlim(n, a - 2, a + 1))
          add(a - 2, a + 1);
        else
          add(a, a + 3);
        break;
      default:
        throw InternalContradictionError("exceeding run of length " + std::to_string(mu) +
                                         " (> 4) in the arc diagram");
    }
  }
  return out;
}

bool check_consecutive_pair(const Arc& c1, const Arc& c2) {
  int a = c1.first, b = c1.second, c = c2.first, d = c2.second;
  if (a < b && b == c && c < d) return true;       // (i)
  if (c < d && d == a && a < b) return true;       // (ii)
  if (a < c && c < b && b < d) return true;        // (iii)
  if (c < a && a < d && d < b) return true;        // (iv)
  if (a < c && c < d && d < b) return true;        // (v)
  if (c < a && a < b && b < d) return true;        // (vi)
  return false;
}

bool check_consecutive_configurations(const MonotonePath& p) {
  PathCheck v = validate_path_detail(p);
  if (!v.ok) throw InvalidInputError("check_consecutive_configurations: " + v.reason);
  std::vector<Arc> cs;
  for (size_t i = 0; i + 1 < p.sets.size(); ++i) {
    StepDiff s = step_diff(p.sets[i], p.sets[i + 1]);
    cs.push_back({s.removed, s.added});
  }
  for (size_t j = 0; j + 1 < cs.size(); ++j)
    if (!check_consecutive_pair(cs[j], cs[j + 1])) return false;
  return true;
}

BicoloredArcDiagram build_bicolored(const MonotonePath& p) {
  if (p.k != 3) throw InvalidInputError("bicolored arc diagrams are defined for k = 3");
  PathCheck v = validate_path_detail(p);
  if (!v.ok) throw InvalidInputError("build_bicolored: invalid path: " + v.reason);

  BicoloredArcDiagram bd;
  bd.n = p.n;
  for (size_t i = 0; i + 1 < p.sets.size(); ++i) {
    StepDiff s = step_diff(p.sets[i], p.sets[i + 1]);
    bd.black.push_back({s.removed, s.added});
  }
  std::set<Arc> black_set(bd.black.begin(), bd.black.end());
  if (black_set.size() != bd.black.size())
    throw InternalContradictionError("duplicate black arc in bicolored diagram");

  auto add_red = [&](int u, int v2) {
    Arc e{std::min(u, v2), std::max(u, v2)};
    if (black_set.count(e) || bd.red.count(e))
      throw InternalContradictionError("bicolored diagram is not simple: duplicate edge (" +
                                       std::to_string(e.first) + "," + std::to_string(e.second) +
                                       ")");
    bd.red.insert(e);
  };
  for (size_t j = 0; j + 1 < bd.black.size(); ++j) {
    auto [a, b] = bd.black[j];
    auto [c, d] = bd.black[j + 1];
    if (b != c) add_red(b, c);
    if (a != d) add_red(a, d);
  }
  return bd;
}

namespace {

void svg_header(std::ostringstream& os, int n, int max_span) {
  const int scale = 40, margin = 30;
  int width = (n - 1) * scale + 2 * margin;
  int height = max_span * scale / 2 + 2 * margin + 20;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
}

void svg_arc(std::ostringstream& os, int i, int j, int base_y, const char* color) {
  const int scale = 40, margin = 30;
  double x1 = margin + (i - 1) * scale;
  double x2 = margin + (j - 1) * scale;
  double r = (x2 - x1) / 2.0;
  os << "  <path d=\"M " << x1 << " " << base_y << " A " << r << " " << r
     << " 0 0 1 " << x2 << " " << base_y << "\" fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1.5\"/>\n";
}

void svg_vertices(std::ostringstream& os, int n, int base_y) {
  const int scale = 40, margin = 30;
  for (int i = 1; i <= n; ++i) {
    double x = margin + (i - 1) * scale;
    os << "  <circle cx=\"" << x << "\" cy=\"" << base_y << "\" r=\"3\" fill=\"black\"/>\n";
    os << "  <text x=\"" << x << "\" y=\"" << base_y + 16
       << "\" text-anchor=\"middle\" font-size=\"12\">" << i << "</text>\n";
  }
}

}  // namespace

std::string render_svg(const ArcDiagram& d) {
  int max_span = 1;
  for (const Arc& a : d.arcs) max_span = std::max(max_span, a.second - a.first);
  std::ostringstream os;
  svg_header(os, d.n, max_span);
  int base_y = max_span * 20 + 30;
  for (const Arc& a : d.arcs) svg_arc(os, a.first, a.second, base_y, "black");
  svg_vertices(os, d.n, base_y);
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const BicoloredArcDiagram& d) {
  int max_span = 1;
  for (const Arc& a : d.black) max_span = std::max(max_span, a.second - a.first);
  for (const Arc& a : d.red) max_span = std::max(max_span, a.second - a.first);
  std::ostringstream os;
  svg_header(os, d.n, max_span);
  int base_y = max_span * 20 + 30;
  for (const Arc& a : d.black) svg_arc(os, a.first, a.second, base_y, "black");
  for (const Arc& a : d.red) svg_arc(os, a.first, a.second, base_y, "red");
  svg_vertices(os, d.n, base_y);
  os << "</svg>\n";
  return os.str();
}

}  // namespace redmax
