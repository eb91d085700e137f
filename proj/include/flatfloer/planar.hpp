#pragma once

// Complementary regions of a curve arrangement on a flat surface, computed
// exactly. The chart is cut into trapezoid cells by vertical walls at every
// endpoint and crossing abscissa; cells merge across walls not blocked by a
// vertical segment, and across the edge pairings, leaving one record per
// region of the surface minus the curves.

#include "flatfloer/arrangement.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace flatfloer {

struct Face {
  Rat area;
  Pt sample;  // a point strictly inside the region, in chart coordinates
};

class Subdivision {
 public:
  Subdivision(const FlatSurface& s, const std::vector<const PLCurve*>& curves) {
    collect_segments(s, curves);
    build_slabs(s);
    merge_across_walls();
    glue_edges(s);
    build_faces();
  }

  const std::vector<Face>& faces() const { return faces_; }

  // Points strictly inside region f: successive attempts vary the member
  // cell and the position within it, for callers that must avoid finitely
  // many bad lines.
  Pt face_point(size_t f, size_t attempt) const {
    const auto& mem = members_[f];
    const Cell& c = cells_[mem[attempt % mem.size()]];
    size_t variant = attempt / mem.size();
    size_t t = 0, base = 0;
    while (base + t + 1 <= variant) {
      ++t;
      base += t;
    }
    size_t i = variant - base, j = t - i;
    Rat x1 = xs_[c.slab], x2 = xs_[c.slab + 1];
    Rat x = x1 + (x2 - x1) * dyadic(i);
    const auto& sp = spans_[c.slab];
    Rat ylo = y_at(sp[c.lo].seg, x), yhi = y_at(sp[c.lo + 1].seg, x);
    return {x, ylo + (yhi - ylo) * dyadic(j)};
  }

  // Region containing p; p must lie strictly inside the chart and off every
  // curve and chart edge.
  size_t locate(const Pt& p) const {
    size_t nw = xs_.size();
    size_t slab = nw;  // invalid
    for (size_t i = 0; i + 1 < nw; ++i) {
      if (xs_[i] < p.x && p.x < xs_[i + 1]) {
        slab = i;
        break;
      }
      if (p.x == xs_[i + 1] && i + 2 < nw) {
        for (const auto& [lo, hi] : vert_at_[i + 1])
          if (lo <= p.y && p.y <= hi)
            throw validation_error("locate: point on a vertical segment " +
                                   pt_str(p));
        slab = i;  // on an open wall: either side works
        break;
      }
    }
    if (slab == nw)
      throw validation_error("locate: point outside chart " + pt_str(p));
    const auto& sp = spans_[slab];
    for (size_t j = 0; j + 1 < sp.size(); ++j) {
      Rat ylo = y_at(sp[j].seg, p.x), yhi = y_at(sp[j + 1].seg, p.x);
      if (ylo == p.y || yhi == p.y)
        throw validation_error("locate: point on a segment " + pt_str(p));
      if (ylo < p.y && p.y < yhi) {
        long c = cell_at_[slab][j];
        if (c < 0)
          throw validation_error("locate: point outside chart " + pt_str(p));
        return face_of_[size_t(c)];
      }
    }
    throw validation_error("locate: point outside chart " + pt_str(p));
  }

 private:
  struct Span {
    size_t seg;
    Rat ym;  // height at the slab midpoint, the sort key
  };
  struct Cell {
    size_t slab, lo;
    Pt sample;
    Rat area;
  };

  std::vector<Seg> segs_;
  std::vector<Rat> xs_;
  std::vector<std::vector<Span>> spans_;
  std::vector<std::vector<long>> cell_at_;  // slab -> span gap -> cell id
  std::vector<Cell> cells_;
  std::vector<std::vector<std::pair<Rat, Rat>>> vert_at_;  // wall -> y-intervals
  std::vector<size_t> uf_;
  std::vector<size_t> face_of_;  // cell -> face index
  std::vector<Face> faces_;
  std::vector<std::vector<size_t>> members_;  // face -> member cells

  // 1/2, 1/4, 3/4, 1/8, 3/8, ...
  static Rat dyadic(size_t idx) {
    long level = 1;
    size_t count = 1;
    while (idx >= count) {
      idx -= count;
      ++level;
      count <<= 1;
    }
    return Rat(long(2 * idx + 1)) / Rat(long(1) << level);
  }

  size_t find(size_t a) {
    while (uf_[a] != a) a = uf_[a] = uf_[uf_[a]];
    return a;
  }
  void unite(size_t a, size_t b) { uf_[find(a)] = find(b); }

  Rat y_at(size_t seg, const Rat& x) const {
    const Seg& s = segs_[seg];
    if (s.a.x == s.b.x) throw std::logic_error("y_at on a vertical segment");
    Rat t = (x - s.a.x) / (s.b.x - s.a.x);
    return s.a.y + (s.b.y - s.a.y) * t;
  }

  void collect_segments(const FlatSurface& s,
                        const std::vector<const PLCurve*>& curves) {
    std::vector<Rat> xs;
    for (size_t e = 0; e < s.n_edges(); ++e) segs_.push_back(s.edge(e));
    for (const PLCurve* c : curves)
      for (size_t i = 0; i < c->size(); ++i) segs_.push_back(c->segment(i));
    for (const Seg& sg : segs_) {
      xs.push_back(sg.a.x);
      xs.push_back(sg.b.x);
    }
    for (size_t i = 0; i < curves.size(); ++i) {
      for (const Crossing& c : self_crossings(*curves[i])) xs.push_back(c.p.x);
      for (size_t j = i + 1; j < curves.size(); ++j)
        for (const Crossing& c : crossings_between(*curves[i], *curves[j]))
          xs.push_back(c.p.x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    xs_ = std::move(xs);
  }

  void build_slabs(const FlatSurface& s) {
    size_t nw = xs_.size();
    vert_at_.assign(nw, {});
    for (const Seg& sg : segs_)
      if (sg.a.x == sg.b.x) {
        size_t w = size_t(std::lower_bound(xs_.begin(), xs_.end(), sg.a.x) -
                          xs_.begin());
        Rat lo = sg.a.y < sg.b.y ? sg.a.y : sg.b.y;
        Rat hi = sg.a.y < sg.b.y ? sg.b.y : sg.a.y;
        vert_at_[w].push_back({lo, hi});
      }
    for (auto& v : vert_at_) std::sort(v.begin(), v.end());

    spans_.assign(nw - 1, {});
    cell_at_.assign(nw - 1, {});
    for (size_t sl = 0; sl + 1 < nw; ++sl) {
      Rat x1 = xs_[sl], x2 = xs_[sl + 1];
      Rat xm = (x1 + x2) / 2;
      for (size_t i = 0; i < segs_.size(); ++i) {
        const Seg& sg = segs_[i];
        if (sg.a.x == sg.b.x) continue;
        Rat lo = sg.a.x < sg.b.x ? sg.a.x : sg.b.x;
        Rat hi = sg.a.x < sg.b.x ? sg.b.x : sg.a.x;
        if (lo <= x1 && x2 <= hi) spans_[sl].push_back({i, y_at(i, xm)});
      }
      auto& sp = spans_[sl];
      std::sort(sp.begin(), sp.end(),
                [](const Span& a, const Span& b) { return a.ym < b.ym; });
      for (size_t j = 0; j + 1 < sp.size(); ++j)
        if (sp[j].ym == sp[j + 1].ym)
          throw validation_error("overlapping segments in subdivision");
      cell_at_[sl].assign(sp.empty() ? 0 : sp.size() - 1, -1);
      for (size_t j = 0; j + 1 < sp.size(); ++j) {
        Pt q{xm, (sp[j].ym + sp[j + 1].ym) / 2};
        if (!s.strictly_inside(q)) continue;
        Rat lo1 = y_at(sp[j].seg, x1), lo2 = y_at(sp[j].seg, x2);
        Rat hi1 = y_at(sp[j + 1].seg, x1), hi2 = y_at(sp[j + 1].seg, x2);
        Rat area = ((hi1 - lo1) + (hi2 - lo2)) / 2 * (x2 - x1);
        cell_at_[sl][j] = long(cells_.size());
        cells_.push_back({sl, j, q, area});
      }
    }
    uf_.resize(cells_.size());
    for (size_t i = 0; i < uf_.size(); ++i) uf_[i] = i;
  }

  // True if the open interval (lo, hi) on wall w is not fully covered by
  // vertical segments.
  bool wall_open(size_t w, const Rat& lo, const Rat& hi) const {
    Rat cur = lo;
    for (const auto& [l, h] : vert_at_[w]) {
      if (h <= cur) continue;
      if (l >= hi) break;
      if (l > cur) return true;
      cur = h;
    }
    return cur < hi;
  }

  void merge_across_walls() {
    for (size_t w = 1; w + 1 < xs_.size(); ++w) {
      size_t sl = w - 1, sr = w;
      const Rat& x = xs_[w];
      for (size_t j = 0; j + 1 < spans_[sl].size(); ++j) {
        long cl = cell_at_[sl][j];
        if (cl < 0) continue;
        Rat alo = y_at(spans_[sl][j].seg, x);
        Rat ahi = y_at(spans_[sl][j + 1].seg, x);
        for (size_t k = 0; k + 1 < spans_[sr].size(); ++k) {
          long cr = cell_at_[sr][k];
          if (cr < 0) continue;
          Rat blo = y_at(spans_[sr][k].seg, x);
          Rat bhi = y_at(spans_[sr][k + 1].seg, x);
          Rat lo = alo > blo ? alo : blo;
          Rat hi = ahi < bhi ? ahi : bhi;
          if (lo < hi && wall_open(w, lo, hi)) unite(size_t(cl), size_t(cr));
        }
      }
    }
  }

  size_t wall_index(const Rat& x) const {
    auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.end() || *it != x)
      throw std::logic_error("edge abscissa is not a wall");
    return size_t(it - xs_.begin());
  }

  // Cell adjacent to a horizontal chart edge (input segment index e) at
  // interior abscissa x, on the inside given by the sign of the inward
  // normal's y component.
  size_t cell_at_horizontal(size_t e, const Rat& x, bool above) {
    for (size_t sl = 0; sl + 1 < xs_.size(); ++sl) {
      if (!(xs_[sl] < x && x < xs_[sl + 1])) continue;
      const auto& sp = spans_[sl];
      for (size_t j = 0; j < sp.size(); ++j)
        if (sp[j].seg == e) {
          long c = -1;
          if (above && j + 1 < sp.size()) c = cell_at_[sl][j];
          if (!above && j > 0) c = cell_at_[sl][j - 1];
          if (c < 0) throw std::logic_error("no cell along chart edge");
          return size_t(c);
        }
      throw std::logic_error("chart edge does not span its slab");
    }
    throw std::logic_error("edge sample point is on a wall");
  }

  // Cell adjacent to a vertical chart edge at ordinate y, in the slab on
  // the inside.
  size_t cell_at_vertical(const Rat& x, const Rat& y, bool right) {
    size_t w = wall_index(x);
    if (right ? w + 1 >= xs_.size() : w == 0)
      throw std::logic_error("no slab inside vertical edge");
    size_t sl = right ? w : w - 1;
    const auto& sp = spans_[sl];
    for (size_t j = 0; j + 1 < sp.size(); ++j) {
      long c = cell_at_[sl][j];
      if (c < 0) continue;
      if (y_at(sp[j].seg, x) < y && y < y_at(sp[j + 1].seg, x))
        return size_t(c);
    }
    throw std::logic_error("no cell at vertical edge ordinate");
  }

  void glue_edges(const FlatSurface& s) {
    for (const Pairing& p : s.pairings) {
      Seg e1 = s.edge(size_t(p.e1));
      bool horizontal = e1.a.y == e1.b.y;
      if (horizontal) {
        Vec d = e1.dir();
        bool above1 = d.x > 0;  // inward normal is the left normal
        Rat lo = e1.a.x < e1.b.x ? e1.a.x : e1.b.x;
        Rat hi = e1.a.x < e1.b.x ? e1.b.x : e1.a.x;
        std::vector<Rat> breaks;
        for (const Rat& x : xs_) {
          if (lo <= x && x <= hi) breaks.push_back(x);
          Rat xt = x - p.t.x;
          if (lo <= xt && xt <= hi) breaks.push_back(xt);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        for (size_t i = 0; i + 1 < breaks.size(); ++i) {
          Rat m = (breaks[i] + breaks[i + 1]) / 2;
          size_t c1 = cell_at_horizontal(size_t(p.e1), m, above1);
          size_t c2 = cell_at_horizontal(size_t(p.e2), m + p.t.x, !above1);
          unite(c1, c2);
        }
      } else {
        Vec d = e1.dir();
        bool right1 = d.y < 0;  // left normal points in +x
        Rat lo = e1.a.y < e1.b.y ? e1.a.y : e1.b.y;
        Rat hi = e1.a.y < e1.b.y ? e1.b.y : e1.a.y;
        std::vector<Rat> breaks{lo, hi};
        collect_vertical_breaks(e1.a.x, lo, hi, Rat(0), breaks);
        collect_vertical_breaks(e1.a.x + p.t.x, lo + p.t.y, hi + p.t.y,
                                p.t.y, breaks);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        for (size_t i = 0; i + 1 < breaks.size(); ++i) {
          Rat m = (breaks[i] + breaks[i + 1]) / 2;
          size_t c1 = cell_at_vertical(e1.a.x, m, right1);
          size_t c2 = cell_at_vertical(e1.a.x + p.t.x, m + p.t.y, !right1);
          unite(c1, c2);
        }
      }
    }
  }

  // Cell boundary ordinates met along the vertical line x in (lo, hi),
  // shifted back by `offset` into the reference edge's frame.
  void collect_vertical_breaks(const Rat& x, const Rat& lo, const Rat& hi,
                               const Rat& offset, std::vector<Rat>& out) {
    size_t w = wall_index(x);
    for (size_t sl : {w == 0 ? size_t(-1) : w - 1,
                      w + 1 < xs_.size() ? w : size_t(-1)}) {
      if (sl == size_t(-1)) continue;
      for (const Span& sp : spans_[sl]) {
        Rat y = y_at(sp.seg, x);
        if (lo < y && y < hi) out.push_back(y - offset);
      }
    }
  }

  void build_faces() {
    std::map<size_t, size_t> root_to_face;
    std::vector<std::vector<size_t>> members;
    for (size_t c = 0; c < cells_.size(); ++c) {
      size_t r = find(c);
      auto [it, fresh] = root_to_face.emplace(r, members.size());
      if (fresh) members.push_back({});
      members[it->second].push_back(c);
    }
    std::vector<size_t> order(members.size());
    std::vector<Face> tmp(members.size());
    for (size_t f = 0; f < members.size(); ++f) {
      Rat area(0);
      Pt sample = cells_[members[f][0]].sample;
      for (size_t c : members[f]) {
        area += cells_[c].area;
        if (pt_less(cells_[c].sample, sample)) sample = cells_[c].sample;
      }
      tmp[f] = {area, sample};
      order[f] = f;
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return pt_less(tmp[a].sample, tmp[b].sample);
    });
    std::vector<size_t> rank(members.size());
    for (size_t i = 0; i < order.size(); ++i) {
      rank[order[i]] = i;
      faces_.push_back(tmp[order[i]]);
      members_.push_back(members[order[i]]);
    }
    face_of_.resize(cells_.size());
    for (size_t c = 0; c < cells_.size(); ++c)
      face_of_[c] = rank[root_to_face[find(c)]];
  }
};

}  // namespace flatfloer
