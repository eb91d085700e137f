#pragma once

// Floer complexes over truncated Novikov series: the differential from
// bigon counts, the higher products m_k from convex polygon counts, the
// d^2 = 0 and A-infinity verifiers, homology ranks over the Novikov field,
// and the canonical closed morphism between equal-holonomy isotopes.

#include "flatfloer/novikov.hpp"
#include "flatfloer/polygons.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flatfloer {

// A chain is a formal Novikov combination of the intersection points of one
// ordered pair, aligned with the crossings_between basis order.
struct Chain {
  std::string source, target;
  std::vector<Series> coeff;

  bool is_zero() const {
    for (const Series& c : coeff)
      if (!c.is_zero()) return false;
    return true;
  }
};

struct FloerComplex {
  std::string source, target;
  std::vector<Crossing> gens;
  std::vector<std::vector<Series>> d;  // d[to][from] in the gens basis
  Cutoff cutoff;

  size_t index_of(const Pt& p) const {
    for (size_t i = 0; i < gens.size(); ++i)
      if (gens[i].p == p) return i;
    throw validation_error("chart point " + pt_str(p) +
                           " is not a generator of CF(" + source + ", " +
                           target + ")");
  }

  json to_json() const {
    json jg = json::array();
    for (const Crossing& x : gens)
      jg.push_back(json{{"point", json::array({rat_to_json(x.p.x), rat_to_json(x.p.y)})},
                        {"degree", x.degree}});
    json jd = json::array();
    for (const auto& row : d) {
      json jr = json::array();
      for (const Series& e : row) jr.push_back(e.to_json());
      jd.push_back(jr);
    }
    return json{{"source", source},
                {"target", target},
                {"generators", jg},
                {"d", jd},
                {"cutoff", opt_rat_to_json(cutoff)}};
  }
};

// A transversal sequence consists of distinct pairwise-transversal curves
// with no chart point on three strands. A curve passing through a crossing
// of two others either crosses one of them there (the point repeats) or
// meets one tangentially; both are rejected.
inline void require_transversal(const FlatSurface& s,
                                const std::vector<const PLCurve*>& cs) {
  std::map<Pt, std::string, PtLess> seen;
  auto record = [&](const Pt& p, const std::string& who) {
    auto [it, fresh] = seen.emplace(p, who);
    if (!fresh)
      throw validation_error("triple point at " + pt_str(p) + " shared by (" +
                             it->second + ") and (" + who + ")");
  };
  for (size_t i = 0; i < cs.size(); ++i) {
    cs[i]->validate(s);
    for (const Crossing& c : self_crossings(*cs[i]))
      record(c.p, cs[i]->name);
    for (size_t j = i + 1; j < cs.size(); ++j) {
      if (cs[i]->name == cs[j]->name)
        throw validation_error("sequence repeats the curve " + cs[i]->name);
      for (const Crossing& c : crossings_between(*cs[i], *cs[j]))
        record(c.p, cs[i]->name + ", " + cs[j]->name);
    }
  }
}

// m_k on basis generators: the polygon-count sum as a coefficient vector
// over crossings_between(curves.front(), curves.back()).
inline std::vector<Series> mu_basis(const FlatSurface& s,
                                    const std::vector<const PLCurve*>& cs,
                                    const std::vector<Crossing>& inputs,
                                    const Cutoff& cut) {
  if (!cut) throw validation_error("polygon sums need a finite cutoff");
  std::vector<Crossing> out_gens =
      crossings_between(*cs.front(), *cs.back());
  std::vector<Series> out(out_gens.size(), Series::zero(cut));
  for (const ImmersedPolygon& u : enumerate_polygons(s, cs, inputs, *cut)) {
    size_t j = 0;
    while (j < out_gens.size() && !(out_gens[j].p == u.output.p)) ++j;
    if (j == out_gens.size())
      throw std::logic_error("polygon output is not an intersection point");
    out[j] = out[j] + Series::monomial(u.area, u.sign, cut);
  }
  return out;
}

// Multilinear extension of m_k. Curves are the transversal sequence
// (c_0, ..., c_k); xs[i] is a chain on the pair (c_i, c_{i+1}). The result
// lives on (c_0, c_k).
inline Chain mu_k(const FlatSurface& s, const std::vector<const PLCurve*>& cs,
                  const std::vector<Chain>& xs, const Cutoff& cut) {
  size_t k = xs.size();
  if (cs.size() != k + 1 || k == 0)
    throw validation_error("m_k needs k chains and k+1 curves");
  require_transversal(s, cs);
  std::vector<std::vector<Crossing>> bases(k);
  for (size_t i = 0; i < k; ++i) {
    bases[i] = crossings_between(*cs[i], *cs[i + 1]);
    if (xs[i].source != cs[i]->name || xs[i].target != cs[i + 1]->name ||
        xs[i].coeff.size() != bases[i].size())
      throw validation_error("chain " + std::to_string(i) +
                             " does not lie on the pair (" + cs[i]->name +
                             ", " + cs[i + 1]->name + ")");
  }

  Chain out{cs.front()->name, cs.back()->name,
            std::vector<Series>(
                crossings_between(*cs.front(), *cs.back()).size(),
                Series::zero(cut))};
  std::vector<Crossing> tuple(k);
  auto rec = [&](auto&& self, size_t slot, const Series& weight) -> void {
    if (weight.is_zero()) return;
    if (slot == k) {
      std::vector<Series> col = mu_basis(s, cs, tuple, cut);
      for (size_t j = 0; j < col.size(); ++j)
        out.coeff[j] = out.coeff[j] + weight * col[j];
      return;
    }
    for (size_t g = 0; g < bases[slot].size(); ++g) {
      tuple[slot] = bases[slot][g];
      self(self, slot + 1, weight * xs[slot].coeff[g]);
    }
  };
  rec(rec, 0, Series::one(cut));
  return out;
}

// Basis chain [g] on an ordered pair.
inline Chain basis_chain(const PLCurve& a, const PLCurve& b, const Pt& p,
                         const Cutoff& cut) {
  std::vector<Crossing> gens = crossings_between(a, b);
  Chain x{a.name, b.name, std::vector<Series>(gens.size(), Series::zero(cut))};
  size_t i = 0;
  while (i < gens.size() && !(gens[i].p == p)) ++i;
  if (i == gens.size())
    throw validation_error(pt_str(p) + " is not an intersection point of (" +
                           a.name + ", " + b.name + ")");
  x.coeff[i] = Series::one(cut);
  return x;
}

inline FloerComplex cf_complex(const FlatSurface& s, const PLCurve& a,
                               const PLCurve& b, const Cutoff& cut) {
  if (a.name == b.name)
    throw validation_error("Floer complex needs a transverse pair of distinct curves");
  FloerComplex cx;
  cx.source = a.name;
  cx.target = b.name;
  cx.cutoff = cut;
  cx.gens = crossings_between(a, b);
  size_t n = cx.gens.size();
  cx.d.assign(n, std::vector<Series>(n, Series::zero(cut)));
  for (size_t i = 0; i < n; ++i) {
    std::vector<Series> col = mu_basis(s, {&a, &b}, {cx.gens[i]}, cut);
    for (size_t j = 0; j < n; ++j) {
      if (!col[j].is_zero() &&
          cx.gens[j].degree % 2 != (cx.gens[i].degree + 1) % 2)
        throw std::logic_error("differential entry violates the grading");
      cx.d[j][i] = col[j];
    }
  }
  return cx;
}

inline Chain apply_d(const FloerComplex& cx, const Chain& x) {
  if (x.coeff.size() != cx.gens.size())
    throw validation_error("chain does not lie on the complex");
  Chain out{cx.source, cx.target,
            std::vector<Series>(cx.gens.size(), Series::zero(cx.cutoff))};
  for (size_t j = 0; j < cx.gens.size(); ++j)
    for (size_t i = 0; i < cx.gens.size(); ++i)
      out.coeff[j] = out.coeff[j] + cx.d[j][i] * x.coeff[i];
  return out;
}

struct Report {
  bool ok = true;
  std::vector<std::string> witnesses;

  json to_json() const {
    json jw = json::array();
    for (const std::string& w : witnesses) jw.push_back(w);
    return json{{"ok", ok}, {"witnesses", jw}};
  }
};

inline Report check_d_squared(const FloerComplex& cx) {
  Report r;
  size_t n = cx.gens.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      Series acc = Series::zero(cx.cutoff);
      for (size_t j = 0; j < n; ++j) acc = acc + cx.d[k][j] * cx.d[j][i];
      if (!acc.is_zero()) {
        r.ok = false;
        r.witnesses.push_back("d^2[" + pt_str(cx.gens[i].p) + " -> " +
                              pt_str(cx.gens[k].p) + "] = " + series_str(acc));
      }
    }
  return r;
}

// The full signed associativity sum over one transversal sequence
// (c_0, ..., c_k), evaluated on every tuple of basis generators:
//   sum over inner position d and inner arity j of
//   (-1)^{d + sum_{i<d} deg(x_i)} m_{k-j+1}(..., m_j(x_{d+j-1}..x_d), ...).
inline Report check_a_infinity(const FlatSurface& s,
                               const std::vector<const PLCurve*>& cs,
                               const Cutoff& cut, size_t max_k) {
  size_t k = cs.size() - 1;
  if (k < 1 || k > max_k)
    throw validation_error("sequence length must be between 2 and max_k + 1");
  require_transversal(s, cs);
  Report r;
  std::vector<std::vector<Crossing>> bases(k);
  for (size_t i = 0; i < k; ++i) bases[i] = crossings_between(*cs[i], *cs[i + 1]);

  std::vector<size_t> pick(k, 0);
  for (;;) {
    // The current basis tuple x_i = bases[i][pick[i]].
    std::vector<Series> total(
        crossings_between(*cs.front(), *cs.back()).size(),
        Series::zero(cut));
    for (size_t j = 1; j <= k; ++j)
      for (size_t d = 0; d + j <= k; ++d) {
        // Inner product over (c_d, ..., c_{d+j}).
        std::vector<const PLCurve*> inner_cs(cs.begin() + long(d),
                                             cs.begin() + long(d + j + 1));
        std::vector<Crossing> inner_in;
        for (size_t i = 0; i < j; ++i)
          inner_in.push_back(bases[d + i][pick[d + i]]);
        std::vector<Series> inner = mu_basis(s, inner_cs, inner_in, cut);

        // Outer sequence with the inner result in one slot.
        std::vector<const PLCurve*> outer_cs(cs.begin(), cs.begin() + long(d + 1));
        outer_cs.insert(outer_cs.end(), cs.begin() + long(d + j), cs.end());
        std::vector<Crossing> inner_gens =
            crossings_between(*cs[d], *cs[d + j]);

        int sign = int(d) % 2;
        for (size_t i = 0; i < d; ++i)
          sign = (sign + bases[i][pick[i]].degree) % 2;

        for (size_t g = 0; g < inner_gens.size(); ++g) {
          if (inner[g].is_zero()) continue;
          std::vector<Crossing> outer_in;
          for (size_t i = 0; i < d; ++i)
            outer_in.push_back(bases[i][pick[i]]);
          outer_in.push_back(inner_gens[g]);
          for (size_t i = d + j; i < k; ++i)
            outer_in.push_back(bases[i][pick[i]]);
          std::vector<Series> outer = mu_basis(s, outer_cs, outer_in, cut);
          for (size_t t = 0; t < total.size(); ++t) {
            Series term = inner[g] * outer[t];
            total[t] = sign == 0 ? total[t] + term : total[t] - term;
          }
        }
      }
    for (size_t t = 0; t < total.size(); ++t)
      if (!total[t].is_zero()) {
        r.ok = false;
        std::string tuple;
        for (size_t i = 0; i < k; ++i)
          tuple += (i ? ", " : "") + pt_str(bases[i][pick[i]].p);
        r.witnesses.push_back("associativity sum on (" + tuple +
                              ") leaves " + series_str(total[t]));
      }

    size_t slot = 0;
    while (slot < k && ++pick[slot] == bases[slot].size()) pick[slot++] = 0;
    if (slot == k) break;
  }
  return r;
}

struct HfRanks {
  long h0 = 0, h1 = 0;
  bool conclusive = true;

  long total() const { return h0 + h1; }

  json to_json() const {
    return json{{"h0", h0}, {"h1", h1}, {"conclusive", conclusive}};
  }
};

namespace floer_detail {

// Rank of a Series matrix over the Novikov field, by elimination with
// minimal-valuation pivots. A zero entry whose completeness bound fell
// below the ambient cutoff may hide terms the input could not determine;
// such entries make the rank decision inconclusive.
inline long series_rank(std::vector<std::vector<Series>> m, const Rat& lam,
                        bool& conclusive) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  std::vector<bool> row_done(rows, false), col_done(cols, false);
  long rank = 0;
  for (;;) {
    size_t pr = rows, pc = cols;
    for (size_t r = 0; r < rows; ++r) {
      if (row_done[r]) continue;
      for (size_t c = 0; c < cols; ++c) {
        if (col_done[c]) continue;
        const Series& e = m[r][c];
        if (e.is_zero()) {
          if (e.cutoff && *e.cutoff < lam) conclusive = false;
          continue;
        }
        if (pr == rows || *e.val() < *m[pr][pc].val()) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == rows) break;
    Series inv = m[pr][pc].inverse();
    for (size_t r = 0; r < rows; ++r) {
      if (row_done[r] || r == pr || m[r][pc].is_zero()) continue;
      Series f = m[r][pc] * inv;
      for (size_t c = 0; c < cols; ++c) {
        if (col_done[c]) continue;
        m[r][c] = m[r][c] - f * m[pr][c];
      }
    }
    row_done[pr] = true;
    col_done[pc] = true;
    ++rank;
  }
  return rank;
}

}  // namespace floer_detail

// Cohomology ranks over the Novikov field, split by the mod-2 grading. The
// ranks are statements modulo t^cutoff.
inline HfRanks hf_ranks(const FloerComplex& cx) {
  if (!cx.cutoff)
    throw validation_error("homology ranks need a finite cutoff");
  std::vector<size_t> i0, i1;
  for (size_t i = 0; i < cx.gens.size(); ++i)
    (cx.gens[i].degree % 2 == 0 ? i0 : i1).push_back(i);
  auto block = [&](const std::vector<size_t>& to,
                   const std::vector<size_t>& from) {
    std::vector<std::vector<Series>> b(
        to.size(), std::vector<Series>(from.size(), Series::zero(cx.cutoff)));
    for (size_t r = 0; r < to.size(); ++r)
      for (size_t c = 0; c < from.size(); ++c) b[r][c] = cx.d[to[r]][from[c]];
    return b;
  };
  HfRanks h;
  long r0 = floer_detail::series_rank(block(i1, i0), *cx.cutoff, h.conclusive);
  long r1 = floer_detail::series_rank(block(i0, i1), *cx.cutoff, h.conclusive);
  h.h0 = long(i0.size()) - r0 - r1;
  h.h1 = long(i1.size()) - r1 - r0;
  return h;
}

namespace floer_detail {

inline bool loop_is_embedded(const std::vector<Pt>& loop) {
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      SegX x = seg_intersect({loop[i], loop[(i + 1) % n]},
                             {loop[j], loop[(j + 1) % n]});
      if (x.kind == SegXKind::none) continue;
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent || x.kind != SegXKind::endpoint) return false;
    }
  return true;
}

}  // namespace floer_detail

// The canonical closed degree-0 morphism between two isotopic curves of
// equal holonomy whose bigons are embedded with disjoint interiors. Its
// coefficients are unit monomials t^{alternating partial area sum}, found
// by walking the cyclic bigon chain through the differential entries; the
// walk must close up, which encodes the vanishing of the full alternating
// area sum. m_1-closedness is asserted before returning.
inline Chain canonical_qis(const FlatSurface& s, const PLCurve& a,
                           const PLCurve& b, const Cutoff& cut) {
  if (a.holonomy(s) != b.holonomy(s))
    throw validation_error("canonical morphism needs equal holonomy");
  FloerComplex cx = cf_complex(s, a, b, cut);
  std::vector<size_t> ps, qs;
  for (size_t i = 0; i < cx.gens.size(); ++i)
    (cx.gens[i].degree % 2 == 0 ? ps : qs).push_back(i);
  size_t n = ps.size();
  if (n == 0 || qs.size() != n)
    throw validation_error(
        "canonical morphism needs equally many degree-0 and degree-1 corners");

  // Hypothesis: every bigon embedded, interiors pairwise disjoint.
  {
    Subdivision sub(s, {&a, &b});
    std::vector<long> covered(sub.faces().size(), 0);
    for (size_t i : ps)
      for (const ImmersedPolygon& u :
           enumerate_polygons(s, {&a, &b}, {cx.gens[i]}, *cut)) {
        if (!floer_detail::loop_is_embedded(u.loop))
          throw validation_error("a bigon between " + a.name + " and " +
                                 b.name + " is not embedded");
        std::vector<long> mult = polygon_domain(s, sub, u);
        for (size_t f = 0; f < mult.size(); ++f) {
          covered[f] += mult[f];
          if (covered[f] > 1)
            throw validation_error("bigons between " + a.name + " and " +
                                   b.name + " have overlapping interiors");
        }
      }
  }

  Chain e{a.name, b.name,
          std::vector<Series>(cx.gens.size(), Series::zero(cut))};
  if (n == 1) {
    // A single pair of equal-area bigons: the differential entry cancels
    // and the morphism is the bare generator.
    e.coeff[ps[0]] = Series::one(cut);
  } else {
    // Each degree-0 corner meets exactly two bigons, each contributing a
    // unit monomial toward one degree-1 corner.
    std::map<size_t, std::vector<std::pair<size_t, Series>>> links;
    for (size_t i : ps) {
      std::vector<std::pair<size_t, Series>> row;
      for (size_t j : qs)
        if (!cx.d[j][i].is_zero()) {
          const Series& m = cx.d[j][i];
          if (m.terms.size() != 1 || abs(m.terms[0].second) != 1)
            throw validation_error(
                "differential entries of the bigon chain must be unit monomials");
          row.emplace_back(j, m);
        }
      if (row.size() != 2)
        throw validation_error(
            "each degree-0 corner must bound exactly two bigons");
      links[i] = row;
    }
    std::map<size_t, std::vector<size_t>> at_q;
    for (const auto& [i, row] : links)
      for (const auto& [j, mono] : row) at_q[j].push_back(i);
    for (const auto& [j, is] : at_q)
      if (is.size() != 2)
        throw validation_error(
            "each degree-1 corner must bound exactly two bigons");

    size_t start = ps[0];
    size_t cur = start;
    size_t via = links[cur][0].first;
    Series c = Series::one(cut);
    size_t visited = 0;
    for (;;) {
      e.coeff[cur] = c;
      ++visited;
      const auto& pair_at = at_q[via];
      size_t nxt = pair_at[0] == cur ? pair_at[1] : pair_at[0];
      Series num = links[cur][0].first == via ? links[cur][0].second
                                              : links[cur][1].second;
      Series den = links[nxt][0].first == via ? links[nxt][0].second
                                              : links[nxt][1].second;
      Series cn = -(c * num * den.inverse());
      if (nxt == start) {
        if (!eq_mod_cutoff(cn, Series::one(cut)))
          throw validation_error(
              "bigon areas do not alternate to zero: holonomy obstruction");
        break;
      }
      if (visited > n)
        throw validation_error("bigon chain does not form a single cycle");
      c = cn;
      via = links[nxt][0].first == via ? links[nxt][1].first
                                       : links[nxt][0].first;
      cur = nxt;
    }
    if (visited != n)
      throw validation_error("bigon chain does not form a single cycle");
  }

  Chain de = apply_d(cx, e);
  if (!de.is_zero())
    throw validation_error(
        "the morphism built from the bigon chain is not closed: extra "
        "polygons survive below the cutoff");
  return e;
}

}  // namespace flatfloer
