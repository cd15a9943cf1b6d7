#pragma once

// Independent reference implementations used to cross-check the production
// algorithms.  These deliberately take different routes: plain bounded
// dynamic programming and enumeration instead of layered searches, and
// minor-gcd arithmetic instead of elimination.

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diskcond/loops.hpp"
#include "diskcond/manifold.hpp"
#include "diskcond/short_path.hpp"
#include "diskcond/waves.hpp"

namespace oracles {

using namespace diskcond;

// minimum TRIPLE weight over all boundary walks of at most max_steps edge
// crossings realizing the arc's crossing sequence; bounded DP over
// (steps, layer, cell)
inline std::optional<int> walk_min_weight(const ManifoldSpec& spec, const ArcClass& arc,
                                          int max_steps) {
  const SurfaceView& view = spec.boundary[arc.handlebody];
  const int INF = std::numeric_limits<int>::max() / 4;
  int layers = static_cast<int>(arc.crossings.size()) + 1;
  std::map<int, int> local;
  int nc = 0;
  for (int c : view.cells) local[c] = nc++;
  std::vector<std::vector<int>> dist(layers, std::vector<int>(nc, INF));
  dist[0][local.at(arc.start_cell)] = 0;
  int best = INF;
  auto consider = [&](const std::vector<std::vector<int>>& d) {
    int v = d[layers - 1][local.at(arc.end_cell)];
    if (v < best) best = v;
  };
  consider(dist);
  for (int step = 0; step < max_steps; ++step) {
    auto next = dist;
    for (int t = 0; t < layers; ++t)
      for (int c : view.cells) {
        int cur = dist[t][local.at(c)];
        if (cur >= INF) continue;
        for (int e : view.cell_edges.at(c)) {
          const Edge& ed = spec.edges[e];
          const auto& occ = view.edge_occ.at(e);
          for (int q = 0; q < 2; ++q) {
            if (occ[1 - q].cell != c) continue;
            int to = occ[q].cell;
            if (ed.kind == EdgeKind::Triple) {
              int& slot = next[t][local.at(to)];
              slot = std::min(slot, cur + 1);
            } else if (ed.disk.handlebody != arc.handlebody) {
              int& slot = next[t][local.at(to)];
              slot = std::min(slot, cur);
            } else if (t + 1 < layers && ed.disk.disk == arc.crossings[t].disk &&
                       entered_side(spec, e, occ[q]) == arc.crossings[t].side) {
              int& slot = next[t + 1][local.at(to)];
              slot = std::min(slot, cur);
            }
          }
        }
      }
    dist = std::move(next);
    consider(dist);
  }
  if (best >= INF) return std::nullopt;
  return best;
}

// same search with all foreign traces contracted away: cells joined by a
// foreign edge collapse to one node, so foreign crossings cannot matter
inline std::optional<int> contracted_min_weight(const ManifoldSpec& spec, const ArcClass& arc,
                                                int max_steps) {
  const SurfaceView& view = spec.boundary[arc.handlebody];
  std::map<int, int> root;
  for (int c : view.cells) root[c] = c;
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (const auto& [e, occ] : view.edge_occ) {
    const Edge& ed = spec.edges[e];
    if (ed.kind == EdgeKind::Disk && ed.disk.handlebody != arc.handlebody)
      root[find(occ[0].cell)] = find(occ[1].cell);
  }
  const int INF = std::numeric_limits<int>::max() / 4;
  std::map<int, int> local;
  int nc = 0;
  for (int c : view.cells)
    if (!local.count(find(c))) local[find(c)] = nc++;
  int layers = static_cast<int>(arc.crossings.size()) + 1;
  std::vector<std::vector<int>> dist(layers, std::vector<int>(nc, INF));
  dist[0][local.at(find(arc.start_cell))] = 0;
  int best = INF;
  auto consider = [&](const std::vector<std::vector<int>>& d) {
    best = std::min(best, d[layers - 1][local.at(find(arc.end_cell))]);
  };
  consider(dist);
  for (int step = 0; step < max_steps; ++step) {
    auto next = dist;
    for (const auto& [e, occ] : view.edge_occ) {
      const Edge& ed = spec.edges[e];
      if (ed.kind == EdgeKind::Disk && ed.disk.handlebody != arc.handlebody) continue;
      for (int q = 0; q < 2; ++q) {
        int from = local.at(find(occ[1 - q].cell));
        int to = local.at(find(occ[q].cell));
        for (int t = 0; t < layers; ++t) {
          if (dist[t][from] >= INF) continue;
          if (ed.kind == EdgeKind::Triple) {
            next[t][to] = std::min(next[t][to], dist[t][from] + 1);
          } else if (t + 1 < layers && ed.disk.disk == arc.crossings[t].disk &&
                     entered_side(spec, e, occ[q]) == arc.crossings[t].side) {
            next[t + 1][to] = std::min(next[t + 1][to], dist[t][from]);
          }
        }
      }
    }
    dist = std::move(next);
    consider(dist);
  }
  if (best >= INF) return std::nullopt;
  return best;
}

// ------------------------------------------------------------------
// slide moves on boundary-path itineraries
// ------------------------------------------------------------------

inline std::string steps_key(const BoundaryPath& p) {
  std::string s = std::to_string(p.start_cell) + ":";
  for (const auto& st : p.steps)
    s += std::to_string(st.edge) + "." + std::to_string(st.enter_occ) + ",";
  return s;
}

// all paths obtained by sliding one TRIPLE crossing across a meridian disk
inline std::vector<BoundaryPath> slide_variants(const ManifoldSpec& spec,
                                                const BoundaryPath& p) {
  std::vector<BoundaryPath> out;
  const SurfaceView& view = spec.boundary[p.handlebody];
  std::map<std::string, std::vector<int>> at_vertex;
  for (const auto& [e, occ] : view.edge_occ) {
    at_vertex[spec.edges[e].tail].push_back(e);
    at_vertex[spec.edges[e].head].push_back(e);
  }
  auto cells = p.cells(spec);
  for (size_t t = 0; t + 1 < p.steps.size(); ++t) {
    int e1 = p.steps[t].edge, e2 = p.steps[t + 1].edge;
    const Edge& ed1 = spec.edges[e1];
    const Edge& ed2 = spec.edges[e2];
    bool d1 = ed1.kind == EdgeKind::Disk && ed1.disk.handlebody == p.handlebody;
    bool d2 = ed2.kind == EdgeKind::Disk && ed2.disk.handlebody == p.handlebody;
    bool t1 = ed1.kind == EdgeKind::Triple;
    bool t2 = ed2.kind == EdgeKind::Triple;
    if (!((t1 && d2) || (d1 && t2))) continue;
    int A = cells[t], C = cells[t + 1], B = cells[t + 2];
    // the two crossed slots must meet at a corner of the middle cell
    const auto& bnd = spec.cells[C].boundary;
    int n = static_cast<int>(bnd.size());
    const Occ& in1 = view.edge_occ.at(e1)[p.steps[t].enter_occ];       // entering C
    const Occ& out2 = view.edge_occ.at(e2)[1 - p.steps[t + 1].enter_occ];  // leaving C
    if (in1.cell != C || out2.cell != C) continue;
    auto vertex_between = [&](int pa, int pb) -> std::string {
      if ((pa + 1) % n == pb) {
        const Slot& s = bnd[pa];
        return s.forward ? spec.edges[s.edge].head : spec.edges[s.edge].tail;
      }
      if ((pb + 1) % n == pa) {
        const Slot& s = bnd[pb];
        return s.forward ? spec.edges[s.edge].head : spec.edges[s.edge].tail;
      }
      return "";
    };
    std::string v = vertex_between(in1.pos, out2.pos);
    if (v.empty()) continue;
    // partner edges at v: the other triple edge and the other edge of the
    // same disk
    int e1p = -1, e2p = -1;
    for (int e : at_vertex[v]) {
      if (e == e1 || e == e2) continue;
      const Edge& ed = spec.edges[e];
      const Edge& tgt1 = ed1;
      const Edge& tgt2 = ed2;
      if (ed.kind == tgt1.kind &&
          (ed.kind == EdgeKind::Triple ||
           (ed.disk.handlebody == tgt1.disk.handlebody && ed.disk.disk == tgt1.disk.disk)))
        e1p = e;
      if (ed.kind == tgt2.kind &&
          (ed.kind == EdgeKind::Triple ||
           (ed.disk.handlebody == tgt2.disk.handlebody && ed.disk.disk == tgt2.disk.disk)))
        e2p = e;
    }
    if (e1p < 0 || e2p < 0) continue;
    if (!view.has_edge(e1p) || !view.has_edge(e2p)) continue;
    // rewritten route: A --e2p--> X --e1p--> B
    const auto& o2p = view.edge_occ.at(e2p);
    const auto& o1p = view.edge_occ.at(e1p);
    for (int qa = 0; qa < 2; ++qa) {
      if (o2p[1 - qa].cell != A) continue;
      int X = o2p[qa].cell;
      for (int qb = 0; qb < 2; ++qb) {
        if (o1p[1 - qb].cell != X || o1p[qb].cell != B) continue;
        BoundaryPath q = p;
        q.steps[t] = {e2p, qa};
        q.steps[t + 1] = {e1p, qb};
        // the rewrite must preserve the disk trace exactly
        if (q.disk_trace(spec) == p.disk_trace(spec)) out.push_back(q);
      }
    }
  }
  return out;
}

inline std::set<std::string> slide_closure(const ManifoldSpec& spec, const BoundaryPath& p,
                                           size_t cap = 20000) {
  std::set<std::string> seen{steps_key(p)};
  std::vector<BoundaryPath> frontier{p};
  while (!frontier.empty()) {
    std::vector<BoundaryPath> next;
    for (const auto& q : frontier)
      for (const auto& r : slide_variants(spec, q))
        if (seen.insert(steps_key(r)).second) next.push_back(r);
    if (seen.size() > cap) throw std::runtime_error("slide_closure: cap exceeded");
    frontier = std::move(next);
  }
  return seen;
}

// ------------------------------------------------------------------
// wave oracle: plain recursion over embedded dual paths up to a length
// bound, essentialness via the public predicate
// ------------------------------------------------------------------

inline std::optional<int> wave_min_weight(const ManifoldSpec& spec, int hb, int piece,
                                          Circle base, int max_len) {
  const SurfaceView& view = spec.boundary[hb];
  std::vector<int> piece_cells;
  for (int c : view.cells)
    if (view.cell_piece.at(c) == piece) piece_cells.push_back(c);
  auto slots_on_circle = [&](int c) {
    std::vector<int> out;
    const auto& b = spec.cells[c].boundary;
    for (int k = 0; k < static_cast<int>(b.size()); ++k) {
      const Edge& ed = spec.edges[b[k].edge];
      if (ed.kind != EdgeKind::Disk || ed.disk.handlebody != hb) continue;
      if (ed.disk.disk != base.disk) continue;
      char facing = b[k].forward ? ed.disk.side_left : ed.disk.side_right;
      if (facing == base.side) out.push_back(k);
    }
    return out;
  };

  std::optional<int> best;
  std::vector<PathStep> steps;
  std::set<int> onpath;

  auto try_complete = [&](int c0, int s0, int cend) {
    for (int send : slots_on_circle(cend)) {
      WaveCandidate w;
      w.handlebody = hb;
      w.piece = piece;
      w.base = base;
      w.start_cell = c0;
      w.start_slot = s0;
      w.steps = steps;
      w.end_cell = cend;
      w.end_slot = send;
      w.weight = 0;
      for (const auto& st : steps)
        if (spec.edges[st.edge].kind == EdgeKind::Triple) ++w.weight;
      if (best && w.weight >= *best) continue;
      std::vector<std::pair<int, int>> subs{{0, 1}};
      if (c0 == cend && s0 == send) subs = {{0, 1}, {1, 0}};
      for (auto [sa, sb] : subs) {
        w.start_sub = sa;
        w.end_sub = sb;
        auto chk = wave_essential(spec, w);
        if (chk.embeddable && chk.essential) best = w.weight;
      }
    }
  };

  std::function<void(int, int, int)> rec = [&](int c0, int s0, int c) {
    try_complete(c0, s0, c);
    if (static_cast<int>(steps.size()) >= max_len) return;
    for (int e : view.cell_edges.at(c)) {
      const Edge& ed = spec.edges[e];
      if (ed.kind == EdgeKind::Disk && ed.disk.handlebody == hb) continue;
      const auto& occ = view.edge_occ.at(e);
      for (int q = 0; q < 2; ++q) {
        if (occ[1 - q].cell != c) continue;
        int to = occ[q].cell;
        if (onpath.count(to)) continue;
        onpath.insert(to);
        steps.push_back({e, q});
        rec(c0, s0, to);
        steps.pop_back();
        onpath.erase(to);
      }
    }
  };
  for (int c0 : piece_cells)
    for (int s0 : slots_on_circle(c0)) {
      onpath.insert(c0);
      rec(c0, s0, c0);
      onpath.erase(c0);
    }
  return best;
}

// ------------------------------------------------------------------
// Smith normal form via gcds of k x k minors (slow, independent)
// ------------------------------------------------------------------

inline long long minor_gcd(const std::vector<std::vector<long long>>& cols, int rows, int k) {
  int m = static_cast<int>(cols.size());
  std::vector<int> rc(k), cc(k);
  long long g = 0;
  std::function<long long(const std::vector<int>&, const std::vector<int>&)> det =
      [&](const std::vector<int>& ri, const std::vector<int>& ci) -> long long {
    int n = static_cast<int>(ri.size());
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = cols[ci[j]][ri[i]];
    // fraction-free elimination on small integers
    long long sign = 1;
    long long denom = 1;
    for (int p = 0; p < n; ++p) {
      int pivot = -1;
      for (int r = p; r < n; ++r)
        if (a[r][p] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      if (pivot != p) {
        std::swap(a[pivot], a[p]);
        sign = -sign;
      }
      for (int r = p + 1; r < n; ++r) {
        for (int c2 = p + 1; c2 < n; ++c2) a[r][c2] = a[r][c2] * a[p][p] - a[r][p] * a[p][c2];
        a[r][p] = 0;
        if (p > 0)
          for (int c2 = p + 1; c2 < n; ++c2) a[r][c2] /= denom;
      }
      denom = a[p][p];
    }
    return sign * a[n - 1][n - 1];
  };
  std::function<void(int, int)> pick_rows = [&](int start, int depth) {
    if (depth == k) {
      std::function<void(int, int)> pick_cols = [&](int cstart, int cdepth) {
        if (cdepth == k) {
          long long d = det(rc, cc);
          g = std::gcd(g, d < 0 ? -d : d);
          return;
        }
        for (int c = cstart; c < m; ++c) {
          cc[cdepth] = c;
          pick_cols(c + 1, cdepth + 1);
        }
      };
      pick_cols(0, 0);
      return;
    }
    for (int r = start; r < rows; ++r) {
      rc[depth] = r;
      pick_rows(r + 1, depth + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

// invariant factors d_k = gcd(k-minors) / gcd((k-1)-minors)
inline std::vector<long long> snf_by_minors(const std::vector<std::vector<long long>>& cols,
                                            int rows) {
  int m = static_cast<int>(cols.size());
  int r = std::min(rows, m);
  std::vector<long long> out;
  long long prev = 1;
  for (int k = 1; k <= r; ++k) {
    long long g = minor_gcd(cols, rows, k);
    if (g == 0) {
      while (static_cast<int>(out.size()) < r) out.push_back(0);
      return out;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace oracles
