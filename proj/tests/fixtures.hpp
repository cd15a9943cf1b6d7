#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskcond/builder.hpp"
#include "diskcond/loops.hpp"
#include "diskcond/manifold.hpp"
#include "diskcond/short_path.hpp"

namespace fixtures {

using namespace diskcond;

inline ManifoldSpec torus_spec(int p1, int p2, int p3) {
  auto doc = build_torus_example({p1, p2, p3});
  auto res = load_manifold(doc);
  if (!res.ok()) {
    std::string msg = "torus fixture invalid:";
    for (const auto& v : res.violations) msg += " [" + v.code + "] " + v.detail;
    throw std::runtime_error(msg);
  }
  return std::move(*res.spec);
}

// Boundary complex of the orientable I-bundle over a once-punctured torus:
// a genus-2 handlebody whose curve system is the two horizontal boundary
// circles, with the basis lifted from two dual arcs of the base surface.
// Cutting along the two lifted disks leaves one 4-holed sphere piece.
// `rings` adds that many extra parallel curves across the side annulus.
//
// Only handlebody 0 of the returned spec is meaningful; the other two are
// bare placeholders so handlebody-level operations can run.
inline ManifoldSpec ibundle_spec(int rings = 0) {
  ManifoldSpec spec;
  spec.disk_profile = {4, 4, 4};

  spec.handlebodies.resize(3);
  spec.handlebodies[0].id = "H1";
  spec.handlebodies[1].id = "H2";
  spec.handlebodies[2].id = "H3";
  for (int i = 0; i < 3; ++i) spec.hb_ix[spec.handlebodies[i].id] = i;
  spec.handlebodies[1].genus = 0;
  spec.handlebodies[1].balls = {"H2.B0"};
  spec.handlebodies[2].genus = 0;
  spec.handlebodies[2].balls = {"H3.B0"};

  FaceSurface sh;  // horizontal boundary: top and bottom copies of the base
  sh.id = "SH";
  sh.handlebodies = {0, 1};
  FaceSurface sv;  // vertical boundary: the side annulus
  sv.id = "SV";
  sv.handlebodies = {0, 2};
  spec.surf_ix["SH"] = 0;
  spec.surf_ix["SV"] = 1;
  spec.surfaces = {sh, sv};

  Handlebody& h = spec.handlebodies[0];
  h.genus = 2;
  h.balls = {"H1.B0"};

  auto add_edge = [&](const std::string& id, EdgeKind kind, int disk, char sl, char sr,
                      const std::string& tail, const std::string& head) {
    Edge e;
    e.id = id;
    e.kind = kind;
    if (kind == EdgeKind::Disk) {
      e.disk.handlebody = 0;
      e.disk.disk = disk;
      e.disk.side_left = sl;
      e.disk.side_right = sr;
    }
    e.tail = tail;
    e.head = head;
    spec.edge_ix[id] = static_cast<int>(spec.edges.size());
    spec.edges.push_back(e);
  };

  // boundary circle vertices, in cyclic order xa, xb, ya, yb; the side
  // annulus is subdivided by `rings` extra circles at interior levels
  const char* pos[4] = {"xa", "xb", "ya", "yb"};
  int levels = rings + 2;  // level 0 = top circle, level levels-1 = bottom
  auto vtx = [&](int lvl, int p) {
    return "v" + std::to_string(lvl) + "." + std::string(pos[p]);
  };
  // circle edges per level
  auto circ = [&](int lvl, int p) {
    return "t" + std::to_string(lvl) + ".e" + std::to_string(p);
  };
  for (int lvl = 0; lvl < levels; ++lvl)
    for (int p = 0; p < 4; ++p)
      add_edge(circ(lvl, p), EdgeKind::Triple, -1, 0, 0, vtx(lvl, p), vtx(lvl, (p + 1) % 4));

  // horizontal copies of the two dual arcs (two occurrences each in one cell)
  add_edge("da.t", EdgeKind::Disk, 0, '+', '-', vtx(0, 0), vtx(0, 2));
  add_edge("db.t", EdgeKind::Disk, 1, '+', '-', vtx(0, 1), vtx(0, 3));
  add_edge("da.b", EdgeKind::Disk, 0, '-', '+', vtx(levels - 1, 0), vtx(levels - 1, 2));
  add_edge("db.b", EdgeKind::Disk, 1, '-', '+', vtx(levels - 1, 1), vtx(levels - 1, 3));

  // vertical pieces between consecutive levels, at each of the four positions;
  // verticals at xa/ya belong to disk a, xb/yb to disk b
  auto vert = [&](int lvl, int p) {
    return "v" + std::to_string(lvl) + "-" + std::to_string(lvl + 1) + "." + pos[p];
  };
  for (int lvl = 0; lvl + 1 < levels; ++lvl)
    for (int p = 0; p < 4; ++p) {
      int disk = (p % 2 == 0) ? 0 : 1;
      // descending verticals: at xa/xb the curve is traversed upward in the
      // disk cycle, at ya/yb downward; keep '+' on a consistent curve side
      char sl = (p < 2) ? '-' : '+';
      char sr = (p < 2) ? '+' : '-';
      add_edge(vert(lvl, p), EdgeKind::Disk, disk, sl, sr, vtx(lvl, p), vtx(lvl + 1, p));
    }

  auto add_cell = [&](const std::string& id, int surface,
                      std::vector<std::pair<std::string, bool>> cyc) {
    Cell c;
    c.id = id;
    c.surface = surface;
    for (const auto& [eid, fwd] : cyc) c.boundary.push_back({spec.edge_ix.at(eid), fwd});
    spec.cell_ix[id] = static_cast<int>(spec.cells.size());
    spec.surfaces[surface].cells.push_back(static_cast<int>(spec.cells.size()));
    spec.cells.push_back(c);
    h.cell_ball[spec.cell_ix[id]] = 0;
  };

  // cut-open horizontal copies: octagons with the cut arcs appearing twice
  add_cell("T", 0,
           {{"da.t", true},
            {circ(0, 1), false},
            {"db.t", true},
            {circ(0, 2), false},
            {"da.t", false},
            {circ(0, 3), false},
            {"db.t", false},
            {circ(0, 0), false}});
  add_cell("B", 0,
           {{"da.b", true},
            {circ(levels - 1, 1), false},
            {"db.b", true},
            {circ(levels - 1, 2), false},
            {"da.b", false},
            {circ(levels - 1, 3), false},
            {"db.b", false},
            {circ(levels - 1, 0), false}});

  // side rectangles per band and position
  for (int lvl = 0; lvl + 1 < levels; ++lvl)
    for (int p = 0; p < 4; ++p) {
      std::string id = "R" + std::to_string(lvl) + "." + std::to_string(p);
      add_cell(id, 1,
               {{circ(lvl, p), true},
                {vert(lvl, (p + 1) % 4), true},
                {circ(lvl + 1, p), false},
                {vert(lvl, p), false}});
    }

  // meridian disks: the lifted dual arcs
  auto slots = [&](std::vector<std::pair<std::string, bool>> cyc) {
    std::vector<Slot> out;
    for (const auto& [eid, fwd] : cyc) out.push_back({spec.edge_ix.at(eid), fwd});
    return out;
  };
  MeridianDisk da;
  da.id = "Da";
  {
    std::vector<std::pair<std::string, bool>> cyc{{"da.t", true}};
    for (int lvl = 0; lvl + 1 < levels; ++lvl) cyc.push_back({vert(lvl, 2), true});
    cyc.push_back({"da.b", false});
    for (int lvl = levels - 2; lvl >= 0; --lvl) cyc.push_back({vert(lvl, 0), false});
    da.boundary = slots(cyc);
  }
  da.ball_plus = da.ball_minus = 0;
  MeridianDisk db;
  db.id = "Db";
  {
    std::vector<std::pair<std::string, bool>> cyc{{"db.t", true}};
    for (int lvl = 0; lvl + 1 < levels; ++lvl) cyc.push_back({vert(lvl, 3), true});
    cyc.push_back({"db.b", false});
    for (int lvl = levels - 2; lvl >= 0; --lvl) cyc.push_back({vert(lvl, 1), false});
    db.boundary = slots(cyc);
  }
  db.ball_plus = db.ball_minus = 0;
  h.disks = {da, db};

  // triple curve cycles
  for (int lvl = 0; lvl < levels; ++lvl) {
    std::vector<Slot> cyc;
    for (int p = 0; p < 4; ++p) cyc.push_back({spec.edge_ix.at(circ(lvl, p)), true});
    spec.triple_curves.push_back(cyc);
  }

  {
    std::set<std::string> vs;
    for (const auto& e : spec.edges) {
      vs.insert(e.tail);
      vs.insert(e.head);
    }
    spec.vertices.assign(vs.begin(), vs.end());
  }

  auto violations = derive_boundary_view(&spec, 0);
  if (!violations.empty()) {
    std::string msg = "ibundle fixture invalid:";
    for (const auto& v : violations) msg += " [" + v.code + "] " + v.detail;
    throw std::runtime_error(msg);
  }
  return spec;
}

// ---------------------------------------------------------------------
// loop fixtures on the torus family
// ---------------------------------------------------------------------

// A small null-homotopic loop crossing one shared annulus twice: one side
// runs over a foreign disk trace, the other dives under the disk itself.
// The disk move across the trace cancels both crossings in one move.
inline Loop rectangle_loop(const ManifoldSpec& spec) {
  const SurfaceView& view = spec.boundary[0];
  for (int c : view.cells) {
    if (spec.cells[c].surface != spec.surf_ix.at("S12")) continue;
    for (int e : view.cell_edges.at(c)) {
      const Edge& ed = spec.edges[e];
      if (ed.kind != EdgeKind::Disk || ed.disk.handlebody != 1) continue;
      int c2 = view.across(e, c);
      if (c2 == c) continue;
      const auto& occ = view.edge_occ.at(e);
      const Occ& into_c = occ[0].cell == c ? occ[0] : occ[1];
      ArcClass a1;  // over the trace, inside H1
      a1.handlebody = 0;
      a1.start_cell = c;
      a1.end_cell = c2;
      ArcClass a2;  // under the disk, inside H2
      a2.handlebody = 1;
      a2.start_cell = c2;
      a2.end_cell = c;
      a2.crossings = {{ed.disk.disk, entered_side(spec, e, into_c)}};
      Loop loop;
      loop.arcs = {a1, a2};
      return loop;
    }
  }
  throw std::runtime_error("rectangle_loop: no suitable trace edge");
}

// A transverse loop spiralling once around a triple curve: it crosses each
// sheet once and collects every meridian crossing along the way.
inline Loop spiral_loop(const ManifoldSpec& spec, int p1, int p2, int p3) {
  int N = p1 + p2 + p3;
  auto sheet_cell_at = [&](const std::string& sheet, int x) {
    int e = spec.edge_ix.at("tP.e" + std::to_string(x));
    int s = spec.surf_ix.at(sheet);
    for (int c = 0; c < static_cast<int>(spec.cells.size()); ++c) {
      if (spec.cells[c].surface != s) continue;
      for (const auto& sl : spec.cells[c].boundary)
        if (sl.edge == e) return c;
    }
    throw std::runtime_error("spiral_loop: no sheet cell at " + std::to_string(x));
  };
  int c12 = sheet_cell_at("S12", p1 - 1);
  int c23 = sheet_cell_at("S23", p1 + p2 - 1);
  int c13 = sheet_cell_at("S13", N - 1);
  auto word = [&](int hb, int count) {
    Word w;
    for (int k = 0; k < count; ++k) w.push_back({0, '+'});
    (void)hb;
    return w;
  };
  ArcClass a2;  // crosses every D2 crossing of the triple curve
  a2.handlebody = 1;
  a2.start_cell = c12;
  a2.end_cell = c23;
  a2.crossings = word(1, p2);
  ArcClass a3;
  a3.handlebody = 2;
  a3.start_cell = c23;
  a3.end_cell = c13;
  a3.crossings = word(2, p3);
  ArcClass a1;
  a1.handlebody = 0;
  a1.start_cell = c13;
  a1.end_cell = c12;
  a1.crossings = word(0, p1);
  Loop loop;
  loop.arcs = {a2, a3, a1};
  return loop;
}

// ---------------------------------------------------------------------
// reverse-move loop generator
// ---------------------------------------------------------------------

// Builds null-homotopic loops by inserting certified detours into an
// interior-trivial base loop.  Every inserted arc carries a boundary-walk
// certificate, so the first solver scan sees it as short.
class LoopForge {
 public:
  LoopForge(const ManifoldSpec& spec, unsigned long long seed) : spec_(spec), rng_(seed) {}

  // applies `k` reverse moves to the empty interior loop of handlebody hb
  Loop generate(int hb, int k) {
    Loop loop = seed_loop(hb);
    for (int i = 1; i < k; ++i) {
      if (rng_() % 2 == 0)
        loop = dip2(loop);
      else
        loop = dip4(loop);
    }
    auto chk = validate_loop(spec_, loop);
    if (!chk.ok) throw std::runtime_error("LoopForge: invalid loop: " + chk.message);
    return loop;
  }

 private:
  const ManifoldSpec& spec_;
  std::mt19937_64 rng_;

  int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned long long>(n)); }

  // random boundary walk in a given handlebody starting at `cell`, taking
  // `len` crossings; stays in the starting sheet when weight_zero is set
  BoundaryPath random_walk(int hb, int cell, int len, bool weight_zero) {
    const SurfaceView& view = spec_.boundary[hb];
    BoundaryPath p;
    p.handlebody = hb;
    p.start_cell = cell;
    int cur = cell;
    for (int t = 0; t < len; ++t) {
      std::vector<PathStep> options;
      for (int e : view.cell_edges.at(cur)) {
        const Edge& ed = spec_.edges[e];
        if (ed.kind == EdgeKind::Triple && weight_zero) continue;
        const auto& occ = view.edge_occ.at(e);
        for (int q = 0; q < 2; ++q)
          if (occ[1 - q].cell == cur) options.push_back({e, q});
      }
      if (options.empty()) break;
      PathStep st = options[pick(static_cast<int>(options.size()))];
      if (spec_.edges[st.edge].kind == EdgeKind::Triple) ++p.weight;
      p.steps.push_back(st);
      cur = view.edge_occ.at(st.edge)[st.enter_occ].cell;
    }
    return p;
  }

  // weight-0 walk within one sheet
  BoundaryPath sheet_walk(int hb, int cell, int len) { return random_walk(hb, cell, len, true); }

  Word own_trace(const BoundaryPath& p) { return p.disk_trace(spec_); }
  Word foreign_trace_of(const BoundaryPath& p, int owner) {
    Word w;
    for (const auto& fc : p.foreign_trace(spec_))
      if (fc.handlebody == owner) w.push_back({fc.disk, fc.side});
    return w;
  }

  int random_sheet_cell(int a, int b) {
    std::vector<int> cs;
    for (int c = 0; c < static_cast<int>(spec_.cells.size()); ++c) {
      auto s = spec_.cell_sides(c);
      if ((s[0] == a && s[1] == b) || (s[0] == b && s[1] == a)) cs.push_back(c);
    }
    return cs[pick(static_cast<int>(cs.size()))];
  }

  // the first reverse move: an interior-trivial base expands into a loop of
  // four certified arcs around a triple-curve neighbourhood
  Loop seed_loop(int hb) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      int other[2];
      int t = 0;
      for (int x = 0; x < 3; ++x)
        if (x != hb) other[t++] = x;
      int i = other[pick(2)];
      int m = hb;
      int A = random_sheet_cell(m, i);
      // walk: sheet S(i,m), cross into the other sheet of H_i, walk, cross back
      BoundaryPath path = assemble_weight2_walk(i, m, A);
      if (path.weight != 2) continue;
      auto segs = split_segments(path);
      int B = segs.end_cell;
      if (spec_.other_side(B, i) != m) continue;
      Loop loop;
      ArcClass dip;  // certified by `path`
      dip.handlebody = i;
      dip.start_cell = A;
      dip.end_cell = B;
      dip.crossings = own_trace(path);
      if (reduce(dip.crossings) != dip.crossings) continue;
      ArcClass r1;
      r1.handlebody = m;
      r1.start_cell = B;
      r1.end_cell = segs.j2;
      r1.crossings = inverse(segs.m2);
      ArcClass rq;
      rq.handlebody = segs.q;
      rq.start_cell = segs.j2;
      rq.end_cell = segs.j1;
      rq.crossings = inverse(segs.q1);
      ArcClass r0;
      r0.handlebody = m;
      r0.start_cell = segs.j1;
      r0.end_cell = A;
      r0.crossings = inverse(segs.m0);
      loop.arcs = {dip, r1, rq, r0};
      auto chk = validate_loop(spec_, loop);
      if (chk.ok) return loop;
    }
    throw std::runtime_error("LoopForge: seed loop construction failed");
  }

  struct Segments {
    Word m0, q1, m2;
    int j1 = -1, j2 = -1;
    int q = -1;
    int end_cell = -1;
  };

  // walk in ∂H_i: weight-0 in sheet S(i,m), one triple crossing, weight-0 in
  // the other sheet, one triple crossing back, weight-0 again
  BoundaryPath assemble_weight2_walk(int i, int m, int A) {
    const SurfaceView& view = spec_.boundary[i];
    BoundaryPath p = sheet_walk(i, A, pick(3));
    int cur = p.end_cell(spec_);
    for (int leg = 0; leg < 2; ++leg) {
      // one triple crossing
      std::vector<PathStep> options;
      for (int e : view.cell_edges.at(cur)) {
        if (spec_.edges[e].kind != EdgeKind::Triple) continue;
        const auto& occ = view.edge_occ.at(e);
        for (int q = 0; q < 2; ++q)
          if (occ[1 - q].cell == cur) options.push_back({e, q});
      }
      if (options.empty()) return p;
      PathStep st = options[pick(static_cast<int>(options.size()))];
      p.steps.push_back(st);
      p.weight++;
      cur = view.edge_occ.at(st.edge)[st.enter_occ].cell;
      BoundaryPath ext = sheet_walk(i, cur, pick(3));
      for (const auto& s : ext.steps) p.steps.push_back(s);
      cur = ext.end_cell(spec_);
    }
    return p;
  }

  Segments split_segments(const BoundaryPath& p) {
    Segments out;
    const SurfaceView& view = spec_.boundary[p.handlebody];
    int seg = 0;
    int cur = p.start_cell;
    out.q = -1;
    for (const auto& st : p.steps) {
      const Edge& ed = spec_.edges[st.edge];
      const Occ& occ = view.edge_occ.at(st.edge)[st.enter_occ];
      if (ed.kind == EdgeKind::Triple) {
        ++seg;
        int j = spec_.third_sheet_cell(st.edge, p.handlebody);
        if (seg == 1) {
          out.j1 = j;
          out.q = spec_.other_side(occ.cell, p.handlebody);
        } else {
          out.j2 = j;
        }
      } else if (ed.disk.handlebody != p.handlebody) {
        Crossing c{ed.disk.disk, entered_side(spec_, st.edge, occ)};
        if (seg == 0) out.m0.push_back(c);
        if (seg == 1) out.q1.push_back(c);
        if (seg == 2) out.m2.push_back(c);
      }
      cur = occ.cell;
    }
    out.end_cell = cur;
    out.m0 = reduce(out.m0);
    out.q1 = reduce(out.q1);
    out.m2 = reduce(out.m2);
    return out;
  }

  // weight-0 detour across one sheet, inserted mid-arc
  Loop dip2(const Loop& loop) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      int l = loop.length();
      int j = pick(l);
      const ArcClass& host = loop.arcs[j];
      int m = host.handlebody;
      int other[2];
      int t = 0;
      for (int x = 0; x < 3; ++x)
        if (x != m) other[t++] = x;
      int i = other[pick(2)];
      int A = random_sheet_cell(m, i);
      BoundaryPath path = sheet_walk(i, A, 1 + pick(4));
      int B = path.end_cell(spec_);
      ArcClass dip;
      dip.handlebody = i;
      dip.start_cell = A;
      dip.end_cell = B;
      dip.crossings = own_trace(path);
      if (reduce(dip.crossings) != dip.crossings) continue;
      int cut = pick(static_cast<int>(host.crossings.size()) + 1);
      Word P(host.crossings.begin(), host.crossings.begin() + cut);
      Word Q(host.crossings.begin() + cut, host.crossings.end());
      ArcClass h1;
      h1.handlebody = m;
      h1.start_cell = host.start_cell;
      h1.end_cell = A;
      h1.crossings = reduce(P);
      ArcClass back;
      back.handlebody = m;
      back.start_cell = B;
      back.end_cell = host.end_cell;
      back.crossings = reduce(concat(inverse(foreign_trace_of(path, m)), Q));
      Loop out;
      for (int u = 0; u < l; ++u) {
        if (u == j) {
          out.arcs.push_back(h1);
          out.arcs.push_back(dip);
          out.arcs.push_back(back);
        } else {
          out.arcs.push_back(loop.arcs[u]);
        }
      }
      auto chk = validate_loop(spec_, out);
      if (chk.ok) return out;
    }
    return loop;  // give up quietly; callers retry with more moves
  }

  // weight-2 detour through a third handlebody, inserted mid-arc
  Loop dip4(const Loop& loop) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      int l = loop.length();
      int j = pick(l);
      const ArcClass& host = loop.arcs[j];
      int m = host.handlebody;
      int other[2];
      int t = 0;
      for (int x = 0; x < 3; ++x)
        if (x != m) other[t++] = x;
      int i = other[pick(2)];
      int A = random_sheet_cell(m, i);
      BoundaryPath path = assemble_weight2_walk(i, m, A);
      if (path.weight != 2) continue;
      auto segs = split_segments(path);
      int B = segs.end_cell;
      if (spec_.other_side(B, i) != m) continue;
      // split the host word
      int cut = pick(static_cast<int>(host.crossings.size()) + 1);
      Word P(host.crossings.begin(), host.crossings.begin() + cut);
      Word Q(host.crossings.begin() + cut, host.crossings.end());
      ArcClass h1;
      h1.handlebody = m;
      h1.start_cell = host.start_cell;
      h1.end_cell = A;
      h1.crossings = reduce(P);
      ArcClass dip;
      dip.handlebody = i;
      dip.start_cell = A;
      dip.end_cell = B;
      dip.crossings = own_trace(path);
      if (reduce(dip.crossings) != dip.crossings) continue;
      ArcClass r1;
      r1.handlebody = m;
      r1.start_cell = B;
      r1.end_cell = segs.j2;
      r1.crossings = inverse(segs.m2);
      ArcClass rq;
      rq.handlebody = segs.q;
      rq.start_cell = segs.j2;
      rq.end_cell = segs.j1;
      rq.crossings = inverse(segs.q1);
      ArcClass r0;
      r0.handlebody = m;
      r0.start_cell = segs.j1;
      r0.end_cell = host.end_cell;
      r0.crossings = reduce(concat(inverse(segs.m0), Q));
      Loop out;
      for (int u = 0; u < l; ++u) {
        if (u == j) {
          out.arcs.push_back(h1);
          out.arcs.push_back(dip);
          out.arcs.push_back(r1);
          out.arcs.push_back(rq);
          out.arcs.push_back(r0);
        } else {
          out.arcs.push_back(loop.arcs[u]);
        }
      }
      auto chk = validate_loop(spec_, out);
      if (chk.ok) return out;
    }
    return loop;
  }
};

}  // namespace fixtures
