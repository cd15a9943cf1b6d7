#include "diskcond/builder.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskcond/rational.hpp"

namespace diskcond {

namespace {

// Each annulus is drawn on a flat cylinder chart: x runs cyclically through
// the N = p1+p2+p3 crossing positions, y from the bottom triple curve (0) to
// the top one (1).  Meridian traces are straight segments in the universal
// cover, so the whole complex is an exact rational line arrangement.

struct Vec {
  Rat x, y;
};

bool ccw_less(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  Rat cross = a.x * b.y - a.y * b.x;
  return cross > 0;
}

struct ArcSpec {
  int dcurve = 0;   // 0,1,2 for D1,D2,D3
  int k = 0;        // arc index along the curve
  Rat b, a;         // lift endpoints: (b,0) .. (a,1), b <= a < b+N
  bool up = false;  // traversal direction: up-arcs run bottom to top
};

struct PieceEdge {
  std::string id;
  int tail = -1, head = -1;  // point indices (tail->head along traversal)
  Vec tail_lift, head_lift;  // for local direction computations
  bool is_triple = false;
  int dcurve = -1;
  bool up = false;
};

struct AnnulusResult {
  std::vector<std::string> point_ids;
  std::vector<PieceEdge> edges;
  // faces as cyclic dart lists: (edge index, forward?)
  std::vector<std::vector<std::pair<int, bool>>> faces;
  // per disk curve, per arc: piece edge indices in traversal order
  std::map<std::pair<int, int>, std::vector<int>> arc_pieces;
};

std::string rat_id(const Rat& q) {
  std::string s = std::to_string(q.numerator());
  if (q.denominator() != 1) s += "_" + std::to_string(q.denominator());
  return s;
}

AnnulusResult build_annulus(const std::string& sname, int N, const std::vector<ArcSpec>& arcs) {
  AnnulusResult res;

  std::map<std::pair<Rat, Rat>, int> point_ix;
  auto point = [&](Rat x, Rat y, const std::string& id_hint) {
    while (x >= N) x -= N;
    while (x < 0) x += N;
    auto key = std::make_pair(x, y);
    auto it = point_ix.find(key);
    if (it != point_ix.end()) return it->second;
    int ix = static_cast<int>(res.point_ids.size());
    point_ix[key] = ix;
    res.point_ids.push_back(id_hint);
    return ix;
  };

  // boundary vertices at the integer positions
  std::vector<int> top(N), bot(N);
  for (int j = 0; j < N; ++j) {
    bot[j] = point(Rat(j), Rat(0), "tM.v" + std::to_string(j));
    top[j] = point(Rat(j), Rat(1), "tP.v" + std::to_string(j));
  }

  // pairwise crossings; each event is (y, point index)
  std::vector<std::vector<std::pair<Rat, int>>> events(arcs.size());
  int xcount = 0;
  std::map<std::pair<Rat, Rat>, std::string> interior_names;
  std::vector<std::pair<std::pair<Rat, Rat>, std::pair<int, int>>> crossings;
  for (size_t i = 0; i < arcs.size(); ++i) {
    for (size_t j = i + 1; j < arcs.size(); ++j) {
      Rat si = arcs[i].a - arcs[i].b, sj = arcs[j].a - arcs[j].b;
      if (si == sj) continue;  // parallel
      for (int t = -2; t <= 2; ++t) {
        Rat bj = arcs[j].b + t * N, aj = arcs[j].a + t * N;
        Rat y = (bj - arcs[i].b) / (si - sj);
        if (y <= 0 || y >= 1) continue;
        Rat xi = arcs[i].b + si * y;
        // strict crossing check
        if ((arcs[i].b - bj) * (arcs[i].a - aj) >= 0) continue;
        crossings.push_back({{xi, y}, {static_cast<int>(i), static_cast<int>(j)}});
      }
    }
  }
  // deterministic interior vertex names, sorted by position
  std::sort(crossings.begin(), crossings.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [pos, pair] : crossings) {
    Rat xn = pos.first;
    while (xn >= N) xn -= N;
    while (xn < 0) xn += N;
    auto key = std::make_pair(xn, pos.second);
    if (interior_names.count(key))
      throw std::runtime_error("builder: non-transverse triple point in " + sname);
    interior_names[key] = sname + ".x" + std::to_string(xcount++);
    int p = point(pos.first, pos.second, interior_names[key]);
    events[pair.first].push_back({pos.second, p});
    events[pair.second].push_back({pos.second, p});
  }

  // boundary edges: globally shared ids
  std::map<int, int> edge_of_dart_count;
  auto add_edge = [&](const PieceEdge& e) {
    res.edges.push_back(e);
    return static_cast<int>(res.edges.size()) - 1;
  };
  for (int j = 0; j < N; ++j) {
    PieceEdge e;
    e.id = "tM.e" + std::to_string(j);
    e.tail = bot[j];
    e.head = bot[(j + 1) % N];
    e.tail_lift = {Rat(j), Rat(0)};
    e.head_lift = {Rat(j + 1), Rat(0)};
    e.is_triple = true;
    add_edge(e);
    PieceEdge f;
    f.id = "tP.e" + std::to_string(j);
    f.tail = top[j];
    f.head = top[(j + 1) % N];
    f.tail_lift = {Rat(j), Rat(1)};
    f.head_lift = {Rat(j + 1), Rat(1)};
    f.is_triple = true;
    add_edge(f);
  }

  // arc pieces, in traversal order
  for (size_t i = 0; i < arcs.size(); ++i) {
    const ArcSpec& A = arcs[i];
    std::vector<std::pair<Rat, int>> evs = events[i];
    std::sort(evs.begin(), evs.end());
    // polyline points bottom to top
    std::vector<std::pair<Vec, int>> pts;
    pts.push_back({{A.b, Rat(0)}, -1});
    for (const auto& [y, p] : evs) pts.push_back({{A.b + (A.a - A.b) * y, y}, p});
    pts.push_back({{A.a, Rat(1)}, -1});
    // endpoint point indices
    Rat bx = A.b;
    while (bx >= N) bx -= N;
    Rat ax = A.a;
    while (ax >= N) ax -= N;
    pts.front().second = point_ix.at({bx, Rat(0)});
    pts.back().second = point_ix.at({ax, Rat(1)});

    int pieces = static_cast<int>(pts.size()) - 1;
    std::vector<int>& mine = res.arc_pieces[{A.dcurve, A.k}];
    for (int t = 0; t < pieces; ++t) {
      // traversal order: down-arcs run top to bottom
      int lo = A.up ? t : pieces - 1 - t;
      PieceEdge e;
      e.id = sname + ".D" + std::to_string(A.dcurve + 1) + "." + std::to_string(A.k) + ".e" +
             std::to_string(t);
      if (A.up) {
        e.tail = pts[lo].second;
        e.head = pts[lo + 1].second;
        e.tail_lift = pts[lo].first;
        e.head_lift = pts[lo + 1].first;
      } else {
        e.tail = pts[lo + 1].second;
        e.head = pts[lo].second;
        e.tail_lift = pts[lo + 1].first;
        e.head_lift = pts[lo].first;
      }
      e.dcurve = A.dcurve;
      e.up = A.up;
      mine.push_back(add_edge(e));
    }
  }

  // darts and rotations
  struct Dart {
    int edge;
    bool forward;
  };
  std::vector<std::vector<std::pair<Vec, int>>> rot(res.point_ids.size());
  std::vector<Dart> darts;
  auto out_dir = [&](const PieceEdge& e, bool fwd) {
    if (fwd) return Vec{e.head_lift.x - e.tail_lift.x, e.head_lift.y - e.tail_lift.y};
    return Vec{e.tail_lift.x - e.head_lift.x, e.tail_lift.y - e.head_lift.y};
  };
  for (int ei = 0; ei < static_cast<int>(res.edges.size()); ++ei) {
    const PieceEdge& e = res.edges[ei];
    int d0 = static_cast<int>(darts.size());
    darts.push_back({ei, true});
    darts.push_back({ei, false});
    rot[e.tail].push_back({out_dir(e, true), d0});
    rot[e.head].push_back({out_dir(e, false), d0 + 1});
  }
  for (auto& r : rot)
    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return ccw_less(a.first, b.first); });

  // face tracing: the face lies left of each dart; next(d) = ccw successor of
  // twin(d) around the head vertex
  auto head_of = [&](int d) {
    const PieceEdge& e = res.edges[darts[d].edge];
    return darts[d].forward ? e.head : e.tail;
  };
  auto next_dart = [&](int d) {
    // the face lies left of each dart: continue with the clockwise
    // neighbour of the reversed dart around the head vertex
    int tw = d ^ 1;
    int v = head_of(d);
    const auto& r = rot[v];
    for (size_t k = 0; k < r.size(); ++k)
      if (r[k].second == tw) return r[(k + r.size() - 1) % r.size()].second;
    throw std::runtime_error("builder: dart missing from rotation");
  };

  std::vector<int> face_of(darts.size(), -1);
  std::vector<std::vector<int>> face_darts;
  for (int d0 = 0; d0 < static_cast<int>(darts.size()); ++d0) {
    if (face_of[d0] != -1) continue;
    std::vector<int> cyc;
    int d = d0;
    do {
      face_of[d] = static_cast<int>(face_darts.size());
      cyc.push_back(d);
      d = next_dart(d);
    } while (d != d0);
    face_darts.push_back(cyc);
  }

  // drop the two virtual faces outside the strip: above the top circle
  // (east-pointing top darts) and below the bottom one (west-pointing)
  std::set<int> skip;
  for (int d = 0; d < static_cast<int>(darts.size()); ++d) {
    const PieceEdge& e = res.edges[darts[d].edge];
    if (!e.is_triple) continue;
    bool top_edge = e.tail_lift.y == 1;
    if (top_edge && darts[d].forward) skip.insert(face_of[d]);
    if (!top_edge && !darts[d].forward) skip.insert(face_of[d]);
  }
  if (skip.size() != 2)
    throw std::runtime_error("builder: expected two virtual faces in " + sname);

  for (int f = 0; f < static_cast<int>(face_darts.size()); ++f) {
    if (skip.count(f)) continue;
    std::vector<std::pair<int, bool>> cyc;
    for (int d : face_darts[f]) cyc.push_back({darts[d].edge, darts[d].forward});
    res.faces.push_back(cyc);
  }
  return res;
}

}  // namespace

Json build_torus_example(const TorusExampleParams& params) {
  const int p[3] = {params.p1, params.p2, params.p3};
  for (int i = 0; i < 3; ++i)
    if (p[i] < 2) throw std::invalid_argument("build_torus_example: p_i must be >= 2");
  const int N = p[0] + p[1] + p[2];
  const int off[3] = {0, p[0], p[0] + p[1]};

  // sheet hosting: D_i descends in down[i], ascends (with the +1 shear that
  // closes the curve) in up[i]
  const char* names[3] = {"S12", "S13", "S23"};
  const int down_sheet[3] = {0, 0, 1};  // D1:S12 D2:S12 D3:S13
  const int up_sheet[3] = {1, 2, 2};    // D1:S13 D2:S23 D3:S23

  std::vector<ArcSpec> arcs_of[3];
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < p[i]; ++k) {
      ArcSpec down;
      down.dcurve = i;
      down.k = 2 * k;  // even arc index: the descending arc after crossing tP at u_k
      down.b = Rat(off[i] + k);
      down.a = Rat(off[i] + k);
      down.up = false;
      arcs_of[down_sheet[i]].push_back(down);
      ArcSpec up;
      up.dcurve = i;
      up.k = 2 * k + 1;
      up.b = Rat(off[i] + k);
      int target = off[i] + (k + 1) % p[i];
      up.a = Rat(target < off[i] + k ? target + N : target);
      up.up = true;
      arcs_of[up_sheet[i]].push_back(up);
    }
  }

  AnnulusResult ann[3];
  for (int s = 0; s < 3; ++s) ann[s] = build_annulus(names[s], N, arcs_of[s]);

  // ------------------------------------------------------------------
  // assemble the document
  // ------------------------------------------------------------------
  Json doc;
  doc["schema"] = "diskcond/1";
  doc["disk_profile"] = Json::array({2 * p[0], 2 * p[1], 2 * p[2]});

  struct EdgeRow {
    std::string id;
    Json type;
    std::string tail, head;
  };
  std::map<std::string, EdgeRow> edge_rows;
  auto edge_key = [&](int s, int ei) {
    const PieceEdge& e = ann[s].edges[ei];
    return e.id;
  };
  for (int s = 0; s < 3; ++s) {
    for (const auto& e : ann[s].edges) {
      EdgeRow row;
      row.id = e.id;
      row.tail = ann[s].point_ids[e.tail];
      row.head = ann[s].point_ids[e.head];
      if (e.is_triple) {
        row.type = "triple";
      } else {
        // east of the curve is the '+' disk side: down-arcs have east on the
        // left of the traversal, up-arcs on the right
        std::string sl = e.up ? "-" : "+";
        std::string sr = e.up ? "+" : "-";
        std::string hb = "H" + std::to_string(e.dcurve + 1);
        std::string dk = "D" + std::to_string(e.dcurve + 1);
        row.type = Json{{"disk", Json::array({hb, dk, Json::array({sl, sr})})}};
      }
      auto it = edge_rows.find(row.id);
      if (it == edge_rows.end()) edge_rows[row.id] = row;
    }
  }

  // cells: canonical ids per annulus by sorted boundary fingerprint
  struct CellRow {
    std::string id;
    int sheet;
    std::vector<std::pair<std::string, bool>> boundary;
  };
  std::vector<CellRow> cell_rows;
  for (int s = 0; s < 3; ++s) {
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, bool>>>> faces;
    for (const auto& f : ann[s].faces) {
      std::vector<std::pair<std::string, bool>> cyc;
      for (const auto& [ei, fwd] : f) cyc.push_back({ann[s].edges[ei].id, fwd});
      // canonical rotation for a deterministic fingerprint
      size_t best = 0;
      auto key = [&](size_t k, size_t t) {
        const auto& sl = cyc[(k + t) % cyc.size()];
        return sl.first + (sl.second ? "+" : "-");
      };
      for (size_t k = 1; k < cyc.size(); ++k)
        for (size_t t = 0; t < cyc.size(); ++t) {
          auto a = key(k, t), b = key(best, t);
          if (a < b) { best = k; break; }
          if (a > b) break;
        }
      std::rotate(cyc.begin(), cyc.begin() + best, cyc.end());
      std::string fp;
      for (const auto& [id, fwd] : cyc) fp += id + (fwd ? "+" : "-") + "|";
      faces.push_back({fp, cyc});
    }
    std::sort(faces.begin(), faces.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int n = 0;
    for (auto& [fp, cyc] : faces) {
      CellRow row;
      row.id = std::string(names[s]) + ".f" + std::to_string(n++);
      row.sheet = s;
      row.boundary = cyc;
      cell_rows.push_back(row);
    }
  }

  Json cells = Json::array();
  Json faces_map;
  for (const auto& c : cell_rows) {
    cells.push_back(Json{{"id", c.id}, {"surface", names[c.sheet]}});
    Json cyc = Json::array();
    for (const auto& [id, fwd] : c.boundary)
      cyc.push_back(Json::array({id, fwd ? "+" : "-"}));
    faces_map[c.id] = cyc;
  }

  Json edges = Json::array();
  for (const auto& [id, row] : edge_rows)
    edges.push_back(Json{{"id", row.id}, {"type", row.type},
                         {"ends", Json::array({row.tail, row.head})}});

  // handlebodies
  const int sheets_of[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Json hbs = Json::array();
  for (int i = 0; i < 3; ++i) {
    std::string hid = "H" + std::to_string(i + 1);
    std::string ball = hid + ".B0";
    Json disk;
    disk["id"] = "D" + std::to_string(i + 1);
    Json cyc = Json::array();
    for (int k = 0; k < p[i]; ++k) {
      for (int ei : ann[down_sheet[i]].arc_pieces.at({i, 2 * k}))
        cyc.push_back(Json::array({ann[down_sheet[i]].edges[ei].id, "+"}));
      for (int ei : ann[up_sheet[i]].arc_pieces.at({i, 2 * k + 1}))
        cyc.push_back(Json::array({ann[up_sheet[i]].edges[ei].id, "+"}));
    }
    disk["boundary"] = cyc;
    disk["balls"] = Json{{"+", ball}, {"-", ball}};
    Json cb;
    for (const auto& c : cell_rows)
      if (c.sheet == sheets_of[i][0] || c.sheet == sheets_of[i][1]) cb[c.id] = ball;
    hbs.push_back(Json{{"id", hid},
                       {"genus", 1},
                       {"balls", Json::array({ball})},
                       {"meridian_disks", Json::array({disk})},
                       {"cell_ball", cb}});
  }
  doc["handlebodies"] = hbs;
  doc["cells"] = cells;
  doc["edges"] = edges;
  doc["faces"] = faces_map;
  doc["face_surfaces"] = Json::array({Json{{"id", "S12"}, {"handlebodies", Json::array({"H1", "H2"})}},
                                      Json{{"id", "S13"}, {"handlebodies", Json::array({"H1", "H3"})}},
                                      Json{{"id", "S23"}, {"handlebodies", Json::array({"H2", "H3"})}}});
  Json tP = Json::array(), tM = Json::array();
  for (int j = 0; j < N; ++j) {
    tP.push_back(Json::array({"tP.e" + std::to_string(j), "+"}));
    tM.push_back(Json::array({"tM.e" + std::to_string(j), "+"}));
  }
  doc["gluings"] = Json{{"triple_curves", Json::array({tP, tM})}};
  (void)edge_key;
  return doc;
}

}  // namespace diskcond
