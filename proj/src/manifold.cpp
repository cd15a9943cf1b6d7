#include "diskcond/manifold.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <sstream>

namespace diskcond {

namespace {

struct Collector {
  std::vector<Violation> violations;
  void add(const std::string& code, const std::string& detail) {
    violations.push_back({code, detail});
  }
  bool ok() const { return violations.empty(); }
};

bool is_sign(const std::string& s) { return s == "+" || s == "-"; }

char sign_char(const std::string& s) { return s == "+" ? '+' : '-'; }

// Parses [["edge","+"],...] into slots, resolving edge ids.
bool parse_slots(const Json& arr, const std::map<std::string, int>& edge_ix,
                 std::vector<Slot>* out, Collector* c, const std::string& where) {
  if (!arr.is_array() || arr.empty()) {
    c->add("bad-cycle", where + ": expected a nonempty array of [edge, dir] pairs");
    return false;
  }
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() ||
        !item[1].is_string() || !is_sign(item[1].get<std::string>())) {
      c->add("bad-cycle", where + ": malformed [edge, dir] entry");
      return false;
    }
    auto it = edge_ix.find(item[0].get<std::string>());
    if (it == edge_ix.end()) {
      c->add("unknown-edge", where + ": unknown edge " + item[0].get<std::string>());
      return false;
    }
    out->push_back({it->second, item[1].get<std::string>() == "+"});
  }
  return true;
}

Json slots_json(const ManifoldSpec& spec, const std::vector<Slot>& slots) {
  Json arr = Json::array();
  for (const auto& s : slots)
    arr.push_back(Json::array({spec.edges[s.edge].id, s.forward ? "+" : "-"}));
  return arr;
}

// Minimal rotation of a cyclic slot list, for canonical serialization.
std::vector<Slot> canonical_rotation(const ManifoldSpec& spec, std::vector<Slot> v) {
  if (v.empty()) return v;
  auto key = [&](const Slot& s) {
    return spec.edges[s.edge].id + (s.forward ? "+" : "-");
  };
  size_t best = 0;
  for (size_t k = 1; k < v.size(); ++k) {
    for (size_t t = 0; t < v.size(); ++t) {
      auto a = key(v[(k + t) % v.size()]);
      auto b = key(v[(best + t) % v.size()]);
      if (a < b) { best = k; break; }
      if (a > b) break;
    }
  }
  std::rotate(v.begin(), v.begin() + best, v.end());
  return v;
}

const std::string& slot_tail(const ManifoldSpec& spec, const Slot& s) {
  const Edge& e = spec.edges[s.edge];
  return s.forward ? e.tail : e.head;
}
const std::string& slot_head(const ManifoldSpec& spec, const Slot& s) {
  const Edge& e = spec.edges[s.edge];
  return s.forward ? e.head : e.tail;
}

}  // namespace

int ManifoldSpec::max_n() const {
  return std::max({disk_profile[0], disk_profile[1], disk_profile[2]});
}

int ManifoldSpec::third_sheet_cell(int e, int hb) const {
  // the one occurrence of the triple edge in the sheet not bounding hb
  for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
    if (cell_bounds(c, hb)) continue;
    for (const auto& s : cells[c].boundary)
      if (s.edge == e) return c;
  }
  return -1;
}

int ManifoldSpec::cross_ball(int hb, int d, char side, int ball) const {
  const MeridianDisk& disk = handlebodies[hb].disks[d];
  char from = side == '+' ? '-' : '+';
  if (disk.ball(from) != ball) return -1;
  return disk.ball(side);
}

LoadResult load_manifold(const Json& doc) {
  Collector col;
  LoadResult res;

  if (!doc.is_object()) {
    col.add("bad-document", "top level is not an object");
    res.violations = col.violations;
    return res;
  }
  if (!doc.contains("schema") || doc["schema"] != "diskcond/1")
    col.add("bad-schema", "missing or unsupported schema tag (want \"diskcond/1\")");
  for (const char* key :
       {"disk_profile", "handlebodies", "cells", "edges", "faces", "face_surfaces", "gluings"})
    if (!doc.contains(key)) col.add("missing-key", std::string("missing top-level key ") + key);
  if (!col.ok()) {
    res.violations = col.violations;
    return res;
  }

  ManifoldSpec spec;

  // profile
  {
    const auto& p = doc["disk_profile"];
    if (!p.is_array() || p.size() != 3 || !p[0].is_number_integer() ||
        !p[1].is_number_integer() || !p[2].is_number_integer()) {
      col.add("bad-profile", "disk_profile must be three integers");
    } else {
      for (int i = 0; i < 3; ++i) {
        spec.disk_profile[i] = p[i].get<int>();
        if (spec.disk_profile[i] <= 0)
          col.add("bad-profile", "disk_profile entries must be positive");
      }
    }
  }

  // handlebody ids first (edges refer to them)
  if (!doc["handlebodies"].is_array() || doc["handlebodies"].size() != 3) {
    col.add("bad-handlebodies", "expected exactly three handlebodies");
    res.violations = col.violations;
    return res;
  }
  for (const auto& h : doc["handlebodies"]) {
    if (!h.is_object() || !h.contains("id") || !h["id"].is_string()) {
      col.add("bad-handlebodies", "handlebody without id");
      res.violations = col.violations;
      return res;
    }
    std::string id = h["id"].get<std::string>();
    if (spec.hb_ix.count(id)) col.add("duplicate-id", "handlebody " + id);
    spec.hb_ix[id] = static_cast<int>(spec.handlebodies.size());
    Handlebody hb;
    hb.id = id;
    spec.handlebodies.push_back(hb);
  }

  // face surfaces
  if (!doc["face_surfaces"].is_array() || doc["face_surfaces"].empty())
    col.add("bad-face-surfaces", "face_surfaces must be a nonempty array");
  else {
    for (const auto& fs : doc["face_surfaces"]) {
      if (!fs.is_object() || !fs.contains("id") || !fs.contains("handlebodies") ||
          !fs["handlebodies"].is_array() || fs["handlebodies"].size() != 2) {
        col.add("bad-face-surfaces", "face surface needs id and two handlebodies");
        continue;
      }
      FaceSurface s;
      s.id = fs["id"].get<std::string>();
      if (spec.surf_ix.count(s.id)) col.add("duplicate-id", "face surface " + s.id);
      bool sides_ok = true;
      for (int k = 0; k < 2; ++k) {
        auto it = spec.hb_ix.find(fs["handlebodies"][k].get<std::string>());
        if (it == spec.hb_ix.end()) {
          col.add("unknown-id", "face surface " + s.id + " names unknown handlebody");
          sides_ok = false;
        } else {
          s.handlebodies[k] = it->second;
        }
      }
      if (sides_ok && s.handlebodies[0] == s.handlebodies[1])
        col.add("bad-face-surfaces", "face surface " + s.id + " must bound two distinct handlebodies");
      if (sides_ok && s.handlebodies[0] > s.handlebodies[1])
        std::swap(s.handlebodies[0], s.handlebodies[1]);
      spec.surf_ix[s.id] = static_cast<int>(spec.surfaces.size());
      spec.surfaces.push_back(s);
    }
  }

  // disk ids must be declared before edges can reference them
  struct DiskKey { int hb; int disk; };
  std::map<std::string, DiskKey> disk_ix;
  {
    int hix = 0;
    for (const auto& h : doc["handlebodies"]) {
      Handlebody& hb = spec.handlebodies[hix];
      if (!h.contains("genus") || !h["genus"].is_number_integer() || h["genus"].get<int>() < 0)
        col.add("bad-handlebody", hb.id + ": genus must be a nonnegative integer");
      else
        hb.genus = h["genus"].get<int>();
      if (h.contains("balls") && h["balls"].is_array())
        for (const auto& b : h["balls"]) hb.balls.push_back(b.get<std::string>());
      if (hb.balls.empty()) col.add("bad-handlebody", hb.id + ": no balls");
      if (h.contains("meridian_disks") && h["meridian_disks"].is_array()) {
        for (const auto& d : h["meridian_disks"]) {
          if (!d.is_object() || !d.contains("id")) {
            col.add("bad-disk", hb.id + ": disk without id");
            continue;
          }
          MeridianDisk md;
          md.id = d["id"].get<std::string>();
          if (disk_ix.count(md.id)) col.add("duplicate-id", "disk " + md.id);
          disk_ix[md.id] = {hix, static_cast<int>(hb.disks.size())};
          hb.disks.push_back(md);
        }
      }
      ++hix;
    }
  }

  // edges
  if (!doc["edges"].is_array()) col.add("bad-edges", "edges must be an array");
  else {
    for (const auto& e : doc["edges"]) {
      if (!e.is_object() || !e.contains("id") || !e.contains("type") || !e.contains("ends") ||
          !e["ends"].is_array() || e["ends"].size() != 2) {
        col.add("bad-edge", "edge needs id, type and two ends");
        continue;
      }
      Edge ed;
      ed.id = e["id"].get<std::string>();
      if (spec.edge_ix.count(ed.id)) col.add("duplicate-id", "edge " + ed.id);
      ed.tail = e["ends"][0].get<std::string>();
      ed.head = e["ends"][1].get<std::string>();
      const auto& t = e["type"];
      if (t.is_string() && t == "triple") {
        ed.kind = EdgeKind::Triple;
      } else if (t.is_object() && t.contains("disk") && t["disk"].is_array() &&
                 t["disk"].size() == 3 && t["disk"][2].is_array() && t["disk"][2].size() == 2) {
        ed.kind = EdgeKind::Disk;
        std::string owner = t["disk"][0].get<std::string>();
        std::string disk = t["disk"][1].get<std::string>();
        auto hit = spec.hb_ix.find(owner);
        auto dit = disk_ix.find(disk);
        if (hit == spec.hb_ix.end())
          col.add("unknown-id", "edge " + ed.id + ": unknown handlebody " + owner);
        if (dit == disk_ix.end())
          col.add("unknown-id", "edge " + ed.id + ": unknown disk " + disk);
        if (hit != spec.hb_ix.end() && dit != disk_ix.end()) {
          if (dit->second.hb != hit->second)
            col.add("bad-edge", "edge " + ed.id + ": disk " + disk + " not owned by " + owner);
          ed.disk.handlebody = dit->second.hb;
          ed.disk.disk = dit->second.disk;
        }
        std::string sl = t["disk"][2][0].get<std::string>(), sr = t["disk"][2][1].get<std::string>();
        if (!is_sign(sl) || !is_sign(sr) || sl == sr)
          col.add("bad-edge", "edge " + ed.id + ": sign pair must be {+,-}");
        else {
          ed.disk.side_left = sign_char(sl);
          ed.disk.side_right = sign_char(sr);
        }
      } else {
        col.add("bad-edge", "edge " + ed.id + ": malformed type");
        continue;
      }
      spec.edge_ix[ed.id] = static_cast<int>(spec.edges.size());
      spec.edges.push_back(ed);
    }
  }
  if (!col.ok()) {
    res.violations = col.violations;
    return res;
  }

  // cells + their boundary polygons from "faces"
  if (!doc["cells"].is_array()) col.add("bad-cells", "cells must be an array");
  else {
    const Json& faces = doc["faces"];
    if (!faces.is_object()) col.add("bad-faces", "faces must map cell ids to boundary cycles");
    for (const auto& c : doc["cells"]) {
      if (!c.is_object() || !c.contains("id") || !c.contains("surface")) {
        col.add("bad-cell", "cell needs id and surface");
        continue;
      }
      Cell cell;
      cell.id = c["id"].get<std::string>();
      if (spec.cell_ix.count(cell.id)) col.add("duplicate-id", "cell " + cell.id);
      auto sit = spec.surf_ix.find(c["surface"].get<std::string>());
      if (sit == spec.surf_ix.end()) {
        col.add("unknown-id", "cell " + cell.id + ": unknown face surface");
        continue;
      }
      cell.surface = sit->second;
      if (!faces.is_object() || !faces.contains(cell.id)) {
        col.add("missing-face", "cell " + cell.id + " has no boundary polygon in faces");
        continue;
      }
      if (!parse_slots(faces[cell.id], spec.edge_ix, &cell.boundary, &col, "cell " + cell.id))
        continue;
      spec.cell_ix[cell.id] = static_cast<int>(spec.cells.size());
      spec.surfaces[cell.surface].cells.push_back(static_cast<int>(spec.cells.size()));
      spec.cells.push_back(cell);
    }
  }
  if (!col.ok()) {
    res.violations = col.violations;
    return res;
  }

  // remaining handlebody data: disk boundaries, ball attachments, cell_ball
  {
    int hix = 0;
    for (const auto& h : doc["handlebodies"]) {
      Handlebody& hb = spec.handlebodies[hix];
      std::map<std::string, int> ball_ix;
      for (int b = 0; b < static_cast<int>(hb.balls.size()); ++b) ball_ix[hb.balls[b]] = b;
      int dix = 0;
      if (h.contains("meridian_disks") && h["meridian_disks"].is_array()) {
        for (const auto& d : h["meridian_disks"]) {
          if (!d.is_object() || !d.contains("id")) continue;
          MeridianDisk& md = hb.disks[dix];
          if (d.contains("boundary"))
            parse_slots(d["boundary"], spec.edge_ix, &md.boundary, &col, "disk " + md.id);
          else
            col.add("bad-disk", "disk " + md.id + ": missing boundary");
          if (d.contains("balls") && d["balls"].is_object() && d["balls"].contains("+") &&
              d["balls"].contains("-")) {
            auto bp = ball_ix.find(d["balls"]["+"].get<std::string>());
            auto bm = ball_ix.find(d["balls"]["-"].get<std::string>());
            if (bp == ball_ix.end() || bm == ball_ix.end())
              col.add("unknown-id", "disk " + md.id + ": side attached to unknown ball");
            else {
              md.ball_plus = bp->second;
              md.ball_minus = bm->second;
            }
          } else {
            col.add("bad-disk", "disk " + md.id + ": missing ball attachments");
          }
          ++dix;
        }
      }
      if (h.contains("cell_ball") && h["cell_ball"].is_object()) {
        for (auto it = h["cell_ball"].begin(); it != h["cell_ball"].end(); ++it) {
          auto cit = spec.cell_ix.find(it.key());
          auto bit = ball_ix.find(it.value().get<std::string>());
          if (cit == spec.cell_ix.end())
            col.add("unknown-id", hb.id + ".cell_ball: unknown cell " + it.key());
          else if (bit == ball_ix.end())
            col.add("unknown-id", hb.id + ".cell_ball: unknown ball for cell " + it.key());
          else
            hb.cell_ball[cit->second] = bit->second;
        }
      } else {
        col.add("bad-handlebody", hb.id + ": missing cell_ball");
      }
      ++hix;
    }
  }

  // triple curves
  if (!doc["gluings"].is_object() || !doc["gluings"].contains("triple_curves") ||
      !doc["gluings"]["triple_curves"].is_array()) {
    col.add("bad-gluings", "gluings.triple_curves must be an array of edge cycles");
  } else {
    int tix = 0;
    for (const auto& tc : doc["gluings"]["triple_curves"]) {
      std::vector<Slot> cyc;
      if (parse_slots(tc, spec.edge_ix, &cyc, &col, "triple curve #" + std::to_string(tix)))
        spec.triple_curves.push_back(cyc);
      ++tix;
    }
  }
  if (!col.ok()) {
    res.violations = col.violations;
    return res;
  }

  // ------------------------------------------------------------------
  // structural validation on the resolved tables
  // ------------------------------------------------------------------

  // vertex chain consistency of every stored cycle
  auto check_cycle = [&](const std::vector<Slot>& cyc, const std::string& where) {
    for (size_t k = 0; k < cyc.size(); ++k) {
      const Slot& a = cyc[k];
      const Slot& b = cyc[(k + 1) % cyc.size()];
      if (slot_head(spec, a) != slot_tail(spec, b))
        col.add("broken-cycle", where + ": edge " + spec.edges[a.edge].id +
                                    " does not chain into " + spec.edges[b.edge].id);
    }
  };
  for (const auto& c : spec.cells) check_cycle(c.boundary, "cell " + c.id);
  for (const auto& hb : spec.handlebodies)
    for (const auto& d : hb.disks) check_cycle(d.boundary, "disk " + d.id);
  {
    int tix = 0;
    for (const auto& tc : spec.triple_curves)
      check_cycle(tc, "triple curve #" + std::to_string(tix++));
  }

  // vertices
  {
    std::set<std::string> vs;
    for (const auto& e : spec.edges) {
      vs.insert(e.tail);
      vs.insert(e.head);
    }
    spec.vertices.assign(vs.begin(), vs.end());
  }

  // global occurrences
  std::map<int, std::vector<Occ>> occ;
  for (int c = 0; c < static_cast<int>(spec.cells.size()); ++c) {
    const auto& b = spec.cells[c].boundary;
    for (int k = 0; k < static_cast<int>(b.size()); ++k)
      occ[b[k].edge].push_back({c, k, b[k].forward});
  }

  for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
    const Edge& ed = spec.edges[e];
    auto it = occ.find(e);
    int n = it == occ.end() ? 0 : static_cast<int>(it->second.size());
    if (ed.kind == EdgeKind::Triple) {
      if (n != 3) {
        col.add("triple-edge-sheets",
                "triple edge " + ed.id + " is incident to " + std::to_string(n) +
                    " cell occurrences, want 3 (one per sheet)");
        continue;
      }
      std::set<int> sheets;
      for (const auto& o : it->second) sheets.insert(spec.cells[o.cell].surface);
      if (sheets.size() != 3)
        col.add("triple-edge-sheets", "triple edge " + ed.id + " does not meet three distinct sheets");
    } else {
      if (n != 2) {
        col.add("disk-edge-occ", "disk edge " + ed.id + " has " + std::to_string(n) +
                                     " cell occurrences, want 2");
        continue;
      }
      int s0 = spec.cells[it->second[0].cell].surface;
      int s1 = spec.cells[it->second[1].cell].surface;
      if (s0 != s1)
        col.add("disk-edge-occ", "disk edge " + ed.id + " spans two face surfaces");
      else {
        // a disk trace lies on a sheet bounding its owner
        auto sides = spec.surfaces[s0].handlebodies;
        if (sides[0] != ed.disk.handlebody && sides[1] != ed.disk.handlebody)
          col.add("disk-edge-owner",
                  "disk edge " + ed.id + " lies on a sheet not bounding its owner");
      }
      if (it->second[0].forward == it->second[1].forward)
        col.add("disk-edge-orient", "disk edge " + ed.id +
                                        ": sheet orientation is not coherent across it");
    }
  }

  // every face surface: nonempty cell set, nonempty triple boundary, and all
  // interior edges owned by one of its two sides
  for (const auto& s : spec.surfaces) {
    if (s.cells.empty()) {
      col.add("empty-surface", "face surface " + s.id + " has no cells");
      continue;
    }
    bool has_triple = false;
    for (int c : s.cells)
      for (const auto& sl : spec.cells[c].boundary) {
        const Edge& ed = spec.edges[sl.edge];
        if (ed.kind == EdgeKind::Triple) has_triple = true;
        else if (ed.disk.handlebody != s.handlebodies[0] &&
                 ed.disk.handlebody != s.handlebodies[1])
          col.add("foreign-disk-owner", "face surface " + s.id + " carries a trace of " +
                                            spec.edges[sl.edge].id + " owned by neither side");
      }
    if (!has_triple)
      col.add("empty-boundary", "face surface " + s.id + " has empty boundary");
  }

  // triple curve cycles must cover each triple edge exactly once
  {
    std::map<int, int> seen;
    for (const auto& tc : spec.triple_curves)
      for (const auto& sl : tc) {
        if (spec.edges[sl.edge].kind != EdgeKind::Triple)
          col.add("bad-triple-curve", "triple curve contains non-triple edge " +
                                          spec.edges[sl.edge].id);
        seen[sl.edge]++;
      }
    for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e)
      if (spec.edges[e].kind == EdgeKind::Triple) {
        int k = seen.count(e) ? seen[e] : 0;
        if (k != 1)
          col.add("bad-triple-curve", "triple edge " + spec.edges[e].id + " appears " +
                                          std::to_string(k) + " times in triple curves");
      }
  }

  // disk boundaries cover each disk edge exactly once, with matching owner
  {
    std::map<int, int> seen;
    for (int h = 0; h < 3; ++h)
      for (int d = 0; d < static_cast<int>(spec.handlebodies[h].disks.size()); ++d)
        for (const auto& sl : spec.handlebodies[h].disks[d].boundary) {
          const Edge& ed = spec.edges[sl.edge];
          if (ed.kind != EdgeKind::Disk || ed.disk.handlebody != h || ed.disk.disk != d)
            col.add("bad-disk-boundary", "disk " + spec.handlebodies[h].disks[d].id +
                                             " boundary contains foreign edge " + ed.id);
          seen[sl.edge]++;
        }
    for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e)
      if (spec.edges[e].kind == EdgeKind::Disk) {
        int k = seen.count(e) ? seen[e] : 0;
        if (k != 1)
          col.add("bad-disk-boundary", "disk edge " + spec.edges[e].id + " appears " +
                                           std::to_string(k) + " times in disk boundaries");
      }
  }

  if (!col.ok()) {
    res.violations = col.violations;
    return res;
  }

  // per-handlebody boundary views
  for (int h = 0; h < 3; ++h) {
    auto vs = derive_boundary_view(&spec, h);
    for (auto& v : vs) col.violations.push_back(std::move(v));
  }

  res.violations = col.violations;
  if (col.ok()) res.spec = std::move(spec);
  return res;
}

std::vector<Violation> derive_boundary_view(ManifoldSpec* spec_ptr, int h) {
  ManifoldSpec& spec = *spec_ptr;
  Collector col;
  SurfaceView& view = spec.boundary[h];
  view = SurfaceView{};
  view.handlebody = h;
  for (int c = 0; c < static_cast<int>(spec.cells.size()); ++c)
    if (spec.cell_bounds(c, h)) view.cells.push_back(c);
  std::map<int, std::vector<Occ>> local;
  for (int c : view.cells) {
    const auto& b = spec.cells[c].boundary;
    for (int k = 0; k < static_cast<int>(b.size()); ++k)
      local[b[k].edge].push_back({c, k, b[k].forward});
  }
  for (auto& [e, v] : local) {
    if (v.size() != 2) {
      col.add("surface-not-closed",
              spec.handlebodies[h].id + ": edge " + spec.edges[e].id + " has " +
                  std::to_string(v.size()) + " occurrences on the boundary surface");
      continue;
    }
    view.edge_occ[e] = {v[0], v[1]};
    for (const auto& o : v) {
      auto& ce = view.cell_edges[o.cell];
      if (ce.empty() || ce.back() != e) ce.push_back(e);
    }
  }
  for (auto& [c, v] : view.cell_edges) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  const Handlebody& hb = spec.handlebodies[h];
  // cell_ball covers exactly the boundary cells
  for (int c : view.cells)
    if (!hb.cell_ball.count(c))
      col.add("missing-cell-ball", hb.id + ": no ball for cell " + spec.cells[c].id);
  for (const auto& [c, b] : hb.cell_ball)
    if (!spec.cell_bounds(c, h))
      col.add("stray-cell-ball", hb.id + ": cell " + spec.cells[c].id +
                                     " is not on this boundary");
  if (!col.ok()) return col.violations;

  // ball consistency across edges
  for (const auto& [e, o] : view.edge_occ) {
    const Edge& ed = spec.edges[e];
    int ba = hb.cell_ball.at(o[0].cell), bb = hb.cell_ball.at(o[1].cell);
    if (ed.kind == EdgeKind::Disk && ed.disk.handlebody == h) {
      const MeridianDisk& md = hb.disks[ed.disk.disk];
      // the cell on the left of the edge direction faces side_left
      const Occ& left = o[0].forward ? o[0] : o[1];
      const Occ& right = o[0].forward ? o[1] : o[0];
      if (hb.cell_ball.at(left.cell) != md.ball(ed.disk.side_left) ||
          hb.cell_ball.at(right.cell) != md.ball(ed.disk.side_right))
        col.add("ball-mismatch", hb.id + ": cell balls disagree with attachments of " +
                                     md.id + " across " + ed.id);
    } else if (ba != bb) {
      col.add("ball-mismatch", hb.id + ": edge " + ed.id +
                                   " separates distinct balls without a disk");
    }
  }

  // piece assignment = ball of the cell
  for (int c : view.cells) view.cell_piece[c] = hb.cell_ball.at(c);

  // Euler characteristic of the closed boundary surface
  {
    std::set<std::string> vs;
    std::set<int> es;
    for (const auto& [e, o] : view.edge_occ) {
      es.insert(e);
      vs.insert(spec.edges[e].tail);
      vs.insert(spec.edges[e].head);
    }
    int chi = static_cast<int>(vs.size()) - static_cast<int>(es.size()) +
              static_cast<int>(view.cells.size());
    if (chi != 2 - 2 * hb.genus)
      col.add("euler-mismatch", hb.id + ": boundary Euler characteristic " +
                                    std::to_string(chi) + " but genus " +
                                    std::to_string(hb.genus));
  }

  // ball graph shape
  {
    int nb = static_cast<int>(hb.balls.size());
    int nd = static_cast<int>(hb.disks.size());
    if (nd - nb + 1 != hb.genus)
      col.add("ball-graph-rank", hb.id + ": " + std::to_string(nd) + " disks and " +
                                     std::to_string(nb) +
                                     " balls are inconsistent with genus " +
                                     std::to_string(hb.genus));
    // connectivity
    std::vector<int> root(nb);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (const auto& d : hb.disks)
      if (d.ball_plus >= 0 && d.ball_minus >= 0) root[find(d.ball_plus)] = find(d.ball_minus);
    std::set<int> comps;
    for (int b = 0; b < nb; ++b) comps.insert(find(b));
    if (comps.size() > 1)
      col.add("ball-graph-disconnected", hb.id + ": ball graph is disconnected");
  }
  return col.violations;
}

std::vector<PieceReport> ball_decomposition_check(const ManifoldSpec& spec, int hb) {
  const Handlebody& h = spec.handlebodies[hb];
  const SurfaceView& view = spec.boundary[hb];
  std::vector<PieceReport> out;
  for (int b = 0; b < static_cast<int>(h.balls.size()); ++b) {
    PieceReport rep;
    rep.ball = h.balls[b];
    std::vector<int> piece;
    for (int c : view.cells)
      if (view.cell_piece.at(c) == b) piece.push_back(c);
    // circles: one per disk side attached to this ball
    for (const auto& d : h.disks) {
      if (d.ball_plus == b) rep.circles++;
      if (d.ball_minus == b) rep.circles++;
    }
    if (piece.empty()) {
      rep.connected = false;
      out.push_back(rep);
      continue;
    }
    // Euler characteristic of the union of closed cells.  Cut circles are
    // whole curves, so duplicated boundary edges and vertices cancel and the
    // union has the same characteristic as the cut-open piece.
    std::set<std::string> vs;
    std::set<int> es;
    for (int c : piece)
      for (const auto& sl : spec.cells[c].boundary) {
        es.insert(sl.edge);
        vs.insert(spec.edges[sl.edge].tail);
        vs.insert(spec.edges[sl.edge].head);
      }
    rep.euler = static_cast<int>(vs.size()) - static_cast<int>(es.size()) +
                static_cast<int>(piece.size());
    // connectivity through non-cut edges only
    std::map<int, int> root;
    for (int c : piece) root[c] = c;
    std::function<int(int)> find = [&](int x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (int c : piece)
      for (int e : view.cell_edges.at(c)) {
        const Edge& ed = spec.edges[e];
        if (ed.kind == EdgeKind::Disk && ed.disk.handlebody == hb) continue;  // cut edge
        int o = view.across(e, c);
        if (root.count(o)) root[find(c)] = find(o);
      }
    std::set<int> comps;
    for (int c : piece) comps.insert(find(c));
    rep.connected = comps.size() == 1;
    out.push_back(rep);
  }
  return out;
}

SurfaceDualGraph surface_dual_graph(const ManifoldSpec& spec, int hb) {
  SurfaceDualGraph g;
  g.handlebody = hb;
  const SurfaceView& view = spec.boundary[hb];
  for (int c : view.cells) g.nodes.push_back(spec.cells[c].id);
  std::sort(g.nodes.begin(), g.nodes.end());
  std::vector<int> es;
  for (const auto& [e, o] : view.edge_occ) es.push_back(e);
  std::sort(es.begin(), es.end(), [&](int a, int b) { return spec.edges[a].id < spec.edges[b].id; });
  for (int e : es) {
    const auto& o = view.edge_occ.at(e);
    const Edge& ed = spec.edges[e];
    SurfaceDualGraph::Arc a;
    a.edge = ed.id;
    a.cell_a = spec.cells[o[0].cell].id;
    a.cell_b = spec.cells[o[1].cell].id;
    if (ed.kind == EdgeKind::Triple) {
      a.kind = "triple";
    } else {
      a.kind = "disk";
      a.owner = spec.handlebodies[ed.disk.handlebody].id;
      a.disk = spec.handlebodies[ed.disk.handlebody].disks[ed.disk.disk].id;
      a.sign_left = std::string(1, ed.disk.side_left);
      a.sign_right = std::string(1, ed.disk.side_right);
    }
    g.arcs.push_back(a);
  }
  return g;
}

BallGraph ball_graph(const ManifoldSpec& spec, int hb) {
  BallGraph g;
  g.handlebody = hb;
  const Handlebody& h = spec.handlebodies[hb];
  g.nodes = h.balls;
  for (const auto& d : h.disks) g.arcs.push_back({d.id, d.ball_minus, d.ball_plus});
  return g;
}

Json dual_graph_json(const SurfaceDualGraph& g) {
  Json j;
  j["nodes"] = g.nodes;
  Json arcs = Json::array();
  for (const auto& a : g.arcs) {
    Json e;
    e["edge"] = a.edge;
    e["cells"] = Json::array({a.cell_a, a.cell_b});
    e["kind"] = a.kind;
    if (a.kind == "disk") {
      e["owner"] = a.owner;
      e["disk"] = a.disk;
      e["signs"] = Json::array({a.sign_left, a.sign_right});
    }
    arcs.push_back(e);
  }
  j["arcs"] = arcs;
  return j;
}

Json ball_graph_json(const BallGraph& g) {
  Json j;
  j["nodes"] = g.nodes;
  Json arcs = Json::array();
  for (const auto& a : g.arcs)
    arcs.push_back(Json{{"disk", a.disk},
                        {"balls", Json::array({g.nodes[a.ball_minus], g.nodes[a.ball_plus]})}});
  j["arcs"] = arcs;
  return j;
}

Json ManifoldSpec::serialize() const {
  Json doc;
  doc["schema"] = "diskcond/1";
  doc["disk_profile"] = Json::array({disk_profile[0], disk_profile[1], disk_profile[2]});

  Json hbs = Json::array();
  for (const auto& h : handlebodies) {
    Json hj;
    hj["id"] = h.id;
    hj["genus"] = h.genus;
    hj["balls"] = h.balls;
    Json disks = Json::array();
    for (const auto& d : h.disks) {
      Json dj;
      dj["id"] = d.id;
      dj["boundary"] = slots_json(*this, d.boundary);
      dj["balls"] = Json{{"+", h.balls[d.ball_plus]}, {"-", h.balls[d.ball_minus]}};
      disks.push_back(dj);
    }
    hj["meridian_disks"] = disks;
    Json cb;
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [c, b] : h.cell_ball) rows.push_back({cells[c].id, h.balls[b]});
    std::sort(rows.begin(), rows.end());
    for (const auto& [c, b] : rows) cb[c] = b;
    hj["cell_ball"] = cb;
    hbs.push_back(hj);
  }
  doc["handlebodies"] = hbs;

  std::vector<int> corder(cells.size());
  std::iota(corder.begin(), corder.end(), 0);
  std::sort(corder.begin(), corder.end(),
            [&](int a, int b) { return cells[a].id < cells[b].id; });
  Json cj = Json::array();
  Json fj;
  for (int c : corder) {
    cj.push_back(Json{{"id", cells[c].id}, {"surface", surfaces[cells[c].surface].id}});
    fj[cells[c].id] = slots_json(*this, canonical_rotation(*this, cells[c].boundary));
  }
  doc["cells"] = cj;

  std::vector<int> eorder(edges.size());
  std::iota(eorder.begin(), eorder.end(), 0);
  std::sort(eorder.begin(), eorder.end(),
            [&](int a, int b) { return edges[a].id < edges[b].id; });
  Json ej = Json::array();
  for (int e : eorder) {
    const Edge& ed = edges[e];
    Json t;
    if (ed.kind == EdgeKind::Triple) t = "triple";
    else {
      const Handlebody& owner = handlebodies[ed.disk.handlebody];
      t = Json{{"disk", Json::array({owner.id, owner.disks[ed.disk.disk].id,
                                     Json::array({std::string(1, ed.disk.side_left),
                                                  std::string(1, ed.disk.side_right)})})}};
    }
    ej.push_back(Json{{"id", ed.id}, {"type", t}, {"ends", Json::array({ed.tail, ed.head})}});
  }
  doc["edges"] = ej;
  doc["faces"] = fj;

  Json sj = Json::array();
  std::vector<int> sorder(surfaces.size());
  std::iota(sorder.begin(), sorder.end(), 0);
  std::sort(sorder.begin(), sorder.end(),
            [&](int a, int b) { return surfaces[a].id < surfaces[b].id; });
  for (int s : sorder)
    sj.push_back(Json{{"id", surfaces[s].id},
                      {"handlebodies", Json::array({handlebodies[surfaces[s].handlebodies[0]].id,
                                                    handlebodies[surfaces[s].handlebodies[1]].id})}});
  doc["face_surfaces"] = sj;

  Json tc = Json::array();
  for (const auto& t : triple_curves) tc.push_back(slots_json(*this, canonical_rotation(*this, t)));
  doc["gluings"] = Json{{"triple_curves", tc}};
  return doc;
}

}  // namespace diskcond
