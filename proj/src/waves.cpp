#include "diskcond/waves.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace diskcond {

namespace {

bool own_disk_edge(const ManifoldSpec& spec, int hb, int e) {
  const Edge& ed = spec.edges[e];
  return ed.kind == EdgeKind::Disk && ed.disk.handlebody == hb;
}

char slot_facing_side(const ManifoldSpec& spec, int c, int pos) {
  const Slot& sl = spec.cells[c].boundary[pos];
  const Edge& ed = spec.edges[sl.edge];
  return sl.forward ? ed.disk.side_left : ed.disk.side_right;
}

// slot positions of cell c lying on the given circle
std::vector<int> circle_slots(const ManifoldSpec& spec, int hb, int c, Circle circ) {
  std::vector<int> out;
  const auto& b = spec.cells[c].boundary;
  for (int k = 0; k < static_cast<int>(b.size()); ++k) {
    if (!own_disk_edge(spec, hb, b[k].edge)) continue;
    const Edge& ed = spec.edges[b[k].edge];
    if (ed.disk.disk == circ.disk && slot_facing_side(spec, c, k) == circ.side)
      out.push_back(k);
  }
  return out;
}

// ------------------------------------------------------------------
// cut construction
// ------------------------------------------------------------------

struct Site {
  int slot = -1;
  int sub = 0;           // order within a shared slot
  int chord = -1;        // chord index
};

// tokens of a cut polygon boundary: whole slots and slot fragments
struct Token {
  int slot = -1;
  int part = 0;  // 0 whole, 1 pre (tail side), 2 mid, 3 post (head side)
};

struct CellCut {
  std::vector<Site> sites;                 // cyclic order
  std::vector<std::vector<Token>> arcs;    // tokens between consecutive sites
  std::vector<int> arc_region;             // region id per arc
  int regions = 0;
};

// Splits one polygon along its chords.  Returns false when the chords cannot
// be drawn disjoint (region count differs from chords+1).
bool cut_cell(const ManifoldSpec& spec, int c, std::vector<Site> sites, CellCut* out) {
  const auto& boundary = spec.cells[c].boundary;
  int n = static_cast<int>(boundary.size());
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
    return a.slot != b.slot ? a.slot < b.slot : a.sub < b.sub;
  });
  int m = static_cast<int>(sites.size());
  out->sites = sites;
  out->arcs.assign(m, {});
  // walk the boundary once, distributing tokens to the arc after each site
  // arc i holds tokens strictly between sites[i] and sites[i+1]
  auto arc_ix = [&](int after_site) { return after_site; };
  std::map<int, std::vector<int>> by_slot;
  for (int i = 0; i < m; ++i) by_slot[sites[i].slot].push_back(i);
  int cur = m - 1;  // tokens before the first site belong to the last arc
  for (int k = 0; k < n; ++k) {
    auto it = by_slot.find(k);
    if (it == by_slot.end()) {
      out->arcs[arc_ix(cur)].push_back({k, 0});
      continue;
    }
    const auto& here = it->second;
    out->arcs[arc_ix(cur)].push_back({k, 1});  // pre fragment
    for (size_t q = 0; q < here.size(); ++q) {
      cur = here[q];
      if (q + 1 < here.size()) out->arcs[arc_ix(cur)].push_back({k, 2});  // mid
    }
    out->arcs[arc_ix(cur)].push_back({k, 3});  // post fragment
  }
  // trace regions: follow an arc to its ending site, jump along the chord,
  // continue with the arc that starts at the partner site
  std::vector<int> partner(m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && sites[i].chord == sites[j].chord) partner[i] = j;
  for (int i = 0; i < m; ++i)
    if (partner[i] < 0) return false;
  out->arc_region.assign(m, -1);
  int regions = 0;
  for (int a0 = 0; a0 < m; ++a0) {
    if (out->arc_region[a0] != -1) continue;
    int a = a0;
    do {
      out->arc_region[a] = regions;
      int end_site = (a + 1) % m;  // arc a ends at sites[a+1]
      int p = partner[end_site];
      a = p;  // the arc starting at sites[p] is arc p
    } while (a != a0);
    ++regions;
  }
  out->regions = regions;
  int chords = m / 2;
  return regions == chords + 1;
}

}  // namespace

std::vector<Circle> piece_circles(const ManifoldSpec& spec, int hb, int piece) {
  std::vector<Circle> out;
  const Handlebody& h = spec.handlebodies[hb];
  for (int d = 0; d < static_cast<int>(h.disks.size()); ++d) {
    if (h.disks[d].ball_plus == piece) out.push_back({d, '+'});
    if (h.disks[d].ball_minus == piece) out.push_back({d, '-'});
  }
  return out;
}

int circle_count(const ManifoldSpec& spec, int hb, int piece) {
  return static_cast<int>(piece_circles(spec, hb, piece).size());
}

EssentialCheck wave_essential(const ManifoldSpec& spec, const WaveCandidate& w) {
  EssentialCheck res;
  const SurfaceView& view = spec.boundary[w.handlebody];

  // visited cell sequence
  std::vector<int> cells{w.start_cell};
  for (const auto& s : w.steps) cells.push_back(view.edge_occ.at(s.edge)[s.enter_occ].cell);
  int k = static_cast<int>(w.steps.size());

  // strands per cell; chord ids number the strands
  struct Strand {
    Site a, b;
  };
  std::map<int, std::vector<Strand>> strands;
  std::set<int> crossed;  // edges crossed by the wave
  auto exit_site = [&](int step_ix, int from_cell) {
    const PathStep& st = w.steps[step_ix];
    const auto& occ = view.edge_occ.at(st.edge);
    const Occ& ex = occ[1 - st.enter_occ];
    if (ex.cell != from_cell)
      throw std::runtime_error("wave_essential: step does not exit the current cell");
    return Site{ex.pos, 0, step_ix + 1};
  };
  auto entry_site = [&](int step_ix) {
    const PathStep& st = w.steps[step_ix];
    const Occ& en = view.edge_occ.at(st.edge)[st.enter_occ];
    return Site{en.pos, 0, step_ix + 1};
  };
  for (const auto& s : w.steps) crossed.insert(s.edge);

  // chords: 0 = the endpoint-to-endpoint strand pieces; crossings are chords
  // shared across cells, so we instead build per-cell chords locally
  {
    // per-cell list of (site, site) pairs with local chord numbering
    std::map<int, std::vector<std::pair<Site, Site>>> raw;
    if (k == 0) {
      Site a{w.start_slot, w.start_sub, 0};
      Site b{w.end_slot, w.end_sub, 0};
      raw[w.start_cell].push_back({a, b});
    } else {
      Site a{w.start_slot, w.start_sub, 0};
      raw[cells[0]].push_back({a, exit_site(0, cells[0])});
      for (int t = 1; t < k; ++t) raw[cells[t]].push_back({entry_site(t - 1), exit_site(t, cells[t])});
      Site b{w.end_slot, w.end_sub, 0};
      raw[cells[k]].push_back({entry_site(k - 1), b});
    }
    for (auto& [c, ss] : raw) {
      int id = 0;
      for (auto& [a, b] : ss) {
        Strand st;
        st.a = a;
        st.b = b;
        st.a.chord = st.b.chord = id++;
        strands[c].push_back(st);
      }
    }
  }

  // cut every touched cell
  std::map<int, CellCut> cuts;
  for (const auto& [c, ss] : strands) {
    std::vector<Site> sites;
    for (const auto& st : ss) {
      sites.push_back(st.a);
      sites.push_back(st.b);
    }
    CellCut cut;
    if (!cut_cell(spec, c, sites, &cut)) return res;  // not embeddable
    cuts[c] = cut;
  }
  res.embeddable = true;

  // region nodes: (cell, region); untouched cells have a single region 0
  auto node = [&](int c, int r) { return std::make_pair(c, r); };
  std::map<std::pair<int, int>, int> root_ix;
  std::vector<int> uf;
  auto get = [&](std::pair<int, int> key) {
    auto it = root_ix.find(key);
    if (it != root_ix.end()) return it->second;
    int ix = static_cast<int>(uf.size());
    root_ix[key] = ix;
    uf.push_back(ix);
    return ix;
  };
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  auto unite = [&](std::pair<int, int> a, std::pair<int, int> b) {
    uf[find(get(a))] = find(get(b));
  };

  // token -> region lookup for touched cells
  auto region_of_token = [&](int c, int slot, int part) -> int {
    auto it = cuts.find(c);
    if (it == cuts.end()) return 0;
    for (int a = 0; a < static_cast<int>(it->second.arcs.size()); ++a)
      for (const auto& tk : it->second.arcs[a])
        if (tk.slot == slot && tk.part == part) return it->second.arc_region[a];
    return -1;
  };

  const int piece = w.piece;
  for (const auto& [e, occ] : view.edge_occ) {
    if (own_disk_edge(spec, w.handlebody, e)) continue;  // cut boundary of the piece
    if (view.cell_piece.at(occ[0].cell) != piece) continue;
    if (!crossed.count(e)) {
      int r0 = region_of_token(occ[0].cell, occ[0].pos, 0);
      int r1 = region_of_token(occ[1].cell, occ[1].pos, 0);
      if (r0 < 0 || r1 < 0) throw std::runtime_error("wave_essential: token lookup failed");
      unite(node(occ[0].cell, r0), node(occ[1].cell, r1));
    } else {
      // halves pair up by the shared edge endpoint: the pre fragment touches
      // the slot's in-cell tail vertex
      for (int endv = 0; endv < 2; ++endv) {  // 0 = edge tail, 1 = edge head
        int parts[2];
        for (int q = 0; q < 2; ++q) {
          bool fwd = occ[q].forward;
          // in-cell tail is the edge tail iff the occurrence is forward
          bool tail_side = (endv == 0) == fwd;
          parts[q] = tail_side ? 1 : 3;
        }
        int r0 = region_of_token(occ[0].cell, occ[0].pos, parts[0]);
        int r1 = region_of_token(occ[1].cell, occ[1].pos, parts[1]);
        if (r0 < 0 || r1 < 0) throw std::runtime_error("wave_essential: half lookup failed");
        unite(node(occ[0].cell, r0), node(occ[1].cell, r1));
      }
    }
  }
  // make sure every region of every piece cell is present
  for (int c : view.cells) {
    if (view.cell_piece.at(c) != piece) continue;
    auto it = cuts.find(c);
    int rmax = it == cuts.end() ? 1 : it->second.regions;
    for (int r = 0; r < rmax; ++r) get(node(c, r));
  }

  // circles per component
  std::map<int, std::set<Circle>> comp_circles;
  std::set<int> comps;
  for (const auto& [key, ix] : root_ix) comps.insert(find(ix));
  for (int c : view.cells) {
    if (view.cell_piece.at(c) != piece) continue;
    const auto& b = spec.cells[c].boundary;
    for (int pos = 0; pos < static_cast<int>(b.size()); ++pos) {
      if (!own_disk_edge(spec, w.handlebody, b[pos].edge)) continue;
      const Edge& ed = spec.edges[b[pos].edge];
      Circle circ{ed.disk.disk, slot_facing_side(spec, c, pos)};
      if (circ == w.base) continue;  // only other circles certify essentialness
      int r = region_of_token(c, pos, 0);
      if (r < 0) throw std::runtime_error("wave_essential: split non-base circle slot");
      comp_circles[find(get(node(c, r)))].insert(circ);
    }
  }
  if (comps.size() != 2) {
    // a non-separating configuration cannot arise from an embedded wave
    res.embeddable = false;
    return res;
  }
  res.essential = true;
  for (int comp : comps)
    if (comp_circles[comp].empty()) res.essential = false;
  return res;
}

void enumerate_waves(const ManifoldSpec& spec, int hb, int piece, Circle base,
                     int weight_cap, const std::function<void(const WaveCandidate&)>& fn) {
  const SurfaceView& view = spec.boundary[hb];
  std::vector<int> piece_cells;
  for (int c : view.cells)
    if (view.cell_piece.at(c) == piece) piece_cells.push_back(c);

  std::map<int, std::vector<int>> base_slots;
  for (int c : piece_cells) {
    auto s = circle_slots(spec, hb, c, base);
    if (!s.empty()) base_slots[c] = s;
  }

  // transitions inside the piece, deterministic order
  std::map<int, std::vector<PathStep>> trans;
  for (int c : piece_cells) {
    std::vector<PathStep> out;
    for (int e : view.cell_edges.at(c)) {
      if (own_disk_edge(spec, hb, e)) continue;
      const auto& occ = view.edge_occ.at(e);
      for (int q = 0; q < 2; ++q)
        if (occ[1 - q].cell == c) out.push_back({e, q});
    }
    std::sort(out.begin(), out.end(), [&](const PathStep& a, const PathStep& b) {
      if (spec.edges[a.edge].id != spec.edges[b.edge].id)
        return spec.edges[a.edge].id < spec.edges[b.edge].id;
      return a.enter_occ < b.enter_occ;
    });
    trans[c] = out;
  }

  std::set<int> onpath;
  std::vector<PathStep> steps;

  auto emit_completions = [&](int c0, int s0, int cend) {
    auto it = base_slots.find(cend);
    if (it == base_slots.end()) return;
    for (int send : it->second) {
      WaveCandidate w;
      w.handlebody = hb;
      w.piece = piece;
      w.base = base;
      w.start_cell = c0;
      w.start_slot = s0;
      w.steps = steps;
      w.end_cell = cend;
      w.end_slot = send;
      int weight = 0;
      for (const auto& st : steps)
        if (spec.edges[st.edge].kind == EdgeKind::Triple) ++weight;
      w.weight = weight;
      if (c0 == cend && s0 == send) {
        // shared slot: both endpoint orders are distinct candidates
        w.start_sub = 0;
        w.end_sub = 1;
        fn(w);
        w.start_sub = 1;
        w.end_sub = 0;
        fn(w);
      } else {
        fn(w);
      }
    }
  };

  std::function<void(int, int, int, int)> dfs = [&](int c0, int s0, int c, int weight) {
    emit_completions(c0, s0, c);
    for (const auto& st : trans.at(c)) {
      int w2 = weight + (spec.edges[st.edge].kind == EdgeKind::Triple ? 1 : 0);
      if (w2 >= weight_cap) continue;
      int to = view.edge_occ.at(st.edge)[st.enter_occ].cell;
      if (onpath.count(to)) continue;
      onpath.insert(to);
      steps.push_back(st);
      dfs(c0, s0, to, w2);
      steps.pop_back();
      onpath.erase(to);
    }
  };

  for (const auto& [c0, slots] : base_slots) {
    for (int s0 : slots) {
      onpath.insert(c0);
      dfs(c0, s0, c0, 0);
      onpath.erase(c0);
    }
  }
}

std::optional<int> min_essential_wave_weight(const ManifoldSpec& spec, int hb, int piece,
                                             Circle base, int weight_cap) {
  if (circle_count(spec, hb, piece) < 3) return std::nullopt;
  std::optional<int> best;
  int cap = weight_cap;
  enumerate_waves(spec, hb, piece, base, cap, [&](const WaveCandidate& w) {
    if (best && w.weight >= *best) return;
    auto chk = wave_essential(spec, w);
    if (chk.embeddable && chk.essential) best = w.weight;
  });
  return best;
}

std::optional<Circle> circle_at_crossing(const ManifoldSpec& spec, int hb, int edge,
                                         const std::string& vertex, std::string* err) {
  const SurfaceView& view = spec.boundary[hb];
  if (!view.has_edge(edge)) {
    *err = "edge not on this boundary";
    return std::nullopt;
  }
  std::optional<Circle> found;
  for (const Occ& o : view.edge_occ.at(edge)) {
    const auto& b = spec.cells[o.cell].boundary;
    int n = static_cast<int>(b.size());
    const Edge& ed = spec.edges[edge];
    // neighbour slots of this occurrence sharing the vertex
    std::vector<int> nbrs;
    const std::string& in_tail = o.forward ? ed.tail : ed.head;
    const std::string& in_head = o.forward ? ed.head : ed.tail;
    if (in_head == vertex) nbrs.push_back((o.pos + 1) % n);
    if (in_tail == vertex) nbrs.push_back((o.pos + n - 1) % n);
    for (int p : nbrs) {
      const Slot& sl = b[p];
      if (!own_disk_edge(spec, hb, sl.edge)) continue;
      const Edge& de = spec.edges[sl.edge];
      Circle c{de.disk.disk, slot_facing_side(spec, o.cell, p)};
      if (found && !(*found == c)) {
        *err = "inconsistent disk side marks at vertex " + vertex;
        return std::nullopt;
      }
      found = c;
    }
  }
  if (!found) *err = "no own-disk crossing at vertex " + vertex;
  return found;
}

Json wave_json(const ManifoldSpec& spec, const WaveCandidate& w) {
  const SurfaceView& view = spec.boundary[w.handlebody];
  const Handlebody& h = spec.handlebodies[w.handlebody];
  Json j;
  j["handlebody"] = h.id;
  j["piece"] = h.balls[w.piece];
  j["circle"] = Json::array({h.disks[w.base.disk].id, std::string(1, w.base.side)});
  Json cells = Json::array();
  cells.push_back(spec.cells[w.start_cell].id);
  for (const auto& s : w.steps)
    cells.push_back(spec.cells[view.edge_occ.at(s.edge)[s.enter_occ].cell].id);
  j["cells"] = cells;
  Json steps = Json::array();
  for (const auto& s : w.steps) steps.push_back(spec.edges[s.edge].id);
  j["crossings"] = steps;
  j["weight"] = w.weight;
  return j;
}

}  // namespace diskcond
