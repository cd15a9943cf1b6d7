#include "diskcond/short_path.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

namespace diskcond {

namespace {
constexpr int kInf = std::numeric_limits<int>::max() / 4;
constexpr size_t kPathCap = 4096;
}  // namespace

char entered_side(const ManifoldSpec& spec, int edge, const Occ& occ) {
  const Edge& ed = spec.edges[edge];
  // a cell traversing the edge forward lies on its left
  return occ.forward ? ed.disk.side_left : ed.disk.side_right;
}

std::vector<int> BoundaryPath::cells(const ManifoldSpec& spec) const {
  const SurfaceView& view = spec.boundary[handlebody];
  std::vector<int> out{start_cell};
  for (const auto& s : steps) out.push_back(view.edge_occ.at(s.edge)[s.enter_occ].cell);
  return out;
}

int BoundaryPath::end_cell(const ManifoldSpec& spec) const {
  if (steps.empty()) return start_cell;
  const SurfaceView& view = spec.boundary[handlebody];
  return view.edge_occ.at(steps.back().edge)[steps.back().enter_occ].cell;
}

Word BoundaryPath::disk_trace(const ManifoldSpec& spec) const {
  const SurfaceView& view = spec.boundary[handlebody];
  Word out;
  for (const auto& s : steps) {
    const Edge& ed = spec.edges[s.edge];
    if (ed.kind == EdgeKind::Disk && ed.disk.handlebody == handlebody)
      out.push_back({ed.disk.disk, entered_side(spec, s.edge, view.edge_occ.at(s.edge)[s.enter_occ])});
  }
  return out;
}

std::vector<ForeignCross> BoundaryPath::foreign_trace(const ManifoldSpec& spec) const {
  const SurfaceView& view = spec.boundary[handlebody];
  std::vector<ForeignCross> out;
  for (const auto& s : steps) {
    const Edge& ed = spec.edges[s.edge];
    if (ed.kind == EdgeKind::Disk && ed.disk.handlebody != handlebody)
      out.push_back({ed.disk.handlebody, ed.disk.disk,
                     entered_side(spec, s.edge, view.edge_occ.at(s.edge)[s.enter_occ])});
  }
  return out;
}

namespace {

struct Layered {
  const ManifoldSpec& spec;
  const ArcClass& arc;
  const SurfaceView& view;
  int layers;  // crossings.size() + 1
  std::vector<int> cells;
  std::map<int, int> cell_local;

  // transition: from state (t, c) cross `edge` entering occurrence `occ`
  struct Trans {
    int edge;
    int enter_occ;
    int to_layer;
    int to_cell;  // local index
    int w;
  };
  std::vector<std::vector<Trans>> trans;  // by state index

  int states() const { return layers * static_cast<int>(cells.size()); }
  int state(int t, int c_local) const { return t * static_cast<int>(cells.size()) + c_local; }

  explicit Layered(const ManifoldSpec& s, const ArcClass& a)
      : spec(s), arc(a), view(s.boundary[a.handlebody]) {
    layers = static_cast<int>(arc.crossings.size()) + 1;
    cells = view.cells;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) cell_local[cells[i]] = i;
    trans.resize(states());
    for (int t = 0; t < layers; ++t) {
      for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
        int c = cells[ci];
        auto& out = trans[state(t, ci)];
        for (int e : view.cell_edges.at(c)) {
          const Edge& ed = spec.edges[e];
          const auto& occ = view.edge_occ.at(e);
          for (int k = 0; k < 2; ++k) {
            // cross from the other occurrence's cell into occ[k]
            if (occ[1 - k].cell != c) continue;
            int to = occ[k].cell;
            if (ed.kind == EdgeKind::Triple) {
              out.push_back({e, k, t, cell_local.at(to), 1});
            } else if (ed.disk.handlebody != arc.handlebody) {
              out.push_back({e, k, t, cell_local.at(to), 0});
            } else if (t < layers - 1 && ed.disk.disk == arc.crossings[t].disk &&
                       entered_side(spec, e, occ[k]) == arc.crossings[t].side) {
              out.push_back({e, k, t + 1, cell_local.at(to), 0});
            }
          }
        }
        std::sort(out.begin(), out.end(), [&](const Trans& x, const Trans& y) {
          if (spec.edges[x.edge].id != spec.edges[y.edge].id)
            return spec.edges[x.edge].id < spec.edges[y.edge].id;
          return x.enter_occ < y.enter_occ;
        });
      }
    }
  }
};

// 0-1 BFS distances from a set of sources over the layered graph
std::vector<int> zero_one_dist(const Layered& g, int source, bool reversed) {
  std::vector<int> dist(g.states(), kInf);
  std::deque<int> dq;
  dist[source] = 0;
  dq.push_back(source);
  // reversed mode needs incoming transitions; build once
  std::vector<std::vector<std::pair<int, int>>> in;  // (from, w)
  if (reversed) {
    in.resize(g.states());
    for (int s = 0; s < g.states(); ++s)
      for (const auto& tr : g.trans[s]) in[g.state(tr.to_layer, tr.to_cell)].push_back({s, tr.w});
  }
  while (!dq.empty()) {
    int s = dq.front();
    dq.pop_front();
    auto relax = [&](int to, int w) {
      if (dist[s] + w < dist[to]) {
        dist[to] = dist[s] + w;
        if (w == 0)
          dq.push_front(to);
        else
          dq.push_back(to);
      }
    };
    if (reversed)
      for (const auto& [from, w] : in[s]) relax(from, w);
    else
      for (const auto& tr : g.trans[s]) relax(g.state(tr.to_layer, tr.to_cell), tr.w);
  }
  return dist;
}

}  // namespace

std::vector<BoundaryPath> min_weight_paths(const ManifoldSpec& spec, const ArcClass& arc) {
  std::vector<BoundaryPath> out;
  if (reduce(arc.crossings) != arc.crossings)
    throw std::invalid_argument("min_weight_paths: arc crossings not reduced");
  Layered g(spec, arc);
  int s0 = g.state(0, g.cell_local.at(arc.start_cell));
  int tgt = g.state(g.layers - 1, g.cell_local.at(arc.end_cell));
  auto fwd = zero_one_dist(g, s0, false);
  auto bwd = zero_one_dist(g, tgt, true);
  if (fwd[tgt] >= kInf) return out;
  int opt = fwd[tgt];

  // DFS over all optimal-weight simple-state walks, deterministic order
  std::vector<char> onpath(g.states(), 0);
  BoundaryPath cur;
  cur.handlebody = arc.handlebody;
  cur.start_cell = arc.start_cell;
  cur.weight = opt;
  std::vector<PathStep> steps;

  std::function<void(int, int)> dfs = [&](int s, int used) {
    if (s == tgt) {
      BoundaryPath p = cur;
      p.steps = steps;
      out.push_back(p);
      if (out.size() > kPathCap)
        throw std::runtime_error("min_weight_paths: path set exceeds cap");
      return;
    }
    onpath[s] = 1;
    for (const auto& tr : g.trans[s]) {
      int to = g.state(tr.to_layer, tr.to_cell);
      if (onpath[to]) continue;
      if (used + tr.w + bwd[to] != opt) continue;
      steps.push_back({tr.edge, tr.enter_occ});
      dfs(to, used + tr.w);
      steps.pop_back();
    }
    onpath[s] = 0;
  };
  dfs(s0, 0);
  return out;
}

Shortness is_short(const ManifoldSpec& spec, const ArcClass& arc) {
  Shortness res;
  auto paths = min_weight_paths(spec, arc);
  if (paths.empty()) return res;
  res.min_weight = paths.front().weight;
  // strict: weight < n/2 in exact arithmetic
  res.is_short = 2 * paths.front().weight < spec.n_of(arc.handlebody);
  if (res.is_short) res.path = paths.front();
  return res;
}

Json path_json(const ManifoldSpec& spec, const BoundaryPath& p) {
  Json j;
  j["handlebody"] = spec.handlebodies[p.handlebody].id;
  Json cells = Json::array();
  for (int c : p.cells(spec)) cells.push_back(spec.cells[c].id);
  j["cells"] = cells;
  Json steps = Json::array();
  for (const auto& s : p.steps)
    steps.push_back(Json::array({spec.edges[s.edge].id, s.enter_occ}));
  j["crossings"] = steps;
  j["weight"] = p.weight;
  return j;
}

std::optional<BoundaryPath> path_from_json(const ManifoldSpec& spec, const Json& j,
                                           std::string* err) {
  BoundaryPath p;
  auto hit = spec.hb_ix.find(j.value("handlebody", ""));
  if (hit == spec.hb_ix.end()) {
    *err = "path: unknown handlebody";
    return std::nullopt;
  }
  p.handlebody = hit->second;
  if (!j.contains("cells") || !j["cells"].is_array() || j["cells"].empty()) {
    *err = "path: missing cells";
    return std::nullopt;
  }
  auto cit = spec.cell_ix.find(j["cells"][0].get<std::string>());
  if (cit == spec.cell_ix.end()) {
    *err = "path: unknown start cell";
    return std::nullopt;
  }
  p.start_cell = cit->second;
  int w = 0;
  for (const auto& sj : j["crossings"]) {
    if (!sj.is_array() || sj.size() != 2) {
      *err = "path: malformed crossing";
      return std::nullopt;
    }
    auto eit = spec.edge_ix.find(sj[0].get<std::string>());
    if (eit == spec.edge_ix.end()) {
      *err = "path: unknown edge";
      return std::nullopt;
    }
    int occ = sj[1].get<int>();
    if (occ != 0 && occ != 1) {
      *err = "path: bad occurrence index";
      return std::nullopt;
    }
    p.steps.push_back({eit->second, occ});
    if (spec.edges[eit->second].kind == EdgeKind::Triple) ++w;
  }
  p.weight = w;
  return p;
}

}  // namespace diskcond
