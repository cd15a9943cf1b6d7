#include "diskcond/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace diskcond {

long long face_bound(int n, int l) {
  if (n < 2 || l < 0) throw std::invalid_argument("face_bound: need n >= 2, l >= 0");
  if (l == 0) return 0;
  // pi < 314159265358979323847 / 10^20
  unsigned __int128 pi_num = 0;
  for (char c : std::string("314159265358979323847")) pi_num = pi_num * 10 + (c - '0');
  unsigned __int128 den = 1;
  for (int i = 0; i < 20; ++i) den *= 10;
  unsigned __int128 x = static_cast<unsigned __int128>(n) * l;
  unsigned __int128 num = 8 * x * x * pi_num;
  unsigned __int128 cap = (num + den - 1) / den;
  return static_cast<long long>(cap);
}

bool interior_trivial(const ManifoldSpec& spec, const InteriorLoop& loop) {
  (void)spec;
  return cyclic_reduce(loop.word).empty();
}

namespace {

struct SpliceDetail {
  int w = 0;
  std::vector<int> junctions;   // J_1..J_w (third-sheet cells)
  std::vector<int> seg_other;   // handlebody on the far side of each segment
  std::vector<Word> seg_words;  // far-side crossing words per segment
};

SpliceDetail splice_detail(const ManifoldSpec& spec, const ArcClass& arc,
                           const BoundaryPath& path) {
  SpliceDetail d;
  const SurfaceView& view = spec.boundary[arc.handlebody];
  int cur_cell = path.start_cell;
  d.seg_other.push_back(spec.other_side(cur_cell, arc.handlebody));
  d.seg_words.push_back({});
  for (const auto& st : path.steps) {
    const Edge& ed = spec.edges[st.edge];
    const Occ& occ = view.edge_occ.at(st.edge)[st.enter_occ];
    if (ed.kind == EdgeKind::Triple) {
      ++d.w;
      int jcell = spec.third_sheet_cell(st.edge, arc.handlebody);
      if (jcell < 0) throw std::runtime_error("short_disk_move: no third-sheet cell");
      d.junctions.push_back(jcell);
      d.seg_other.push_back(spec.other_side(occ.cell, arc.handlebody));
      d.seg_words.push_back({});
    } else if (ed.disk.handlebody != arc.handlebody) {
      if (ed.disk.handlebody != d.seg_other.back())
        throw std::runtime_error("short_disk_move: foreign trace owner mismatch");
      d.seg_words.back().push_back({ed.disk.disk, entered_side(spec, st.edge, occ)});
    }
    cur_cell = occ.cell;
  }
  return d;
}

// splice-order result; canonicalization is the caller's business
AnyLoop splice_apply(const ManifoldSpec& spec, const Loop& loop, int j,
                     const BoundaryPath& path, const SpliceDetail& d) {
  int l = loop.length();
  const ArcClass& arc = loop.arcs[j];
  const ArcClass& prev = loop.arcs[(j - 1 + l) % l];
  const ArcClass& next = loop.arcs[(j + 1) % l];
  int w = d.w;

  if (d.seg_other.front() != prev.handlebody)
    throw std::runtime_error("short_disk_move: first segment sheet does not face arc j-1");
  if (d.seg_other.back() != next.handlebody)
    throw std::runtime_error("short_disk_move: last segment sheet does not face arc j+1");

  if (l == 2 && w == 0) {
    InteriorLoop out;
    out.handlebody = prev.handlebody;
    out.word = cyclic_reduce(concat(prev.crossings, d.seg_words[0]));
    return out;
  }

  std::vector<ArcClass> mids;
  for (int q = 1; q < w; ++q) {
    ArcClass a;
    a.handlebody = d.seg_other[q];
    a.start_cell = d.junctions[q - 1];
    a.end_cell = d.junctions[q];
    a.crossings = reduce(d.seg_words[q]);
    mids.push_back(a);
  }

  Loop out;
  if (l == 2) {
    // the single other arc absorbs both end segments
    ArcClass merged;
    merged.handlebody = prev.handlebody;
    merged.start_cell = d.junctions[w - 1];
    merged.end_cell = d.junctions[0];
    merged.crossings =
        reduce(concat(concat(d.seg_words[w], prev.crossings), d.seg_words[0]));
    out.arcs = mids;
    out.arcs.push_back(merged);
    return out;
  }

  if (w == 0) {
    ArcClass merged;
    merged.handlebody = prev.handlebody;
    merged.start_cell = prev.start_cell;
    merged.end_cell = next.end_cell;
    merged.crossings =
        reduce(concat(concat(prev.crossings, d.seg_words[0]), next.crossings));
    for (int k = (j + 2) % l; k != (j - 1 + l) % l; k = (k + 1) % l)
      out.arcs.push_back(loop.arcs[k]);
    out.arcs.push_back(merged);
    return out;
  }

  ArcClass left;
  left.handlebody = prev.handlebody;
  left.start_cell = prev.start_cell;
  left.end_cell = d.junctions[0];
  left.crossings = reduce(concat(prev.crossings, d.seg_words[0]));
  ArcClass right;
  right.handlebody = next.handlebody;
  right.start_cell = d.junctions[w - 1];
  right.end_cell = next.end_cell;
  right.crossings = reduce(concat(d.seg_words[w], next.crossings));

  for (int k = (j + 2) % l; k != (j - 1 + l) % l; k = (k + 1) % l)
    out.arcs.push_back(loop.arcs[k]);
  out.arcs.push_back(left);
  for (const auto& a : mids) out.arcs.push_back(a);
  out.arcs.push_back(right);
  return out;
}

void check_move_inputs(const ManifoldSpec& spec, const Loop& loop, int j,
                       const BoundaryPath& path) {
  if (j < 0 || j >= loop.length()) throw std::invalid_argument("short_disk_move: bad arc index");
  const ArcClass& arc = loop.arcs[j];
  if (path.handlebody != arc.handlebody || path.start_cell != arc.start_cell ||
      path.end_cell(spec) != arc.end_cell)
    throw std::invalid_argument("short_disk_move: path endpoints do not match the arc");
  if (path.disk_trace(spec) != arc.crossings)
    throw std::invalid_argument("short_disk_move: path disk trace does not match the arc");
}

int loop_len(const AnyLoop& l) {
  if (std::holds_alternative<InteriorLoop>(l)) return 0;
  return std::get<Loop>(l).length();
}

}  // namespace

AnyLoop short_disk_move(const ManifoldSpec& spec, const Loop& loop, int j,
                        const BoundaryPath& path) {
  check_move_inputs(spec, loop, j, path);
  SpliceDetail d = splice_detail(spec, loop.arcs[j], path);
  AnyLoop out = splice_apply(spec, loop, j, path, d);
  int l2 = loop_len(out);
  if (l2 != loop.length() - 2 + path.weight)
    throw std::runtime_error("short_disk_move: l' != l - 2 + weight");
  if (std::holds_alternative<Loop>(out)) {
    auto chk = validate_loop(spec, std::get<Loop>(out));
    if (!chk.ok)
      throw std::runtime_error("short_disk_move: spliced loop invalid: " + chk.message);
    return AnyLoop{canonical(spec, std::get<Loop>(out))};
  }
  return AnyLoop{canonical(spec, std::get<InteriorLoop>(out))};
}

// ---------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------

namespace {

struct Expansion {
  size_t node_ix;
  int arc;
  int path_ix;
  AnyLoop child;
  std::string child_key;
  MoveRec move;
};

std::vector<Expansion> expand_node(const ManifoldSpec& spec, const Loop& L, size_t node_ix,
                                   int* short_arcs) {
  std::vector<Expansion> out;
  int shorts = 0;
  for (int j = 0; j < L.length(); ++j) {
    auto paths = min_weight_paths(spec, L.arcs[j]);
    if (paths.empty()) continue;
    if (2 * paths.front().weight >= spec.n_of(L.arcs[j].handlebody)) continue;
    ++shorts;
    for (int px = 0; px < static_cast<int>(paths.size()); ++px) {
      SpliceDetail d = splice_detail(spec, L.arcs[j], paths[px]);
      AnyLoop raw = splice_apply(spec, L, j, paths[px], d);
      AnyLoop child;
      if (std::holds_alternative<Loop>(raw))
        child = canonical(spec, std::get<Loop>(raw));
      else
        child = canonical(spec, std::get<InteriorLoop>(raw));
      if (loop_len(child) != L.length() - 2 + paths[px].weight)
        throw std::runtime_error("solve: move length law violated");
      Expansion e;
      e.node_ix = node_ix;
      e.arc = j;
      e.path_ix = px;
      e.child = child;
      e.child_key = canonical_key(spec, child);
      e.move = MoveRec{L, j, paths[px]};
      out.push_back(std::move(e));
    }
  }
  if (short_arcs) *short_arcs = shorts;
  return out;
}

}  // namespace

Verdict solve(const ManifoldSpec& spec, const AnyLoop& input, const SolveOptions& opt) {
  Verdict v;

  AnyLoop start;
  if (std::holds_alternative<InteriorLoop>(input)) {
    InteriorLoop il = canonical(spec, std::get<InteriorLoop>(input));
    auto chk = validate_interior(spec, il);
    if (!chk.ok) throw std::invalid_argument("solve: invalid interior loop: " + chk.message);
    start = il;
  } else {
    Loop lp = canonical(spec, std::get<Loop>(input));
    auto chk = validate_loop(spec, lp);
    if (!chk.ok) throw std::invalid_argument("solve: invalid loop: " + chk.message);
    start = lp;
  }

  v.initial_length = loop_len(start);
  v.cap = opt.max_faces ? *opt.max_faces : face_bound(spec.max_n(), v.initial_length);
  v.nodes = 1;

  if (std::holds_alternative<InteriorLoop>(start)) {
    const auto& il = std::get<InteriorLoop>(start);
    v.frontier_exhausted = true;
    if (interior_trivial(spec, il)) {
      v.kind = VerdictKind::Trivial;
      v.trace = Trace{start, {}, il};
    } else {
      v.kind = VerdictKind::Nontrivial;
    }
    return v;
  }

  struct NodeInfo {
    std::string parent;
    MoveRec move;
  };
  std::map<std::string, NodeInfo> visited;
  std::string start_key = canonical_key(spec, start);
  visited[start_key] = {};

  std::vector<std::pair<std::string, Loop>> level;
  level.push_back({start_key, std::get<Loop>(start)});

  std::optional<std::string> winner;
  bool first_level = true;

  for (long long depth = 0; depth < v.cap && !level.empty() && !winner; ++depth) {
    // expand the whole level, deterministically mergeable across threads
    std::vector<std::vector<Expansion>> chunks;
    std::vector<int> shorts_of(level.size(), 0);
    int nthreads = std::max(1, opt.threads);
    if (nthreads == 1 || level.size() == 1) {
      chunks.resize(1);
      for (size_t i = 0; i < level.size(); ++i) {
        auto ex = expand_node(spec, level[i].second, i, &shorts_of[i]);
        for (auto& e : ex) chunks[0].push_back(std::move(e));
      }
    } else {
      chunks.resize(nthreads);
      std::vector<std::thread> pool;
      std::atomic<size_t> cursor{0};
      for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
          for (;;) {
            size_t i = cursor.fetch_add(1);
            if (i >= level.size()) break;
            auto ex = expand_node(spec, level[i].second, i, &shorts_of[i]);
            for (auto& e : ex) chunks[t].push_back(std::move(e));
          }
        });
      }
      for (auto& th : pool) th.join();
    }
    std::vector<Expansion> exps;
    for (auto& ch : chunks)
      for (auto& e : ch) exps.push_back(std::move(e));
    std::sort(exps.begin(), exps.end(), [](const Expansion& a, const Expansion& b) {
      if (a.node_ix != b.node_ix) return a.node_ix < b.node_ix;
      if (a.arc != b.arc) return a.arc < b.arc;
      return a.path_ix < b.path_ix;
    });

    if (first_level) {
      v.initial_short_arcs = shorts_of.empty() ? 0 : shorts_of[0];
      first_level = false;
    }

    std::vector<std::pair<std::string, Loop>> next;
    for (auto& e : exps) {
      ++v.moves_generated;
      if (opt.move_hook) opt.move_hook(e.move.before, e.move.path, e.child);
      auto it = visited.find(e.child_key);
      if (it != visited.end()) {
        ++v.dedup_hits;
        continue;
      }
      visited[e.child_key] = {level[e.node_ix].first, e.move};
      ++v.nodes;
      if (v.nodes > opt.node_limit) {
        v.kind = VerdictKind::ResourceLimit;
        return v;
      }
      if (std::holds_alternative<InteriorLoop>(e.child)) {
        if (interior_trivial(spec, std::get<InteriorLoop>(e.child))) {
          winner = e.child_key;
          break;
        }
        // nontrivial interior word: a dead end for this branch
        continue;
      }
      next.push_back({e.child_key, std::get<Loop>(e.child)});
    }
    if (winner) break;
    level = std::move(next);
  }

  if (!winner) {
    v.kind = VerdictKind::Nontrivial;
    v.frontier_exhausted = level.empty();
    return v;
  }

  // reconstruct the move chain
  v.kind = VerdictKind::Trivial;
  std::vector<MoveRec> moves;
  std::string cur = *winner;
  while (cur != start_key) {
    const NodeInfo& info = visited.at(cur);
    moves.push_back(info.move);
    cur = info.parent;
  }
  std::reverse(moves.begin(), moves.end());
  Trace tr;
  tr.initial = start;
  tr.moves = std::move(moves);
  // terminal loop: re-apply the last move
  const MoveRec& last = tr.moves.back();
  AnyLoop fin = short_disk_move(spec, last.before, last.arc, last.path);
  tr.terminal = std::get<InteriorLoop>(fin);
  v.trace = std::move(tr);
  v.frontier_exhausted = false;
  return v;
}

// ---------------------------------------------------------------------
// replay + audit
// ---------------------------------------------------------------------

namespace {

struct FrontArc {
  std::vector<int> edges;
  std::vector<int> inner;  // vertices between consecutive edges
};

}  // namespace

AuditReport replay_and_audit(const ManifoldSpec& spec, const Trace& trace) {
  AuditReport rep;

  if (std::holds_alternative<InteriorLoop>(trace.initial)) {
    const auto& il = std::get<InteriorLoop>(trace.initial);
    if (!trace.moves.empty()) {
      rep.error = "interior initial loop cannot have moves";
      return rep;
    }
    if (!interior_trivial(spec, il)) {
      rep.error = "terminal interior word is not trivial";
      return rep;
    }
    rep.ok = true;
    rep.vacuous = true;
    return rep;
  }

  Loop current = canonical(spec, std::get<Loop>(trace.initial));
  {
    auto chk = validate_loop(spec, current);
    if (!chk.ok) {
      rep.error = "initial loop invalid: " + chk.message;
      return rep;
    }
  }

  int l0 = current.length();
  int next_vertex = l0, next_edge = l0;
  std::vector<FrontArc> front(l0);
  std::vector<int> jvert(l0);
  for (int k = 0; k < l0; ++k) {
    front[k].edges = {k};
    jvert[k] = k;
  }
  std::vector<DiagramFace> faces;
  bool interior_reached = false;
  InteriorLoop terminal;
  std::vector<int> terminal_edges, terminal_corners;

  for (size_t mi = 0; mi < trace.moves.size(); ++mi) {
    const MoveRec& mv = trace.moves[mi];
    if (interior_reached) {
      rep.error = "move after reaching an interior loop";
      return rep;
    }
    if (loop_fingerprint(spec, mv.before) != loop_fingerprint(spec, current)) {
      rep.error = "replay divergence at move " + std::to_string(mi);
      return rep;
    }
    int l = current.length();
    int j = mv.arc;
    if (j < 0 || j >= l) {
      rep.error = "bad arc index at move " + std::to_string(mi);
      return rep;
    }
    SpliceDetail d;
    AnyLoop raw;
    try {
      check_move_inputs(spec, current, j, mv.path);
      d = splice_detail(spec, current.arcs[j], mv.path);
      raw = splice_apply(spec, current, j, mv.path, d);
    } catch (const std::exception& e) {
      rep.error = std::string("replay failed at move ") + std::to_string(mi) + ": " + e.what();
      return rep;
    }
    int w = d.w;
    int u = jvert[j], vv = jvert[(j + 1) % l];
    std::vector<int> N(w);
    for (int q = 0; q < w; ++q) N[q] = next_vertex++;
    std::vector<int> S(w + 1);
    for (int q = 0; q <= w; ++q) S[q] = next_edge++;

    DiagramFace face;
    face.n = spec.n_of(current.arcs[j].handlebody);
    face.corners.push_back(u);
    for (int x : front[j].inner) face.corners.push_back(x);
    face.corners.push_back(vv);
    for (int q = w - 1; q >= 0; --q) face.corners.push_back(N[q]);
    face.edges = front[j].edges;
    for (int q = w; q >= 0; --q) face.edges.push_back(S[q]);
    faces.push_back(face);

    if (l == 2 && w == 0) {
      int other = 1 - j;
      terminal_edges = front[other].edges;
      terminal_edges.push_back(S[0]);
      terminal_corners.push_back(vv);
      for (int x : front[other].inner) terminal_corners.push_back(x);
      terminal_corners.push_back(u);
      interior_reached = true;
      terminal = canonical(spec, std::get<InteriorLoop>(raw));
      continue;
    }

    std::vector<FrontArc> nf;
    std::vector<int> nj;
    if (l == 2) {
      int other = 1 - j;
      for (int q = 1; q < w; ++q) {
        nf.push_back({{S[q]}, {}});
        nj.push_back(N[q - 1]);
      }
      FrontArc merged;
      merged.edges.push_back(S[w]);
      merged.inner.push_back(vv);
      for (size_t t = 0; t < front[other].edges.size(); ++t) {
        merged.edges.push_back(front[other].edges[t]);
        if (t < front[other].inner.size()) merged.inner.push_back(front[other].inner[t]);
      }
      // inner list of `other` interleaves between its edges; appending u then S0
      merged.inner.push_back(u);
      merged.edges.push_back(S[0]);
      nf.push_back(merged);
      nj.push_back(N[w - 1]);
    } else if (w == 0) {
      for (int k = (j + 2) % l; k != (j - 1 + l) % l; k = (k + 1) % l) {
        nf.push_back(front[k]);
        nj.push_back(jvert[k]);
      }
      FrontArc merged = front[(j - 1 + l) % l];
      merged.inner.push_back(u);
      merged.edges.push_back(S[0]);
      merged.inner.push_back(vv);
      for (size_t t = 0; t < front[(j + 1) % l].edges.size(); ++t) {
        merged.edges.push_back(front[(j + 1) % l].edges[t]);
        if (t < front[(j + 1) % l].inner.size())
          merged.inner.push_back(front[(j + 1) % l].inner[t]);
      }
      nf.push_back(merged);
      nj.push_back(jvert[(j - 1 + l) % l]);
    } else {
      for (int k = (j + 2) % l; k != (j - 1 + l) % l; k = (k + 1) % l) {
        nf.push_back(front[k]);
        nj.push_back(jvert[k]);
      }
      FrontArc left = front[(j - 1 + l) % l];
      left.inner.push_back(u);
      left.edges.push_back(S[0]);
      nf.push_back(left);
      nj.push_back(jvert[(j - 1 + l) % l]);
      for (int q = 1; q < w; ++q) {
        nf.push_back({{S[q]}, {}});
        nj.push_back(N[q - 1]);
      }
      FrontArc right;
      right.edges.push_back(S[w]);
      right.inner.push_back(vv);
      for (size_t t = 0; t < front[(j + 1) % l].edges.size(); ++t) {
        right.edges.push_back(front[(j + 1) % l].edges[t]);
        if (t < front[(j + 1) % l].inner.size())
          right.inner.push_back(front[(j + 1) % l].inner[t]);
      }
      nf.push_back(right);
      nj.push_back(N[w - 1]);
    }

    // align the diagram front with the canonical rotation of the new loop
    Loop raw_loop = std::get<Loop>(raw);
    Loop canon = canonical(spec, raw_loop);
    int off = 0;
    {
      std::string want = loop_fingerprint(spec, canon);
      int n = raw_loop.length();
      for (int r = 0; r < n; ++r) {
        Loop rot;
        for (int t = 0; t < n; ++t) rot.arcs.push_back(raw_loop.arcs[(r + t) % n]);
        if (loop_fingerprint(spec, rot) == want) {
          off = r;
          break;
        }
      }
    }
    std::vector<FrontArc> rf;
    std::vector<int> rj;
    int n = static_cast<int>(nf.size());
    for (int t = 0; t < n; ++t) {
      rf.push_back(nf[(off + t) % n]);
      rj.push_back(nj[(off + t) % n]);
    }
    front = std::move(rf);
    jvert = std::move(rj);
    current = canon;
  }

  if (!interior_reached) {
    rep.error = "trace does not end in an interior loop";
    return rep;
  }
  if (!(terminal.handlebody == trace.terminal.handlebody &&
        cyclic_reduce(terminal.word) == cyclic_reduce(trace.terminal.word))) {
    rep.error = "terminal loop mismatch";
    return rep;
  }
  if (!interior_trivial(spec, terminal)) {
    rep.error = "terminal interior word is not trivial";
    return rep;
  }

  DiagramFace term;
  term.n = spec.n_of(terminal.handlebody);
  term.corners = terminal_corners;
  term.edges = terminal_edges;
  faces.push_back(term);

  // ---- audit ----
  rep.vertices = next_vertex;
  rep.edges = next_edge;
  std::vector<int> corner_count(next_vertex, 0);
  std::vector<int> edge_use(next_edge, 0);
  for (const auto& f : faces) {
    for (int c : f.corners) corner_count[c]++;
    for (int e : f.edges) edge_use[e]++;
  }
  for (int e = 0; e < next_edge; ++e) {
    int want = e < l0 ? 1 : 2;
    if (edge_use[e] != want) {
      rep.error = "diagram edge " + std::to_string(e) + " used " + std::to_string(edge_use[e]) +
                  " times, want " + std::to_string(want);
      return rep;
    }
  }
  for (int vtx = 0; vtx < l0; ++vtx)
    if (corner_count[vtx] == 0) {
      rep.error = "boundary vertex " + std::to_string(vtx) + " has no face corner";
      return rep;
    }
  int chi = next_vertex - next_edge + static_cast<int>(faces.size());
  if (chi != 1) {
    rep.error = "diagram Euler characteristic " + std::to_string(chi) + ", want 1";
    return rep;
  }

  // angles in units of pi: interior corner of an (m,n) face gets 1 - 2/n,
  // boundary vertices split a straight angle across their corners
  Rat total_curvature(0);
  std::vector<Rat> theta(next_vertex, Rat(0));
  for (auto& f : faces) {
    Rat k(2);
    for (int c : f.corners) {
      Rat angle = c < l0 ? Rat(1, corner_count[c]) : Rat(1) - Rat(2, f.n);
      theta[c] += angle;
      k -= Rat(1) - angle;
    }
    f.curvature = k;
    total_curvature += k;
  }
  Rat defects(0);
  int interior_vertices = 0;
  for (int vtx = l0; vtx < next_vertex; ++vtx) {
    ++interior_vertices;
    defects += Rat(2) - theta[vtx];
  }
  rep.interior_vertices = interior_vertices;
  rep.identity_lhs = total_curvature + defects;
  rep.faces = faces;
  if (rep.identity_lhs != Rat(2)) {
    rep.error = "combinatorial Gauss-Bonnet identity violated: sum = " + rat_str(rep.identity_lhs);
    return rep;
  }
  rep.ok = true;
  return rep;
}

Json AuditReport::to_json(const ManifoldSpec& spec) const {
  (void)spec;
  Json j;
  j["schema"] = "diskcond-audit/1";
  j["pass"] = ok;
  j["vacuous"] = vacuous;
  if (!error.empty()) j["error"] = error;
  if (!vacuous && ok) {
    Json fs = Json::array();
    for (const auto& f : faces)
      fs.push_back(Json{{"m", static_cast<int>(f.corners.size())},
                        {"n", f.n},
                        {"curvature", rat_str(f.curvature)}});
    j["faces"] = fs;
    j["vertices"] = vertices;
    j["interior_vertices"] = interior_vertices;
    j["edges"] = edges;
    j["identity"] = rat_str(identity_lhs);
  }
  return j;
}

std::string AuditReport::face_adjacency_dot() const {
  std::ostringstream os;
  os << "graph diagram {\n";
  for (size_t i = 0; i < faces.size(); ++i)
    os << "  f" << i << " [label=\"(" << faces[i].corners.size() << "," << faces[i].n
       << ") K=" << rat_str(faces[i].curvature) << "\"];\n";
  std::map<int, std::vector<int>> by_edge;
  for (size_t i = 0; i < faces.size(); ++i)
    for (int e : faces[i].edges) by_edge[e].push_back(static_cast<int>(i));
  for (const auto& [e, fs] : by_edge)
    if (fs.size() == 2) os << "  f" << fs[0] << " -- f" << fs[1] << " [label=\"e" << e << "\"];\n";
  os << "}\n";
  return os.str();
}

Json trace_json(const ManifoldSpec& spec, const Trace& trace) {
  Json j;
  j["schema"] = "diskcond-trace/1";
  j["initial"] = loop_json(spec, trace.initial);
  Json ms = Json::array();
  for (const auto& m : trace.moves)
    ms.push_back(Json{{"loop", loop_json(spec, AnyLoop{m.before})},
                      {"arc", m.arc},
                      {"path", path_json(spec, m.path)}});
  j["moves"] = ms;
  j["terminal"] = loop_json(spec, AnyLoop{trace.terminal});
  return j;
}

std::optional<Trace> trace_from_json(const ManifoldSpec& spec, const Json& doc,
                                     std::string* err) {
  if (!doc.is_object() || doc.value("schema", "") != "diskcond-trace/1") {
    *err = "not a diskcond-trace/1 document";
    return std::nullopt;
  }
  Trace tr;
  auto init = loop_from_json(spec, doc["initial"], err);
  if (!init) return std::nullopt;
  tr.initial = *init;
  for (const auto& mj : doc["moves"]) {
    MoveRec m;
    auto lp = loop_from_json(spec, mj["loop"], err);
    if (!lp || !std::holds_alternative<Loop>(*lp)) {
      *err = "move loop malformed";
      return std::nullopt;
    }
    m.before = std::get<Loop>(*lp);
    m.arc = mj.value("arc", -1);
    auto p = path_from_json(spec, mj["path"], err);
    if (!p) return std::nullopt;
    m.path = *p;
    tr.moves.push_back(m);
  }
  auto term = loop_from_json(spec, doc["terminal"], err);
  if (!term || !std::holds_alternative<InteriorLoop>(*term)) {
    *err = "terminal loop malformed";
    return std::nullopt;
  }
  tr.terminal = std::get<InteriorLoop>(*term);
  return tr;
}

Json verdict_json(const ManifoldSpec& spec, const Verdict& v, bool include_trace) {
  Json j;
  j["schema"] = "diskcond-solve/1";
  switch (v.kind) {
    case VerdictKind::Trivial: j["verdict"] = "TRIVIAL"; break;
    case VerdictKind::Nontrivial: j["verdict"] = "NONTRIVIAL"; break;
    case VerdictKind::ResourceLimit: j["verdict"] = "RESOURCE_LIMIT"; break;
  }
  j["cap"] = v.cap;
  j["frontier_exhausted"] = v.frontier_exhausted;
  j["nodes"] = v.nodes;
  j["dedup_hits"] = v.dedup_hits;
  j["moves_generated"] = v.moves_generated;
  j["initial_short_arcs"] = v.initial_short_arcs;
  j["initial_length"] = v.initial_length;
  if (include_trace && v.trace)
    j["trace"] = trace_json(spec, *v.trace);
  else
    j["trace"] = nullptr;
  return j;
}

}  // namespace diskcond
