#include "diskcond/homology.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "diskcond/short_path.hpp"

namespace diskcond {

namespace {

// disk indices sorted by id, split into spanning-tree and generator edges
void ball_graph_tree(const ManifoldSpec& spec, int hb, std::vector<int>* tree,
                     std::vector<int>* gens) {
  const Handlebody& h = spec.handlebodies[hb];
  std::vector<int> order(h.disks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return h.disks[a].id < h.disks[b].id; });
  std::vector<int> root(h.balls.size());
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (int d : order) {
    int a = find(h.disks[d].ball_plus), b = find(h.disks[d].ball_minus);
    if (a != b) {
      root[a] = b;
      tree->push_back(d);
    } else {
      gens->push_back(d);
    }
  }
}

// closed dual walk around a face-surface generator: exponents of the two
// side handlebodies' disks crossed along it
struct SheetWalkImage {
  std::vector<long long> side_exponents[2];  // indexed like each side's disks
};

void add_crossing(const ManifoldSpec& spec, const FaceSurface& fs, int edge, char side,
                  int sign_mult, SheetWalkImage* img) {
  const Edge& ed = spec.edges[edge];
  for (int s = 0; s < 2; ++s) {
    if (ed.disk.handlebody != fs.handlebodies[s]) continue;
    long long delta = (side == '+') ? 1 : -1;
    img->side_exponents[s][ed.disk.disk] += sign_mult * delta;
  }
}

}  // namespace

Presentation presentation(const ManifoldSpec& spec) {
  Presentation pres;
  std::array<std::vector<int>, 3> tree;
  for (int hb = 0; hb < 3; ++hb) {
    const Handlebody& h = spec.handlebodies[hb];
    pres.gen_of[hb].assign(h.disks.size(), -1);
    std::vector<int> t, g;
    ball_graph_tree(spec, hb, &t, &g);
    tree[hb] = t;
    for (int d : g) {
      pres.gen_of[hb][d] = static_cast<int>(pres.generators.size());
      pres.generators.push_back({hb, d, h.id + "." + h.disks[d].id});
    }
  }

  int G = static_cast<int>(pres.generators.size());
  auto project = [&](int hb, const std::vector<long long>& per_disk) {
    std::vector<long long> out(G, 0);
    for (int d = 0; d < static_cast<int>(per_disk.size()); ++d) {
      int g = pres.gen_of[hb][d];
      if (g >= 0) out[g] = per_disk[d];
    }
    return out;
  };

  for (int s = 0; s < static_cast<int>(spec.surfaces.size()); ++s) {
    const FaceSurface& fs = spec.surfaces[s];
    const auto sides = fs.handlebodies;

    // dual graph of the sheet: interior disk-trace edges between sheet cells
    std::vector<int> cells = fs.cells;
    std::sort(cells.begin(), cells.end(),
              [&](int a, int b) { return spec.cells[a].id < spec.cells[b].id; });
    std::map<int, int> local;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) local[cells[i]] = i;

    std::map<int, std::array<Occ, 2>> occ;  // sheet-interior edges
    for (int c : cells) {
      const auto& b = spec.cells[c].boundary;
      for (int k = 0; k < static_cast<int>(b.size()); ++k) {
        const Edge& ed = spec.edges[b[k].edge];
        if (ed.kind != EdgeKind::Disk) continue;
        auto& slot = occ[b[k].edge];
        if (slot[0].cell == -1)
          slot[0] = {c, k, b[k].forward};
        else
          slot[1] = {c, k, b[k].forward};
      }
    }

    // spanning tree over sheet cells, edges in id order
    std::vector<int> eorder;
    for (const auto& [e, o] : occ) eorder.push_back(e);
    std::sort(eorder.begin(), eorder.end(),
              [&](int a, int b) { return spec.edges[a].id < spec.edges[b].id; });
    std::vector<int> root(cells.size());
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    std::vector<int> parent_edge(cells.size(), -1);  // tree structure
    std::vector<int> tree_edges, loop_edges;
    for (int e : eorder) {
      int a = find(local.at(occ[e][0].cell)), b = find(local.at(occ[e][1].cell));
      if (a != b) {
        root[a] = b;
        tree_edges.push_back(e);
      } else {
        loop_edges.push_back(e);
      }
    }

    // tree paths via BFS parents from cell 0
    std::map<int, std::vector<std::pair<int, int>>> adj;  // cell -> (edge, other)
    for (int e : tree_edges) {
      adj[occ[e][0].cell].push_back({e, occ[e][1].cell});
      adj[occ[e][1].cell].push_back({e, occ[e][0].cell});
    }
    std::map<int, std::pair<int, int>> par;  // cell -> (edge to parent, parent)
    std::vector<int> order{cells[0]};
    par[cells[0]] = {-1, -1};
    for (size_t q = 0; q < order.size(); ++q) {
      int c = order[q];
      for (auto [e, o] : adj[c])
        if (!par.count(o)) {
          par[o] = {e, c};
          order.push_back(o);
        }
    }

    auto crossing_sign = [&](int e, int from_cell) {
      // entering the other occurrence's side
      const Occ& into = occ[e][0].cell == from_cell ? occ[e][1] : occ[e][0];
      return entered_side(spec, e, into);
    };

    // exponent image of the tree path root->c, while walking it
    auto walk_to = [&](int c, SheetWalkImage* img, int mult) {
      std::vector<std::pair<int, int>> steps;  // (edge, from_cell) root->c
      int cur = c;
      while (par.at(cur).first != -1) {
        steps.push_back({par.at(cur).first, par.at(cur).second});
        cur = par.at(cur).second;
      }
      std::reverse(steps.begin(), steps.end());
      for (auto [e, from] : steps)
        add_crossing(spec, fs, e, crossing_sign(e, from), mult, img);
    };

    auto relation_from = [&](const SheetWalkImage& img, const std::string& label) {
      std::vector<long long> va = project(sides[0], img.side_exponents[0]);
      std::vector<long long> vb = project(sides[1], img.side_exponents[1]);
      std::vector<long long> rel(G, 0);
      bool nonzero = false;
      for (int g = 0; g < G; ++g) {
        rel[g] = va[g] - vb[g];
        nonzero = nonzero || rel[g] != 0;
      }
      pres.relations.push_back(rel);
      pres.relation_labels.push_back(label);
      (void)nonzero;
    };

    // one relation per fundamental cycle of the sheet dual graph
    for (int e : loop_edges) {
      SheetWalkImage img;
      img.side_exponents[0].assign(spec.handlebodies[sides[0]].disks.size(), 0);
      img.side_exponents[1].assign(spec.handlebodies[sides[1]].disks.size(), 0);
      int ca = occ[e][0].cell, cb = occ[e][1].cell;
      walk_to(ca, &img, 1);
      add_crossing(spec, fs, e, crossing_sign(e, ca), 1, &img);
      walk_to(cb, &img, -1);
      relation_from(img, fs.id + ":" + spec.edges[e].id);
    }

    // one relation per boundary circle: a parallel copy of the triple curve
    // just inside the sheet crosses the traces ending on it
    int tix = 0;
    for (const auto& curve : spec.triple_curves) {
      // does this curve bound the sheet?
      bool touches = false;
      for (const auto& sl : curve) {
        for (int c : cells)
          for (const auto& cs : spec.cells[c].boundary)
            if (cs.edge == sl.edge) touches = true;
      }
      if (!touches) {
        ++tix;
        continue;
      }
      SheetWalkImage img;
      img.side_exponents[0].assign(spec.handlebodies[sides[0]].disks.size(), 0);
      img.side_exponents[1].assign(spec.handlebodies[sides[1]].disks.size(), 0);
      int m = static_cast<int>(curve.size());
      for (int k = 0; k < m; ++k) {
        const Slot& sl = curve[k];
        const Edge& e = spec.edges[sl.edge];
        const std::string& vtx = sl.forward ? e.head : e.tail;  // vertex after this edge
        // sheet cell adjacent to this triple edge / the next one
        auto sheet_cell_of = [&](int te) -> int {
          for (int c : cells)
            for (const auto& cs : spec.cells[c].boundary)
              if (cs.edge == te) return c;
          return -1;
        };
        int c_prev = sheet_cell_of(sl.edge);
        int c_next = sheet_cell_of(curve[(k + 1) % m].edge);
        if (c_prev < 0 || c_next < 0)
          throw std::runtime_error("presentation: triple curve edge without sheet cell");
        if (c_prev == c_next) continue;  // no trace crossing at this vertex
        // the trace edge through vtx whose occurrences are {c_prev, c_next}
        int found = -1;
        for (const auto& [e2, o] : occ) {
          const Edge& ed2 = spec.edges[e2];
          if (ed2.tail != vtx && ed2.head != vtx) continue;
          std::set<int> cc{o[0].cell, o[1].cell};
          if (cc == std::set<int>{c_prev, c_next}) {
            found = e2;
            break;
          }
        }
        if (found < 0)
          throw std::runtime_error("presentation: missing trace crossing at vertex " + vtx);
        add_crossing(spec, fs, found, crossing_sign(found, c_prev), 1, &img);
      }
      relation_from(img, fs.id + ":T" + std::to_string(tix));
      ++tix;
    }
  }
  return pres;
}

SmithResult smith_normal_form(std::vector<std::vector<long long>> columns, int rows) {
  int n = rows;
  int m = static_cast<int>(columns.size());
  // A as row-major
  std::vector<std::vector<long long>> A(n, std::vector<long long>(m, 0));
  for (int c = 0; c < m; ++c) {
    if (static_cast<int>(columns[c].size()) != n)
      throw std::invalid_argument("smith_normal_form: ragged matrix");
    for (int r = 0; r < n; ++r) A[r][c] = columns[c][r];
  }
  SmithResult res;
  res.U.assign(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) res.U[i][i] = 1;

  auto row_op = [&](int dst, int src, long long f) {  // row dst -= f * row src
    for (int c = 0; c < m; ++c) A[dst][c] -= f * A[src][c];
    for (int c = 0; c < n; ++c) res.U[dst][c] -= f * res.U[src][c];
  };
  auto col_op = [&](int dst, int src, long long f) {
    for (int r = 0; r < n; ++r) A[r][dst] -= f * A[r][src];
  };
  auto swap_rows = [&](int a, int b) {
    std::swap(A[a], A[b]);
    std::swap(res.U[a], res.U[b]);
  };
  auto swap_cols = [&](int a, int b) {
    for (int r = 0; r < n; ++r) std::swap(A[r][a], A[r][b]);
  };
  auto negate_row = [&](int r) {
    for (int c = 0; c < m; ++c) A[r][c] = -A[r][c];
    for (int c = 0; c < n; ++c) res.U[r][c] = -res.U[r][c];
  };

  int t = 0;
  while (t < n && t < m) {
    // find the smallest nonzero pivot in the remaining block
    int pr = -1, pc = -1;
    long long best = 0;
    for (int r = t; r < n; ++r)
      for (int c = t; c < m; ++c) {
        long long a = std::abs(A[r][c]);
        if (a != 0 && (pr < 0 || a < best)) {
          best = a;
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    if (A[t][t] < 0) negate_row(t);
    bool clean = true;
    for (int r = t + 1; r < n; ++r)
      if (A[r][t] != 0) {
        row_op(r, t, A[r][t] / A[t][t]);
        if (A[r][t] != 0) clean = false;
      }
    for (int c = t + 1; c < m; ++c)
      if (A[t][c] != 0) {
        col_op(c, t, A[t][c] / A[t][t]);
        if (A[t][c] != 0) clean = false;
      }
    if (!clean) continue;  // remainders left; pick a smaller pivot next round
    // divisibility: the pivot must divide everything below-right
    bool divides = true;
    for (int r = t + 1; r < n && divides; ++r)
      for (int c = t + 1; c < m && divides; ++c)
        if (A[r][c] % A[t][t] != 0) {
          // fold that row in and restart this pivot
          row_op(t, r, -1);
          divides = false;
        }
    if (!divides) continue;
    ++t;
  }
  res.factors.assign(std::min(n, m), 0);
  for (int i = 0; i < std::min(n, m); ++i) res.factors[i] = A[i][i];
  return res;
}

H1Class H1Oracle::reduce_vector(std::vector<long long> v) const {
  int n = static_cast<int>(pres.generators.size());
  H1Class out;
  out.coords.assign(n, 0);
  out.moduli.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    long long y = 0;
    for (int j = 0; j < n; ++j) y += snf.U[i][j] * v[j];
    long long d = i < static_cast<int>(snf.factors.size()) ? snf.factors[i] : 0;
    out.moduli[i] = d;
    if (d != 0) {
      y %= d;
      if (y < 0) y += d;
    }
    out.coords[i] = y;
  }
  return out;
}

H1Oracle h1_oracle(const ManifoldSpec& spec) {
  H1Oracle o;
  o.pres = presentation(spec);
  o.snf = smith_normal_form(o.pres.relations, static_cast<int>(o.pres.generators.size()));
  return o;
}

std::vector<long long> exponent_vector(const Presentation& pres, const AnyLoop& loop) {
  std::vector<long long> v(pres.generators.size(), 0);
  auto add = [&](int hb, const Word& w) {
    for (const auto& c : w) {
      int g = pres.gen_of[hb][c.disk];
      if (g >= 0) v[g] += c.side == '+' ? 1 : -1;
    }
  };
  if (std::holds_alternative<InteriorLoop>(loop)) {
    const auto& il = std::get<InteriorLoop>(loop);
    add(il.handlebody, il.word);
  } else {
    for (const auto& a : std::get<Loop>(loop).arcs) add(a.handlebody, a.crossings);
  }
  return v;
}

H1Class h1_class(const H1Oracle& oracle, const AnyLoop& loop) {
  return oracle.reduce_vector(exponent_vector(oracle.pres, loop));
}

Json h1_json(const ManifoldSpec& spec, const H1Oracle& oracle) {
  (void)spec;
  Json j;
  j["schema"] = "diskcond-h1/1";
  Json gens = Json::array();
  for (const auto& g : oracle.pres.generators) gens.push_back(g.name);
  j["generators"] = gens;
  Json rels = Json::array();
  for (size_t r = 0; r < oracle.pres.relations.size(); ++r)
    rels.push_back(Json{{"label", oracle.pres.relation_labels[r]},
                        {"exponents", oracle.pres.relations[r]}});
  j["relations"] = rels;
  j["invariant_factors"] = oracle.snf.factors;
  return j;
}

}  // namespace diskcond
