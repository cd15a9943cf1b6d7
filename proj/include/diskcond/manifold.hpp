#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace diskcond {

using Json = nlohmann::ordered_json;

// --------------------------------------------------------------------------
// Global complex tables
// --------------------------------------------------------------------------

enum class EdgeKind { Triple, Disk };

// Sides of a meridian disk are labelled '+'/'-'.  For a disk-type edge the
// pair (side_left, side_right) tells which side of the disk each side of the
// directed edge faces; crossing the edge into its left cell enters the disk
// on side_left.
struct DiskMark {
  int handlebody = -1;  // owner index
  int disk = -1;        // index into owner's disk list
  char side_left = '+';
  char side_right = '-';
};

struct Edge {
  std::string id;
  EdgeKind kind = EdgeKind::Triple;
  DiskMark disk;  // valid iff kind == Disk
  std::string tail, head;
};

struct Slot {
  int edge = -1;
  bool forward = true;  // traversed tail->head in the cell boundary cycle
};

struct Cell {
  std::string id;
  int surface = -1;            // face-surface index
  std::vector<Slot> boundary;  // cyclic, oriented within the sheet
};

struct FaceSurface {
  std::string id;
  std::array<int, 2> handlebodies{-1, -1};  // the two sides, sorted
  std::vector<int> cells;                   // derived
};

struct MeridianDisk {
  std::string id;
  std::vector<Slot> boundary;  // directed edge cycle along the curve
  int ball_plus = -1, ball_minus = -1;
  int ball(char side) const { return side == '+' ? ball_plus : ball_minus; }
};

struct Handlebody {
  std::string id;
  int genus = 0;
  std::vector<std::string> balls;
  std::vector<MeridianDisk> disks;
  std::map<int, int> cell_ball;  // cell index -> ball index
};

// An edge occurrence: which cell traverses the edge, at which position and
// in which direction.  Interior sheet edges have two occurrences, triple
// edges have three (one per sheet).
struct Occ {
  int cell = -1;
  int pos = -1;
  bool forward = true;
};

struct Violation {
  std::string code;
  std::string detail;
};

// --------------------------------------------------------------------------
// Per-handlebody boundary surface view
// --------------------------------------------------------------------------

// The closed boundary surface of one handlebody: the cells of its two face
// surfaces.  Every edge incident to those cells has exactly two occurrences
// here, which yields the dual graph used by path and wave searches.
struct SurfaceView {
  int handlebody = -1;
  std::vector<int> cells;                       // global cell indices, sorted
  std::map<int, std::array<Occ, 2>> edge_occ;   // edge -> its two occurrences
  std::map<int, std::vector<int>> cell_edges;   // cell -> incident edges (sorted, uniq)

  // piece decomposition: cut along this handlebody's own meridian disks
  std::map<int, int> cell_piece;  // cell -> ball index (piece == ball)

  bool has_edge(int e) const { return edge_occ.count(e) != 0; }
  // cross edge e out of cell c; returns the other incident cell
  int across(int e, int c) const {
    const auto& o = edge_occ.at(e);
    return o[0].cell == c ? o[1].cell : o[0].cell;
  }
};

struct SurfaceDualGraph {
  int handlebody = -1;
  std::vector<std::string> nodes;  // cell ids, sorted
  // edges: (edge id, cell a, cell b, kind, annotation)
  struct Arc {
    std::string edge, cell_a, cell_b;
    std::string kind;  // "triple" or "disk"
    std::string owner, disk, sign_left, sign_right;
  };
  std::vector<Arc> arcs;
};

struct BallGraph {
  int handlebody = -1;
  std::vector<std::string> nodes;  // ball ids
  struct Arc {
    std::string disk;
    int ball_minus = -1, ball_plus = -1;  // crossing sign '+' enters ball_plus
  };
  std::vector<Arc> arcs;
  int first_betti() const {
    return static_cast<int>(arcs.size()) - static_cast<int>(nodes.size()) + 1;
  }
};

// --------------------------------------------------------------------------
// ManifoldSpec
// --------------------------------------------------------------------------

class ManifoldSpec {
 public:
  std::array<int, 3> disk_profile{0, 0, 0};
  std::vector<Handlebody> handlebodies;
  std::vector<FaceSurface> surfaces;
  std::vector<Cell> cells;
  std::vector<Edge> edges;
  std::vector<std::string> vertices;                  // derived, sorted
  std::vector<std::vector<Slot>> triple_curves;       // cyclic edge sequences
  std::array<SurfaceView, 3> boundary;                // one per handlebody

  std::map<std::string, int> cell_ix, edge_ix, surf_ix, hb_ix;

  int n_of(int hb) const { return disk_profile[hb]; }
  int max_n() const;

  const Cell& cell(int i) const { return cells[i]; }
  const Edge& edge(int i) const { return edges[i]; }

  // the two handlebodies bounding the sheet of a cell
  std::array<int, 2> cell_sides(int c) const {
    return surfaces[cells[c].surface].handlebodies;
  }
  bool cell_bounds(int c, int hb) const {
    auto s = cell_sides(c);
    return s[0] == hb || s[1] == hb;
  }
  // the opposite side of the sheet through cell c, seen from handlebody hb
  int other_side(int c, int hb) const {
    auto s = cell_sides(c);
    return s[0] == hb ? s[1] : s[0];
  }

  // For a triple edge, the cell of the one sheet not bounding `hb`; this is
  // the sheet a pushed path pierces when it crosses the triple curve.
  int third_sheet_cell(int e, int hb) const;

  // ball reached from `ball` after crossing disk (hb, d) entering side `side`;
  // returns -1 when the crossing does not start at `ball`.
  int cross_ball(int hb, int d, char side, int ball) const;

  Json serialize() const;
};

struct LoadResult {
  std::optional<ManifoldSpec> spec;
  std::vector<Violation> violations;
  bool ok() const { return spec.has_value(); }
};

LoadResult load_manifold(const Json& doc);

// Builds spec->boundary[hb] and runs the per-handlebody structural checks
// (ball consistency, Euler characteristic, ball-graph shape).  Used by
// load_manifold for all three handlebodies and by handlebody-level fixtures.
std::vector<Violation> derive_boundary_view(ManifoldSpec* spec, int hb);

// Per-piece boundary-sphere report used by ball_decomposition_check.
struct PieceReport {
  std::string ball;
  int euler = 0;         // Euler characteristic of the cut-open piece
  int circles = 0;       // boundary circles (disk sides facing this ball)
  bool connected = false;
  bool ok() const { return connected && euler + circles == 2; }
};

std::vector<PieceReport> ball_decomposition_check(const ManifoldSpec& spec, int hb);

SurfaceDualGraph surface_dual_graph(const ManifoldSpec& spec, int hb);
BallGraph ball_graph(const ManifoldSpec& spec, int hb);

Json dual_graph_json(const SurfaceDualGraph& g);
Json ball_graph_json(const BallGraph& g);

}  // namespace diskcond
