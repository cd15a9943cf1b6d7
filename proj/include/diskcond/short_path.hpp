#pragma once

#include <optional>
#include <vector>

#include "diskcond/loops.hpp"
#include "diskcond/manifold.hpp"

namespace diskcond {

// One transverse crossing of a boundary walk: the edge and which of its two
// occurrences the walk enters (disambiguates edges with both sides on one
// cell).
struct PathStep {
  int edge = -1;
  int enter_occ = 0;
  bool operator==(const PathStep& o) const = default;
};

struct ForeignCross {
  int handlebody = -1;
  int disk = -1;
  char side = '+';
  bool operator==(const ForeignCross& o) const = default;
};

// A walk on one handlebody's boundary whose own-disk crossings reproduce an
// arc's crossing sequence exactly.  TRIPLE crossings carry the weight.
struct BoundaryPath {
  int handlebody = -1;
  int start_cell = -1;
  std::vector<PathStep> steps;
  int weight = 0;

  std::vector<int> cells(const ManifoldSpec& spec) const;
  int end_cell(const ManifoldSpec& spec) const;
  Word disk_trace(const ManifoldSpec& spec) const;
  std::vector<ForeignCross> foreign_trace(const ManifoldSpec& spec) const;
};

// side of the disk entered when a walk crosses `edge` into occurrence `occ`
char entered_side(const ManifoldSpec& spec, int edge, const Occ& occ);

// All walks realizing the arc's crossing sequence at minimum TRIPLE weight,
// without repeated (layer, cell) states, in deterministic order.  Empty when
// no walk realizes the sequence.
std::vector<BoundaryPath> min_weight_paths(const ManifoldSpec& spec, const ArcClass& arc);

struct Shortness {
  bool is_short = false;
  std::optional<int> min_weight;  // empty when no realizing walk exists
  std::optional<BoundaryPath> path;
};

Shortness is_short(const ManifoldSpec& spec, const ArcClass& arc);

Json path_json(const ManifoldSpec& spec, const BoundaryPath& p);
std::optional<BoundaryPath> path_from_json(const ManifoldSpec& spec, const Json& j,
                                           std::string* err);

}  // namespace diskcond
