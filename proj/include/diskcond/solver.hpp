#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diskcond/loops.hpp"
#include "diskcond/manifold.hpp"
#include "diskcond/rational.hpp"
#include "diskcond/short_path.hpp"

namespace diskcond {

// ceil(8 (n l)^2 pi), computed with a 20-digit upper bound on pi so the cap
// never under-estimates.
long long face_bound(int n, int l);

// Pushes arc j across its short disk: the arc is replaced by the path's
// pushed-off copy, split at TRIPLE crossings into arcs of the neighbouring
// handlebodies; end segments merge into arcs j-1 and j+1 with reduction.
// The result satisfies l' = l - 2 + weight and is validated and canonical.
AnyLoop short_disk_move(const ManifoldSpec& spec, const Loop& loop, int j,
                        const BoundaryPath& path);

bool interior_trivial(const ManifoldSpec& spec, const InteriorLoop& loop);

struct MoveRec {
  Loop before;  // canonical
  int arc = 0;
  BoundaryPath path;
};

struct Trace {
  AnyLoop initial;  // canonical
  std::vector<MoveRec> moves;
  InteriorLoop terminal;
};

enum class VerdictKind { Trivial, Nontrivial, ResourceLimit };

struct Verdict {
  VerdictKind kind = VerdictKind::Nontrivial;
  std::optional<Trace> trace;
  long long cap = 0;
  bool frontier_exhausted = false;
  long long nodes = 0;
  long long dedup_hits = 0;
  long long moves_generated = 0;
  int initial_short_arcs = 0;
  int initial_length = 0;
};

struct SolveOptions {
  std::optional<long long> max_faces;  // cap override
  long long node_limit = 200000;
  int threads = 1;
  // invoked on every generated move, before dedup
  std::function<void(const Loop&, const BoundaryPath&, const AnyLoop&)> move_hook;
};

Verdict solve(const ManifoldSpec& spec, const AnyLoop& loop, const SolveOptions& opt = {});

// ---------------------------------------------------------------------
// replayable disk diagram with curvature bookkeeping
// ---------------------------------------------------------------------

struct DiagramFace {
  int n = 0;                  // disk-condition of the handlebody the face maps into
  std::vector<int> corners;   // vertex ids around the face
  std::vector<int> edges;     // diagram edge ids around the face
  Rat curvature;              // in units of pi
};

struct AuditReport {
  bool ok = false;
  bool vacuous = false;  // interior-only trace: no diagram
  std::string error;
  std::vector<DiagramFace> faces;
  int vertices = 0, interior_vertices = 0, edges = 0;
  Rat identity_lhs;  // sum K(F) + sum interior defects, in units of pi; 2 when ok
  Json to_json(const ManifoldSpec& spec) const;
  std::string face_adjacency_dot() const;
};

AuditReport replay_and_audit(const ManifoldSpec& spec, const Trace& trace);

Json trace_json(const ManifoldSpec& spec, const Trace& trace);
std::optional<Trace> trace_from_json(const ManifoldSpec& spec, const Json& doc,
                                     std::string* err);
Json verdict_json(const ManifoldSpec& spec, const Verdict& v, bool include_trace);

}  // namespace diskcond
