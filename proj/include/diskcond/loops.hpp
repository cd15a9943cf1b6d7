#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diskcond/manifold.hpp"

namespace diskcond {

// One signed meridian-disk crossing: (disk index within its handlebody, side
// entered).
struct Crossing {
  int disk = -1;
  char side = '+';
  bool operator==(const Crossing& o) const = default;
};

using Word = std::vector<Crossing>;

// A properly embedded arc in a handlebody up to homotopy rel endpoints:
// endpoints sit in the interiors of two boundary cells, the class is the
// reduced ball-graph path between them.
struct ArcClass {
  int handlebody = -1;
  int start_cell = -1, end_cell = -1;
  Word crossings;
  bool operator==(const ArcClass& o) const = default;
};

struct Loop {
  std::vector<ArcClass> arcs;  // cyclic
  int length() const { return static_cast<int>(arcs.size()); }
};

// A loop disjoint from the 2-complex: a cyclically reduced word in one
// handlebody's ball graph.
struct InteriorLoop {
  int handlebody = -1;
  Word word;
};

using AnyLoop = std::variant<Loop, InteriorLoop>;

Word reduce(Word w);
Word cyclic_reduce(Word w);

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

// ball reached from `ball` by the reduced word, or -1 if not a ball-graph path
int walk_balls(const ManifoldSpec& spec, int hb, int ball, const Word& w);

struct LoopCheck {
  bool ok = true;
  int index = -1;  // first offending arc
  std::string message;
};

LoopCheck validate_loop(const ManifoldSpec& spec, const Loop& loop);
LoopCheck validate_interior(const ManifoldSpec& spec, const InteriorLoop& loop);

// view of a shared sheet cell from the opposite handlebody
struct TransferView {
  int cell = -1;
  int handlebody = -1;
};
std::optional<TransferView> transfer(const ManifoldSpec& spec, int cell, int seen_from);

std::string arc_fingerprint(const ManifoldSpec& spec, const ArcClass& a);
std::string loop_fingerprint(const ManifoldSpec& spec, const Loop& loop);

// representative invariant under cyclic rotation: the lexicographically
// minimal rotation of the serialized arc list
Loop canonical(const ManifoldSpec& spec, const Loop& loop);
InteriorLoop canonical(const ManifoldSpec& spec, const InteriorLoop& loop);
std::string canonical_key(const ManifoldSpec& spec, const AnyLoop& loop);

Json loop_json(const ManifoldSpec& spec, const AnyLoop& loop);
std::optional<AnyLoop> loop_from_json(const ManifoldSpec& spec, const Json& doc,
                                      std::string* err);

}  // namespace diskcond
