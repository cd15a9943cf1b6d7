#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diskcond/manifold.hpp"
#include "diskcond/short_path.hpp"

namespace diskcond {

// A boundary circle of a cut-open piece: one side of one meridian disk.
struct Circle {
  int disk = -1;
  char side = '+';
  bool operator==(const Circle& o) const = default;
  bool operator<(const Circle& o) const {
    return disk != o.disk ? disk < o.disk : side < o.side;
  }
};

// A candidate wave: a transverse arc in a piece with both endpoints on the
// base circle.  Endpoints are pinned to specific own-disk slot occurrences;
// `subs` orders the two endpoints when they share a slot.
struct WaveCandidate {
  int handlebody = -1;
  int piece = -1;  // ball index
  Circle base;
  int start_cell = -1, start_slot = -1;
  std::vector<PathStep> steps;
  int end_cell = -1, end_slot = -1;
  int start_sub = 0, end_sub = 1;
  int weight = 0;
};

struct EssentialCheck {
  bool embeddable = false;
  bool essential = false;
};

// Cuts the piece along the candidate arc and asks whether both complementary
// components contain a boundary circle other than the base one.
EssentialCheck wave_essential(const ManifoldSpec& spec, const WaveCandidate& w);

// Enumerates embedded candidate waves (distinct cells along the dual path)
// of weight < weight_cap, invoking fn on each.  Deterministic order.
void enumerate_waves(const ManifoldSpec& spec, int hb, int piece, Circle base,
                     int weight_cap, const std::function<void(const WaveCandidate&)>& fn);

// Minimum TRIPLE weight over essential waves based at the circle, searching
// below weight_cap; nullopt when none exists there.  Pieces with fewer than
// three boundary circles admit no essential waves at all.
std::optional<int> min_essential_wave_weight(const ManifoldSpec& spec, int hb, int piece,
                                             Circle base, int weight_cap);

int circle_count(const ManifoldSpec& spec, int hb, int piece);
std::vector<Circle> piece_circles(const ManifoldSpec& spec, int hb, int piece);

// The circle a transverse-curve end attaches to when the curve crosses an
// own-disk curve at vertex v, approaching along triple edge `edge`.
std::optional<Circle> circle_at_crossing(const ManifoldSpec& spec, int hb, int edge,
                                         const std::string& vertex, std::string* err);

Json wave_json(const ManifoldSpec& spec, const WaveCandidate& w);

}  // namespace diskcond
