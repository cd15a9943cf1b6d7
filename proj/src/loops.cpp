#include "diskcond/loops.hpp"

#include <algorithm>

namespace diskcond {

Word reduce(Word w) {
  Word out;
  for (const auto& c : w) {
    if (!out.empty() && out.back().disk == c.disk && out.back().side != c.side)
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

Word cyclic_reduce(Word w) {
  w = reduce(std::move(w));
  while (w.size() >= 2 && w.front().disk == w.back().disk && w.front().side != w.back().side) {
    w.erase(w.begin());
    w.pop_back();
    w = reduce(std::move(w));
  }
  return w;
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->disk, it->side == '+' ? '-' : '+'});
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce(std::move(out));
}

int walk_balls(const ManifoldSpec& spec, int hb, int ball, const Word& w) {
  for (const auto& c : w) {
    if (c.disk < 0 || c.disk >= static_cast<int>(spec.handlebodies[hb].disks.size())) return -1;
    ball = spec.cross_ball(hb, c.disk, c.side, ball);
    if (ball < 0) return -1;
  }
  return ball;
}

std::optional<TransferView> transfer(const ManifoldSpec& spec, int cell, int seen_from) {
  if (cell < 0 || cell >= static_cast<int>(spec.cells.size())) return std::nullopt;
  if (!spec.cell_bounds(cell, seen_from)) return std::nullopt;
  return TransferView{cell, spec.other_side(cell, seen_from)};
}

LoopCheck validate_loop(const ManifoldSpec& spec, const Loop& loop) {
  LoopCheck res;
  auto fail = [&](int ix, const std::string& msg) {
    res.ok = false;
    res.index = ix;
    res.message = msg;
    return res;
  };
  if (loop.arcs.empty()) return fail(-1, "loop has no arcs");
  int l = loop.length();
  for (int j = 0; j < l; ++j) {
    const ArcClass& a = loop.arcs[j];
    if (a.handlebody < 0 || a.handlebody >= 3) return fail(j, "bad handlebody");
    if (a.start_cell < 0 || a.start_cell >= static_cast<int>(spec.cells.size()) ||
        a.end_cell < 0 || a.end_cell >= static_cast<int>(spec.cells.size()))
      return fail(j, "unknown cell");
    if (!spec.cell_bounds(a.start_cell, a.handlebody))
      return fail(j, "start cell not on this handlebody's boundary");
    if (!spec.cell_bounds(a.end_cell, a.handlebody))
      return fail(j, "end cell not on this handlebody's boundary");
    if (reduce(a.crossings) != a.crossings) return fail(j, "crossing word not reduced");
    const Handlebody& hb = spec.handlebodies[a.handlebody];
    int b0 = hb.cell_ball.at(a.start_cell);
    int b1 = walk_balls(spec, a.handlebody, b0, a.crossings);
    if (b1 < 0) return fail(j, "crossing word is not a ball-graph path");
    if (b1 != hb.cell_ball.at(a.end_cell))
      return fail(j, "crossing word does not reach the end cell's ball");
    // junction with the next arc
    const ArcClass& nxt = loop.arcs[(j + 1) % l];
    if (a.end_cell != nxt.start_cell)
      return fail(j, "junction cell mismatch with next arc");
    if (nxt.handlebody == a.handlebody)
      return fail(j, "consecutive arcs in the same handlebody");
    if (spec.other_side(a.end_cell, a.handlebody) != nxt.handlebody)
      return fail(j, "next arc is not in the opposite handlebody of the junction sheet");
  }
  return res;
}

LoopCheck validate_interior(const ManifoldSpec& spec, const InteriorLoop& loop) {
  LoopCheck res;
  if (loop.handlebody < 0 || loop.handlebody >= 3) {
    res.ok = false;
    res.message = "bad handlebody";
    return res;
  }
  Word w = cyclic_reduce(loop.word);
  if (w != loop.word) {
    res.ok = false;
    res.message = "interior word not cyclically reduced";
    return res;
  }
  const Handlebody& hb = spec.handlebodies[loop.handlebody];
  for (int b = 0; b < static_cast<int>(hb.balls.size()); ++b)
    if (walk_balls(spec, loop.handlebody, b, loop.word) == b) return res;
  if (!loop.word.empty()) {
    res.ok = false;
    res.message = "word is not a closed ball-graph walk";
  }
  return res;
}

std::string arc_fingerprint(const ManifoldSpec& spec, const ArcClass& a) {
  std::string s = spec.handlebodies[a.handlebody].id + "|" + spec.cells[a.start_cell].id + "|";
  for (const auto& c : a.crossings) {
    s += spec.handlebodies[a.handlebody].disks[c.disk].id;
    s += c.side;
    s += ",";
  }
  s += "|" + spec.cells[a.end_cell].id;
  return s;
}

std::string loop_fingerprint(const ManifoldSpec& spec, const Loop& loop) {
  std::string s;
  for (const auto& a : loop.arcs) s += arc_fingerprint(spec, a) + ";";
  return s;
}

Loop canonical(const ManifoldSpec& spec, const Loop& loop) {
  int l = loop.length();
  std::vector<std::string> keys;
  for (const auto& a : loop.arcs) keys.push_back(arc_fingerprint(spec, a));
  int best = 0;
  for (int k = 1; k < l; ++k) {
    for (int t = 0; t < l; ++t) {
      const auto& a = keys[(k + t) % l];
      const auto& b = keys[(best + t) % l];
      if (a < b) { best = k; break; }
      if (a > b) break;
    }
  }
  Loop out;
  for (int t = 0; t < l; ++t) out.arcs.push_back(loop.arcs[(best + t) % l]);
  return out;
}

InteriorLoop canonical(const ManifoldSpec& spec, const InteriorLoop& loop) {
  InteriorLoop out = loop;
  out.word = cyclic_reduce(out.word);
  if (out.word.empty()) return out;
  auto key = [&](const Crossing& c) {
    return spec.handlebodies[out.handlebody].disks[c.disk].id + c.side;
  };
  int l = static_cast<int>(out.word.size());
  int best = 0;
  for (int k = 1; k < l; ++k) {
    for (int t = 0; t < l; ++t) {
      auto a = key(out.word[(k + t) % l]);
      auto b = key(out.word[(best + t) % l]);
      if (a < b) { best = k; break; }
      if (a > b) break;
    }
  }
  std::rotate(out.word.begin(), out.word.begin() + best, out.word.end());
  return out;
}

std::string canonical_key(const ManifoldSpec& spec, const AnyLoop& loop) {
  if (std::holds_alternative<Loop>(loop))
    return "L:" + loop_fingerprint(spec, canonical(spec, std::get<Loop>(loop)));
  const InteriorLoop il = canonical(spec, std::get<InteriorLoop>(loop));
  std::string s = "I:" + spec.handlebodies[il.handlebody].id + "|";
  for (const auto& c : il.word) {
    s += spec.handlebodies[il.handlebody].disks[c.disk].id;
    s += c.side;
    s += ",";
  }
  return s;
}

namespace {

Json word_json(const ManifoldSpec& spec, int hb, const Word& w) {
  Json arr = Json::array();
  for (const auto& c : w)
    arr.push_back(Json::array(
        {spec.handlebodies[hb].disks[c.disk].id, std::string(1, c.side)}));
  return arr;
}

bool parse_word(const ManifoldSpec& spec, int hb, const Json& arr, Word* out, std::string* err) {
  if (!arr.is_array()) {
    *err = "crossings must be an array";
    return false;
  }
  const Handlebody& h = spec.handlebodies[hb];
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2) {
      *err = "malformed crossing entry";
      return false;
    }
    std::string d = item[0].get<std::string>(), s = item[1].get<std::string>();
    int dix = -1;
    for (int k = 0; k < static_cast<int>(h.disks.size()); ++k)
      if (h.disks[k].id == d) dix = k;
    if (dix < 0) {
      *err = "unknown disk " + d + " in " + h.id;
      return false;
    }
    if (s != "+" && s != "-") {
      *err = "bad crossing sign";
      return false;
    }
    out->push_back({dix, s[0]});
  }
  return true;
}

}  // namespace

Json loop_json(const ManifoldSpec& spec, const AnyLoop& loop) {
  Json doc;
  doc["schema"] = "diskcond-loop/1";
  if (std::holds_alternative<InteriorLoop>(loop)) {
    const auto& il = std::get<InteriorLoop>(loop);
    doc["interior"] = Json{{"handlebody", spec.handlebodies[il.handlebody].id},
                           {"word", word_json(spec, il.handlebody, il.word)}};
    return doc;
  }
  const auto& lp = std::get<Loop>(loop);
  Json arcs = Json::array();
  for (const auto& a : lp.arcs)
    arcs.push_back(Json{{"handlebody", spec.handlebodies[a.handlebody].id},
                        {"start_cell", spec.cells[a.start_cell].id},
                        {"crossings", word_json(spec, a.handlebody, a.crossings)},
                        {"end_cell", spec.cells[a.end_cell].id}});
  doc["arcs"] = arcs;
  return doc;
}

std::optional<AnyLoop> loop_from_json(const ManifoldSpec& spec, const Json& doc,
                                      std::string* err) {
  if (!doc.is_object() || doc.value("schema", "") != "diskcond-loop/1") {
    *err = "not a diskcond-loop/1 document";
    return std::nullopt;
  }
  if (doc.contains("interior")) {
    const Json& il = doc["interior"];
    auto it = spec.hb_ix.find(il.value("handlebody", ""));
    if (it == spec.hb_ix.end()) {
      *err = "unknown handlebody";
      return std::nullopt;
    }
    InteriorLoop loop;
    loop.handlebody = it->second;
    if (!parse_word(spec, loop.handlebody, il["word"], &loop.word, err)) return std::nullopt;
    loop.word = cyclic_reduce(loop.word);
    return AnyLoop{loop};
  }
  if (!doc.contains("arcs") || !doc["arcs"].is_array() || doc["arcs"].empty()) {
    *err = "loop document needs arcs or interior";
    return std::nullopt;
  }
  Loop loop;
  for (const Json& aj : doc["arcs"]) {
    ArcClass a;
    auto hit = spec.hb_ix.find(aj.value("handlebody", ""));
    auto sit = spec.cell_ix.find(aj.value("start_cell", ""));
    auto eit = spec.cell_ix.find(aj.value("end_cell", ""));
    if (hit == spec.hb_ix.end() || sit == spec.cell_ix.end() || eit == spec.cell_ix.end()) {
      *err = "unknown id in arc";
      return std::nullopt;
    }
    a.handlebody = hit->second;
    a.start_cell = sit->second;
    a.end_cell = eit->second;
    if (!parse_word(spec, a.handlebody, aj["crossings"], &a.crossings, err)) return std::nullopt;
    loop.arcs.push_back(a);
  }
  return AnyLoop{loop};
}

}  // namespace diskcond
