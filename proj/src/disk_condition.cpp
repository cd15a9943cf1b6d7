#include "diskcond/disk_condition.hpp"

#include <algorithm>
#include <stdexcept>

#include "diskcond/rational.hpp"

namespace diskcond {

bool disk_condition_inequality(const std::array<int, 3>& profile) {
  for (int n : profile)
    if (n <= 0) throw std::invalid_argument("disk_condition_inequality: n_i must be positive");
  Rat sum = Rat(1, profile[0]) + Rat(1, profile[1]) + Rat(1, profile[2]);
  return sum <= Rat(1, 2);
}

int disk_curve_crossings(const ManifoldSpec& spec, int hb, int disk) {
  const MeridianDisk& d = spec.handlebodies[hb].disks[disk];
  // count boundary-cycle vertices where a triple curve passes through
  std::set<std::string> triple_vertices;
  for (const Edge& e : spec.edges)
    if (e.kind == EdgeKind::Triple) {
      triple_vertices.insert(e.tail);
      triple_vertices.insert(e.head);
    }
  int count = 0;
  int m = static_cast<int>(d.boundary.size());
  for (int k = 0; k < m; ++k) {
    const Slot& sl = d.boundary[k];
    const Edge& e = spec.edges[sl.edge];
    const std::string& head = sl.forward ? e.head : e.tail;
    if (triple_vertices.count(head)) ++count;
  }
  return count;
}

namespace {

// splits every triple curve into arcs between crossings with the
// handlebody's own disk curves and checks the two end circles differ
bool pattern_waveless(const ManifoldSpec& spec, int hb, std::string* witness) {
  std::set<std::string> split_vertices;
  for (const Edge& e : spec.edges)
    if (e.kind == EdgeKind::Disk && e.disk.handlebody == hb) {
      split_vertices.insert(e.tail);
      split_vertices.insert(e.head);
    }
  int tix = 0;
  for (const auto& curve : spec.triple_curves) {
    int m = static_cast<int>(curve.size());
    std::vector<int> splits;  // positions k where head(slot k) is a split vertex
    auto head_of = [&](int k) -> const std::string& {
      const Slot& sl = curve[k];
      const Edge& e = spec.edges[sl.edge];
      return sl.forward ? e.head : e.tail;
    };
    for (int k = 0; k < m; ++k)
      if (split_vertices.count(head_of(k))) splits.push_back(k);
    if (splits.empty()) {
      ++tix;
      continue;  // curve disjoint from this handlebody's disks
    }
    for (size_t a = 0; a < splits.size(); ++a) {
      int from = splits[a];                                   // arc starts after this edge
      int to = splits[(a + 1) % splits.size()];               // and ends at this head
      int first = (from + 1) % m;
      std::string err;
      auto c1 = circle_at_crossing(spec, hb, curve[first].edge, head_of(from), &err);
      auto c2 = circle_at_crossing(spec, hb, curve[to].edge, head_of(to), &err);
      if (!c1 || !c2)
        throw std::runtime_error("pattern_waveless: " + err);
      if (*c1 == *c2) {
        const Handlebody& h = spec.handlebodies[hb];
        *witness = "triple curve #" + std::to_string(tix) + " arc after " + head_of(from) +
                   " returns to circle (" + h.disks[c1->disk].id + "," + c1->side + ")";
        return false;
      }
    }
    ++tix;
  }
  return true;
}

}  // namespace

WavelessReport verify_n_waveless(const ManifoldSpec& spec, int hb, int n,
                                 const WavelessOptions& opt) {
  WavelessReport rep;
  const Handlebody& h = spec.handlebodies[hb];

  rep.pattern_waveless = pattern_waveless(spec, hb, &rep.witness_detail);

  rep.wave_weights_ok = true;
  if (rep.pattern_waveless) {
    int cap = (n + 1) / 2;  // weight < n/2 fails; integer weights make this exact
    for (int b = 0; b < static_cast<int>(h.balls.size()) && rep.wave_weights_ok; ++b) {
      for (Circle c : piece_circles(spec, hb, b)) {
        enumerate_waves(spec, hb, b, c, cap, [&](const WaveCandidate& w) {
          if (rep.witness_wave) return;
          if (2 * w.weight >= n) return;
          auto chk = wave_essential(spec, w);
          if (chk.embeddable && chk.essential) {
            rep.witness_wave = w;
            rep.wave_weights_ok = false;
          }
        });
        if (!rep.wave_weights_ok) break;
      }
    }
  }

  rep.system_disks_ok = true;
  if (opt.check_system_disks) {
    for (int d = 0; d < static_cast<int>(h.disks.size()); ++d) {
      int k = disk_curve_crossings(spec, hb, d);
      if (k < n) {
        rep.system_disks_ok = false;
        rep.witness_detail = "disk " + h.disks[d].id + " meets the curves " + std::to_string(k) +
                             " times, need " + std::to_string(n);
        break;
      }
    }
  }

  rep.pass = rep.pattern_waveless && rep.wave_weights_ok && rep.system_disks_ok;
  return rep;
}

ManifoldReport verify_manifold(const ManifoldSpec& spec, const WavelessOptions& opt) {
  ManifoldReport rep;
  rep.inequality = disk_condition_inequality(spec.disk_profile);
  bool all = rep.inequality;
  for (int hb = 0; hb < 3; ++hb) {
    rep.handlebodies[hb] = verify_n_waveless(spec, hb, spec.disk_profile[hb], opt);
    all = all && rep.handlebodies[hb].pass;
  }
  rep.pass = all;
  return rep;
}

Json WavelessReport::to_json(const ManifoldSpec& spec) const {
  Json j;
  j["pass"] = pass;
  j["waveless"] = pattern_waveless;
  j["wave_weights_ok"] = wave_weights_ok;
  j["system_disks_ok"] = system_disks_ok;
  if (witness_wave)
    j["witness_wave"] = wave_json(spec, *witness_wave);
  else
    j["witness_wave"] = nullptr;
  j["witness"] = witness_detail.empty() ? Json(nullptr) : Json(witness_detail);
  return j;
}

Json ManifoldReport::to_json(const ManifoldSpec& spec) const {
  Json j;
  j["schema"] = "diskcond-verify/1";
  j["inequality"] = Json{{"profile", Json::array({spec.disk_profile[0], spec.disk_profile[1],
                                                  spec.disk_profile[2]})},
                         {"pass", inequality}};
  Json hb = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json h = handlebodies[i].to_json(spec);
    h["id"] = spec.handlebodies[i].id;
    h["n"] = spec.disk_profile[i];
    hb.push_back(h);
  }
  j["handlebodies"] = hb;
  j["pass"] = pass;
  return j;
}

}  // namespace diskcond
