#pragma once

#include <array>
#include <optional>
#include <string>

#include "diskcond/manifold.hpp"
#include "diskcond/waves.hpp"

namespace diskcond {

// 1/n1 + 1/n2 + 1/n3 <= 1/2, in exact rational arithmetic.
bool disk_condition_inequality(const std::array<int, 3>& profile);

struct WavelessOptions {
  // the sufficient condition also needs each system disk to meet the curves
  // at least n times; toggleable because the definition alone does not say it
  bool check_system_disks = true;
};

struct WavelessReport {
  bool pass = false;
  bool pattern_waveless = false;   // no curve arc returns to the circle it left
  bool wave_weights_ok = false;    // every essential wave crosses >= n/2 times
  bool system_disks_ok = false;
  std::optional<WaveCandidate> witness_wave;
  std::string witness_detail;      // offending disk or pattern arc
  Json to_json(const ManifoldSpec& spec) const;
};

WavelessReport verify_n_waveless(const ManifoldSpec& spec, int hb, int n,
                                 const WavelessOptions& opt = {});

struct ManifoldReport {
  bool pass = false;
  bool inequality = false;
  std::array<WavelessReport, 3> handlebodies;
  Json to_json(const ManifoldSpec& spec) const;
};

ManifoldReport verify_manifold(const ManifoldSpec& spec, const WavelessOptions& opt = {});

// |∂D ∩ T|: crossings of a meridian-disk boundary with the triple curves.
int disk_curve_crossings(const ManifoldSpec& spec, int hb, int disk);

}  // namespace diskcond
