#pragma once

#include "diskcond/manifold.hpp"

namespace diskcond {

struct TorusExampleParams {
  int p1 = 3, p2 = 3, p3 = 3;  // crossings of each meridian with one triple curve
};

// Three solid tori glued along annuli.  Each boundary torus is cut by the two
// triple curves into two annuli; meridian boundaries run across the annuli,
// so |∂D_i ∩ T| = 2·p_i and the profile is (2p1, 2p2, 2p3).
Json build_torus_example(const TorusExampleParams& params);

}  // namespace diskcond
