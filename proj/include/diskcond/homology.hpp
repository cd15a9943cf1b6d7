#pragma once

#include <string>
#include <vector>

#include "diskcond/loops.hpp"
#include "diskcond/manifold.hpp"

namespace diskcond {

// Finite presentation data for the first homology: free generators come from
// a spanning tree of each ball graph, one relation per face-surface generator
// equating its two handlebody inclusions.
struct Presentation {
  struct Generator {
    int handlebody = -1;
    int disk = -1;  // non-tree ball-graph edge
    std::string name;
  };
  std::vector<Generator> generators;
  std::vector<std::vector<long long>> relations;  // exponent vectors
  std::vector<std::string> relation_labels;
  // gen_of[hb][disk] = generator index or -1 for tree disks
  std::array<std::vector<int>, 3> gen_of;
};

Presentation presentation(const ManifoldSpec& spec);

struct SmithResult {
  std::vector<long long> factors;            // diagonal d_1 | d_2 | ...
  std::vector<std::vector<long long>> U;     // left transform: U * A * V = D
};

// exact integer Smith normal form of an n x m matrix given as column vectors
SmithResult smith_normal_form(std::vector<std::vector<long long>> columns, int rows);

struct H1Class {
  std::vector<long long> coords;   // in invariant-factor coordinates, reduced
  std::vector<long long> moduli;   // modulus per coordinate; 0 = free
  bool zero() const {
    for (long long c : coords)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const H1Class& o) const = default;
};

struct H1Oracle {
  Presentation pres;
  SmithResult snf;
  std::vector<long long> invariant_factors() const { return snf.factors; }
  H1Class reduce_vector(std::vector<long long> v) const;
};

H1Oracle h1_oracle(const ManifoldSpec& spec);

std::vector<long long> exponent_vector(const Presentation& pres, const AnyLoop& loop);
H1Class h1_class(const H1Oracle& oracle, const AnyLoop& loop);

Json h1_json(const ManifoldSpec& spec, const H1Oracle& oracle);

}  // namespace diskcond
