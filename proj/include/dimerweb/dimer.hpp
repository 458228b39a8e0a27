// Dimer configurations and boundary measurements.
//
// A dimer configuration (almost perfect matching) covers every interior
// vertex exactly once and each boundary vertex at most once.  Its boundary
// subset I collects the black boundary vertices it uses and the white
// boundary vertices it leaves unused; every configuration of one network
// yields the same size |I| = k = d' + d.  The boundary measurement Delta_I is
// the weight sum of the configurations with boundary subset I; the table of
// all Delta_I is a point of the Grassmannian Gr(k, n) given by the exchange
// relations checked in verify_plucker.
#pragma once

#include <vector>

#include "dimerweb/network.hpp"

namespace dimerweb {

using Matching = std::vector<std::string>;  // sorted edge ids

// Shared result type for the verification routines across modules.
struct CheckReport {
  bool ok = true;
  long long checks = 0;
  std::vector<std::string> failures;  // first few human-readable mismatches

  void note(bool pass, const std::string& what);
  void merge(const CheckReport& other);
};

// All sorted k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

std::vector<Matching> enumerate_matchings(const PlanarNetwork& net);

std::vector<int> boundary_subset(const PlanarNetwork& net, const Matching& m);

Polynomial matching_weight(const PlanarNetwork& net, const Matching& m);

struct GrassmannPoint {
  int k = 0, n = 0;
  std::map<std::vector<int>, Polynomial> delta;  // sorted subset -> weight sum

  // Zero polynomial for absent subsets.
  const Polynomial& at(const std::vector<int>& I) const;
};

// Throws Error if the network admits no dimer configuration at all.
GrassmannPoint grassmann_point(const PlanarNetwork& net);

// Entry for an arbitrary index sequence, antisymmetric under transpositions
// (zero on repeated indices).
Polynomial plucker_signed(const GrassmannPoint& gp, const std::vector<int>& seq);

// Supports of the nonzero boundary measurements.
std::vector<std::vector<int>> matroid(const GrassmannPoint& gp);

// Exchange relations over every (k-1)-subset x (k+1)-subset pair.
CheckReport verify_plucker(const GrassmannPoint& gp);

// Sorted interleaving sort1/sort2 and elementwise min/max of two k-subsets.
struct SubsetPair {
  std::vector<int> first, second;
};
SubsetPair sort_pair(const std::vector<int>& I, const std::vector<int>& J);
SubsetPair min_max_pair(const std::vector<int>& I, const std::vector<int>& J);

// The support is closed under sort_pair.
CheckReport sort_closed_check(const GrassmannPoint& gp);

}  // namespace dimerweb
