// Non-crossing partial pairings and the expansion of products of two
// boundary measurements into Temperley-Lieb immanants.
//
// A TL subgraph packs two dimer configurations into one edge-multiplicity
// pattern: its components are boundary-to-boundary paths, interior cycles
// (worth a factor 2, one per way of splitting back into two configurations),
// and doubled single edges (weight squared).  The pairing of a subgraph
// records which boundary vertices its paths join (the arcs tau) together
// with the tag set T = black boundary vertices sitting on a doubled edge
// plus white boundary vertices left unused.  tl_immanant sums subgraph
// weights at a fixed pairing, and verify_tl_identity checks
//   Delta_I * Delta_J = sum of F_{tau,T} over pairings compatible with (I,J).
// theta sends a standard subset pair to its stack pairing; the transition
// matrix between the two families is unitriangular in the Dyck order
// (verify_unitriangular), and the sorted/min-max products dominate at
// positive weights (verify_inequalities).
#pragma once

#include <utility>

#include "dimerweb/dimer.hpp"

namespace dimerweb {

struct Pairing {
  int k = 0;
  std::vector<std::pair<int, int>> arcs;  // (l, r) with l < r, sorted by l
  std::vector<int> tags;                  // sorted, disjoint from arc support

  std::vector<int> support() const;  // sorted arc endpoints
  std::string str() const;           // "arcs=(1-2)(3-4);T={2,4}", "-" if none
  bool operator==(const Pairing& o) const;
  bool operator<(const Pairing& o) const;  // canonical-string order
};

// True iff no two arcs interleave as chords on boundary positions.
bool arcs_noncrossing(const std::vector<std::pair<int, int>>& arcs);

// Validates and normalizes; throws InvalidArgument on out-of-range indices,
// repeated endpoints, crossings, or #arcs + #tags != k.
Pairing make_pairing(int k, int n, std::vector<std::pair<int, int>> arcs,
                     std::vector<int> tags);

// All pairings with #arcs + |T| = k on {1..n}, sorted by canonical string.
std::vector<Pairing> enumerate_pairings(int k, int n);

struct TLComponent {
  enum class Kind { Path, Cycle, SingleEdge };
  Kind kind = Kind::Path;
  std::vector<std::string> edges;  // traversal order for paths and cycles
  int end1 = 0, end2 = 0;          // boundary indices of a path (end1 < end2)
};

struct TLSubgraph {
  std::vector<TLComponent> components;
};

struct TLEntry {
  TLSubgraph subgraph;
  Pairing pairing;
  Polynomial weight;
};

// Every multiplicity pattern m: edges -> {0,1,2} whose sum at each interior
// vertex is exactly 2, decomposed into components.  Deterministic order.
std::vector<TLEntry> enumerate_tl_subgraphs(const PlanarNetwork& net);

// Nonzero immanants only, keyed canonically.
std::map<Pairing, Polynomial> tl_immanant_table(const PlanarNetwork& net);
Polynomial tl_immanant(const PlanarNetwork& net, const Pairing& p);

// S(tau) = I^J symmetric difference, every arc joins I\J to J\I, T = I&J.
bool compatible(const Pairing& p, const std::vector<int>& I,
                const std::vector<int>& J);

CheckReport verify_tl_identity(const GrassmannPoint& gp,
                               const std::map<Pairing, Polynomial>& table,
                               const std::vector<int>& I,
                               const std::vector<int>& J);
CheckReport verify_tl_identity(const PlanarNetwork& net,
                               const std::vector<int>& I,
                               const std::vector<int>& J);
// All ordered pairs of k-subsets of [n].
CheckReport verify_tl_sweep(const PlanarNetwork& net);

// i_r <= j_r for every position of the sorted subsets.
bool is_standard(const std::vector<int>& I, const std::vector<int>& J);

// Stack pairing of a standard pair: T = I&J; walking the symmetric
// difference left to right, elements of I\J open an arc and elements of J\I
// close the most recent open one.  Throws InvalidArgument on non-standard
// input.
Pairing theta(const std::vector<int>& I, const std::vector<int>& J);

// (T + arc left ends, T + arc right ends); always a standard pair.
std::pair<std::vector<int>, std::vector<int>> theta_inverse(const Pairing& p);

// Heights of the +1/-1 walk over the sorted support: up at arc left ends
// (resp. at I\J), down at right ends (resp. J\I).
std::vector<int> dyck_heights(const Pairing& p);
std::vector<int> dyck_heights_of_pair(const std::vector<int>& I,
                                      const std::vector<int>& J);

// For every standard pair: theta lands in the pairing set and is compatible;
// every other compatible pairing sits strictly higher in the Dyck order; the
// compatibility matrix under the documented total order (height sum
// descending, canonical string ascending) is lower-triangular with unit
// diagonal; theta is a bijection onto the pairing set.
CheckReport verify_unitriangular(int k, int n);

// Random positive rational weights (seeded): for every subset pair,
// Delta_I Delta_J <= Delta_min Delta_max <= Delta_sort1 Delta_sort2.
CheckReport verify_inequalities(const PlanarNetwork& net, int trials,
                                unsigned long long seed);

// Pairings with nonzero immanant.
std::vector<Pairing> pairing_ensemble(const PlanarNetwork& net);

}  // namespace dimerweb
