#pragma once

// Web immanants of a planar bipartite network: the expansion of triple
// products of boundary measurements over non-elliptic webs.
//
// A weblike subgraph assigns a multiplicity in {1,2,3} to a subset of the
// network's edges so that every interior vertex carries total multiplicity 3.
// Such a subgraph decomposes into doubled "dipole" edges (multiplicity 3),
// trivalent vertices (three multiplicity-1 edges), chains and closed cycles
// alternating between multiplicities 1 and 2.  Shrinking chains to single
// edges and recording cycles as loops turns it into a planar web whose
// boundary is the network's boundary; summing the subgraph weights against
// the web reduction rules yields one polynomial per non-elliptic web: the
// web immanants.  They refine every triple product Delta_I Delta_J Delta_K
// through the consistent-labeling counts of the webs.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dimerweb/dimer.hpp"
#include "dimerweb/network.hpp"
#include "dimerweb/polynomial.hpp"
#include "dimerweb/web.hpp"

namespace dimerweb {

// Edge multiplicities plus the closed cycles of the subgraph.  Cycle edges
// are kept out of `mult`: a cycle contributes both of its alternating
// 1-2 multiplicity patterns at once, so its weight is a two-term sum rather
// than a monomial.  Each cycle is stored in cyclic adjacency order, rotated
// and oriented canonically so equal subgraphs compare equal.
struct WeblikeSubgraph {
  std::map<std::string, int> mult;               // edge id -> 1..3
  std::vector<std::vector<std::string>> cycles;  // canonical cyclic edge lists

  bool uses(const std::string& edge) const;

  // Canonical text form, usable as a map key.
  std::string key() const;

  // Product of w(e)^mult over plain edges times, per cycle, the sum of the
  // two alternating multiplicity patterns.
  Polynomial weight(const PlanarNetwork& net) const;
};

// Every weblike subgraph of the network together with its weight, sorted by
// key.  Interior vertices must all have total multiplicity exactly 3;
// multiplicity patterns that cannot arise from three superposed dimer
// configurations (no consistent flow direction) are excluded.
std::vector<std::pair<WeblikeSubgraph, Polynomial>> enumerate_weblike(
    const PlanarNetwork& net);

// The planar web obtained by contracting the subgraph: multiplicity-3 edges
// disappear, chains through bivalent vertices become single web edges
// directed from their outgoing end to their incoming end, trivalent vertices
// keep their color and clockwise order, cycles become loops, and boundary
// positions are tagged when their multiplicity is maximal for the vertex
// color (3 at black, 0 at white).
Web web_of(const PlanarNetwork& net, const WeblikeSubgraph& g);

// All web immanants of the network: reduce the web of every weblike
// subgraph and collect coefficients.  `webs` maps the canonical string of a
// non-elliptic web to the web; `fd` maps it to its (nonzero) immanant.
struct WebTable {
  std::map<std::string, Web> webs;
  std::map<std::string, Polynomial> fd;
};

WebTable web_table(const PlanarNetwork& net);

// The immanant of one non-elliptic web (zero if absent from the table).
Polynomial web_immanant(const PlanarNetwork& net, const Web& d);

// The webs with nonzero immanant, sorted by canonical string.
std::vector<Web> web_ensemble(const PlanarNetwork& net);

// Three superposed dimer configurations: their union as a weblike subgraph,
// its web, and the labeling that remembers which configuration contributed
// which web edge (chains are labeled by the configuration owning their
// multiplicity-1 edges, single-edge chains of multiplicity 2 by the absent
// configuration, loops by the configuration owning the stored alternation).
struct TripleOverlay {
  WeblikeSubgraph graph;
  Web web;
  WebLabeling labeling;
};

TripleOverlay triple_overlay(const PlanarNetwork& net, const Matching& p1,
                             const Matching& p2, const Matching& p3);

// Checks, for one triple of k-subsets, that
//   Delta_I Delta_J Delta_K
//     == sum over webs of count_consistent(I,J,K,web) * immanant
//     == sum of weight products over matching triples with boundary
//        subsets (I,J,K).
// Pass a precomputed table to amortize the expansion over many triples.
CheckReport verify_triple_identity(const PlanarNetwork& net,
                                   const std::vector<int>& I,
                                   const std::vector<int>& J,
                                   const std::vector<int>& K,
                                   const WebTable* table = nullptr);

}  // namespace dimerweb
