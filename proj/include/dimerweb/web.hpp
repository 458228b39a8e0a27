// Directed planar webs in a disk, up to isotopy.
//
// A web has n boundary positions on a circle (clockwise, like networks) and
// trivalent colored interior vertices.  Every edge is directed: edges incident
// to an interior vertex point away from it when it is black and towards it
// when it is white, so interior-interior edges always run black -> white.
// Boundary-to-boundary arcs may run either way.  A boundary position is
// either the endpoint of one edge (arrow out = source, arrow in = sink),
// tagged (a decoration with no incident edge), or unused.  Vertexless loops
// are tracked as a count: a loop contributes a scalar factor wherever it
// floats, every computation here (degree, reduction, labeling counts) is
// independent of its position, and reduced webs never contain loops.
//
// The embedding is combinatorial: a clockwise rotation (cyclic edge order) at
// every interior vertex, with the boundary circle closing the disk.  Faces
// are dart orbits; a bigon face (2 edges) or an all-interior square face
// (4 edges) is a reducible feature, as is any loop or any closed (boundary-
// free) component, which always contains such a face.  reduce() rewrites a
// web into an integer combination of non-elliptic webs (no reducible
// features); the rewriting is confluent, which the tests audit by fuzzing the
// feature order.
//
// Canonical text form, emitted by canonical() and accepted by parse_web():
//
//   web n=<int> [; loops=<int>] [; tags{<i>,<j>,...}] [; <stmt>]*
//   stmt := arc <i>><j>                      boundary arc, direction i -> j
//         | vertex <name> <black|white>      interior vertex
//         | edge <name> <ep>><ep>            directed edge, <ep> = boundary
//                                            index or vertex name
//         | rot <name>(<e>,<e>,<e>)          clockwise edge order at a vertex
//         | tri <b|w>@<name>(<i>,<j>,<k>)    tripod sugar: one interior
//                                            vertex with three boundary legs
//                                            in clockwise order (b: arrows
//                                            out to the legs, w: arrows in)
//
// Statements are separated by ';' or newlines.  canonical() names vertices
// and edges by a deterministic boundary-anchored traversal (clockwise from
// boundary position 1), so two webs are isotopic in the disk if and only if
// their canonical strings are equal.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dimerweb/dimer.hpp"

namespace dimerweb {

enum class BoundaryMark { Unused, Tagged, In, Out };

std::string mark_name(BoundaryMark m);

// One end of a web edge: a boundary position (1..n) or an interior vertex.
struct WebEnd {
  bool boundary = false;
  int index = 0;       // boundary position, meaningful when boundary
  std::string vertex;  // interior vertex id, meaningful when !boundary

  static WebEnd at_boundary(int index);
  static WebEnd at_vertex(const std::string& id);
  bool operator==(const WebEnd& o) const {
    return boundary == o.boundary && index == o.index && vertex == o.vertex;
  }
  bool operator!=(const WebEnd& o) const { return !(*this == o); }
  std::string str() const;  // "3" or the vertex name
};

struct WebEdgeRec {
  std::string id;
  WebEnd tail, head;  // direction tail -> head
};

struct WebVertexRec {
  std::string id;
  Color color = Color::Black;
  std::vector<std::string> rot;  // the 3 incident edge ids, clockwise
};

class Web {
 public:
  Web() = default;
  explicit Web(int n) : n_(n) {}

  int n() const { return n_; }
  int loops() const { return loops_; }
  void set_loops(int count);
  void add_loops(int count) { set_loops(loops_ + count); }

  // Construction.  Passing "" as an id picks a fresh one.
  void set_tag(int index);
  void clear_tag(int index);
  std::string add_vertex(const std::string& id, Color color);
  std::string add_edge(const std::string& id, const WebEnd& tail,
                       const WebEnd& head);
  void remove_edge(const std::string& id);
  void remove_vertex(const std::string& id);
  void set_rotation(const std::string& vertex, std::vector<std::string> rot);
  // In the rotation of `vertex`, swaps the slot holding old_edge.
  void replace_in_rotation(const std::string& vertex,
                           const std::string& old_edge,
                           const std::string& new_edge);
  // Sugar: a boundary arc from -> to; returns the edge id.
  std::string add_arc(int from, int to);
  // Sugar: tripod vertex with boundary legs in clockwise order; black tripods
  // point at their legs, white tripods are pointed at.  Returns the vertex id.
  std::string add_tripod(Color color, const std::string& id,
                         const std::vector<int>& legs);

  // Access.
  const std::set<int>& tags() const { return tags_; }
  std::vector<std::string> vertex_ids() const;  // sorted
  std::vector<std::string> edge_ids() const;    // sorted
  bool has_vertex(const std::string& id) const;
  bool has_edge(const std::string& id) const;
  const WebVertexRec& vertex(const std::string& id) const;
  const WebEdgeRec& edge(const std::string& id) const;
  // Edge id at a boundary position, or "" when none.
  std::string boundary_edge(int index) const;
  // Derived state: Tagged / In (arrow in) / Out (arrow out) / Unused.
  BoundaryMark mark(int index) const;
  // Ids of the edges incident to an interior vertex (rotation order if set,
  // sorted otherwise).
  std::vector<std::string> incident(const std::string& vertex) const;

  // Structural checks: trivalence, direction/color consistency, boundary
  // degrees, tag clashes, rotation arrays, and per-component planarity of the
  // rotation system (Euler count 2 on the sphere).  Throws ValidationError.
  void validate() const;

 private:
  int n_ = 0;
  int loops_ = 0;
  std::set<int> tags_;
  std::map<std::string, WebVertexRec> verts_;
  std::map<std::string, WebEdgeRec> edges_;
};

// 3 per tag, 3 per boundary arc, 1 per boundary vertex attached to a white
// interior vertex, 2 per boundary vertex attached to a black one.  Always
// divisible by 3 (checked; ValidationError otherwise).
int degree(const Web& w);

// True when the web has no reducible feature: no loops, no closed components,
// no bigon face, no all-interior square face.
bool is_nonelliptic(const Web& w);

// Canonical code; equal iff the webs are isotopic in the disk rel boundary.
// Anchored components are traversed clockwise from boundary position 1;
// closed components are canonicalized over all anchor darts and sorted.
std::string canonical(const Web& w);

bool web_eq(const Web& a, const Web& b);

// Parses the grammar documented at the top of this header.
Web parse_web(const std::string& text);

struct WebTerm {
  Web web;
  long long coeff = 0;
};

// Integer combination of non-elliptic webs, keyed by canonical code.
class WebCombination {
 public:
  // Canonicalizes, merges, drops zero coefficients.
  void add(const Web& w, long long coeff);
  void add_scaled(const WebCombination& other, long long factor);
  const std::map<std::string, WebTerm>& terms() const { return terms_; }
  long long coeff_of(const Web& w) const;
  long long coeff_of_key(const std::string& canonical_code) const;
  bool empty() const { return terms_.empty(); }
  bool operator==(const WebCombination& o) const;
  bool operator!=(const WebCombination& o) const { return !(*this == o); }
  std::string str() const;  // "c1 * <code> ; c2 * <code> ..." diagnostics

 private:
  std::map<std::string, WebTerm> terms_;
};

// Rewrites w into a combination of non-elliptic webs: a loop becomes the
// scalar 3, a bigon face collapses to the spliced-through edge with factor 2,
// a square face becomes the sum of its two smoothings (each white corner
// joined to an adjacent black corner).  Deterministic feature order (loops
// first, then the lexicographically smallest face); every output term passes
// is_nonelliptic and preserves degree.
WebCombination reduce(const Web& w);

// Same rewriting with a seeded random feature choice at every step; used to
// audit confluence.
WebCombination reduce_shuffled(const Web& w, std::uint64_t seed);

// An edge labeling with labels {1,2,3}, distinct at every interior vertex;
// each loop carries a single label of its own.
struct WebLabeling {
  std::map<std::string, int> edge_label;
  std::vector<int> loop_label;
};

// All labelings (every web has at least one).
std::vector<WebLabeling> enumerate_labelings(const Web& w);
WebLabeling find_labeling(const Web& w);

// Number of labelings consistent with the triple (I,J,K) of k-subsets at the
// boundary: a source labeled l lies in exactly the l-th of (I,J,K); a sink
// labeled l lies in exactly the other two; a tagged position lies in all
// three; an unused position lies in none.  Loops contribute a factor 3 each.
long long count_consistent(const std::vector<int>& I, const std::vector<int>& J,
                           const std::vector<int>& K, const Web& w);

// Checks count_consistent(I,J,K,w) == sum over reduce(w) of
// coeff * count_consistent(I,J,K,term).
CheckReport verify_reduction_labeling(const Web& w, const std::vector<int>& I,
                                      const std::vector<int>& J,
                                      const std::vector<int>& K);

}  // namespace dimerweb
