// Planar bipartite networks in a disk.
//
// A network has n boundary vertices on a circle, named b1..bn clockwise, each
// attached by exactly one edge to an interior vertex.  Interior vertices are
// colored black or white; every interior-interior edge joins opposite colors,
// and a boundary vertex takes the color opposite to its unique neighbor.
// Edges carry polynomial weights.  The embedding is described combinatorially
// by a clockwise rotation (cyclic edge order) at every vertex; faces are the
// orbits of the usual next-dart rule, and validation checks that each
// connected component is planar (Euler count), that boundary vertices appear
// in ascending cyclic order on the outer face, and that components do not
// interleave around the circle.
//
// Text format (one network per file, '#' comments, 'end' terminator):
//
//   network <name>
//   n <count>
//   interior <id> <black|white>
//   edge <id> <endpoint> <endpoint> [<weight>]
//   rot <vertex-id> <edge-id> ...
//   end
//
// Boundary vertices are written b1..bn and never declared.  A weight is any
// polynomial expression without whitespace ("a", "3/2", "1", "p+q"); an
// omitted weight means a fresh variable named after the edge id.  Rotations
// may be omitted for vertices of degree <= 2 (for degree 2 both cyclic orders
// are equivalent).
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dimerweb/polynomial.hpp"

namespace dimerweb {

enum class Color { Black, White };

Color opposite(Color c);
std::string color_name(Color c);

struct EdgeRec {
  std::string id;
  std::string a, b;  // endpoint vertex ids (no orientation implied)
  Polynomial weight;
};

struct VertexRec {
  std::string id;
  Color color = Color::Black;
  bool boundary = false;
  int index = 0;                 // boundary position 1..n, or 0 for interior
  std::vector<std::string> rot;  // incident edges, clockwise
};

struct NetworkStats {
  int interior_black = 0;
  int interior_white = 0;
  int boundary_black = 0;
  int boundary_white = 0;
  int d = 0;       // interior white minus interior black
  int dprime = 0;  // white boundary vertices
  int k = 0;       // d + dprime; common size of all boundary subsets
};

struct Dart {
  std::string edge, from, to;
  bool operator==(const Dart& o) const {
    return edge == o.edge && from == o.from && to == o.to;
  }
};

struct Face {
  std::vector<Dart> darts;
  bool outer = false;
};

class PlanarNetwork;

// Mutable construction surface used by the parser and by graph moves; build()
// runs the full validation and produces an immutable network.
class NetworkBuilder {
 public:
  NetworkBuilder(std::string name, int n);
  static NetworkBuilder from(const PlanarNetwork& net);

  void set_name(const std::string& name) { name_ = name; }
  void set_n(int n) { n_ = n; }
  int n() const { return n_; }

  void add_interior(const std::string& id, Color color);
  void remove_interior(const std::string& id);
  bool has_vertex(const std::string& id) const;
  Color interior_color(const std::string& id) const;

  void add_edge(const std::string& id, const std::string& a,
                const std::string& b, Polynomial weight);
  void remove_edge(const std::string& id);
  bool has_edge(const std::string& id) const;
  EdgeRec& edge(const std::string& id);
  // Fresh id of the form <stem>, <stem>2, <stem>3, ... unused so far.
  std::string fresh_edge_id(const std::string& stem) const;
  std::string fresh_vertex_id(const std::string& stem) const;

  void set_rotation(const std::string& vertex, std::vector<std::string> edges);
  void clear_rotation(const std::string& vertex);
  // In v's rotation, swaps the slot holding old_edge for new_edge.
  void replace_in_rotation(const std::string& vertex,
                           const std::string& old_edge,
                           const std::string& new_edge);
  // Relabels every boundary vertex b<i> to b<map[i]>; map must be a
  // permutation of 1..n.
  void relabel_boundary(const std::map<int, int>& map);

  PlanarNetwork build() const;

 private:
  friend class PlanarNetwork;
  std::string name_;
  int n_ = 0;
  std::map<std::string, std::pair<std::string, Color>> interior_;  // id -> (id, color)
  std::vector<std::string> edge_order_;
  std::map<std::string, EdgeRec> edges_;
  std::map<std::string, std::vector<std::string>> rot_;
};

class PlanarNetwork {
 public:
  static PlanarNetwork parse(const std::string& text);
  static PlanarNetwork from_file(const std::string& path);

  const std::string& name() const { return name_; }
  int n() const { return n_; }

  // Sorted interior vertex ids.
  std::vector<std::string> interior_ids() const;
  // Sorted edge ids.
  std::vector<std::string> edge_ids() const;
  bool has_vertex(const std::string& id) const;
  const VertexRec& vertex(const std::string& id) const;
  const EdgeRec& edge(const std::string& id) const;
  static std::string boundary_id(int index);
  const VertexRec& boundary(int index) const;
  Color boundary_color(int index) const;
  int degree(const std::string& vertex) const;
  std::string other_end(const std::string& edge, const std::string& vertex) const;

  NetworkStats stats() const;

  // All faces; exactly one has outer=true and it is listed first.  Floating
  // (boundary-free) components contribute their remaining faces after the
  // largest one is merged into the outer region.
  std::vector<Face> faces() const;

  // Same network with boundary labels shifted so that old position i+1
  // becomes new position i (old 1 wraps to n).
  PlanarNetwork cyclic_rotate() const;

  // Substitutes rational values for weight variables (partial is fine).
  PlanarNetwork with_weights(const std::map<std::string, Rat>& values) const;

  std::string serialize() const;

 private:
  friend class NetworkBuilder;
  PlanarNetwork() = default;

  Dart next_dart(const Dart& d) const;
  void validate() const;

  std::string name_;
  int n_ = 0;
  std::map<std::string, VertexRec> verts_;  // interior and boundary
  std::map<std::string, EdgeRec> edges_;
};

}  // namespace dimerweb
