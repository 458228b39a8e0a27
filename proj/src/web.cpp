#include "dimerweb/web.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "dimerweb/errors.hpp"

namespace dimerweb {

namespace {

std::string quote(const std::string& s) { return "'" + s + "'"; }

long long ipow3(int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

}  // namespace

std::string mark_name(BoundaryMark m) {
  switch (m) {
    case BoundaryMark::Unused:
      return "unused";
    case BoundaryMark::Tagged:
      return "tagged";
    case BoundaryMark::In:
      return "in";
    case BoundaryMark::Out:
      return "out";
  }
  return "?";
}

WebEnd WebEnd::at_boundary(int index) {
  WebEnd e;
  e.boundary = true;
  e.index = index;
  return e;
}

WebEnd WebEnd::at_vertex(const std::string& id) {
  WebEnd e;
  e.boundary = false;
  e.vertex = id;
  return e;
}

std::string WebEnd::str() const {
  return boundary ? std::to_string(index) : vertex;
}

void Web::set_loops(int count) {
  if (count < 0) throw InvalidArgument("loop count cannot be negative");
  loops_ = count;
}

void Web::set_tag(int index) {
  if (index < 1 || index > n_)
    throw InvalidArgument("tag position " + std::to_string(index) +
                          " outside 1.." + std::to_string(n_));
  tags_.insert(index);
}

void Web::clear_tag(int index) { tags_.erase(index); }

std::string Web::add_vertex(const std::string& id, Color color) {
  std::string name = id;
  if (name.empty()) {
    for (int k = 1;; ++k) {
      name = "x" + std::to_string(k);
      if (!verts_.count(name)) break;
    }
  }
  if (verts_.count(name))
    throw InvalidArgument("duplicate web vertex " + quote(name));
  WebVertexRec rec;
  rec.id = name;
  rec.color = color;
  verts_[name] = rec;
  return name;
}

std::string Web::add_edge(const std::string& id, const WebEnd& tail,
                          const WebEnd& head) {
  std::string name = id;
  if (name.empty()) {
    for (int k = 1;; ++k) {
      name = "y" + std::to_string(k);
      if (!edges_.count(name)) break;
    }
  }
  if (edges_.count(name))
    throw InvalidArgument("duplicate web edge " + quote(name));
  for (const WebEnd* end : {&tail, &head}) {
    if (end->boundary) {
      if (end->index < 1 || end->index > n_)
        throw InvalidArgument("edge endpoint " + std::to_string(end->index) +
                              " outside 1.." + std::to_string(n_));
    } else if (!verts_.count(end->vertex)) {
      throw InvalidArgument("edge endpoint " + quote(end->vertex) +
                            " is not a declared vertex");
    }
  }
  WebEdgeRec rec;
  rec.id = name;
  rec.tail = tail;
  rec.head = head;
  edges_[name] = rec;
  return name;
}

void Web::remove_edge(const std::string& id) {
  if (!edges_.erase(id))
    throw InvalidArgument("no web edge " + quote(id) + " to remove");
}

void Web::remove_vertex(const std::string& id) {
  if (!verts_.erase(id))
    throw InvalidArgument("no web vertex " + quote(id) + " to remove");
}

void Web::set_rotation(const std::string& vertex, std::vector<std::string> rot) {
  if (!verts_.count(vertex))
    throw InvalidArgument("rotation for unknown vertex " + quote(vertex));
  verts_[vertex].rot = std::move(rot);
}

void Web::replace_in_rotation(const std::string& vertex,
                              const std::string& old_edge,
                              const std::string& new_edge) {
  auto it = verts_.find(vertex);
  if (it == verts_.end())
    throw InvalidArgument("rotation for unknown vertex " + quote(vertex));
  for (auto& slot : it->second.rot) {
    if (slot == old_edge) {
      slot = new_edge;
      return;
    }
  }
  throw InvalidArgument("edge " + quote(old_edge) + " not in rotation of " +
                        quote(vertex));
}

std::string Web::add_arc(int from, int to) {
  return add_edge("", WebEnd::at_boundary(from), WebEnd::at_boundary(to));
}

std::string Web::add_tripod(Color color, const std::string& id,
                            const std::vector<int>& legs) {
  if (legs.size() != 3) throw InvalidArgument("a tripod needs three legs");
  std::string v = add_vertex(id, color);
  std::vector<std::string> rot;
  for (int leg : legs) {
    WebEnd b = WebEnd::at_boundary(leg);
    WebEnd c = WebEnd::at_vertex(v);
    rot.push_back(color == Color::Black ? add_edge("", c, b)
                                        : add_edge("", b, c));
  }
  set_rotation(v, rot);
  return v;
}

std::vector<std::string> Web::vertex_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, rec] : verts_) ids.push_back(id);
  return ids;
}

std::vector<std::string> Web::edge_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, rec] : edges_) ids.push_back(id);
  return ids;
}

bool Web::has_vertex(const std::string& id) const { return verts_.count(id); }

bool Web::has_edge(const std::string& id) const { return edges_.count(id); }

const WebVertexRec& Web::vertex(const std::string& id) const {
  auto it = verts_.find(id);
  if (it == verts_.end())
    throw InvalidArgument("unknown web vertex " + quote(id));
  return it->second;
}

const WebEdgeRec& Web::edge(const std::string& id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw InvalidArgument("unknown web edge " + quote(id));
  return it->second;
}

std::string Web::boundary_edge(int index) const {
  for (const auto& [id, rec] : edges_) {
    if ((rec.tail.boundary && rec.tail.index == index) ||
        (rec.head.boundary && rec.head.index == index))
      return id;
  }
  return "";
}

BoundaryMark Web::mark(int index) const {
  if (tags_.count(index)) return BoundaryMark::Tagged;
  for (const auto& [id, rec] : edges_) {
    if (rec.tail.boundary && rec.tail.index == index) return BoundaryMark::Out;
    if (rec.head.boundary && rec.head.index == index) return BoundaryMark::In;
  }
  return BoundaryMark::Unused;
}

std::vector<std::string> Web::incident(const std::string& v) const {
  const WebVertexRec& rec = vertex(v);
  if (!rec.rot.empty()) return rec.rot;
  std::vector<std::string> ids;
  WebEnd self = WebEnd::at_vertex(v);
  for (const auto& [id, e] : edges_) {
    if (e.tail == self) ids.push_back(id);
    if (e.head == self) ids.push_back(id);
  }
  return ids;
}

// ---------------------------------------------------------------------------
// Combinatorial map of a web: the disk boundary circle plus the web edges.
// Nodes are "#<i>" for boundary positions and interior ids; circle segments
// are "~<i>" joining #i and #(i%n+1).  All rotations are clockwise; the face
// to the right of a dart is traced by turning to the clockwise successor of
// the arrival edge at every step.

namespace {

struct MapGraph {
  std::map<std::string, std::vector<std::string>> rot;  // node -> edges, CW
  std::map<std::string, std::pair<std::string, std::string>> ends;
  std::set<std::string> web_edges;  // edge ids that are real web edges
};

struct MapDart {
  std::string edge;
  bool fwd = true;  // true: first end -> second end
  bool operator<(const MapDart& o) const {
    return edge != o.edge ? edge < o.edge : fwd < o.fwd;
  }
  bool operator==(const MapDart& o) const {
    return edge == o.edge && fwd == o.fwd;
  }
};

std::string bnode(int i) { return "#" + std::to_string(i); }

MapGraph build_map(const Web& w) {
  MapGraph g;
  for (const std::string& v : w.vertex_ids()) {
    g.rot[v] = w.vertex(v).rot;
  }
  auto node_of = [&](const WebEnd& e) {
    return e.boundary ? bnode(e.index) : e.vertex;
  };
  for (const std::string& id : w.edge_ids()) {
    const WebEdgeRec& rec = w.edge(id);
    g.ends[id] = {node_of(rec.tail), node_of(rec.head)};
    g.web_edges.insert(id);
  }
  if (w.n() >= 2) {
    for (int i = 1; i <= w.n(); ++i) {
      int j = i % w.n() + 1;
      std::string seg = "~" + std::to_string(i);
      g.ends[seg] = {bnode(i), bnode(j)};
    }
    for (int i = 1; i <= w.n(); ++i) {
      int prev = (i + w.n() - 2) % w.n() + 1;
      std::vector<std::string> r;
      std::string e = w.boundary_edge(i);
      if (!e.empty()) r.push_back(e);
      r.push_back("~" + std::to_string(prev));
      r.push_back("~" + std::to_string(i));
      g.rot[bnode(i)] = r;
    }
  } else if (w.n() == 1) {
    std::vector<std::string> r;
    std::string e = w.boundary_edge(1);
    if (!e.empty()) r.push_back(e);
    g.rot[bnode(1)] = r;
  }
  return g;
}

std::string dart_target(const MapGraph& g, const MapDart& d) {
  const auto& e = g.ends.at(d.edge);
  return d.fwd ? e.second : e.first;
}

MapDart next_dart(const MapGraph& g, const MapDart& d) {
  std::string node = dart_target(g, d);
  const auto& r = g.rot.at(node);
  std::size_t idx = 0;
  while (idx < r.size() && r[idx] != d.edge) ++idx;
  if (idx == r.size())
    throw ValidationError("edge " + quote(d.edge) + " missing from rotation of " +
                          quote(node));
  const std::string& e2 = r[(idx + 1) % r.size()];
  MapDart out;
  out.edge = e2;
  out.fwd = g.ends.at(e2).first == node;
  return out;
}

std::vector<std::vector<MapDart>> map_faces(const MapGraph& g) {
  std::set<MapDart> seen;
  std::vector<std::vector<MapDart>> faces;
  for (const auto& [id, e] : g.ends) {
    for (bool fwd : {true, false}) {
      MapDart start{id, fwd};
      if (seen.count(start)) continue;
      std::vector<MapDart> orbit;
      MapDart d = start;
      do {
        orbit.push_back(d);
        seen.insert(d);
        d = next_dart(g, d);
      } while (!(d == start));
      faces.push_back(orbit);
    }
  }
  return faces;
}

// Connected pieces of the map (circle segments included); each piece is a set
// of nodes.  The piece containing the boundary circle is the anchored one.
std::vector<std::set<std::string>> map_pieces(const MapGraph& g) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [id, e] : g.ends) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (const auto& [node, r] : g.rot) adj[node];  // isolated boundary nodes
  std::set<std::string> left;
  for (const auto& [node, nb] : adj) left.insert(node);
  std::vector<std::set<std::string>> pieces;
  while (!left.empty()) {
    std::vector<std::string> queue{*left.begin()};
    std::set<std::string> piece;
    while (!queue.empty()) {
      std::string v = queue.back();
      queue.pop_back();
      if (!left.erase(v)) continue;
      piece.insert(v);
      for (const std::string& u : adj[v]) queue.push_back(u);
    }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

bool is_boundary_node(const std::string& node) {
  return !node.empty() && node[0] == '#';
}

// A reducible feature: a loop, a bigon face, or an interior square face.
struct Feature {
  int kind = 0;  // 0 loop, 1 bigon, 2 square
  std::vector<std::string> face_edges;  // in face-cycle order
  std::vector<std::string> corners;     // in face-cycle order
  std::string key() const {
    std::vector<std::string> sorted = face_edges;
    std::sort(sorted.begin(), sorted.end());
    std::string k = std::to_string(kind);
    for (const std::string& e : sorted) k += "|" + e;
    return k;
  }
};

std::vector<Feature> find_features(const Web& w) {
  std::vector<Feature> out;
  if (w.loops() > 0) {
    Feature f;
    f.kind = 0;
    out.push_back(f);
  }
  MapGraph g = build_map(w);
  for (const auto& orbit : map_faces(g)) {
    if (orbit.size() != 2 && orbit.size() != 4) continue;
    bool all_web = true;
    for (const MapDart& d : orbit)
      if (!g.web_edges.count(d.edge)) all_web = false;
    if (!all_web) continue;
    Feature f;
    std::set<std::string> edge_set, corner_set;
    for (const MapDart& d : orbit) {
      f.face_edges.push_back(d.edge);
      edge_set.insert(d.edge);
      std::string c = dart_target(g, d);
      f.corners.push_back(c);
      corner_set.insert(c);
    }
    if (edge_set.size() != orbit.size()) continue;  // degenerate turnaround
    if (corner_set.size() != orbit.size()) continue;
    bool interior = true;
    for (const std::string& c : f.corners)
      if (is_boundary_node(c)) interior = false;
    if (!interior) continue;  // cannot happen with the circle present
    f.kind = orbit.size() == 2 ? 1 : 2;
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(),
            [](const Feature& a, const Feature& b) { return a.key() < b.key(); });
  return out;
}

// Removes the corners and face edges of a feature and splices the corner legs
// according to `pairing` (corner index -> corner index); chains that close up
// become loops.  Corner colors alternate around the face, every pairing joins
// a white corner to a black one, and the spliced edge keeps the through
// direction: out of the white-corner side, into the black-corner side.
Web splice(const Web& w, const Feature& f,
           const std::vector<std::pair<int, int>>& pairing) {
  Web child = w;
  std::set<std::string> face_edges(f.face_edges.begin(), f.face_edges.end());
  std::map<std::string, std::string> leg;  // corner -> leg edge id
  std::map<std::string, std::string> partner;
  for (const auto& [i, j] : pairing) {
    partner[f.corners[i]] = f.corners[j];
    partner[f.corners[j]] = f.corners[i];
  }
  for (const std::string& c : f.corners) {
    std::string found;
    for (const std::string& e : child.incident(c)) {
      if (!face_edges.count(e)) {
        if (!found.empty())
          throw ValidationError("corner " + quote(c) + " has two legs");
        found = e;
      }
    }
    if (found.empty())
      throw ValidationError("corner " + quote(c) + " has no leg");
    leg[c] = found;
  }
  std::set<std::string> in_face(f.corners.begin(), f.corners.end());
  auto far_of = [&](const std::string& edge_id,
                    const std::string& corner) -> WebEnd {
    const WebEdgeRec& rec = child.edge(edge_id);
    WebEnd self = WebEnd::at_vertex(corner);
    return rec.tail == self ? rec.head : rec.tail;
  };
  auto is_corner = [&](const WebEnd& e) {
    return !e.boundary && in_face.count(e.vertex) > 0;
  };

  struct Strand {
    WebEnd from_end;  // outer end attached at a white corner (arrow leaves it)
    WebEnd to_end;    // outer end attached at a black corner (arrow enters it)
    std::string from_leg, to_leg;  // original leg edges at the two outer ends
  };
  std::vector<Strand> strands;
  int new_loops = 0;
  std::set<std::string> used_corners, dead_edges(face_edges.begin(),
                                                 face_edges.end());

  auto walk = [&](const std::string& start_corner, bool closed) {
    // Follows start_corner -> partner -> (shared leg -> next corner ->
    // partner ...) until the chain leaves the removed region or closes up.
    std::string cur = start_corner;
    while (true) {
      used_corners.insert(cur);
      std::string p = partner.at(cur);
      used_corners.insert(p);
      const std::string& e2 = leg.at(p);
      dead_edges.insert(e2);
      WebEnd far = far_of(e2, p);
      if (!is_corner(far)) {
        if (closed)
          throw ValidationError("closed splice chain reached an outer end");
        Strand s;
        Color col = child.vertex(start_corner).color;
        WebEnd a = far_of(leg.at(start_corner), start_corner);
        // The start side attaches at start_corner, the finish side at p.
        if (col == Color::White) {
          s.from_end = a;
          s.from_leg = leg.at(start_corner);
          s.to_end = far;
          s.to_leg = e2;
        } else {
          s.from_end = far;
          s.from_leg = e2;
          s.to_end = a;
          s.to_leg = leg.at(start_corner);
        }
        strands.push_back(s);
        return;
      }
      if (far.vertex == start_corner) {
        if (!closed)
          throw ValidationError("open splice chain closed on its start");
        ++new_loops;
        return;
      }
      cur = far.vertex;
    }
  };

  for (const std::string& c : f.corners) {
    if (used_corners.count(c)) continue;
    if (is_corner(far_of(leg.at(c), c))) continue;  // not a chain start
    dead_edges.insert(leg.at(c));
    walk(c, false);
  }
  for (const std::string& c : f.corners) {
    if (used_corners.count(c)) continue;
    dead_edges.insert(leg.at(c));
    walk(c, true);
  }

  for (const std::string& e : dead_edges) child.remove_edge(e);
  for (const std::string& c : f.corners) child.remove_vertex(c);
  for (const Strand& s : strands) {
    std::string id = child.add_edge("", s.from_end, s.to_end);
    if (!s.from_end.boundary)
      child.replace_in_rotation(s.from_end.vertex, s.from_leg, id);
    if (!s.to_end.boundary)
      child.replace_in_rotation(s.to_end.vertex, s.to_leg, id);
  }
  child.add_loops(new_loops);
  return child;
}

std::vector<std::pair<Web, long long>> apply_feature(const Web& w,
                                                     const Feature& f) {
  std::vector<std::pair<Web, long long>> out;
  if (f.kind == 0) {
    Web child = w;
    child.set_loops(child.loops() - 1);
    out.emplace_back(std::move(child), 3);
  } else if (f.kind == 1) {
    out.emplace_back(splice(w, f, {{0, 1}}), 2);
  } else {
    out.emplace_back(splice(w, f, {{1, 0}, {3, 2}}), 1);
    out.emplace_back(splice(w, f, {{1, 2}, {3, 0}}), 1);
  }
  return out;
}

bool has_closed_piece(const Web& w) {
  if (w.vertex_ids().empty()) return false;
  // Interior vertices reachable from the boundary along web edges.
  std::set<std::string> reached;
  std::vector<std::string> queue;
  for (int i = 1; i <= w.n(); ++i) {
    std::string e = w.boundary_edge(i);
    if (e.empty()) continue;
    for (const WebEnd* end : {&w.edge(e).tail, &w.edge(e).head})
      if (!end->boundary && reached.insert(end->vertex).second)
        queue.push_back(end->vertex);
  }
  while (!queue.empty()) {
    std::string v = queue.back();
    queue.pop_back();
    for (const std::string& e : w.incident(v)) {
      for (const WebEnd* end : {&w.edge(e).tail, &w.edge(e).head})
        if (!end->boundary && reached.insert(end->vertex).second)
          queue.push_back(end->vertex);
    }
  }
  return reached.size() != w.vertex_ids().size();
}

}  // namespace

void Web::validate() const {
  if (n_ < 0) throw ValidationError("negative boundary size");
  if (loops_ < 0) throw ValidationError("negative loop count");
  for (int t : tags_) {
    if (t < 1 || t > n_)
      throw ValidationError("tag position " + std::to_string(t) +
                            " outside 1.." + std::to_string(n_));
  }
  // Boundary degrees and tag clashes.
  std::map<int, int> bdeg;
  for (const auto& [id, e] : edges_) {
    for (const WebEnd* end : {&e.tail, &e.head}) {
      if (end->boundary) {
        if (end->index < 1 || end->index > n_)
          throw ValidationError("edge " + quote(id) + " endpoint " +
                                std::to_string(end->index) + " outside 1.." +
                                std::to_string(n_));
        ++bdeg[end->index];
      } else if (!verts_.count(end->vertex)) {
        throw ValidationError("edge " + quote(id) + " endpoint " +
                              quote(end->vertex) + " undeclared");
      }
    }
    // Direction consistency with interior colors.
    if (!e.tail.boundary && verts_.at(e.tail.vertex).color != Color::Black)
      throw ValidationError("edge " + quote(id) +
                            " leaves a white interior vertex");
    if (!e.head.boundary && verts_.at(e.head.vertex).color != Color::White)
      throw ValidationError("edge " + quote(id) +
                            " enters a black interior vertex");
  }
  for (const auto& [i, d] : bdeg) {
    if (d > 1)
      throw ValidationError("boundary position " + std::to_string(i) +
                            " has " + std::to_string(d) + " incident edges");
    if (tags_.count(i))
      throw ValidationError("boundary position " + std::to_string(i) +
                            " is tagged but used by an edge");
  }
  // Trivalence and rotations.
  for (const auto& [v, rec] : verts_) {
    std::vector<std::string> inc;
    WebEnd self = WebEnd::at_vertex(v);
    for (const auto& [id, e] : edges_) {
      if (e.tail == self) inc.push_back(id);
      if (e.head == self) inc.push_back(id);
    }
    if (inc.size() != 3)
      throw ValidationError("interior vertex " + quote(v) + " has degree " +
                            std::to_string(inc.size()) + ", want 3");
    if (rec.rot.size() != 3)
      throw ValidationError("interior vertex " + quote(v) +
                            " needs a 3-edge rotation");
    std::vector<std::string> a = inc, b = rec.rot;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw ValidationError("rotation of " + quote(v) +
                            " does not list its incident edges");
  }
  // Per-piece planarity of the rotation system.
  MapGraph g = build_map(*this);
  std::vector<std::set<std::string>> pieces = map_pieces(g);
  std::vector<std::vector<MapDart>> faces = map_faces(g);
  for (const auto& piece : pieces) {
    if (piece.size() == 1 && g.rot.count(*piece.begin()) == 0) continue;
    long long V = static_cast<long long>(piece.size());
    long long E = 0, F = 0;
    for (const auto& [id, e] : g.ends)
      if (piece.count(e.first)) ++E;
    for (const auto& orbit : faces)
      if (piece.count(dart_target(g, orbit.front()))) ++F;
    // Isolated boundary nodes occur only when n <= 1 strips the circle.
    if (E == 0 && V == 1) continue;
    if (V - E + F != 2)
      throw ValidationError(
          "rotation system is not planar on a component (Euler count " +
          std::to_string(V - E + F) + ")");
  }
}

int degree(const Web& w) {
  int d = 3 * static_cast<int>(w.tags().size());
  for (const std::string& id : w.edge_ids()) {
    const WebEdgeRec& e = w.edge(id);
    if (e.tail.boundary && e.head.boundary) {
      d += 3;
      continue;
    }
    for (const WebEnd* end : {&e.tail, &e.head}) {
      const WebEnd* other = end == &e.tail ? &e.head : &e.tail;
      if (end->boundary && !other->boundary)
        d += w.vertex(other->vertex).color == Color::White ? 1 : 2;
    }
  }
  if (d % 3 != 0)
    throw ValidationError("web degree " + std::to_string(d) +
                          " is not divisible by 3");
  return d;
}

bool is_nonelliptic(const Web& w) {
  if (w.loops() > 0) return false;
  if (has_closed_piece(w)) return false;
  for (const Feature& f : find_features(w))
    if (f.kind != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Canonical text form.

namespace {

struct Emitter {
  const Web* w = nullptr;
  std::set<std::string> visited;
  std::map<std::string, std::string> vname, ename;
  std::vector<std::string> stmts;
  // Declared vertices in order, with their entry edge (original ids).
  std::vector<std::pair<std::string, std::string>> declared;
  int vcount = 0, ecount = 0;

  std::string end_name(const WebEnd& e) const {
    return e.boundary ? std::to_string(e.index) : vname.at(e.vertex);
  }

  void visit(const std::string& eid, const WebEnd& from);

  void enter(const std::string& v, const std::string& entry) {
    const std::vector<std::string>& rot = w->vertex(v).rot;
    std::size_t idx = 0;
    while (idx < rot.size() && rot[idx] != entry) ++idx;
    for (std::size_t t = 1; t <= 2; ++t) {
      const std::string& e2 = rot[(idx + t) % 3];
      if (!visited.count(e2)) visit(e2, WebEnd::at_vertex(v));
    }
  }

  void emit_rots() {
    for (const auto& [v, entry] : declared) {
      const std::vector<std::string>& rot = w->vertex(v).rot;
      std::size_t idx = 0;
      while (idx < rot.size() && rot[idx] != entry) ++idx;
      std::string s = "rot " + vname.at(v) + "(";
      for (std::size_t t = 0; t < 3; ++t) {
        if (t) s += ",";
        s += ename.at(rot[(idx + t) % 3]);
      }
      s += ")";
      stmts.push_back(s);
    }
  }
};

void Emitter::visit(const std::string& eid, const WebEnd& from) {
  visited.insert(eid);
  const WebEdgeRec& rec = w->edge(eid);
  WebEnd far = rec.tail == from ? rec.head : rec.tail;
  if (far.boundary && from.boundary) {
    stmts.push_back("arc " + std::to_string(rec.tail.index) + ">" +
                    std::to_string(rec.head.index));
    return;
  }
  bool newly = false;
  if (!far.boundary && !vname.count(far.vertex)) {
    vname[far.vertex] = "v" + std::to_string(++vcount);
    stmts.push_back("vertex " + vname[far.vertex] + " " +
                    color_name(w->vertex(far.vertex).color));
    declared.emplace_back(far.vertex, eid);
    newly = true;
  }
  ename[eid] = "e" + std::to_string(++ecount);
  stmts.push_back("edge " + ename[eid] + " " + end_name(rec.tail) + ">" +
                  end_name(rec.head));
  if (newly) enter(far.vertex, eid);
}

// Emits one closed component starting from the given anchor dart into `em`.
void emit_closed(Emitter& em, const std::string& anchor_edge,
                 const std::string& anchor_from) {
  em.vname[anchor_from] = "v" + std::to_string(++em.vcount);
  em.stmts.push_back("vertex " + em.vname[anchor_from] + " " +
                     color_name(em.w->vertex(anchor_from).color));
  em.declared.emplace_back(anchor_from, anchor_edge);
  em.visit(anchor_edge, WebEnd::at_vertex(anchor_from));
  em.enter(anchor_from, anchor_edge);
}

}  // namespace

std::string canonical(const Web& w) {
  w.validate();
  std::vector<std::string> parts{"web n=" + std::to_string(w.n())};
  if (w.loops() > 0) parts.push_back("loops=" + std::to_string(w.loops()));
  if (!w.tags().empty()) {
    std::string t = "tags{";
    bool first = true;
    for (int i : w.tags()) {
      if (!first) t += ",";
      t += std::to_string(i);
      first = false;
    }
    t += "}";
    parts.push_back(t);
  }
  Emitter em;
  em.w = &w;
  for (int i = 1; i <= w.n(); ++i) {
    std::string e = w.boundary_edge(i);
    if (!e.empty() && !em.visited.count(e)) em.visit(e, WebEnd::at_boundary(i));
  }
  // Closed components: canonicalize each over all anchor darts, then append
  // in sorted order, re-emitted with the running counters.
  std::set<std::string> closed_left;
  for (const std::string& e : w.edge_ids())
    if (!em.visited.count(e)) closed_left.insert(e);
  struct ClosedComp {
    std::string code;
    std::string anchor_edge, anchor_from;
    std::set<std::string> edges;
  };
  std::vector<ClosedComp> comps;
  while (!closed_left.empty()) {
    // Collect this component's edges.
    std::set<std::string> comp_edges;
    std::vector<std::string> queue{*closed_left.begin()};
    while (!queue.empty()) {
      std::string e = queue.back();
      queue.pop_back();
      if (!comp_edges.insert(e).second) continue;
      const WebEdgeRec& rec = w.edge(e);
      for (const WebEnd* end : {&rec.tail, &rec.head})
        for (const std::string& e2 : w.incident(end->vertex))
          if (!comp_edges.count(e2)) queue.push_back(e2);
    }
    for (const std::string& e : comp_edges) closed_left.erase(e);
    ClosedComp best;
    for (const std::string& e : comp_edges) {
      const WebEdgeRec& rec = w.edge(e);
      for (const WebEnd* from : {&rec.tail, &rec.head}) {
        Emitter trial;
        trial.w = &w;
        emit_closed(trial, e, from->vertex);
        trial.emit_rots();
        std::string code;
        for (const std::string& s : trial.stmts) code += s + "; ";
        if (best.code.empty() || code < best.code) {
          best.code = code;
          best.anchor_edge = e;
          best.anchor_from = from->vertex;
        }
      }
    }
    best.edges = comp_edges;
    comps.push_back(best);
  }
  std::sort(comps.begin(), comps.end(),
            [](const ClosedComp& a, const ClosedComp& b) {
              return a.code < b.code;
            });
  for (const ClosedComp& c : comps) emit_closed(em, c.anchor_edge, c.anchor_from);
  em.emit_rots();
  for (const std::string& s : em.stmts) parts.push_back(s);
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

bool web_eq(const Web& a, const Web& b) { return canonical(a) == canonical(b); }

// ---------------------------------------------------------------------------
// Parser for the canonical grammar.

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

int parse_int(const std::string& s, const std::string& what) {
  if (!all_digits(s))
    throw ParseError("expected a number for " + what + ", got " + quote(s));
  return std::stoi(s);
}

// Splits "head(a,b,c)" into head and items.
std::pair<std::string, std::vector<std::string>> split_call(
    const std::string& s, const std::string& what) {
  std::size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw ParseError("expected " + what + "(...), got " + quote(s));
  std::string head = trim(s.substr(0, open));
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> items;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !items.empty()) items.push_back(trim(cur));
  if (!items.empty() && items.back().empty()) items.pop_back();
  return {head, items};
}

WebEnd parse_end(const Web& w, const std::string& s) {
  if (all_digits(s)) return WebEnd::at_boundary(parse_int(s, "endpoint"));
  if (!w.has_vertex(s))
    throw ParseError("endpoint " + quote(s) + " is not a declared vertex");
  return WebEnd::at_vertex(s);
}

}  // namespace

Web parse_web(const std::string& text) {
  std::vector<std::string> stmts;
  std::string cur;
  for (char c : text) {
    if (c == ';' || c == '\n') {
      stmts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  stmts.push_back(trim(cur));
  Web w;
  bool have_header = false;
  std::vector<std::pair<std::string, std::vector<std::string>>> rot_stmts;
  for (const std::string& stmt : stmts) {
    if (stmt.empty()) continue;
    std::istringstream in(stmt);
    std::string word;
    in >> word;
    std::string rest = trim(stmt.substr(word.size()));
    if (word == "web") {
      if (have_header) throw ParseError("duplicate web header");
      if (rest.rfind("n=", 0) != 0)
        throw ParseError("web header must be web n=<count>");
      w = Web(parse_int(rest.substr(2), "boundary size"));
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError("web text must start with web n=<count>");
    if (word.rfind("loops=", 0) == 0 && rest.empty()) {
      w.set_loops(parse_int(word.substr(6), "loop count"));
    } else if (word.rfind("tags{", 0) == 0 && rest.empty()) {
      if (word.back() != '}') throw ParseError("unterminated tags{...}");
      std::string inner = word.substr(5, word.size() - 6);
      std::string item;
      for (char c : inner + ",") {
        if (c == ',') {
          if (!trim(item).empty()) w.set_tag(parse_int(trim(item), "tag"));
          item.clear();
        } else {
          item += c;
        }
      }
    } else if (word == "arc") {
      std::size_t gt = rest.find('>');
      if (gt == std::string::npos) throw ParseError("arc needs <i>><j>");
      int a = parse_int(trim(rest.substr(0, gt)), "arc endpoint");
      int b = parse_int(trim(rest.substr(gt + 1)), "arc endpoint");
      w.add_arc(a, b);
    } else if (word == "vertex") {
      std::istringstream vin(rest);
      std::string name, color;
      vin >> name >> color;
      if (color == "black")
        w.add_vertex(name, Color::Black);
      else if (color == "white")
        w.add_vertex(name, Color::White);
      else
        throw ParseError("vertex needs a color black|white, got " +
                         quote(color));
    } else if (word == "edge") {
      std::istringstream ein(rest);
      std::string name;
      ein >> name;
      std::string spec;
      std::getline(ein, spec);
      spec = trim(spec);
      std::size_t gt = spec.find('>');
      if (gt == std::string::npos) throw ParseError("edge needs <ep>><ep>");
      WebEnd tail = parse_end(w, trim(spec.substr(0, gt)));
      WebEnd head = parse_end(w, trim(spec.substr(gt + 1)));
      w.add_edge(name, tail, head);
    } else if (word == "rot") {
      auto [name, items] = split_call(rest, "rot <vertex>");
      if (items.size() != 3) throw ParseError("rot needs three edges");
      rot_stmts.emplace_back(name, items);
    } else if (word == "tri") {
      std::size_t at = rest.find('@');
      if (at == std::string::npos || at < 1)
        throw ParseError("tri needs <b|w>@<name>(...)");
      std::string col = trim(rest.substr(0, at));
      auto [name, items] = split_call(trim(rest.substr(at + 1)), "tri vertex");
      if (items.size() != 3) throw ParseError("tri needs three legs");
      std::vector<int> legs;
      for (const std::string& it : items) legs.push_back(parse_int(it, "leg"));
      if (col == "b")
        w.add_tripod(Color::Black, name, legs);
      else if (col == "w")
        w.add_tripod(Color::White, name, legs);
      else
        throw ParseError("tri color must be b or w, got " + quote(col));
    } else {
      throw ParseError("unrecognized web statement " + quote(stmt));
    }
  }
  if (!have_header) throw ParseError("web text must start with web n=<count>");
  for (const auto& [name, items] : rot_stmts) w.set_rotation(name, items);
  w.validate();
  return w;
}

// ---------------------------------------------------------------------------
// Combinations and reduction.

void WebCombination::add(const Web& w, long long coeff) {
  if (coeff == 0) return;
  std::string key = canonical(w);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    WebTerm t;
    t.web = w;
    t.coeff = coeff;
    terms_[key] = t;
  } else {
    it->second.coeff += coeff;
    if (it->second.coeff == 0) terms_.erase(it);
  }
}

void WebCombination::add_scaled(const WebCombination& other, long long factor) {
  for (const auto& [key, term] : other.terms_) add(term.web, term.coeff * factor);
}

long long WebCombination::coeff_of(const Web& w) const {
  return coeff_of_key(canonical(w));
}

long long WebCombination::coeff_of_key(const std::string& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second.coeff;
}

bool WebCombination::operator==(const WebCombination& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (const auto& [key, term] : terms_) {
    auto it = o.terms_.find(key);
    if (it == o.terms_.end() || it->second.coeff != term.coeff) return false;
  }
  return true;
}

std::string WebCombination::str() const {
  std::string out;
  for (const auto& [key, term] : terms_) {
    if (!out.empty()) out += " ; ";
    out += std::to_string(term.coeff) + " * " + key;
  }
  return out.empty() ? "0" : out;
}

namespace {

WebCombination reduce_impl(const Web& w, std::mt19937_64* rng) {
  WebCombination out;
  std::vector<std::pair<Web, long long>> todo{{w, 1}};
  while (!todo.empty()) {
    auto [cur, coeff] = todo.back();
    todo.pop_back();
    std::vector<Feature> features = find_features(cur);
    if (features.empty()) {
      if (cur.loops() > 0 || has_closed_piece(cur))
        throw ValidationError("irreducible web still has a loop or closed piece");
      out.add(cur, coeff);
      continue;
    }
    std::size_t pick = 0;
    if (rng) pick = static_cast<std::size_t>((*rng)() % features.size());
    int deg = degree(cur);
    for (auto& [child, factor] : apply_feature(cur, features[pick])) {
      if (degree(child) != deg)
        throw ValidationError("reduction step changed the web degree");
      todo.emplace_back(std::move(child), coeff * factor);
    }
  }
  return out;
}

}  // namespace

WebCombination reduce(const Web& w) { return reduce_impl(w, nullptr); }

WebCombination reduce_shuffled(const Web& w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return reduce_impl(w, &rng);
}

// ---------------------------------------------------------------------------
// Labelings.

namespace {

// Shared backtracking counter/collector over edge labels with distinctness at
// interior vertices; `forced` pins labels of some edges.
struct LabelSearch {
  const Web* w;
  std::vector<std::string> order;           // edges to label, forced first
  std::map<std::string, int> forced;        // edge -> label
  std::map<std::string, int> used;          // vertex -> bitmask of labels
  std::map<std::string, int> current;
  std::vector<std::map<std::string, int>>* collect = nullptr;
  long long count = 0;
  bool abort = false;

  bool place(const std::string& e, int label) {
    const WebEdgeRec& rec = w->edge(e);
    for (const WebEnd* end : {&rec.tail, &rec.head}) {
      if (end->boundary) continue;
      if (used[end->vertex] & (1 << label)) return false;
    }
    for (const WebEnd* end : {&rec.tail, &rec.head})
      if (!end->boundary) used[end->vertex] |= 1 << label;
    current[e] = label;
    return true;
  }

  void unplace(const std::string& e, int label) {
    const WebEdgeRec& rec = w->edge(e);
    for (const WebEnd* end : {&rec.tail, &rec.head})
      if (!end->boundary) used[end->vertex] &= ~(1 << label);
    current.erase(e);
  }

  void run(std::size_t at) {
    if (abort) return;
    if (at == order.size()) {
      ++count;
      if (collect) collect->push_back(current);
      return;
    }
    const std::string& e = order[at];
    auto f = forced.find(e);
    for (int label = 1; label <= 3; ++label) {
      if (f != forced.end() && f->second != label) continue;
      if (!place(e, label)) continue;
      run(at + 1);
      unplace(e, label);
    }
  }
};

}  // namespace

std::vector<WebLabeling> enumerate_labelings(const Web& w) {
  LabelSearch search;
  search.w = &w;
  search.order = w.edge_ids();
  std::vector<std::map<std::string, int>> raw;
  search.collect = &raw;
  search.run(0);
  // Cross with the independent loop labels.
  std::vector<std::vector<int>> loop_choices{{}};
  for (int i = 0; i < w.loops(); ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& base : loop_choices)
      for (int label = 1; label <= 3; ++label) {
        std::vector<int> ext = base;
        ext.push_back(label);
        next.push_back(ext);
      }
    loop_choices = next;
  }
  std::vector<WebLabeling> out;
  for (const auto& edge_label : raw)
    for (const auto& loops : loop_choices) {
      WebLabeling l;
      l.edge_label = edge_label;
      l.loop_label = loops;
      out.push_back(l);
    }
  return out;
}

WebLabeling find_labeling(const Web& w) {
  std::vector<WebLabeling> all = enumerate_labelings(w);
  if (all.empty())
    throw ValidationError("web admits no labeling; structure is invalid");
  return all.front();
}

long long count_consistent(const std::vector<int>& I, const std::vector<int>& J,
                           const std::vector<int>& K, const Web& w) {
  std::set<int> si(I.begin(), I.end()), sj(J.begin(), J.end()),
      sk(K.begin(), K.end());
  LabelSearch search;
  search.w = &w;
  for (int i = 1; i <= w.n(); ++i) {
    bool in1 = si.count(i), in2 = sj.count(i), in3 = sk.count(i);
    int cnt = static_cast<int>(in1) + in2 + in3;
    switch (w.mark(i)) {
      case BoundaryMark::Tagged:
        if (cnt != 3) return 0;
        break;
      case BoundaryMark::Unused:
        if (cnt != 0) return 0;
        break;
      case BoundaryMark::Out: {
        if (cnt != 1) return 0;
        int label = in1 ? 1 : in2 ? 2 : 3;
        std::string e = w.boundary_edge(i);
        auto it = search.forced.find(e);
        if (it != search.forced.end() && it->second != label) return 0;
        search.forced[e] = label;
        break;
      }
      case BoundaryMark::In: {
        if (cnt != 2) return 0;
        int label = !in1 ? 1 : !in2 ? 2 : 3;
        std::string e = w.boundary_edge(i);
        auto it = search.forced.find(e);
        if (it != search.forced.end() && it->second != label) return 0;
        search.forced[e] = label;
        break;
      }
    }
  }
  search.order = w.edge_ids();
  search.run(0);
  return search.count * ipow3(w.loops());
}

CheckReport verify_reduction_labeling(const Web& w, const std::vector<int>& I,
                                      const std::vector<int>& J,
                                      const std::vector<int>& K) {
  CheckReport rep;
  long long lhs = count_consistent(I, J, K, w);
  long long rhs = 0;
  WebCombination red = reduce(w);
  for (const auto& [key, term] : red.terms())
    rhs += term.coeff * count_consistent(I, J, K, term.web);
  std::string what = "labeling count survives reduction";
  rep.note(lhs == rhs, what + ": " + std::to_string(lhs) +
                           " != " + std::to_string(rhs));
  return rep;
}

}  // namespace dimerweb
