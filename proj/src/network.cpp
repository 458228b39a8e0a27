#include "dimerweb/network.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dimerweb {

Color opposite(Color c) {
  return c == Color::Black ? Color::White : Color::Black;
}

std::string color_name(Color c) {
  return c == Color::Black ? "black" : "white";
}

namespace {

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Returns the boundary index for tokens of the exact form b1, b2, ... and 0
// for everything else.
int boundary_token_index(const std::string& s) {
  if (s.size() < 2 || s[0] != 'b') return 0;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return 0;
  if (s[1] == '0') return -1;  // b0, b01, ... are never valid labels
  int idx = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    idx = idx * 10 + (s[i] - '0');
    if (idx > 1000000) return -1;
  }
  return idx;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

struct DartLess {
  bool operator()(const Dart& a, const Dart& b) const {
    if (a.edge != b.edge) return a.edge < b.edge;
    if (a.from != b.from) return a.from < b.from;
    return a.to < b.to;
  }
};

}  // namespace

NetworkBuilder::NetworkBuilder(std::string name, int n)
    : name_(std::move(name)), n_(n) {}

NetworkBuilder NetworkBuilder::from(const PlanarNetwork& net) {
  NetworkBuilder b(net.name(), net.n());
  for (const auto& id : net.interior_ids())
    b.interior_[id] = {id, net.vertex(id).color};
  for (const auto& id : net.edge_ids()) {
    b.edge_order_.push_back(id);
    b.edges_[id] = net.edge(id);
  }
  for (const auto& id : net.interior_ids())
    b.rot_[id] = net.vertex(id).rot;
  return b;
}

void NetworkBuilder::add_interior(const std::string& id, Color color) {
  if (interior_.count(id))
    throw InvalidArgument("duplicate interior vertex '" + id + "'");
  interior_[id] = {id, color};
}

void NetworkBuilder::remove_interior(const std::string& id) {
  if (!interior_.count(id))
    throw InvalidArgument("remove_interior: unknown vertex '" + id + "'");
  for (const auto& [eid, e] : edges_)
    if (e.a == id || e.b == id)
      throw InvalidArgument("remove_interior: vertex '" + id +
                            "' still has incident edge '" + eid + "'");
  interior_.erase(id);
  rot_.erase(id);
}

bool NetworkBuilder::has_vertex(const std::string& id) const {
  return interior_.count(id) > 0 || boundary_token_index(id) > 0;
}

Color NetworkBuilder::interior_color(const std::string& id) const {
  auto it = interior_.find(id);
  if (it == interior_.end())
    throw InvalidArgument("interior_color: unknown vertex '" + id + "'");
  return it->second.second;
}

void NetworkBuilder::add_edge(const std::string& id, const std::string& a,
                              const std::string& b, Polynomial weight) {
  if (edges_.count(id)) throw InvalidArgument("duplicate edge '" + id + "'");
  edges_[id] = EdgeRec{id, a, b, std::move(weight)};
  edge_order_.push_back(id);
}

void NetworkBuilder::remove_edge(const std::string& id) {
  if (!edges_.count(id))
    throw InvalidArgument("remove_edge: unknown edge '" + id + "'");
  edges_.erase(id);
  edge_order_.erase(std::find(edge_order_.begin(), edge_order_.end(), id));
  for (auto& [v, rot] : rot_) {
    auto it = std::find(rot.begin(), rot.end(), id);
    if (it != rot.end()) rot.erase(it);
  }
}

bool NetworkBuilder::has_edge(const std::string& id) const {
  return edges_.count(id) > 0;
}

EdgeRec& NetworkBuilder::edge(const std::string& id) {
  auto it = edges_.find(id);
  if (it == edges_.end())
    throw InvalidArgument("edge: unknown edge '" + id + "'");
  return it->second;
}

std::string NetworkBuilder::fresh_edge_id(const std::string& stem) const {
  if (!edges_.count(stem)) return stem;
  for (int i = 2;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!edges_.count(cand)) return cand;
  }
}

std::string NetworkBuilder::fresh_vertex_id(const std::string& stem) const {
  if (!interior_.count(stem) && boundary_token_index(stem) == 0) return stem;
  for (int i = 2;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!interior_.count(cand)) return cand;
  }
}

void NetworkBuilder::set_rotation(const std::string& vertex,
                                  std::vector<std::string> edges) {
  rot_[vertex] = std::move(edges);
}

void NetworkBuilder::clear_rotation(const std::string& vertex) {
  rot_.erase(vertex);
}

void NetworkBuilder::replace_in_rotation(const std::string& vertex,
                                         const std::string& old_edge,
                                         const std::string& new_edge) {
  auto it = rot_.find(vertex);
  if (it == rot_.end())
    throw InvalidArgument("replace_in_rotation: no rotation for '" + vertex +
                          "'");
  auto pos = std::find(it->second.begin(), it->second.end(), old_edge);
  if (pos == it->second.end())
    throw InvalidArgument("replace_in_rotation: edge '" + old_edge +
                          "' not in rotation of '" + vertex + "'");
  *pos = new_edge;
}

void NetworkBuilder::relabel_boundary(const std::map<int, int>& map) {
  std::set<int> targets;
  for (const auto& [from, to] : map) targets.insert(to);
  if (static_cast<int>(map.size()) != n_ ||
      static_cast<int>(targets.size()) != n_ ||
      (n_ > 0 && (*targets.begin() != 1 || *targets.rbegin() != n_)))
    throw InvalidArgument("relabel_boundary: map is not a permutation of 1.." +
                          std::to_string(n_));
  auto rename = [&](std::string& v) {
    int idx = boundary_token_index(v);
    if (idx > 0) v = "b" + std::to_string(map.at(idx));
  };
  for (auto& [id, e] : edges_) {
    rename(e.a);
    rename(e.b);
  }
}

PlanarNetwork NetworkBuilder::build() const {
  if (n_ < 1) throw ValidationError("network must have n >= 1");
  if (name_.empty()) throw ValidationError("network name is empty");

  PlanarNetwork net;
  net.name_ = name_;
  net.n_ = n_;

  for (const auto& [id, rec] : interior_) {
    if (!valid_id(id))
      throw ValidationError("invalid interior vertex id '" + id + "'");
    if (boundary_token_index(id) != 0)
      throw ValidationError("interior vertex id '" + id +
                            "' is reserved for boundary vertices");
    VertexRec v;
    v.id = id;
    v.color = rec.second;
    net.verts_[id] = v;
  }
  for (int i = 1; i <= n_; ++i) {
    VertexRec v;
    v.id = PlanarNetwork::boundary_id(i);
    v.boundary = true;
    v.index = i;
    net.verts_[v.id] = v;
  }

  // Resolve edges; collect incidence in declaration order.
  std::map<std::string, std::vector<std::string>> incident;
  for (const auto& id : edge_order_) {
    const EdgeRec& e = edges_.at(id);
    if (!valid_id(id)) throw ValidationError("invalid edge id '" + id + "'");
    for (const std::string* endp : {&e.a, &e.b}) {
      int bidx = boundary_token_index(*endp);
      if (bidx < 0 || bidx > n_)
        throw ValidationError("edge '" + id + "': boundary vertex '" + *endp +
                              "' out of range (n=" + std::to_string(n_) + ")");
      if (bidx == 0 && !interior_.count(*endp))
        throw ValidationError("edge '" + id +
                              "' references undeclared vertex '" + *endp +
                              "'");
    }
    if (e.a == e.b)
      throw ValidationError("edge '" + id + "' joins a vertex to itself");
    net.edges_[id] = e;
    incident[e.a].push_back(id);
    incident[e.b].push_back(id);
  }

  // Boundary degree and color; bipartiteness.
  for (int i = 1; i <= n_; ++i) {
    const std::string id = PlanarNetwork::boundary_id(i);
    int deg = static_cast<int>(incident[id].size());
    if (deg != 1)
      throw ValidationError("boundary vertex " + id + " has degree " +
                            std::to_string(deg) + " (expected exactly 1)");
  }
  for (const auto& [id, e] : net.edges_) {
    bool ba = net.verts_.at(e.a).boundary, bb = net.verts_.at(e.b).boundary;
    if (ba && bb)
      throw ValidationError("edge '" + id + "' joins two boundary vertices");
    if (!ba && !bb && net.verts_.at(e.a).color == net.verts_.at(e.b).color)
      throw ValidationError("edge '" + id + "' joins two " +
                            color_name(net.verts_.at(e.a).color) +
                            " vertices");
  }
  for (auto& [id, v] : net.verts_) {
    if (!v.boundary) continue;
    const EdgeRec& e = net.edges_.at(incident[id][0]);
    const std::string& nb = e.a == id ? e.b : e.a;
    v.color = opposite(net.verts_.at(nb).color);
  }

  // Rotations.
  for (const auto& [v, rot] : rot_)
    if (!net.verts_.count(v))
      throw ValidationError("rotation given for unknown vertex '" + v + "'");
  for (auto& [id, v] : net.verts_) {
    const auto& inc = incident[id];
    auto it = rot_.find(id);
    if (it == rot_.end()) {
      if (inc.size() > 2)
        throw ValidationError("rotation for vertex '" + id +
                              "' missing (degree " +
                              std::to_string(inc.size()) + ")");
      v.rot = inc;
      continue;
    }
    std::set<std::string> seen;
    for (const auto& eid : it->second) {
      if (!net.edges_.count(eid))
        throw ValidationError("rotation for '" + id +
                              "' references unknown edge '" + eid + "'");
      const EdgeRec& e = net.edges_.at(eid);
      if (e.a != id && e.b != id)
        throw ValidationError("rotation for '" + id +
                              "' lists non-incident edge '" + eid + "'");
      if (!seen.insert(eid).second)
        throw ValidationError("rotation for '" + id + "' lists edge '" + eid +
                              "' twice");
    }
    if (seen.size() != inc.size())
      for (const auto& eid : inc)
        if (!seen.count(eid))
          throw ValidationError("rotation for '" + id +
                                "' omits incident edge '" + eid + "'");
    v.rot = it->second;
  }

  net.validate();
  return net;
}

std::string PlanarNetwork::boundary_id(int index) {
  return "b" + std::to_string(index);
}

std::vector<std::string> PlanarNetwork::interior_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, v] : verts_)
    if (!v.boundary) out.push_back(id);
  return out;
}

std::vector<std::string> PlanarNetwork::edge_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, e] : edges_) out.push_back(id);
  return out;
}

bool PlanarNetwork::has_vertex(const std::string& id) const {
  return verts_.count(id) > 0;
}

const VertexRec& PlanarNetwork::vertex(const std::string& id) const {
  auto it = verts_.find(id);
  if (it == verts_.end())
    throw InvalidArgument("unknown vertex '" + id + "'");
  return it->second;
}

const EdgeRec& PlanarNetwork::edge(const std::string& id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw InvalidArgument("unknown edge '" + id + "'");
  return it->second;
}

const VertexRec& PlanarNetwork::boundary(int index) const {
  if (index < 1 || index > n_)
    throw InvalidArgument("boundary index " + std::to_string(index) +
                          " out of range (n=" + std::to_string(n_) + ")");
  return verts_.at(boundary_id(index));
}

Color PlanarNetwork::boundary_color(int index) const {
  return boundary(index).color;
}

int PlanarNetwork::degree(const std::string& v) const {
  return static_cast<int>(vertex(v).rot.size());
}

std::string PlanarNetwork::other_end(const std::string& eid,
                                     const std::string& v) const {
  const EdgeRec& e = edge(eid);
  if (e.a == v) return e.b;
  if (e.b == v) return e.a;
  throw InvalidArgument("edge '" + eid + "' is not incident to '" + v + "'");
}

NetworkStats PlanarNetwork::stats() const {
  NetworkStats s;
  for (const auto& [id, v] : verts_) {
    if (v.boundary) {
      (v.color == Color::Black ? s.boundary_black : s.boundary_white)++;
    } else {
      (v.color == Color::Black ? s.interior_black : s.interior_white)++;
    }
  }
  s.d = s.interior_white - s.interior_black;
  s.dprime = s.boundary_white;
  s.k = s.d + s.dprime;
  return s;
}

Dart PlanarNetwork::next_dart(const Dart& d) const {
  const VertexRec& v = verts_.at(d.to);
  auto it = std::find(v.rot.begin(), v.rot.end(), d.edge);
  size_t idx = static_cast<size_t>(it - v.rot.begin());
  const std::string& ne = v.rot[(idx + 1) % v.rot.size()];
  return Dart{ne, d.to, other_end(ne, d.to)};
}

std::vector<Face> PlanarNetwork::faces() const {
  // Orbit decomposition of all darts under next_dart.
  std::set<Dart, DartLess> unvisited;
  for (const auto& [id, e] : edges_) {
    unvisited.insert(Dart{id, e.a, e.b});
    unvisited.insert(Dart{id, e.b, e.a});
  }
  std::vector<std::vector<Dart>> orbits;
  while (!unvisited.empty()) {
    Dart start = *unvisited.begin();
    std::vector<Dart> orbit;
    Dart d = start;
    do {
      orbit.push_back(d);
      unvisited.erase(d);
      d = next_dart(d);
    } while (!(d == start));
    orbits.push_back(std::move(orbit));
  }

  // Union-find over vertices to group orbits by component.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find =
      [&](const std::string& x) -> std::string {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  };
  for (const auto& [id, e] : edges_) {
    std::string ra = find(e.a), rb = find(e.b);
    if (ra != rb) parent[ra] = rb;
  }

  struct CompInfo {
    int min_boundary = 0;          // 0 if the component has no boundary vertex
    std::string min_vertex;        // for deterministic ordering of floaters
    std::vector<int> orbit_ids;
    int outer_orbit = -1;
  };
  std::map<std::string, CompInfo> comps;
  for (const auto& [id, v] : verts_) {
    if (v.rot.empty()) continue;
    std::string r = find(id);
    CompInfo& c = comps[r];
    if (c.min_vertex.empty() || id < c.min_vertex) c.min_vertex = id;
    if (v.boundary && (c.min_boundary == 0 || v.index < c.min_boundary))
      c.min_boundary = v.index;
  }
  for (int oi = 0; oi < static_cast<int>(orbits.size()); ++oi) {
    CompInfo& c = comps.at(find(orbits[oi][0].from));
    c.orbit_ids.push_back(oi);
    for (const Dart& d : orbits[oi]) {
      if (verts_.at(d.to).boundary) {
        c.outer_orbit = oi;  // unique by validation
        break;
      }
    }
  }
  // A floating component's unbounded side is taken to be its largest face.
  for (auto& [r, c] : comps) {
    if (c.outer_orbit >= 0) continue;
    for (int oi : c.orbit_ids)
      if (c.outer_orbit < 0 ||
          orbits[oi].size() > orbits[c.outer_orbit].size())
        c.outer_orbit = oi;
  }

  // Assemble: one merged outer face first, then interior faces.
  std::vector<const CompInfo*> order;
  for (const auto& [r, c] : comps) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const CompInfo* x, const CompInfo* y) {
              bool bx = x->min_boundary > 0, by = y->min_boundary > 0;
              if (bx != by) return bx;  // boundary components first
              if (bx) return x->min_boundary < y->min_boundary;
              return x->min_vertex < y->min_vertex;
            });

  auto rotate_to_start = [](std::vector<Dart> orbit, size_t at) {
    std::rotate(orbit.begin(), orbit.begin() + at, orbit.end());
    return orbit;
  };
  auto min_dart_pos = [](const std::vector<Dart>& orbit) {
    size_t best = 0;
    DartLess less;
    for (size_t i = 1; i < orbit.size(); ++i)
      if (less(orbit[i], orbit[best])) best = i;
    return best;
  };

  Face outer;
  outer.outer = true;
  for (const CompInfo* c : order) {
    const auto& orbit = orbits[c->outer_orbit];
    size_t at = 0;
    if (c->min_boundary > 0) {
      std::string want = boundary_id(c->min_boundary);
      for (size_t i = 0; i < orbit.size(); ++i)
        if (orbit[i].from == want) at = i;
    } else {
      at = min_dart_pos(orbit);
    }
    auto rotated = rotate_to_start(orbit, at);
    outer.darts.insert(outer.darts.end(), rotated.begin(), rotated.end());
  }

  std::vector<Face> out;
  out.push_back(std::move(outer));
  std::vector<std::vector<Dart>> inner;
  for (const CompInfo* c : order)
    for (int oi : c->orbit_ids)
      if (oi != c->outer_orbit)
        inner.push_back(rotate_to_start(orbits[oi], min_dart_pos(orbits[oi])));
  std::sort(inner.begin(), inner.end(),
            [](const std::vector<Dart>& a, const std::vector<Dart>& b) {
              return DartLess()(a[0], b[0]);
            });
  for (auto& darts : inner) {
    Face f;
    f.darts = std::move(darts);
    out.push_back(std::move(f));
  }
  return out;
}

void PlanarNetwork::validate() const {
  // Component structure.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find =
      [&](const std::string& x) -> std::string {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  };
  for (const auto& [id, e] : edges_) {
    std::string ra = find(e.a), rb = find(e.b);
    if (ra != rb) parent[ra] = rb;
  }

  struct Comp {
    int verts = 0, edges = 0, orbits = 0;
    std::string sample;
    std::vector<int> boundary;                 // indices present
    std::vector<std::vector<int>> face_seqs;   // boundary visit runs per orbit
  };
  std::map<std::string, Comp> comps;
  for (const auto& [id, v] : verts_) {
    if (v.rot.empty()) continue;
    Comp& c = comps[find(id)];
    c.verts++;
    c.sample = c.sample.empty() ? id : std::min(c.sample, id);
    if (v.boundary) c.boundary.push_back(v.index);
  }
  for (const auto& [id, e] : edges_) comps.at(find(e.a)).edges++;

  // Orbit count per component, plus boundary visit order per orbit.
  std::set<Dart, DartLess> unvisited;
  for (const auto& [id, e] : edges_) {
    unvisited.insert(Dart{id, e.a, e.b});
    unvisited.insert(Dart{id, e.b, e.a});
  }
  while (!unvisited.empty()) {
    Dart start = *unvisited.begin();
    Comp& c = comps.at(find(start.from));
    c.orbits++;
    std::vector<int> seq;
    Dart d = start;
    do {
      unvisited.erase(d);
      if (verts_.at(d.to).boundary) seq.push_back(verts_.at(d.to).index);
      d = next_dart(d);
    } while (!(d == start));
    if (!seq.empty()) c.face_seqs.push_back(std::move(seq));
  }

  for (const auto& [r, c] : comps) {
    if (c.orbits != 2 - c.verts + c.edges)
      throw ValidationError(
          "embedding fails the planarity check (component containing vertex '" +
          c.sample + "')");
    if (c.boundary.empty()) continue;
    if (c.face_seqs.size() != 1)
      throw ValidationError(
          "boundary vertices of the component containing vertex '" + c.sample +
          "' do not lie on a single face");
    // Ascending cyclic order check.
    const std::vector<int>& seq = c.face_seqs[0];
    size_t drops = 0;
    for (size_t i = 0; i < seq.size(); ++i)
      if (seq[i] > seq[(i + 1) % seq.size()]) drops++;
    if (seq.size() > 1 && drops != 1)
      throw ValidationError(
          "boundary vertices do not appear in clockwise order on the outer "
          "face");
  }

  // Components must not interleave around the circle.
  std::vector<std::vector<int>> bsets;
  for (const auto& [r, c] : comps) {
    if (c.boundary.empty()) continue;
    std::vector<int> s = c.boundary;
    std::sort(s.begin(), s.end());
    bsets.push_back(std::move(s));
  }
  for (size_t i = 0; i < bsets.size(); ++i) {
    for (size_t j = i + 1; j < bsets.size(); ++j) {
      // bsets[j] must fit inside a single cyclic gap of bsets[i].
      const auto& s = bsets[i];
      if (s.size() < 2) continue;
      auto gap_of = [&](int x) {
        // Index g such that s[g] < x < s[g+1] cyclically.
        size_t g = std::upper_bound(s.begin(), s.end(), x) - s.begin();
        return g % s.size();
      };
      size_t g0 = gap_of(bsets[j][0]);
      for (int x : bsets[j])
        if (gap_of(x) != g0)
          throw ValidationError(
              "two components interleave around the boundary circle");
    }
  }
}

PlanarNetwork PlanarNetwork::cyclic_rotate() const {
  NetworkBuilder b = NetworkBuilder::from(*this);
  std::map<int, int> map;
  for (int i = 1; i <= n_; ++i) map[i] = i == 1 ? n_ : i - 1;
  b.relabel_boundary(map);
  return b.build();
}

PlanarNetwork PlanarNetwork::with_weights(
    const std::map<std::string, Rat>& values) const {
  NetworkBuilder b = NetworkBuilder::from(*this);
  for (const auto& id : edge_ids())
    b.edge(id).weight = edge(id).weight.substitute(values);
  return b.build();
}

std::string PlanarNetwork::serialize() const {
  std::ostringstream os;
  os << "network " << name_ << "\n";
  os << "n " << n_ << "\n";
  for (const auto& id : interior_ids())
    os << "interior " << id << " " << color_name(verts_.at(id).color) << "\n";
  for (const auto& [id, e] : edges_)
    os << "edge " << id << " " << e.a << " " << e.b << " "
       << strip_spaces(e.weight.str()) << "\n";
  for (const auto& id : interior_ids()) {
    const VertexRec& v = verts_.at(id);
    if (v.rot.size() < 2) continue;
    os << "rot " << id;
    for (const auto& eid : v.rot) os << " " << eid;
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

PlanarNetwork PlanarNetwork::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_network = false, have_n = false, have_end = false;
  std::string name;
  int n = 0;
  struct PendingEdge {
    std::string id, a, b;
    Polynomial w;
  };
  std::vector<std::pair<std::string, Color>> interiors;
  std::vector<PendingEdge> edges;
  std::vector<std::pair<std::string, std::vector<std::string>>> rots;

  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    if (have_end) fail("content after 'end'");
    const std::string& kw = tok[0];
    if (kw == "network") {
      if (have_network) fail("duplicate 'network' directive");
      if (tok.size() != 2) fail("expected: network <name>");
      name = tok[1];
      have_network = true;
    } else if (kw == "n") {
      if (!have_network) fail("'n' before 'network'");
      if (have_n) fail("duplicate 'n' directive");
      if (tok.size() != 2) fail("expected: n <count>");
      try {
        n = std::stoi(tok[1]);
      } catch (const std::exception&) {
        fail("invalid boundary count '" + tok[1] + "'");
      }
      have_n = true;
    } else if (kw == "interior") {
      if (!have_n) fail("'interior' before 'n'");
      if (tok.size() != 3) fail("expected: interior <id> <black|white>");
      Color c;
      if (tok[2] == "black") c = Color::Black;
      else if (tok[2] == "white") c = Color::White;
      else fail("unknown color '" + tok[2] + "'");
      interiors.emplace_back(tok[1], c);
    } else if (kw == "edge") {
      if (!have_n) fail("'edge' before 'n'");
      if (tok.size() != 4 && tok.size() != 5)
        fail("expected: edge <id> <endpoint> <endpoint> [<weight>]");
      PendingEdge e;
      e.id = tok[1];
      e.a = tok[2];
      e.b = tok[3];
      if (tok.size() == 5) {
        try {
          e.w = Polynomial::parse(tok[4]);
        } catch (const ParseError& ex) {
          fail(std::string("bad weight: ") + ex.what());
        }
      } else {
        if (!valid_id(e.id)) fail("invalid edge id '" + e.id + "'");
        e.w = Polynomial::variable(e.id);
      }
      edges.push_back(std::move(e));
    } else if (kw == "rot") {
      if (!have_n) fail("'rot' before 'n'");
      if (tok.size() < 3) fail("expected: rot <vertex-id> <edge-id> ...");
      rots.emplace_back(tok[1],
                        std::vector<std::string>(tok.begin() + 2, tok.end()));
    } else if (kw == "end") {
      if (!have_network || !have_n) fail("'end' before 'network'/'n'");
      have_end = true;
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }
  if (!have_network) throw ParseError("missing 'network' directive");
  if (!have_n) throw ParseError("missing 'n' directive");
  if (!have_end) throw ParseError("missing 'end'");

  NetworkBuilder b(name, n);
  try {
    for (const auto& [id, c] : interiors) b.add_interior(id, c);
    for (auto& e : edges) b.add_edge(e.id, e.a, e.b, std::move(e.w));
    for (auto& [v, r] : rots) b.set_rotation(v, std::move(r));
  } catch (const InvalidArgument& ex) {
    throw ParseError(ex.what());
  }
  return b.build();
}

PlanarNetwork PlanarNetwork::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace dimerweb
