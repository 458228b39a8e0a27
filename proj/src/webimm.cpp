#include "dimerweb/webimm.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <sstream>

#include "dimerweb/errors.hpp"

namespace dimerweb {

namespace {

// Incident edges per vertex, in rotation order where one is declared and in
// insertion order otherwise (order only matters at trivalent vertices, which
// always carry a rotation).
std::map<std::string, std::vector<std::string>> incidence(
    const PlanarNetwork& net) {
  std::map<std::string, std::vector<std::string>> inc;
  for (const auto& vid : net.interior_ids()) {
    inc[vid] = net.vertex(vid).rot;
  }
  for (int i = 1; i <= net.n(); ++i) {
    const VertexRec& v = net.boundary(i);
    inc[v.id] = v.rot;
  }
  for (const auto& eid : net.edge_ids()) {
    const EdgeRec& e = net.edge(eid);
    for (const std::string& vid : {e.a, e.b}) {
      auto& lst = inc[vid];
      if (std::find(lst.begin(), lst.end(), eid) == lst.end()) {
        lst.push_back(eid);
      }
    }
  }
  return inc;
}

int mult_of(const std::map<std::string, int>& m, const std::string& edge) {
  auto it = m.find(edge);
  return it == m.end() ? 0 : it->second;
}

// One maximal run of support edges through bivalent interior vertices,
// between two endpoints that are each either a boundary position or an
// interior vertex with three support edges.
struct ChainRec {
  std::vector<std::string> edges;  // walk order, end A to end B
  bool a_bnd = false;
  int a_idx = 0;
  std::string a_vtx;
  bool b_bnd = false;
  int b_idx = 0;
  std::string b_vtx;
  bool out_at_a = false;  // web edge direction: tail at end A
};

struct Decomp {
  bool valid = false;
  std::vector<std::string> dipoles;    // multiplicity 3, sorted
  std::vector<std::string> trivalent;  // interior vertices with 3 support edges
  std::vector<ChainRec> chains;
  std::vector<std::vector<std::string>> cycles;  // canonical cyclic edge lists
};

// Whether the component points away from this endpoint: a multiplicity-1
// edge runs black-to-white and a multiplicity-2 edge white-to-black, so a
// black end emits the chain exactly when its terminal multiplicity is 1 and
// a white end exactly when it is 2.
bool claims_out(Color end_color, int terminal_mult, bool trivalent_end) {
  if (trivalent_end) return end_color == Color::Black;  // terminal mult is 1
  return end_color == Color::Black ? terminal_mult == 1 : terminal_mult == 2;
}

std::vector<std::string> canonical_cycle(std::vector<std::string> cyc) {
  auto mn = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), mn, cyc.end());
  std::vector<std::string> rev;
  rev.push_back(cyc[0]);
  for (std::size_t i = cyc.size(); i > 1; --i) rev.push_back(cyc[i - 1]);
  return std::min(cyc, rev);
}

// Splits a multiplicity assignment (every interior vertex summing to 3) into
// dipoles, trivalent vertices, chains and cycles.  `valid` is false when the
// chain directions cannot be oriented consistently, i.e. the assignment is
// not a superposition of three dimer configurations.
Decomp decompose(const PlanarNetwork& net,
                 const std::map<std::string, int>& m,
                 const std::map<std::string, std::vector<std::string>>& inc) {
  Decomp d;
  std::map<std::string, std::vector<std::string>> supp;
  for (const auto& [vid, edges] : inc) {
    auto& s = supp[vid];
    for (const auto& e : edges) {
      if (mult_of(m, e) > 0) s.push_back(e);
    }
  }
  std::set<std::string> done;
  for (const auto& [eid, mm] : m) {
    if (mm == 3) {
      d.dipoles.push_back(eid);
      done.insert(eid);
    }
  }
  for (const auto& vid : net.interior_ids()) {
    if (supp[vid].size() == 3) d.trivalent.push_back(vid);
  }

  auto walk = [&](const std::string& start_vertex, const std::string& first,
                  ChainRec& c) {
    std::string cur = first;
    std::string prev = start_vertex;
    for (;;) {
      c.edges.push_back(cur);
      done.insert(cur);
      std::string nxt = net.other_end(cur, prev);
      const VertexRec& vr = net.vertex(nxt);
      if (vr.boundary) {
        c.b_bnd = true;
        c.b_idx = vr.index;
        return;
      }
      const auto& s = supp[nxt];
      if (s.size() == 3) {
        c.b_vtx = nxt;
        return;
      }
      // Bivalent: continue through the other support edge.
      cur = s[0] == cur ? s[1] : s[0];
      prev = nxt;
    }
  };

  int n = net.n();
  for (int i = 1; i <= n; ++i) {
    const VertexRec& bv = net.boundary(i);
    const auto& s = supp[bv.id];
    if (s.empty()) continue;
    const std::string& e = s[0];
    if (done.count(e)) continue;
    ChainRec c;
    c.a_bnd = true;
    c.a_idx = i;
    walk(bv.id, e, c);
    d.chains.push_back(std::move(c));
  }
  for (const auto& vid : d.trivalent) {
    for (const auto& e : supp[vid]) {
      if (done.count(e)) continue;
      ChainRec c;
      c.a_vtx = vid;
      walk(vid, e, c);
      d.chains.push_back(std::move(c));
    }
  }

  // Remaining support edges close up into cycles through bivalent vertices.
  std::vector<std::string> rest;
  for (const auto& [eid, mm] : m) {
    if (mm > 0 && !done.count(eid)) rest.push_back(eid);
  }
  std::sort(rest.begin(), rest.end());
  for (const auto& start : rest) {
    if (done.count(start)) continue;
    std::vector<std::string> cyc;
    std::string cur = start;
    std::string prev = net.edge(start).a;
    for (;;) {
      cyc.push_back(cur);
      done.insert(cur);
      std::string nxt = net.other_end(cur, prev);
      const auto& s = supp[nxt];
      std::string follow = s[0] == cur ? s[1] : s[0];
      if (follow == start) break;
      prev = nxt;
      cur = follow;
    }
    d.cycles.push_back(canonical_cycle(std::move(cyc)));
  }
  std::sort(d.cycles.begin(), d.cycles.end());

  // Orient every chain: exactly one end must emit it.
  for (ChainRec& c : d.chains) {
    Color ca = c.a_bnd ? net.boundary_color(c.a_idx) : net.vertex(c.a_vtx).color;
    Color cb = c.b_bnd ? net.boundary_color(c.b_idx) : net.vertex(c.b_vtx).color;
    bool oa = claims_out(ca, mult_of(m, c.edges.front()), !c.a_bnd);
    bool ob = claims_out(cb, mult_of(m, c.edges.back()), !c.b_bnd);
    if (oa == ob) return d;  // valid stays false
    c.out_at_a = oa;
  }
  d.valid = true;
  return d;
}

WeblikeSubgraph subgraph_of(const std::map<std::string, int>& m,
                            const Decomp& d) {
  WeblikeSubgraph g;
  std::set<std::string> in_cycle;
  for (const auto& cyc : d.cycles) in_cycle.insert(cyc.begin(), cyc.end());
  for (const auto& [eid, mm] : m) {
    if (mm > 0 && !in_cycle.count(eid)) g.mult[eid] = mm;
  }
  g.cycles = d.cycles;
  return g;
}

// The web of a decomposition, together with the web edge holding each chain
// (web edge "c<i>" carries chains[i]; loops follow the cycles order).
Web build_web(const PlanarNetwork& net, const std::map<std::string, int>& m,
              const Decomp& d) {
  if (!d.valid) throw Error("weblike subgraph has inconsistent directions");
  int n = net.n();
  Web w(n);
  for (int i = 1; i <= n; ++i) {
    Color c = net.boundary_color(i);
    int mm = 0;
    const VertexRec& bv = net.boundary(i);
    for (const auto& [eid, v] : m) {
      (void)v;
      const EdgeRec& e = net.edge(eid);
      if (e.a == bv.id || e.b == bv.id) mm = mult_of(m, eid);
    }
    if ((c == Color::Black && mm == 3) || (c == Color::White && mm == 0)) {
      w.set_tag(i);
    }
  }
  for (const auto& vid : d.trivalent) {
    w.add_vertex(vid, net.vertex(vid).color);
  }
  // (vertex id, terminal network edge) -> web edge id, for rotations.
  std::map<std::pair<std::string, std::string>, std::string> port;
  for (std::size_t i = 0; i < d.chains.size(); ++i) {
    const ChainRec& c = d.chains[i];
    WebEnd ea = c.a_bnd ? WebEnd::at_boundary(c.a_idx)
                        : WebEnd::at_vertex(c.a_vtx);
    WebEnd eb = c.b_bnd ? WebEnd::at_boundary(c.b_idx)
                        : WebEnd::at_vertex(c.b_vtx);
    std::string id = "c" + std::to_string(i + 1);
    if (c.out_at_a) {
      w.add_edge(id, ea, eb);
    } else {
      w.add_edge(id, eb, ea);
    }
    if (!c.a_bnd) port[{c.a_vtx, c.edges.front()}] = id;
    if (!c.b_bnd) port[{c.b_vtx, c.edges.back()}] = id;
  }
  for (const auto& vid : d.trivalent) {
    std::vector<std::string> rot;
    for (const auto& e : net.vertex(vid).rot) {
      if (mult_of(m, e) > 0) rot.push_back(port.at({vid, e}));
    }
    w.set_rotation(vid, std::move(rot));
  }
  w.add_loops(static_cast<int>(d.cycles.size()));
  w.validate();
  int k = net.stats().k;
  if (degree(w) != 3 * k) {
    throw Error("weblike subgraph web has wrong boundary degree");
  }
  return w;
}

// Reconstructs a full multiplicity map from a subgraph (cycles get one of
// their two alternating patterns; either satisfies all vertex sums).
std::map<std::string, int> mult_map_of(const WeblikeSubgraph& g) {
  std::map<std::string, int> m = g.mult;
  for (const auto& cyc : g.cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      m[cyc[i]] = i % 2 == 0 ? 1 : 2;
    }
  }
  return m;
}

}  // namespace

bool WeblikeSubgraph::uses(const std::string& edge) const {
  if (mult.count(edge)) return true;
  for (const auto& cyc : cycles) {
    if (std::find(cyc.begin(), cyc.end(), edge) != cyc.end()) return true;
  }
  return false;
}

std::string WeblikeSubgraph::key() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [eid, mm] : mult) {
    if (!first) os << " ";
    first = false;
    os << eid << "^" << mm;
  }
  for (const auto& cyc : cycles) {
    if (!first) os << " ";
    first = false;
    os << "cyc(";
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) os << ",";
      os << cyc[i];
    }
    os << ")";
  }
  if (first) os << "empty";
  return os.str();
}

Polynomial WeblikeSubgraph::weight(const PlanarNetwork& net) const {
  Polynomial p = Polynomial(1);
  for (const auto& [eid, mm] : mult) {
    p *= net.edge(eid).weight.pow(static_cast<unsigned>(mm));
  }
  for (const auto& cyc : cycles) {
    Polynomial odd = Polynomial(1);
    Polynomial even = Polynomial(1);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const Polynomial& wgt = net.edge(cyc[i]).weight;
      if (i % 2 == 0) {
        odd *= wgt;
        even *= wgt.pow(2);
      } else {
        odd *= wgt.pow(2);
        even *= wgt;
      }
    }
    p *= odd + even;
  }
  return p;
}

std::vector<std::pair<WeblikeSubgraph, Polynomial>> enumerate_weblike(
    const PlanarNetwork& net) {
  auto inc = incidence(net);
  // Edges ordered so each interior vertex's incidence list is exhausted as
  // early as possible, making the sum-to-3 constraint prune hard.
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto& vid : net.interior_ids()) {
    for (const auto& e : inc[vid]) {
      if (seen.insert(e).second) order.push_back(e);
    }
  }
  if (order.size() != net.edge_ids().size()) {
    throw ValidationError("network has an edge with no interior endpoint");
  }

  // Per interior vertex: running sum and number of unassigned edges.
  std::map<std::string, int> sum, remaining;
  for (const auto& vid : net.interior_ids()) {
    sum[vid] = 0;
    remaining[vid] = static_cast<int>(inc[vid].size());
  }
  std::vector<std::pair<std::string, std::string>> interior_ends(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const EdgeRec& e = net.edge(order[i]);
    interior_ends[i] = {net.vertex(e.a).boundary ? "" : e.a,
                        net.vertex(e.b).boundary ? "" : e.b};
  }

  std::map<std::string, std::pair<WeblikeSubgraph, Polynomial>> found;
  std::map<std::string, int> m;
  auto feasible = [&](const std::string& v, int add) {
    int s = sum[v] + add;
    int r = remaining[v] - 1;
    if (s > 3) return false;
    if (r == 0) return s == 3;
    return s + 3 * r >= 3;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == order.size()) {
      Decomp d = decompose(net, m, inc);
      if (!d.valid) return;
      WeblikeSubgraph g = subgraph_of(m, d);
      std::string key = g.key();
      if (!found.count(key)) {
        Polynomial wt = g.weight(net);
        found.emplace(key, std::make_pair(std::move(g), std::move(wt)));
      }
      return;
    }
    const auto& [va, vb] = interior_ends[idx];
    for (int mm = 0; mm <= 3; ++mm) {
      if (!va.empty() && !feasible(va, mm)) continue;
      if (!vb.empty() && !feasible(vb, mm)) continue;
      if (mm > 0) m[order[idx]] = mm;
      for (const auto& v : {va, vb}) {
        if (!v.empty()) {
          sum[v] += mm;
          --remaining[v];
        }
      }
      rec(idx + 1);
      for (const auto& v : {va, vb}) {
        if (!v.empty()) {
          sum[v] -= mm;
          ++remaining[v];
        }
      }
      if (mm > 0) m.erase(order[idx]);
    }
  };
  rec(0);

  std::vector<std::pair<WeblikeSubgraph, Polynomial>> out;
  out.reserve(found.size());
  for (auto& [key, pr] : found) {
    (void)key;
    out.push_back(std::move(pr));
  }
  return out;
}

Web web_of(const PlanarNetwork& net, const WeblikeSubgraph& g) {
  auto inc = incidence(net);
  std::map<std::string, int> m = mult_map_of(g);
  Decomp d = decompose(net, m, inc);
  return build_web(net, m, d);
}

WebTable web_table(const PlanarNetwork& net) {
  WebTable t;
  for (const auto& [g, wt] : enumerate_weblike(net)) {
    Web d0 = web_of(net, g);
    WebCombination red = reduce(d0);
    for (const auto& [key, term] : red.terms()) {
      Polynomial contrib = wt * Polynomial(term.coeff);
      auto it = t.fd.find(key);
      if (it == t.fd.end()) {
        t.webs.emplace(key, term.web);
        t.fd.emplace(key, std::move(contrib));
      } else {
        it->second += contrib;
      }
    }
  }
  for (auto it = t.fd.begin(); it != t.fd.end();) {
    if (it->second.is_zero()) {
      t.webs.erase(it->first);
      it = t.fd.erase(it);
    } else {
      ++it;
    }
  }
  return t;
}

Polynomial web_immanant(const PlanarNetwork& net, const Web& d) {
  WebTable t = web_table(net);
  auto it = t.fd.find(canonical(d));
  return it == t.fd.end() ? Polynomial() : it->second;
}

std::vector<Web> web_ensemble(const PlanarNetwork& net) {
  WebTable t = web_table(net);
  std::vector<Web> out;
  out.reserve(t.webs.size());
  for (const auto& [key, w] : t.webs) {
    (void)key;
    out.push_back(w);
  }
  return out;
}

TripleOverlay triple_overlay(const PlanarNetwork& net, const Matching& p1,
                             const Matching& p2, const Matching& p3) {
  const Matching* ps[3] = {&p1, &p2, &p3};
  std::map<std::string, int> m;
  for (const auto& eid : net.edge_ids()) {
    int mm = 0;
    for (const Matching* p : ps) {
      if (std::binary_search(p->begin(), p->end(), eid)) ++mm;
    }
    if (mm > 0) m[eid] = mm;
  }
  auto inc = incidence(net);
  Decomp d = decompose(net, m, inc);
  if (!d.valid) throw Error("matching triple produced inconsistent directions");

  TripleOverlay ov;
  ov.graph = subgraph_of(m, d);
  ov.web = build_web(net, m, d);

  auto owner = [&](const std::string& eid, int mm) {
    // Multiplicity 1: the one configuration containing the edge.
    // Multiplicity 2: the one configuration missing it.
    for (int i = 0; i < 3; ++i) {
      bool has = std::binary_search(ps[i]->begin(), ps[i]->end(), eid);
      if (mm == 1 ? has : !has) return i + 1;
    }
    throw Error("edge multiplicity inconsistent with matchings");
  };
  for (std::size_t i = 0; i < d.chains.size(); ++i) {
    const ChainRec& c = d.chains[i];
    std::string id = "c" + std::to_string(i + 1);
    int label = 0;
    for (const auto& eid : c.edges) {
      if (mult_of(m, eid) == 1) {
        label = owner(eid, 1);
        break;
      }
    }
    if (label == 0) label = owner(c.edges.front(), 2);
    ov.labeling.edge_label[id] = label;
  }
  for (const auto& cyc : d.cycles) {
    int label = 0;
    for (const auto& eid : cyc) {
      if (mult_of(m, eid) == 1) {
        label = owner(eid, 1);
        break;
      }
    }
    ov.labeling.loop_label.push_back(label);
  }
  // A superposition always yields a proper labeling: distinct labels at
  // every interior vertex.
  for (const auto& vid : ov.web.vertex_ids()) {
    std::set<int> labels;
    for (const auto& e : ov.web.vertex(vid).rot) {
      labels.insert(ov.labeling.edge_label.at(e));
    }
    if (labels.size() != 3) {
      throw Error("matching triple produced a clashing labeling");
    }
  }
  return ov;
}

CheckReport verify_triple_identity(const PlanarNetwork& net,
                                   const std::vector<int>& I,
                                   const std::vector<int>& J,
                                   const std::vector<int>& K,
                                   const WebTable* table) {
  CheckReport rep;
  WebTable local;
  if (table == nullptr) {
    local = web_table(net);
    table = &local;
  }
  std::vector<int> si = I, sj = J, sk = K;
  std::sort(si.begin(), si.end());
  std::sort(sj.begin(), sj.end());
  std::sort(sk.begin(), sk.end());

  GrassmannPoint gp = grassmann_point(net);
  Polynomial lhs = gp.at(si) * gp.at(sj) * gp.at(sk);

  Polynomial mid;
  for (const auto& [key, f] : table->fd) {
    long long c = count_consistent(si, sj, sk, table->webs.at(key));
    if (c != 0) mid += f * Polynomial(c);
  }

  std::vector<Matching> all = enumerate_matchings(net);
  std::vector<const Matching*> gi, gj, gk;
  for (const Matching& mt : all) {
    std::vector<int> b = boundary_subset(net, mt);
    if (b == si) gi.push_back(&mt);
    if (b == sj) gj.push_back(&mt);
    if (b == sk) gk.push_back(&mt);
  }
  Polynomial direct;
  for (const Matching* a : gi) {
    Polynomial wa = matching_weight(net, *a);
    for (const Matching* b : gj) {
      Polynomial wab = wa * matching_weight(net, *b);
      for (const Matching* c : gk) {
        direct += wab * matching_weight(net, *c);
      }
    }
  }

  std::ostringstream what;
  what << "triple {";
  for (int v : si) what << v << " ";
  what << "} {";
  for (int v : sj) what << v << " ";
  what << "} {";
  for (int v : sk) what << v << " ";
  what << "}";
  rep.note(lhs == mid, what.str() + ": web expansion matches product");
  rep.note(lhs == direct, what.str() + ": matching triples match product");
  return rep;
}

}  // namespace dimerweb
