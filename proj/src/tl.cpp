#include "dimerweb/tl.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace dimerweb {

std::vector<int> Pairing::support() const {
  std::vector<int> s;
  for (const auto& [l, r] : arcs) {
    s.push_back(l);
    s.push_back(r);
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::string Pairing::str() const {
  std::ostringstream os;
  os << "arcs=";
  if (arcs.empty()) os << "-";
  for (const auto& [l, r] : arcs) os << "(" << l << "-" << r << ")";
  os << ";T={";
  for (size_t i = 0; i < tags.size(); ++i) os << (i ? "," : "") << tags[i];
  os << "}";
  return os.str();
}

bool Pairing::operator==(const Pairing& o) const {
  return k == o.k && arcs == o.arcs && tags == o.tags;
}

bool Pairing::operator<(const Pairing& o) const { return str() < o.str(); }

bool arcs_noncrossing(const std::vector<std::pair<int, int>>& arcs) {
  for (size_t i = 0; i < arcs.size(); ++i)
    for (size_t j = i + 1; j < arcs.size(); ++j) {
      auto [a, b] = arcs[i];
      auto [c, d] = arcs[j];
      bool c_in = a < c && c < b;
      bool d_in = a < d && d < b;
      if (c_in != d_in) return false;
    }
  return true;
}

Pairing make_pairing(int k, int n, std::vector<std::pair<int, int>> arcs,
                     std::vector<int> tags) {
  for (auto& [l, r] : arcs) {
    if (l == r) throw InvalidArgument("pairing arc with equal endpoints");
    if (l > r) std::swap(l, r);
  }
  std::sort(arcs.begin(), arcs.end());
  std::sort(tags.begin(), tags.end());
  std::set<int> seen;
  for (const auto& [l, r] : arcs)
    for (int x : {l, r}) {
      if (x < 1 || x > n)
        throw InvalidArgument("pairing index out of range 1..n");
      if (!seen.insert(x).second)
        throw InvalidArgument("pairing endpoint repeated");
    }
  for (int x : tags) {
    if (x < 1 || x > n) throw InvalidArgument("pairing index out of range 1..n");
    if (!seen.insert(x).second)
      throw InvalidArgument("pairing tag collides with another endpoint");
  }
  if (!arcs_noncrossing(arcs))
    throw InvalidArgument("pairing arcs cross");
  if (static_cast<int>(arcs.size() + tags.size()) != k)
    throw InvalidArgument("pairing size mismatch: #arcs + #tags != k");
  Pairing p;
  p.k = k;
  p.arcs = std::move(arcs);
  p.tags = std::move(tags);
  return p;
}

namespace {

// Noncrossing perfect matchings of the sorted point list.
void noncrossing_matchings(const std::vector<int>& pts,
                           std::vector<std::pair<int, int>>& cur,
                           std::vector<std::vector<std::pair<int, int>>>& out) {
  if (pts.empty()) {
    out.push_back(cur);
    return;
  }
  for (size_t j = 1; j < pts.size(); j += 2) {
    std::vector<int> inner(pts.begin() + 1, pts.begin() + j);
    std::vector<int> outer(pts.begin() + j + 1, pts.end());
    cur.push_back({pts[0], pts[j]});
    std::vector<std::vector<std::pair<int, int>>> left;
    std::vector<std::pair<int, int>> lc;
    noncrossing_matchings(inner, lc, left);
    for (const auto& lm : left) {
      size_t mark = cur.size();
      cur.insert(cur.end(), lm.begin(), lm.end());
      noncrossing_matchings(outer, cur, out);
      cur.resize(mark);
    }
    cur.pop_back();
  }
}

}  // namespace

std::vector<Pairing> enumerate_pairings(int k, int n) {
  std::vector<Pairing> out;
  for (int a = 0; a <= k; ++a) {
    int t = k - a;
    if (2 * a > n || t > n - 2 * a) continue;
    for (const auto& S : k_subsets(n, 2 * a)) {
      std::vector<std::pair<int, int>> cur;
      std::vector<std::vector<std::pair<int, int>>> mats;
      noncrossing_matchings(S, cur, mats);
      std::set<int> sset(S.begin(), S.end());
      std::vector<int> rest;
      for (int x = 1; x <= n; ++x)
        if (!sset.count(x)) rest.push_back(x);
      for (const auto& m : mats) {
        for (const auto& T : k_subsets(static_cast<int>(rest.size()), t)) {
          std::vector<int> tags;
          for (int idx : T) tags.push_back(rest[idx - 1]);
          out.push_back(make_pairing(k, n, m, tags));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct TLSearch {
  const PlanarNetwork* net;
  std::vector<std::string> edges;  // assignment order
  std::map<std::string, int> mult;
  std::map<std::string, int> sum;        // interior vertex -> current sum
  std::map<std::string, int> remaining;  // interior vertex -> unassigned count
  std::vector<TLEntry> out;
  int k = 0;

  bool interior(const std::string& v) const {
    return net->has_vertex(v) && !net->vertex(v).boundary;
  }

  void assign(size_t idx) {
    if (idx == edges.size()) {
      emit();
      return;
    }
    const EdgeRec& e = net->edge(edges[idx]);
    for (const std::string& v : {e.a, e.b})
      if (interior(v)) --remaining[v];
    for (int m = 0; m <= 2; ++m) {
      bool ok = true;
      for (const std::string& v : {e.a, e.b}) {
        if (!interior(v)) continue;
        int s = sum[v] + m;
        if (s > 2 || s + 2 * remaining[v] < 2) ok = false;
      }
      if (ok) {
        mult[edges[idx]] = m;
        for (const std::string& v : {e.a, e.b})
          if (interior(v)) sum[v] += m;
        assign(idx + 1);
        for (const std::string& v : {e.a, e.b})
          if (interior(v)) sum[v] -= m;
      }
    }
    mult[edges[idx]] = 0;
    for (const std::string& v : {e.a, e.b})
      if (interior(v)) ++remaining[v];
  }

  void emit() {
    TLEntry entry;
    // Doubled edges.
    std::vector<std::string> doubled, singles;
    for (const auto& eid : net->edge_ids()) {
      if (mult[eid] == 2) doubled.push_back(eid);
      if (mult[eid] == 1) singles.push_back(eid);
    }
    for (const auto& eid : doubled) {
      TLComponent c;
      c.kind = TLComponent::Kind::SingleEdge;
      c.edges = {eid};
      entry.subgraph.components.push_back(c);
    }
    // Adjacency of the multiplicity-one subgraph.
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& eid : singles) {
      adj[net->edge(eid).a].push_back(eid);
      adj[net->edge(eid).b].push_back(eid);
    }
    std::set<std::string> used;
    // Paths start at boundary vertices in index order.
    std::vector<TLComponent> paths;
    for (int i = 1; i <= net->n(); ++i) {
      std::string b = PlanarNetwork::boundary_id(i);
      auto it = adj.find(b);
      if (it == adj.end() || used.count(it->second.front())) continue;
      TLComponent c;
      c.kind = TLComponent::Kind::Path;
      std::string v = b;
      std::string prev;
      while (true) {
        std::string next_edge;
        for (const auto& eid : adj[v])
          if (eid != prev && !used.count(eid)) {
            next_edge = eid;
            break;
          }
        if (next_edge.empty()) break;
        used.insert(next_edge);
        c.edges.push_back(next_edge);
        v = net->other_end(next_edge, v);
        prev = next_edge;
        if (net->vertex(v).boundary) break;
      }
      c.end1 = i;
      c.end2 = net->vertex(v).index;
      if (c.end1 > c.end2) {
        std::swap(c.end1, c.end2);
        std::reverse(c.edges.begin(), c.edges.end());
      }
      paths.push_back(std::move(c));
    }
    std::sort(paths.begin(), paths.end(),
              [](const TLComponent& x, const TLComponent& y) {
                return x.end1 < y.end1;
              });
    // Remaining multiplicity-one edges close up into cycles.
    int cycles = 0;
    std::vector<TLComponent> cycle_comps;
    for (const auto& eid : singles) {
      if (used.count(eid)) continue;
      TLComponent c;
      c.kind = TLComponent::Kind::Cycle;
      std::string start = net->edge(eid).a;
      std::string v = start;
      std::string prev;
      while (true) {
        std::string next_edge;
        for (const auto& e2 : adj[v])
          if (e2 != prev && !used.count(e2)) {
            next_edge = e2;
            break;
          }
        if (next_edge.empty()) break;
        used.insert(next_edge);
        c.edges.push_back(next_edge);
        v = net->other_end(next_edge, v);
        prev = next_edge;
        if (v == start) break;
      }
      ++cycles;
      cycle_comps.push_back(std::move(c));
    }
    for (auto& c : paths) entry.subgraph.components.push_back(std::move(c));
    for (auto& c : cycle_comps)
      entry.subgraph.components.push_back(std::move(c));

    // Pairing: arcs from paths; T = doubled black + unused white boundary.
    std::vector<std::pair<int, int>> arcs;
    for (const auto& c : entry.subgraph.components)
      if (c.kind == TLComponent::Kind::Path) arcs.push_back({c.end1, c.end2});
    std::vector<int> tags;
    for (int i = 1; i <= net->n(); ++i) {
      std::string b = PlanarNetwork::boundary_id(i);
      int m = mult[net->vertex(b).rot.front()];
      Color col = net->boundary_color(i);
      if ((col == Color::Black && m == 2) || (col == Color::White && m == 0))
        tags.push_back(i);
    }
    entry.pairing = make_pairing(static_cast<int>(arcs.size() + tags.size()),
                                 net->n(), arcs, tags);
    if (entry.pairing.k != k)
      throw Error("TL subgraph pairing size does not match k");

    Polynomial w(1);
    for (const auto& [eid, m] : mult)
      for (int i = 0; i < m; ++i) w *= net->edge(eid).weight;
    for (int i = 0; i < cycles; ++i) w *= Polynomial(2);
    entry.weight = std::move(w);
    out.push_back(std::move(entry));
  }
};

std::string mult_signature(const PlanarNetwork& net, const TLSubgraph& g) {
  std::map<std::string, int> m;
  for (const auto& c : g.components) {
    int inc = c.kind == TLComponent::Kind::SingleEdge ? 2 : 1;
    for (const auto& e : c.edges) m[e] += inc;
  }
  std::ostringstream os;
  for (const auto& [e, v] : m) os << e << ":" << v << ";";
  (void)net;
  return os.str();
}

}  // namespace

std::vector<TLEntry> enumerate_tl_subgraphs(const PlanarNetwork& net) {
  TLSearch st;
  st.net = &net;
  st.k = net.stats().k;
  // Order edges so that each interior vertex's incidences come together.
  std::set<std::string> listed;
  for (const auto& v : net.interior_ids()) {
    std::vector<std::string> inc = net.vertex(v).rot;
    std::sort(inc.begin(), inc.end());
    for (const auto& e : inc)
      if (listed.insert(e).second) st.edges.push_back(e);
  }
  for (const auto& v : net.interior_ids())
    st.remaining[v] = static_cast<int>(net.vertex(v).rot.size());
  st.assign(0);
  std::sort(st.out.begin(), st.out.end(),
            [&](const TLEntry& x, const TLEntry& y) {
              std::string px = x.pairing.str(), py = y.pairing.str();
              if (px != py) return px < py;
              return mult_signature(net, x.subgraph) <
                     mult_signature(net, y.subgraph);
            });
  return st.out;
}

std::map<Pairing, Polynomial> tl_immanant_table(const PlanarNetwork& net) {
  std::map<Pairing, Polynomial> table;
  for (const auto& entry : enumerate_tl_subgraphs(net))
    table[entry.pairing] += entry.weight;
  for (auto it = table.begin(); it != table.end();)
    it = it->second.is_zero() ? table.erase(it) : std::next(it);
  return table;
}

Polynomial tl_immanant(const PlanarNetwork& net, const Pairing& p) {
  auto table = tl_immanant_table(net);
  auto it = table.find(p);
  return it == table.end() ? Polynomial() : it->second;
}

bool compatible(const Pairing& p, const std::vector<int>& I,
                const std::vector<int>& J) {
  if (p.k != static_cast<int>(I.size()) || I.size() != J.size()) return false;
  std::vector<int> common, di, dj, sym;
  std::set_intersection(I.begin(), I.end(), J.begin(), J.end(),
                        std::back_inserter(common));
  std::set_difference(I.begin(), I.end(), J.begin(), J.end(),
                      std::back_inserter(di));
  std::set_difference(J.begin(), J.end(), I.begin(), I.end(),
                      std::back_inserter(dj));
  if (p.tags != common) return false;
  std::set_union(di.begin(), di.end(), dj.begin(), dj.end(),
                 std::back_inserter(sym));
  if (p.support() != sym) return false;
  std::set<int> iset(di.begin(), di.end());
  for (const auto& [l, r] : p.arcs)
    if (iset.count(l) == iset.count(r)) return false;
  return true;
}

CheckReport verify_tl_identity(const GrassmannPoint& gp,
                               const std::map<Pairing, Polynomial>& table,
                               const std::vector<int>& I,
                               const std::vector<int>& J) {
  CheckReport rep;
  Polynomial lhs = gp.at(I) * gp.at(J);
  Polynomial rhs;
  for (const auto& [p, f] : table)
    if (compatible(p, I, J)) rhs += f;
  std::ostringstream os;
  if (!(lhs == rhs)) {
    os << "product/immanant mismatch at I={";
    for (int x : I) os << x << " ";
    os << "} J={";
    for (int x : J) os << x << " ";
    os << "}: " << lhs.str() << " vs " << rhs.str();
  }
  rep.note(lhs == rhs, os.str());
  return rep;
}

CheckReport verify_tl_identity(const PlanarNetwork& net,
                               const std::vector<int>& I,
                               const std::vector<int>& J) {
  return verify_tl_identity(grassmann_point(net), tl_immanant_table(net), I,
                            J);
}

CheckReport verify_tl_sweep(const PlanarNetwork& net) {
  CheckReport rep;
  GrassmannPoint gp = grassmann_point(net);
  auto table = tl_immanant_table(net);
  for (const auto& I : k_subsets(gp.n, gp.k))
    for (const auto& J : k_subsets(gp.n, gp.k))
      rep.merge(verify_tl_identity(gp, table, I, J));
  return rep;
}

bool is_standard(const std::vector<int>& I, const std::vector<int>& J) {
  if (I.size() != J.size()) return false;
  for (size_t r = 0; r < I.size(); ++r)
    if (I[r] > J[r]) return false;
  return true;
}

Pairing theta(const std::vector<int>& I, const std::vector<int>& J) {
  if (!is_standard(I, J))
    throw InvalidArgument("theta requires a standard pair (i_r <= j_r)");
  std::vector<int> common, di, dj;
  std::set_intersection(I.begin(), I.end(), J.begin(), J.end(),
                        std::back_inserter(common));
  std::set_difference(I.begin(), I.end(), J.begin(), J.end(),
                      std::back_inserter(di));
  std::set_difference(J.begin(), J.end(), I.begin(), I.end(),
                      std::back_inserter(dj));
  std::set<int> ups(di.begin(), di.end());
  std::vector<int> sym;
  std::set_union(di.begin(), di.end(), dj.begin(), dj.end(),
                 std::back_inserter(sym));
  std::vector<int> stack;
  std::vector<std::pair<int, int>> arcs;
  for (int x : sym) {
    if (ups.count(x)) {
      stack.push_back(x);
    } else {
      if (stack.empty())
        throw InvalidArgument("theta walk left the nonnegative region");
      arcs.push_back({stack.back(), x});
      stack.pop_back();
    }
  }
  int n = 0;
  for (int x : sym) n = std::max(n, x);
  for (int x : common) n = std::max(n, x);
  return make_pairing(static_cast<int>(I.size()), std::max(n, 1), arcs,
                      common);
}

std::pair<std::vector<int>, std::vector<int>> theta_inverse(const Pairing& p) {
  std::vector<int> I = p.tags, J = p.tags;
  for (const auto& [l, r] : p.arcs) {
    I.push_back(l);
    J.push_back(r);
  }
  std::sort(I.begin(), I.end());
  std::sort(J.begin(), J.end());
  return {I, J};
}

std::vector<int> dyck_heights(const Pairing& p) {
  std::set<int> lefts;
  for (const auto& [l, r] : p.arcs) lefts.insert(l);
  std::vector<int> heights;
  int h = 0;
  for (int x : p.support()) {
    h += lefts.count(x) ? 1 : -1;
    heights.push_back(h);
  }
  return heights;
}

std::vector<int> dyck_heights_of_pair(const std::vector<int>& I,
                                      const std::vector<int>& J) {
  std::vector<int> di, dj, sym;
  std::set_difference(I.begin(), I.end(), J.begin(), J.end(),
                      std::back_inserter(di));
  std::set_difference(J.begin(), J.end(), I.begin(), I.end(),
                      std::back_inserter(dj));
  std::set_union(di.begin(), di.end(), dj.begin(), dj.end(),
                 std::back_inserter(sym));
  std::set<int> ups(di.begin(), di.end());
  std::vector<int> heights;
  int h = 0;
  for (int x : sym) {
    h += ups.count(x) ? 1 : -1;
    heights.push_back(h);
  }
  return heights;
}

CheckReport verify_unitriangular(int k, int n) {
  CheckReport rep;
  auto pairings = enumerate_pairings(k, n);
  std::set<Pairing> pset(pairings.begin(), pairings.end());

  std::vector<std::pair<std::vector<int>, std::vector<int>>> standard;
  for (const auto& I : k_subsets(n, k))
    for (const auto& J : k_subsets(n, k))
      if (is_standard(I, J)) standard.push_back({I, J});
  rep.note(standard.size() == pairings.size(),
           "standard pair count differs from pairing count");

  // theta is injective into the pairing set.
  std::set<Pairing> image;
  for (const auto& [I, J] : standard) {
    Pairing th = theta(I, J);
    rep.note(pset.count(th) > 0, "theta image " + th.str() +
                                     " missing from the pairing set");
    rep.note(image.insert(th).second,
             "theta image repeated at " + th.str());
    auto [I2, J2] = theta_inverse(th);
    rep.note(I2 == I && J2 == J, "theta_inverse does not invert theta at " +
                                     th.str());
  }

  // Dominance: every compatible pairing sits weakly above theta's walk,
  // strictly unless it is theta itself.
  auto sum_heights = [](const std::vector<int>& h) {
    long long s = 0;
    for (int x : h) s += x;
    return s;
  };
  for (const auto& [I, J] : standard) {
    Pairing th = theta(I, J);
    std::vector<int> base = dyck_heights_of_pair(I, J);
    bool saw_theta = false;
    for (const auto& p : pairings) {
      if (!compatible(p, I, J)) continue;
      if (p == th) {
        saw_theta = true;
        continue;
      }
      std::vector<int> h = dyck_heights(p);
      bool above = h.size() == base.size();
      bool strict = false;
      for (size_t i = 0; above && i < h.size(); ++i) {
        if (h[i] < base[i]) above = false;
        if (h[i] > base[i]) strict = true;
      }
      rep.note(above && strict,
               "compatible pairing " + p.str() +
                   " does not sit strictly above theta for the pair");
    }
    rep.note(saw_theta, "theta image not compatible with its own pair: " +
                            th.str());
  }

  // Explicit matrix triangularity under the documented total order.
  auto key = [&](const Pairing& p) {
    return std::make_pair(-sum_heights(dyck_heights(p)), p.str());
  };
  std::vector<Pairing> cols = pairings;
  std::sort(cols.begin(), cols.end(),
            [&](const Pairing& a, const Pairing& b) { return key(a) < key(b); });
  std::map<std::string, size_t> col_index;
  for (size_t i = 0; i < cols.size(); ++i) col_index[cols[i].str()] = i;
  std::sort(standard.begin(), standard.end(),
            [&](const auto& a, const auto& b) {
              return key(theta(a.first, a.second)) <
                     key(theta(b.first, b.second));
            });
  for (size_t r = 0; r < standard.size(); ++r) {
    const auto& [I, J] = standard[r];
    size_t diag = col_index[theta(I, J).str()];
    rep.note(diag == r, "row and diagonal order disagree");
    for (size_t c = 0; c < cols.size(); ++c) {
      bool entry = compatible(cols[c], I, J);
      if (c == r)
        rep.note(entry, "diagonal entry vanishes");
      else if (c > r)
        rep.note(!entry, "entry above the diagonal at row " +
                             std::to_string(r) + " col " + std::to_string(c));
    }
  }
  return rep;
}

CheckReport verify_inequalities(const PlanarNetwork& net, int trials,
                                unsigned long long seed) {
  CheckReport rep;
  GrassmannPoint gp = grassmann_point(net);
  std::set<std::string> varset;
  for (const auto& [I, p] : gp.delta)
    for (const auto& v : p.variables()) varset.insert(v);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(1, 12);
  auto subsets = k_subsets(gp.n, gp.k);
  for (int t = 0; t < trials; ++t) {
    std::map<std::string, Rat> w;
    for (const auto& v : varset) w[v] = Rat(dist(rng), dist(rng));
    std::map<std::vector<int>, Rat> val;
    for (const auto& I : subsets) val[I] = gp.at(I).evaluate(w);
    for (size_t i = 0; i < subsets.size(); ++i) {
      for (size_t j = i; j < subsets.size(); ++j) {
        const auto& I = subsets[i];
        const auto& J = subsets[j];
        SubsetPair mm = min_max_pair(I, J);
        SubsetPair ss = sort_pair(I, J);
        Rat pij = val[I] * val[J];
        Rat pmm = val[mm.first] * val[mm.second];
        Rat pss = val[ss.first] * val[ss.second];
        rep.note(pij <= pmm, "product exceeds min/max product");
        rep.note(pmm <= pss, "min/max product exceeds sorted product");
      }
    }
  }
  return rep;
}

std::vector<Pairing> pairing_ensemble(const PlanarNetwork& net) {
  std::vector<Pairing> out;
  for (const auto& [p, f] : tl_immanant_table(net)) out.push_back(p);
  return out;
}

}  // namespace dimerweb
