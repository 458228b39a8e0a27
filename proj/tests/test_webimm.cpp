#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"

#include "dimerweb/dimer.hpp"
#include "dimerweb/network.hpp"
#include "dimerweb/polynomial.hpp"
#include "dimerweb/web.hpp"
#include "dimerweb/webimm.hpp"
#include "fixtures.hpp"

using namespace dimerweb;

namespace {

Polynomial P(const std::string& s) { return Polynomial::parse(s); }

Web tags_only(const std::vector<int>& tags) {
  Web w(4);
  for (int t : tags) w.set_tag(t);
  return w;
}

Web arcs_web(const std::vector<std::pair<int, int>>& arcs,
             const std::vector<int>& tags = {}) {
  Web w(4);
  for (const auto& [from, to] : arcs) w.add_arc(from, to);
  for (int t : tags) w.set_tag(t);
  return w;
}

Web black_tripod(const std::vector<int>& legs) {
  Web w(4);
  w.add_tripod(Color::Black, "v", legs);
  return w;
}

Web white_tripod(const std::vector<int>& legs, int tag) {
  Web w(4);
  w.add_tripod(Color::White, "v", legs);
  w.set_tag(tag);
  return w;
}

// Two trivalent vertices joined by a middle edge: the `in` boundary pair
// flows into the white vertex, the black vertex flows out to the `out`
// pair.  Both pairs are given in clockwise boundary order.
Web h_web4(const std::pair<int, int>& in, const std::pair<int, int>& out) {
  Web w(4);
  w.add_vertex("W", Color::White);
  w.add_vertex("B", Color::Black);
  w.add_edge("m", WebEnd::at_vertex("B"), WebEnd::at_vertex("W"));
  w.add_edge("i1", WebEnd::at_boundary(in.first), WebEnd::at_vertex("W"));
  w.add_edge("i2", WebEnd::at_boundary(in.second), WebEnd::at_vertex("W"));
  w.add_edge("o1", WebEnd::at_vertex("B"), WebEnd::at_boundary(out.first));
  w.add_edge("o2", WebEnd::at_vertex("B"), WebEnd::at_boundary(out.second));
  w.set_rotation("W", {"i1", "i2", "m"});
  w.set_rotation("B", {"m", "o1", "o2"});
  w.validate();
  return w;
}

// Relabels every boundary position i as i mod n + 1.
Web shift_plus1(const Web& w, int n) {
  auto shift = [n](const WebEnd& e) {
    return e.boundary ? WebEnd::at_boundary(e.index % n + 1) : e;
  };
  Web out(n);
  out.set_loops(w.loops());
  for (int t : w.tags()) out.set_tag(t % n + 1);
  for (const auto& vid : w.vertex_ids()) {
    out.add_vertex(vid, w.vertex(vid).color);
  }
  for (const auto& eid : w.edge_ids()) {
    const WebEdgeRec& e = w.edge(eid);
    out.add_edge(eid, shift(e.tail), shift(e.head));
  }
  for (const auto& vid : w.vertex_ids()) {
    out.set_rotation(vid, w.vertex(vid).rot);
  }
  out.validate();
  return out;
}

int label_of(const TripleOverlay& ov, const WebEnd& tail, const WebEnd& head) {
  for (const auto& eid : ov.web.edge_ids()) {
    const WebEdgeRec& e = ov.web.edge(eid);
    if (e.tail == tail && e.head == head) return ov.labeling.edge_label.at(eid);
  }
  FAIL("no web edge from ", tail.str(), " to ", head.str());
  return 0;
}

const std::map<std::string, Polynomial>& weblike_index(
    const PlanarNetwork& net, std::map<std::string, Polynomial>& cache) {
  if (cache.empty()) {
    for (const auto& [g, wt] : enumerate_weblike(net)) cache[g.key()] = wt;
  }
  return cache;
}

}  // namespace

TEST_CASE("weblike subgraphs of the square network: spot checks") {
  PlanarNetwork net = load_fixture("c4.net");
  auto all = enumerate_weblike(net);
  std::map<std::string, Polynomial> wt;
  std::map<std::string, WeblikeSubgraph> gs;
  for (const auto& [g, w] : all) {
    wt[g.key()] = w;
    gs[g.key()] = g;
  }
  CHECK(all.size() == wt.size());  // keys unique

  // Tripled boundary legs.
  REQUIRE(wt.count("e1^3 e2^3 e3^3 e4^3"));
  CHECK(wt.at("e1^3 e2^3 e3^3 e4^3") == P("1"));
  // Two tripled interior edges.
  REQUIRE(wt.count("a^3 c^3"));
  CHECK(wt.at("a^3 c^3") == P("a^3*c^3"));
  // The interior cycle: both alternating multiplicity patterns at once.
  REQUIRE(wt.count("cyc(a,b,c,d)"));
  CHECK(wt.at("cyc(a,b,c,d)") == P("a*b^2*c*d^2+a^2*b*c^2*d"));
  CHECK(gs.at("cyc(a,b,c,d)").mult.empty());
  CHECK(gs.at("cyc(a,b,c,d)").uses("a"));
  CHECK(!gs.at("cyc(a,b,c,d)").uses("e1"));

  // The three subgraphs feeding one tagged-plus-arc immanant.
  REQUIRE(wt.count("a^2 b^1 c^1 d^1 e3^1 e4^1"));
  CHECK(wt.at("a^2 b^1 c^1 d^1 e3^1 e4^1") == P("a^2*b*c*d"));
  REQUIRE(wt.count("a^1 b^2 d^2 e3^1 e4^1"));
  CHECK(wt.at("a^1 b^2 d^2 e3^1 e4^1") == P("a*b^2*d^2"));
  REQUIRE(wt.count("a^3 c^2 e3^1 e4^1"));
  CHECK(wt.at("a^3 c^2 e3^1 e4^1") == P("a^3*c^2"));

  // A white-tripod subgraph.
  REQUIRE(wt.count("b^1 c^1 e1^3 e2^2 e3^1 e4^2"));
  CHECK(wt.at("b^1 c^1 e1^3 e2^2 e3^1 e4^2") == P("b*c"));

  // Every subgraph maps to a web of the right boundary degree.
  for (const auto& [g, w] : all) {
    (void)w;
    Web d = web_of(net, g);
    CHECK(degree(d) == 6);
  }
}

TEST_CASE("webs of weblike subgraphs: spot checks") {
  PlanarNetwork net = load_fixture("c4.net");
  std::map<std::string, WeblikeSubgraph> gs;
  for (const auto& [g, w] : enumerate_weblike(net)) {
    (void)w;
    gs[g.key()] = g;
  }

  // All boundary legs tripled: tags at the black-used and white-unused spots.
  Web all_dip = web_of(net, gs.at("e1^3 e2^3 e3^3 e4^3"));
  CHECK(canonical(all_dip) == canonical(tags_only({1, 3})));

  // The interior cycle becomes a loop, boundary unused throughout.
  Web cyc = web_of(net, gs.at("cyc(a,b,c,d)"));
  CHECK(cyc.loops() == 1);
  CHECK(cyc.tags() == std::set<int>{2, 4});
  CHECK(cyc.edge_ids().empty());

  // A doubled bigon: two parallel strands between the two trivalent corners.
  Web bigon = web_of(net, gs.at("a^2 b^1 c^1 d^1 e3^1 e4^1"));
  CHECK(bigon.vertex_ids().size() == 2);
  WebCombination red = reduce(bigon);
  CHECK(red.coeff_of(arcs_web({{3, 4}}, {2})) == 2);

  // An H-shaped web straight from the subgraph.
  Web h = web_of(net, gs.at("a^1 b^1 d^1 e1^1 e2^1 e3^2 e4^2"));
  CHECK(canonical(h) == canonical(h_web4({4, 1}, {2, 3})));
}

TEST_CASE("web immanant table of the square network matches the worked expansion") {
  PlanarNetwork net = load_fixture("c4.net");
  WebTable t = web_table(net);
  CHECK(t.fd.size() == 50);
  CHECK(t.webs.size() == 50);

  for (const auto& [key, w] : t.webs) {
    CHECK(canonical(w) == key);
    CHECK(is_nonelliptic(w));
    CHECK(!t.fd.at(key).is_zero());
  }

  struct Row {
    Web web;
    std::string value;
  };
  std::vector<Row> rows;

  // Pure tag pairs.
  rows.push_back({tags_only({1, 2}), "b^3"});
  rows.push_back({tags_only({1, 3}), "1"});
  rows.push_back({tags_only({1, 4}), "c^3"});
  rows.push_back({tags_only({2, 3}), "a^3"});
  rows.push_back({tags_only({2, 4}),
                  "a^3*c^3+3*a^2*b*c^2*d+3*a*b^2*c*d^2+b^3*d^3"});
  rows.push_back({tags_only({3, 4}), "d^3"});

  // Double arcs.
  rows.push_back({arcs_web({{1, 2}, {3, 4}}), "a^2*c^2+a*b*c*d"});
  rows.push_back({arcs_web({{2, 1}, {3, 4}}), "a*c^2"});
  rows.push_back({arcs_web({{1, 2}, {4, 3}}), "a^2*c"});
  rows.push_back({arcs_web({{2, 1}, {4, 3}}), "a*c"});
  rows.push_back({arcs_web({{1, 4}, {2, 3}}), "b*d^2"});
  rows.push_back({arcs_web({{4, 1}, {2, 3}}), "b*d"});
  rows.push_back({arcs_web({{1, 4}, {3, 2}}), "b^2*d^2+a*b*c*d"});
  rows.push_back({arcs_web({{4, 1}, {3, 2}}), "b^2*d"});

  // One tag plus one arc.
  rows.push_back({arcs_web({{3, 4}}, {1}), "c^2"});
  rows.push_back({arcs_web({{4, 3}}, {1}), "c"});
  rows.push_back({arcs_web({{2, 3}}, {1}), "b"});
  rows.push_back({arcs_web({{3, 2}}, {1}), "b^2"});
  rows.push_back({arcs_web({{2, 4}}, {1}), "b*c^2"});
  rows.push_back({arcs_web({{4, 2}}, {1}), "b^2*c"});

  rows.push_back({arcs_web({{3, 4}}, {2}), "a^3*c^2+2*a^2*b*c*d+a*b^2*d^2"});
  rows.push_back({arcs_web({{4, 3}}, {2}), "a^3*c+a^2*b*d"});
  rows.push_back({arcs_web({{1, 4}}, {2}), "b^3*d^2+2*a*b^2*c*d+a^2*b*c^2"});
  rows.push_back({arcs_web({{4, 1}}, {2}), "b^3*d+a*b^2*c"});
  rows.push_back({arcs_web({{1, 3}}, {2}), "a^2*b"});
  rows.push_back({arcs_web({{3, 1}}, {2}), "a*b^2"});

  rows.push_back({arcs_web({{1, 2}}, {3}), "a^2"});
  rows.push_back({arcs_web({{2, 1}}, {3}), "a"});
  rows.push_back({arcs_web({{4, 1}}, {3}), "d"});
  rows.push_back({arcs_web({{1, 4}}, {3}), "d^2"});
  rows.push_back({arcs_web({{4, 2}}, {3}), "a^2*d"});
  rows.push_back({arcs_web({{2, 4}}, {3}), "a*d^2"});

  rows.push_back({arcs_web({{1, 2}}, {4}), "a^2*c^3+2*a*b*c^2*d+b^2*c*d^2"});
  rows.push_back({arcs_web({{2, 1}}, {4}), "a*c^3+b*c^2*d"});
  rows.push_back({arcs_web({{3, 2}}, {4}), "b^2*d^3+2*a*b*c*d^2+a^2*c^2*d"});
  rows.push_back({arcs_web({{2, 3}}, {4}), "b*d^3+a*c*d^2"});
  rows.push_back({arcs_web({{3, 1}}, {4}), "c^2*d"});
  rows.push_back({arcs_web({{1, 3}}, {4}), "c*d^2"});

  // Black tripods (center points at its legs).
  rows.push_back({black_tripod({2, 3, 4}), "a*b*d^2+a^2*c*d"});
  rows.push_back({black_tripod({1, 3, 4}), "c*d"});
  rows.push_back({black_tripod({1, 2, 4}), "b^2*c*d+a*b*c^2"});
  rows.push_back({black_tripod({1, 2, 3}), "a*b"});

  // White tripods (legs point at the center) with the leftover spot tagged.
  rows.push_back({white_tripod({2, 3, 4}, 1), "b*c"});
  rows.push_back({white_tripod({1, 3, 4}, 2), "a*b^2*d+a^2*b*c"});
  rows.push_back({white_tripod({1, 2, 4}, 3), "a*d"});
  rows.push_back({white_tripod({1, 2, 3}, 4), "b*c*d^2+a*c^2*d"});

  // H-shaped webs.
  rows.push_back({h_web4({2, 3}, {4, 1}), "b*c*d"});
  rows.push_back({h_web4({3, 4}, {1, 2}), "a*b*c"});
  rows.push_back({h_web4({4, 1}, {2, 3}), "a*b*d"});
  rows.push_back({h_web4({1, 2}, {3, 4}), "a*c*d"});

  CHECK(rows.size() == 50);
  std::set<std::string> seen;
  for (const Row& r : rows) {
    std::string key = canonical(r.web);
    CHECK(seen.insert(key).second);
    REQUIRE_MESSAGE(t.fd.count(key) == 1, "missing immanant for ", key);
    std::string got = t.fd.at(key).str();
    CHECK_MESSAGE(t.fd.at(key) == P(r.value), key, ": expected ", r.value,
                  ", got ", got);
  }
}

TEST_CASE("the two square-free tag immanants come from unique subgraphs") {
  // The {1,4} and {3,4} entries each arise from one all-dipole subgraph, so
  // their values are pinned independently of the reduction bookkeeping.
  PlanarNetwork net = load_fixture("c4.net");
  std::string k14 = canonical(tags_only({1, 4}));
  std::string k34 = canonical(tags_only({3, 4}));
  std::map<std::string, std::vector<std::string>> sources;
  for (const auto& [g, wt] : enumerate_weblike(net)) {
    (void)wt;
    sources[canonical(web_of(net, g))].push_back(g.key());
  }
  REQUIRE(sources.at(k14).size() == 1);
  CHECK(sources.at(k14)[0] == "c^3 e1^3 e2^3");
  REQUIRE(sources.at(k34).size() == 1);
  CHECK(sources.at(k34)[0] == "d^3 e2^3 e3^3");
}

TEST_CASE("web immanant lookup and ensemble") {
  PlanarNetwork net = load_fixture("c4.net");
  CHECK(web_immanant(net, arcs_web({{2, 1}, {4, 3}})) == P("a*c"));
  // A web outside the ensemble has immanant zero: crossing arcs cannot occur.
  CHECK(web_immanant(net, tags_only({1, 2, 3, 4})).is_zero());

  std::vector<Web> ens = web_ensemble(net);
  CHECK(ens.size() == 50);
  for (const Web& w : ens) CHECK(is_nonelliptic(w));
}

TEST_CASE("lollipop network has a single web immanant") {
  PlanarNetwork net = load_fixture("lollipop.net");
  auto all = enumerate_weblike(net);
  REQUIRE(all.size() == 1);
  CHECK(all[0].first.key() == "e1^3 e2^3 e3^3 e4^3");
  CHECK(all[0].second == P("1"));

  WebTable t = web_table(net);
  REQUIRE(t.fd.size() == 1);
  CHECK(t.fd.begin()->first == canonical(tags_only({3, 4})));
  CHECK(t.fd.begin()->second == P("1"));
}

TEST_CASE("ensemble is unchanged by positive reweighting") {
  PlanarNetwork net = load_fixture("c4.net");
  WebTable base = web_table(net);
  std::vector<std::map<std::string, Rat>> weightings = {
      {{"a", Rat(2)}, {"b", Rat(3)}, {"c", Rat(5)}, {"d", Rat(7)}},
      {{"a", Rat(1, 2)}, {"b", Rat(4)}, {"c", Rat(9, 7)}, {"d", Rat(1)}}};
  for (const auto& wts : weightings) {
    PlanarNetwork rw = net.with_weights(wts);
    WebTable t = web_table(rw);
    REQUIRE(t.fd.size() == base.fd.size());
    for (const auto& [key, f] : base.fd) {
      (void)f;
      CHECK(t.fd.count(key) == 1);
    }
  }
  PlanarNetwork rw = net.with_weights(weightings[0]);
  CHECK(web_immanant(rw, arcs_web({{2, 1}, {4, 3}})) == P("10"));
}

TEST_CASE("subgraph weights and immanants are homogeneous with generic legs") {
  // Same square network, but with the boundary legs weighted by their own
  // variables so every degree is visible.
  PlanarNetwork net = PlanarNetwork::parse(
      "network c4gen\n"
      "n 4\n"
      "interior nw white\ninterior ne black\ninterior se white\n"
      "interior sw black\n"
      "edge a nw ne\nedge b ne se\nedge c se sw\nedge d sw nw\n"
      "edge e1 b1 nw\nedge e2 b2 ne\nedge e3 b3 se\nedge e4 b4 sw\n"
      "rot nw e1 a d\nrot ne e2 b a\nrot se e3 c b\nrot sw e4 d c\n"
      "end\n");
  auto homogeneous_of = [](const Polynomial& p) {
    REQUIRE(!p.is_zero());
    int d = p.terms().begin()->first.degree();
    for (const auto& [mon, coeff] : p.terms()) {
      (void)coeff;
      CHECK(mon.degree() == d);
    }
    return d;
  };

  auto all = enumerate_weblike(net);
  for (const auto& [g, wt] : all) {
    int bsum = 0;
    for (const std::string& leg : {"e1", "e2", "e3", "e4"}) {
      auto it = g.mult.find(leg);
      if (it != g.mult.end()) bsum += it->second;
    }
    CHECK(homogeneous_of(wt) == (3 * 4 + bsum) / 2);
  }

  // Per web: the boundary marks pin the leg multiplicities, so each immanant
  // is homogeneous of the matching degree.
  auto mark_m = [](Color c, BoundaryMark mk) {
    if (c == Color::Black) {
      switch (mk) {
        case BoundaryMark::Unused: return 0;
        case BoundaryMark::Out: return 1;
        case BoundaryMark::In: return 2;
        case BoundaryMark::Tagged: return 3;
      }
    } else {
      switch (mk) {
        case BoundaryMark::Tagged: return 0;
        case BoundaryMark::In: return 1;
        case BoundaryMark::Out: return 2;
        case BoundaryMark::Unused: return 3;
      }
    }
    return -1;
  };
  WebTable t = web_table(net);
  CHECK(t.fd.size() == 50);
  for (const auto& [key, w] : t.webs) {
    int bsum = 0;
    for (int i = 1; i <= 4; ++i) {
      bsum += mark_m(net.boundary_color(i), w.mark(i));
    }
    CHECK_MESSAGE(homogeneous_of(t.fd.at(key)) == (3 * 4 + bsum) / 2,
                  "inhomogeneous immanant for ", key);
  }
}

TEST_CASE("labeled subgraph weights add up to the cube of the matching sum") {
  PlanarNetwork net = load_fixture("c4.net");
  Polynomial total;
  for (const auto& [g, wt] : enumerate_weblike(net)) {
    Web w = web_of(net, g);
    long long labelings = static_cast<long long>(enumerate_labelings(w).size());
    total += wt * Polynomial(labelings);
  }
  Polynomial msum;
  for (const Matching& m : enumerate_matchings(net)) {
    msum += matching_weight(net, m);
  }
  CHECK(total == msum.pow(3));
}

TEST_CASE("triple overlays of matchings") {
  PlanarNetwork net = load_fixture("c4.net");
  Matching legs = {"e1", "e2", "e3", "e4"};

  SUBCASE("three copies of the leg matching: all dipoles") {
    TripleOverlay ov = triple_overlay(net, legs, legs, legs);
    CHECK(ov.graph.key() == "e1^3 e2^3 e3^3 e4^3");
    CHECK(ov.web.tags() == std::set<int>{1, 3});
    CHECK(ov.web.edge_ids().empty());
    CHECK(ov.labeling.edge_label.empty());
    CHECK(ov.labeling.loop_label.empty());
  }

  SUBCASE("two interior matchings against the legs: the full square web") {
    Matching ac = {"a", "c"};
    Matching bd = {"b", "d"};
    TripleOverlay ov = triple_overlay(net, ac, bd, legs);
    CHECK(ov.web.vertex_ids().size() == 4);
    CHECK(ov.web.tags().empty());
    auto at = [](const std::string& v) { return WebEnd::at_vertex(v); };
    auto bnd = [](int i) { return WebEnd::at_boundary(i); };
    CHECK(label_of(ov, at("ne"), at("nw")) == 1);   // a
    CHECK(label_of(ov, at("sw"), at("se")) == 1);   // c
    CHECK(label_of(ov, at("ne"), at("se")) == 2);   // b
    CHECK(label_of(ov, at("sw"), at("nw")) == 2);   // d
    CHECK(label_of(ov, bnd(1), at("nw")) == 3);     // e1
    CHECK(label_of(ov, at("ne"), bnd(2)) == 3);     // e2
    CHECK(label_of(ov, bnd(3), at("se")) == 3);     // e3
    CHECK(label_of(ov, at("sw"), bnd(4)) == 3);     // e4
  }

  SUBCASE("mixed leg-and-interior matchings") {
    Matching p1 = {"a", "e3", "e4"};
    Matching p2 = {"c", "e1", "e2"};
    Matching p3 = {"b", "d"};
    TripleOverlay ov = triple_overlay(net, p1, p2, p3);
    auto at = [](const std::string& v) { return WebEnd::at_vertex(v); };
    auto bnd = [](int i) { return WebEnd::at_boundary(i); };
    CHECK(label_of(ov, at("ne"), at("nw")) == 1);   // a
    CHECK(label_of(ov, bnd(3), at("se")) == 1);     // e3
    CHECK(label_of(ov, at("sw"), bnd(4)) == 1);     // e4
    CHECK(label_of(ov, bnd(1), at("nw")) == 2);     // e1
    CHECK(label_of(ov, at("ne"), bnd(2)) == 2);     // e2
    CHECK(label_of(ov, at("sw"), at("se")) == 2);   // c
    CHECK(label_of(ov, at("ne"), at("se")) == 3);   // b
    CHECK(label_of(ov, at("sw"), at("nw")) == 3);   // d
  }

  SUBCASE("overlay graphs always appear in the enumeration") {
    static std::map<std::string, Polynomial> cache;
    const auto& index = weblike_index(net, cache);
    std::vector<Matching> all = enumerate_matchings(net);
    for (const Matching& p1 : all) {
      for (const Matching& p2 : all) {
        TripleOverlay ov = triple_overlay(net, p1, p2, legs);
        CHECK(index.count(ov.graph.key()) == 1);
      }
    }
  }
}

TEST_CASE("triple products expand over web immanants on the square network") {
  PlanarNetwork net = load_fixture("c4.net");
  WebTable t = web_table(net);
  auto subsets = k_subsets(4, 2);
  REQUIRE(subsets.size() == 6);
  CheckReport all;
  for (const auto& I : subsets) {
    for (const auto& J : subsets) {
      for (const auto& K : subsets) {
        all.merge(verify_triple_identity(net, I, J, K, &t));
      }
    }
  }
  CHECK(all.ok);
  CHECK(all.checks == 216 * 2);
  std::string first = all.failures.empty() ? "" : all.failures[0];
  CHECK_MESSAGE(all.failures.empty(), first);
}

TEST_CASE("triple products expand over web immanants on the lollipop") {
  PlanarNetwork net = load_fixture("lollipop.net");
  CheckReport rep = verify_triple_identity(net, {3, 4}, {3, 4}, {3, 4});
  CHECK(rep.ok);
  CheckReport zero = verify_triple_identity(net, {1, 2}, {3, 4}, {3, 4});
  CHECK(zero.ok);  // all three expressions vanish together
}

TEST_CASE("cyclic rotation permutes the web immanants") {
  PlanarNetwork net = load_fixture("c4.net");
  PlanarNetwork rot = net.cyclic_rotate();
  WebTable t0 = web_table(net);
  WebTable t1 = web_table(rot);
  REQUIRE(t1.fd.size() == t0.fd.size());
  for (const auto& [key, w] : t1.webs) {
    std::string shifted = canonical(shift_plus1(w, net.n()));
    REQUIRE_MESSAGE(t0.fd.count(shifted) == 1, "no counterpart for ", key);
    CHECK(t0.fd.at(shifted) == t1.fd.at(key));
  }
}

TEST_CASE("weblike enumeration of the 3x3 grid") {
  PlanarNetwork net = load_fixture("grid33.net");
  auto all = enumerate_weblike(net);
  CHECK(all.size() > 100);
  std::set<std::string> keys;
  for (const auto& [g, wt] : all) {
    CHECK(!wt.is_zero());
    CHECK(keys.insert(g.key()).second);
    Web w = web_of(net, g);
    CHECK(degree(w) == 9);
  }
}
