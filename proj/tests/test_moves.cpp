// Move records and scripts, the six measurement-preserving local moves with
// their exact scale fractions, bridge/lollipop surgery, the bridged-network
// transition tables for boundary measurements, pairing immanants, and web
// immanants, immanant-family rank checks, and tableau counts.
#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dimerweb/moves.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace dimerweb;

namespace {

Polynomial P(const std::string& s) { return Polynomial::parse(s); }

Pairing pr(int k, int n, std::vector<std::pair<int, int>> arcs,
           std::vector<int> tags) {
  return make_pairing(k, n, std::move(arcs), std::move(tags));
}

template <class F>
std::string inapplicable_reason(F f) {
  try {
    f();
  } catch (const InvalidArgument& e) {
    std::string msg = e.what();
    const std::string prefix = "move not applicable: ";
    if (msg.rfind(prefix, 0) == 0) return msg.substr(prefix.size());
    return "[wrong prefix] " + msg;
  }
  return "[no throw]";
}

// A disk with two boundary-attached interior leaves and one interior edge;
// the hub p2 carries a leaf v, and the boundary edge at the hub has a
// symbolic weight.
PlanarNetwork hub_leaf() {
  NetworkBuilder b("hubleaf", 2);
  b.add_interior("p1", Color::White);
  b.add_interior("p2", Color::Black);
  b.add_interior("v", Color::White);
  b.add_edge("e1", "b1", "p1", Polynomial::variable("e1"));
  b.add_edge("e2", "b2", "p2", Polynomial::variable("e2"));
  b.add_edge("g", "p2", "v", Polynomial::variable("g"));
  b.set_rotation("p2", {"e2", "g"});
  return b.build();
}

// Mirror image of the two-lollipop fixture: the boundary subset is {2}, so a
// bridge at 1 makes the measurement table t-dependent.
PlanarNetwork two_lollipop_rev() {
  NetworkBuilder b("two_lollipop_rev", 2);
  b.add_interior("p1", Color::Black);
  b.add_interior("p2", Color::White);
  b.add_edge("e1", "b1", "p1", Polynomial::variable("e1"));
  b.add_edge("e2", "b2", "p2", Polynomial::variable("e2"));
  return b.build();
}

}  // namespace

TEST_CASE("move records parse, print, and reject malformed lines") {
  MoveRecord m = MoveRecord::parse("M1 nw ne se sw iv");
  CHECK(m.kind == MoveRecord::Kind::M1);
  CHECK(m.args == std::vector<std::string>{"nw", "ne", "se", "sw", "iv"});
  CHECK(m.str() == "M1 nw ne se sw iv");
  CHECK(MoveRecord::parse("gauge nw c").str() == "gauge nw c");
  CHECK(MoveRecord::parse("bridge 2 t1").kind == MoveRecord::Kind::Bridge);
  CHECK(MoveRecord::parse("lollipop 3 white").kind ==
        MoveRecord::Kind::Lollipop);

  std::vector<MoveRecord> script = parse_move_script(
      "# comment line\n\nM2 v\n  R1 a1 a2\n# trailing note\n");
  REQUIRE(script.size() == 2);
  CHECK(script[0].str() == "M2 v");
  CHECK(script[1].str() == "R1 a1 a2");

  CHECK_THROWS_AS(MoveRecord::parse(""), ParseError);
  CHECK_THROWS_AS(MoveRecord::parse("M9 x"), ParseError);
}

TEST_CASE("gauge scales the incident edges and divides the measurement") {
  PlanarNetwork c4 = load_fixture("c4");
  MoveResult res = apply_move_ex(c4, MoveRecord::parse("gauge nw c"));
  CHECK(res.alpha == Polynomial(1));
  CHECK(res.alpha_den == P("c"));
  CHECK(res.network.edge("a").weight == P("a*c"));
  CHECK(res.network.edge("d").weight == P("c*d"));
  CHECK(res.network.edge("e1").weight == P("c"));
  CHECK(res.network.edge("b").weight == P("b"));

  MoveInvariance inv = verify_move_invariance(c4, MoveRecord::parse("gauge nw c"));
  CHECK(inv.alpha_den == P("c"));
  CHECK(inv.report.ok);
  CHECK(inv.report.checks == 147);
  CHECK(inv.report.failures.empty());

  CHECK(inapplicable_reason([&] {
          apply_move(c4, MoveRecord::parse("gauge b1 c"));
        }) == "'b1' is not an interior vertex");
  CHECK(inapplicable_reason([&] {
          apply_move(c4, MoveRecord::parse("gauge nw 0"));
        }) == "gauge scale is zero");
}

TEST_CASE("square move inverts the crossed products") {
  PlanarNetwork c4 = load_fixture("c4");

  // Numeric weights: every new side weight is 1/(1*1 + 1*1) = 1/2.
  PlanarNetwork ones = c4.with_weights(
      {{"a", Rat(1)}, {"b", Rat(1)}, {"c", Rat(1)}, {"d", Rat(1)}});
  MoveResult num = apply_move_ex(ones, MoveRecord::parse("M1 nw ne se sw"));
  for (const auto& side : {"a", "b", "c", "d"})
    CHECK(num.network.edge(side).weight == Polynomial(Rat(1, 2)));
  CHECK(num.alpha == Polynomial(2));
  CHECK(num.inverse_var.empty());

  // Symbolic weights require an explicit inverse variable.
  CHECK(inapplicable_reason([&] {
          apply_move(c4, MoveRecord::parse("M1 nw ne se sw"));
        }) == "the crossed products a*c + b*d are not constant; provide an "
              "inverse variable");
  CHECK(inapplicable_reason([&] {
          apply_move(c4, MoveRecord::parse("M1 nw ne se sw a"));
        }) == "inverse variable 'a' already appears in the weights");

  MoveResult res = apply_move_ex(c4, MoveRecord::parse("M1 nw ne se sw iv"));
  CHECK(res.alpha == P("a*c+b*d"));
  CHECK(res.alpha_den == Polynomial(1));
  CHECK(res.inverse_var == "iv");
  CHECK(res.denominator == P("a*c+b*d"));
  CHECK(res.network.edge("a").weight == P("c*iv"));
  CHECK(res.network.edge("b").weight == P("d*iv"));
  CHECK(res.network.edge("c").weight == P("a*iv"));
  CHECK(res.network.edge("d").weight == P("b*iv"));
  // Corner colors flip.
  CHECK(res.network.vertex("nw").color == Color::Black);
  CHECK(res.network.vertex("ne").color == Color::White);

  MoveInvariance inv =
      verify_move_invariance(c4, MoveRecord::parse("M1 nw ne se sw iv"));
  CHECK(inv.alpha == P("a*c+b*d"));
  CHECK(inv.report.ok);
  CHECK(inv.report.checks == 147);

  // The move applies again at the same face.
  MoveInvariance again =
      verify_move_invariance(res.network, MoveRecord::parse("M1 nw ne se sw iv2"), 1);
  CHECK(again.report.ok);

  CHECK(inapplicable_reason([&] {
          apply_move(c4, MoveRecord::parse("M1 nw ne sw se iv"));
        }) == "face corners do not alternate in color");
}

TEST_CASE("bivalent contraction: boundary and interior flavors") {
  // Boundary flavor: contracting the valent-two vertex recovers the plain
  // four-cycle's measurement exactly.
  PlanarNetwork biv = load_fixture("c4biv");
  MoveResult res = apply_move_ex(biv, MoveRecord::parse("M2 v"));
  CHECK(res.alpha == Polynomial(1));
  GrassmannPoint got = grassmann_point(res.network);
  GrassmannPoint want = grassmann_point(load_fixture("c4"));
  for (const auto& I : k_subsets(4, 2)) CHECK(got.at(I) == want.at(I));
  CHECK(res.network.vertex("b1").color == Color::White);  // flipped by the move

  MoveInvariance inv = verify_move_invariance(biv, MoveRecord::parse("M2 v"));
  CHECK(inv.report.ok);
  CHECK(inv.report.checks == 147);

  // Interior flavor: contract a spacer inside a bridged network.
  PlanarNetwork bridged = add_bridge(load_fixture("c4"), 2, "t");
  MoveInvariance spacer =
      verify_move_invariance(bridged, MoveRecord::parse("M2 v"), 3);
  CHECK(spacer.report.ok);
  CHECK(spacer.report.checks == 47);

  // Unequal weights are rejected.
  NetworkBuilder b("path", 2);
  b.add_interior("p1", Color::White);
  b.add_interior("p2", Color::Black);
  b.add_edge("e1", "b1", "p1", Polynomial::variable("e1"));
  b.add_edge("g", "p1", "p2", Polynomial::variable("g"));
  b.add_edge("e2", "b2", "p2", Polynomial::variable("e2"));
  PlanarNetwork path = b.build();
  CHECK(inapplicable_reason([&] {
          apply_move(path, MoveRecord::parse("M2 p1"));
        }) == "the two edges at 'p1' have different weights");
  CHECK(inapplicable_reason([&] {
          apply_move(load_fixture("c4"), MoveRecord::parse("M2 nw"));
        }) == "'nw' is not bivalent");
}

TEST_CASE("parallel merge adds the weights") {
  PlanarNetwork par = load_fixture("c4par");
  MoveResult res = apply_move_ex(par, MoveRecord::parse("R1 a1 a2"));
  CHECK(res.alpha == Polynomial(1));
  CHECK(res.network.edge("a1").weight == P("a1+a2"));
  CHECK(!res.network.has_edge("a2"));

  MoveInvariance inv = verify_move_invariance(par, MoveRecord::parse("R1 a1 a2"));
  CHECK(inv.report.ok);
  CHECK(inv.report.checks == 147);

  CHECK(inapplicable_reason([&] {
          apply_move(par, MoveRecord::parse("R1 a1 b"));
        }) == "'a1' and 'b' are not parallel");
}

TEST_CASE("leaf removal divides by the freed boundary weights") {
  PlanarNetwork leafy = load_fixture("c4leaf");
  MoveResult res = apply_move_ex(leafy, MoveRecord::parse("R2 lf"));
  CHECK(res.alpha == P("g"));
  CHECK(res.alpha_den == Polynomial(1));
  CHECK(!res.network.has_edge("g"));
  CHECK(!res.network.has_edge("a"));  // hub edge to another interior vertex
  CHECK(res.network.has_edge("e2"));  // boundary edge survives, re-hung
  CHECK(res.network.vertex("b2").color == Color::Black);  // was white

  MoveInvariance inv = verify_move_invariance(leafy, MoveRecord::parse("R2 lf"));
  CHECK(inv.alpha == P("g"));
  CHECK(inv.report.ok);
  CHECK(inv.report.checks == 37);

  // Symbolic boundary weight at the hub: the scale is a genuine fraction.
  MoveInvariance frac =
      verify_move_invariance(hub_leaf(), MoveRecord::parse("R2 v"));
  CHECK(frac.alpha == P("g"));
  CHECK(frac.alpha_den == P("e2"));
  CHECK(frac.report.ok);

  CHECK(inapplicable_reason([&] {
          apply_move(load_fixture("two_lollipop"), MoveRecord::parse("R2 p1"));
        }) == "the leaf at 'p1' hangs on a boundary vertex");
  CHECK(inapplicable_reason([&] {
          apply_move(leafy, MoveRecord::parse("R2 nw"));
        }) == "'nw' is not a leaf");
}

TEST_CASE("dipole removal scales by the dipole weight") {
  PlanarNetwork dip = load_fixture("c4dip");
  MoveResult res = apply_move_ex(dip, MoveRecord::parse("R3 h"));
  CHECK(res.alpha == P("h"));
  GrassmannPoint got = grassmann_point(res.network);
  GrassmannPoint want = grassmann_point(load_fixture("c4"));
  for (const auto& I : k_subsets(4, 2)) CHECK(got.at(I) == want.at(I));

  MoveInvariance inv = verify_move_invariance(dip, MoveRecord::parse("R3 h"));
  CHECK(inv.alpha == P("h"));
  CHECK(inv.report.ok);
  CHECK(inv.report.checks == 147);

  CHECK(inapplicable_reason([&] {
          apply_move(dip, MoveRecord::parse("R3 a"));
        }) == "endpoint 'nw' of 'a' has other incident edges");
}

TEST_CASE("bridge construction splices feet into adjacent legs") {
  PlanarNetwork c4 = load_fixture("c4");
  BridgeResult br = add_bridge_ex(c4, 1, "t");
  CHECK(br.bridge_edge == "t");
  CHECK(br.network.edge("t").weight == P("t"));
  CHECK(br.spacers.empty());
  CHECK(br.network.edge(br.lower_i).weight == Polynomial(1));
  CHECK(br.network.edge(br.lower_i1).weight == Polynomial(1));
  CHECK(br.network.stats().k == 2);
  // The feet flip the two boundary colors.
  CHECK(c4.vertex("b1").color == Color::Black);
  CHECK(c4.vertex("b2").color == Color::White);
  CHECK(br.network.vertex("b1").color == Color::White);
  CHECK(br.network.vertex("b2").color == Color::Black);

  // A site whose leg neighbors share the feet's colors needs two spacers.
  CHECK(add_bridge_ex(c4, 2, "t").spacers.size() == 2);
  CHECK(add_bridge_ex(c4, 3, "t").spacers.empty());
  CHECK(add_bridge_ex(load_fixture("lollipop"), 1, "t").spacers.size() == 1);
  CHECK(add_bridge_ex(load_fixture("grid33"), 1, "t").spacers.empty());

  CHECK(inapplicable_reason([&] { add_bridge(c4, 0, "t"); }) ==
        "bridge position must satisfy 1 <= i < n");
  CHECK(inapplicable_reason([&] { add_bridge(c4, 4, "t"); }) ==
        "bridge position must satisfy 1 <= i < n");
  CHECK(inapplicable_reason([&] { add_bridge(c4, 1, "a"); }) ==
        "bridge weight variable 'a' already appears in the weights");
}

TEST_CASE("bridge acts on the measurement by substituting i -> i+1") {
  PlanarNetwork c4 = load_fixture("c4");
  GrassmannPoint before = grassmann_point(c4);
  Polynomial t = Polynomial::variable("t");
  for (int i = 1; i <= 3; ++i) {
    GrassmannPoint after = grassmann_point(add_bridge(c4, i, "t"));
    for (const auto& I : k_subsets(4, 2)) {
      Polynomial want = before.at(I);
      bool has_i = std::count(I.begin(), I.end(), i);
      bool has_i1 = std::count(I.begin(), I.end(), i + 1);
      if (has_i && !has_i1) {
        std::vector<int> J;
        for (int x : I)
          if (x != i) J.push_back(x);
        J.push_back(i + 1);
        std::sort(J.begin(), J.end());
        want += t * before.at(J);
      }
      CHECK(after.at(I) == want);
    }
  }

  // The mirrored two-lollipop gains a t-linear column.
  GrassmannPoint g = grassmann_point(add_bridge(two_lollipop_rev(), 1, "t"));
  CHECK(g.at({1}) == P("e1*e2*t"));
  CHECK(g.at({2}) == P("e1*e2"));
}

TEST_CASE("lollipop insertion shifts boundary labels") {
  PlanarNetwork c4 = load_fixture("c4");
  // White leaf: the new boundary vertex is black and always used, so it
  // belongs to every boundary subset.
  PlanarNetwork up = add_lollipop(c4, 2, Color::White);
  CHECK(up.n() == 5);
  CHECK(up.stats().k == 3);
  GrassmannPoint g = grassmann_point(up);
  GrassmannPoint base = grassmann_point(c4);
  CHECK(g.at({1, 2, 3}) == base.at({1, 2}));
  CHECK(g.at({1, 2, 4}) == base.at({1, 3}));
  CHECK(g.at({1, 2, 5}) == base.at({1, 4}));
  CHECK(g.at({2, 3, 4}) == base.at({2, 3}));
  CHECK(g.at({2, 4, 5}) == base.at({3, 4}));
  CHECK(g.at({1, 3, 4}) == Polynomial());

  // Black leaf: the new boundary vertex is white and always used, so it
  // never belongs to a boundary subset.
  PlanarNetwork down = add_lollipop(c4, 2, Color::Black);
  CHECK(down.stats().k == 2);
  GrassmannPoint h = grassmann_point(down);
  CHECK(h.at({1, 3}) == base.at({1, 2}));
  CHECK(h.at({1, 4}) == base.at({1, 3}));
  CHECK(h.at({3, 4}) == base.at({2, 3}));
  CHECK(h.at({2, 3}) == Polynomial());

  // Insertion at the end keeps existing labels.
  PlanarNetwork end = add_lollipop(c4, 5, Color::White);
  CHECK(grassmann_point(end).at({1, 3, 5}) == base.at({1, 3}));
}

TEST_CASE("bridged pairing immanants follow the eight-case table") {
  for (auto [name, i, checks] :
       std::vector<std::tuple<std::string, int, long long>>{
           {"two_lollipop", 1, 7},
           {"lollipop", 1, 41},
           {"lollipop", 2, 41},
           {"lollipop", 3, 41},
           {"lollipop13", 1, 41},
           {"c4", 1, 41},
           {"c4", 2, 41},
           {"c4", 3, 41}}) {
    CAPTURE(name);
    CAPTURE(i);
    CheckReport rep = verify_bridge_tl(load_fixture(name), i);
    CHECK(rep.ok);
    CHECK(rep.checks == checks);
    CHECK(rep.failures.empty());
  }
}

TEST_CASE("bridged pairing immanants on the grid, where replacement arcs can cross") {
  // At n = 8 some quadratic-case replacement terms have no noncrossing
  // placement (e.g. arcs (3,8),(4,7) with 1 tagged: the (4,7) term) and are
  // dropped; the identities still hold exactly for all 1176 pairings.
  CheckReport rep = verify_bridge_tl(load_fixture("grid33"), 1);
  CHECK(rep.ok);
  CHECK(rep.checks == 2353);
  CHECK(rep.failures.empty());
}

TEST_CASE("the eight transition cases and their census") {
  int i = 1;
  CHECK(bridge_tl_case(pr(2, 4, {{1, 2}}, {3}), i) == 1);
  CHECK(bridge_tl_case(pr(2, 4, {{1, 4}, {2, 3}}, {}), i) == 2);
  CHECK(bridge_tl_case(pr(2, 4, {{1, 3}}, {2}), i) == 3);
  CHECK(bridge_tl_case(pr(2, 4, {{1, 3}}, {4}), i) == 4);
  CHECK(bridge_tl_case(pr(2, 4, {{2, 3}}, {1}), i) == 5);
  CHECK(bridge_tl_case(pr(2, 4, {{2, 3}}, {4}), i) == 6);
  CHECK(bridge_tl_case(pr(2, 4, {}, {3, 4}), i) == 7);
  CHECK(bridge_tl_case(pr(2, 4, {{3, 4}}, {1}), i) == 8);
  CHECK(bridge_tl_case(pr(2, 4, {{3, 4}}, {1}), 3) == 1);

  std::map<int, int> census;
  for (const Pairing& p : enumerate_pairings(2, 4)) ++census[bridge_tl_case(p, 1)];
  CHECK(census == std::map<int, int>{{1, 3}, {2, 1}, {3, 2}, {4, 2},
                                     {5, 2}, {6, 2}, {7, 5}, {8, 3}});
}

TEST_CASE("bridged web immanants restrict along the added-edge case table") {
  for (auto [name, i, checks] :
       std::vector<std::tuple<std::string, int, long long>>{
           {"two_lollipop", 1, 2},
           {"lollipop", 1, 2},
           {"lollipop", 2, 17},
           {"c4", 1, 322},
           {"c4", 2, 107},
           {"c4", 3, 322}}) {
    CAPTURE(name);
    CAPTURE(i);
    CheckReport rep = verify_bridge_web(load_fixture(name), i);
    CHECK(rep.ok);
    CHECK(rep.checks == checks);
    CHECK(rep.failures.empty());
  }
}

TEST_CASE("web restriction profiles, including the pass-through options") {
  // Keys are row*100 + added-edge-mask*10 + bridge multiplicity.
  std::map<int, long long> want{
      {102, 9}, {131, 9}, {201, 7}, {311, 5}, {421, 5}, {511, 3}, {621, 3},
      {712, 6}, {731, 6}, {822, 6}, {831, 6}, {903, 9}, {931, 9}, {932, 9}};
  CHECK(bridge_web_profile_counts(load_fixture("c4"), 1) == want);
  CHECK(bridge_web_profile_counts(load_fixture("c4"), 3) == want);
  // The taggable row (row 9) admits the pure dipole AND both pass-through
  // chains; all three genuinely occur.
  CHECK(want.at(903) > 0);
  CHECK(want.at(931) > 0);
  CHECK(want.at(932) > 0);
  // With valent-two patches in play the row table is not applicable.
  CHECK(bridge_web_profile_counts(load_fixture("c4"), 2).empty());
}

TEST_CASE("immanant families match the product ranks") {
  RankReport d2 = basis_rank_check(load_fixture("c4"), 2);
  CHECK(d2.ok);
  CHECK(d2.ensemble_size == 20);
  CHECK(d2.rank_immanants == 20);
  CHECK(d2.rank_products == 20);

  RankReport d3 = basis_rank_check(load_fixture("c4"), 3);
  CHECK(d3.ok);
  CHECK(d3.ensemble_size == 50);
  CHECK(d3.rank_immanants == 50);
  CHECK(d3.rank_products == 50);

  for (int deg : {2, 3}) {
    RankReport r = basis_rank_check(load_fixture("lollipop"), deg);
    CHECK(r.ok);
    CHECK(r.ensemble_size == 1);
  }

  CHECK_THROWS_AS(basis_rank_check(load_fixture("c4"), 4), InvalidArgument);
}

TEST_CASE("tableau counts match the family cardinalities") {
  CHECK(ssyt_count(1, 2, 2) == 3);
  CHECK(ssyt_count(2, 2, 4) == 20);
  CHECK(ssyt_count(2, 2, 5) == 50);
  CHECK(ssyt_count(3, 2, 6) == 175);
  CHECK(ssyt_count(3, 2, 8) == 1176);
  CHECK(ssyt_count(2, 3, 4) == 50);
}

TEST_CASE("a move script builds the full cell family over the lollipop base") {
  PlanarNetwork cell = apply_script(
      load_fixture("lollipop"),
      parse_move_script("# grow the top cell\nbridge 2 t1\nbridge 1 t2\n"
                        "bridge 3 t3\nbridge 2 t4\n"));
  GrassmannPoint g = grassmann_point(cell);
  CHECK(g.at({1, 2}) == P("t1*t2*t3*t4"));
  CHECK(g.at({1, 3}) == P("t1*t2*t3"));
  CHECK(g.at({1, 4}) == P("t1*t2"));
  CHECK(g.at({2, 3}) == P("t1*t3"));
  CHECK(g.at({2, 4}) == P("t1+t4"));
  CHECK(g.at({3, 4}) == Polynomial(1));
  CHECK(verify_plucker(g).ok);

  // The basis statements hold for the parametrized family: the immanants are
  // polynomials in the bridge parameters of full rank.
  RankReport d2 = basis_rank_check(cell, 2);
  CHECK(d2.ok);
  CHECK(d2.ensemble_size == 20);
  RankReport d3 = basis_rank_check(cell, 3);
  CHECK(d3.ok);
  CHECK(d3.ensemble_size == 50);

  // Scripts may also grow the disk itself.
  PlanarNetwork grown = apply_script(
      load_fixture("two_lollipop"),
      parse_move_script("lollipop 3 white\nbridge 2 tx\n"));
  GrassmannPoint h = grassmann_point(grown);
  CHECK(h.at({1, 2}) == P("e1*e2*tx"));
  CHECK(h.at({1, 3}) == P("e1*e2"));
  CHECK(h.at({2, 3}) == Polynomial());
}

TEST_CASE("move invariance rejects the measurement-changing surgeries") {
  CHECK_THROWS_AS(verify_move_invariance(load_fixture("c4"),
                                         MoveRecord::parse("bridge 1 t")),
                  InvalidArgument);
  CHECK_THROWS_AS(verify_move_invariance(load_fixture("c4"),
                                         MoveRecord::parse("lollipop 1 white")),
                  InvalidArgument);
}
