// Dimer enumeration and boundary measurement tests against hand-computed
// tables for the small fixture networks, plus the exchange-relation and
// sort-closedness verifiers and an independent brute-force cross-check.
#include <algorithm>
#include <set>

#include "dimerweb/dimer.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace dimerweb;

namespace {

Polynomial P(const std::string& s) { return Polynomial::parse(s); }

// Independent matcher: try all 2^E edge subsets, keep those covering every
// interior vertex exactly once and each boundary vertex at most once.
std::vector<Matching> brute_force_matchings(const PlanarNetwork& net) {
  std::vector<std::string> edges = net.edge_ids();
  std::vector<Matching> out;
  const size_t e = edges.size();
  REQUIRE(e <= 22);  // keep the scan tractable
  for (size_t mask = 0; mask < (size_t{1} << e); ++mask) {
    std::map<std::string, int> cover;
    Matching m;
    for (size_t i = 0; i < e; ++i) {
      if (!(mask >> i & 1)) continue;
      m.push_back(edges[i]);
      ++cover[net.edge(edges[i]).a];
      ++cover[net.edge(edges[i]).b];
    }
    bool ok = true;
    for (const auto& [v, c] : cover)
      if (c > 1) ok = false;
    if (ok)
      for (const auto& v : net.interior_ids())
        if (cover[v] != 1) ok = false;
    if (ok) {
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("four-cycle network: configurations and measurements") {
  PlanarNetwork net = load_fixture("c4.net");
  auto ms = enumerate_matchings(net);
  std::vector<Matching> expect = {
      {"a", "c"},          {"a", "e3", "e4"},  {"b", "d"},
      {"b", "e1", "e4"},   {"c", "e1", "e2"},  {"d", "e2", "e3"},
      {"e1", "e2", "e3", "e4"}};
  std::sort(expect.begin(), expect.end());
  CHECK(ms == expect);

  GrassmannPoint gp = grassmann_point(net);
  CHECK(gp.n == 4);
  CHECK(gp.k == 2);
  CHECK(gp.at({1, 2}) == P("b"));
  CHECK(gp.at({1, 3}) == P("1"));
  CHECK(gp.at({1, 4}) == P("c"));
  CHECK(gp.at({2, 3}) == P("a"));
  CHECK(gp.at({2, 4}) == P("a*c + b*d"));
  CHECK(gp.at({3, 4}) == P("d"));
  CHECK(gp.delta.size() == 6);

  // The three-term exchange identity among the six entries.
  CHECK(gp.at({1, 3}) * gp.at({2, 4}) ==
        gp.at({1, 2}) * gp.at({3, 4}) + gp.at({1, 4}) * gp.at({2, 3}));

  // Antisymmetric view.
  CHECK(plucker_signed(gp, {4, 2}) == -P("a*c + b*d"));
  CHECK(plucker_signed(gp, {3, 1}) == -P("1"));
  CHECK(plucker_signed(gp, {2, 2}).is_zero());

  CheckReport rep = verify_plucker(gp);
  CHECK(rep.ok);
  CHECK(rep.checks == 4 * 4);  // C(4,1) * C(4,3)
}

TEST_CASE("four-cycle matches the brute-force matcher") {
  PlanarNetwork net = load_fixture("c4.net");
  CHECK(enumerate_matchings(net) == brute_force_matchings(net));
}

TEST_CASE("leaf networks pin a single boundary subset") {
  // Two black and two white leaves: only {3,4} is reachable, with weight 1
  // once every pendant edge carries weight one.
  PlanarNetwork lp = load_fixture("lollipop.net");
  GrassmannPoint gp = grassmann_point(lp);
  CHECK(gp.k == 2);
  CHECK(gp.delta.size() == 1);
  CHECK(gp.at({3, 4}) == P("1"));

  GrassmannPoint gp13 = grassmann_point(load_fixture("lollipop13.net"));
  CHECK(gp13.delta.size() == 1);
  CHECK(gp13.at({1, 3}) == P("1"));

  GrassmannPoint gp12 = grassmann_point(load_fixture("lollipop12.net"));
  CHECK(gp12.delta.size() == 1);
  CHECK(gp12.at({1, 2}) == P("1"));
}

TEST_CASE("white leaf raises k and joins every boundary subset") {
  PlanarNetwork net = load_fixture("c4leaf.net");
  CHECK(net.stats().k == 3);
  GrassmannPoint gp = grassmann_point(net);
  CHECK(gp.delta.size() == 3);
  CHECK(gp.at({1, 2, 3}) == P("g"));
  CHECK(gp.at({1, 2, 4}) == P("c*g"));
  CHECK(gp.at({2, 3, 4}) == P("d*g"));
  CHECK(verify_plucker(gp).ok);
  CHECK(sort_closed_check(gp).ok);
}

TEST_CASE("floating dipole scales every measurement") {
  GrassmannPoint base = grassmann_point(load_fixture("c4.net"));
  GrassmannPoint gp = grassmann_point(load_fixture("c4dip.net"));
  CHECK(gp.delta.size() == base.delta.size());
  for (const auto& [I, p] : base.delta) CHECK(gp.at(I) == P("h") * p);
}

TEST_CASE("parallel edges add their weights") {
  GrassmannPoint gp = grassmann_point(load_fixture("c4par.net"));
  CHECK(gp.at({2, 3}) == P("a1 + a2"));
  CHECK(gp.at({1, 2}) == P("b"));
  CHECK(gp.at({2, 4}) == P("a1*c + a2*c + b*d"));
  CHECK(verify_plucker(gp).ok);
}

TEST_CASE("rotating the boundary shifts every measurement cyclically") {
  for (const char* name : {"c4.net", "grid33.net"}) {
    PlanarNetwork net = load_fixture(name);
    GrassmannPoint gp = grassmann_point(net);
    GrassmannPoint rot = grassmann_point(net.cyclic_rotate());
    CHECK(rot.delta.size() == gp.delta.size());
    for (const auto& [I, p] : rot.delta) {
      std::vector<int> J;  // J = I + 1 cyclically, as a sorted set
      for (int x : I) J.push_back(x % net.n() + 1);
      std::sort(J.begin(), J.end());
      CHECK(gp.at(J) == p);
    }
  }
}

TEST_CASE("three-by-three grid: cross-checks and exchange relations") {
  PlanarNetwork net = load_fixture("grid33.net");
  auto ms = enumerate_matchings(net);
  CHECK(ms == brute_force_matchings(net));
  CHECK_FALSE(ms.empty());

  GrassmannPoint gp = grassmann_point(net);
  CHECK(gp.k == net.stats().k);
  CHECK(verify_plucker(gp).ok);
  CHECK(sort_closed_check(gp).ok);

  // Weight sums agree with the raw enumeration under an all-ones evaluation.
  std::map<std::string, Rat> ones;
  for (const auto& e : net.edge_ids())
    for (const auto& v : net.edge(e).weight.variables()) ones[v] = 1;
  Rat total = 0;
  for (const auto& [I, p] : gp.delta) total += p.evaluate(ones);
  CHECK(total == Rat(ms.size()));
}

TEST_CASE("sorted interleaving and min/max of subset pairs") {
  SubsetPair s = sort_pair({1, 4}, {2, 3});
  CHECK(s.first == std::vector<int>{1, 3});
  CHECK(s.second == std::vector<int>{2, 4});
  SubsetPair mm = min_max_pair({1, 4}, {2, 3});
  CHECK(mm.first == std::vector<int>{1, 3});
  CHECK(mm.second == std::vector<int>{2, 4});

  // A pair where the two notions differ.
  SubsetPair s2 = sort_pair({1, 2, 5}, {3, 4, 6});
  CHECK(s2.first == std::vector<int>{1, 3, 5});
  CHECK(s2.second == std::vector<int>{2, 4, 6});
  SubsetPair mm2 = min_max_pair({1, 2, 5}, {3, 4, 6});
  CHECK(mm2.first == std::vector<int>{1, 2, 5});
  CHECK(mm2.second == std::vector<int>{3, 4, 6});

  // Shared elements stay on both sides.
  SubsetPair mm3 = min_max_pair({1, 3}, {2, 3});
  CHECK(mm3.first == std::vector<int>{1, 3});
  CHECK(mm3.second == std::vector<int>{2, 3});
}

TEST_CASE("four-cycle support is sort-closed") {
  GrassmannPoint gp = grassmann_point(load_fixture("c4.net"));
  CHECK(sort_closed_check(gp).ok);
  CHECK(matroid(gp).size() == 6);
}

TEST_CASE("subset generator") {
  CHECK(k_subsets(4, 2).size() == 6);
  CHECK(k_subsets(4, 0) == std::vector<std::vector<int>>{{}});
  CHECK(k_subsets(3, 4).empty());
  auto s = k_subsets(3, 2);
  CHECK(s == std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}});
}
