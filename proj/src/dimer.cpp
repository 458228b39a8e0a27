#include "dimerweb/dimer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dimerweb {

void CheckReport::note(bool pass, const std::string& what) {
  ++checks;
  if (!pass) {
    ok = false;
    if (failures.size() < 20) failures.push_back(what);
  }
}

void CheckReport::merge(const CheckReport& other) {
  ok = ok && other.ok;
  checks += other.checks;
  for (const auto& f : other.failures)
    if (failures.size() < 20) failures.push_back(f);
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    int need = k - static_cast<int>(cur.size());
    for (int v = next; v <= n - need + 1; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

namespace {

struct MatchState {
  const PlanarNetwork* net;
  std::vector<std::string> interiors;                    // sorted
  std::map<std::string, std::vector<std::string>> inc;   // sorted incident ids
  std::set<std::string> covered;
  std::vector<std::string> chosen;
  std::vector<Matching> out;

  void run(size_t idx) {
    while (idx < interiors.size() && covered.count(interiors[idx])) ++idx;
    if (idx == interiors.size()) {
      Matching m = chosen;
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      return;
    }
    const std::string& v = interiors[idx];
    for (const std::string& eid : inc.at(v)) {
      const std::string w = net->other_end(eid, v);
      if (covered.count(w)) continue;
      covered.insert(v);
      covered.insert(w);
      chosen.push_back(eid);
      run(idx + 1);
      chosen.pop_back();
      covered.erase(v);
      covered.erase(w);
    }
  }
};

}  // namespace

std::vector<Matching> enumerate_matchings(const PlanarNetwork& net) {
  MatchState st;
  st.net = &net;
  st.interiors = net.interior_ids();
  for (const auto& id : st.interiors) {
    std::vector<std::string> inc = net.vertex(id).rot;
    std::sort(inc.begin(), inc.end());
    st.inc[id] = std::move(inc);
  }
  st.run(0);
  std::sort(st.out.begin(), st.out.end());
  return st.out;
}

std::vector<int> boundary_subset(const PlanarNetwork& net, const Matching& m) {
  std::set<std::string> covered;
  for (const auto& eid : m) {
    covered.insert(net.edge(eid).a);
    covered.insert(net.edge(eid).b);
  }
  std::vector<int> out;
  for (int i = 1; i <= net.n(); ++i) {
    bool used = covered.count(PlanarNetwork::boundary_id(i)) > 0;
    Color c = net.boundary_color(i);
    if ((c == Color::Black && used) || (c == Color::White && !used))
      out.push_back(i);
  }
  return out;
}

Polynomial matching_weight(const PlanarNetwork& net, const Matching& m) {
  Polynomial w(1);
  for (const auto& eid : m) w *= net.edge(eid).weight;
  return w;
}

const Polynomial& GrassmannPoint::at(const std::vector<int>& I) const {
  static const Polynomial kZero;
  auto it = delta.find(I);
  return it == delta.end() ? kZero : it->second;
}

GrassmannPoint grassmann_point(const PlanarNetwork& net) {
  GrassmannPoint gp;
  gp.n = net.n();
  gp.k = net.stats().k;
  auto matchings = enumerate_matchings(net);
  if (matchings.empty())
    throw Error("network '" + net.name() + "' has no dimer configurations");
  for (const auto& m : matchings) {
    std::vector<int> I = boundary_subset(net, m);
    if (static_cast<int>(I.size()) != gp.k) {
      std::ostringstream os;
      os << "boundary subset size " << I.size() << " does not match k=" << gp.k
         << " for a configuration of '" << net.name() << "'";
      throw Error(os.str());
    }
    gp.delta[I] += matching_weight(net, m);
  }
  // Drop exact zeros (possible only under zero weight substitutions).
  for (auto it = gp.delta.begin(); it != gp.delta.end();)
    it = it->second.is_zero() ? gp.delta.erase(it) : std::next(it);
  return gp;
}

Polynomial plucker_signed(const GrassmannPoint& gp,
                          const std::vector<int>& seq) {
  std::vector<int> s = seq;
  int sign = 1;
  // Insertion sort, counting transpositions.
  for (size_t i = 1; i < s.size(); ++i)
    for (size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1]) return Polynomial();
  Polynomial v = gp.at(s);
  return sign == 1 ? v : -v;
}

std::vector<std::vector<int>> matroid(const GrassmannPoint& gp) {
  std::vector<std::vector<int>> out;
  for (const auto& [I, p] : gp.delta) out.push_back(I);
  return out;
}

CheckReport verify_plucker(const GrassmannPoint& gp) {
  CheckReport rep;
  for (const auto& A : k_subsets(gp.n, gp.k - 1)) {
    for (const auto& B : k_subsets(gp.n, gp.k + 1)) {
      Polynomial sum;
      for (size_t r = 0; r < B.size(); ++r) {
        std::vector<int> left = A;
        left.push_back(B[r]);
        std::vector<int> right;
        for (size_t t = 0; t < B.size(); ++t)
          if (t != r) right.push_back(B[t]);
        Polynomial term = plucker_signed(gp, left) * gp.at(right);
        if (r % 2) term = -term;
        sum += term;
      }
      std::ostringstream os;
      if (!sum.is_zero()) {
        os << "exchange relation fails for rows {";
        for (int x : A) os << x << " ";
        os << "} columns {";
        for (int x : B) os << x << " ";
        os << "}: " << sum.str();
      }
      rep.note(sum.is_zero(), os.str());
    }
  }
  return rep;
}

SubsetPair sort_pair(const std::vector<int>& I, const std::vector<int>& J) {
  std::vector<int> all;
  all.insert(all.end(), I.begin(), I.end());
  all.insert(all.end(), J.begin(), J.end());
  std::sort(all.begin(), all.end());
  SubsetPair out;
  for (size_t i = 0; i < all.size(); ++i)
    (i % 2 ? out.second : out.first).push_back(all[i]);
  return out;
}

SubsetPair min_max_pair(const std::vector<int>& I, const std::vector<int>& J) {
  std::vector<int> common, di, dj;
  std::set_intersection(I.begin(), I.end(), J.begin(), J.end(),
                        std::back_inserter(common));
  std::set_difference(I.begin(), I.end(), J.begin(), J.end(),
                      std::back_inserter(di));
  std::set_difference(J.begin(), J.end(), I.begin(), I.end(),
                      std::back_inserter(dj));
  SubsetPair out;
  out.first = common;
  out.second = common;
  for (size_t r = 0; r < di.size(); ++r) {
    out.first.push_back(std::min(di[r], dj[r]));
    out.second.push_back(std::max(di[r], dj[r]));
  }
  std::sort(out.first.begin(), out.first.end());
  std::sort(out.second.begin(), out.second.end());
  return out;
}

CheckReport sort_closed_check(const GrassmannPoint& gp) {
  CheckReport rep;
  auto supp = matroid(gp);
  std::set<std::vector<int>> in(supp.begin(), supp.end());
  for (const auto& I : supp) {
    for (const auto& J : supp) {
      SubsetPair s = sort_pair(I, J);
      bool pass = in.count(s.first) && in.count(s.second);
      std::ostringstream os;
      if (!pass) {
        os << "support not sort-closed at {";
        for (int x : I) os << x << " ";
        os << "} {";
        for (int x : J) os << x << " ";
        os << "}";
      }
      rep.note(pass, os.str());
    }
  }
  return rep;
}

}  // namespace dimerweb
