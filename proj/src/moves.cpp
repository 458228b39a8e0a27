#include "dimerweb/moves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dimerweb/errors.hpp"

namespace dimerweb {

namespace {

[[noreturn]] void inapplicable(const std::string& why) {
  throw InvalidArgument("move not applicable: " + why);
}

const char* kind_word(MoveRecord::Kind k) {
  switch (k) {
    case MoveRecord::Kind::Gauge: return "gauge";
    case MoveRecord::Kind::M1: return "M1";
    case MoveRecord::Kind::M2: return "M2";
    case MoveRecord::Kind::R1: return "R1";
    case MoveRecord::Kind::R2: return "R2";
    case MoveRecord::Kind::R3: return "R3";
    case MoveRecord::Kind::Bridge: return "bridge";
    case MoveRecord::Kind::Lollipop: return "lollipop";
  }
  return "?";
}

// Rebuilds the network into a fresh builder, flipping the colors of the
// listed interior vertices.
NetworkBuilder rebuilt(const PlanarNetwork& net,
                       const std::set<std::string>& flip) {
  NetworkBuilder b(net.name(), net.n());
  for (const auto& id : net.interior_ids()) {
    Color c = net.vertex(id).color;
    b.add_interior(id, flip.count(id) ? opposite(c) : c);
  }
  for (const auto& eid : net.edge_ids()) {
    const EdgeRec& e = net.edge(eid);
    b.add_edge(eid, e.a, e.b, e.weight);
  }
  for (const auto& id : net.interior_ids())
    b.set_rotation(id, net.vertex(id).rot);
  return b;
}

std::map<std::string, std::vector<std::string>> incidence_map(
    const PlanarNetwork& net) {
  std::map<std::string, std::vector<std::string>> inc;
  for (const auto& eid : net.edge_ids()) {
    const EdgeRec& e = net.edge(eid);
    inc[e.a].push_back(eid);
    inc[e.b].push_back(eid);
  }
  return inc;
}

int parse_index(const std::string& tok, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer " + what + ", got '" + tok + "'");
  }
}

void need_interior(const PlanarNetwork& net, const std::string& id) {
  if (!net.has_vertex(id) || net.vertex(id).boundary)
    inapplicable("'" + id + "' is not an interior vertex");
}

std::set<std::string> weight_variables(const PlanarNetwork& net) {
  std::set<std::string> vars;
  for (const auto& eid : net.edge_ids())
    for (const auto& v : net.edge(eid).weight.variables()) vars.insert(v);
  return vars;
}

std::string fresh_weight_variable(const PlanarNetwork& net,
                                  const std::string& stem) {
  std::set<std::string> used = weight_variables(net);
  if (!used.count(stem)) return stem;
  for (int i = 2;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Individual moves.

MoveResult do_gauge(const PlanarNetwork& net, const MoveRecord& m) {
  if (m.args.size() != 2)
    inapplicable("gauge needs a vertex and a scale");
  const std::string& v = m.args[0];
  need_interior(net, v);
  Polynomial scale = Polynomial::parse(m.args[1]);
  if (scale.is_zero()) inapplicable("gauge scale is zero");
  NetworkBuilder b = NetworkBuilder::from(net);
  for (const auto& eid : net.edge_ids()) {
    const EdgeRec& e = net.edge(eid);
    if (e.a == v || e.b == v) b.edge(eid).weight *= scale;
  }
  return MoveResult{b.build(), Polynomial(1), scale, "", Polynomial(1)};
}

MoveResult do_square(const PlanarNetwork& net, const MoveRecord& m) {
  if (m.args.size() != 4 && m.args.size() != 5)
    inapplicable("M1 needs four face corners and optionally an inverse name");
  std::vector<std::string> corner(m.args.begin(), m.args.begin() + 4);
  std::set<std::string> uniq(corner.begin(), corner.end());
  if (uniq.size() != 4) inapplicable("M1 corners are not distinct");
  for (const auto& v : corner) need_interior(net, v);
  Color c0 = net.vertex(corner[0]).color;
  for (int j = 0; j < 4; ++j) {
    Color want = j % 2 == 0 ? c0 : opposite(c0);
    if (net.vertex(corner[j]).color != want)
      inapplicable("face corners do not alternate in color");
  }

  auto inc = incidence_map(net);
  std::vector<std::string> side(4);
  for (int j = 0; j < 4; ++j) {
    const std::string &x = corner[j], &y = corner[(j + 1) % 4];
    std::vector<std::string> found;
    for (const auto& eid : inc[x]) {
      const EdgeRec& e = net.edge(eid);
      if (net.other_end(eid, x) == y) found.push_back(eid);
    }
    if (found.empty())
      inapplicable("no edge between corners '" + x + "' and '" + y + "'");
    if (found.size() > 1)
      inapplicable("parallel edges between corners '" + x + "' and '" + y +
                   "'; merge them first");
    side[j] = found[0];
  }

  std::set<std::string> sideset(side.begin(), side.end());
  bool face_found = false;
  for (const Face& f : net.faces()) {
    if (f.darts.size() != 4) continue;
    std::set<std::string> fe;
    for (const Dart& d : f.darts) fe.insert(d.edge);
    if (fe == sideset) face_found = true;
  }
  if (!face_found) inapplicable("the four sides do not bound a face");

  for (const auto& v : corner)
    for (const auto& eid : inc[v]) {
      if (sideset.count(eid)) continue;
      const std::string other = net.other_end(eid, v);
      if (!net.vertex(other).boundary)
        inapplicable("corner '" + v +
                     "' has an interior neighbor outside the face; insert "
                     "valent-two vertices first");
    }

  Polynomial a = net.edge(side[0]).weight, bw = net.edge(side[1]).weight,
             c = net.edge(side[2]).weight, d = net.edge(side[3]).weight;
  Polynomial den = a * c + bw * d;
  if (den.is_zero()) inapplicable("ac+bd vanishes on this face");

  Polynomial inv;
  std::string inv_name;
  if (den.total_degree() == 0) {
    inv = Polynomial(Rat(1) / den.terms().begin()->second);
  } else {
    if (m.args.size() != 5)
      inapplicable(
          "face weights are symbolic and no inverse variable was provided");
    inv_name = m.args[4];
    if (weight_variables(net).count(inv_name))
      inapplicable("inverse variable '" + inv_name +
                   "' already appears in a weight");
    inv = Polynomial::variable(inv_name);
  }

  NetworkBuilder b = rebuilt(net, uniq);
  Polynomial old[4] = {a, bw, c, d};
  for (int j = 0; j < 4; ++j) b.edge(side[j]).weight = old[(j + 2) % 4] * inv;
  return MoveResult{b.build(), den, Polynomial(1), inv_name, den};
}

MoveResult do_contract(const PlanarNetwork& net, const MoveRecord& m) {
  if (m.args.size() != 1) inapplicable("M2 needs one vertex");
  const std::string& v = m.args[0];
  need_interior(net, v);
  auto inc = incidence_map(net);
  if (inc[v].size() != 2)
    inapplicable("vertex '" + v + "' is not bivalent (degree " +
                 std::to_string(inc[v].size()) + ")");
  std::string g = inc[v][0], h = inc[v][1];
  std::string x = net.other_end(g, v), y = net.other_end(h, v);
  if (x == y)
    inapplicable("both edges at '" + v +
                 "' are parallel; merge them instead of contracting");
  Polynomial w = net.edge(g).weight;
  if (net.edge(h).weight != w)
    inapplicable("the two edges at '" + v +
                 "' carry different weights; gauge them equal first");
  bool xb = net.vertex(x).boundary, yb = net.vertex(y).boundary;
  if (xb && yb)
    inapplicable("contraction at '" + v +
                 "' would join two boundary vertices");
  if (xb) {  // keep the naming below uniform: x interior, y arbitrary
    std::swap(x, y);
    std::swap(g, h);
    std::swap(xb, yb);
  }

  NetworkBuilder b = NetworkBuilder::from(net);
  if (yb) {
    // Boundary contraction: the path y(boundary) -- v -- x becomes a single
    // weight-one edge keeping g's id, and y's derived color flips.
    EdgeRec& ge = b.edge(g);
    (ge.a == v ? ge.a : ge.b) = y;
    ge.weight = Polynomial(1);
    b.remove_edge(h);
    b.remove_interior(v);
  } else {
    // Interior contraction: y's other edges migrate to x, spliced into x's
    // rotation where g used to sit, preserving the clockwise order around
    // the merged vertex.
    std::vector<std::string> yrot = net.vertex(y).rot;
    auto hit = std::find(yrot.begin(), yrot.end(), h);
    std::vector<std::string> splice;
    for (size_t s = 1; s < yrot.size(); ++s)
      splice.push_back(yrot[(hit - yrot.begin() + s) % yrot.size()]);
    std::vector<std::string> xrot;
    for (const auto& eid : net.vertex(x).rot) {
      if (eid == g)
        xrot.insert(xrot.end(), splice.begin(), splice.end());
      else
        xrot.push_back(eid);
    }
    for (const auto& eid : splice) {
      EdgeRec& e = b.edge(eid);
      (e.a == y ? e.a : e.b) = x;
    }
    b.remove_edge(g);
    b.remove_edge(h);
    b.set_rotation(x, xrot);
    b.clear_rotation(y);
    b.remove_interior(v);
    b.remove_interior(y);
  }
  return MoveResult{b.build(), w, Polynomial(1), "", Polynomial(1)};
}

MoveResult do_merge_parallel(const PlanarNetwork& net, const MoveRecord& m) {
  if (m.args.size() != 2) inapplicable("R1 needs two edges");
  const std::string &e1 = m.args[0], &e2 = m.args[1];
  if (e1 == e2) inapplicable("R1 needs two distinct edges");
  const auto ids = net.edge_ids();
  for (const auto& eid : {e1, e2})
    if (std::find(ids.begin(), ids.end(), eid) == ids.end())
      inapplicable("unknown edge '" + eid + "'");
  const EdgeRec &a = net.edge(e1), &b2 = net.edge(e2);
  if (!((a.a == b2.a && a.b == b2.b) || (a.a == b2.b && a.b == b2.a)))
    inapplicable("edges '" + e1 + "' and '" + e2 + "' are not parallel");
  NetworkBuilder b = NetworkBuilder::from(net);
  b.edge(e1).weight += b2.weight;
  b.remove_edge(e2);
  return MoveResult{b.build(), Polynomial(1), Polynomial(1), "", Polynomial(1)};
}

MoveResult do_remove_leaf(const PlanarNetwork& net, const MoveRecord& m) {
  if (m.args.size() != 1) inapplicable("R2 needs one vertex");
  const std::string& v = m.args[0];
  need_interior(net, v);
  auto inc = incidence_map(net);
  if (inc[v].size() != 1)
    inapplicable("vertex '" + v + "' is not a leaf");
  const std::string g = inc[v][0];
  const std::string u = net.other_end(g, v);
  if (net.vertex(u).boundary)
    inapplicable("the leaf at '" + v + "' hangs on a boundary vertex");
  Polynomial alpha = net.edge(g).weight;
  Color leaf_color = net.vertex(v).color;

  NetworkBuilder b = NetworkBuilder::from(net);
  b.remove_edge(g);
  Polynomial denom(1);
  for (const auto& eid : inc[u]) {
    if (eid == g) continue;
    const std::string z = net.other_end(eid, u);
    if (net.vertex(z).boundary) {
      denom *= net.edge(eid).weight;
      std::string w = b.fresh_vertex_id("r");
      b.add_interior(w, leaf_color);
      EdgeRec& e = b.edge(eid);
      (e.a == u ? e.a : e.b) = w;
    } else {
      b.remove_edge(eid);
    }
  }
  b.clear_rotation(u);
  b.remove_interior(u);
  b.remove_interior(v);
  return MoveResult{b.build(), alpha, denom, "", Polynomial(1)};
}

MoveResult do_remove_dipole(const PlanarNetwork& net, const MoveRecord& m) {
  if (m.args.size() != 1) inapplicable("R3 needs one edge");
  const std::string& eid = m.args[0];
  const auto ids = net.edge_ids();
  if (std::find(ids.begin(), ids.end(), eid) == ids.end())
    inapplicable("unknown edge '" + eid + "'");
  const EdgeRec& e = net.edge(eid);
  for (const auto& end : {e.a, e.b}) {
    if (net.vertex(end).boundary)
      inapplicable("edge '" + eid + "' touches the boundary");
    if (net.degree(end) != 1)
      inapplicable("endpoint '" + end + "' of '" + eid +
                   "' has other incident edges");
  }
  NetworkBuilder b = NetworkBuilder::from(net);
  Polynomial alpha = e.weight;
  std::string va = e.a, vb = e.b;
  b.remove_edge(eid);
  b.remove_interior(va);
  b.remove_interior(vb);
  return MoveResult{b.build(), alpha, Polynomial(1), "", Polynomial(1)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Records and dispatch.

MoveRecord MoveRecord::parse(const std::string& line) {
  std::istringstream in(line);
  std::string tok;
  MoveRecord rec;
  if (!(in >> tok)) throw ParseError("empty move line");
  static const std::map<std::string, Kind> kinds = {
      {"gauge", Kind::Gauge}, {"M1", Kind::M1},         {"M2", Kind::M2},
      {"R1", Kind::R1},       {"R2", Kind::R2},         {"R3", Kind::R3},
      {"bridge", Kind::Bridge}, {"lollipop", Kind::Lollipop}};
  auto it = kinds.find(tok);
  if (it == kinds.end()) throw ParseError("unknown move kind '" + tok + "'");
  rec.kind = it->second;
  while (in >> tok) rec.args.push_back(tok);
  return rec;
}

std::string MoveRecord::str() const {
  std::string out = kind_word(kind);
  for (const auto& a : args) out += " " + a;
  return out;
}

std::vector<MoveRecord> parse_move_script(const std::string& text) {
  std::vector<MoveRecord> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(MoveRecord::parse(line));
  }
  return out;
}

MoveResult apply_move_ex(const PlanarNetwork& net, const MoveRecord& m) {
  switch (m.kind) {
    case MoveRecord::Kind::Gauge: return do_gauge(net, m);
    case MoveRecord::Kind::M1: return do_square(net, m);
    case MoveRecord::Kind::M2: return do_contract(net, m);
    case MoveRecord::Kind::R1: return do_merge_parallel(net, m);
    case MoveRecord::Kind::R2: return do_remove_leaf(net, m);
    case MoveRecord::Kind::R3: return do_remove_dipole(net, m);
    case MoveRecord::Kind::Bridge: {
      if (m.args.size() != 2) inapplicable("bridge needs a position and a variable");
      int i = parse_index(m.args[0], "boundary position");
      return MoveResult{add_bridge(net, i, m.args[1]), Polynomial(1),
                        Polynomial(1), "",
                        Polynomial(1)};
    }
    case MoveRecord::Kind::Lollipop: {
      if (m.args.size() != 2) inapplicable("lollipop needs a position and a color");
      int i = parse_index(m.args[0], "boundary position");
      Color c;
      if (m.args[1] == "black") c = Color::Black;
      else if (m.args[1] == "white") c = Color::White;
      else inapplicable("lollipop color must be black or white");
      return MoveResult{add_lollipop(net, i, c), Polynomial(1),
                        Polynomial(1), "",
                        Polynomial(1)};
    }
  }
  throw InvalidArgument("unknown move kind");
}

PlanarNetwork apply_move(const PlanarNetwork& net, const MoveRecord& m) {
  return apply_move_ex(net, m).network;
}

PlanarNetwork apply_script(const PlanarNetwork& net,
                           const std::vector<MoveRecord>& moves) {
  PlanarNetwork cur = net;
  for (const auto& m : moves) cur = apply_move(cur, m);
  return cur;
}

// ---------------------------------------------------------------------------
// Bridges and lollipops.

BridgeResult add_bridge_ex(const PlanarNetwork& net, int i,
                           const std::string& var) {
  if (i < 1 || i >= net.n())
    throw InvalidArgument("bridge position " + std::to_string(i) +
                          " out of range 1.." + std::to_string(net.n() - 1));
  if (weight_variables(net).count(var))
    throw InvalidArgument("bridge weight variable '" + var +
                          "' already appears in the network");
  NetworkBuilder b = NetworkBuilder::from(net);
  std::vector<std::string> spacers;

  struct Spliced {
    std::string mid, upper, lower;
  };
  // Splices a new vertex of the given color into the leg of boundary
  // position `pos`.
  auto splice = [&](int pos, Color color, const char* stem) -> Spliced {
    const VertexRec& bv = net.boundary(pos);
    const std::string leg = bv.rot.at(0);
    const std::string up = net.other_end(leg, bv.id);
    Spliced s;
    s.mid = b.fresh_vertex_id(stem);
    b.add_interior(s.mid, color);
    if (net.vertex(up).color == color) {
      // Same color above: keep the old leg attached to `up` through a
      // valent-two patch vertex of the opposite color.
      std::string pad = b.fresh_vertex_id("v");
      b.add_interior(pad, opposite(color));
      EdgeRec& e = b.edge(leg);
      (e.a == bv.id ? e.a : e.b) = pad;
      s.upper = b.fresh_edge_id("s");
      b.add_edge(s.upper, pad, s.mid, Polynomial(1));
      spacers.push_back(s.upper);
    } else {
      EdgeRec& e = b.edge(leg);
      (e.a == bv.id ? e.a : e.b) = s.mid;
      s.upper = leg;
    }
    s.lower = b.fresh_edge_id("l");
    b.add_edge(s.lower, bv.id, s.mid, Polynomial(1));
    return s;
  };

  Spliced at_i = splice(i, Color::Black, "x");
  Spliced at_i1 = splice(i + 1, Color::White, "w");
  std::string bridge = b.fresh_edge_id(var);
  b.add_edge(bridge, at_i.mid, at_i1.mid, Polynomial::variable(var));
  // Clockwise orders around the new trivalent vertices (boundary labels grow
  // clockwise, so the bridge leaves leg i toward leg i+1 between the upward
  // and downward edges).
  b.set_rotation(at_i.mid, {at_i.upper, at_i.lower, bridge});
  b.set_rotation(at_i1.mid, {at_i1.upper, bridge, at_i1.lower});

  BridgeResult res{b.build(), bridge, at_i.lower, at_i1.lower, spacers};
  return res;
}

PlanarNetwork add_bridge(const PlanarNetwork& net, int i,
                         const std::string& var) {
  return add_bridge_ex(net, i, var).network;
}

PlanarNetwork add_lollipop(const PlanarNetwork& net, int i, Color leaf_color) {
  int n = net.n();
  if (i < 1 || i > n + 1)
    throw InvalidArgument("lollipop position " + std::to_string(i) +
                          " out of range 1.." + std::to_string(n + 1));
  NetworkBuilder b(net.name(), n + 1);
  for (const auto& id : net.interior_ids())
    b.add_interior(id, net.vertex(id).color);
  auto shift = [&](const std::string& end) -> std::string {
    for (int j = 1; j <= n; ++j)
      if (end == PlanarNetwork::boundary_id(j))
        return PlanarNetwork::boundary_id(j < i ? j : j + 1);
    return end;
  };
  for (const auto& eid : net.edge_ids()) {
    const EdgeRec& e = net.edge(eid);
    b.add_edge(eid, shift(e.a), shift(e.b), e.weight);
  }
  for (const auto& id : net.interior_ids())
    b.set_rotation(id, net.vertex(id).rot);
  std::string leaf = b.fresh_vertex_id("q");
  b.add_interior(leaf, leaf_color);
  b.add_edge(b.fresh_edge_id("lp"), PlanarNetwork::boundary_id(i), leaf,
             Polynomial(1));
  return b.build();
}

// ---------------------------------------------------------------------------
// Invariance certification.

Polynomial coeff_of_power(const Polynomial& p, const std::string& var, int j) {
  Polynomial out;
  for (const auto& [mono, coef] : p.terms()) {
    if (mono.exponent_of(var) != j) continue;
    Monomial stripped;
    for (const auto& [name, exp] : mono.exponents())
      if (name != var) stripped = stripped * Monomial::variable(name, exp);
    out += Polynomial::term(coef, stripped);
  }
  return out;
}

namespace {

// Checks lhs * alpha_den^power == alpha^power * rhs, where rhs may mention
// inverse_var standing for 1/denominator.  Clears denominators and certifies
// the resulting polynomial identity by evaluating the difference of the
// cleared sides on an integer grid sized by their per-variable degrees.
void check_scaled(CheckReport& rep, const std::string& label,
                  const Polynomial& lhs, const Polynomial& rhs, int power,
                  const Polynomial& alpha, const Polynomial& alpha_den,
                  const std::string& inverse_var,
                  const Polynomial& denominator) {
  int J = inverse_var.empty() ? 0 : rhs.degree_in(inverse_var);
  Polynomial L =
      lhs * alpha_den.pow(static_cast<unsigned>(power)) * denominator.pow(J);
  Polynomial R;
  if (J == 0) {
    R = rhs;
  } else {
    for (int j = 0; j <= J; ++j)
      R += coeff_of_power(rhs, inverse_var, j) *
           denominator.pow(static_cast<unsigned>(J - j));
  }
  R = alpha.pow(static_cast<unsigned>(power)) * R;

  std::set<std::string> vars;
  for (const auto& v : L.variables()) vars.insert(v);
  for (const auto& v : R.variables()) vars.insert(v);
  if (!inverse_var.empty() && vars.count(inverse_var)) {
    rep.note(false, label + ": inverse variable survived clearing");
    return;
  }

  Polynomial diff = L - R;
  if (diff.is_zero()) {
    rep.note(true, label);
    return;
  }
  std::vector<std::string> vlist(vars.begin(), vars.end());
  std::vector<int> size;
  long long points = 1;
  for (const auto& v : vlist) {
    int bound = std::max(L.degree_in(v), R.degree_in(v)) + 1;
    size.push_back(bound);
    points *= bound;
    if (points > 50000000) {
      rep.note(false, label + ": certification grid too large");
      return;
    }
  }
  std::map<std::string, Rat> point;
  for (const auto& v : vlist) point[v] = 1;
  std::vector<int> idx(vlist.size(), 0);
  bool ok = true;
  std::string witness;
  long long total = points == 0 ? 1 : points;
  for (long long step = 0; step < total && ok; ++step) {
    if (!diff.evaluate(point).is_zero()) {
      ok = false;
      witness = " at";
      for (const auto& v : vlist)
        witness += " " + v + "=" + rat_str(point.at(v));
    }
    for (size_t d = 0; d < idx.size(); ++d) {
      if (++idx[d] < size[d]) {
        point[vlist[d]] = idx[d] + 1;
        break;
      }
      idx[d] = 0;
      point[vlist[d]] = 1;
    }
  }
  rep.note(ok, label + ": scaling identity failed" + witness);
}

}  // namespace

MoveInvariance verify_move_invariance(const PlanarNetwork& net,
                                      const MoveRecord& move, int levels) {
  if (move.kind == MoveRecord::Kind::Bridge ||
      move.kind == MoveRecord::Kind::Lollipop)
    throw InvalidArgument(
        "bridge and lollipop change the measurement; use the transition "
        "checks instead");
  MoveResult res = apply_move_ex(net, move);
  MoveInvariance out;
  out.alpha = res.alpha;
  out.alpha_den = res.alpha_den;
  CheckReport& rep = out.report;

  GrassmannPoint gp = grassmann_point(net);
  GrassmannPoint gq = grassmann_point(res.network);
  rep.note(gp.k == gq.k && gp.n == gq.n,
           "boundary-subset size changed: k " + std::to_string(gp.k) + " -> " +
               std::to_string(gq.k));
  if (gp.k != gq.k || gp.n != gq.n) return out;

  if (levels & 1) {
    for (const auto& I : k_subsets(gp.n, gp.k)) {
      std::string label = "Delta_{";
      for (size_t j = 0; j < I.size(); ++j)
        label += (j ? "," : "") + std::to_string(I[j]);
      label += "}";
      check_scaled(rep, label, gp.at(I), gq.at(I), 1, res.alpha,
                   res.alpha_den, res.inverse_var, res.denominator);
    }
  }

  if (levels & 2) {
    auto t1 = tl_immanant_table(net);
    auto t2 = tl_immanant_table(res.network);
    std::set<Pairing> keys;
    for (const auto& [p, f] : t1) keys.insert(p);
    for (const auto& [p, f] : t2) keys.insert(p);
    for (const auto& p : keys) {
      bool in1 = t1.count(p), in2 = t2.count(p);
      rep.note(in1 == in2, "pairing ensemble changed at " + p.str());
      Polynomial f1 = in1 ? t1.at(p) : Polynomial();
      Polynomial f2 = in2 ? t2.at(p) : Polynomial();
      check_scaled(rep, "F_{" + p.str() + "}", f1, f2, 2, res.alpha,
                   res.alpha_den, res.inverse_var, res.denominator);
    }
  }

  if (levels & 4) {
    WebTable w1 = web_table(net);
    WebTable w2 = web_table(res.network);
    std::set<std::string> keys;
    for (const auto& [k, f] : w1.fd) keys.insert(k);
    for (const auto& [k, f] : w2.fd) keys.insert(k);
    for (const auto& key : keys) {
      bool in1 = w1.fd.count(key), in2 = w2.fd.count(key);
      rep.note(in1 == in2, "web ensemble changed at " + key);
      Polynomial f1 = in1 ? w1.fd.at(key) : Polynomial();
      Polynomial f2 = in2 ? w2.fd.at(key) : Polynomial();
      check_scaled(rep, "F_D, D = " + key, f1, f2, 3, res.alpha,
                   res.alpha_den, res.inverse_var, res.denominator);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bridged-network transition checks: pairing immanants.

int bridge_tl_case(const Pairing& p, int i) {
  int pi = 0, pi1 = 0;
  for (const auto& [l, r] : p.arcs) {
    if (l == i) pi = r;
    if (r == i) pi = l;
    if (l == i + 1) pi1 = r;
    if (r == i + 1) pi1 = l;
  }
  bool ti = std::count(p.tags.begin(), p.tags.end(), i) > 0;
  bool ti1 = std::count(p.tags.begin(), p.tags.end(), i + 1) > 0;
  if (pi == i + 1) return 1;
  if (pi && pi1) return 2;
  if (pi) return ti1 ? 3 : 4;
  if (pi1) return ti ? 5 : 6;
  if (ti && !ti1) return 8;
  return 7;
}

namespace {

struct PairingTables {
  std::map<Pairing, Polynomial> table;
  Polynomial at(const Pairing& p) const {
    auto it = table.find(p);
    return it == table.end() ? Polynomial() : it->second;
  }
};

}  // namespace

CheckReport verify_bridge_tl(const PlanarNetwork& base, int i) {
  CheckReport rep;
  NetworkStats st = base.stats();
  int k = st.k, n = base.n();
  std::string tv = fresh_weight_variable(base, "t");
  Polynomial t = Polynomial::variable(tv);
  BridgeResult br = add_bridge_ex(base, i, tv);
  rep.note(br.network.stats().k == k, "bridge changed the subset size k");

  PairingTables FN{tl_immanant_table(br.network)};
  PairingTables FB{tl_immanant_table(base)};

  auto arcs_without = [&](const Pairing& p, int a, int bnd) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& arc : p.arcs)
      if (!((arc.first == a && arc.second == bnd) ||
            (arc.first == bnd && arc.second == a)))
        arcs.push_back(arc);
    return arcs;
  };
  auto tags_plus = [&](const std::vector<int>& tags, int add, int drop) {
    std::vector<int> out;
    for (int x : tags)
      if (x != drop) out.push_back(x);
    if (add) out.push_back(add);
    return out;
  };

  for (const Pairing& p : enumerate_pairings(k, n)) {
    int partner_i = 0, partner_i1 = 0;
    for (const auto& [l, r] : p.arcs) {
      if (l == i) partner_i = r;
      if (r == i) partner_i = l;
      if (l == i + 1) partner_i1 = r;
      if (r == i + 1) partner_i1 = l;
    }
    int cse = bridge_tl_case(p, i);
    Polynomial rhs = FB.at(p);  // every case keeps the constant term
    switch (cse) {
      case 1: {
        auto arcs = arcs_without(p, i, i + 1);
        rhs += t * FB.at(make_pairing(k, n, arcs, tags_plus(p.tags, i + 1, 0)));
        break;
      }
      case 2:
      case 3:
      case 6:
      case 7:
        break;
      case 4: {
        auto arcs = arcs_without(p, i, partner_i);
        arcs.emplace_back(std::min(i + 1, partner_i),
                          std::max(i + 1, partner_i));
        if (arcs_noncrossing(arcs))
          rhs += t * FB.at(make_pairing(k, n, arcs, p.tags));
        break;
      }
      case 5: {
        auto arcs = arcs_without(p, i + 1, partner_i1);
        arcs.emplace_back(std::min(i, partner_i1), std::max(i, partner_i1));
        if (arcs_noncrossing(arcs))
          rhs += t * FB.at(make_pairing(k, n, arcs,
                                        tags_plus(p.tags, i + 1, i)));
        break;
      }
      case 8: {
        rhs += t * t * FB.at(make_pairing(k, n, p.arcs,
                                          tags_plus(p.tags, i + 1, i)));
        auto joined = p.arcs;
        joined.emplace_back(i, i + 1);
        rhs += Polynomial(2) * t *
               FB.at(make_pairing(k, n, joined, tags_plus(p.tags, 0, i)));
        for (const auto& [a, bnd] : p.arcs) {
          bool placed = false;
          for (int swap = 0; swap < 2 && !placed; ++swap) {
            int to_i = swap ? bnd : a, to_i1 = swap ? a : bnd;
            auto arcs = arcs_without(p, a, bnd);
            arcs.emplace_back(std::min(i, to_i), std::max(i, to_i));
            arcs.emplace_back(std::min(i + 1, to_i1), std::max(i + 1, to_i1));
            if (arcs_noncrossing(arcs)) {
              rhs += t * FB.at(make_pairing(k, n, arcs,
                                            tags_plus(p.tags, 0, i)));
              placed = true;
            }
          }
        }
        break;
      }
      default:
        rep.note(false, "uncovered configuration at " + p.str());
        continue;
    }
    Polynomial lhs = FN.at(p);
    rep.note(lhs == rhs, "case " + std::to_string(cse) + " at " + p.str() +
                             ": got " + lhs.str() + ", table gives " +
                             rhs.str());
    rep.note(lhs.substitute({{tv, Rat(0)}}) == FB.at(p),
             "constant term mismatch at " + p.str());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Bridged-network transition checks: web immanants.

namespace {

// Rows of the added-edge case table, keyed by the base web's marks at the
// bridge columns (boundary i is black in the base, i+1 white); 0 means the
// configuration is not listed and must never occur.
int web_row_of(BoundaryMark mi, BoundaryMark mi1) {
  using M = BoundaryMark;
  if (mi == M::Out && mi1 == M::In) return 1;
  if (mi == M::In && mi1 == M::Out) return 2;
  if (mi == M::Out && mi1 == M::Out) return 3;
  if (mi == M::In && mi1 == M::In) return 4;
  if (mi == M::Unused && mi1 == M::Out) return 5;
  if (mi == M::In && mi1 == M::Tagged) return 6;
  if (mi == M::Unused && mi1 == M::In) return 7;
  if (mi == M::Out && mi1 == M::Tagged) return 8;
  if (mi == M::Unused && mi1 == M::Tagged) return 9;
  return 0;
}

// Allowed (added-edge bitmask, bridge multiplicity) pairs per row, where the
// bitmask has bit 1 for the lower edge at i and bit 2 for the one at i+1.
// The multiplicities are forced by the vertex sums at the bridge ends: with
// the bridge at multiplicity m and the upper leg at u, the lower leg carries
// 3 - m - u.
const std::vector<std::vector<std::pair<int, int>>>& web_row_options() {
  static const std::vector<std::vector<std::pair<int, int>>> table = {
      {},                        // row 0: impossible
      {{0, 2}, {3, 1}},          // 1: {e} at m=2, or all three at m=1
      {{0, 1}},                  // 2: {e} at m=1
      {{1, 1}},                  // 3: {e, e_i} at m=1
      {{2, 1}},                  // 4: {e, e_{i+1}} at m=1
      {{1, 1}},                  // 5: {e, e_i} at m=1 (e_i doubled)
      {{2, 1}},                  // 6: {e, e_{i+1}} at m=1 (e_{i+1} doubled)
      {{1, 2}, {3, 1}},          // 7: {e, e_i} at m=2, or all three at m=1
      {{2, 2}, {3, 1}},          // 8: {e, e_{i+1}} at m=2, or all three at m=1
      {{0, 3}, {3, 1}, {3, 2}},  // 9: {e} at m=3, or a pass-through chain
  };
  return table;
}

// Sparse row-echelon form over the rational numbers, rows indexed by
// canonical monomial strings; used to test membership in the span of a
// polynomial family.
struct Echelon {
  std::map<std::string, std::map<std::string, Rat>> rows;  // pivot -> row

  static std::map<std::string, Rat> vec(const Polynomial& p) {
    std::map<std::string, Rat> v;
    for (const auto& [mono, coef] : p.terms()) v[mono.str()] = coef;
    return v;
  }

  // Reduces v against the stored rows; returns true when v reduces to zero.
  bool reduces_to_zero(std::map<std::string, Rat> v) const {
    reduce(v);
    return v.empty();
  }

  void reduce(std::map<std::string, Rat>& v) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = v.begin(); it != v.end();) {
        if (it->second.is_zero()) {
          it = v.erase(it);
          continue;
        }
        auto p = rows.find(it->first);
        if (p == rows.end()) {
          ++it;
          continue;
        }
        Rat f = it->second;
        for (const auto& [k, c] : p->second) v[k] -= f * c;
        changed = true;
        break;
      }
    }
  }

  void insert(const Polynomial& p) {
    auto v = vec(p);
    reduce(v);
    if (v.empty()) return;
    Rat lead = v.begin()->second;
    for (auto& [k, c] : v) c /= lead;
    rows.emplace(v.begin()->first, std::move(v));
  }
};

struct BridgeWebData {
  CheckReport rep;
  std::map<int, long long> profile_counts;  // row*100 + added*10 + mult
};

BridgeWebData bridge_web_analysis(const PlanarNetwork& base, int i) {
  BridgeWebData out;
  CheckReport& rep = out.rep;
  std::string tv = fresh_weight_variable(base, "t");
  Polynomial t = Polynomial::variable(tv);
  BridgeResult br = add_bridge_ex(base, i, tv);
  const PlanarNetwork& N = br.network;
  bool plain = br.spacers.empty();  // row table applies only without patches

  WebTable tabB = web_table(base);
  WebTable tabN = web_table(N);
  rep.note(!tabN.fd.empty(), "bridged network has no web immanants");
  std::set<std::string> newD;
  for (const auto& [key, f] : tabN.fd)
    if (!tabB.fd.count(key)) newD.insert(key);

  // The bridge-free slice of every immanant of the bridged network equals
  // the base immanant (bridge-avoiding subgraphs correspond one-to-one to
  // base subgraphs, with lower-leg multiplicities forced by the vertex sums).
  {
    std::set<std::string> keys;
    for (const auto& [k, f] : tabB.fd) keys.insert(k);
    for (const auto& [k, f] : tabN.fd) keys.insert(k);
    for (const auto& key : keys) {
      Polynomial slice = tabN.fd.count(key)
                             ? tabN.fd.at(key).substitute({{tv, Rat(0)}})
                             : Polynomial();
      Polynomial want =
          tabB.fd.count(key) ? tabB.fd.at(key) : Polynomial();
      rep.note(slice == want, "bridge-free slice mismatch at " + key);
    }
  }

  std::set<std::string> dropped(br.spacers.begin(), br.spacers.end());
  dropped.insert(br.bridge_edge);
  dropped.insert(br.lower_i);
  dropped.insert(br.lower_i1);

  // Classes of (restricted web, bridge multiplicity) per new web, collected
  // over the subgraphs that represent the new web directly.
  std::map<std::string, std::set<std::pair<std::string, int>>> classes;

  for (const auto& [g, wt] : enumerate_weblike(N)) {
    if (!g.uses(br.bridge_edge)) continue;
    std::string key = canonical(web_of(N, g));
    int added = (g.mult.count(br.lower_i) ? 1 : 0) |
                (g.mult.count(br.lower_i1) ? 2 : 0);
    int cyc_idx = -1;
    for (size_t c = 0; c < g.cycles.size(); ++c)
      if (std::count(g.cycles[c].begin(), g.cycles[c].end(), br.bridge_edge))
        cyc_idx = static_cast<int>(c);

    Polynomial reassembled;  // sum of t^m * restricted weight

    auto restrict_one = [&](const std::map<std::string, int>& mult,
                            const std::vector<std::vector<std::string>>&
                                cycles,
                            int tpow) {
      WeblikeSubgraph sub;
      for (const auto& [eid, mm] : mult)
        if (!dropped.count(eid)) sub.mult[eid] = mm;
      sub.cycles = cycles;
      reassembled += t.pow(static_cast<unsigned>(tpow)) * sub.weight(base);
      Web dp = web_of(base, sub);
      if (plain) {
        int row = web_row_of(dp.mark(i), dp.mark(i + 1));
        rep.note(row != 0, "unlisted base configuration (" +
                               mark_name(dp.mark(i)) + "," +
                               mark_name(dp.mark(i + 1)) + ") under " + key);
        if (row != 0) {
          const auto& opts = web_row_options()[row];
          bool listed = false;
          for (const auto& [am, mm] : opts)
            if (am == added && mm == tpow) listed = true;
          rep.note(listed, "row " + std::to_string(row) + " profile added=" +
                               std::to_string(added) + " mult=" +
                               std::to_string(tpow) + " not listed, under " +
                               key);
          ++out.profile_counts[row * 100 + added * 10 + tpow];
        }
      }
      if (newD.count(key)) classes[key].insert({canonical(dp), tpow});
    };

    if (cyc_idx < 0) {
      restrict_one(g.mult, g.cycles, g.mult.at(br.bridge_edge));
    } else {
      // The bridge sits in a cycle: each multiplicity alternation restricts
      // to its own base subgraph, the cycle cut open into a chain between
      // the two bridge columns.
      const auto& cyc = g.cycles[cyc_idx];
      size_t at = static_cast<size_t>(
          std::find(cyc.begin(), cyc.end(), br.bridge_edge) - cyc.begin());
      for (int mb = 1; mb <= 2; ++mb) {
        std::map<std::string, int> mult = g.mult;
        for (size_t j = 0; j < cyc.size(); ++j)
          mult[cyc[j]] = (j % 2 == at % 2) ? mb : 3 - mb;
        std::vector<std::vector<std::string>> cycles;
        for (size_t c = 0; c < g.cycles.size(); ++c)
          if (static_cast<int>(c) != cyc_idx) cycles.push_back(g.cycles[c]);
        restrict_one(mult, cycles, mb);
      }
    }
    rep.note(reassembled == wt,
             "restricted weights do not reassemble the subgraph weight under " +
                 key);
  }

  // Span membership: every bridge-degree coefficient of every new immanant
  // lies in the span of the base immanants.
  Echelon span;
  for (const auto& [k, f] : tabB.fd) span.insert(f);

  for (const auto& key : newD) {
    const Polynomial& pd = tabN.fd.at(key);
    int lo = 99, hi = 0;
    for (const auto& [mono, coef] : pd.terms()) {
      lo = std::min(lo, mono.exponent_of(tv));
      hi = std::max(hi, mono.exponent_of(tv));
    }
    rep.note(lo >= 1 && hi <= 3,
             "bridge-weight degrees of " + key + " outside 1..3");
    for (int a = lo; a <= hi; ++a)
      rep.note(span.reduces_to_zero(Echelon::vec(coeff_of_power(pd, tv, a))),
               "degree-" + std::to_string(a) + " slice of " + key +
                   " escapes the span of the base immanants");

    auto it = classes.find(key);
    if (it == classes.end()) {
      rep.note(false, "no representing subgraph found for new web " + key);
      continue;
    }
    std::set<std::string> dkeys;
    std::set<int> powers;
    for (const auto& [dkey, tpow] : it->second) {
      dkeys.insert(dkey);
      powers.insert(tpow);
    }
    rep.note(dkeys.size() <= 2,
             "more than two restricted webs feed " + key);
    if (dkeys.size() == 2)
      rep.note(powers.count(3) == 1 && powers.size() == 2,
               "two restricted webs under " + key +
                   " without the dipole/chain power split");
  }
  return out;
}

}  // namespace

CheckReport verify_bridge_web(const PlanarNetwork& base, int i) {
  return bridge_web_analysis(base, i).rep;
}

std::map<int, long long> bridge_web_profile_counts(const PlanarNetwork& base,
                                                   int i) {
  return bridge_web_analysis(base, i).profile_counts;
}

// ---------------------------------------------------------------------------
// Rank checks and tableau counts.

RankReport basis_rank_check(const PlanarNetwork& net, int degree) {
  if (degree != 2 && degree != 3)
    throw InvalidArgument("degree must be 2 or 3");
  RankReport out;
  std::vector<Polynomial> immanants;
  if (degree == 2) {
    for (const auto& [p, f] : tl_immanant_table(net)) immanants.push_back(f);
  } else {
    WebTable tab = web_table(net);
    for (const auto& [k, f] : tab.fd) immanants.push_back(f);
  }
  out.ensemble_size = static_cast<int>(immanants.size());
  out.rank_immanants = linear_rank(immanants);

  GrassmannPoint gp = grassmann_point(net);
  std::vector<std::vector<int>> support;
  for (const auto& I : k_subsets(gp.n, gp.k))
    if (!gp.at(I).is_zero()) support.push_back(I);
  std::vector<Polynomial> products;
  size_t m = support.size();
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a; b < m; ++b) {
      Polynomial pq = gp.at(support[a]) * gp.at(support[b]);
      if (degree == 2)
        products.push_back(pq);
      else
        for (size_t c = b; c < m; ++c)
          products.push_back(pq * gp.at(support[c]));
    }
  out.rank_products = linear_rank(products);

  out.ok = out.rank_immanants == out.ensemble_size &&
           out.rank_products == out.ensemble_size;
  out.report.note(out.rank_immanants == out.ensemble_size,
                  "immanant family is linearly dependent: rank " +
                      std::to_string(out.rank_immanants) + " of " +
                      std::to_string(out.ensemble_size));
  out.report.note(out.rank_products == out.ensemble_size,
                  "measurement products span rank " +
                      std::to_string(out.rank_products) + ", ensemble has " +
                      std::to_string(out.ensemble_size));
  return out;
}

long long ssyt_count(int rows, int cols, int max_entry) {
  if (rows < 0 || cols < 0 || max_entry < 0)
    throw InvalidArgument("ssyt_count needs nonnegative arguments");
  if (rows == 0 || cols == 0) return 1;
  std::vector<std::vector<int>> t(rows, std::vector<int>(cols, 0));
  long long count = 0;
  // Fill row-major; row entries weakly increase, column entries strictly.
  std::function<void(int, int)> fill = [&](int r, int c) {
    if (r == rows) {
      ++count;
      return;
    }
    int nr = c + 1 == cols ? r + 1 : r;
    int nc = c + 1 == cols ? 0 : c + 1;
    int lo = 1;
    if (c > 0) lo = std::max(lo, t[r][c - 1]);
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
    for (int v = lo; v <= max_entry; ++v) {
      t[r][c] = v;
      fill(nr, nc);
    }
  };
  fill(0, 0);
  return count;
}

}  // namespace dimerweb
