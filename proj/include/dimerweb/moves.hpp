// Local rewrites of planar bipartite networks and the laws they obey.
//
// A move edits a network in place-preserving fashion: gauge scaling at an
// interior vertex, the square move on a quadrilateral face (new side weight =
// opposite old side weight divided by ac+bd), contraction of a bivalent
// vertex, merging of parallel edges, leaf removal, and dipole removal.  Each
// of these multiplies every boundary measurement by one common scalar alpha;
// verify_move_invariance certifies Delta_I(N) = alpha * Delta_I(N'),
// F_{tau,T}(N) = alpha^2 * F_{tau,T}(N') and F_D(N) = alpha^3 * F_D(N') by
// exact evaluation on integer grids sized by the per-variable degrees of the
// cleared identities.
//
// Two further constructors change the measurement in a controlled way:
// add_bridge splices a weight-t edge between the legs of two adjacent
// boundary vertices (black end on leg i, white end on leg i+1, valent-two
// vertices inserted when colors would clash), and add_lollipop inserts a new
// boundary vertex attached to an interior leaf, shifting later labels up by
// one.  verify_bridge_tl checks the full transition table expressing each
// F_{tau,T} of the bridged network in the immanants of the base network
// (coefficients of t^0..t^2), and verify_bridge_web matches every web
// immanant new to the bridged network against base immanants via the
// added-edge case analysis (coefficients of t^1..t^3).
//
// Move script syntax (one move per line, '#' comments allowed):
//
//   gauge <vertex> <scale>          multiply all edges at <vertex> by <scale>
//   M1 <v1> <v2> <v3> <v4> [<inv>]  square move on the face with corners
//                                   v1..v4 in cyclic order; <inv> names the
//                                   variable standing for 1/(ac+bd) when the
//                                   side weights are symbolic
//   M2 <vertex>                     contract a bivalent interior vertex
//   R1 <edge1> <edge2>              merge two parallel edges (weights add)
//   R2 <vertex>                     remove an interior leaf and its hub
//   R3 <edge>                       remove an isolated interior dipole
//   bridge <i> <var>                add a bridge at i with weight <var>
//   lollipop <i> <black|white>      insert a lollipop at position i
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimerweb/tl.hpp"
#include "dimerweb/webimm.hpp"

namespace dimerweb {

struct MoveRecord {
  enum class Kind { Gauge, M1, M2, R1, R2, R3, Bridge, Lollipop };

  Kind kind = Kind::Gauge;
  std::vector<std::string> args;  // positional, as in the script syntax

  static MoveRecord parse(const std::string& line);  // throws ParseError
  std::string str() const;
};

// Parses a move script: one MoveRecord per non-empty line.
std::vector<MoveRecord> parse_move_script(const std::string& text);

struct MoveResult {
  PlanarNetwork network;
  // Delta_I(before) * alpha_den = alpha * Delta_I(after) for every subset I,
  // so the measurement scales by the ratio alpha / alpha_den.  Scaling a
  // vertex by s divides the measurement (alpha = 1, alpha_den = s); the
  // square move multiplies it (alpha = ac+bd); the moves that change the
  // measurement (bridge, lollipop) report 1/1.
  Polynomial alpha{1};
  Polynomial alpha_den{1};
  // When the square move divides by a symbolic ac+bd, the result's weights
  // mention a variable (inverse_var) that stands for 1/denominator; both are
  // recorded here so evaluations can substitute consistently.  inverse_var is
  // empty when no division by a symbolic quantity happened.
  std::string inverse_var;
  Polynomial denominator{1};
};

// Applies one move.  Throws InvalidArgument with a message beginning
// "move not applicable:" when a precondition fails.
MoveResult apply_move_ex(const PlanarNetwork& net, const MoveRecord& move);
PlanarNetwork apply_move(const PlanarNetwork& net, const MoveRecord& move);
// Applies a script in order.
PlanarNetwork apply_script(const PlanarNetwork& net,
                           const std::vector<MoveRecord>& moves);

struct BridgeResult {
  PlanarNetwork network;
  std::string bridge_edge;            // the weight-t edge
  std::string lower_i, lower_i1;      // edges joining the bridge to b_i, b_{i+1}
  std::vector<std::string> spacers;   // valent-two patch edges, possibly empty
};

// Adds a bridge at 1 <= i < n: a new edge of weight variable `var` between a
// black vertex spliced into the leg of b_i and a white vertex spliced into
// the leg of b_{i+1}.
BridgeResult add_bridge_ex(const PlanarNetwork& net, int i,
                           const std::string& var);
PlanarNetwork add_bridge(const PlanarNetwork& net, int i,
                         const std::string& var);

// Inserts a new boundary vertex at position 1 <= i <= n+1 attached to a fresh
// interior leaf of the given color; boundary labels at former positions
// >= i shift up by one.
PlanarNetwork add_lollipop(const PlanarNetwork& net, int i, Color leaf_color);

struct MoveInvariance {
  Polynomial alpha;       // Delta(before) * alpha_den == alpha * Delta(after)
  Polynomial alpha_den;
  CheckReport report;
};

// Certifies the three scaling laws for one measurement-preserving move.
// `levels` selects which families to check: bit 0 = boundary measurements,
// bit 1 = pairing immanants, bit 2 = web immanants (default: all three).
MoveInvariance verify_move_invariance(const PlanarNetwork& net,
                                      const MoveRecord& move, int levels = 7);

// Which of the eight transition-table cases governs (tau, T) at the bridge
// columns:
//   1  (i,i+1) is an arc           2  i and i+1 sit in different arcs
//   3  i in an arc, i+1 tagged     4  i in an arc, i+1 unused untagged
//   5  i+1 in an arc, i tagged     6  i+1 in an arc, i unused untagged
//   7  neither in an arc, and (i untagged or i+1 tagged)
//   8  neither in an arc, i tagged, i+1 untagged (the quadratic case)
int bridge_tl_case(const Pairing& p, int i);

// Coefficient of var^j in p, viewing p as a polynomial in var: the returned
// polynomial does not mention var.
Polynomial coeff_of_power(const Polynomial& p, const std::string& var, int j);

// Checks every case of the bridged-network transition table for pairing
// immanants: F_{tau,T}(N) for N = add_bridge(base, i, t) expands over
// immanants of the base with coefficients 1, t, t^2 as dictated by
// bridge_tl_case(tau_T, i).
CheckReport verify_bridge_tl(const PlanarNetwork& base, int i);

// Web-immanant analogue.  Checks, for N = add_bridge(base, i, t):
//   - the t-free slice of every immanant of N is the base immanant;
//   - every weblike subgraph through the bridge restricts to base subgraphs
//     whose weights reassemble its own (t^m per bridge multiplicity m, the
//     two alternations of a cycle through the bridge splitting into t + t^2);
//   - each restriction lands in a listed row of the added-edge case table
//     (when no valent-two patches were needed);
//   - immanants new to N have t-degrees within 1..3, every t-coefficient in
//     the span of the base immanants, and at most two restriction classes,
//     a double class combining the dipole power t^3 with a lower power.
CheckReport verify_bridge_web(const PlanarNetwork& base, int i);

// Occurrence counts of (row, added-edge set, bridge multiplicity) profiles
// seen while restricting, keyed row*100 + added*10 + mult where `added` has
// bit 1 for the lower edge at i and bit 2 for the one at i+1.  Empty when
// valent-two patches made the row table inapplicable.
std::map<int, long long> bridge_web_profile_counts(const PlanarNetwork& base,
                                                   int i);

struct RankReport {
  int ensemble_size = 0;    // nonzero immanants
  int rank_immanants = 0;   // rank of that family
  int rank_products = 0;    // rank of the Delta products of matching degree
  bool ok = false;
  CheckReport report;
};

// degree 2: rank{F_{tau,T} != 0} == ensemble size == rank{Delta_I Delta_J};
// degree 3: the same with web immanants and triple products.
RankReport basis_rank_check(const PlanarNetwork& net, int degree);

// Semistandard Young tableaux of rectangular shape (`rows` x `cols`) with
// entries in 1..max_entry: rows weakly increase, columns strictly increase.
// Brute-force count, used as an independent dimension oracle.
long long ssyt_count(int rows, int cols, int max_entry);

}  // namespace dimerweb
