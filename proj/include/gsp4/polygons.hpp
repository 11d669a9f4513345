#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsp4/arith.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/roots.hpp"

namespace gsp4::poly {

// Hodge side of a crystalline datum over a p-adic base field.
//
// weights[s][i] lists the distinct jumps a_s^1 < ... < a_s^k for embedding s;
// hodge[i] is the common multiplicity h_i of the i-th jump.  Two independence
// constraints are structural: the count k is shared across embeddings
// (ragged rows reject), and the multiplicity vector is stored once.
// e is the ramification index, f the residue degree; d = e*f embeddings.
struct HodgeTateData {
  std::vector<std::vector<long long>> weights;
  std::vector<long long> hodge;
  long e = 1;
  long f = 1;

  long degree() const { return e * f; }
  int levels() const { return weights.empty() ? 0 : (int)weights[0].size(); }
  long long dimension() const;

  // IndependenceViolated on ragged rows or an embedding-count mismatch,
  // UnsortedInput unless every row is strictly increasing and every h_i > 0.
  void validate() const;
};

// Frobenius side: distinct slopes alpha[0] < ... < alpha[l-1] with
// multiplicities mult[i] > 0.  All entries exact rationals.
struct SlopeData {
  std::vector<Q> alpha;
  std::vector<long long> mult;

  long long dimension() const;
  void validate() const;  // UnsortedInput
};

// Lower-boundary polygon: vertex per level, first point (0, 0), abscissas
// strictly increasing, slopes nondecreasing (lower convexity).
struct Polygon {
  std::vector<std::pair<Q, Q>> pts;

  void validate() const;  // UnsortedInput on any invariant violation
  Q height_at(const Q& x) const;
  // Endpoints plus every point where the slope strictly changes.
  std::vector<std::pair<Q, Q>> genuine_vertices() const;
};

// The four jumps for weight (a, b; c), largest first:
//   (a+b+c)/2 + 3, (a-b+c)/2 + 2, (-a+b+c)/2 + 1, (-a-b+c)/2.
// ParityViolation unless a + b = c mod 2.  The sum is 2c + 6.
std::array<long long, 4> hodge_tate_weights(long a, long b, long c);

// HodgeTateData with one level per jump (ascending, multiplicity one) at
// every embedding; ab[s] = (a_s, b_s), one entry per embedding (e*f of them,
// else InconsistentDegrees).  NonDominant unless a_s >= b_s >= 0.
HodgeTateData hodge_tate_data(const std::vector<std::array<long, 2>>& ab,
                              long c, long e, long f);

// Shift added to every jump by the twist normalising c to a + b.
// ParityViolation if a + b - c is odd.
long long tate_shift(long a, long b, long c);

// Partial-sum polygon of the jump/multiplicity list at one embedding.
Polygon hodge_polygon(const HodgeTateData& ht, int sigma = 0);

// Induced polygon: jumps of all embeddings pooled into one multiset, equal
// values merged.  Total width d * dimension().
Polygon induced_hodge_polygon(const HodgeTateData& ht);

// Partial-sum polygon of the slope/multiplicity list; scale multiplies every
// multiplicity (pass the base-field degree d for the induced module).
Polygon newton_polygon(const SlopeData& sd, long scale = 1);

// Slopes pinned by ordinarity at one place.  alpha holds the valuations of
// the four Hecke eigenvalue roots, normalised by v(p) = 1 and increasing;
// pairing = f*(3+c) satisfies alpha0 + alpha3 = alpha1 + alpha2 = pairing.
// alpha[i] is set only when the individual slope is determined, sum01 when
// only alpha0 + alpha1 is.  The absolute Frobenius slopes are these values
// divided by f (the relative Frobenius is the f-th power of the absolute
// one); polygon and breakpoint arithmetic runs in that normalisation.
struct OrdinarySlopes {
  Parabolic q = Parabolic::Borel;
  long e = 1;
  long f = 1;
  Q pairing;
  std::array<std::optional<Q>, 4> alpha;
  std::optional<Q> sum01;

  // Sum of the first t slopes (t in 0..4) when the supplied combinations
  // determine it; nullopt otherwise.  t = 3 resolves through the pairing.
  std::optional<Q> prefix(int t) const;

  // Full eigenvalue-valuation datum (sorted, equal slopes merged);
  // UnderdeterminedCase unless all four slopes are individually determined.
  SlopeData resolve() const;

  // Same, divided by f: the absolute Frobenius slopes feeding the Newton
  // polygon.
  SlopeData resolve_frobenius() const;
};

// Slope content of ordinarity for level parahoric q at a place with
// ramification e, residue degree f, weights ab[s] = (a_s, b_s) (one per
// embedding, e*f of them) and similitude weight c:
//   q = Borel:  alpha0 = (1/2e) sum (c - a - b),
//               alpha1 = f + (1/2e) sum (c + b - a), rest by pairing;
//   q = Siegel: alpha0 as above, alpha3 by pairing, alpha1 + alpha2 known
//               only as a sum;
//   q = Klingen: only alpha0 + alpha1 = f + (1/e) sum (c - a) and the
//               complementary sum are pinned.
// vT / vR, when supplied, override the unit-eigenvalue valuations the two
// formulas encode (vT -> alpha0, vR -> alpha0 + alpha1) and are used as-is.
// Undetermined slopes stay empty; nothing is interpolated.
OrdinarySlopes ordinary_slopes(Parabolic q, long e, long f, long c,
                               const std::vector<std::array<long, 2>>& ab,
                               std::optional<Q> vT = std::nullopt,
                               std::optional<Q> vR = std::nullopt);

struct CompareResult {
  bool liesAbove = false;                        // first >= second everywhere
  std::vector<std::pair<Q, Q>> meetingVertices;  // shared genuine vertices
};

// EndpointMismatch unless the two polygons share their final abscissa.
// liesAbove is decided exactly at the union of vertex abscissas; a meeting
// vertex needs a genuine vertex of both polygons at the same point.
CompareResult polygon_compare(const Polygon& upper, const Polygon& lower);

// Separation at level t (1 <= t < k): every embedding's t-th jump is
// strictly below every embedding's (t+1)-st.
bool sep_check(const HodgeTateData& ht, int t);

struct BreakDiagnostic {
  int t = 0;
  bool sep = false;          // separation at t
  bool testable = false;     // prefix slope sum determined
  bool countsMatch = false;  // sum_{i<=t} h_i == t (multiplicity-one slopes)
  bool vertexEqual = false;  // d * (prefix slope sum) == sum_{i<=t} h_i sum_s a_s^i
  bool stable() const { return sep && testable && countsMatch && vertexEqual; }
};

struct FiltrationVerdict {
  std::vector<int> stableSubspacesAt;  // passing breakpoints, ascending
  std::optional<Parabolic> dualParabolic;
  std::vector<BreakDiagnostic> diagnostics;
};

// Tests each candidate breakpoint t: separation plus the vertex equality
//   sum_{i<=t} h_i sum_sigma a_sigma^i == d * (absolute slope prefix sum)
// that forces the induced Newton and Hodge polygons to touch at abscissa
// d * sum_{i<=t} h_i.  A passing t certifies a stable subspace of dimension
// sum_{i>t} h_i.  Slopes carry multiplicity one here, so the count equality
// reads sum_{i<=t} h_i == t; prefix sums convert to absolute normalisation
// (division by f) internally; undetermined prefixes are reported untestable,
// never guessed.  For the four-level multiplicity-one shape the passing set
// is read symplectically: a break at 1 or 3 marks a stable isotropic line
// (directly or through its annihilator), a break at 2 a stable Lagrangian
// plane; line and plane -> Borel, line -> Klingen, plane -> Siegel, neither
// -> no dual parahoric.  Other shapes leave dualParabolic empty.
// Field data of ht and os must agree.
FiltrationVerdict filtration_verdict(const HodgeTateData& ht,
                                     const OrdinarySlopes& os,
                                     const std::vector<int>& breakpoints);

// Same test with every slope individually known; sd is already in absolute
// Frobenius normalisation.
FiltrationVerdict filtration_verdict(const HodgeTateData& ht,
                                     const SlopeData& sd,
                                     const std::vector<int>& breakpoints);

// Linear expression in the symbols a, b, t0, t1 with rational coefficients;
// prints like "a+b+3", "2a+2b+6", "t0", "0".
struct LinExpr {
  Q cst;
  std::map<std::string, Q> coef;
  std::string str() const;
};

// Vertex lists at the normalisation c = a + b, abscissa then height.
// The Hodge list is (0,0),(1,0),(2,b+1),(3,a+b+3),(4,2a+2b+6); the Newton
// lists replace the undetermined heights by t0 / t1:
//   Siegel:  (0,0),(1,0),(2,t1),(3,a+b+3),(4,2a+2b+6)
//   Klingen: (0,0),(1,t0),(2,b+1),(3,a+b+t0+3),(4,2a+2b+6)
//   Borel:   the Hodge list.
std::vector<std::pair<LinExpr, LinExpr>> symbolic_hodge_vertices();
std::vector<std::pair<LinExpr, LinExpr>> symbolic_newton_vertices(Parabolic q);

// JSON bridge.  HodgeTateData: {"weights":[[...]],"hodge":[...],"e":1,"f":1};
// SlopeData: {"alpha":[0,"7/2",...],"mult":[...]} with rationals as integers
// or "p/q" strings.  Throws UnsortedInput / IndependenceViolated through
// validate(); malformed JSON surfaces as std::invalid_argument.
HodgeTateData ht_from_json(const std::string& text);
SlopeData sd_from_json(const std::string& text);

// {"stableSubspacesAt":[...],"dualParabolic":"borel"|...|null,
//  "breakpoints":[{"t":..,"sep":..,"testable":..,"countsMatch":..,
//                  "vertexEqual":..,"stable":..},...]}
std::string verdict_json(const FiltrationVerdict& v);

// One "x<TAB>y" line per vertex, exact rationals.
std::string polygon_tsv(const Polygon& p);

}  // namespace gsp4::poly
