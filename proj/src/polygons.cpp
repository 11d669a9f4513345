#include "gsp4/polygons.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace gsp4::poly {

namespace {

Q qll(long long v) { return Q(static_cast<long>(v)); }

Q qfrac(long long num, long long den) {
  Q r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

}  // namespace

long long HodgeTateData::dimension() const {
  long long s = 0;
  for (long long h : hodge) s += h;
  return s;
}

void HodgeTateData::validate() const {
  if (e < 1 || f < 1) throw std::invalid_argument("nonpositive field datum");
  if (weights.empty() || weights[0].empty())
    throw std::invalid_argument("empty weight table");
  if ((long)weights.size() != degree())
    throw IndependenceViolated("embedding count differs from e*f");
  const size_t k = weights[0].size();
  for (const auto& row : weights) {
    if (row.size() != k) throw IndependenceViolated("ragged weight rows");
    for (size_t i = 0; i + 1 < row.size(); ++i)
      if (row[i] >= row[i + 1]) throw UnsortedInput("weights not increasing");
  }
  if (hodge.size() != k)
    throw IndependenceViolated("multiplicity count differs from level count");
  for (long long h : hodge)
    if (h <= 0) throw UnsortedInput("nonpositive multiplicity");
}

long long SlopeData::dimension() const {
  long long s = 0;
  for (long long m : mult) s += m;
  return s;
}

void SlopeData::validate() const {
  if (alpha.empty() || alpha.size() != mult.size())
    throw std::invalid_argument("slope/multiplicity size mismatch");
  for (size_t i = 0; i + 1 < alpha.size(); ++i)
    if (alpha[i] >= alpha[i + 1]) throw UnsortedInput("slopes not increasing");
  for (long long m : mult)
    if (m <= 0) throw UnsortedInput("nonpositive multiplicity");
}

void Polygon::validate() const {
  if (pts.empty()) throw std::invalid_argument("empty polygon");
  if (pts[0] != std::make_pair(Q(0), Q(0)))
    throw UnsortedInput("polygon must start at the origin");
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].first >= pts[i + 1].first)
      throw UnsortedInput("abscissas not increasing");
  for (size_t i = 0; i + 2 < pts.size(); ++i) {
    const Q s0 = (pts[i + 1].second - pts[i].second) /
                 (pts[i + 1].first - pts[i].first);
    const Q s1 = (pts[i + 2].second - pts[i + 1].second) /
                 (pts[i + 2].first - pts[i + 1].first);
    if (s0 > s1) throw UnsortedInput("slopes not convex");
  }
}

Q Polygon::height_at(const Q& x) const {
  if (pts.empty() || x < pts.front().first || x > pts.back().first)
    throw std::invalid_argument("abscissa outside polygon");
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (x > pts[i + 1].first) continue;
    const Q dx = pts[i + 1].first - pts[i].first;
    return pts[i].second +
           (x - pts[i].first) * (pts[i + 1].second - pts[i].second) / dx;
  }
  return pts.back().second;
}

std::vector<std::pair<Q, Q>> Polygon::genuine_vertices() const {
  std::vector<std::pair<Q, Q>> out;
  if (pts.empty()) return out;
  out.push_back(pts.front());
  for (size_t i = 1; i + 1 < pts.size(); ++i) {
    const Q s0 =
        (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
    const Q s1 =
        (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
    if (s0 != s1) out.push_back(pts[i]);
  }
  if (pts.size() > 1) out.push_back(pts.back());
  return out;
}

std::array<long long, 4> hodge_tate_weights(long a, long b, long c) {
  if (((a + b + c) & 1) != 0) throw ParityViolation();
  const long long s = a, t = b, u = c;
  std::array<long long, 4> w = {(s + t + u) / 2 + 3, (s - t + u) / 2 + 2,
                                (-s + t + u) / 2 + 1, (-s - t + u) / 2};
  if (w[0] + w[1] + w[2] + w[3] != 2 * u + 6)
    throw std::logic_error("weight sum drifted");
  return w;
}

HodgeTateData hodge_tate_data(const std::vector<std::array<long, 2>>& ab,
                              long c, long e, long f) {
  if (e < 1 || f < 1) throw std::invalid_argument("nonpositive field datum");
  if ((long)ab.size() != e * f) throw InconsistentDegrees();
  HodgeTateData ht;
  ht.e = e;
  ht.f = f;
  ht.hodge = {1, 1, 1, 1};
  for (const auto& [a, b] : ab) {
    if (!(a >= b && b >= 0)) throw NonDominant();
    auto w = hodge_tate_weights(a, b, c);
    ht.weights.push_back({w[3], w[2], w[1], w[0]});
  }
  ht.validate();
  return ht;
}

long long tate_shift(long a, long b, long c) {
  if (((a + b - c) & 1) != 0) throw ParityViolation();
  return ((long long)a + b - c) / 2;
}

Polygon hodge_polygon(const HodgeTateData& ht, int sigma) {
  ht.validate();
  if (sigma < 0 || sigma >= (int)ht.weights.size())
    throw std::invalid_argument("embedding index out of range");
  Polygon p;
  Q x(0), y(0);
  p.pts.emplace_back(x, y);
  for (size_t i = 0; i < ht.hodge.size(); ++i) {
    x += qll(ht.hodge[i]);
    y += qll(ht.hodge[i]) * qll(ht.weights[sigma][i]);
    p.pts.emplace_back(x, y);
  }
  p.validate();
  return p;
}

Polygon induced_hodge_polygon(const HodgeTateData& ht) {
  ht.validate();
  std::map<long long, long long> pool;
  for (const auto& row : ht.weights)
    for (size_t i = 0; i < row.size(); ++i) pool[row[i]] += ht.hodge[i];
  Polygon p;
  Q x(0), y(0);
  p.pts.emplace_back(x, y);
  for (const auto& [w, m] : pool) {
    x += qll(m);
    y += qll(m) * qll(w);
    p.pts.emplace_back(x, y);
  }
  p.validate();
  return p;
}

Polygon newton_polygon(const SlopeData& sd, long scale) {
  sd.validate();
  if (scale < 1) throw std::invalid_argument("nonpositive scale");
  Polygon p;
  Q x(0), y(0);
  p.pts.emplace_back(x, y);
  for (size_t i = 0; i < sd.alpha.size(); ++i) {
    const Q m = qll(sd.mult[i] * scale);
    x += m;
    y += m * sd.alpha[i];
    p.pts.emplace_back(x, y);
  }
  p.validate();
  return p;
}

std::optional<Q> OrdinarySlopes::prefix(int t) const {
  switch (t) {
    case 0:
      return Q(0);
    case 1:
      return alpha[0];
    case 2:
      if (alpha[0] && alpha[1]) return *alpha[0] + *alpha[1];
      return sum01;
    case 3:
      // alpha1 + alpha2 is the pairing, so alpha0 alone settles the sum.
      if (alpha[0]) return *alpha[0] + pairing;
      if (sum01 && alpha[2]) return *sum01 + *alpha[2];
      return std::nullopt;
    case 4:
      return pairing + pairing;
    default:
      throw std::invalid_argument("prefix index out of range");
  }
}

SlopeData OrdinarySlopes::resolve() const {
  for (const auto& a : alpha)
    if (!a) throw UnderdeterminedCase();
  if (*alpha[0] + *alpha[3] != pairing || *alpha[1] + *alpha[2] != pairing)
    throw std::logic_error("pairing identity violated");
  std::vector<Q> sorted = {*alpha[0], *alpha[1], *alpha[2], *alpha[3]};
  std::sort(sorted.begin(), sorted.end());
  SlopeData sd;
  for (const Q& v : sorted) {
    if (!sd.alpha.empty() && sd.alpha.back() == v) {
      ++sd.mult.back();
    } else {
      sd.alpha.push_back(v);
      sd.mult.push_back(1);
    }
  }
  sd.validate();
  return sd;
}

SlopeData OrdinarySlopes::resolve_frobenius() const {
  SlopeData sd = resolve();
  for (Q& a : sd.alpha) a /= Q(f);
  return sd;
}

OrdinarySlopes ordinary_slopes(Parabolic q, long e, long f, long c,
                               const std::vector<std::array<long, 2>>& ab,
                               std::optional<Q> vT, std::optional<Q> vR) {
  if (q == Parabolic::Full) throw std::invalid_argument("need a parahoric");
  if (e < 1 || f < 1) throw std::invalid_argument("nonpositive field datum");
  if ((long)ab.size() != e * f) throw InconsistentDegrees();
  long long s_cab = 0, s_ca = 0;
  for (const auto& [a, b] : ab) {
    if (!(a >= b && b >= 0)) throw NonDominant();
    if (((a + b + c) & 1) != 0) throw ParityViolation();
    s_cab += c - a - b;
    s_ca += c - a;
  }
  OrdinarySlopes os;
  os.q = q;
  os.e = e;
  os.f = f;
  os.pairing = qll((long long)f * (3 + c));

  // The two unit-eigenvalue valuations the level pins down: the first is
  // alpha0, the second alpha0 + alpha1.  Caller-supplied values win as-is.
  std::optional<Q> m0, m01;
  if (vT) {
    m0 = *vT;
  } else if (q == Parabolic::Borel || q == Parabolic::Siegel) {
    m0 = qfrac(s_cab, 2 * e);
  }
  if (vR) {
    m01 = *vR;
  } else if (q == Parabolic::Borel || q == Parabolic::Klingen) {
    m01 = qll(f) + qfrac(s_ca, e);
  }

  if (m0) {
    os.alpha[0] = *m0;
    os.alpha[3] = os.pairing - *m0;
  }
  if (m01) os.sum01 = *m01;
  if (m0 && m01) {
    os.alpha[1] = *m01 - *m0;
    os.alpha[2] = os.pairing - *os.alpha[1];
  }
  return os;
}

CompareResult polygon_compare(const Polygon& upper, const Polygon& lower) {
  upper.validate();
  lower.validate();
  if (upper.pts.back().first != lower.pts.back().first)
    throw EndpointMismatch();
  CompareResult r;
  std::set<Q> xs;
  for (const auto& p : upper.pts) xs.insert(p.first);
  for (const auto& p : lower.pts) xs.insert(p.first);
  r.liesAbove = true;
  for (const Q& x : xs)
    if (upper.height_at(x) < lower.height_at(x)) {
      r.liesAbove = false;
      break;
    }
  const auto gu = upper.genuine_vertices();
  const auto gl = lower.genuine_vertices();
  for (const auto& p : gu)
    if (std::find(gl.begin(), gl.end(), p) != gl.end())
      r.meetingVertices.push_back(p);
  return r;
}

bool sep_check(const HodgeTateData& ht, int t) {
  ht.validate();
  const int k = ht.levels();
  if (t < 1 || t >= k) throw std::invalid_argument("level index out of range");
  long long hi = ht.weights[0][t - 1], lo = ht.weights[0][t];
  for (const auto& row : ht.weights) {
    hi = std::max(hi, row[t - 1]);
    lo = std::min(lo, row[t]);
  }
  return hi < lo;
}

namespace {

// Shared breakpoint test.  slope_prefix(t) is the sum of the first t slopes
// with multiplicity (empty when undetermined), count_prefix(t) the matching
// multiplicity total; slope_levels caps t on the slope side.
template <class PrefixFn, class CountFn>
FiltrationVerdict verdict_core(const HodgeTateData& ht, PrefixFn slope_prefix,
                               CountFn count_prefix, int slope_levels,
                               bool dual_shape,
                               const std::vector<int>& breakpoints) {
  ht.validate();
  const int k = ht.levels();
  const Q d = Q(ht.degree());
  std::vector<int> ts(breakpoints);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  FiltrationVerdict v;
  for (int t : ts) {
    if (t < 1 || t >= k || t > slope_levels)
      throw std::invalid_argument("breakpoint out of range");
    BreakDiagnostic bd;
    bd.t = t;
    bd.sep = sep_check(ht, t);
    long long hsum = 0;
    Q wsum(0);
    for (int i = 0; i < t; ++i) {
      hsum += ht.hodge[i];
      Q across(0);
      for (const auto& row : ht.weights) across += qll(row[i]);
      wsum += qll(ht.hodge[i]) * across;
    }
    bd.countsMatch = (hsum == count_prefix(t));
    const std::optional<Q> sp = slope_prefix(t);
    bd.testable = sp.has_value();
    bd.vertexEqual = bd.testable && (wsum == d * *sp);
    if (bd.stable()) v.stableSubspacesAt.push_back(t);
    v.diagnostics.push_back(bd);
  }
  if (dual_shape) {
    bool line = false, plane = false;
    for (int t : v.stableSubspacesAt) {
      if (t == 1 || t == 3) line = true;
      if (t == 2) plane = true;
    }
    if (line && plane)
      v.dualParabolic = Parabolic::Borel;
    else if (line)
      v.dualParabolic = Parabolic::Klingen;
    else if (plane)
      v.dualParabolic = Parabolic::Siegel;
  }
  return v;
}

bool unit_multiplicities(const HodgeTateData& ht) {
  for (long long h : ht.hodge)
    if (h != 1) return false;
  return ht.levels() == 4;
}

}  // namespace

FiltrationVerdict filtration_verdict(const HodgeTateData& ht,
                                     const OrdinarySlopes& os,
                                     const std::vector<int>& breakpoints) {
  if (os.e != ht.e || os.f != ht.f)
    throw std::invalid_argument("field data mismatch");
  return verdict_core(
      ht,
      [&](int t) {
        auto p = os.prefix(t);
        if (p) *p /= Q(os.f);
        return p;
      },
      [](int t) { return (long long)t; }, 4, unit_multiplicities(ht),
      breakpoints);
}

FiltrationVerdict filtration_verdict(const HodgeTateData& ht,
                                     const SlopeData& sd,
                                     const std::vector<int>& breakpoints) {
  sd.validate();
  const bool shape = unit_multiplicities(ht) && sd.alpha.size() == 4 &&
                     sd.mult == std::vector<long long>{1, 1, 1, 1};
  return verdict_core(
      ht,
      [&](int t) {
        Q s(0);
        for (int i = 0; i < t; ++i) s += qll(sd.mult[i]) * sd.alpha[i];
        return std::optional<Q>(s);
      },
      [&](int t) {
        long long s = 0;
        for (int i = 0; i < t; ++i) s += sd.mult[i];
        return s;
      },
      (int)sd.alpha.size(), shape, breakpoints);
}

std::string LinExpr::str() const {
  std::string out;
  auto push = [&out](const Q& c, const std::string& sym) {
    if (c == 0) return;
    const Q mag = c < 0 ? Q(-c) : c;
    std::string term;
    if (sym.empty()) {
      term = mag.get_str();
    } else if (mag == 1) {
      term = sym;
    } else {
      term = mag.get_str() + sym;
    }
    if (out.empty())
      out += (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? "-" : "+") + term;
  };
  for (const auto& [sym, c] : coef) push(c, sym);
  push(cst, "");
  return out.empty() ? "0" : out;
}

namespace {

LinExpr lexpr(long cst, std::initializer_list<std::pair<const char*, long>> t) {
  LinExpr e;
  e.cst = Q(cst);
  for (const auto& [s, c] : t)
    if (c != 0) e.coef[s] = Q(c);
  return e;
}

}  // namespace

std::vector<std::pair<LinExpr, LinExpr>> symbolic_hodge_vertices() {
  return {
      {lexpr(0, {}), lexpr(0, {})},
      {lexpr(1, {}), lexpr(0, {})},
      {lexpr(2, {}), lexpr(1, {{"b", 1}})},
      {lexpr(3, {}), lexpr(3, {{"a", 1}, {"b", 1}})},
      {lexpr(4, {}), lexpr(6, {{"a", 2}, {"b", 2}})},
  };
}

std::vector<std::pair<LinExpr, LinExpr>> symbolic_newton_vertices(
    Parabolic q) {
  switch (q) {
    case Parabolic::Borel:
      return symbolic_hodge_vertices();
    case Parabolic::Siegel:
      return {
          {lexpr(0, {}), lexpr(0, {})},
          {lexpr(1, {}), lexpr(0, {})},
          {lexpr(2, {}), lexpr(0, {{"t1", 1}})},
          {lexpr(3, {}), lexpr(3, {{"a", 1}, {"b", 1}})},
          {lexpr(4, {}), lexpr(6, {{"a", 2}, {"b", 2}})},
      };
    case Parabolic::Klingen:
      return {
          {lexpr(0, {}), lexpr(0, {})},
          {lexpr(1, {}), lexpr(0, {{"t0", 1}})},
          {lexpr(2, {}), lexpr(1, {{"b", 1}})},
          {lexpr(3, {}), lexpr(3, {{"a", 1}, {"b", 1}, {"t0", 1}})},
          {lexpr(4, {}), lexpr(6, {{"a", 2}, {"b", 2}})},
      };
    default:
      throw std::invalid_argument("need a parahoric");
  }
}

namespace {

Q q_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return qll(v.get<long long>());
  if (v.is_string()) {
    Q r(v.get<std::string>());
    r.canonicalize();
    return r;
  }
  throw std::invalid_argument("rational must be an integer or a p/q string");
}

}  // namespace

HodgeTateData ht_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  HodgeTateData ht;
  for (const auto& row : j.at("weights"))
    ht.weights.push_back(row.get<std::vector<long long>>());
  ht.hodge = j.at("hodge").get<std::vector<long long>>();
  ht.e = j.value("e", 1);
  ht.f = j.value("f", 1);
  ht.validate();
  return ht;
}

SlopeData sd_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SlopeData sd;
  for (const auto& v : j.at("alpha")) sd.alpha.push_back(q_from_json(v));
  sd.mult = j.at("mult").get<std::vector<long long>>();
  sd.validate();
  return sd;
}

std::string verdict_json(const FiltrationVerdict& v) {
  nlohmann::ordered_json j;
  j["stableSubspacesAt"] = v.stableSubspacesAt;
  if (v.dualParabolic)
    j["dualParabolic"] = parabolic_name(*v.dualParabolic);
  else
    j["dualParabolic"] = nullptr;
  j["breakpoints"] = nlohmann::ordered_json::array();
  for (const auto& bd : v.diagnostics) {
    nlohmann::ordered_json d;
    d["t"] = bd.t;
    d["sep"] = bd.sep;
    d["testable"] = bd.testable;
    d["countsMatch"] = bd.countsMatch;
    d["vertexEqual"] = bd.vertexEqual;
    d["stable"] = bd.stable();
    j["breakpoints"].push_back(d);
  }
  return j.dump(2) + "\n";
}

std::string polygon_tsv(const Polygon& p) {
  std::string out;
  for (const auto& [x, y] : p.pts)
    out += x.get_num().get_str() +
           (x.get_den() == 1 ? "" : "/" + x.get_den().get_str()) + "\t" +
           y.get_num().get_str() +
           (y.get_den() == 1 ? "" : "/" + y.get_den().get_str()) + "\n";
  return out;
}

}  // namespace gsp4::poly
