#include "gsp4/flags.hpp"

#include <sstream>

#include "gsp4/arith.hpp"
#include "gsp4/errors.hpp"
#include "gsp4/symplectic.hpp"
#include "json.hpp"

namespace gsp4::flags {

namespace {

long long phi_prime_power(long p, int r) {
  long long v = 1;
  for (int i = 1; i < r; ++i) v *= p;
  return v * (p - 1);
}

// |M'(Z/p^r)| for the three derived-Levi shapes.
long long levi_count(Parabolic q, long p, int r) {
  long long pr1 = 1;  // p^{r-1}
  for (int i = 1; i < r; ++i) pr1 *= p;
  long long u = phi_prime_power(p, r);
  switch (q) {
    case Parabolic::Borel:
      return u * u;
    case Parabolic::Siegel:  // |GL2(Z/p^r)|
      return pr1 * pr1 * pr1 * pr1 * (p * p - 1) * (p * p - p);
    case Parabolic::Klingen:  // units x |SL2(Z/p^r)|
      return u * (pr1 * pr1 * pr1) * p * (p * p - 1);
    default:
      throw Error("flag sets are defined for proper parahoric types");
  }
}

std::vector<ZM4> enumerate_levi(Parabolic q, long p, int r) {
  const long long m = ipow(p, static_cast<unsigned>(r));
  std::vector<ZM4> out;
  auto unit = [&](long long x) { return x % p != 0; };
  if (q == Parabolic::Borel) {
    for (long long t1 = 1; t1 < m; ++t1) {
      if (!unit(t1)) continue;
      for (long long t2 = 1; t2 < m; ++t2) {
        if (!unit(t2)) continue;
        ZM4 g = ZM4::ident();
        g.at(0, 0) = t1;
        g.at(1, 1) = t2;
        g.at(2, 2) = inv_mod(t1, m);
        g.at(3, 3) = inv_mod(t2, m);
        out.push_back(g);
      }
    }
  } else if (q == Parabolic::Siegel) {
    for (long long a = 0; a < m; ++a)
      for (long long b = 0; b < m; ++b)
        for (long long c = 0; c < m; ++c)
          for (long long d = 0; d < m; ++d) {
            long long det = ((a * d - b * c) % m + m) % m;
            if (!unit(det)) continue;
            // mu(A;1): A on rows/cols {0,1}, transpose-inverse on {2,3}.
            long long di = inv_mod(det, m);
            ZM4 g = ZM4::ident();
            g.at(0, 0) = a;
            g.at(0, 1) = b;
            g.at(1, 0) = c;
            g.at(1, 1) = d;
            g.at(2, 2) = (d * di) % m;
            g.at(2, 3) = ((m - c) * di) % m;
            g.at(3, 2) = ((m - b) * di) % m;
            g.at(3, 3) = (a * di) % m;
            out.push_back(g);
          }
  } else if (q == Parabolic::Klingen) {
    for (long long a = 1; a < m; ++a) {
      if (!unit(a)) continue;
      for (long long g0 = 0; g0 < m; ++g0)
        for (long long g1 = 0; g1 < m; ++g1)
          for (long long g2 = 0; g2 < m; ++g2)
            for (long long g3 = 0; g3 < m; ++g3) {
              long long det = ((g0 * g3 - g1 * g2) % m + m) % m;
              if (det != 1 % m) continue;
              // mu*(a,g): a at (0,0), g on rows/cols {1,3}, det/a at (2,2).
              ZM4 g4 = ZM4::ident();
              g4.at(0, 0) = a;
              g4.at(1, 1) = g0;
              g4.at(1, 3) = g1;
              g4.at(3, 1) = g2;
              g4.at(3, 3) = g3;
              g4.at(2, 2) = inv_mod(a, m);
              out.push_back(g4);
            }
    }
  } else {
    throw Error("flag sets are defined for proper parahoric types");
  }
  return out;
}

bool is_nilradical_root(Parabolic q, int i) {
  for (const Root& r : nilradical_roots(q))
    if (pos_root_index(r) == i) return true;
  return false;
}

}  // namespace

std::string FlagPoint::key() const {
  std::string k;
  k.reserve(8 + 32);
  for (long long c : lower) {
    k.push_back(static_cast<char>(c & 0xff));
    k.push_back(static_cast<char>((c >> 8) & 0xff));
  }
  return k + levi.key();
}

int FlagSet::locate(const FlagPoint& y) const {
  auto it = index.find(y.key());
  if (it == index.end()) throw Error("flag point outside the enumerated set");
  return it->second;
}

long long flag_count(Parabolic q, long p, int r, int s) {
  long long coords = 1;
  for (size_t i = 0; i < nilradical_roots(q).size(); ++i)
    coords *= ipow(p, static_cast<unsigned>(r - s));
  return coords * levi_count(q, p, r);
}

FlagSet enumerate_flags(Parabolic q, long p, int r, int s) {
  if (s < 1 || s > r) throw LevelMismatch("flag depth must satisfy 1 <= s <= r");
  if ((p != 3 && p != 5) || r > 2)
    throw ScaleRefused("exhaustive flag enumeration is limited to p in {3,5}, r <= 2");
  const long long total = flag_count(q, p, r, s);
  if (total > 2000000) throw ScaleRefused("flag set too large to enumerate");

  FlagSet fs;
  fs.q = q;
  fs.p = p;
  fs.r = r;
  fs.s = s;
  fs.mod = ipow(p, static_cast<unsigned>(r));
  const long long step = ipow(p, static_cast<unsigned>(s));
  const long long nvals = ipow(p, static_cast<unsigned>(r - s));

  std::array<std::vector<long long>, 4> values;
  for (int i = 0; i < 4; ++i) {
    if (is_nilradical_root(q, i))
      for (long long t = 0; t < nvals; ++t) values[i].push_back(t * step);
    else
      values[i] = {0};
  }
  const std::vector<ZM4> levis = enumerate_levi(q, p, r);

  for (long long c0 : values[0])
    for (long long c1 : values[1])
      for (long long c2 : values[2])
        for (long long c3 : values[3])
          for (const ZM4& mEl : levis) {
            FlagPoint y{{c0, c1, c2, c3}, mEl};
            fs.index.emplace(y.key(), static_cast<int>(fs.points.size()));
            fs.points.push_back(std::move(y));
          }

  if (static_cast<long long>(fs.points.size()) != total)
    throw Error("flag enumeration disagrees with the closed-form count");
  fs.marked = fs.locate(FlagPoint{});
  return fs;
}

TorusPowers cone_generator(Parabolic q) {
  switch (q) {
    case Parabolic::Siegel: return {0, 0, 1};
    case Parabolic::Klingen: return {0, 1, 2};
    case Parabolic::Borel: return {0, 1, 3};
    default: throw Error("no contracting element for this type");
  }
}

void check_cone(Parabolic q, const TorusPowers& d) {
  for (long v : d.diag_vals())
    if (v < 0) throw NonIntegralConjugate("cone element must be integral");
  for (int i = 0; i < 4; ++i)
    if (d.k(i) < 0)
      throw NonIntegralConjugate("conjugation must not expand a nilradical direction");
  for (const Root& r : levi_roots(q))
    if (d.k(pos_root_index(r)) != 0)
      throw NonIntegralConjugate("cone element must centralize the Levi pattern");
}

FlagPoint act_torus(const TorusPowers& d, const FlagPoint& y,
                    const FlagSet& ctx) {
  check_cone(ctx.q, d);
  FlagPoint out = y;
  for (int i = 0; i < 4; ++i) {
    const long k = d.k(i);
    out.lower[static_cast<size_t>(i)] =
        k >= ctx.r ? 0
                   : (y.lower[static_cast<size_t>(i)] * ipow(ctx.p, static_cast<unsigned>(k))) % ctx.mod;
  }
  return out;
}

FlagPoint translate(const ZM4& u, const FlagPoint& y, const FlagSet& ctx) {
  const ZM4 L = core::lower_from_coords_mod(y.lower, ctx.mod);
  const ZM4 X =
      zm4_mul(zm4_reduce(u, ctx.mod), zm4_mul(L, y.levi, ctx.mod), ctx.mod);
  const auto f = core::iwahori_factorize_mod(X, ctx.q, ctx.mod, ctx.p);
  return FlagPoint{core::lower_coords_mod(f.uminus, ctx.mod), f.levi};
}

FlagPoint act(const TorusPowers& d, const ZM4& u, const FlagPoint& y,
              const FlagSet& ctx) {
  return act_torus(d, translate(u, y, ctx), ctx);
}

ContractionReport contraction_report(Parabolic q, long p, int r, int s) {
  ContractionReport rep{q, p, r, s};
  const FlagSet fs = enumerate_flags(q, p, r, s);
  const TorusPowers d = cone_generator(q);
  rep.points = static_cast<long long>(fs.points.size());
  rep.closed_form = flag_count(q, p, r, s);
  for (int i = 0; i < 4; ++i) rep.k[static_cast<size_t>(i)] = d.k(i);
  for (const FlagPoint& y : fs.points) {
    FlagPoint z = y;
    for (int it = 0; it < r - s; ++it) z = act_torus(d, z, fs);
    bool fiber = true;
    for (long long c : z.lower) fiber = fiber && c == 0;
    if (fiber) ++rep.in_fiber;
  }
  rep.pass = rep.in_fiber == rep.points;
  return rep;
}

std::string ContractionReport::json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = "gsp4/1";
  doc["report"] = "contraction";
  doc["q"] = parabolic_name(q);
  doc["p"] = p;
  doc["r"] = r;
  doc["s"] = s;
  doc["points"] = points;
  doc["closed_form"] = closed_form;
  doc["k"] = k;
  doc["in_marked_fiber"] = in_fiber;
  doc["pass"] = pass;
  return doc.dump(2) + "\n";
}

long long lagrangian_count(long p) {
  // Row-reduced bases of 2-dimensional subspaces of F_p^4; isotropy of the
  // span reduces to the pairing of the two basis rows.
  auto pair = [&](const std::array<long long, 4>& x,
                  const std::array<long long, 4>& y) {
    long long v = x[0] * y[2] + x[1] * y[3] - x[2] * y[0] - x[3] * y[1];
    return ((v % p) + p) % p;
  };
  long long subspaces = 0, isotropic = 0;
  for (int j1 = 0; j1 < 4; ++j1)
    for (int j2 = j1 + 1; j2 < 4; ++j2) {
      std::array<int, 2> free1{}, free2{};
      int n1 = 0, n2 = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == j1 || c == j2) continue;
        if (c > j1) free1[static_cast<size_t>(n1++)] = c;
        if (c > j2) free2[static_cast<size_t>(n2++)] = c;
      }
      const int nfree = n1 + n2;
      long long totalAssign = 1;
      for (int i = 0; i < nfree; ++i) totalAssign *= p;
      for (long long a = 0; a < totalAssign; ++a) {
        long long t = a;
        std::array<long long, 4> r1{}, r2{};
        r1[static_cast<size_t>(j1)] = 1;
        r2[static_cast<size_t>(j2)] = 1;
        for (int i = 0; i < n1; ++i, t /= p)
          r1[static_cast<size_t>(free1[static_cast<size_t>(i)])] = t % p;
        for (int i = 0; i < n2; ++i, t /= p)
          r2[static_cast<size_t>(free2[static_cast<size_t>(i)])] = t % p;
        ++subspaces;
        if (pair(r1, r2) == 0) ++isotropic;
      }
    }
  // Gaussian binomial [4 choose 2]_p sanity check on the enumeration itself.
  const long long q2 = p * p;
  if (subspaces != (q2 + 1) * (q2 + p + 1))
    throw Error("subspace enumeration miscounted");
  return isotropic;
}

}  // namespace gsp4::flags
