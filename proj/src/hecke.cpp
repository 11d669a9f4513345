#include "gsp4/hecke.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "gsp4/errors.hpp"
#include "gsp4/symplectic.hpp"
#include "gsp4/weyl.hpp"
#include "json.hpp"

namespace gsp4::hecke {

namespace {

// Inverse of a unipotent matrix mod m via the terminating Neumann series.
ZM4 zm4_unip_inv(const ZM4& u, long long m) {
  ZM4 n = u;
  for (int i = 0; i < 4; ++i) n.at(i, i) = 0;
  for (auto& e : n.e) e = (m - e % m) % m;  // n = -(u - 1)
  ZM4 acc = ZM4::ident();
  ZM4 pow = ZM4::ident();
  for (int i = 1; i < 4; ++i) {
    pow = zm4_mul(pow, n, m);
    for (int j = 0; j < 16; ++j)
      acc.e[static_cast<size_t>(j)] =
          (acc.e[static_cast<size_t>(j)] + pow.e[static_cast<size_t>(j)]) % m;
  }
  return acc;
}

// Canonical representative of the left coset U(k) * u: coordinates c_i in
// [0, p^{k_i}) with u = g * v, all coordinates of g of valuation >= k_i.
// The two simple coordinates are forced on the abelianization; c3 and then
// the central c4 are forced after stripping the part already determined
// (right multiplication by a height-2 factor changes no lower coordinate).
// The factorization is re-verified before returning.
std::array<long long, 4> left_coset_label(const ZM4& x,
                                          const std::array<long, 4>& k, long p,
                                          long long m) {
  std::array<long long, 4> pk{};
  for (int i = 0; i < 4; ++i)
    pk[static_cast<size_t>(i)] =
        ipow(p, static_cast<unsigned>(k[static_cast<size_t>(i)]));
  const auto cx = core::upper_coords_mod(x, m);
  std::array<long long, 4> c{cx[0] % pk[0], cx[1] % pk[1], 0, 0};
  for (int stage : {2, 3}) {
    const ZM4 v = core::upper_from_coords_mod(c, m);
    const auto g = core::upper_coords_mod(zm4_mul(x, zm4_unip_inv(v, m), m), m);
    c[static_cast<size_t>(stage)] =
        g[static_cast<size_t>(stage)] % pk[static_cast<size_t>(stage)];
  }
  const ZM4 v = core::upper_from_coords_mod(c, m);
  const auto g = core::upper_coords_mod(zm4_mul(x, zm4_unip_inv(v, m), m), m);
  bool ok = true;
  for (size_t i = 0; i < 4; ++i) ok = ok && g[i] % pk[i] == 0;
  if (!ok || zm4_mul(core::upper_from_coords_mod(g, m), v, m) != x)
    throw Error("left coset reduction failed its certificate");
  return c;
}

void check_parity(const WeightChar& chi) {
  if (!chi.parity_ok()) throw ParityViolation("weight fails the parity constraint");
}

// chi must factor through the cocenter of the derived Levi.
void check_cocenter_char(Parabolic q, const WeightChar& chi) {
  check_parity(chi);
  if (q == Parabolic::Siegel && chi.a1 != chi.a2)
    throw Error("Siegel cocenter characters have a1 = a2");
  if (q == Parabolic::Klingen && chi.a2 != 0)
    throw Error("Klingen cocenter characters have a2 = 0");
}

long long chi_on_levi(const ZM4& levi, Parabolic q, const WeightChar& chi,
                      long long m) {
  auto powe = [&](long long base, long e) {
    base = ((base % m) + m) % m;
    if (e < 0) return pow_mod(inv_mod(base, m), -e, m);
    return pow_mod(base, e, m);
  };
  switch (q) {
    case Parabolic::Borel:
      return mul_mod(powe(levi.at(0, 0), chi.a1), powe(levi.at(1, 1), chi.a2),
                     m);
    case Parabolic::Siegel: {
      long long det =
          ((levi.at(0, 0) * levi.at(1, 1) - levi.at(0, 1) * levi.at(1, 0)) % m +
           m) %
          m;
      return powe(det, chi.a1);
    }
    case Parabolic::Klingen:
      return powe(levi.at(0, 0), chi.a1);
    default:
      throw Error("no Levi character for this type");
  }
}

// Exponent of chi on tau(p^a1, p^a2; p^b).
long chi_exponent(const WeightChar& chi, const TorusPowers& d) {
  return chi.a1 * d.a1 + chi.a2 * d.a2 +
         ((chi.b - chi.a1 - chi.a2) / 2) * (d.b - d.a1 - d.a2);
}

}  // namespace

long long coset_degree(Parabolic q, const TorusPowers& d, long p) {
  flags::check_cone(q, d);
  long s = 0;
  for (int i = 0; i < 4; ++i) s += d.k(i);
  return ipow(p, static_cast<unsigned>(s));
}

CosetDecomposition coset_decomposition(Parabolic q, const TorusPowers& d,
                                       long p, int r) {
  flags::check_cone(q, d);
  CosetDecomposition cd;
  cd.q = q;
  cd.p = p;
  cd.r = r;
  cd.d = d;
  cd.degree = coset_degree(q, d, p);
  std::array<long long, 4> lim{};
  for (int i = 0; i < 4; ++i)
    lim[static_cast<size_t>(i)] = ipow(p, static_cast<unsigned>(d.k(i)));
  for (long long c0 = 0; c0 < lim[0]; ++c0)
    for (long long c1 = 0; c1 < lim[1]; ++c1)
      for (long long c2 = 0; c2 < lim[2]; ++c2)
        for (long long c3 = 0; c3 < lim[3]; ++c3)
          cd.reps.push_back({c0, c1, c2, c3});
  if (static_cast<long long>(cd.reps.size()) != cd.degree)
    throw Error("coset enumeration disagrees with the degree formula");
  return cd;
}

ProductReport hecke_multiply(Parabolic q, const TorusPowers& d1,
                             const TorusPowers& d2, long p) {
  flags::check_cone(q, d1);
  flags::check_cone(q, d2);
  ProductReport rep;
  rep.q = q;
  rep.d1 = d1;
  rep.d2 = d2;
  rep.d12 = d1 * d2;
  rep.deg1 = coset_degree(q, d1, p);
  rep.deg2 = coset_degree(q, d2, p);
  rep.deg12 = coset_degree(q, rep.d12, p);

  std::array<long, 4> k12{};
  long kmax = 0;
  for (int i = 0; i < 4; ++i) {
    k12[static_cast<size_t>(i)] = rep.d12.k(i);
    kmax = std::max(kmax, k12[static_cast<size_t>(i)]);
  }
  const long long m = ipow(p, static_cast<unsigned>(kmax == 0 ? 1 : kmax));

  const auto cd1 = coset_decomposition(q, d1, p, 1);
  const auto cd2 = coset_decomposition(q, d2, p, 1);

  std::map<std::array<long long, 4>, long long> counts;
  for (const auto& u : cd1.reps) {
    // d2^{-1} u d2 scales coordinate i by p^{k_i(d2)}.
    std::array<long long, 4> su{};
    for (size_t i = 0; i < 4; ++i)
      su[i] = (u[i] % m) * (ipow(p, static_cast<unsigned>(d2.k(static_cast<int>(i)))) % m) % m;
    const ZM4 a = core::upper_from_coords_mod(su, m);
    for (const auto& v : cd2.reps) {
      const ZM4 x = zm4_mul(a, core::upper_from_coords_mod(v, m), m);
      ++counts[left_coset_label(x, k12, p, m)];
    }
  }
  rep.classes = static_cast<long long>(counts.size());
  for (const auto& [lbl, c] : counts) rep.max_coeff = std::max(rep.max_coeff, c);
  rep.single_class_coeff_one =
      rep.classes == rep.deg12 && rep.max_coeff == 1 && rep.deg12 == rep.deg1 * rep.deg2;
  return rep;
}

std::string ProductReport::json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = "gsp4/1";
  doc["report"] = "hecke_product";
  doc["q"] = parabolic_name(q);
  doc["d1"] = {d1.a1, d1.a2, d1.b};
  doc["d2"] = {d2.a1, d2.a2, d2.b};
  doc["d12"] = {d12.a1, d12.a2, d12.b};
  doc["deg1"] = deg1;
  doc["deg2"] = deg2;
  doc["deg12"] = deg12;
  doc["classes"] = classes;
  doc["max_coeff"] = max_coeff;
  doc["single_class_coeff_one"] = single_class_coeff_one;
  return doc.dump(2) + "\n";
}

HeckeMatrix hecke_matrix(const flags::FlagSet& fs, const TorusPowers& d,
                         const WeightChar& chi) {
  check_parity(chi);
  if (static_cast<long long>(fs.points.size()) > 50000)
    throw ScaleRefused("flag module too large for matrix assembly");
  const bool trivial = chi.a1 == 0 && chi.a2 == 0 && chi.b == 0;
  long long twist = 1;
  if (!trivial) {
    const long n = chi_exponent(chi, d);
    if (n > 0) throw Error("coefficient twist is not integral on this cone element");
    twist = ipow(fs.p, static_cast<unsigned>(-n)) % fs.mod;
  }

  const auto cd = coset_decomposition(fs.q, d, fs.p, fs.r);
  std::vector<ZM4> uj;
  uj.reserve(cd.reps.size());
  for (const auto& c : cd.reps) {
    std::array<long long, 4> cm{};
    for (size_t i = 0; i < 4; ++i) cm[i] = c[i] % fs.mod;
    uj.push_back(core::upper_from_coords_mod(cm, fs.mod));
  }
  std::array<long long, 4> scale{};
  for (int i = 0; i < 4; ++i) {
    const long k = d.k(i);
    scale[static_cast<size_t>(i)] =
        k >= fs.r ? 0 : ipow(fs.p, static_cast<unsigned>(k)) % fs.mod;
  }

  HeckeMatrix hm;
  hm.n = static_cast<int>(fs.points.size());
  hm.modulus = trivial ? 0 : fs.mod;
  hm.rows.resize(fs.points.size());
  std::unordered_map<int, long long> acc;
  for (int yi = 0; yi < hm.n; ++yi) {
    const flags::FlagPoint& y = fs.points[static_cast<size_t>(yi)];
    const ZM4 lm = zm4_mul(core::lower_from_coords_mod(y.lower, fs.mod), y.levi,
                           fs.mod);
    acc.clear();
    for (const ZM4& u : uj) {
      const auto f =
          core::iwahori_factorize_mod(zm4_mul(u, lm, fs.mod), fs.q, fs.mod, fs.p);
      flags::FlagPoint z{core::lower_coords_mod(f.uminus, fs.mod), f.levi};
      for (size_t i = 0; i < 4; ++i) z.lower[i] = z.lower[i] * scale[i] % fs.mod;
      acc[fs.locate(z)] += 1;
    }
    auto& row = hm.rows[static_cast<size_t>(yi)];
    row.reserve(acc.size());
    for (auto [j, c] : acc)
      row.emplace_back(j, trivial ? c : mul_mod(c % fs.mod, twist, fs.mod));
    std::sort(row.begin(), row.end());
  }
  return hm;
}

HeckeMatrix hm_mul(const HeckeMatrix& a, const HeckeMatrix& b) {
  if (a.n != b.n || a.modulus != b.modulus)
    throw LevelMismatch("matrix shapes or moduli differ");
  HeckeMatrix c;
  c.n = a.n;
  c.modulus = a.modulus;
  c.rows.resize(static_cast<size_t>(a.n));
  std::vector<long long> scratch(static_cast<size_t>(a.n), 0);
  std::vector<char> hit(static_cast<size_t>(a.n), 0);
  std::vector<int> touched;
  for (int i = 0; i < a.n; ++i) {
    touched.clear();
    for (auto [kk, av] : a.rows[static_cast<size_t>(i)])
      for (auto [j, bv] : b.rows[static_cast<size_t>(kk)]) {
        if (!hit[static_cast<size_t>(j)]) {
          hit[static_cast<size_t>(j)] = 1;
          touched.push_back(j);
        }
        scratch[static_cast<size_t>(j)] += av * bv;
        if (c.modulus) scratch[static_cast<size_t>(j)] %= c.modulus;
      }
    std::sort(touched.begin(), touched.end());
    auto& row = c.rows[static_cast<size_t>(i)];
    for (int j : touched) {
      if (scratch[static_cast<size_t>(j)] != 0)
        row.emplace_back(j, scratch[static_cast<size_t>(j)]);
      scratch[static_cast<size_t>(j)] = 0;
      hit[static_cast<size_t>(j)] = 0;
    }
  }
  return c;
}

bool hm_equal(const HeckeMatrix& a, const HeckeMatrix& b) {
  return a.n == b.n && a.modulus == b.modulus && a.rows == b.rows;
}

bool hecke_commute(const HeckeMatrix& a, const HeckeMatrix& b) {
  return hm_equal(hm_mul(a, b), hm_mul(b, a));
}

IdempotentResult ordinary_idempotent(const std::vector<long long>& t, int n,
                                     long long mod) {
  if (n > 512) throw ScaleRefused("idempotent iteration limited to n <= 512");
  if (mod <= 1 || static_cast<long long>(t.size()) != 1LL * n * n)
    throw LevelMismatch("bad matrix shape or modulus");
  auto mul = [&](const std::vector<long long>& a,
                 const std::vector<long long>& b) {
    std::vector<long long> c(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const long long av = a[static_cast<size_t>(i * n + k)];
        if (!av) continue;
        for (int j = 0; j < n; ++j)
          c[static_cast<size_t>(i * n + j)] =
              (c[static_cast<size_t>(i * n + j)] +
               av * b[static_cast<size_t>(k * n + j)]) %
              mod;
      }
    return c;
  };
  auto matpow = [&](std::vector<long long> base, long long e) {
    std::vector<long long> r(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i * n + i)] = 1 % mod;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  };

  IdempotentResult res;
  res.n = n;
  res.mod = mod;
  std::vector<long long> a = t;  // T^{1!}
  for (int it = 2; it <= 64; ++it) {
    std::vector<long long> next = matpow(a, it);  // T^{it!}
    ++res.iterations;
    if (next == a) {
      res.stationary = true;
      break;
    }
    a = std::move(next);
  }
  res.e = a;
  res.idempotent = mul(a, a) == a;
  res.commutes = mul(a, t) == mul(t, a);
  return res;
}

KernelReport evaluation_kernel_check(Parabolic q, long p, int s,
                                     const WeightChar& chi) {
  check_cocenter_char(q, chi);
  if (s < 1 || s > 6) throw LevelMismatch("depth must satisfy 1 <= s <= 6");
  if ((p != 3 && p != 5) || s > 3)
    throw ScaleRefused("kernel check is exhaustive; limited to p in {3,5}, s <= 3");
  KernelReport rep;
  rep.q = q;
  rep.p = p;
  rep.s = s;
  rep.chi = chi;

  const long long mm = ipow(p, static_cast<unsigned>(s));
  const TorusPowers d = flags::cone_generator(q);
  rep.degree = coset_degree(q, d, p);

  // Enumerate the coordinate block: nilradical-opposite coordinates of
  // valuation >= 1 mod p^s, Levi-root coordinates zero.
  std::array<std::vector<long long>, 4> values;
  for (int i = 0; i < 4; ++i) {
    values[static_cast<size_t>(i)] = {0};
    bool nil = false;
    for (const Root& rt : nilradical_roots(q)) nil = nil || pos_root_index(rt) == i;
    if (nil)
      for (long long t = 1; t < ipow(p, static_cast<unsigned>(s - 1)); ++t)
        values[static_cast<size_t>(i)].push_back(t * p);
  }
  std::vector<std::array<long long, 4>> pts;
  std::map<std::array<long long, 4>, int> index;
  for (long long c0 : values[0])
    for (long long c1 : values[1])
      for (long long c2 : values[2])
        for (long long c3 : values[3]) {
          std::array<long long, 4> c{c0, c1, c2, c3};
          index.emplace(c, static_cast<int>(pts.size()));
          pts.push_back(c);
        }
  const int n = static_cast<int>(pts.size());
  rep.dim = n;
  const int marked = index.at({0, 0, 0, 0});

  // Operator matrix; exact integer counts for the zero weight.
  const bool trivial = chi.a1 == 0 && chi.a2 == 0 && chi.b == 0;
  long long twist = 1;
  if (!trivial) {
    const long e = chi_exponent(chi, d);
    if (e > 0) throw Error("coefficient twist is not integral on this cone element");
    twist = ipow(p, static_cast<unsigned>(-e)) % mm;
  }
  const auto cd = coset_decomposition(q, d, p, s);
  std::array<long long, 4> scale{};
  for (int i = 0; i < 4; ++i) {
    const long k = d.k(i);
    scale[static_cast<size_t>(i)] =
        k >= s ? 0 : ipow(p, static_cast<unsigned>(k)) % mm;
  }
  std::vector<long long> T(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  for (int xi = 0; xi < n; ++xi) {
    const ZM4 um = core::lower_from_coords_mod(pts[static_cast<size_t>(xi)], mm);
    for (const auto& c : cd.reps) {
      std::array<long long, 4> cm{};
      for (size_t i = 0; i < 4; ++i) cm[i] = c[i] % mm;
      const auto f = core::iwahori_factorize_mod(
          zm4_mul(core::upper_from_coords_mod(cm, mm), um, mm), q, mm, p);
      auto z = core::lower_coords_mod(f.uminus, mm);
      for (size_t i = 0; i < 4; ++i) z[i] = z[i] * scale[i] % mm;
      const long long fac =
          trivial ? 1
                  : mul_mod(twist,
                            inv_mod(chi_on_levi(f.levi, q, chi, mm), mm), mm);
      auto& entry = T[static_cast<size_t>(xi * n + index.at(z))];
      entry += fac;
      if (!trivial) entry %= mm;
    }
  }

  // Least power annihilating the kernel: all columns except the marked one
  // vanish (exactly for the zero weight, mod p^s otherwise).
  {
    std::vector<long long> pw = T;
    for (int e = 1; e <= std::max(1, s); ++e) {
      bool zero = true;
      for (int i = 0; i < n && zero; ++i)
        for (int j = 0; j < n && zero; ++j) {
          const long long v = pw[static_cast<size_t>(i * n + j)];
          if (j != marked && (trivial ? v : v % mm) != 0) zero = false;
        }
      if (zero) {
        rep.t_kills_kernel = e;
        break;
      }
      std::vector<long long> nx(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          if (pw[static_cast<size_t>(i * n + k)])
            for (int j = 0; j < n; ++j) {
              nx[static_cast<size_t>(i * n + j)] +=
                  pw[static_cast<size_t>(i * n + k)] * T[static_cast<size_t>(k * n + j)];
              if (!trivial) nx[static_cast<size_t>(i * n + j)] %= mm;
            }
      pw = std::move(nx);
    }
  }

  std::vector<long long> Tm = T;
  for (auto& v : Tm) v = ((v % mm) + mm) % mm;
  const auto idem = ordinary_idempotent(Tm, n, mm);
  rep.e_iterations = idem.iterations;
  rep.e_kernel_zero = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != marked && idem.e[static_cast<size_t>(i * n + j)] % mm != 0)
        rep.e_kernel_zero = false;

  rep.marked_row_degree = true;
  for (int j = 0; j < n; ++j) {
    const long long want =
        j == marked ? (trivial ? rep.degree : mul_mod(rep.degree % mm, twist, mm))
                    : 0;
    if (T[static_cast<size_t>(marked * n + j)] != want) rep.marked_row_degree = false;
  }

  rep.pass = rep.t_kills_kernel > 0 && rep.t_kills_kernel <= std::max(1, s - 1) &&
             idem.stationary && idem.idempotent && idem.commutes &&
             rep.e_kernel_zero && rep.marked_row_degree;
  return rep;
}

std::string KernelReport::json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = "gsp4/1";
  doc["report"] = "evaluation_kernel";
  doc["q"] = parabolic_name(q);
  doc["p"] = p;
  doc["s"] = s;
  doc["weight"] = {chi.a1, chi.a2, chi.b};
  doc["dim"] = dim;
  doc["degree"] = degree;
  doc["t_kills_kernel"] = t_kills_kernel;
  doc["e_iterations"] = e_iterations;
  doc["e_kernel_zero"] = e_kernel_zero;
  doc["marked_row_degree"] = marked_row_degree;
  doc["pass"] = pass;
  return doc.dump(2) + "\n";
}

SphericalCount spherical_decomposition_count(Parabolic q, const TorusPowers& d,
                                             long p) {
  for (long v : d.diag_vals())
    if (v < 0) throw HypothesisViolated("element must be integral");
  for (int i = 0; i < 4; ++i)
    if (d.k(i) < 0) throw HypothesisViolated("element must be dominant");

  SphericalCount sc;
  sc.q = q;
  sc.d = d;
  sc.p = p;
  const auto& lw = weyl::levi_weyl(q);
  std::vector<weyl::WeylElt> reps;
  std::vector<bool> seen(weyl::weyl_group().size(), false);
  const auto& wg = weyl::weyl_group();
  for (size_t i = 0; i < wg.size(); ++i) {
    if (seen[i]) continue;
    // Collect the left coset W_{M_Q} w and keep its minimal-length member.
    weyl::WeylElt best = wg[i].w;
    for (const auto& mEl : lw) {
      const weyl::WeylElt prod = mEl * wg[i].w;
      if (weyl::length(prod) < weyl::length(best)) best = prod;
      for (size_t j = 0; j < wg.size(); ++j)
        if (wg[j].w == prod) seen[j] = true;
    }
    reps.push_back(best);
  }
  for (const auto& w : reps) {
    long e = 0;
    for (const Root& g : positive_roots()) {
      const Root img = w.apply(g);
      if (img.positive()) e += d.k(pos_root_index(img));
    }
    sc.cells.emplace_back(weyl::name(w), ipow(p, static_cast<unsigned>(e)));
    sc.total += sc.cells.back().second;
  }
  return sc;
}

std::string SphericalCount::json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = "gsp4/1";
  doc["report"] = "spherical_count";
  doc["q"] = parabolic_name(q);
  doc["d"] = {d.a1, d.a2, d.b};
  doc["p"] = p;
  doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& [w, c] : cells) doc["cells"].push_back({{"w", w}, {"size", c}});
  doc["total"] = total;
  return doc.dump(2) + "\n";
}

std::array<Z, 5> char_poly(const Z& T, const Z& R, const Z& S, const Z& q) {
  const Z q2 = q * q, q3 = q2 * q;
  return {q3 * q3 * S * S, -q3 * T * S, q * (R + (1 + q2) * S), -T, Z(1)};
}

bool char_poly_autodual(const std::array<Z, 5>& c, const Z& q, const Z& S) {
  const Z q3s = q * q * q * S;
  return c[1] == c[3] * q3s && c[0] == q3s * q3s;
}

}  // namespace gsp4::hecke
