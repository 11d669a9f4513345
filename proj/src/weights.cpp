#include "gsp4/weights.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "gsp4/symplectic.hpp"
#include "json.hpp"

namespace gsp4::weights {

namespace {

using weyl::WeylElt;

long pair_a1(const std::array<long, 2>& w) { return w[0]; }

// Pairing with the coroot of a positive root on the (a1, a2) plane.
long coroot_pairing(const std::array<long, 2>& lam, const Root& r) {
  const long num = 2 * (lam[0] * r.m1 + lam[1] * r.m2);
  const long den = r.m1 * r.m1 + r.m2 * r.m2;
  return num / den;  // exact for the C2 root system
}

// Hodge-Tate exponents of one embedding, descending.
std::array<long, 4> ht_exponents(long a, long b, long c) {
  return {(a + b + c) / 2 + 3, (a - b + c) / 2 + 2, (-a + b + c) / 2 + 1,
          (-a - b + c) / 2};
}

bool levi_dominant(Parabolic q, const std::array<long, 2>& lam) {
  for (const auto& r : levi_roots(q)) {
    if (coroot_pairing(lam, r) < 0) return false;
  }
  return true;
}

// Minimal-length element of the double coset W_Q w W_Sigma; it is unique.
WeylElt min_coset_rep(Parabolic q, Parabolic sigma, const WeylElt& w) {
  WeylElt best = w;
  int blen = weyl::length(w);
  for (const auto& wq : weyl::levi_weyl(q)) {
    for (const auto& ws : weyl::levi_weyl(sigma)) {
      const WeylElt cand = wq * w * ws;
      const int l = weyl::length(cand);
      if (l < blen) {
        best = cand;
        blen = l;
      }
    }
  }
  return best;
}

// Inversions of v inside the positive system: {gamma > 0 : v^{-1}(gamma) < 0}.
std::vector<Root> inversion_set(const WeylElt& v) {
  std::vector<Root> out;
  const WeylElt vi = v.inverse();
  for (const auto& g : positive_roots()) {
    if (!vi.apply(g).positive()) out.push_back(g);
  }
  return out;
}

bool root_in(const std::vector<Root>& set, const Root& r) {
  return std::find(set.begin(), set.end(), r) != set.end();
}

// Kostant set of the stratum datum at the given (not canonicalized) w:
// {w_Q in W_Q : Delta_Q^+ cap w_Q(Delta_Q^-) subset w(R_Sigma) cap Delta_Q}.
bool in_stratum_kostant_set(Parabolic sigma, const WeylElt& w, Parabolic q,
                            const WeylElt& wq) {
  std::vector<Root> wRS;
  for (const auto& g : nilradical_roots(sigma)) wRS.push_back(w.apply(g));
  const WeylElt wqi = wq.inverse();
  for (const auto& a : levi_roots(q)) {
    if (wqi.apply(a).positive()) continue;  // not an inversion
    if (!root_in(wRS, a)) return false;
  }
  return true;
}

bool in_levi(Parabolic q, const WeylElt& w) {
  const auto& lev = weyl::levi_weyl(q);
  return std::find(lev.begin(), lev.end(), w) != lev.end();
}

// Length of wq within the Levi Weyl subgroup = inversions among Levi roots.
int levi_length(Parabolic q, const WeylElt& wq) {
  int n = 0;
  const WeylElt wi = wq.inverse();
  for (const auto& a : levi_roots(q)) {
    if (!wi.apply(a).positive()) ++n;
  }
  return n;
}

int print_index(const WeylElt& w) {
  const auto& grp = weyl::weyl_group();
  for (size_t i = 0; i < grp.size(); ++i) {
    if (grp[i].w == w) return static_cast<int>(i);
  }
  return -1;
}

// ---- Freudenthal recursion ------------------------------------------------

long ip(const std::array<long, 2>& u, const std::array<long, 2>& v) {
  return u[0] * v[0] + u[1] * v[1];
}

std::array<long, 2> dominate(long x, long y) {
  x = std::abs(x);
  y = std::abs(y);
  if (x < y) std::swap(x, y);
  return {x, y};
}

struct FreudenthalTable {
  std::array<long, 2> lam;
  std::map<std::array<long, 2>, long long> memo;

  // lam - mu must be a nonnegative combination of the simple roots.
  bool below(const std::array<long, 2>& mu) const {
    const long d1 = lam[0] - mu[0], d2 = lam[1] - mu[1];
    return d1 >= 0 && (d1 + d2) >= 0 && ((d1 + d2) % 2) == 0;
  }

  long long mult(std::array<long, 2> mu) {
    mu = dominate(mu[0], mu[1]);
    if (!below(mu)) return 0;
    if (mu == lam) return 1;
    const auto it = memo.find(mu);
    if (it != memo.end()) return it->second;
    const std::array<long, 2> rho = {2, 1};
    const std::array<long, 2> lr = {lam[0] + rho[0], lam[1] + rho[1]};
    const std::array<long, 2> mr = {mu[0] + rho[0], mu[1] + rho[1]};
    const long den = ip(lr, lr) - ip(mr, mr);
    long long acc = 0;
    for (const auto& r : positive_roots()) {
      const std::array<long, 2> al = {r.m1, r.m2};
      // every module weight lies in the box [-a, a]^2; each coordinate of
      // mu + k*alpha is monotone in k, so box exit is permanent
      for (long k = 1;; ++k) {
        const std::array<long, 2> nu = {mu[0] + k * al[0], mu[1] + k * al[1]};
        if (std::abs(nu[0]) > lam[0] || std::abs(nu[1]) > lam[0]) break;
        const long long m = mult(nu);
        if (m != 0) acc += m * ip(nu, al);
      }
    }
    // den > 0 for dominant mu strictly below lam; 2*acc is divisible by den.
    const long long val = 2 * acc / den;
    memo.emplace(mu, val);
    return val;
  }
};

// ---- Exterior-algebra cohomology oracle -----------------------------------

// Nilpotent generator of the root subgroup; the parametrization is linear.
QM4 root_mat(const Root& r) { return core::u_root(r, 1) - QM4::ident(); }

using Vec = std::vector<Q>;

// Basis weights of the standard module e0..e3 under tau(t1,t2;1).
const std::array<std::array<long, 2>, 4> kStdWt = {
    {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

// The 5-dimensional kernel of the symplectic contraction inside Lambda^2:
// k0 = e0^e1, k1 = e0^e3, k2 = e1^e2, k3 = e2^e3, k4 = e0^e2 - e1^e3.
const std::array<std::array<long, 2>, 5> kFiveWt = {
    {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0, 0}}};

// Action of x on the 5-dimensional module, expressed in the k-basis.
std::array<std::array<Q, 5>, 5> five_action(const QM4& x) {
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto pair_index = [&](int i, int j) {
    for (int t = 0; t < 6; ++t) {
      if (pairs[t][0] == i && pairs[t][1] == j) return t;
    }
    return -1;
  };
  // k-basis in Lambda^2 coordinates.
  std::array<std::array<Q, 6>, 5> kb{};
  kb[0][pair_index(0, 1)] = 1;
  kb[1][pair_index(0, 3)] = 1;
  kb[2][pair_index(1, 2)] = 1;
  kb[3][pair_index(2, 3)] = 1;
  kb[4][pair_index(0, 2)] = 1;
  kb[4][pair_index(1, 3)] = -1;
  std::array<std::array<Q, 5>, 5> out{};
  for (int col = 0; col < 5; ++col) {
    std::array<Q, 6> img{};
    for (int t = 0; t < 6; ++t) {
      if (kb[col][t] == 0) continue;
      const int i = pairs[t][0], j = pairs[t][1];
      // x(ei)^ej + ei^x(ej)
      for (int k = 0; k < 4; ++k) {
        const Q& c1 = x.at(k, i);
        if (c1 != 0 && k != j) {
          const int s = (k < j) ? pair_index(k, j) : pair_index(j, k);
          img[s] += (k < j ? c1 : -c1) * kb[col][t];
        }
        const Q& c2 = x.at(k, j);
        if (c2 != 0 && k != i) {
          const int s = (i < k) ? pair_index(i, k) : pair_index(k, i);
          img[s] += (i < k ? c2 : -c2) * kb[col][t];
        }
      }
    }
    // contraction-free coordinates: c02 must cancel c13
    if (img[pair_index(0, 2)] != -img[pair_index(1, 3)]) {
      throw std::logic_error("contraction kernel not preserved");
    }
    out[0][col] = img[pair_index(0, 1)];
    out[1][col] = img[pair_index(0, 3)];
    out[2][col] = img[pair_index(1, 2)];
    out[3][col] = img[pair_index(2, 3)];
    out[4][col] = img[pair_index(0, 2)];
  }
  return out;
}

// Tensor power (std)^(a-b) x (five)^b with per-factor generator action.
struct Realization {
  int n4 = 0, n5 = 0, dim = 1;
  std::vector<int> stride;  // per factor, std factors first
  std::vector<std::array<long, 2>> wt;

  Realization(long a, long b) : n4(static_cast<int>(a - b)), n5(static_cast<int>(b)) {
    for (int i = 0; i < n4 + n5; ++i) {
      stride.push_back(dim);
      dim *= (i < n4) ? 4 : 5;
    }
    if (dim > 4096) throw ScaleRefused("module realization too large");
    wt.assign(static_cast<size_t>(dim), {0, 0});
    for (int idx = 0; idx < dim; ++idx) {
      int rest = idx;
      long w1 = 0, w2 = 0;
      for (int f = 0; f < n4 + n5; ++f) {
        const int base = (f < n4) ? 4 : 5;
        const int d = rest % base;
        rest /= base;
        const auto& fw = (f < n4) ? kStdWt[static_cast<size_t>(d)]
                                  : kFiveWt[static_cast<size_t>(d)];
        w1 += fw[0];
        w2 += fw[1];
      }
      wt[static_cast<size_t>(idx)] = {w1, w2};
    }
  }

  Vec apply(const QM4& x, const std::array<std::array<Q, 5>, 5>& x5,
            const Vec& v) const {
    Vec out(static_cast<size_t>(dim));
    for (int idx = 0; idx < dim; ++idx) {
      const Q& c = v[static_cast<size_t>(idx)];
      if (c == 0) continue;
      int rest = idx;
      for (int f = 0; f < n4 + n5; ++f) {
        const int base = (f < n4) ? 4 : 5;
        const int d = rest % base;
        rest /= base;
        for (int j = 0; j < base; ++j) {
          const Q& m = (f < n4) ? x.at(j, d) : x5[static_cast<size_t>(j)][static_cast<size_t>(d)];
          if (m == 0) continue;
          const int jdx = idx + (j - d) * stride[static_cast<size_t>(f)];
          out[static_cast<size_t>(jdx)] += m * c;
        }
      }
    }
    return out;
  }
};

// Reduced row basis with pivot bookkeeping; rows stay weight-homogeneous
// because every tensor basis index has a definite torus weight.
struct Echelon {
  std::vector<Vec> rows;
  std::vector<size_t> piv;
  std::vector<std::array<long, 2>> wts;

  bool insert(Vec v, const std::array<long, 2>& w) {
    for (size_t i = 0; i < rows.size(); ++i) {
      const Q c = v[piv[i]];
      if (c == 0) continue;
      for (size_t j = 0; j < v.size(); ++j) v[j] -= c * rows[i][j];
    }
    size_t p = v.size();
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0) {
        p = j;
        break;
      }
    }
    if (p == v.size()) return false;
    const Q lead = v[p];
    for (size_t j = 0; j < v.size(); ++j) v[j] /= lead;
    for (size_t i = 0; i < rows.size(); ++i) {
      const Q c = rows[i][p];
      if (c == 0) continue;
      for (size_t j = 0; j < v.size(); ++j) rows[i][j] -= c * v[j];
    }
    rows.push_back(std::move(v));
    piv.push_back(p);
    wts.push_back(w);
    return true;
  }

  std::vector<Q> coords(Vec v) const {
    std::vector<Q> c(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      c[i] = v[piv[i]];
      if (c[i] == 0) continue;
      for (size_t j = 0; j < v.size(); ++j) v[j] -= c[i] * rows[i][j];
    }
    for (const auto& x : v) {
      if (x != 0) throw std::logic_error("vector outside the generated module");
    }
    return c;
  }
};

long long rank_of(std::vector<std::vector<Q>> m) {
  long long rank = 0;
  const size_t nr = m.size();
  if (nr == 0) return 0;
  const size_t nc = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < nc && row < nr; ++col) {
    size_t sel = nr;
    for (size_t i = row; i < nr; ++i) {
      if (m[i][col] != 0) {
        sel = i;
        break;
      }
    }
    if (sel == nr) continue;
    std::swap(m[row], m[sel]);
    const Q inv = Q(1) / m[row][col];
    for (size_t j = col; j < nc; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < nr; ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Q c = m[i][col];
      for (size_t j = col; j < nc; ++j) m[i][j] -= c * m[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

void HighestWeight::validate() const {
  if (ab.empty()) throw std::invalid_argument("weight needs an embedding");
  for (const auto& w : ab) {
    if (((w[0] + w[1]) - c) % 2 != 0) throw ParityViolation();
  }
}

DominanceFlags dominance_tests(const HighestWeight& lam) {
  lam.validate();
  DominanceFlags f;
  f.dominant = true;
  f.regular = true;
  for (const auto& w : lam.ab) {
    f.dominant = f.dominant && w[0] >= w[1] && w[1] >= 0;
    f.regular = f.regular && lam.c >= w[0] && w[0] > w[1] && w[1] > 0;
  }
  f.separable = true;
  f.sufficientlySeparable = true;
  const size_t d = lam.ab.size();
  for (size_t s = 0; s < d; ++s) {
    for (size_t t = 0; t < d; ++t) {
      if (s == t) continue;
      const long xs = lam.ab[s][0], ys = lam.ab[s][1];
      const long xt = lam.ab[t][0], yt = lam.ab[t][1];
      if (xs == yt || xs + ys == xt - yt) f.separable = false;
      if (std::abs(xs - yt) <= 3 || std::abs(xs + ys - (xt - yt)) <= 3) {
        f.sufficientlySeparable = false;
      }
    }
  }
  f.vAdmissible = true;
  const auto h0 = ht_exponents(lam.ab[0][0], lam.ab[0][1], lam.c);
  for (const auto& w : lam.ab) {
    if (ht_exponents(w[0], w[1], lam.c) != h0) f.vAdmissible = false;
  }
  return f;
}

std::array<long, 2> dot_action(const WeylElt& w, const std::array<long, 2>& lam,
                               Parabolic scope) {
  long rx2 = 0, ry2 = 0;  // doubled rho of the chosen group
  if (scope == Parabolic::Full) {
    rx2 = 4;
    ry2 = 2;
  } else {
    if (!in_levi(scope, w)) throw InvalidWQ();
    for (const auto& r : levi_roots(scope)) {
      rx2 += r.m1;
      ry2 += r.m2;
    }
  }
  const auto [x2, y2] = w.apply(2 * lam[0] + rx2, 2 * lam[1] + ry2);
  const long ox2 = x2 - rx2, oy2 = y2 - ry2;
  if (ox2 % 2 != 0 || oy2 % 2 != 0) throw std::logic_error("dot action left the weight lattice");
  return {ox2 / 2, oy2 / 2};
}

KostantDatum kostant_weights(Parabolic qprime, const std::array<long, 2>& lam) {
  if (lam[0] < lam[1] || lam[1] < 0) throw NonDominant();
  const auto& RU = nilradical_roots(qprime);
  KostantDatum out;
  out.sigma = Parabolic::Full;
  out.w = WeylElt{};
  for (const auto& info : weyl::weyl_group()) {
    bool ok = true;
    for (const auto& g : inversion_set(info.w)) {
      if (!root_in(RU, g)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    out.entries.push_back(
        {info.w, dot_action(info.w, lam, Parabolic::Full), info.length});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const KostantEntry& a, const KostantEntry& b) {
                     if (a.degree != b.degree) return a.degree < b.degree;
                     return print_index(a.v) < print_index(b.v);
                   });
  out.q_lo = out.entries.front().degree;
  out.q_hi = out.entries.back().degree;
  return out;
}

KostantDatum kostant_weights(Parabolic sigma, const WeylElt& w, Parabolic q,
                             const std::array<long, 2>& lam) {
  if (!levi_dominant(q, lam)) throw NonDominant();
  const WeylElt wmin = min_coset_rep(q, sigma, w);
  const auto [qlo, qhi] = weyl::degree_stats(q, sigma, wmin);
  KostantDatum out;
  out.sigma = sigma;
  out.w = wmin;
  out.q_lo = qlo;
  out.q_hi = qhi;
  for (const auto& wq : weyl::levi_weyl(q)) {
    if (!in_stratum_kostant_set(sigma, wmin, q, wq)) continue;
    out.entries.push_back(
        {wq, dot_action(wq, lam, q), qlo + levi_length(q, wq)});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const KostantEntry& a, const KostantEntry& b) {
                     if (a.degree != b.degree) return a.degree < b.degree;
                     return print_index(a.v) < print_index(b.v);
                   });
  return out;
}

long long weyl_dimension(long a, long b) {
  if (a < b || b < 0) throw NonDominant();
  const long long n = static_cast<long long>(a - b + 1) * (b + 1) * (a + 2) *
                      (a + b + 3);
  return n / 6;
}

std::map<std::array<long, 2>, long long> weight_multiplicities(long a, long b) {
  if (a < b || b < 0) throw NonDominant();
  FreudenthalTable t;
  t.lam = {a, b};
  std::map<std::array<long, 2>, long long> out;
  for (long x = -a; x <= a; ++x) {
    for (long y = -a; y <= a; ++y) {
      const long long m = t.mult({x, y});
      if (m != 0) out[{x, y}] = m;
    }
  }
  return out;
}

long long freudenthal_dimension(long a, long b) {
  long long d = 0;
  for (const auto& [w, m] : weight_multiplicities(a, b)) d += m;
  return d;
}

std::vector<std::vector<std::array<long, 2>>> ce_cohomology_weights(
    Parabolic u, long a, long b) {
  if (a < b || b < 0) throw NonDominant();
  const Realization re(a, b);

  // Module basis generated from the highest vector by the simple lowerings.
  const QM4 y1 = root_mat(Root{-1, 1});   // -alpha1
  const QM4 y2 = root_mat(Root{0, -2});   // -alpha2
  const auto y1f = five_action(y1);
  const auto y2f = five_action(y2);
  Echelon W;
  {
    Vec h(static_cast<size_t>(re.dim));
    h[0] = 1;
    W.insert(std::move(h), {a, b});
  }
  for (bool grew = true; grew;) {
    grew = false;
    const size_t n = W.rows.size();
    for (size_t i = 0; i < n; ++i) {
      const auto wt = W.wts[i];
      const Vec v = W.rows[i];
      if (W.insert(re.apply(y1, y1f, v), {wt[0] - 1, wt[1] + 1})) grew = true;
      if (W.insert(re.apply(y2, y2f, v), {wt[0], wt[1] - 2})) grew = true;
    }
  }
  const size_t dW = W.rows.size();

  // Action matrices of the nilradical basis on the generated module.
  const auto& RU = nilradical_roots(u);
  const int m = static_cast<int>(RU.size());
  std::vector<std::vector<std::vector<Q>>> act;  // act[i][row][col]
  for (const auto& r : RU) {
    const QM4 x = root_mat(r);
    const auto xf = five_action(x);
    std::vector<std::vector<Q>> mat(dW, std::vector<Q>(dW));
    for (size_t col = 0; col < dW; ++col) {
      const auto c = W.coords(re.apply(x, xf, W.rows[col]));
      for (size_t row = 0; row < dW; ++row) mat[row][col] = c[row];
    }
    act.push_back(std::move(mat));
  }

  // Structure constants: [X_i, X_j] = c * X_{root_i + root_j} (or zero).
  std::vector<std::vector<std::pair<int, Q>>> brk(
      static_cast<size_t>(m), std::vector<std::pair<int, Q>>(static_cast<size_t>(m), {-1, Q(0)}));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const QM4 xi = root_mat(RU[static_cast<size_t>(i)]);
      const QM4 xj = root_mat(RU[static_cast<size_t>(j)]);
      const QM4 c = xi * xj - xj * xi;
      const Root s{RU[static_cast<size_t>(i)].m1 + RU[static_cast<size_t>(j)].m1,
                   RU[static_cast<size_t>(i)].m2 + RU[static_cast<size_t>(j)].m2};
      int tgt = -1;
      for (int t = 0; t < m; ++t) {
        if (RU[static_cast<size_t>(t)] == s) tgt = t;
      }
      if (tgt < 0) {
        if (!(c == QM4::zero())) throw std::logic_error("bracket escapes the nilradical");
        continue;
      }
      const QM4 xt = root_mat(RU[static_cast<size_t>(tgt)]);
      Q coef = 0;
      for (int e = 0; e < 16 && coef == 0; ++e) {
        if (xt.e[static_cast<size_t>(e)] != 0) coef = c.e[static_cast<size_t>(e)] / xt.e[static_cast<size_t>(e)];
      }
      if (!(xt.scaled(coef) == c)) throw std::logic_error("bracket not a root vector");
      brk[static_cast<size_t>(i)][static_cast<size_t>(j)] = {tgt, coef};
    }
  }

  // Exterior-complex bases: per degree the sorted k-subsets of the nilradical.
  // One empty slot past the top degree keeps build_d(m) in range.
  std::vector<std::vector<int>> subsets(static_cast<size_t>(m) + 2);
  for (int mask = 0; mask < (1 << m); ++mask) {
    subsets[static_cast<size_t>(__builtin_popcount(static_cast<unsigned>(mask)))].push_back(mask);
  }
  auto elems = [&](int mask) {
    std::vector<int> e;
    for (int t = 0; t < m; ++t) {
      if (mask & (1 << t)) e.push_back(t);
    }
    return e;
  };

  // Differential d_k as a dense matrix (rows: degree k+1, cols: degree k).
  auto build_d = [&](int k) {
    const auto& cols = subsets[static_cast<size_t>(k)];
    const auto& rws = subsets[static_cast<size_t>(k) + 1];
    std::vector<std::vector<Q>> d(rws.size() * dW, std::vector<Q>(cols.size() * dW));
    std::map<int, size_t> colpos;
    for (size_t i = 0; i < cols.size(); ++i) colpos[cols[i]] = i;
    for (size_t ti = 0; ti < rws.size(); ++ti) {
      const auto T = elems(rws[ti]);
      for (size_t j = 0; j < T.size(); ++j) {
        const int S = rws[ti] & ~(1 << T[j]);
        const auto it = colpos.find(S);
        if (it != colpos.end()) {
          const int sgn = (j % 2 == 0) ? 1 : -1;
          const auto& A = act[static_cast<size_t>(T[j])];
          for (size_t rr = 0; rr < dW; ++rr) {
            for (size_t cc = 0; cc < dW; ++cc) {
              if (A[rr][cc] != 0) {
                d[ti * dW + rr][it->second * dW + cc] += sgn * A[rr][cc];
              }
            }
          }
        }
        for (size_t l = j + 1; l < T.size(); ++l) {
          const auto& [tgt, coef] = brk[static_cast<size_t>(T[j])][static_cast<size_t>(T[l])];
          if (tgt < 0 || coef == 0) continue;
          const int rest = rws[ti] & ~(1 << T[j]) & ~(1 << T[l]);
          if (rest & (1 << tgt)) continue;
          const int Sb = rest | (1 << tgt);
          const auto is = colpos.find(Sb);
          if (is == colpos.end()) continue;
          int below = 0;
          for (int t = 0; t < tgt; ++t) {
            if (rest & (1 << t)) ++below;
          }
          const int sgn = (((j + l) % 2 == 0) ? 1 : -1) * ((below % 2 == 0) ? 1 : -1);
          for (size_t rr = 0; rr < dW; ++rr) {
            d[ti * dW + rr][is->second * dW + rr] += sgn * coef;
          }
        }
      }
    }
    return d;
  };

  std::vector<std::vector<std::vector<Q>>> diff;
  for (int k = 0; k <= m; ++k) diff.push_back(build_d(k));

  // d^2 = 0 certifies the signs and the structure constants.
  for (int k = 0; k + 1 <= m; ++k) {
    const auto& d0 = diff[static_cast<size_t>(k)];
    const auto& d1 = diff[static_cast<size_t>(k) + 1];
    for (size_t c = 0; c < d0[0].size(); ++c) {
      for (size_t r = 0; r < d1.size(); ++r) {
        Q s = 0;
        for (size_t t = 0; t < d0.size(); ++t) s += d1[r][t] * d0[t][c];
        if (s != 0) throw std::logic_error("differential does not square to zero");
      }
    }
  }

  // Weight of a column (S, b): module weight minus the sum over S.
  auto col_weight = [&](int mask, size_t b) {
    std::array<long, 2> w = W.wts[b];
    for (int t = 0; t < m; ++t) {
      if (mask & (1 << t)) {
        w[0] -= RU[static_cast<size_t>(t)].m1;
        w[1] -= RU[static_cast<size_t>(t)].m2;
      }
    }
    return w;
  };

  std::vector<std::vector<std::array<long, 2>>> result(static_cast<size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    // group the degree-k columns by weight
    std::map<std::array<long, 2>, std::vector<size_t>> byw;
    for (size_t si = 0; si < subsets[static_cast<size_t>(k)].size(); ++si) {
      for (size_t b = 0; b < dW; ++b) {
        byw[col_weight(subsets[static_cast<size_t>(k)][si], b)].push_back(si * dW + b);
      }
    }
    for (const auto& [wgt, idx] : byw) {
      // restrict d_k to the weight block
      const auto& dk = diff[static_cast<size_t>(k)];
      std::vector<std::vector<Q>> blk;
      for (size_t r = 0; r < dk.size(); ++r) {
        std::vector<Q> row;
        bool nz = false;
        for (const size_t c : idx) {
          row.push_back(dk[r][c]);
          if (dk[r][c] != 0) nz = true;
        }
        if (nz) blk.push_back(std::move(row));
      }
      const long long rk = blk.empty() ? 0 : rank_of(blk);
      long long rk_prev = 0;
      if (k > 0) {
        const auto& dp = diff[static_cast<size_t>(k) - 1];
        std::vector<std::vector<Q>> blkp;
        for (size_t c = 0; c < dp[0].size(); ++c) {
          std::vector<Q> col;
          bool nz = false;
          for (const size_t r : idx) {
            col.push_back(dp[r][c]);
            if (dp[r][c] != 0) nz = true;
          }
          if (nz) blkp.push_back(std::move(col));
        }
        rk_prev = blkp.empty() ? 0 : rank_of(blkp);
      }
      const long long h = static_cast<long long>(idx.size()) - rk - rk_prev;
      for (long long t = 0; t < h; ++t) result[static_cast<size_t>(k)].push_back(wgt);
    }
    std::sort(result[static_cast<size_t>(k)].begin(), result[static_cast<size_t>(k)].end());
  }
  return result;
}

std::vector<std::array<long, 2>> levi_weight_string(
    Parabolic q, const std::array<long, 2>& mu) {
  const auto& lr = levi_roots(q);
  if (lr.empty()) return {mu};
  const Root al = lr.front();
  const long n = coroot_pairing(mu, al);
  if (n < 0) throw NonDominant();
  std::vector<std::array<long, 2>> out;
  for (long j = 0; j <= n; ++j) out.push_back({mu[0] - j * al.m1, mu[1] - j * al.m2});
  return out;
}

bool kostant_euler_identity(Parabolic u, long a, long b) {
  const auto mult = weight_multiplicities(a, b);
  const auto& RU = nilradical_roots(u);
  const int m = static_cast<int>(RU.size());
  std::map<std::array<long, 2>, long long> lhs;
  for (int mask = 0; mask < (1 << m); ++mask) {
    long sx = 0, sy = 0;
    int bits = 0;
    for (int t = 0; t < m; ++t) {
      if (mask & (1 << t)) {
        sx += RU[static_cast<size_t>(t)].m1;
        sy += RU[static_cast<size_t>(t)].m2;
        ++bits;
      }
    }
    const long long sgn = (bits % 2 == 0) ? 1 : -1;
    for (const auto& [w, c] : mult) {
      lhs[{w[0] - sx, w[1] - sy}] += sgn * c;
    }
  }
  std::map<std::array<long, 2>, long long> rhs;
  for (const auto& e : kostant_weights(u, {a, b}).entries) {
    for (const auto& wt : levi_weight_string(u, e.weight)) {
      rhs[wt] += (e.degree % 2 == 0) ? 1 : -1;
    }
  }
  auto strip = [](std::map<std::array<long, 2>, long long>& mp) {
    for (auto it = mp.begin(); it != mp.end();) {
      it = (it->second == 0) ? mp.erase(it) : std::next(it);
    }
  };
  strip(lhs);
  strip(rhs);
  return lhs == rhs;
}

std::array<long, 2> central_character(Parabolic sigma, const WeylElt& w,
                                      const WeylElt& wq, Parabolic q,
                                      const std::array<long, 2>& lamchi) {
  if (!in_levi(q, wq) || !in_stratum_kostant_set(sigma, w, q, wq)) {
    throw InvalidWQ();
  }
  const auto mu = dot_action(wq, lamchi, q);
  auto [x, y] = w.inverse().apply(mu[0], mu[1]);
  const auto& RQ = nilradical_roots(q);
  for (const auto& al : nilradical_roots(sigma)) {
    if (root_in(RQ, w.apply(al))) {
      x += al.m1;
      y += al.m2;
    }
  }
  return {x, y};
}

long central_restriction(Parabolic sigma, const std::array<long, 2>& omega) {
  if (sigma == Parabolic::Siegel) return omega[0] + omega[1];
  if (sigma == Parabolic::Klingen) return pair_a1(omega);
  throw InvalidWQ("central restriction needs a maximal stratum");
}

namespace {

std::string selector_name(Parabolic sigma, int q) {
  const bool siegel = sigma == Parabolic::Siegel;
  switch (q) {
    case 1: return "-id";
    case 2: return siegel ? "-s2" : "-s1";
    case 3: return siegel ? "s2" : "s1";
    case 4: return "id";
  }
  throw UnsupportedDegree();
}

std::string induction_tag(LevelType level, Parabolic sigma,
                          const std::string& wname, bool borel_stratum) {
  if (level == LevelType::Gamma0) return "1";
  if (borel_stratum) return "E";
  return "T1(" + parabolic_name(sigma) + "," + wname + ")*E";
}

// Weight of the single Kostant piece of (sigma, w, q) sitting in L-index qi.
std::array<long, 2> piece_weight(Parabolic sigma, const std::string& wname,
                                 Parabolic q, int qi,
                                 const std::array<long, 2>& lamchi) {
  const auto datum = kostant_weights(sigma, weyl::by_name(wname), q, lamchi);
  for (const auto& e : datum.entries) {
    if (e.degree == qi) return e.weight;
  }
  throw std::logic_error("no Kostant piece at the requested index");
}

}  // namespace

std::vector<BoundarySummand> boundary_summands(
    Parabolic q, int degree, LevelType level,
    const std::array<long, 2>& lamchi) {
  if (q == Parabolic::Full) throw std::invalid_argument("parahoric type required");
  if (degree < 0 || degree > 5) throw UnsupportedDegree();
  std::vector<BoundarySummand> out;
  if (q == Parabolic::Borel) {
    if (degree == 0 || degree == 5) return out;
    if (degree == 1 || degree == 4) {
      // full-flag strata contribute exactly in their table degree
      for (const auto& info : weyl::weyl_group()) {
        const auto [nw, nw2] = weyl::degree_stats(Parabolic::Borel,
                                                  Parabolic::Borel, info.w);
        (void)nw2;
        if (nw != degree) continue;
        out.push_back({Parabolic::Borel, info.name, 0, lamchi,
                       induction_tag(level, Parabolic::Borel, info.name, true),
                       false});
      }
    }
    for (const Parabolic sig : {Parabolic::Siegel, Parabolic::Klingen}) {
      const std::string wn = selector_name(sig, degree);
      out.push_back({sig, wn, 1,
                     piece_weight(sig, wn, q,
                                  weyl::degree_stats(q, sig, weyl::by_name(wn)).first,
                                  lamchi),
                     induction_tag(level, sig, wn, false), false});
    }
    return out;
  }
  if (degree != 3) throw UnsupportedDegree();
  const Parabolic own = q;
  const Parabolic other =
      (q == Parabolic::Siegel) ? Parabolic::Klingen : Parabolic::Siegel;
  const std::string sown = (q == Parabolic::Siegel) ? "s2" : "s1";
  out.push_back({own, sown, 1, piece_weight(own, sown, q, 2, lamchi),
                 induction_tag(level, own, sown, false), false});
  out.push_back({own, "id", 0, piece_weight(own, "id", q, 3, lamchi),
                 level == LevelType::Gamma0 ? "1" : "E", true});
  out.push_back({other, "id", 1, piece_weight(other, "id", q, 2, lamchi),
                 induction_tag(level, other, "id", false), false});
  return out;
}

std::string summands_json(const std::vector<BoundarySummand>& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : v) {
    nlohmann::ordered_json o;
    o["stratum"] = parabolic_name(s.stratum);
    o["weylClass"] = s.weylClass;
    o["leviDegree"] = s.leviDegree;
    o["highestWeight"] = {s.highestWeight[0], s.highestWeight[1]};
    o["inductionIndex"] = s.inductionIndex;
    o["torsion"] = s.torsion;
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

std::vector<GeneralBoundarySkeleton> general_boundary_skeletons(int d) {
  if (d < 1) throw std::invalid_argument("base degree must be positive");
  return {{Parabolic::Klingen, "s1", d, 2 * d, 0, true},
          {Parabolic::Siegel, "s2", d, 2 * d, 0, true}};
}

namespace {

// Index [Z^2 : L] for the lattice spanned by the rows (used with n*I included,
// so the index is finite).
long long lattice_index2(std::vector<std::array<long long, 2>> rows) {
  for (;;) {
    size_t sel = rows.size();
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][0] != 0 && (sel == rows.size() ||
                              std::abs(rows[i][0]) < std::abs(rows[sel][0]))) {
        sel = i;
      }
    }
    if (sel == rows.size()) throw std::logic_error("lattice not of finite index");
    bool any = false;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == sel || rows[i][0] == 0) continue;
      const long long f = rows[i][0] / rows[sel][0];
      rows[i][0] -= f * rows[sel][0];
      rows[i][1] -= f * rows[sel][1];
      if (rows[i][0] != 0) any = true;
    }
    if (any) continue;
    // single pivot row left in column 0; the rest span the column-1 sublattice
    long long c = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i != sel) c = std::gcd(c, rows[i][1]);
    }
    if (c == 0) throw std::logic_error("lattice not of finite index");
    return std::abs(rows[sel][0]) * c;
  }
}

}  // namespace

long long cusp_fiber(Parabolic sigma, const WeylElt& w, Parabolic q, long p,
                     int r, LevelType level,
                     const std::vector<std::array<long long, 2>>& unitImage) {
  if (level == LevelType::Gamma0) return 1;
  if (q == Parabolic::Full || sigma == Parabolic::Full) {
    throw std::invalid_argument("parahoric type required");
  }
  if (p < 3 || p % 2 == 0 || r < 1) throw std::invalid_argument("odd p, r >= 1");
  long long modulus = 1, n = 1;
  for (int i = 0; i < r; ++i) modulus *= p;
  n = modulus / p * (p - 1);  // unit group order, cyclic for odd p

  auto modpow = [&](long long b, long long e) {
    long long acc = 1;
    b %= modulus;
    for (; e > 0; e >>= 1) {
      if (e & 1) acc = acc * b % modulus;
      b = b * b % modulus;
    }
    return acc;
  };
  std::vector<long long> nprimes;
  long long rem = n;
  for (long long f = 2; f * f <= rem; ++f) {
    if (rem % f == 0) {
      nprimes.push_back(f);
      while (rem % f == 0) rem /= f;
    }
  }
  if (rem > 1) nprimes.push_back(rem);

  // primitive root mod p^r: order n exactly, i.e. g^(n/f) != 1 for prime f | n
  long long g = 0;
  for (long long cand = 2; cand < modulus && g == 0; ++cand) {
    if (std::gcd(cand, modulus) != 1) continue;
    bool prim = true;
    for (const long long f : nprimes) {
      if (modpow(cand, n / f) == 1) {
        prim = false;
        break;
      }
    }
    if (prim) g = cand;
  }
  std::map<long long, long long> dlog;
  {
    long long x = 1;
    for (long long e = 0; e < n; ++e) {
      dlog[x] = e;
      x = (x * g) % modulus;
    }
  }

  // generators of the image subgroup, as exponent vectors on the torus
  std::vector<std::array<long long, 2>> gens;
  if (sigma == Parabolic::Siegel) {
    const auto [x, y] = w.apply(1, -1);
    gens.push_back({x, y});
  } else if (sigma == Parabolic::Klingen) {
    const auto [x, y] = w.apply(0, 1);
    gens.push_back({x, y});
  }
  for (const auto& t : unitImage) {
    const auto i1 = dlog.find(mod_reduce(t[0], modulus));
    const auto i2 = dlog.find(mod_reduce(t[1], modulus));
    if (i1 == dlog.end() || i2 == dlog.end()) {
      throw std::invalid_argument("unit image entry is not a unit");
    }
    gens.push_back({i1->second, i2->second});
  }

  if (q == Parabolic::Borel) {
    std::vector<std::array<long long, 2>> rows = {{n, 0}, {0, n}};
    for (const auto& v : gens) {
      rows.push_back({mod_reduce(v[0], n), mod_reduce(v[1], n)});
    }
    return lattice_index2(rows);
  }
  // rank-one cocenter: det for the Siegel parahoric, first entry for Klingen
  long long d = n;
  for (const auto& v : gens) {
    const long long e =
        (q == Parabolic::Siegel) ? mod_reduce(v[0] + v[1], n) : mod_reduce(v[0], n);
    d = std::gcd(d, e);
  }
  return d;
}

long long hida_rank(int d, int delta, const std::vector<PlaceDatum>& places) {
  int sum = 0;
  long long rank = 1 + delta;
  for (const auto& pl : places) {
    if (pl.q_v == Parabolic::Full) {
      throw std::invalid_argument("parahoric type required");
    }
    sum += pl.d_v;
    rank += static_cast<long long>(pl.q_v == Parabolic::Borel ? 2 : 1) * pl.d_v;
  }
  if (sum != d) throw InconsistentDegrees();
  return rank;
}

FrankeFilter franke_contribution_filter(
    Parabolic sigma, const std::vector<std::array<long, 2>>& xy,
    int degree_bound) {
  if (sigma == Parabolic::Full) throw std::invalid_argument("stratum type required");
  if (xy.empty()) throw std::invalid_argument("weight needs an embedding");
  for (const auto& w : xy) {
    if (!(w[0] > w[1] && w[1] > 0)) throw NonRegular();
  }
  const int d = static_cast<int>(xy.size());
  if (d > 16) throw ScaleRefused("too many embeddings");
  FrankeFilter out;
  out.sigma = sigma;
  Q sx = 0, sy = 0, sxy = 0;
  for (const auto& w : xy) {
    sx += w[0];
    sy += w[1];
    sxy += w[0] + w[1];
  }
  if (sigma == Parabolic::Borel) {
    out.projection = {sx, sy};
    const int deg = 4 * d;
    if (deg <= degree_bound) {
      FrankeContribution c;
      c.components.assign(static_cast<size_t>(d), weyl::by_name("-id"));
      c.length = deg;
      c.degree = deg;
      out.admissible.push_back(std::move(c));
    }
    return out;
  }
  if (sigma == Parabolic::Siegel) {
    out.projection = {sxy / 2, sxy / 2};
  } else {
    out.projection = {sx, Q(0)};
  }
  const std::array<std::string, 2> pool =
      (sigma == Parabolic::Siegel) ? std::array<std::string, 2>{"s2s1", "-s2"}
                                   : std::array<std::string, 2>{"s1s2", "-s1"};
  for (int mask = 0; mask < (1 << d); ++mask) {
    FrankeContribution c;
    for (int i = 0; i < d; ++i) {
      const auto& nm = pool[static_cast<size_t>((mask >> i) & 1)];
      c.components.push_back(weyl::by_name(nm));
      c.length += weyl::length(weyl::by_name(nm));
    }
    c.degree = c.length + d;
    if (c.degree <= degree_bound) out.admissible.push_back(std::move(c));
  }
  std::stable_sort(out.admissible.begin(), out.admissible.end(),
                   [](const FrankeContribution& a, const FrankeContribution& b) {
                     return a.degree < b.degree;
                   });
  return out;
}

}  // namespace gsp4::weights
