#include "gsp4/arith.hpp"

namespace gsp4 {

int valp(const Z& a, long p) {
  if (a == 0) return VAL_INF;
  mpz_class rem;
  return static_cast<int>(mpz_remove(rem.get_mpz_t(), a.get_mpz_t(), Z(p).get_mpz_t()));
}

int valp(const Q& a, long p) {
  if (a == 0) return VAL_INF;
  return valp(Z(a.get_num()), p) - valp(Z(a.get_den()), p);
}

Q unit_part(const Q& a, long p) {
  if (a == 0) throw std::domain_error("unit_part of zero");
  int v = valp(a, p);
  Q pw(1);
  Z ppow;
  mpz_ui_pow_ui(ppow.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(v >= 0 ? v : -v));
  if (v >= 0)
    pw = Q(ppow);
  else
    pw = Q(1) / Q(ppow);
  Q u = a / pw;
  u.canonicalize();
  return u;
}

bool p_integral(const Q& a, long p) {
  // valuation-based so non-canonical mpq values are judged correctly
  return a == 0 || valp(a, p) >= 0;
}

long long ipow(long long b, unsigned e) {
  long long r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && (r > (1LL << 62) / (b > 0 ? b : -b)))
      throw std::overflow_error("ipow overflow");
    r *= b;
  }
  return r;
}

long long mod_reduce(const Z& a, long long m) {
  static_assert(sizeof(long) == sizeof(long long), "needs 64-bit long");
  Z r = a % Z(static_cast<long>(m));
  if (r < 0) r += static_cast<long>(m);
  return r.get_si();
}

long long mod_reduce(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

long long mod_reduce_q(const Q& aa, long long m, long p) {
  Q a(aa);
  a.canonicalize();
  if (!p_integral(a, p)) throw std::domain_error("non p-integral rational mod p^r");
  Z den(a.get_den());
  Z num(a.get_num());
  long long d = mod_reduce(den, m);
  return mul_mod(mod_reduce(num, m), inv_mod(d, m), m);
}

long long inv_mod(long long a, long long m) {
  a = mod_reduce(a, m);
  long long t = 0, newt = 1, r = m, newr = a;
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("non-unit inverse mod m");
  return mod_reduce(t, m);
}

long long mul_mod(long long a, long long b, long long m) {
  return static_cast<long long>((static_cast<__int128>(a) * b) % m);
}

long long pow_mod(long long a, long long e, long long m) {
  long long r = 1 % m;
  a = mod_reduce(a, m);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace gsp4
