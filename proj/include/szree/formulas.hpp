#pragma once

// Closed-form counts and bound chains for the subfield-subgroup actions
// of Sz(q) and Ree(q), and for the 2 x PSL(2,q) action of Ree(q), all in
// exact rational arithmetic. Decimal constants are carried as fractions.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "szree/gf.hpp"

namespace szree {

using rational = boost::multiprecision::cpp_rational;

class formula_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bigint big_pow(unsigned base, long long e) {
  if (e < 0) throw formula_error("negative integer power");
  bigint r = 1, b = base;
  auto u = static_cast<unsigned long long>(e);
  while (u) {
    if (u & 1) r *= b;
    b *= b;
    u >>= 1;
  }
  return r;
}

// base^e for any integer e, as a rational
inline rational rat_pow(const rational& base, long long e) {
  rational r = 1, b = base;
  if (e < 0) {
    b = 1 / b;
    e = -e;
  }
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline rational dec(long long num, long long den) { return rational(bigint(num), bigint(den)); }

inline bool is_integral(const rational& x) { return denominator(x) == 1; }

// x < base^(num/den), den > 0, base > 0, decided by raising to the den-th power
inline bool less_than_root_power(const rational& x, unsigned base, long long num, long long den) {
  if (den <= 0) throw formula_error("bad root");
  if (x <= 0) return true;
  return rat_pow(x, den) < rat_pow(rational(base), num);
}

// largest power of base at most base^(num/den): base^floor(num/den)
inline rational power_floor(unsigned base, long long num, long long den) {
  long long e = num / den;
  if (num % den != 0 && (num < 0) != (den < 0)) --e;
  return rat_pow(rational(base), e);
}
inline rational power_ceil(unsigned base, long long num, long long den) {
  long long e = num / den;
  if (num % den != 0 && (num < 0) == (den < 0)) ++e;
  return rat_pow(rational(base), e);
}

inline std::vector<bigint> distinct_prime_factors(bigint n) {
  std::vector<bigint> out;
  if (n < 2) return out;
  for (bigint d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ------------------------------------------------------------- ledger

struct LedgerEntry {
  std::string name;
  rational value;
};

struct Verdict {
  std::string name;
  bool pass = false;
};

struct ParamLedger {
  std::string label;
  std::vector<LedgerEntry> values;
  std::vector<Verdict> verdicts;
  // intermediate displayed bounds; a failure is a discrepancy, not a verdict
  std::vector<Verdict> bounds;
  std::vector<std::string> discrepancies;

  const rational& put(const std::string& name, const rational& v) {
    values.push_back({name, v});
    return values.back().value;
  }
  bool check(const std::string& name, bool ok) {
    verdicts.push_back({name, ok});
    return ok;
  }
  bool bound(const std::string& name, bool ok) {
    bounds.push_back({name, ok});
    if (!ok) discrepancies.push_back(label + ": displayed bound " + name + " does not hold");
    return ok;
  }
  const rational& get(const std::string& name) const {
    for (const auto& e : values)
      if (e.name == name) return e.value;
    throw formula_error("no ledger value " + name);
  }
  bool has(const std::string& name) const {
    for (const auto& e : values)
      if (e.name == name) return true;
    return false;
  }
  bool verdict(const std::string& name) const {
    for (const auto& v : verdicts)
      if (v.name == name) return v.pass;
    throw formula_error("no verdict " + name);
  }
  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
  void merge(const ParamLedger& o) {
    values.insert(values.end(), o.values.begin(), o.values.end());
    verdicts.insert(verdicts.end(), o.verdicts.begin(), o.verdicts.end());
    bounds.insert(bounds.end(), o.bounds.begin(), o.bounds.end());
    discrepancies.insert(discrepancies.end(), o.discrepancies.begin(), o.discrepancies.end());
  }
};

// ------------------------------------------------------------- Suzuki

struct SzParams {
  long long l = 0, e = 0, m = 0;
  bigint q, qp, r, rp;  // q, q', r, r'
  int delta = 0, deltap = 0;

  static SzParams make(long long l, long long e) {
    if (l < 3 || l % 2 == 0) throw formula_error("l must be odd and >= 3");
    if (e < 3 || !is_prime_ll(e)) throw formula_error("e must be an odd prime");
    SzParams p;
    p.l = l;
    p.e = e;
    p.m = l * e;
    p.q = big_pow(2, p.m);
    p.qp = big_pow(2, l);
    p.r = big_pow(2, (p.m + 1) / 2);
    p.rp = big_pow(2, (l + 1) / 2);
    p.delta = delta_sign_exp(static_cast<unsigned>(p.m));
    p.deltap = delta_sign_exp(static_cast<unsigned>(l));
    return p;
  }
  std::string label() const { return "sz(l=" + std::to_string(l) + ",e=" + std::to_string(e) + ")"; }
  bigint sz_order(const bigint& x) const { return x * x * (x * x + 1) * (x - 1); }
  bigint m0_order() const { return sz_order(qp); }
  bigint omega0() const { return sz_order(q) / m0_order(); }
  // q + s*delta*r + 1 with s = +1 / -1, and the primed analogue
  bigint torus(int s) const { return q + s * delta * r + 1; }
  bigint torus_p(int s) const { return qp + s * deltap * rp + 1; }
};

inline ParamLedger sz_fix_table(const SzParams& p) {
  ParamLedger L;
  L.label = p.label();
  std::vector<std::pair<std::string, rational>> items = {
      {"fix.z4_in_q0", rational(big_pow(2, p.m - p.l))},
      {"fix.above_q0", rational(1)},
      {"fix.split_torus", rational(p.q - 1, p.qp - 1)},
      {"fix.split_torus_dihedral", rational(1)},
      {"fix.torus_plus", rational(p.torus(1), p.torus_p(1))},
      {"fix.torus_minus", rational(p.torus(-1), p.torus_p(-1))},
      {"fix.torus_z2", rational(1)},
      {"fix.involution", rational(big_pow(2, 2 * (p.m - p.l)))},
      {"fix.center_q0", rational(big_pow(2, 2 * (p.m - p.l)))},
      {"fix.center_q0_torus", rational(1)}};
  for (auto& [n, v] : items) {
    L.put(n, v);
    L.check(n + ".nonneg_integer", v >= 0 && is_integral(v));
  }
  // fixed-point counts of cyclic tori equal normalizer indices
  L.check("fix.split_torus.index", L.get("fix.split_torus") == rational(2 * (p.q - 1), 2 * (p.qp - 1)));
  L.check("fix.torus_plus.index", L.get("fix.torus_plus") == rational(4 * p.torus(1), 4 * p.torus_p(1)));
  L.check("fix.torus_minus.index", L.get("fix.torus_minus") == rational(4 * p.torus(-1), 4 * p.torus_p(-1)));
  return L;
}

inline ParamLedger sz_suborbit_counts(const SzParams& p) {
  ParamLedger L;
  L.label = p.label();
  const bigint a = big_pow(2, p.m - p.l), b = p.qp;  // 2^(m-l), 2^l
  const rational x1(a - 1, b - 1);
  const rational x2(big_pow(2, p.l - 1) * (a - 1), b - 1);
  const rational x3(p.q - p.qp + p.delta * p.r - p.deltap * p.rp, 4 * p.torus_p(1));
  const rational x4(p.q - p.qp - p.delta * p.r + p.deltap * p.rp, 4 * p.torus_p(-1));
  const rational x5(a * (a - 1), b * (b - 1));
  const std::vector<std::pair<std::string, rational>> xs = {{"x1", x1}, {"x2", x2}, {"x3", x3}, {"x4", x4}, {"x5", x5}};
  for (auto& [n, v] : xs) {
    L.put(n, v);
    L.check(n + ".nonneg_integer", v >= 0 && is_integral(v));
  }
  // the same numbers from fixed-point counts and per-suborbit fixed points
  const rational fix_q0(a), fix_k2(p.q - 1, p.qp - 1), fix_k5(a * a);
  L.check("x1.from_fix", x1 == (fix_q0 - 1) / (b - 1));
  L.check("x2.from_fix", x2 == (fix_k2 - 1) / 2);
  L.check("x3.from_fix", x3 == (rational(p.torus(1), p.torus_p(1)) - 1) / 4);
  L.check("x4.from_fix", x4 == (rational(p.torus(-1), p.torus_p(-1)) - 1) / 4);
  L.check("x5.from_fix", x5 == (fix_k5 - 1 - x1 * (b - 1)) / (b * (b - 1)));
  return L;
}

inline std::vector<bigint> sz_k_orders(const SzParams& p) {
  return {p.qp * p.qp, p.qp - 1, p.torus_p(1), p.torus_p(-1), p.qp};
}

inline ParamLedger sz_gamma0(const SzParams& p) {
  ParamLedger L = sz_suborbit_counts(p);
  const bigint m0 = p.m0_order(), om = p.omega0();
  L.put("m0_order", rational(m0));
  L.put("omega0", rational(om));
  const auto ks = sz_k_orders(p);
  rational nonreg = 0;
  for (int i = 0; i < 5; ++i) {
    const std::string n = "x" + std::to_string(i + 1);
    const rational len = rational(m0, ks[i]);
    L.check("suborbit_length." + n + ".integer", is_integral(len));
    nonreg += len * L.get(n);
  }
  const rational g0 = rational(om) - 1 - nonreg;
  L.put("nonregular_points", nonreg);
  L.put("gamma0", g0);
  L.check("gamma0.integer", is_integral(g0) && is_integral(nonreg));
  L.check("gamma0.partition", 1 + nonreg + g0 == rational(om));
  L.check("gamma0.multiple_of_m0", is_integral(g0 / rational(m0)));
  L.check("gamma0.above_half", g0 > rational(om, 2));
  return L;
}

// Bound on regular T-suborbits spoiled by order-p0 elements of M \ M0.
inline rational sz_nprime_p(const SzParams& p, long long p0, long long m1) {
  if (!is_prime_ll(p0) || m1 <= 0 || p.m % m1 != 0 || m1 % p0 != 0)
    throw formula_error("need a prime p0 dividing m1, m1 dividing m");
  if (p0 == p.e) return dec(65, 224) * (p0 - 1) * (p0 - 1) * rational(p.qp * p.qp * p.qp);
  if (p.m % (p0 * p.e) != 0) throw formula_error("p0 e must divide m");
  auto s = [](long long k) { return big_pow(2, 2 * k) * (big_pow(2, 2 * k) + 1) * (big_pow(2, k) - 1); };
  const bigint den = s(p.m / (p0 * p.e));
  return rational(s(p.m / p0), den * den);
}

// Closed-form total bound 65/56 q'^e + 9/8 q'^((5e-7)/3). The second term
// has a fractional exponent; `upper` rounds it up to an integer power of 2.
struct NprimeTotal {
  rational lead;           // 65/56 q'^e
  long long frac_num = 0;  // 2^(frac_num/3) is the fractional power
  rational upper;          // lead + 9/8 * 2^ceil(frac_num/3)
};

inline NprimeTotal sz_nprime_total(const SzParams& p) {
  NprimeTotal t;
  t.lead = dec(65, 56) * rational(big_pow(2, p.l * p.e));
  t.frac_num = p.l * (5 * p.e - 7);
  t.upper = t.lead + dec(9, 8) * power_ceil(2, t.frac_num, 3);
  return t;
}

// x <= lead + 9/8 2^(frac/3), exactly
inline bool below_nprime_total(const rational& x, const NprimeTotal& t) {
  const rational rest = (x - t.lead) * dec(8, 9);
  return !(!less_than_root_power(rest, 2, t.frac_num, 3) && rat_pow(rest, 3) != rat_pow(rational(2), t.frac_num));
}

inline ParamLedger sz_nprime_bounds(const SzParams& p, long long p0, long long m1 = 0) {
  if (m1 == 0) m1 = p.m;
  ParamLedger L;
  L.label = p.label() + ",p0=" + std::to_string(p0);
  L.put("nprime_p", sz_nprime_p(p, p0, m1));
  // per-prime bounds summed over e and the primes of l
  rational sum = sz_nprime_p(p, p.e, p.m);
  for (const auto& ei : distinct_prime_factors(bigint(p.l))) {
    const long long pi = static_cast<long long>(ei);
    if (pi != p.e) sum += sz_nprime_p(p, pi, p.m);
  }
  L.put("nprime_sum_over_primes", sum);
  const auto tot = sz_nprime_total(p);
  L.put("nprime_total_bound_upper", tot.upper);
  L.bound("nprime_sum_within_total", below_nprime_total(sum, tot));
  return L;
}

inline ParamLedger sz_main_inequality(const SzParams& p) {
  if (p.e < 3 || p.qp < 8) throw formula_error("outside the hypothesis range e >= 3, q' >= 8");
  ParamLedger L = sz_gamma0(p);
  const rational om(p.omega0()), m0(p.m0_order()), qp(p.qp);
  const long long e = p.e;
  const rational A0 = L.get("gamma0") - om / 2;
  L.put("A0", A0);
  L.check("A0.positive", A0 > 0);
  const rational chain = dec(511, 1040) * rat_pow(qp, 6 * e - 5) - dec(2681, 1000) * rat_pow(qp, e + 3) -
                         dec(65, 64) * rat_pow(qp, e + 2) - dec(65, 64) * rat_pow(qp, 2 * e) - 1;
  L.put("A0.chain_lower", chain);
  L.bound("A0.chain_below_A0", chain <= A0);
  L.bound("A0.chain_positive", chain > 0);
  L.bound("m0_order.upper", m0 <= dec(65, 64) * rat_pow(qp, 5));

  const auto tot = sz_nprime_total(p);
  // B without the fractional term; B > 0 iff rest > 9/8 q'^((5e-7)/3)
  const rational Bpart = dec(48, 100) * rat_pow(qp, 6 * e - 10) - dec(264, 100) * rat_pow(qp, e - 2) -
                         rat_pow(qp, e - 3) - rat_pow(qp, 2 * e - 5) - dec(64, 65) * rat_pow(qp, -5) - tot.lead;
  const rational rest = Bpart * dec(8, 9);
  const bool B_pos = rest > 0 && !less_than_root_power(rest, 2, tot.frac_num, 3) &&
                     rat_pow(rest, 3) != rat_pow(rational(2), tot.frac_num);
  L.put("B.lower", Bpart - dec(9, 8) * power_ceil(2, tot.frac_num, 3));
  L.put("B.upper", Bpart - dec(9, 8) * power_floor(2, tot.frac_num, 3));
  L.check("B.positive", B_pos);
  // B is meant to bound A/|M0| from below; the fractional terms cancel
  L.bound("B.below_A_over_m0", Bpart <= A0 / m0 - tot.lead);
  const rational A_lower = A0 - tot.upper * m0;
  L.put("A.lower", A_lower);
  L.check("A.positive", A_lower > 0);
  return L;
}

struct SzGrid {
  std::vector<long long> ls{3, 5, 7, 9, 11, 13, 15};
  std::vector<long long> es{3, 5, 7, 11};
};

inline std::vector<ParamLedger> sz_sweep(const SzGrid& g) {
  std::vector<ParamLedger> out;
  for (auto l : g.ls)
    for (auto e : g.es) {
      const SzParams p = SzParams::make(l, e);
      ParamLedger L = sz_main_inequality(p);
      ParamLedger F = sz_fix_table(p);
      ParamLedger N = sz_nprime_bounds(p, e);
      L.merge(F);
      L.merge(N);
      L.label = p.label();
      out.push_back(std::move(L));
    }
  return out;
}

// ------------------------------------------------------------- Ree, 2 x PSL(2,q)

inline bigint ree_order(const bigint& q) { return q * q * q * (q * q * q + 1) * (q - 1); }

// log_5(3) < 6827/10000, checked exactly at first use
inline rational log5_3_upper() {
  static const rational v = [] {
    const rational c = dec(6827, 10000);
    if (big_pow(5, 6827) <= big_pow(3, 10000)) throw formula_error("log5(3) bound too small");
    return c;
  }();
  return v;
}

// Upper-bound ledger for the 2 x PSL(2,q) action with field automorphisms,
// m >= 5. Two ledgers: prime-divisor counts taken exactly ("exact.*"), and
// the logarithmic caps of the displayed chain ("chain.*"). A third part
// ("classes.*") recomputes the involution terms with three M0-classes of
// involutions (eta, tau, eta*tau).
inline ParamLedger ree_psl_qsum(long long m) {
  if (m < 5 || m % 2 == 0) throw formula_error("m must be odd and >= 5");
  ParamLedger L;
  L.label = "ree_psl(m=" + std::to_string(m) + ")";
  const bigint q = big_pow(3, m);
  const rational Q(q), M(q * (q * q - 1) * m);
  const rational omega(ree_order(q), q * (q * q - 1));
  const rational R = M / omega;
  L.put("m_order", M);
  L.put("omega", omega);
  L.put("ratio", R);
  L.bound("ratio.bound", R <= dec(243, 242) * m / Q);

  const rational fix_eta = (Q * Q - Q + 2) / 2;
  L.put("fix.eta", fix_eta);
  L.put("fix.chi010", Q);
  const rational q_eta = R * fix_eta / (Q * (Q * Q - 1) * m);
  const rational q_tau = R * fix_eta / (2 * (Q + 1) * m);
  const rational q_z = R * 2 * Q / (2 * m * Q);
  L.put("q.eta", q_eta);
  L.put("q.tau", q_tau);
  L.put("q.chi010", q_z);
  L.bound("q.eta.bound", q_eta < dec(86, 10000000));
  L.bound("q.tau.bound", q_tau < dec(252, 1000));
  L.bound("q.chi010.bound", q_z < dec(5, 1000));

  const auto s_primes = distinct_prime_factors((q + 1) / 4);
  const auto t_primes = distinct_prime_factors((q - 1) / 2);
  const rational q_s = R * 3 / (8 * m), q_t = R / (4 * m);
  L.bound("q.plus_torus.bound", q_s <= dec(19, 50) / Q);
  L.bound("q.minus_torus.bound", q_t <= dec(13, 50) / Q);
  L.put("count.h", rational(static_cast<long long>(s_primes.size())));
  L.put("count.o", rational(static_cast<long long>(t_primes.size())));

  rational field_sum = 0;
  const auto m_primes = distinct_prime_factors(bigint(m));
  for (const auto& ri_big : m_primes) {
    const long long ri = static_cast<long long>(ri_big);
    const long long mi = m / ri;
    const rational qi(big_pow(3, mi));
    const rational term = R * (ri - 1) * qi * qi * (qi * qi - qi + 1) / (qi * (qi * qi - 1) * m);
    field_sum += term;
    const std::string n = "q.field_r" + std::to_string(ri);
    L.put(n, term);
    // term <= 243 r_i / (242 * 3^(4m/5))  <=>  (242 term / (243 r_i))^5 * 3^(4m) <= 1
    const rational x = 242 * term / (243 * ri);
    L.bound(n + ".bound", rat_pow(x, 5) * rat_pow(rational(3), 4 * m) <= 1);
  }

  const rational exact = q_eta + q_tau + q_z + q_s * static_cast<long long>(s_primes.size()) +
                         q_t * static_cast<long long>(t_primes.size()) + field_sum;
  L.put("exact.total", exact);
  L.check("exact.total.below_half", exact < dec(1, 2));

  // chain: 0.308 + 19(log5 q - log5 3)/(50q) + 13 log5 q/(50q) + 243m/(242 * 3^(4m/5))
  const rational l53 = log5_3_upper();
  const rational chain = dec(308, 1000) + dec(19, 50) * (l53 * (m - 1)) / Q + dec(13, 50) * (l53 * m) / Q +
                         dec(243, 242) * m / power_floor(3, 4 * m, 5);
  L.put("chain.total_upper", chain);
  L.bound("chain.total.below_half", chain < dec(1, 2));
  L.bound("chain.first_terms", q_eta + q_tau + q_z < dec(258, 1000));

  // involution classes eta, tau, eta*tau; Fix(eta) = 1 + q(q-1)
  const rational fix3 = Q * Q - Q + 1;
  const rational c_eta = R * fix3 / (Q * (Q * Q - 1) * m);
  const rational c_tau = R * fix3 / (2 * (Q + 1) * m);
  const rational c_total = exact - q_eta - q_tau + c_eta + 2 * c_tau;
  L.put("classes.fix.eta", fix3);
  L.put("classes.total", c_total);
  if (c_total >= dec(1, 2))
    L.discrepancies.push_back(L.label + ": with the eta*tau involution class the sum is " +
                              std::to_string(static_cast<double>(c_total)) + " (not below 1/2)");
  return L;
}

// ------------------------------------------------------------- Ree, subfield

struct ReeParams {
  long long mp = 0, e = 0, m = 0;  // m', e, m
  bigint q, qp, r, rp;

  static ReeParams make(long long mp, long long e) {
    if (mp < 1 || mp % 2 == 0) throw formula_error("m' must be odd and >= 1");
    if (e < 3 || !is_prime_ll(e)) throw formula_error("e must be an odd prime");
    ReeParams p;
    p.mp = mp;
    p.e = e;
    p.m = mp * e;
    p.q = big_pow(3, p.m);
    p.qp = big_pow(3, mp);
    p.r = big_pow(3, (p.m + 1) / 2);
    p.rp = big_pow(3, (mp + 1) / 2);
    return p;
  }
  std::string label() const { return "ree(m'=" + std::to_string(mp) + ",e=" + std::to_string(e) + ")"; }
};

inline ParamLedger ree_field_ledger(const ReeParams& p) {
  ParamLedger L;
  L.label = p.label();
  const rational q(p.q), qp(p.qp), r(p.r), rp(p.rp);
  const long long m = p.m, e = p.e, mp = p.mp;
  const rational m0(ree_order(p.qp));
  const rational M = m0 * m;
  const rational omega(ree_order(p.q), ree_order(p.qp));
  const rational R = M / omega;
  L.put("ratio", R);
  const rational ratio_cap = dec(28, 25) * m * rat_pow(qp, 14) / rat_pow(q, 7);
  L.bound("ratio.bound", R <= ratio_cap);

  // classes inside M0
  const rational q_eta = R * q * (q * q - 1) / (qp * qp * rat_pow(qp * qp - 1, 2) * m);
  L.put("m0.q.eta", q_eta);
  const rational eta_cap = dec(567, 400) / rat_pow(qp, 4 * e - 8);
  L.bound("m0.q.eta.chain", q_eta <= eta_cap);
  L.bound("m0.q.eta.bound", eta_cap <= dec(175, 10000));
  const rational q_z1 = R * rat_pow(q, 3) / (2 * rat_pow(qp, 6) * m);
  const rational q_z2 = R * q * q / (2 * rat_pow(qp, 4) * m);
  L.put("m0.q.chi001", q_z1);
  L.put("m0.q.chi010", q_z2);
  L.bound("m0.q.chi001.bound", q_z1 < dec(1383, 100000));
  L.bound("m0.q.chi010.bound", q_z2 < dec(461, 100000));
  L.bound("m0.q.order3.bound", q_z1 + q_z2 < dec(185, 10000));

  const auto h_primes = distinct_prime_factors((p.qp + 1) / 4);
  const auto o_primes = distinct_prime_factors((p.qp - 1) / 2);
  const auto u_primes = distinct_prime_factors(p.qp + p.rp + 1);
  const auto w_primes = distinct_prime_factors(p.qp - p.rp + 1);
  const rational cap_plus4 = dec(98, 2025) / rat_pow(qp, 6 * e - 13);
  const rational cap_minus2 = dec(21, 50) / rat_pow(qp, 6 * e - 13);
  rational sum_h = 0, sum_o = 0, sum_st = 0;
  for (const auto& s : h_primes) {
    const rational t = R * rational(s - 1) * (q + 1) / (6 * rat_pow(qp + 1, 2) * m);
    L.bound("m0.q.plus4_p" + s.str() + ".bound", t <= R * (q + 1) / (24 * qp * m) && t <= cap_plus4);
    sum_h += t;
  }
  for (const auto& t_ : o_primes) {
    const rational t = R * rational(t_ - 1) * (q - 1) / (2 * rat_pow(qp - 1, 2) * m);
    L.bound("m0.q.minus2_p" + t_.str() + ".bound", t <= cap_minus2);
    sum_o += t;
  }
  // both signs of the q' +- r' + 1 tori; the displayed cap is the larger
  const rational cap_pm = std::max(dec(14, 75) * rat_pow(qp, 14) * (q + r + 1) / (rat_pow(q, 7) * (qp + rp + 1)),
                                   dec(14, 75) * rat_pow(qp, 14) * (q + r + 1) / (rat_pow(q, 7) * (qp - rp + 1)));
  L.put("m0.q.pm_torus_cap", cap_pm);
  for (int sgn : {1, -1}) {
    const rational tor = sgn > 0 ? rational(qp + rp + 1) : rational(qp - rp + 1);
    for (const auto& u : (sgn > 0 ? u_primes : w_primes)) {
      const rational t = R * rational(u - 1) * (q + r + 1) / (6 * tor * tor * m);
      L.bound(std::string("m0.q.") + (sgn > 0 ? "plus" : "minus") + "_torus_p" + u.str() + ".bound",
              t <= R * (q + r + 1) / (6 * tor * m) && t <= cap_pm);
      sum_st += t;
    }
  }

  // field classes with p != e: p | m'
  rational sum_f = 0;
  const auto mp_primes = distinct_prime_factors(bigint(mp));
  for (const auto& pb : mp_primes) {
    const long long pp = static_cast<long long>(pb);
    const long long m1 = mp / pp;
    auto ree_core = [](long long k) {
      const bigint x = big_pow(3, k);
      return rational(x * x * x * (x * x * x + 1) * (x - 1));
    };
    const rational fix = ree_core(m1 * e) / ree_core(m1);
    const rational t = R * (pp - 1) * fix / (ree_core(m1) * m);
    L.put("field.q.f_p" + std::to_string(pp), t);
    // t <= m' q'^14 / (100 q^(14/3))  <=>  (100 t)^3 q^14 <= (m' q'^14)^3
    L.bound("field.q.f_p" + std::to_string(pp) + ".bound",
            rat_pow(100 * t, 3) * rat_pow(q, 14) <= rat_pow(mp * rat_pow(qp, 14), 3));
    sum_f += t;
  }

  // field classes with p = e: the applicable case bound
  const rational q7 = rat_pow(q, 7);
  const rational A = dec(42, 25) * e * rat_pow(qp, 7) / q7;
  const rational B = dec(1273, 100) * rat_pow(qp, 17) / q7;
  const rational C = dec(32, 1000) * e * m * m * rat_pow(qp, 19) / q7;
  const rational D = dec(74, 1000) * e * m * m * rat_pow(qp, 20) / q7;
  const rational E = dec(45, 100) * e * m * m * rat_pow(qp, 19) / q7;
  const bigint m0_int = ree_order(p.qp);
  std::string which;
  rational case_bound;
  if (m0_int % e != 0) {
    which = "coprime", case_bound = A;
  } else if (e == 3) {
    which = "three", case_bound = B;
  } else if (((p.qp + 1) / 4) % e == 0) {
    which = "plus4", case_bound = C;
  } else if ((p.qp + p.rp + 1) % e == 0 || (p.qp - p.rp + 1) % e == 0) {
    which = "pm_torus", case_bound = D;
  } else {
    which = "minus2", case_bound = E;
  }
  L.put("field.e_case." + which, case_bound);
  const bool special = p.qp == 3 && m == 3;
  const rational stated = special ? dec(16, 100) : dec(45, 100) * e * m * m * rat_pow(qp, 20) / q7;
  L.put("field.e_stated_bound", stated);
  L.bound("field.e_case_within_stated", case_bound <= stated);

  // aggregate, exact prime-divisor counts and the applicable e-case
  const rational base = q_eta + q_z1 + q_z2;
  rational exact;
  if (p.qp >= 27) {
    exact = base + sum_h + sum_o + sum_st + sum_f + case_bound;
  } else {
    exact = base + sum_st + (special ? dec(16, 100) : case_bound);
  }
  L.put("exact.total", exact);
  L.check("exact.total.below_half", exact < dec(1, 2));

  // the displayed chain with logarithmic caps
  rational chain;
  if (p.qp >= 27) {
    // log_5 x < (number of base-5 digits of x); log_3 m likewise
    auto log5_cap = [&](const bigint& x) {
      long long d = 0;
      bigint y = x;
      while (y >= 5) {
        y /= 5;
        ++d;
      }
      return rational(d + 1);
    };
    long long l3 = 0;
    for (long long y = m; y >= 3; y /= 3) ++l3;
    const rational log3m = rational(l3 + 1);
    // 1/q^(14/3) <= 1/3^floor(14m/3)
    const rational f_cap = rational(mp) * rat_pow(qp, 14) / (100 * power_floor(3, 14 * m, 3));
    chain = dec(36, 1000) + log5_cap((p.qp - 1) / 2) * cap_minus2 + log5_cap((p.qp + 1) / 4) * cap_plus4 +
            2 * log5_cap(p.qp + p.rp + 1) * (dec(14, 75) * rat_pow(qp, 14) * (q + r + 1) / (q7 * (qp - rp + 1))) +
            log3m * f_cap + log3m * D;
  } else {
    chain = dec(36, 1000) + dec(14, 75) * rat_pow(qp, 14) * (q + r + 1) / (q7 * (qp + rp + 1)) +
            (special ? dec(16, 100) : stated);
  }
  L.put("chain.total_upper", chain);
  L.bound("chain.total.below_half", chain < dec(1, 2));
  L.bound("base.bound", base <= dec(36, 1000));
  return L;
}

struct ReeGrid {
  std::vector<long long> mps{1, 3, 5};
  std::vector<long long> es{3, 5, 7};
};

inline std::vector<ParamLedger> ree_sweep(const ReeGrid& g) {
  std::vector<ParamLedger> out;
  for (auto mp : g.mps)
    for (auto e : g.es) out.push_back(ree_field_ledger(ReeParams::make(mp, e)));
  return out;
}

// ------------------------------------------------------------- catalog

struct CatalogEntry {
  std::string structure;
  bigint order;
};

inline std::vector<CatalogEntry> maximal_subgroup_catalog(bool suzuki, const bigint& q) {
  std::vector<CatalogEntry> out;
  unsigned m = 0;
  const unsigned p = suzuki ? 2 : 3;
  for (bigint x = q; x > 1; x /= p) {
    if (x % p != 0) throw formula_error("q is not a power of the characteristic");
    ++m;
  }
  if (m % 2 == 0 || m < 3) throw formula_error("need q = p^m with m odd >= 3");
  auto subfields = [&](auto order_of) {
    for (unsigned d = 1; d < m; ++d) {
      if (m % d != 0 || !is_prime_ll(m / d)) continue;
      const bigint qq = big_pow(p, d);
      out.push_back({(suzuki ? "Sz(" : "Ree(") + qq.str() + ")", order_of(qq)});
    }
  };
  if (suzuki) {
    const bigint r = big_pow(2, (m + 1) / 2);
    const int delta = delta_sign_exp(m);
    out.push_back({"Q.K", q * q * (q - 1)});
    out.push_back({"D_{2(q-1)}", 2 * (q - 1)});
    out.push_back({"Z_{q+delta r+1}:Z_4", 4 * (q + delta * r + 1)});
    out.push_back({"Z_{q-delta r+1}:Z_4", 4 * (q - delta * r + 1)});
    subfields([](const bigint& x) { return x * x * (x * x + 1) * (x - 1); });
  } else {
    const bigint r = big_pow(3, (m + 1) / 2);
    out.push_back({"Q:K", q * q * q * (q - 1)});
    out.push_back({"(2^2 x D_{(q+1)/2}):3", 6 * (q + 1)});
    out.push_back({"Z_{q+r+1}:Z_6", 6 * (q + r + 1)});
    out.push_back({"Z_{q-r+1}:Z_6", 6 * (q - r + 1)});
    out.push_back({"2 x PSL(2,q)", q * (q * q - 1)});
    subfields([](const bigint& x) { return ree_order(x); });
  }
  return out;
}

}  // namespace szree
