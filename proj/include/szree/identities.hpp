#pragma once

// Symbolic product/conjugation formulas checked as matrix identities,
// plus two exhaustive scans over Sz(q): field-automorphism conjugacy and
// normalizers of cyclic subgroups of order 4 in Q.

#include <random>

#include "szree/groups.hpp"

namespace szree {

struct IdentityItem {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::string counterexample;
};

struct IdentityReport {
  Family family = Family::Sz;
  std::uint64_t q = 0;
  std::vector<IdentityItem> items;
  // Same checks against the verbatim Ree generator matrices; filled for Ree only.
  std::vector<IdentityItem> printed_items;
  bool all_pass() const {
    for (const auto& i : items)
      if (i.failures) return false;
    return true;
  }
};

namespace detail {

class ItemRunner {
 public:
  ItemRunner(std::vector<IdentityItem>& out, std::string name) : out_(out), at_(out.size()) {
    out_.push_back({std::move(name), 0, 0, ""});
  }
  void check(bool ok, const std::function<std::string()>& what) {
    auto& it = out_[at_];
    ++it.trials;
    if (!ok) {
      if (it.failures++ == 0) it.counterexample = what();
    }
  }

 private:
  std::vector<IdentityItem>& out_;
  std::size_t at_;
};

inline std::string args(const FieldSpec& F, std::initializer_list<elem_t> xs) {
  std::string s = "(";
  bool first = true;
  for (auto x : xs) {
    s += (first ? "" : ",") + F.to_string(x);
    first = false;
  }
  return s + ")";
}

inline void sz_suite(const FieldSpec& F, std::uint64_t trials, std::mt19937_64& rng, std::vector<IdentityItem>& out) {
  std::uniform_int_distribution<elem_t> any(0, F.q() - 1), unit(1, F.q() - 1);
  const long long r = static_cast<long long>(F.theta_exponent());
  auto chi = [&](elem_t a, elem_t b) { return sz_chi(F, a, b); };
  auto ar1 = [&](elem_t a) { return F.powi(a, 1 + r); };

  ItemRunner product(out, "sz.product");
  ItemRunner inverse(out, "sz.inverse");
  ItemRunner conj_q(out, "sz.conj_chi");
  ItemRunner conj_qk(out, "sz.conj_chi_kappa");
  ItemRunner cyclic(out, "sz.cyclic_subgroup");
  ItemRunner kappa_swap(out, "sz.kappa_commute");
  ItemRunner kappa_conj(out, "sz.kappa_conj");
  ItemRunner kappa_tau(out, "sz.kappa_tau");
  ItemRunner det(out, "sz.det_one");
  for (std::uint64_t t = 0; t < trials; ++t) {
    const elem_t a = any(rng), b = any(rng), c = any(rng), d = any(rng), k = unit(rng);
    const Matrix X = chi(a, b), Y = chi(c, d), K = sz_kappa(F, k), Kinv = K.inverse();
    const auto where = [&] { return args(F, {a, b, c, d, k}); };
    product.check(X * Y == chi(F.add(a, c), F.add(F.add(F.mul(a, F.theta(c)), b), d)), where);
    inverse.check(X.inverse() == chi(a, F.sub(F.neg(ar1(a)), b)), where);
    // c, d play x, y
    const elem_t s = F.add(F.add(F.mul(a, F.theta(c)), F.mul(c, F.theta(a))), b);
    conj_q.check(Y.inverse() * X * Y == chi(a, s), where);
    const Matrix YK = Y * K;
    conj_qk.check(YK.inverse() * X * YK == chi(F.mul(a, k), F.mul(s, F.powi(k, 1 + r))), where);
    const Matrix X2 = X * X, X3 = X2 * X;
    cyclic.check(X2 == chi(0, ar1(a)) && X3 == chi(a, F.add(b, ar1(a))) && (X3 * X).is_identity(), where);
    kappa_swap.check(K * X == chi(F.mul(a, F.inv(k)), F.mul(b, F.powi(k, -1 - r))) * K, where);
    kappa_conj.check(Kinv * X * K == chi(F.mul(a, k), F.mul(b, F.powi(k, 1 + r))), where);
    const Matrix tau = sz_tau(F);
    kappa_tau.check(tau.inverse() * K * tau == Kinv, where);
    det.check(X.determinant() == 1 && K.determinant() == 1 && tau.determinant() == 1, where);
  }
}

using ChiFn = std::function<Matrix(elem_t, elem_t, elem_t)>;

inline void ree_suite(const FieldSpec& F, const ChiFn& chi, const std::string& prefix, std::uint64_t trials,
                      std::mt19937_64& rng, std::vector<IdentityItem>& out) {
  std::uniform_int_distribution<elem_t> any(0, F.q() - 1), unit(1, F.q() - 1);
  const long long r = static_cast<long long>(F.r_exponent());
  auto P = [&](elem_t x, long long e) { return F.powi(x, e); };
  auto mul = [&](elem_t a, elem_t b) { return F.mul(a, b); };

  ItemRunner product(out, prefix + "product");
  ItemRunner inverse(out, prefix + "inverse");
  ItemRunner cube(out, prefix + "cube");
  ItemRunner hconj(out, prefix + "h_conj");
  ItemRunner a0(out, prefix + "conj_0a0");
  ItemRunner a0h(out, prefix + "conj_0a0_h");
  ItemRunner z0h(out, prefix + "conj_00a_h");
  ItemRunner eta(out, prefix + "eta_is_h_minus_one");
  ItemRunner det(out, prefix + "det_one");
  for (std::uint64_t t = 0; t < trials; ++t) {
    const elem_t x1 = any(rng), y1 = any(rng), z1 = any(rng), x2 = any(rng), y2 = any(rng), z2 = any(rng);
    const elem_t k = unit(rng), a = any(rng);
    const auto where = [&] { return args(F, {x1, y1, z1, x2, y2, z2, k, a}); };
    const Matrix A = chi(x1, y1, z1), B = chi(x2, y2, z2);
    // z1+z2-x2 y1+x1 x2^(r+1)-x1^2 x2^r
    elem_t pz = F.add(z1, z2);
    pz = F.sub(pz, mul(x2, y1));
    pz = F.add(pz, mul(x1, P(x2, r + 1)));
    pz = F.sub(pz, mul(mul(x1, x1), P(x2, r)));
    product.check(A * B == chi(F.add(x1, x2), F.sub(F.add(y1, y2), mul(x1, P(x2, r))), pz), where);
    // (-x, -y-x^(r+1), -z-xy-2x^(r+2))
    const elem_t iy = F.sub(F.neg(y1), P(x1, r + 1));
    const elem_t iz = F.sub(F.sub(F.neg(z1), mul(x1, y1)), mul(F.from_int(2), P(x1, r + 2)));
    bool inv_ok = false;
    try {
      inv_ok = A.inverse() == chi(F.neg(x1), iy, iz);
    } catch (const group_error&) {
    }
    inverse.check(inv_ok, where);
    cube.check(A * A * A == chi(0, 0, F.neg(P(x1, r + 2))), where);
    const Matrix H = ree_h(F, k), Hi = H.inverse();
    hconj.check(Hi * A * H == chi(mul(x1, P(k, r - 2)), mul(y1, P(k, 1 - r)), mul(z1, F.inv(k))), where);
    bool w_ok = false;
    Matrix Wi;
    try {
      Wi = A.inverse();
      w_ok = true;
    } catch (const group_error&) {
    }
    const Matrix C = chi(0, a, 0), Z = chi(0, 0, a);
    a0.check(w_ok && Wi * C * A == chi(0, a, F.neg(mul(a, x1))), where);
    const Matrix WH = A * H;
    bool wh_ok = false;
    Matrix WHi;
    try {
      WHi = WH.inverse();
      wh_ok = true;
    } catch (const group_error&) {
    }
    a0h.check(wh_ok && WHi * C * WH == chi(0, mul(a, P(k, 1 - r)), F.neg(mul(mul(a, x1), F.inv(k)))), where);
    z0h.check(wh_ok && WHi * Z * WH == chi(0, 0, mul(F.inv(k), a)), where);
    eta.check(ree_h(F, F.neg(1)) == ree_eta(F), where);
    det.check(A.determinant() == 1 && H.determinant() == 1 && ree_tau(F).determinant() == 1, where);
  }
}

}  // namespace detail

inline IdentityReport identity_suite(Family fam, std::uint64_t q, std::uint64_t trials, std::uint64_t seed = 1) {
  FieldPtr Fp = family_field(fam, q);
  const FieldSpec& F = *Fp;
  IdentityReport rep;
  rep.family = fam;
  rep.q = q;
  std::mt19937_64 rng(seed);
  if (fam == Family::Sz) {
    detail::sz_suite(F, trials, rng, rep.items);
  } else {
    detail::ree_suite(
        F, [&](elem_t x, elem_t y, elem_t z) { return ree_chi(F, x, y, z); }, "ree.", trials, rng, rep.items);
    std::mt19937_64 rng2(seed);
    detail::ree_suite(
        F, [&](elem_t x, elem_t y, elem_t z) { return ree_chi_printed(F, x, y, z); }, "ree_printed.", trials, rng2,
        rep.printed_items);
  }
  return rep;
}

// ------------------------------------------------------------- scans

struct FieldConjugacyResult {
  std::uint64_t coset_size = 0;
  std::uint64_t order_r = 0;      // elements of order r in T f^(m/r)
  std::uint64_t class_size = 0;   // T-class of f^(m/r)
  std::uint64_t outside = 0;      // order-r elements not in that class
  bool pass = false;
};

inline FieldConjugacyResult field_conjugacy_check(Family fam, std::uint64_t q, std::uint64_t r,
                                                  std::uint64_t max_order = 1000000) {
  FieldPtr Fp = family_field(fam, q);
  const FieldSpec& F = *Fp;
  if (r < 2 || F.m() % r != 0) throw group_error("r must be a prime dividing m");
  for (std::uint64_t d = 2; d * d <= r; ++d)
    if (r % d == 0) throw group_error("r must be a prime dividing m");
  if (fam != Family::Sz || group_order(fam, bigint(q)) > bigint(max_order))
    throw group_error("group too large for element scan");
  const unsigned s = static_cast<unsigned>(F.m() / r);
  const ExtendedElement fs = ExtendedElement::twist_only(&F, 4, s);
  std::unordered_set<std::string> cls;
  for_each_sz_element(F, [&](const Matrix& g) {
    const ExtendedElement G(g);
    cls.insert((G.inverse() * fs * G).key());
  });
  FieldConjugacyResult res;
  res.class_size = cls.size();
  for_each_sz_element(F, [&](const Matrix& a) {
    ++res.coset_size;
    const ExtendedElement x(a, s);
    if (!x.pow(r).is_identity()) return;
    ++res.order_r;
    if (!cls.count(x.key())) ++res.outside;
  });
  res.pass = res.outside == 0 && res.order_r == res.class_size;
  return res;
}

struct NormalizerClaim {
  std::uint64_t order = 0;
  std::uint64_t expected = 0;  // 2q
  bool shape_ok = true;        // every element is chi(0,y) or chi(alpha,y)
  bool pass = false;
};

// N_T(<chi(alpha,beta)>) by scan over Sz(q); alpha != 0.
inline NormalizerClaim sz_unipotent_normalizer(std::uint64_t q, elem_t alpha, elem_t beta) {
  FieldPtr Fp = family_field(Family::Sz, q);
  const FieldSpec& F = *Fp;
  if (alpha == 0 || alpha >= q || beta >= q) throw group_error("need alpha != 0");
  const Matrix x = sz_chi(F, alpha, beta), x3 = x * x * x;
  NormalizerClaim nc;
  nc.expected = 2 * q;
  for_each_sz_element(F, [&](const Matrix& g) {
    // g^-1 x g in {x, x^3} iff x g = g x or x g = g x^3
    const Matrix xg = x * g;
    if (xg != g * x && xg != g * x3) return;
    ++nc.order;
    const elem_t a = g.at(1, 0);
    if (!((a == 0 || a == F.neg(alpha)) && g == sz_chi(F, a, g.at(3, 1)))) nc.shape_ok = false;
  });
  nc.pass = nc.shape_ok && nc.order == nc.expected;
  return nc;
}

}  // namespace szree
