#pragma once

// Suborbit decomposition under a point stabilizer, fixed-point counts,
// prime-order subgroup classes and the normalizer-index cross-check.

#include <map>
#include <set>

#include "szree/points.hpp"

namespace szree {

struct Suborbit {
  std::uint32_t rep = 0;  // least index in the orbit
  std::uint64_t length = 0;
  bigint stabilizer_order;
  bool regular = false;
};

struct SuborbitReport {
  std::uint64_t degree = 0;
  bigint m_order;
  std::vector<Suborbit> suborbits;
  std::vector<std::uint32_t> orbit_of;  // point -> suborbit id
  std::size_t regular_count = 0;
  std::uint64_t gamma_size = 0;
  std::vector<Perm> m_perms;  // permutations of M's generators
};

inline bigint require_order(SubgroupHandle& M) {
  if (!M.has_order()) M.materialize();
  return M.order();
}

inline std::vector<Perm> generator_perms(const OmegaIndex& om, const std::vector<ExtendedElement>& gens,
                                         unsigned threads = 1) {
  std::vector<Perm> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(om.perm_of(g, threads));
  return out;
}

inline SuborbitReport decompose_perms(std::size_t n, const std::vector<Perm>& perms, const bigint& m_order) {
  for (const auto& p : perms)
    if (p.at(0) != 0) throw points_error("subgroup does not fix the seed point");
  SuborbitReport rep;
  rep.degree = n;
  rep.m_order = m_order;
  const std::uint32_t none = 0xffffffffu;
  rep.orbit_of.assign(n, none);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (rep.orbit_of[i] != none) continue;
    const auto id = static_cast<std::uint32_t>(rep.suborbits.size());
    std::uint64_t len = 0;
    rep.orbit_of[i] = id;
    stack.push_back(i);
    while (!stack.empty()) {
      const std::uint32_t x = stack.back();
      stack.pop_back();
      ++len;
      for (const auto& p : perms) {
        const std::uint32_t y = p[x];
        if (rep.orbit_of[y] == none) {
          rep.orbit_of[y] = id;
          stack.push_back(y);
        }
      }
    }
    Suborbit s;
    s.rep = i;
    s.length = len;
    if (m_order % len != 0) throw points_error("suborbit length does not divide |M|");
    s.stabilizer_order = m_order / len;
    s.regular = bigint(len) == m_order;
    if (s.regular) {
      ++rep.regular_count;
      rep.gamma_size += len;
    }
    rep.suborbits.push_back(s);
  }
  return rep;
}

inline SuborbitReport decompose(const OmegaIndex& om, SubgroupHandle& M, unsigned threads = 1) {
  const bigint order = require_order(M);
  auto perms = generator_perms(om, M.generators(), threads);
  SuborbitReport rep = decompose_perms(om.size(), perms, order);
  rep.m_perms = std::move(perms);
  return rep;
}

struct FixedPoints {
  std::uint64_t count = 0;
  std::vector<std::uint32_t> points;
};

inline FixedPoints fixed_points_perms(std::size_t n, const std::vector<Perm>& perms) {
  FixedPoints fp;
  for (std::uint32_t i = 0; i < n; ++i) {
    bool fixed = true;
    for (const auto& p : perms)
      if (p[i] != i) {
        fixed = false;
        break;
      }
    if (fixed) fp.points.push_back(i);
  }
  fp.count = fp.points.size();
  return fp;
}

inline FixedPoints fixed_points(const std::vector<ExtendedElement>& k_gens, const OmegaIndex& om, unsigned threads = 1) {
  return fixed_points_perms(om.size(), generator_perms(om, k_gens, threads));
}

// ------------------------------------------------------------- classes

inline std::string cyclic_key(const ExtendedElement& x) {
  std::vector<std::string> ks;
  ExtendedElement y = x;
  while (!y.is_identity()) {
    ks.push_back(y.key());
    y = y * x;
  }
  return detail::subgroup_key(std::move(ks));
}

inline ExtendedElement conj_ext(const ExtendedElement& x, const ExtendedElement& g) {
  return g.inverse() * x * g;
}

struct PrimeClass {
  ExtendedElement rep;  // generator of the representative subgroup
  std::uint64_t prime = 0;
  std::uint64_t class_size = 0;  // number of M-conjugate subgroups
  bigint normalizer_order;       // |N_M(<rep>)|
  std::string label;
};

inline std::uint64_t element_order(const ExtendedElement& x, std::uint64_t cap = 1u << 20) { return x.order(cap); }

// One representative per M-class of subgroups of prime order, by scan of
// the materialized M; the classes are fused under conjugation by M's
// generators, and |N_M| = |M| / class size.
inline std::vector<PrimeClass> prime_subgroup_classes(SubgroupHandle& M) {
  const auto& elems = M.materialize();
  const bigint order = M.order();
  std::unordered_map<std::string, std::size_t> seen;  // element key -> subgroup id
  std::vector<std::pair<ExtendedElement, std::uint64_t>> subs;
  std::unordered_map<std::string, std::size_t> sub_index;
  for (const auto& x : elems) {
    if (x.is_identity()) continue;
    const std::string xk = x.key();
    if (seen.count(xk)) continue;
    const std::uint64_t o = element_order(x);
    if (!is_prime_u(o)) continue;
    const std::size_t id = subs.size();
    ExtendedElement y = x;
    std::vector<std::string> ks;
    while (!y.is_identity()) {
      ks.push_back(y.key());
      seen.emplace(ks.back(), id);
      y = y * x;
    }
    sub_index.emplace(detail::subgroup_key(std::move(ks)), id);
    subs.emplace_back(x, o);
  }
  std::vector<PrimeClass> out;
  std::vector<char> done(subs.size(), 0);
  for (std::size_t s = 0; s < subs.size(); ++s) {
    if (done[s]) continue;
    done[s] = 1;
    std::vector<std::size_t> orbit{s};
    for (std::size_t pos = 0; pos < orbit.size(); ++pos) {
      const ExtendedElement& x = subs[orbit[pos]].first;
      for (const auto& g : M.generators()) {
        const std::size_t t = seen.at(conj_ext(x, g).key());
        if (!done[t]) {
          done[t] = 1;
          orbit.push_back(t);
        }
      }
    }
    PrimeClass pc;
    pc.rep = subs[s].first;
    pc.prime = subs[s].second;
    pc.class_size = orbit.size();
    pc.normalizer_order = order / orbit.size();
    out.push_back(pc);
  }
  std::stable_sort(out.begin(), out.end(), [](const PrimeClass& a, const PrimeClass& b) { return a.prime < b.prime; });
  std::map<std::uint64_t, int> seq;
  for (auto& c : out) c.label = "p" + std::to_string(c.prime) + "." + std::to_string(++seq[c.prime]);
  return out;
}

// |N_H(<x>)| by direct scan of a materialized H.
inline std::uint64_t normalizer_order_scan(const SubgroupHandle& H, const ExtendedElement& x) {
  const std::string k = cyclic_key(x);
  std::uint64_t n = 0;
  for (const auto& g : H.elements())
    if (cyclic_key(conj_ext(x, g)) == k) ++n;
  return n;
}

// Size of the G-class of <x>, by orbit of the subgroup key under G's
// generators (cap guards memory). Optionally returns the key set.
inline std::uint64_t subgroup_class_size(const ExtendedElement& x, const std::vector<ExtendedElement>& g_gens,
                                         std::unordered_set<std::string>* keys_out = nullptr,
                                         std::uint64_t cap = 4000000) {
  std::vector<ExtendedElement> frontier{x};
  std::unordered_set<std::string> keys{cyclic_key(x)};
  std::vector<ExtendedElement> ginv;
  for (const auto& g : g_gens) ginv.push_back(g.inverse());
  for (std::size_t pos = 0; pos < frontier.size(); ++pos) {
    for (std::size_t i = 0; i < g_gens.size(); ++i) {
      ExtendedElement y = ginv[i] * frontier[pos] * g_gens[i];
      std::string k = cyclic_key(y);
      if (keys.insert(std::move(k)).second) {
        if (keys.size() > cap) throw points_error("conjugacy class exceeds cap");
        frontier.push_back(std::move(y));
      }
    }
  }
  if (keys_out) *keys_out = std::move(keys);
  return frontier.size();
}

struct NormalizerSumTerm {
  std::string label;
  bigint n_g, n_m;  // |N_G(K_i)|, |N_M(K_i)|
  bigint index;
};

struct NormalizerSumCheck {
  bigint formula;
  std::uint64_t brute = 0;
  bool equal = false;
  std::vector<NormalizerSumTerm> terms;
};

// K = <k>. Sum over M-classes K_i of G-conjugates of K inside M of
// |N_G(K_i) : N_M(K_i)|, against the brute fixed-point count on Omega.
inline NormalizerSumCheck normalizer_sum_check(const ExtendedElement& k, const std::vector<PrimeClass>& m_classes,
                                 const std::vector<ExtendedElement>& g_gens, const bigint& g_order,
                                 const OmegaIndex& om, unsigned threads = 1, std::uint64_t cap = 4000000) {
  NormalizerSumCheck mc;
  std::unordered_set<std::string> kg;
  const std::uint64_t cls = subgroup_class_size(k, g_gens, &kg, cap);
  const bigint n_g = g_order / cls;
  const std::uint64_t p = element_order(k);
  for (const auto& c : m_classes) {
    if (c.prime != p || !kg.count(cyclic_key(c.rep))) continue;
    NormalizerSumTerm t{c.label, n_g, c.normalizer_order, n_g / c.normalizer_order};
    if (n_g % c.normalizer_order != 0) throw points_error("normalizer index not integral");
    mc.formula += t.index;
    mc.terms.push_back(t);
  }
  mc.brute = fixed_points({k}, om, threads).count;
  mc.equal = mc.formula == bigint(mc.brute);
  return mc;
}

}  // namespace szree
