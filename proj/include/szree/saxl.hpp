#pragma once

// Regular-suborbit union, common-neighbour (BG) check, the Q-check sum
// over prime classes and the count of spoiled regular suborbits.

#include <boost/multiprecision/cpp_int.hpp>

#include "szree/suborbits.hpp"

namespace szree {

using rational = boost::multiprecision::cpp_rational;

class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  std::size_t size() const { return n_; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool subset_of(const Bitmap& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  friend bool operator==(const Bitmap& a, const Bitmap& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

inline Bitmap gamma(const SuborbitReport& rep) {
  Bitmap b(rep.degree);
  for (std::size_t i = 0; i < rep.degree; ++i)
    if (rep.suborbits[rep.orbit_of[i]].regular) b.set(i);
  return b;
}

inline bool base_two(const SuborbitReport& rep) { return rep.regular_count > 0; }

class saxl_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Intersection {
  std::uint32_t suborbit = 0;
  std::uint32_t rep = 0;
  std::vector<std::uint32_t> word;  // witness g as generator word
  std::uint64_t size = 0;
};

struct BgResult {
  bool holds = false;
  std::uint64_t min_intersection = 0;
  std::vector<Intersection> per_suborbit;
};

// |Gamma cap Gamma^g| = #{x in Gamma : x^(g^-1) in Gamma}, evaluated the
// other way round as #{x in Gamma : x^g in Gamma} for g^-1; both are
// offered so callers can cross-check.
inline std::uint64_t intersection_by_image(const OmegaIndex& om, const Bitmap& G, const std::vector<std::uint32_t>& w) {
  std::uint64_t c = 0;
  for (std::uint32_t x = 0; x < om.size(); ++x)
    if (G.test(x) && G.test(om.apply_word(x, w))) ++c;
  return c;
}

inline std::vector<Perm> inverse_perms(const std::vector<Perm>& ps) {
  std::vector<Perm> out;
  for (const auto& p : ps) {
    Perm q(p.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) q[p[i]] = i;
    out.push_back(std::move(q));
  }
  return out;
}

// Same count via preimages: y in Gamma with y^(g^-1) in Gamma.
inline std::uint64_t intersection_by_preimage(const OmegaIndex& om, const std::vector<Perm>& inv,
                                              const Bitmap& G, const std::vector<std::uint32_t>& w) {
  std::uint64_t c = 0;
  for (std::uint32_t y = 0; y < om.size(); ++y) {
    if (!G.test(y)) continue;
    std::uint32_t x = y;
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = inv[*it][x];
    if (G.test(x)) ++c;
  }
  return c;
}

// |Gamma cap Gamma^g| depends only on the double coset MgM, and the
// suborbit representatives run over those double cosets, so one witness
// per suborbit suffices.
inline BgResult bg_verify(const OmegaIndex& om, const SuborbitReport& rep, const Bitmap& G, unsigned threads = 1) {
  if (G.count() == 0) throw saxl_error("Gamma is empty (b(G) > 2)");
  BgResult r;
  r.per_suborbit.resize(rep.suborbits.size());
  parallel_for(rep.suborbits.size(), threads, [&](std::size_t s) {
    Intersection it;
    it.suborbit = static_cast<std::uint32_t>(s);
    it.rep = rep.suborbits[s].rep;
    it.word = om.witness_word(it.rep);
    it.size = intersection_by_image(om, G, it.word);
    r.per_suborbit[s] = std::move(it);
  });
  r.holds = true;
  r.min_intersection = ~std::uint64_t{0};
  for (const auto& it : r.per_suborbit) {
    r.min_intersection = std::min(r.min_intersection, it.size);
    if (it.size == 0) r.holds = false;
  }
  return r;
}

struct QTerm {
  std::string label;
  std::uint64_t prime = 0;
  std::uint64_t fix = 0;
  bigint normalizer_order;
  rational term;  // |M|/|Omega| * (p-1) Fix / |N_M|
};

struct QResult {
  rational total;
  bool below_half = false;
  std::vector<QTerm> terms;
};

inline QResult q_check(const OmegaIndex& om, const bigint& m_order, const std::vector<PrimeClass>& classes,
                       unsigned threads = 1) {
  QResult qr;
  const rational scale(m_order, bigint(om.size()));
  for (const auto& c : classes) {
    QTerm t;
    t.label = c.label;
    t.prime = c.prime;
    t.fix = fixed_points({c.rep}, om, threads).count;
    t.normalizer_order = c.normalizer_order;
    t.term = scale * rational(bigint(c.prime - 1) * t.fix, c.normalizer_order);
    qr.total += t.term;
    qr.terms.push_back(std::move(t));
  }
  qr.below_half = qr.total < rational(1, 2);
  return qr;
}

struct SpoiledResult {
  std::uint64_t spoiled = 0;
  std::uint64_t regular_m0 = 0;
  std::vector<std::uint32_t> spoiled_reps;
};

// Regular M0-suborbits whose points have nontrivial stabilizer in M.
// All points of one M-orbit have conjugate stabilizers, so the M-orbit
// length decides.
inline SpoiledResult spoiled_regular_count(const SuborbitReport& rep_m0, const SuborbitReport& rep_m) {
  if (rep_m0.degree != rep_m.degree) throw saxl_error("reports on different spaces");
  if (rep_m.m_order % rep_m0.m_order != 0) throw saxl_error("M0 is not a subgroup of M");
  SpoiledResult r;
  for (const auto& s : rep_m0.suborbits) {
    if (!s.regular) continue;
    ++r.regular_m0;
    const auto& big = rep_m.suborbits[rep_m.orbit_of[s.rep]];
    if (bigint(big.length) < rep_m.m_order) {
      ++r.spoiled;
      r.spoiled_reps.push_back(s.rep);
    }
  }
  return r;
}

// Gamma for the larger group sits inside Gamma for the socle.
inline bool gamma_inclusion_check(const SuborbitReport& rep_t, const SuborbitReport& rep_g) {
  if (rep_t.degree != rep_g.degree) throw saxl_error("incompatible pair");
  if (rep_g.m_order % rep_t.m_order != 0) throw saxl_error("incompatible pair");
  return gamma(rep_g).subset_of(gamma(rep_t));
}

}  // namespace szree
