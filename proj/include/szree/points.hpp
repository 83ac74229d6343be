#pragma once

// Coset spaces [G:M] realized as orbits of marker objects (projective
// points, point pairs, small subgroups, involutions), densely indexed,
// with generator permutations and Schreier witnesses.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "szree/groups.hpp"

namespace szree {

class points_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PointKind { Projective, Pair, Subgroup, Involution };

enum class Model { Ovoid, Pair, Hall1, Hall2, Sz2, Involution };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::Ovoid: return "ovoid";
    case Model::Pair: return "pair";
    case Model::Hall1: return "hall1";
    case Model::Hall2: return "hall2";
    case Model::Sz2: return "sz2";
    case Model::Involution: return "involution";
  }
  return "?";
}

inline Model parse_model(const std::string& s) {
  for (Model m : {Model::Ovoid, Model::Pair, Model::Hall1, Model::Hall2, Model::Sz2, Model::Involution})
    if (s == model_name(m)) return m;
  throw points_error("unknown model '" + s + "' (supported: ovoid, pair, hall1, hall2, sz2, involution)");
}

struct MarkerPoint {
  PointKind kind = PointKind::Involution;
  const FieldSpec* field = nullptr;
  unsigned dim = 0;
  std::string key;

  friend bool operator==(const MarkerPoint& a, const MarkerPoint& b) {
    return a.kind == b.kind && a.field == b.field && a.dim == b.dim && a.key == b.key;
  }
};

// ------------------------------------------------------------- encoders

namespace detail {

using Vec = std::array<elem_t, Matrix::kMax>;

inline std::string vec_key(const FieldSpec& F, const Vec& v, unsigned n) {
  const unsigned kb = F.key_bytes();
  std::string s(static_cast<size_t>(n) * kb, '\0');
  size_t pos = 0;
  for (unsigned i = 0; i < n; ++i) {
    elem_t x = v[i];
    for (unsigned b = 0; b < kb; ++b) {
      s[pos++] = static_cast<char>(x & 0xff);
      x >>= 8;
    }
  }
  return s;
}

inline Vec vec_from_key(const FieldSpec& F, std::string_view key, unsigned n, size_t off = 0) {
  const unsigned kb = F.key_bytes();
  Vec v{};
  size_t pos = off;
  for (unsigned i = 0; i < n; ++i) {
    elem_t x = 0;
    for (unsigned b = 0; b < kb; ++b) x |= static_cast<elem_t>(static_cast<unsigned char>(key[pos++])) << (8 * b);
    v[i] = x;
  }
  return v;
}

// first nonzero coordinate scaled to 1
inline Vec normalize(const FieldSpec& F, Vec v, unsigned n) {
  unsigned i = 0;
  while (i < n && v[i] == 0) ++i;
  if (i == n) throw points_error("zero vector is not a projective point");
  const elem_t s = F.inv(v[i]);
  for (unsigned j = i; j < n; ++j) v[j] = F.mul(v[j], s);
  return v;
}

inline std::string subgroup_key(std::vector<std::string> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::string k;
  for (auto& e : elems) k += e;
  return k;
}

}  // namespace detail

inline MarkerPoint projective_point(const FieldSpec& F, const std::vector<elem_t>& coords) {
  detail::Vec v{};
  const unsigned n = static_cast<unsigned>(coords.size());
  for (unsigned i = 0; i < n; ++i) v[i] = coords[i];
  return {PointKind::Projective, &F, n, detail::vec_key(F, detail::normalize(F, v, n), n)};
}

inline MarkerPoint point_pair(const MarkerPoint& a, const MarkerPoint& b) {
  if (a.kind != PointKind::Projective || b.kind != PointKind::Projective || a.key == b.key)
    throw points_error("pair needs two distinct projective points");
  return {PointKind::Pair, a.field, a.dim, std::min(a.key, b.key) + std::max(a.key, b.key)};
}

inline MarkerPoint subgroup_point(const std::vector<ExtendedElement>& elems) {
  if (elems.empty()) throw points_error("empty subgroup marker");
  std::vector<std::string> keys;
  for (const auto& e : elems) {
    if (e.twist() != 0) throw points_error("subgroup marker must lie in T");
    keys.push_back(e.matrix().key());
  }
  return {PointKind::Subgroup, elems[0].field(), elems[0].dim(), detail::subgroup_key(std::move(keys))};
}

inline MarkerPoint involution_point(const Matrix& t) {
  return {PointKind::Involution, t.field(), t.dim(), t.key()};
}

// g with its inverse matrix cached; acts on keys.
class PreparedElement {
 public:
  explicit PreparedElement(const ExtendedElement& g)
      : g_(g), inv_(g.matrix().inverse()), back_(-static_cast<long long>(g.twist())) {}

  const ExtendedElement& element() const { return g_; }

  Matrix conj(const Matrix& t) const { return (inv_ * t * g_.matrix()).frobenius(back_); }

  detail::Vec row(const FieldSpec& F, const detail::Vec& v) const {
    detail::Vec w = row_times(v, g_.matrix());
    if (back_ != 0)
      for (unsigned i = 0; i < g_.dim(); ++i) w[i] = F.frobenius(w[i], back_);
    return w;
  }

  std::string act_key(PointKind kind, const FieldSpec& F, unsigned n, std::string_view key) const {
    switch (kind) {
      case PointKind::Projective: {
        auto v = row(F, detail::vec_from_key(F, key, n));
        return detail::vec_key(F, detail::normalize(F, v, n), n);
      }
      case PointKind::Pair: {
        const size_t half = key.size() / 2;
        std::string a = act_key(PointKind::Projective, F, n, key.substr(0, half));
        std::string b = act_key(PointKind::Projective, F, n, key.substr(half));
        return a < b ? a + b : b + a;
      }
      case PointKind::Involution:
        return conj(Matrix::from_key(&F, n, key)).key();
      case PointKind::Subgroup: {
        const size_t w = static_cast<size_t>(n) * n * F.key_bytes();
        std::vector<std::string> out;
        out.reserve(key.size() / w);
        for (size_t off = 0; off < key.size(); off += w)
          out.push_back(conj(Matrix::from_key(&F, n, key, off)).key());
        return detail::subgroup_key(std::move(out));
      }
    }
    throw points_error("bad point kind");
  }

 private:
  ExtendedElement g_;
  Matrix inv_;
  long long back_;
};

inline MarkerPoint act(const MarkerPoint& p, const ExtendedElement& g) {
  if (g.field() != p.field || g.dim() != p.dim) throw points_error("point and element incompatible");
  PreparedElement pg(g);
  return {p.kind, p.field, p.dim, pg.act_key(p.kind, *p.field, p.dim, p.key)};
}

// ------------------------------------------------------------- parallel

inline unsigned resolve_threads(unsigned t) {
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n < 4096) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ------------------------------------------------------------- Omega

using Perm = std::vector<std::uint32_t>;

struct BuildOptions {
  std::optional<std::uint64_t> expected_size;
  std::uint64_t memory_budget = std::uint64_t{8} << 30;
  unsigned threads = 1;
};

class OmegaIndex {
 public:
  static OmegaIndex build(const std::vector<ExtendedElement>& gens, const MarkerPoint& seed,
                          const BuildOptions& opt = {}) {
    if (gens.empty()) throw points_error("no generators");
    for (const auto& g : gens)
      if (g.field() != seed.field || g.dim() != seed.dim) throw points_error("generator does not act on seed");
    OmegaIndex om;
    om.kind_ = seed.kind;
    om.field_ = seed.field;
    om.dim_ = seed.dim;
    om.gens_ = gens;
    std::vector<PreparedElement> prep;
    for (const auto& g : gens) prep.emplace_back(g);

    const std::uint64_t per_point = seed.key.size() + 96 + 4 * (gens.size() + 2);
    std::vector<std::string> keys{seed.key};
    std::unordered_map<std::string, std::uint32_t> idx{{seed.key, 0}};
    std::vector<Perm> perms(gens.size());
    const FieldSpec& F = *seed.field;
    for (std::size_t pos = 0; pos < keys.size(); ++pos) {
      for (std::size_t gi = 0; gi < prep.size(); ++gi) {
        std::string img = prep[gi].act_key(seed.kind, F, seed.dim, keys[pos]);
        auto it = idx.find(img);
        std::uint32_t j;
        if (it == idx.end()) {
          if ((keys.size() + 1) * per_point > opt.memory_budget)
            throw points_error("orbit exceeds memory budget");
          if (opt.expected_size && keys.size() >= *opt.expected_size)
            throw points_error("orbit larger than expected size " + std::to_string(*opt.expected_size));
          j = static_cast<std::uint32_t>(keys.size());
          idx.emplace(img, j);
          keys.push_back(std::move(img));
        } else {
          j = it->second;
        }
        perms[gi].push_back(j);
      }
    }
    if (opt.expected_size && keys.size() != *opt.expected_size)
      throw points_error("orbit size " + std::to_string(keys.size()) + " differs from expected " +
                         std::to_string(*opt.expected_size));

    // seed stays at 0, the rest in key order
    const std::size_t n = keys.size();
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin() + 1, order.end(), [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    std::vector<std::uint32_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<std::uint32_t>(i);
    om.keys_.resize(n);
    for (std::size_t i = 0; i < n; ++i) om.keys_[i] = std::move(keys[order[i]]);
    idx.clear();
    om.gen_perms_.assign(gens.size(), Perm(n));
    for (std::size_t gi = 0; gi < gens.size(); ++gi)
      for (std::size_t i = 0; i < n; ++i) om.gen_perms_[gi][rank[i]] = rank[perms[gi][i]];
    perms.clear();
    om.index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) om.index_.emplace(om.keys_[i], static_cast<std::uint32_t>(i));
    om.build_schreier();
    return om;
  }

  std::size_t size() const { return keys_.size(); }
  PointKind kind() const { return kind_; }
  const FieldSpec* field() const { return field_; }
  unsigned dim() const { return dim_; }
  const std::vector<ExtendedElement>& generators() const { return gens_; }
  const std::vector<Perm>& generator_perms() const { return gen_perms_; }
  const std::string& key(std::size_t i) const { return keys_.at(i); }
  MarkerPoint point(std::size_t i) const { return {kind_, field_, dim_, keys_.at(i)}; }

  std::optional<std::uint32_t> index_of(const MarkerPoint& p) const {
    auto it = index_.find(p.key);
    if (it == index_.end() || p.kind != kind_) return std::nullopt;
    return it->second;
  }

  // Generator indices whose product maps the seed to point idx.
  std::vector<std::uint32_t> witness_word(std::size_t idx) const {
    if (idx >= size()) throw points_error("index out of range");
    std::vector<std::uint32_t> w;
    while (idx != 0) {
      w.push_back(sv_gen_[idx]);
      idx = sv_pred_[idx];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  ExtendedElement transversal_element(std::size_t idx) const {
    ExtendedElement g = ExtendedElement::identity(field_, dim_);
    for (auto gi : witness_word(idx)) g = g * gens_[gi];
    return g;
  }

  // Image of x under the product of generators in word.
  std::uint32_t apply_word(std::uint32_t x, const std::vector<std::uint32_t>& word) const {
    for (auto gi : word) x = gen_perms_[gi][x];
    return x;
  }

  Perm word_perm(const std::vector<std::uint32_t>& word) const {
    Perm p(size());
    for (std::size_t i = 0; i < size(); ++i) p[i] = apply_word(static_cast<std::uint32_t>(i), word);
    return p;
  }

  // Permutation of an arbitrary element, by acting on every point.
  Perm perm_of(const ExtendedElement& g, unsigned threads = 1) const {
    if (g.field() != field_ || g.dim() != dim_) throw points_error("element does not act on this space");
    PreparedElement pg(g);
    Perm p(size());
    std::atomic<bool> bad{false};
    parallel_for(size(), threads, [&](std::size_t i) {
      auto it = index_.find(pg.act_key(kind_, *field_, dim_, keys_[i]));
      if (it == index_.end()) {
        bad = true;
        return;
      }
      p[i] = it->second;
    });
    if (bad) throw points_error("element does not preserve the orbit");
    return p;
  }

 private:
  void build_schreier() {
    const std::size_t n = size();
    const std::uint32_t none = 0xffffffffu;
    sv_gen_.assign(n, none);
    sv_pred_.assign(n, none);
    std::deque<std::uint32_t> qu{0};
    sv_gen_[0] = 0;
    sv_pred_[0] = 0;
    while (!qu.empty()) {
      const std::uint32_t x = qu.front();
      qu.pop_front();
      for (std::uint32_t gi = 0; gi < gen_perms_.size(); ++gi) {
        const std::uint32_t y = gen_perms_[gi][x];
        if (sv_gen_[y] != none) continue;
        sv_gen_[y] = gi;
        sv_pred_[y] = x;
        qu.push_back(y);
      }
    }
  }

  PointKind kind_ = PointKind::Involution;
  const FieldSpec* field_ = nullptr;
  unsigned dim_ = 0;
  std::vector<ExtendedElement> gens_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<Perm> gen_perms_;
  std::vector<std::uint32_t> sv_gen_, sv_pred_;
};

inline MarkerPoint act_seed_by(const OmegaIndex& om, std::size_t idx) { return om.point(idx); }

// ------------------------------------------------------------- catalog

struct SeedInfo {
  Family family;
  Model model;
  FieldPtr field;
  MarkerPoint seed;
  SubgroupHandle stabilizer;           // in T
  std::vector<ExtendedElement> socle;  // generators of T
  std::string structure;
  std::uint64_t degree = 0;
  std::vector<std::string> notes;
};

namespace detail {

inline ExtendedElement random_sz_element(const FieldSpec& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<elem_t> any(0, F.q() - 1), unit(1, F.q() - 1);
  Matrix g = sz_chi(F, any(rng), any(rng)) * sz_kappa(F, unit(rng)) * sz_tau(F) * sz_chi(F, any(rng), any(rng));
  return ExtendedElement(g);
}

inline std::vector<ExtendedElement> cyclic_elements(const ExtendedElement& g) {
  std::vector<ExtendedElement> out{ExtendedElement::identity(g.field(), g.dim())};
  ExtendedElement x = g;
  while (!x.is_identity()) {
    out.push_back(x);
    x = x * g;
  }
  return out;
}

// Elements of T (scanned in Bruhat form) normalizing the marker subgroup,
// thinned to a generating set.
inline SubgroupHandle sz_marker_normalizer(const FieldSpec& F, const MarkerPoint& marker) {
  std::vector<ExtendedElement> found;
  for_each_sz_element(F, [&](const Matrix& g) {
    PreparedElement pg{ExtendedElement(g)};
    if (pg.act_key(marker.kind, F, marker.dim, marker.key) == marker.key) found.emplace_back(g);
  });
  SubgroupHandle h;
  std::unordered_set<std::string> span;
  for (const auto& e : found) {
    if (span.count(e.key())) continue;
    h.add_generator(e);
    span.clear();
    for (const auto& x : h.materialize()) span.insert(x.key());
  }
  if (h.generators().empty()) h.add_generator(ExtendedElement::identity(&F, 4));
  h.materialize();
  if (h.elements().size() != found.size()) throw points_error("normalizer scan is not closed");
  return h;
}

}  // namespace detail

inline bool is_prime_u(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Marker for the model together with its stabilizer in T.
inline SeedInfo seed_catalog(Family fam, std::uint64_t q, Model model) {
  FieldPtr Fp = family_field(fam, q);
  const FieldSpec& F = *Fp;
  SeedInfo s{fam, model, Fp, {}, {}, socle_generators(fam, F), "", 0, {}};
  const bigint T = group_order(fam, bigint(q));
  auto finish = [&](bigint stab_order) {
    s.stabilizer.set_order(stab_order);
    if (T % stab_order != 0) throw points_error("stabilizer order does not divide |T|");
    s.degree = static_cast<std::uint64_t>(T / stab_order);
  };

  if (fam == Family::Ree) {
    if (model != Model::Involution)
      throw points_error(std::string("unsupported model for ree: ") + model_name(model) + " (supported: involution)");
    if (F.m() < 3) throw points_error("ree needs m >= 3");
    s.seed = involution_point(ree_eta(F));
    s.stabilizer = SubgroupHandle({ExtendedElement(ree_eta(F)), ExtendedElement(ree_chi(F, 0, 1, 0)),
                                   ExtendedElement(ree_h(F, F.primitive())), ExtendedElement(ree_tau(F))});
    s.structure = "2 x PSL(2,q)";
    finish(bigint(2) * bigint(q) * (bigint(q) * q - 1) / 2);
    return s;
  }

  if (F.m() < 3) throw points_error("sz needs m >= 3");
  const std::uint64_t r = F.theta_exponent();
  const int delta = delta_sign_exp(F.m());
  switch (model) {
    case Model::Ovoid:
      s.seed = projective_point(F, {1, 0, 0, 0});
      s.stabilizer = SubgroupHandle({ExtendedElement(sz_chi(F, 1, 0)), ExtendedElement(sz_kappa(F, F.primitive()))});
      s.structure = "Q.K";
      finish(bigint(q) * q * (q - 1));
      return s;
    case Model::Pair:
      s.seed = point_pair(projective_point(F, {1, 0, 0, 0}), projective_point(F, {0, 0, 0, 1}));
      s.stabilizer = SubgroupHandle({ExtendedElement(sz_kappa(F, F.primitive())), ExtendedElement(sz_tau(F))});
      s.structure = "D_{2(q-1)}";
      finish(bigint(2) * (q - 1));
      return s;
    case Model::Hall1:
    case Model::Hall2: {
      const long long sgn = model == Model::Hall1 ? delta : -delta;
      const std::uint64_t target = static_cast<std::uint64_t>(static_cast<long long>(q) + sgn * static_cast<long long>(r) + 1);
      std::mt19937_64 rng(0x5eed + target);
      ExtendedElement gen;
      bool ok = false;
      for (int tries = 0; tries < 100000 && !ok; ++tries) {
        ExtendedElement x = detail::random_sz_element(F, rng);
        const std::uint64_t o = x.order(q * q * 4);
        if (o % target == 0) {
          gen = x.pow(o / target);
          ok = true;
        }
      }
      if (!ok) throw points_error("no element of order " + std::to_string(target));
      auto elems = detail::cyclic_elements(gen);
      s.seed = subgroup_point(elems);
      s.structure = "Z_" + std::to_string(target) + ":Z_4";
      s.notes.push_back("cyclic generator " + gen.matrix().to_string());
      if (q <= 32) {
        s.stabilizer = detail::sz_marker_normalizer(F, s.seed);
        if (s.stabilizer.order() != bigint(4 * target)) throw points_error("unexpected normalizer order");
      } else {
        s.stabilizer = SubgroupHandle({gen});
      }
      finish(bigint(4 * target));
      return s;
    }
    case Model::Sz2: {
      if (!is_prime_u(F.m())) throw points_error("sz2 model needs m prime");
      SubgroupHandle sub({ExtendedElement(sz_chi(F, 1, 0)), ExtendedElement(sz_tau(F))});
      s.seed = subgroup_point(sub.materialize());
      s.stabilizer = sub;
      s.structure = "Sz(2)";
      finish(bigint(20));
      return s;
    }
    case Model::Involution:
      throw points_error("unsupported model for sz: involution (supported: ovoid, pair, hall1, hall2, sz2)");
  }
  throw points_error("unsupported model");
}

}  // namespace szree
