#pragma once

// Matrix models of Sz(q) < GL(4,q) and Ree(q) < GL(7,q), elements of
// T x| <f> with f the entrywise Frobenius, and small-subgroup closures.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "szree/gf.hpp"

namespace szree {

enum class Family { Sz, Ree };

inline const char* family_name(Family f) { return f == Family::Sz ? "sz" : "ree"; }

class group_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Matrix {
 public:
  static constexpr unsigned kMax = 7;

  Matrix() = default;
  Matrix(const FieldSpec* f, unsigned n) : f_(f), n_(n) {
    if (n == 0 || n > kMax) throw group_error("matrix dimension out of range");
    a_.fill(0);
  }

  static Matrix identity(const FieldSpec* f, unsigned n) {
    Matrix m(f, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  const FieldSpec* field() const { return f_; }
  unsigned dim() const { return n_; }
  elem_t& at(unsigned i, unsigned j) { return a_[i * kMax + j]; }
  elem_t at(unsigned i, unsigned j) const { return a_[i * kMax + j]; }

  bool is_identity() const {
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j)
        if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    check_compatible(x, y);
    Matrix r(x.f_, x.n_);
    const FieldSpec& F = *x.f_;
    const unsigned n = x.n_;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned k = 0; k < n; ++k) {
        const elem_t a = x.at(i, k);
        if (a == 0) continue;
        for (unsigned j = 0; j < n; ++j) {
          const elem_t b = y.at(k, j);
          if (b) r.at(i, j) = F.add(r.at(i, j), F.mul(a, b));
        }
      }
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.f_ != y.f_ || x.n_ != y.n_) return false;
    for (unsigned i = 0; i < x.n_; ++i)
      for (unsigned j = 0; j < x.n_; ++j)
        if (x.at(i, j) != y.at(i, j)) return false;
    return true;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  Matrix frobenius(long long i) const {
    Matrix r(*this);
    if (i % static_cast<long long>(f_->m()) == 0) return r;
    for (unsigned a = 0; a < n_; ++a)
      for (unsigned b = 0; b < n_; ++b) r.at(a, b) = f_->frobenius(at(a, b), i);
    return r;
  }

  elem_t determinant() const {
    Matrix w(*this);
    const FieldSpec& F = *f_;
    elem_t det = 1;
    for (unsigned c = 0; c < n_; ++c) {
      unsigned piv = c;
      while (piv < n_ && w.at(piv, c) == 0) ++piv;
      if (piv == n_) return 0;
      if (piv != c) {
        for (unsigned j = 0; j < n_; ++j) std::swap(w.at(piv, j), w.at(c, j));
        det = F.neg(det);
      }
      det = F.mul(det, w.at(c, c));
      const elem_t iv = F.inv(w.at(c, c));
      for (unsigned i = c + 1; i < n_; ++i) {
        const elem_t fct = F.mul(w.at(i, c), iv);
        if (fct == 0) continue;
        for (unsigned j = c; j < n_; ++j) w.at(i, j) = F.sub(w.at(i, j), F.mul(fct, w.at(c, j)));
      }
    }
    return det;
  }

  Matrix inverse() const {
    const FieldSpec& F = *f_;
    Matrix w(*this), r = identity(f_, n_);
    for (unsigned c = 0; c < n_; ++c) {
      unsigned piv = c;
      while (piv < n_ && w.at(piv, c) == 0) ++piv;
      if (piv == n_) throw group_error("singular matrix");
      if (piv != c)
        for (unsigned j = 0; j < n_; ++j) {
          std::swap(w.at(piv, j), w.at(c, j));
          std::swap(r.at(piv, j), r.at(c, j));
        }
      const elem_t iv = F.inv(w.at(c, c));
      for (unsigned j = 0; j < n_; ++j) {
        w.at(c, j) = F.mul(w.at(c, j), iv);
        r.at(c, j) = F.mul(r.at(c, j), iv);
      }
      for (unsigned i = 0; i < n_; ++i) {
        if (i == c) continue;
        const elem_t fct = w.at(i, c);
        if (fct == 0) continue;
        for (unsigned j = 0; j < n_; ++j) {
          w.at(i, j) = F.sub(w.at(i, j), F.mul(fct, w.at(c, j)));
          r.at(i, j) = F.sub(r.at(i, j), F.mul(fct, r.at(c, j)));
        }
      }
    }
    return r;
  }

  // Row-major entries, key_bytes() little-endian bytes each.
  std::string key() const {
    const unsigned kb = f_->key_bytes();
    std::string s;
    s.resize(static_cast<size_t>(n_) * n_ * kb);
    size_t pos = 0;
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j) {
        elem_t v = at(i, j);
        for (unsigned b = 0; b < kb; ++b) {
          s[pos++] = static_cast<char>(v & 0xff);
          v >>= 8;
        }
      }
    return s;
  }

  // Inverse of key(), reading from key[offset].
  static Matrix from_key(const FieldSpec* f, unsigned n, std::string_view key, size_t offset = 0) {
    const unsigned kb = f->key_bytes();
    if (key.size() < offset + static_cast<size_t>(n) * n * kb) throw group_error("short matrix key");
    Matrix m(f, n);
    size_t pos = offset;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        elem_t v = 0;
        for (unsigned b = 0; b < kb; ++b)
          v |= static_cast<elem_t>(static_cast<unsigned char>(key[pos++])) << (8 * b);
        m.at(i, j) = v;
      }
    return m;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (unsigned i = 0; i < n_; ++i) {
      os << (i ? "; " : "");
      for (unsigned j = 0; j < n_; ++j) os << (j ? "," : "") << f_->to_string(at(i, j));
    }
    os << "]";
    return os.str();
  }

 private:
  static void check_compatible(const Matrix& x, const Matrix& y) {
    if (x.f_ == nullptr || x.f_ != y.f_ || x.n_ != y.n_)
      throw group_error("matrices from different groups");
  }

  const FieldSpec* f_ = nullptr;
  unsigned n_ = 0;
  std::array<elem_t, kMax * kMax> a_{};
};

// v * A for a row vector.
inline std::array<elem_t, Matrix::kMax> row_times(const std::array<elem_t, Matrix::kMax>& v,
                                                  const Matrix& A) {
  const FieldSpec& F = *A.field();
  std::array<elem_t, Matrix::kMax> out{};
  for (unsigned k = 0; k < A.dim(); ++k) {
    if (v[k] == 0) continue;
    for (unsigned j = 0; j < A.dim(); ++j)
      if (A.at(k, j)) out[j] = F.add(out[j], F.mul(v[k], A.at(k, j)));
  }
  return out;
}

// (A, i) stands for A f^i, with f A = A^sigma f.
class ExtendedElement {
 public:
  ExtendedElement() = default;
  explicit ExtendedElement(Matrix a, unsigned twist = 0) : a_(std::move(a)), twist_(twist) {
    twist_ %= a_.field()->m();
  }

  static ExtendedElement identity(const FieldSpec* f, unsigned n) {
    return ExtendedElement(Matrix::identity(f, n), 0);
  }
  static ExtendedElement twist_only(const FieldSpec* f, unsigned n, unsigned i) {
    return ExtendedElement(Matrix::identity(f, n), i);
  }

  const Matrix& matrix() const { return a_; }
  unsigned twist() const { return twist_; }
  const FieldSpec* field() const { return a_.field(); }
  unsigned dim() const { return a_.dim(); }
  bool is_identity() const { return twist_ == 0 && a_.is_identity(); }

  friend ExtendedElement operator*(const ExtendedElement& x, const ExtendedElement& y) {
    if (x.field() != y.field() || x.dim() != y.dim())
      throw group_error("elements from different groups");
    return ExtendedElement(x.a_ * y.a_.frobenius(x.twist_), x.twist_ + y.twist_);
  }

  ExtendedElement inverse() const {
    const unsigned m = field()->m();
    const long long back = -static_cast<long long>(twist_);
    return ExtendedElement(a_.inverse().frobenius(back), (m - twist_) % m);
  }

  ExtendedElement pow(std::uint64_t e) const {
    ExtendedElement r = identity(field(), dim()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // g^{-1} t g for a plain matrix t.
  Matrix conjugate(const Matrix& t) const {
    return (a_.inverse() * t * a_).frobenius(-static_cast<long long>(twist_));
  }

  std::uint64_t order(std::uint64_t cap = 1u << 20) const {
    ExtendedElement x = *this;
    for (std::uint64_t k = 1; k <= cap; ++k) {
      if (x.is_identity()) return k;
      x = x * *this;
    }
    throw group_error("element order exceeds cap");
  }

  std::string key() const {
    std::string k = a_.key();
    k.push_back(static_cast<char>(twist_));
    return k;
  }

  friend bool operator==(const ExtendedElement& x, const ExtendedElement& y) {
    return x.twist_ == y.twist_ && x.a_ == y.a_;
  }

 private:
  Matrix a_;
  unsigned twist_ = 0;
};

inline ExtendedElement ext_mul(const ExtendedElement& a, const ExtendedElement& b) { return a * b; }
inline ExtendedElement ext_inv(const ExtendedElement& a) { return a.inverse(); }

// ---------------------------------------------------------------- Suzuki

inline void require_char(const FieldSpec& F, unsigned p, const char* what) {
  if (F.p() != p) throw group_error(std::string(what) + ": wrong characteristic");
}

inline Matrix sz_chi(const FieldSpec& F, elem_t a, elem_t b) {
  require_char(F, 2, "sz_chi");
  Matrix x = Matrix::identity(&F, 4);
  const elem_t ar = F.theta(a);
  x.at(1, 0) = a;
  x.at(2, 0) = F.add(F.mul(a, ar), b);
  x.at(2, 1) = ar;
  x.at(3, 0) = F.add(F.add(F.mul(F.mul(a, a), ar), F.mul(a, b)), F.theta(b));
  x.at(3, 1) = b;
  x.at(3, 2) = a;
  return x;
}

inline Matrix sz_kappa(const FieldSpec& F, elem_t k) {
  require_char(F, 2, "sz_kappa");
  if (k == 0) throw group_error("sz_kappa: k = 0");
  const long long half_r = static_cast<long long>(F.theta_exponent() / 2);
  Matrix x(&F, 4);
  x.at(0, 0) = F.powi(k, half_r + 1);
  x.at(1, 1) = F.powi(k, half_r);
  x.at(2, 2) = F.powi(k, -half_r);
  x.at(3, 3) = F.powi(k, -half_r - 1);
  return x;
}

inline Matrix sz_tau(const FieldSpec& F) {
  require_char(F, 2, "sz_tau");
  Matrix x(&F, 4);
  for (unsigned i = 0; i < 4; ++i) x.at(i, 3 - i) = 1;
  return x;
}

// ---------------------------------------------------------------- Ree

namespace detail {

// x^(a*theta + b), negative a or b meaning inverse powers.
inline elem_t theta_power(const FieldSpec& F, elem_t x, int a, int b) {
  if (x == 0) {
    if (a < 0 || b < 0) throw group_error("negative power of zero");
    return (a == 0 && b == 0) ? 1 : 0;
  }
  return F.mul(F.powi(F.theta(x), a), F.powi(x, b));
}

struct MonomialEntry {
  unsigned i, j;
  int sign;  // +1 or -1
  int a, b;  // x^(a theta + b)
};

inline Matrix ree_unipotent(const FieldSpec& F, elem_t x, const std::vector<MonomialEntry>& ents) {
  Matrix M = Matrix::identity(&F, 7);
  for (const auto& e : ents) {
    const elem_t v = theta_power(F, x, e.a, e.b);
    M.at(e.i, e.j) = e.sign > 0 ? v : F.neg(v);
  }
  return M;
}

inline const std::vector<MonomialEntry>& alpha_printed_entries() {
  static const std::vector<MonomialEntry> e = {
      {0, 1, -1, 1, 0}, {0, 2, -1, 1, 1}, {0, 4, 1, 3, 1},  {0, 6, 1, 4, 2},
      {1, 2, -1, 0, 1}, {1, 3, -1, 1, 1}, {1, 4, -1, 2, 1}, {1, 5, 1, 2, 2},  {1, 6, 1, 3, 2},
      {2, 3, -1, 1, 0}, {2, 4, -1, 2, 0}, {2, 5, 1, 2, 1},  {2, 6, -1, 3, 1},
      {3, 4, -1, 1, 0}, {3, 5, 1, 1, 1},
      {4, 5, 1, 0, 1},  {4, 6, -1, 1, 1},
      {5, 6, 1, 1, 0}};
  return e;
}

inline const std::vector<MonomialEntry>& beta_printed_entries() {
  static const std::vector<MonomialEntry> e = {
      {0, 2, 1, 1, 0},  {0, 4, 1, 0, 1},  {0, 6, -1, 1, 1}, {1, 3, -1, 1, 0},
      {1, 5, -1, 2, 0}, {2, 6, -1, 0, 1}, {3, 5, -1, 1, 0}, {4, 6, -1, 1, 0}};
  return e;
}

inline const std::vector<MonomialEntry>& gamma_printed_entries() {
  static const std::vector<MonomialEntry> e = {
      {0, 3, -1, 1, 0}, {0, 5, -1, 0, 1}, {0, 6, -1, 2, 0}, {1, 4, -1, 1, 0},
      {1, 6, 1, 0, 1},  {2, 5, 1, 1, 0},  {3, 6, -1, 1, 0}};
  return e;
}

// Unipotent alpha(x) whose products with beta(-y) gamma(-z) close up under
// the multiplication rule chi(x1,y1,z1)chi(x2,y2,z2) =
// chi(x1+x2, y1+y2-x1 x2^r, z1+z2-x2 y1+x1 x2^(r+1)-x1^2 x2^r).
inline const std::vector<MonomialEntry>& alpha_entries() {
  static const std::vector<MonomialEntry> e = {
      {0, 1, -1, 1, 0}, {0, 4, -1, 3, 1}, {0, 5, 1, 3, 2}, {0, 6, 1, 4, 2},
      {1, 2, -1, 0, 1}, {1, 3, 1, 1, 1},  {1, 4, 1, 2, 1}, {1, 6, 1, 3, 2},
      {2, 3, -1, 1, 0}, {2, 4, -1, 2, 0}, {2, 6, 1, 3, 1},
      {3, 4, -1, 1, 0},
      {4, 5, 1, 0, 1},  {4, 6, 1, 1, 1},
      {5, 6, 1, 1, 0}};
  return e;
}

}  // namespace detail

inline Matrix ree_alpha_printed(const FieldSpec& F, elem_t x) {
  require_char(F, 3, "ree_alpha");
  return detail::ree_unipotent(F, x, detail::alpha_printed_entries());
}
inline Matrix ree_beta_printed(const FieldSpec& F, elem_t y) {
  require_char(F, 3, "ree_beta");
  return detail::ree_unipotent(F, y, detail::beta_printed_entries());
}
inline Matrix ree_gamma_printed(const FieldSpec& F, elem_t z) {
  require_char(F, 3, "ree_gamma");
  return detail::ree_unipotent(F, z, detail::gamma_printed_entries());
}
inline Matrix ree_chi_printed(const FieldSpec& F, elem_t x, elem_t y, elem_t z) {
  return ree_alpha_printed(F, x) * ree_beta_printed(F, y) * ree_gamma_printed(F, z);
}

inline Matrix ree_alpha(const FieldSpec& F, elem_t x) {
  require_char(F, 3, "ree_alpha");
  return detail::ree_unipotent(F, x, detail::alpha_entries());
}
inline Matrix ree_beta(const FieldSpec& F, elem_t y) { return ree_beta_printed(F, F.neg(y)); }
inline Matrix ree_gamma(const FieldSpec& F, elem_t z) { return ree_gamma_printed(F, F.neg(z)); }

inline Matrix ree_chi(const FieldSpec& F, elem_t x, elem_t y, elem_t z) {
  return ree_alpha(F, x) * ree_beta(F, y) * ree_gamma(F, z);
}

inline Matrix ree_h(const FieldSpec& F, elem_t k) {
  require_char(F, 3, "ree_h");
  if (k == 0) throw group_error("ree_h: k = 0");
  static const int ex[7][2] = {{1, 0}, {-1, 1}, {2, -1}, {0, 0}, {-2, 1}, {1, -1}, {-1, 0}};
  Matrix M(&F, 7);
  for (unsigned i = 0; i < 7; ++i) M.at(i, i) = detail::theta_power(F, k, ex[i][0], ex[i][1]);
  return M;
}

inline Matrix ree_tau(const FieldSpec& F) {
  require_char(F, 3, "ree_tau");
  Matrix M(&F, 7);
  for (unsigned i = 0; i < 7; ++i) M.at(i, 6 - i) = F.neg(1);
  return M;
}

inline Matrix ree_eta(const FieldSpec& F) {
  require_char(F, 3, "ree_eta");
  Matrix M(&F, 7);
  for (unsigned i = 0; i < 7; ++i) M.at(i, i) = (i % 2 == 0) ? F.neg(1) : 1;
  return M;
}

// ---------------------------------------------------------------- orders

inline bigint group_order(Family fam, const bigint& q) {
  if (fam == Family::Sz) return q * q * (q * q + 1) * (q - 1);
  return q * q * q * (q * q * q + 1) * (q - 1);
}

inline unsigned family_dim(Family f) { return f == Family::Sz ? 4 : 7; }

inline FieldPtr family_field(Family fam, std::uint64_t q) {
  FieldPtr F = make_field_of_order(q);
  if (fam == Family::Sz && (F->p() != 2 || F->m() < 1))
    throw group_error("Suzuki groups need q = 2^m with m odd");
  if (fam == Family::Ree && (F->p() != 3 || F->m() < 1))
    throw group_error("Ree groups need q = 3^m with m odd");
  return F;
}

// Generators of T: the unipotent radical, a torus generator and tau.
inline std::vector<ExtendedElement> socle_generators(Family fam, const FieldSpec& F) {
  std::vector<ExtendedElement> g;
  const elem_t w = F.primitive();
  if (fam == Family::Sz) {
    g.emplace_back(sz_chi(F, 1, 0));
    if (F.q() > 2) g.emplace_back(sz_kappa(F, w));
    g.emplace_back(sz_tau(F));
  } else {
    g.emplace_back(ree_chi(F, 1, 0, 0));
    g.emplace_back(ree_chi(F, 0, 1, 0));
    g.emplace_back(ree_chi(F, 0, 0, 1));
    g.emplace_back(ree_h(F, w));
    g.emplace_back(ree_tau(F));
  }
  return g;
}

// ---------------------------------------------------------------- subgroups

class SubgroupHandle {
 public:
  static constexpr std::size_t kClosureCap = 1000000;

  SubgroupHandle() = default;
  explicit SubgroupHandle(std::vector<ExtendedElement> gens, std::optional<bigint> order = {})
      : gens_(std::move(gens)), order_(std::move(order)) {}

  const std::vector<ExtendedElement>& generators() const { return gens_; }
  bool has_order() const { return order_.has_value(); }
  const bigint& order() const {
    if (!order_) throw group_error("subgroup order unknown; materialize first");
    return *order_;
  }
  void set_order(bigint o) { order_ = std::move(o); }

  bool materialized() const { return !elems_.empty(); }
  const std::vector<ExtendedElement>& elements() const { return elems_; }
  bool contains(const ExtendedElement& x) const {
    if (!materialized()) throw group_error("subgroup not materialized");
    return index_.count(x.key()) != 0;
  }
  std::optional<std::size_t> index_of(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Breadth-first closure under right multiplication by generators.
  // Throws when the group exceeds cap.
  const std::vector<ExtendedElement>& materialize(std::size_t cap = kClosureCap) {
    if (materialized()) return elems_;
    if (gens_.empty()) throw group_error("subgroup without generators");
    ExtendedElement id = ExtendedElement::identity(gens_[0].field(), gens_[0].dim());
    elems_.push_back(id);
    index_.emplace(id.key(), 0);
    for (std::size_t pos = 0; pos < elems_.size(); ++pos) {
      for (const auto& g : gens_) {
        ExtendedElement y = elems_[pos] * g;
        std::string k = y.key();
        if (index_.count(k)) continue;
        if (elems_.size() >= cap) {
          elems_.clear();
          index_.clear();
          throw group_error("subgroup closure exceeds cap");
        }
        index_.emplace(std::move(k), elems_.size());
        elems_.push_back(std::move(y));
      }
    }
    order_ = bigint(elems_.size());
    return elems_;
  }

  void add_generator(ExtendedElement g) {
    gens_.push_back(std::move(g));
    elems_.clear();
    index_.clear();
    order_.reset();
  }

 private:
  std::vector<ExtendedElement> gens_;
  std::optional<bigint> order_;
  std::vector<ExtendedElement> elems_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------- Sz scan

// Visits every element of Sz(q) once, in Bruhat form
// chi(a,b) kappa(k)  and  chi(a,b) kappa(k) tau chi(c,d).
inline void for_each_sz_element(const FieldSpec& F, const std::function<void(const Matrix&)>& visit) {
  const elem_t q = F.q();
  std::vector<Matrix> chis;
  chis.reserve(q * q);
  for (elem_t a = 0; a < q; ++a)
    for (elem_t b = 0; b < q; ++b) chis.push_back(sz_chi(F, a, b));
  const Matrix tau = sz_tau(F);
  for (elem_t k = 1; k < q; ++k) {
    const Matrix kap = sz_kappa(F, k);
    for (const auto& c : chis) {
      const Matrix b = c * kap;
      visit(b);
      const Matrix bt = b * tau;
      for (const auto& d : chis) visit(bt * d);
    }
  }
}

}  // namespace szree
