#pragma once

// Arithmetic in GF(p^m) for p in {2, 3}.
//
// Elements are stored as dense base-p integers: the polynomial
// c_0 + c_1 t + ... + c_{m-1} t^{m-1} is the integer sum c_i p^i.  Zero is 0
// and one is 1 in every field.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace szree {

using elem_t = std::uint64_t;
using bigint = boost::multiprecision::cpp_int;

class field_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Dense polynomials over F_p, coefficients low to high, no trailing zeros.
using poly = std::vector<int>;

inline void trim(poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline poly poly_mod(poly a, const poly& b, int p) {
  trim(a);
  const int lead_inv = (b.back() == 1) ? 1 : (p == 3 ? 2 : 1);
  while (a.size() >= b.size()) {
    const int c = (a.back() * lead_inv) % p;
    const size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline poly poly_mulmod(const poly& a, const poly& b, const poly& f, int p) {
  if (a.empty() || b.empty()) return {};
  poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(r, f, p);
}

inline poly poly_gcd(poly a, poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f, by repeated p-th powering.
inline poly frobenius_power_of_x(const poly& f, int p, unsigned k) {
  poly x = poly_mod({0, 1}, f, p);
  for (unsigned s = 0; s < k; ++s) {
    poly y{1};
    for (int t = 0; t < p; ++t) y = poly_mulmod(y, x, f, p);
    x = std::move(y);
  }
  return x;
}

inline std::vector<unsigned> prime_divisors(std::uint64_t n) {
  std::vector<unsigned> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<unsigned>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

// Rabin's test for a monic polynomial of degree m.
inline bool is_irreducible(const poly& f, int p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m == 1) return true;
  poly xq = frobenius_power_of_x(f, p, m);
  poly x = poly_mod({0, 1}, f, p);
  if (xq != x) return false;
  for (unsigned d : prime_divisors(m)) {
    poly h = frobenius_power_of_x(f, p, m / d);
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = ((h[1] - 1) % p + p) % p;
    trim(h);
    poly g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace detail

class FieldSpec {
 public:
  FieldSpec(unsigned p, unsigned m) : p_(p), m_(m) {
    if (p != 2 && p != 3) throw field_error("unsupported characteristic " + std::to_string(p));
    if (m == 0 || m % 2 == 0) throw field_error("field degree must be odd, got " + std::to_string(m));
    if (m > 31) throw field_error("field degree above 31 is not supported");
    q_ = detail::ipow(p, m);
    choose_modulus();
    pow_p_.resize(m_ + 1);
    for (unsigned i = 0; i <= m_; ++i) pow_p_[i] = detail::ipow(p_, i);
    build_tables();
    find_primitive();
  }

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  elem_t q() const { return q_; }
  // Coefficients low to high, monic, length m+1.
  const std::vector<int>& modulus() const { return modulus_; }
  elem_t primitive() const { return primitive_; }
  // Bytes needed for one element in a canonical key.
  unsigned key_bytes() const { return key_bytes_; }

  elem_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<elem_t>(r);
  }

  int coeff(elem_t x, unsigned i) const { return static_cast<int>((x / pow_p_[i]) % p_); }

  elem_t add(elem_t a, elem_t b) const {
    if (p_ == 2) return a ^ b;
    if (small_) return add_tab_[a * q_ + b];
    elem_t r = 0, scale = 1;
    while (a | b) {
      r += scale * chunk_add()[(a % 243) * 243 + (b % 243)];
      a /= 243;
      b /= 243;
      scale *= 243;
    }
    return r;
  }

  elem_t neg(elem_t a) const {
    if (p_ == 2) return a;
    if (small_) return neg_tab_[a];
    elem_t r = 0, scale = 1;
    while (a) {
      r += scale * chunk_neg()[a % 243];
      a /= 243;
      scale *= 243;
    }
    return r;
  }

  elem_t sub(elem_t a, elem_t b) const { return add(a, neg(b)); }

  elem_t mul(elem_t a, elem_t b) const {
    if (small_) return mul_tab_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    if (logged_) {
      return exp_[log_[a] + log_[b]];
    }
    return p_ == 2 ? mul_char2(a, b) : mul_char3(a, b);
  }

  elem_t inv(elem_t a) const {
    if (a == 0) throw field_error("inverse of zero");
    if (logged_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
  }

  elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }

  // x^e with e taken modulo q-1 for nonzero x; 0^0 = 1.
  elem_t pow(elem_t x, std::uint64_t e) const {
    if (x == 0) return e == 0 ? 1 : 0;
    e %= (q_ - 1);
    if (logged_) return exp_[(static_cast<unsigned __int128>(log_[x]) * e) % (q_ - 1)];
    elem_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  // Signed exponent; negative exponents invert.
  elem_t powi(elem_t x, long long e) const {
    if (e >= 0) return pow(x, static_cast<std::uint64_t>(e));
    if (x == 0) throw field_error("negative power of zero");
    const long long n = static_cast<long long>(q_ - 1);
    long long r = e % n;
    if (r < 0) r += n;
    return pow(x, static_cast<std::uint64_t>(r));
  }

  // x^(p^i), i taken mod m.
  elem_t frobenius(elem_t x, long long i) const {
    long long k = i % static_cast<long long>(m_);
    if (k < 0) k += m_;
    if (x == 0 || k == 0) return x;
    if (logged_) return exp_[(static_cast<unsigned __int128>(log_[x]) * pow_p_[k]) % (q_ - 1)];
    for (long long s = 0; s < k; ++s) x = pow(x, p_);
    return x;
  }

  // Exponent used by the Tits twist: 2^((m+1)/2) in characteristic 2,
  // 3^((m-1)/2) in characteristic 3.
  unsigned theta_shift() const { return p_ == 2 ? (m_ + 1) / 2 : (m_ - 1) / 2; }
  std::uint64_t theta_exponent() const { return pow_p_[theta_shift()]; }
  elem_t theta(elem_t x) const { return frobenius(x, theta_shift()); }

  // r = 2^((m+1)/2) or 3^((m+1)/2), the exponent appearing in x^r.
  std::uint64_t r_exponent() const { return detail::ipow(p_, (m_ + 1) / 2); }

  // Elements of the subfield of order p^d (d | m).
  bool in_subfield(elem_t x, unsigned d) const { return frobenius(x, d) == x; }

  std::string to_string(elem_t x) const {
    if (x == 0) return "0";
    std::string out;
    for (int i = static_cast<int>(m_) - 1; i >= 0; --i) {
      const int c = coeff(x, static_cast<unsigned>(i));
      if (c == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0 || c != 1) out += std::to_string(c);
      if (i >= 1) out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

  std::string modulus_string() const {
    std::string out;
    for (int i = static_cast<int>(m_); i >= 0; --i) {
      const int c = modulus_[static_cast<size_t>(i)];
      if (c == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0 || c != 1) out += std::to_string(c);
      if (i >= 1) out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void choose_modulus() {
    // Smallest dense value sum c_i p^i over the low coefficients, which is
    // coefficient-tuple order read from the highest non-leading term down.
    const std::uint64_t count = q_;
    for (std::uint64_t v = 0; v < count; ++v) {
      detail::poly f(m_ + 1, 0);
      std::uint64_t t = v;
      for (unsigned i = 0; i < m_; ++i) {
        f[i] = static_cast<int>(t % p_);
        t /= p_;
      }
      f[m_] = 1;
      if (m_ > 1 && f[0] == 0) continue;
      if (detail::is_irreducible(f, static_cast<int>(p_))) {
        modulus_ = f;
        return;
      }
    }
    throw field_error("no irreducible polynomial found");
  }

  static const std::vector<std::uint8_t>& chunk_add() {
    static const std::vector<std::uint8_t> tab = [] {
      std::vector<std::uint8_t> t(243 * 243);
      for (unsigned a = 0; a < 243; ++a)
        for (unsigned b = 0; b < 243; ++b) {
          unsigned r = 0, s = 1, x = a, y = b;
          for (int i = 0; i < 5; ++i) {
            r += s * ((x % 3 + y % 3) % 3);
            x /= 3;
            y /= 3;
            s *= 3;
          }
          t[a * 243 + b] = static_cast<std::uint8_t>(r);
        }
      return t;
    }();
    return tab;
  }

  static const std::vector<std::uint8_t>& chunk_neg() {
    static const std::vector<std::uint8_t> tab = [] {
      std::vector<std::uint8_t> t(243);
      for (unsigned a = 0; a < 243; ++a) {
        unsigned r = 0, s = 1, x = a;
        for (int i = 0; i < 5; ++i) {
          r += s * ((3 - x % 3) % 3);
          x /= 3;
          s *= 3;
        }
        t[a] = static_cast<std::uint8_t>(r);
      }
      return t;
    }();
    return tab;
  }

  elem_t mul_char2(elem_t a, elem_t b) const {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < m_; ++i)
      if ((b >> i) & 1) r ^= a << i;
    std::uint64_t red = 0;
    for (unsigned i = 0; i <= m_; ++i)
      if (modulus_[i]) red |= std::uint64_t{1} << i;
    for (int d = 2 * static_cast<int>(m_) - 2; d >= static_cast<int>(m_); --d)
      if ((r >> d) & 1) r ^= red << (d - static_cast<int>(m_));
    return r;
  }

  elem_t mul_char3(elem_t a, elem_t b) const {
    std::vector<int> x(m_), y(m_);
    for (unsigned i = 0; i < m_; ++i) {
      x[i] = static_cast<int>(a % 3);
      a /= 3;
      y[i] = static_cast<int>(b % 3);
      b /= 3;
    }
    std::vector<int> r(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i)
      if (x[i])
        for (unsigned j = 0; j < m_; ++j) r[i + j] += x[i] * y[j];
    for (int d = 2 * static_cast<int>(m_) - 2; d >= static_cast<int>(m_); --d) {
      const int c = r[d] % 3;
      if (c)
        for (unsigned i = 0; i <= m_; ++i) r[d - m_ + i] -= c * modulus_[i];
    }
    elem_t out = 0;
    for (int i = static_cast<int>(m_) - 1; i >= 0; --i) out = out * 3 + static_cast<elem_t>(((r[i] % 3) + 3) % 3);
    return out;
  }

  elem_t slow_add(elem_t a, elem_t b) const {
    if (p_ == 2) return a ^ b;
    elem_t r = 0, s = 1;
    while (a | b) {
      r += s * ((a % 3 + b % 3) % 3);
      a /= 3;
      b /= 3;
      s *= 3;
    }
    return r;
  }

  void build_tables() {
    small_ = q_ <= 256;
    logged_ = q_ <= (std::uint64_t{1} << 20);
    if (small_) {
      add_tab_.resize(q_ * q_);
      mul_tab_.resize(q_ * q_);
      neg_tab_.resize(q_);
      for (elem_t a = 0; a < q_; ++a) {
        neg_tab_[a] = static_cast<std::uint8_t>(slow_add(0, p_ == 2 ? a : slow_add(a, a)));
        for (elem_t b = 0; b < q_; ++b) {
          add_tab_[a * q_ + b] = static_cast<std::uint8_t>(slow_add(a, b));
          mul_tab_[a * q_ + b] =
              static_cast<std::uint8_t>(p_ == 2 ? mul_char2(a, b) : mul_char3(a, b));
        }
      }
    }
  }

  void find_primitive() {
    const std::uint64_t n = q_ - 1;
    if (n == 1) {
      primitive_ = 1;
    } else {
      const auto primes = detail::prime_divisors(n);
      bool saved = logged_;
      logged_ = false;
      for (elem_t g = 2; g < q_; ++g) {
        bool ok = true;
        for (unsigned pr : primes)
          if (pow(g, n / pr) == 1) {
            ok = false;
            break;
          }
        if (ok) {
          primitive_ = g;
          break;
        }
      }
      logged_ = saved;
    }
    if (logged_) {
      log_.assign(q_, 0);
      exp_.assign(2 * (q_ - 1) + 1, 0);
      elem_t x = 1;
      for (std::uint64_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = static_cast<std::uint32_t>(x);
        log_[x] = static_cast<std::uint32_t>(i);
        x = small_ ? mul_tab_[x * q_ + primitive_]
                   : (p_ == 2 ? mul_char2(x, primitive_) : mul_char3(x, primitive_));
      }
      for (std::uint64_t i = q_ - 1; i < exp_.size(); ++i) exp_[i] = exp_[i - (q_ - 1)];
    }
    key_bytes_ = 1;
    while ((std::uint64_t{1} << (8 * key_bytes_)) < q_) ++key_bytes_;
  }

  unsigned p_;
  unsigned m_;
  elem_t q_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint64_t> pow_p_;
  bool small_ = false;
  bool logged_ = false;
  std::vector<std::uint8_t> add_tab_, mul_tab_, neg_tab_;
  std::vector<std::uint32_t> log_, exp_;
  elem_t primitive_ = 1;
  unsigned key_bytes_ = 1;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// Fields are cached so that repeated calls return the same object.
inline FieldPtr make_field(unsigned p, unsigned m) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, m});
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const FieldSpec>(p, m);
  cache.emplace(std::make_pair(p, m), f);
  return f;
}

// Field of order q (q = p^m, p in {2,3}).
inline FieldPtr make_field_of_order(std::uint64_t q) {
  for (unsigned p : {2u, 3u}) {
    std::uint64_t x = 1;
    unsigned m = 0;
    while (x < q) {
      x *= p;
      ++m;
    }
    if (x == q && m > 0) return make_field(p, m);
  }
  throw field_error("q=" + std::to_string(q) + " is not a power of 2 or 3");
}

// Value wrapper with operators.  Mixing fields throws.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldSpec* f, elem_t v) : f_(f), v_(v) {}
  FieldElement(const FieldPtr& f, elem_t v) : f_(f.get()), v_(v) {}

  static FieldElement zero(const FieldPtr& f) { return {f, 0}; }
  static FieldElement one(const FieldPtr& f) { return {f, 1}; }

  const FieldSpec* field() const { return f_; }
  elem_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return {same(a, b), a.f_->add(a.v_, b.v_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return {same(a, b), a.f_->sub(a.v_, b.v_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    return {same(a, b), a.f_->mul(a.v_, b.v_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return {same(a, b), a.f_->div(a.v_, b.v_)};
  }
  FieldElement operator-() const { return {f_, f_->neg(v_)}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.f_ == b.f_ && a.v_ == b.v_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inv() const { return {f_, f_->inv(v_)}; }
  FieldElement pow(long long e) const { return {f_, f_->powi(v_, e)}; }
  FieldElement frobenius(long long i) const { return {f_, f_->frobenius(v_, i)}; }

  std::string to_string() const { return f_ ? f_->to_string(v_) : "?"; }

 private:
  static const FieldSpec* same(const FieldElement& a, const FieldElement& b) {
    if (a.f_ == nullptr || a.f_ != b.f_) throw field_error("operands from different fields");
    return a.f_;
  }

  const FieldSpec* f_ = nullptr;
  elem_t v_ = 0;
};

inline FieldElement frobenius(const FieldElement& x, long long i) { return x.frobenius(i); }

inline FieldElement tits_theta(const FieldElement& x) {
  return {x.field(), x.field()->theta(x.value())};
}

// The sign delta with 5 | q + delta*2^((m+1)/2) + 1 for q = 2^m, m odd >= 3.
inline int delta_sign_exp(unsigned m) {
  if (m < 3 || m % 2 == 0) throw field_error("delta_sign needs q = 2^m with m odd >= 3");
  auto pow2mod5 = [](unsigned e) {
    unsigned r = 1;
    for (unsigned i = 0; i < e; ++i) r = (r * 2) % 5;
    return r;
  };
  const unsigned q5 = pow2mod5(m), r5 = pow2mod5((m + 1) / 2);
  if ((q5 + r5 + 1) % 5 == 0) return 1;
  if ((q5 + 5 - r5 + 1) % 5 == 0) return -1;
  throw field_error("no delta found");
}

inline int delta_sign(const bigint& q) {
  if (q < 8) throw field_error("delta_sign needs q = 2^m with m odd >= 3");
  bigint x = q;
  unsigned m = 0;
  while (x > 1) {
    if ((x & 1) != 0) throw field_error("delta_sign needs a power of two");
    x >>= 1;
    ++m;
  }
  return delta_sign_exp(m);
}

}  // namespace szree
