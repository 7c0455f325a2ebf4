#include "autorb/ffield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace autorb {
namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over Z_p, coefficient i on x^i, no trailing zeros.
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly pmul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// Remainder of a mod b, b monic-izable (leading coeff invertible mod p).
Poly pmod(Poly a, const Poly& b, int p) {
  trim(a);
  int db = pdeg(b);
  int lead = b[db];
  // lead^-1 mod p
  int li = 1;
  for (int t = 1; t < p; ++t)
    if (lead * t % p == 1) li = t;
  while (pdeg(a) >= db) {
    int da = pdeg(a);
    int c = a[da] * li % p;
    for (int i = 0; i <= db; ++i) {
      int t = (a[da - db + i] - c * b[i]) % p;
      a[da - db + i] = (t + p) % p;
    }
    trim(a);
  }
  return a;
}

bool divides(const Poly& d, const Poly& a, int p) {
  return pmod(a, d, p).empty();
}

// Exhaustive trial division: no monic factor of degree 1..deg/2.
bool is_irreducible(const Poly& f, int p) {
  int deg = pdeg(f);
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long c = 0; c < count; ++c) {
      Poly g(d + 1, 0);
      long long t = c;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      g[d] = 1;
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

// Fixed moduli for the fields whose element encodings the rest of the
// library depends on. Everything else gets the least monic irreducible.
Poly published_modulus(int p, int k) {
  if (p == 2 && k == 2) return {1, 1, 1};        // x^2+x+1
  if (p == 2 && k == 3) return {1, 1, 0, 1};     // x^3+x+1
  if (p == 3 && k == 2) return {1, 0, 1};        // x^2+1
  if (p == 2 && k == 4) return {1, 1, 0, 0, 1};  // x^4+x+1
  return {};
}

Poly find_modulus(int p, int k) {
  if (k == 1) return {0, 1};  // x
  Poly fixed = published_modulus(p, k);
  if (!fixed.empty()) return fixed;
  long long count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (long long c = 0; c < count; ++c) {
    Poly f(k + 1, 0);
    long long t = c;
    for (int i = 0; i < k; ++i) {
      f[i] = static_cast<int>(t % p);
      t /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw field_error("no irreducible modulus found");  // unreachable
}

}  // namespace

Field::Field(int p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw field_error("characteristic must be prime");
  if (k < 1 || k > kMaxDegree) throw field_error("extension degree out of range");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw field_error("field order exceeds supported maximum");
  }
  q_ = static_cast<int>(q);

  modulus_ = find_modulus(p, k);
  if (k > 1 && !is_irreducible(modulus_, p))
    throw field_error("modulus is reducible");

  auto decode = [&](int a) {
    Poly v;
    for (int i = 0; i < k_; ++i) {
      v.push_back(a % p_);
      a /= p_;
    }
    trim(v);
    return v;
  };
  auto encode = [&](const Poly& v) {
    int a = 0;
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) a = a * p_ + v[i];
    return a;
  };

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    Poly pa = decode(a);
    Poly na(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) na[i] = (p_ - pa[i]) % p_;
    trim(na);
    neg_[a] = static_cast<uint16_t>(encode(na));
    for (int b = 0; b < q_; ++b) {
      Poly pb = decode(b);
      Poly s(std::max(pa.size(), pb.size()), 0);
      for (std::size_t i = 0; i < s.size(); ++i) {
        int x = (i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0);
        s[i] = x % p_;
      }
      trim(s);
      add_[static_cast<std::size_t>(a) * q_ + b] = static_cast<uint16_t>(encode(s));
      Poly m = pmod(pmul(pa, pb, p_), modulus_, p_);
      mul_[static_cast<std::size_t>(a) * q_ + b] = static_cast<uint16_t>(encode(m));
    }
  }
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[static_cast<std::size_t>(a) * q_ + b] == 1) {
        inv_[a] = static_cast<uint16_t>(b);
        break;
      }
    }
    if (inv_[a] == 0) throw field_error("modulus is not irreducible: no inverse");
  }
  for (int a = 0; a < q_; ++a) {
    int x = a;
    for (int i = 1; i < p_; ++i) x = mul(x, a);
    frob_[a] = static_cast<uint16_t>(x);
  }

  // Multiplicative group sanity: every nonzero element satisfies
  // a^(q-1) = 1, and some element attains the full order q-1.
  gen_ = 0;
  for (int a = 1; a < q_; ++a) {
    int x = a, ord = 1;
    while (x != 1) {
      x = mul(x, a);
      ++ord;
      if (ord > q_) throw field_error("multiplicative order overflow");
    }
    if ((q_ - 1) % ord != 0)
      throw field_error("element order does not divide q-1");
    if (ord == q_ - 1 && gen_ == 0) gen_ = a;
  }
  if (gen_ == 0) throw field_error("multiplicative group is not cyclic of order q-1");

  dlog_.assign(q_, -1);
  int x = 1;
  for (int e = 0; e < q_ - 1; ++e) {
    dlog_[x] = e;
    x = mul(x, gen_);
  }
}

const Field& Field::get(int p, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = registry.find(key);
  if (it == registry.end())
    it = registry.emplace(key, std::unique_ptr<Field>(new Field(p, k))).first;
  return *it->second;
}

const Field& Field::get_order(int q) {
  if (q < 2) throw field_error("field order must be at least 2");
  for (int p = 2; p <= q; ++p) {
    if (!is_prime(p)) continue;
    int k = 0;
    long long t = 1;
    while (t < q) {
      t *= p;
      ++k;
    }
    if (t == q) return get(p, k);
    if (q % p == 0) break;
  }
  throw field_error("order is not a prime power");
}

int Field::inv(int a) const {
  if (check(a) == 0) throw singular_error("inverse of zero");
  return inv_[a];
}

int Field::pow(int a, long long e) const {
  check(a);
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<int> Field::coeffs(int a) const {
  check(a);
  std::vector<int> v(k_);
  for (int i = 0; i < k_; ++i) {
    v[i] = a % p_;
    a /= p_;
  }
  return v;
}

int Field::from_coeffs(const std::vector<int>& c) const {
  if (static_cast<int>(c.size()) != k_) throw field_error("coefficient count mismatch");
  int a = 0;
  for (int i = k_ - 1; i >= 0; --i) {
    if (c[i] < 0 || c[i] >= p_) throw field_error("coefficient out of range");
    a = a * p_ + c[i];
  }
  return a;
}

std::string Field::elem_name(int a) const {
  check(a);
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  int e = dlog_[a];
  if (e == 0) return "1";
  if (e == 1) return "w";
  return "w" + std::to_string(e);
}

FFElem::FFElem(const Field& f, int code) : f_(&f), code_(code) {
  if (code < 0 || code >= f.q()) throw field_error("element code out of range");
}

const Field& FFElem::field() const {
  if (f_ == nullptr) throw field_error("element is not bound to a field");
  return *f_;
}

const Field* FFElem::require_same(const FFElem& o) const {
  if (&field() != &o.field()) throw field_error("operands from different fields");
  return f_;
}

FFElem FFElem::operator+(const FFElem& o) const {
  return FFElem(*require_same(o), f_->add(code_, o.code_));
}
FFElem FFElem::operator-(const FFElem& o) const {
  return FFElem(*require_same(o), f_->sub(code_, o.code_));
}
FFElem FFElem::operator*(const FFElem& o) const {
  return FFElem(*require_same(o), f_->mul(code_, o.code_));
}
FFElem FFElem::operator-() const { return FFElem(field(), f_->neg(code_)); }
FFElem FFElem::inverse() const { return FFElem(field(), f_->inv(code_)); }
FFElem FFElem::frobenius() const { return FFElem(field(), f_->frobenius(code_)); }
FFElem FFElem::pow(long long e) const { return FFElem(field(), f_->pow(code_, e)); }

bool FFElem::operator==(const FFElem& o) const {
  return &field() == &o.field() && code_ == o.code_;
}

}  // namespace autorb
