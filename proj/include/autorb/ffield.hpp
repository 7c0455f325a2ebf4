#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autorb/errors.hpp"

namespace autorb {

/// Finite field GF(p^k) with p^k <= 512.
///
/// Elements are integer codes in [0, p^k): the coefficient vector of the
/// residue polynomial packed in base p, least significant digit first.
/// The modulus is fixed per (p, k), so element codes are stable across
/// runs and machines. All arithmetic is table-driven; a Field is
/// immutable after construction and safe for concurrent reads.
class Field {
public:
  static constexpr int kMaxOrder = 512;
  static constexpr int kMaxDegree = 8;

  /// Returns the unique registered field with the given parameters.
  /// Throws field_error for non-prime p or out-of-range (p, k).
  static const Field& get(int p, int k);

  /// Lookup by order q = p^k.
  static const Field& get_order(int q);

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }

  /// Monic irreducible modulus; coefficient i belongs to x^i, length k+1.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int sub(int a, int b) const { return add_[idx(a, neg_[check(b)])]; }
  int neg(int a) const { return neg_[check(a)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int inv(int a) const;
  int pow(int a, long long e) const;
  int frobenius(int a) const { return frob_[check(a)]; }  // a -> a^p

  bool is_zero(int a) const { return check(a) == 0; }
  bool is_one(int a) const { return check(a) == 1; }

  /// Base-p digits of an element code, length k.
  std::vector<int> coeffs(int a) const;
  int from_coeffs(const std::vector<int>& c) const;

  /// Least element code of multiplicative order q-1.
  int generator() const { return gen_; }

  /// Prime fields print as decimal digits; extension fields as
  /// "0", "1", "w", "w2", ... (powers of generator()).
  std::string elem_name(int a) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

private:
  Field(int p, int k);

  int check(int a) const {
    if (a < 0 || a >= q_) throw field_error("element code out of range");
    return a;
  }
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(check(a)) * q_ + check(b);
  }

  int p_, k_, q_;
  std::vector<int> modulus_;
  std::vector<uint16_t> add_, mul_;
  std::vector<uint16_t> neg_, inv_, frob_;
  std::vector<int> dlog_;  // dlog_[a] = e with generator()^e == a, a != 0
  int gen_ = 1;
};

/// One field element bound to its Field. Thin value wrapper over the
/// integer codes used on the hot paths.
class FFElem {
public:
  FFElem() : f_(nullptr), code_(0) {}
  FFElem(const Field& f, int code);

  const Field& field() const;
  int code() const { return code_; }
  std::vector<int> coeffs() const { return field().coeffs(code_); }
  bool is_zero() const { return code_ == 0; }

  FFElem operator+(const FFElem& o) const;
  FFElem operator-(const FFElem& o) const;
  FFElem operator*(const FFElem& o) const;
  FFElem operator-() const;
  FFElem inverse() const;
  FFElem frobenius() const;
  FFElem pow(long long e) const;

  bool operator==(const FFElem& o) const;
  bool operator!=(const FFElem& o) const { return !(*this == o); }

  std::string str() const { return field().elem_name(code_); }

private:
  const Field* require_same(const FFElem& o) const;

  const Field* f_;
  int code_;
};

}  // namespace autorb
