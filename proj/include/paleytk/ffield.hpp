#pragma once

#include <cstdint>
#include <vector>

#include "paleytk/common.hpp"

namespace paleytk {

/// Element of F_{p^r}: little-endian coefficient vector of length r in the
/// powers of the ring generator, every entry reduced mod p.
struct FieldElem {
  std::vector<std::int64_t> c;

  bool operator==(const FieldElem&) const = default;
};

/// F_{p^r} built as F_p[x]/(m) where m is the lexicographically smallest
/// monic irreducible of degree r (coefficients compared high-degree-first).
/// The canonical modulus makes element labels reproducible across runs, so
/// two Field instances with equal (p, r) are interchangeable.
///
/// Fields are immutable after construction and all operations are pure;
/// instances are safe to share across threads.
class Field {
 public:
  /// Requires p an odd prime (>= 3, < 2^31), r >= 1, p^r < 2^63.
  static Field build(std::int64_t p, int r);

  std::int64_t p() const { return p_; }
  int r() const { return r_; }
  std::int64_t q() const { return q_; }
  /// r+1 coefficients, little-endian, monic.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  FieldElem zero() const;
  FieldElem one() const;
  /// Constant element v mod p.
  FieldElem from_int(std::int64_t v) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  /// Multiplicative inverse; throws Error("DivisionByZero") on 0.
  FieldElem inv(const FieldElem& a) const;
  /// Square-and-multiply. 0^0 is defined as 1.
  FieldElem pow(const FieldElem& a, u128 e) const;

  bool is_zero(const FieldElem& a) const;

  /// label(e) = sum coeffs[i] * p^i, a bijection onto [0, q).
  std::int64_t label_of(const FieldElem& a) const;
  FieldElem elem_of(std::int64_t label) const;  // Error("LabelOutOfRange")

  /// Digitwise base-p label arithmetic (no reduction needed for add/sub).
  std::int64_t sub_labels(std::int64_t a, std::int64_t b) const;
  std::int64_t add_labels(std::int64_t a, std::int64_t b) const;
  std::int64_t neg_label(std::int64_t a) const;

  /// Euler criterion: a != 0 and a^((q-1)/2) = 1. Zero is classified as
  /// neither residue nor non-residue and returns false.
  bool is_quadratic_residue(const FieldElem& a) const;

  /// All labels of nonzero squares; size is exactly (q-1)/2.
  std::vector<std::int64_t> quadratic_residue_labels() const;

  bool operator==(const Field& other) const {
    return p_ == other.p_ && r_ == other.r_;
  }

  /// Throws Error("FieldMismatch") unless e is a well-formed element.
  void validate(const FieldElem& e) const;

 private:
  Field() = default;

  std::int64_t p_ = 0;
  int r_ = 0;
  std::int64_t q_ = 0;
  std::vector<std::int64_t> modulus_;
};

}  // namespace paleytk
