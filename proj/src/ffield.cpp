#include "paleytk/ffield.hpp"

#include <algorithm>
#include <string>

#include "paleytk/intmath.hpp"

namespace paleytk {

namespace {

// Polynomials over F_p as little-endian int64 vectors with no trailing
// zeros, used only for the modulus search.
using Poly = std::vector<std::int64_t>;

void pm_prune(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pm_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + static_cast<i128>(a[i]) * b[j]) % p;
    }
  }
  pm_prune(out);
  return out;
}

// Remainder mod a monic divisor.
Poly pm_mod(Poly a, const Poly& f, std::int64_t p) {
  pm_prune(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    std::int64_t lead = a.back();
    std::size_t shift = a.size() - 1 - df;
    if (lead != 0) {
      for (std::size_t i = 0; i < df; ++i) {
        a[shift + i] = ((a[shift + i] - static_cast<i128>(lead) * f[i]) % p + p) % p;
      }
    }
    a.pop_back();  // the leading term cancels exactly: f is monic
    pm_prune(a);
  }
  return a;
}

Poly pm_mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
  return pm_mod(pm_mul(a, b, p), f, p);
}

Poly pm_powmod(Poly base, std::int64_t e, const Poly& f, std::int64_t p) {
  Poly result = {1};
  base = pm_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = pm_mulmod(result, base, f, p);
    base = pm_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly pm_sub(Poly a, const Poly& b, std::int64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i] = ((a[i] - b[i]) % p + p) % p;
  }
  pm_prune(a);
  return a;
}

Poly pm_gcd(Poly a, Poly b, std::int64_t p) {
  pm_prune(a);
  pm_prune(b);
  while (!b.empty()) {
    // make b monic before reducing
    std::int64_t lead_inv = mod_inverse(b.back(), p);
    for (auto& c : b) c = static_cast<i128>(c) * lead_inv % p;
    a = pm_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Irreducible over F_p iff gcd(f, x^{p^k} - x) = 1 for every k <= deg(f)/2;
// x^{p^k} - x is the product of all irreducibles of degree dividing k.
bool pm_irreducible(const Poly& f, std::int64_t p) {
  const int r = static_cast<int>(f.size()) - 1;
  if (r == 1) return true;
  Poly xp = {0, 1};  // x
  for (int k = 1; k <= r / 2; ++k) {
    xp = pm_powmod(std::move(xp), p, f, p);
    Poly g = pm_gcd(f, pm_sub(xp, Poly{0, 1}, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

Field Field::build(std::int64_t p, int r) {
  if (p >= (std::int64_t{1} << 31)) {
    raise("Overflow", "p must fit in 31 bits");
  }
  if (p < 3 || !is_prime(p)) {
    raise("NotPrime", "p must be an odd prime >= 3, got " + std::to_string(p));
  }
  if (r < 1) raise("BadDegree", "extension degree must be >= 1");

  Field f;
  f.p_ = p;
  f.r_ = r;
  f.q_ = checked_pow(p, r);

  // Lexicographically smallest monic irreducible, coefficients compared
  // high-degree-first: enumerating the low-coefficient block as a base-p
  // counter visits candidates in exactly that order.
  std::vector<std::int64_t> mod(static_cast<std::size_t>(r) + 1, 0);
  mod[r] = 1;
  for (std::int64_t m = 0; m < f.q_; ++m) {
    std::int64_t v = m;
    for (int i = 0; i < r; ++i) {
      mod[i] = v % p;
      v /= p;
    }
    if (pm_irreducible(mod, p)) {
      f.modulus_ = mod;
      return f;
    }
  }
  raise("Internal", "no irreducible polynomial found");  // unreachable
}

FieldElem Field::zero() const {
  return FieldElem{std::vector<std::int64_t>(r_, 0)};
}

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(std::int64_t v) const {
  FieldElem e = zero();
  v %= p_;
  if (v < 0) v += p_;
  e.c[0] = v;
  return e;
}

void Field::validate(const FieldElem& e) const {
  if (static_cast<int>(e.c.size()) != r_) {
    raise("FieldMismatch", "element has wrong coefficient count");
  }
  for (std::int64_t c : e.c) {
    if (c < 0 || c >= p_) {
      raise("FieldMismatch", "element coefficient out of range");
    }
  }
}

FieldElem Field::add(const FieldElem& a, const FieldElem& b) const {
  validate(a);
  validate(b);
  FieldElem out = zero();
  for (int i = 0; i < r_; ++i) {
    std::int64_t s = a.c[i] + b.c[i];
    out.c[i] = s >= p_ ? s - p_ : s;
  }
  return out;
}

FieldElem Field::sub(const FieldElem& a, const FieldElem& b) const {
  validate(a);
  validate(b);
  FieldElem out = zero();
  for (int i = 0; i < r_; ++i) {
    std::int64_t s = a.c[i] - b.c[i];
    out.c[i] = s < 0 ? s + p_ : s;
  }
  return out;
}

FieldElem Field::neg(const FieldElem& a) const {
  validate(a);
  FieldElem out = zero();
  for (int i = 0; i < r_; ++i) {
    out.c[i] = a.c[i] == 0 ? 0 : p_ - a.c[i];
  }
  return out;
}

FieldElem Field::mul(const FieldElem& a, const FieldElem& b) const {
  validate(a);
  validate(b);
  if (r_ == 1) {
    FieldElem out = zero();
    out.c[0] = static_cast<i128>(a.c[0]) * b.c[0] % p_;
    return out;
  }
  std::vector<std::int64_t> t(2 * r_ - 1, 0);
  for (int i = 0; i < r_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < r_; ++j) {
      t[i + j] = (t[i + j] + static_cast<i128>(a.c[i]) * b.c[j]) % p_;
    }
  }
  // reduce by the monic modulus
  for (int d = 2 * r_ - 2; d >= r_; --d) {
    std::int64_t lead = t[d];
    if (lead == 0) continue;
    for (int i = 0; i < r_; ++i) {
      t[d - r_ + i] =
          ((t[d - r_ + i] - static_cast<i128>(lead) * modulus_[i]) % p_ + p_) % p_;
    }
    t[d] = 0;
  }
  FieldElem out = zero();
  for (int i = 0; i < r_; ++i) out.c[i] = t[i];
  return out;
}

bool Field::is_zero(const FieldElem& a) const {
  for (std::int64_t c : a.c)
    if (c != 0) return false;
  return true;
}

FieldElem Field::pow(const FieldElem& a, u128 e) const {
  validate(a);
  FieldElem result = one();
  FieldElem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElem Field::inv(const FieldElem& a) const {
  validate(a);
  if (is_zero(a)) raise("DivisionByZero", "inverse of zero");
  return pow(a, static_cast<u128>(q_ - 2));
}

std::int64_t Field::label_of(const FieldElem& a) const {
  validate(a);
  std::int64_t label = 0;
  std::int64_t pw = 1;
  for (int i = 0; i < r_; ++i) {
    label += a.c[i] * pw;
    pw *= p_;
  }
  return label;
}

FieldElem Field::elem_of(std::int64_t label) const {
  if (label < 0 || label >= q_) {
    raise("LabelOutOfRange", "label " + std::to_string(label) +
                                 " outside [0, " + std::to_string(q_) + ")");
  }
  FieldElem e = zero();
  for (int i = 0; i < r_; ++i) {
    e.c[i] = label % p_;
    label /= p_;
  }
  return e;
}

std::int64_t Field::sub_labels(std::int64_t a, std::int64_t b) const {
  if (r_ == 1) {
    std::int64_t d = a - b;
    return d < 0 ? d + p_ : d;
  }
  std::int64_t out = 0, pw = 1;
  for (int i = 0; i < r_; ++i) {
    std::int64_t d = a % p_ - b % p_;
    if (d < 0) d += p_;
    out += d * pw;
    pw *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

std::int64_t Field::add_labels(std::int64_t a, std::int64_t b) const {
  if (r_ == 1) {
    std::int64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::int64_t out = 0, pw = 1;
  for (int i = 0; i < r_; ++i) {
    std::int64_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * pw;
    pw *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

std::int64_t Field::neg_label(std::int64_t a) const {
  return sub_labels(0, a);
}

bool Field::is_quadratic_residue(const FieldElem& a) const {
  if (is_zero(a)) return false;
  return pow(a, static_cast<u128>((q_ - 1) / 2)) == one();
}

std::vector<std::int64_t> Field::quadratic_residue_labels() const {
  std::vector<char> seen(static_cast<std::size_t>(q_), 0);
  for (std::int64_t l = 1; l < q_; ++l) {
    FieldElem e = elem_of(l);
    seen[static_cast<std::size_t>(label_of(mul(e, e)))] = 1;
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>((q_ - 1) / 2));
  for (std::int64_t l = 1; l < q_; ++l) {
    if (seen[static_cast<std::size_t>(l)]) out.push_back(l);
  }
  return out;
}

}  // namespace paleytk
