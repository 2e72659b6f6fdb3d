#include "paleytk/polyfq.hpp"

#include <algorithm>
#include <string>

#include "paleytk/digits.hpp"

namespace paleytk {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) raise("FieldMismatch", "operands from different fields");
}

}  // namespace

PolyFq::PolyFq(Field field, std::vector<FieldElem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const FieldElem& c : coeffs_) field_.validate(c);
  prune();
}

void PolyFq::prune() {
  while (!coeffs_.empty() && field_.is_zero(coeffs_.back())) {
    coeffs_.pop_back();
  }
}

PolyFq PolyFq::from_labels(const Field& field,
                           const std::vector<std::int64_t>& labels) {
  std::vector<FieldElem> coeffs;
  coeffs.reserve(labels.size());
  for (std::int64_t l : labels) coeffs.push_back(field.elem_of(l));
  return PolyFq(field, std::move(coeffs));
}

PolyFq PolyFq::monomial(const Field& field, const FieldElem& coeff,
                        std::int64_t degree) {
  std::vector<FieldElem> coeffs(static_cast<std::size_t>(degree) + 1,
                                field.zero());
  coeffs.back() = coeff;
  return PolyFq(field, std::move(coeffs));
}

PolyFq PolyFq::x_minus(const Field& field, const FieldElem& c) {
  return PolyFq(field, {field.neg(c), field.one()});
}

FieldElem PolyFq::coeff(std::int64_t k) const {
  if (k < 0 || k > degree()) return field_.zero();
  return coeffs_[static_cast<std::size_t>(k)];
}

FieldElem PolyFq::leading() const {
  if (is_zero()) raise("ZeroPolynomial", "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

PolyFq PolyFq::scaled(const FieldElem& s) const {
  std::vector<FieldElem> out;
  out.reserve(coeffs_.size());
  for (const FieldElem& c : coeffs_) out.push_back(field_.mul(c, s));
  return PolyFq(field_, std::move(out));
}

FieldElem PolyFq::eval(const FieldElem& x) const {
  FieldElem acc = field_.zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = field_.add(field_.mul(acc, x), coeffs_[i]);
  }
  return acc;
}

PolyFq PolyFq::times_x_minus(const FieldElem& c) const {
  if (is_zero()) return *this;
  std::vector<FieldElem> out(coeffs_.size() + 1, field_.zero());
  FieldElem negc = field_.neg(c);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    out[i + 1] = field_.add(out[i + 1], coeffs_[i]);
    out[i] = field_.add(out[i], field_.mul(coeffs_[i], negc));
  }
  return PolyFq(field_, std::move(out));
}

std::pair<PolyFq, FieldElem> PolyFq::divmod_x_minus(const FieldElem& c) const {
  if (is_zero()) return {PolyFq(field_), field_.zero()};
  std::vector<FieldElem> quot(coeffs_.size() - 1, field_.zero());
  FieldElem carry = field_.zero();  // synthetic division accumulator
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    FieldElem cur = field_.add(coeffs_[i], field_.mul(carry, c));
    if (i == 0) return {PolyFq(field_, std::move(quot)), cur};
    quot[i - 1] = cur;
    carry = cur;
  }
  return {PolyFq(field_), field_.zero()};  // unreachable
}

PolyFq PolyFq::compose_x_minus(const FieldElem& c) const {
  // Horner in the shifted variable: f(x-c) = (...(a_d (x-c) + a_{d-1})...).
  PolyFq acc(field_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc.times_x_minus(c) + PolyFq(field_, {coeffs_[i]});
  }
  return acc;
}

PolyFq operator+(const PolyFq& a, const PolyFq& b) {
  require_same_field(a.field(), b.field());
  const Field& F = a.field();
  std::vector<FieldElem> out(std::max(a.coeffs().size(), b.coeffs().size()),
                             F.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = F.add(a.coeff(static_cast<std::int64_t>(i)),
                   b.coeff(static_cast<std::int64_t>(i)));
  }
  return PolyFq(F, std::move(out));
}

PolyFq operator-(const PolyFq& a, const PolyFq& b) {
  require_same_field(a.field(), b.field());
  const Field& F = a.field();
  std::vector<FieldElem> out(std::max(a.coeffs().size(), b.coeffs().size()),
                             F.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = F.sub(a.coeff(static_cast<std::int64_t>(i)),
                   b.coeff(static_cast<std::int64_t>(i)));
  }
  return PolyFq(F, std::move(out));
}

PolyFq operator*(const PolyFq& a, const PolyFq& b) {
  require_same_field(a.field(), b.field());
  const Field& F = a.field();
  if (a.is_zero() || b.is_zero()) return PolyFq(F);
  std::vector<FieldElem> out(a.coeffs().size() + b.coeffs().size() - 1,
                             F.zero());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (F.is_zero(a.coeffs()[i])) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      out[i + j] = F.add(out[i + j], F.mul(a.coeffs()[i], b.coeffs()[j]));
    }
  }
  return PolyFq(F, std::move(out));
}

PolyFq linear_power(const Field& field, const FieldElem& c, std::int64_t t) {
  // (x-c)^t = sum_j binom(t, j) (-c)^{t-j} x^j, binomials by Lucas.
  std::vector<FieldElem> out(static_cast<std::size_t>(t) + 1, field.zero());
  FieldElem negc = field.neg(c);
  FieldElem pw = field.one();  // (-c)^e
  for (std::int64_t e = 0; e <= t; ++e) {
    std::int64_t j = t - e;
    std::int64_t b = binom_mod_p(t, j, field.p());
    if (b != 0) {
      out[static_cast<std::size_t>(j)] = field.mul(field.from_int(b), pw);
    }
    pw = field.mul(pw, negc);
  }
  return PolyFq(field, std::move(out));
}

PolyFq hyper_derivative(const PolyFq& f, std::int64_t n) {
  const Field& F = f.field();
  if (n < 0) raise("BadOrder", "hyper-derivative order must be >= 0");
  if (n == 0) return f;
  if (n > f.degree()) return PolyFq(F);
  std::vector<FieldElem> out(static_cast<std::size_t>(f.degree() - n) + 1,
                             F.zero());
  for (std::int64_t j = n; j <= f.degree(); ++j) {
    // Lucas keeps the factor exact even when j is astronomically larger
    // than any factorial table could reach.
    std::int64_t b = binom_mod_p(j, n, F.p());
    if (b == 0) continue;
    out[static_cast<std::size_t>(j - n)] = F.mul(F.from_int(b), f.coeff(j));
  }
  return PolyFq(F, std::move(out));
}

std::int64_t root_multiplicity(const PolyFq& f, const FieldElem& c) {
  if (f.is_zero()) raise("ZeroPolynomial", "multiplicity in the zero polynomial");
  std::int64_t count = 0;
  PolyFq cur = f;
  for (;;) {
    auto [quot, rem] = cur.divmod_x_minus(c);
    if (!f.field().is_zero(rem)) return count;
    ++count;
    cur = std::move(quot);
    if (cur.is_zero()) return count;
  }
}

bool multiplicity_at_least_via_hyper(const PolyFq& f, const FieldElem& c,
                                     std::int64_t m) {
  if (f.is_zero()) raise("ZeroPolynomial", "multiplicity in the zero polynomial");
  for (std::int64_t n = 0; n < m; ++n) {
    if (!f.field().is_zero(hyper_derivative(f, n).eval(c))) return false;
  }
  return true;
}

MatrixFq::MatrixFq(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)),
      rows_(rows),
      cols_(cols),
      a_(rows * cols, field_.zero()) {}

MatrixFq MatrixFq::top_rows(std::size_t k) const {
  MatrixFq out(field_, k, cols_);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
  }
  return out;
}

namespace {

struct Elimination {
  MatrixFq m;
  std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan on [A | b...]; exact over the field, first nonzero pivot in
// row order for determinism.
Elimination eliminate(MatrixFq m) {
  const Field& F = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && F.is_zero(m.at(pr, col))) ++pr;
    if (pr == m.rows()) continue;
    if (pr != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pr, c), m.at(row, c));
    }
    FieldElem inv = F.inv(m.at(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) {
      m.at(row, c) = F.mul(m.at(row, c), inv);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || F.is_zero(m.at(r, col))) continue;
      FieldElem factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) = F.sub(m.at(r, c), F.mul(factor, m.at(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace

std::optional<std::vector<FieldElem>> gaussian_solve(
    const MatrixFq& A, const std::vector<FieldElem>& b) {
  if (b.size() != A.rows()) {
    raise("DimensionMismatch", "rhs length does not match row count");
  }
  const Field& F = A.field();
  MatrixFq aug(F, A.rows(), A.cols() + 1);
  for (std::size_t r = 0; r < A.rows(); ++r) {
    for (std::size_t c = 0; c < A.cols(); ++c) aug.at(r, c) = A.at(r, c);
    aug.at(r, A.cols()) = b[r];
  }
  Elimination e = eliminate(std::move(aug));
  // a pivot in the rhs column marks an inconsistent row
  for (std::size_t c : e.pivot_cols) {
    if (c == A.cols()) return std::nullopt;
  }
  std::vector<FieldElem> x(A.cols(), F.zero());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    x[e.pivot_cols[i]] = e.m.at(i, A.cols());
  }
  return x;
}

std::size_t rank(const MatrixFq& A) {
  return eliminate(A).pivot_cols.size();
}

std::vector<std::size_t> pivot_columns(const MatrixFq& A) {
  return eliminate(A).pivot_cols;
}

}  // namespace paleytk
