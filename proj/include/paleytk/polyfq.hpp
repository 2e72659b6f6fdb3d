#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "paleytk/ffield.hpp"

namespace paleytk {

/// Dense univariate polynomial over F_q. Coefficient index = degree; the
/// vector carries no trailing zeros, so the zero polynomial is empty and
/// degree() of it is -1.
class PolyFq {
 public:
  explicit PolyFq(Field field) : field_(std::move(field)) {}
  PolyFq(Field field, std::vector<FieldElem> coeffs);

  static PolyFq from_labels(const Field& field,
                            const std::vector<std::int64_t>& labels);
  static PolyFq monomial(const Field& field, const FieldElem& coeff,
                         std::int64_t degree);
  /// x - c
  static PolyFq x_minus(const Field& field, const FieldElem& c);

  const Field& field() const { return field_; }
  std::int64_t degree() const {
    return static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of x^k (zero beyond the degree).
  FieldElem coeff(std::int64_t k) const;
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  FieldElem leading() const;

  PolyFq scaled(const FieldElem& s) const;
  FieldElem eval(const FieldElem& x) const;  // Horner

  /// this * (x - c)
  PolyFq times_x_minus(const FieldElem& c) const;
  /// quotient and remainder of division by (x - c)
  std::pair<PolyFq, FieldElem> divmod_x_minus(const FieldElem& c) const;
  /// f(x - c)
  PolyFq compose_x_minus(const FieldElem& c) const;

  bool operator==(const PolyFq&) const = default;

 private:
  void prune();
  Field field_;
  std::vector<FieldElem> coeffs_;
};

PolyFq operator+(const PolyFq& a, const PolyFq& b);
PolyFq operator-(const PolyFq& a, const PolyFq& b);
PolyFq operator*(const PolyFq& a, const PolyFq& b);  // schoolbook

/// (x - c)^t by binomial expansion, binomials reduced by Lucas.
PolyFq linear_power(const Field& field, const FieldElem& c, std::int64_t t);

/// n-th hyper-derivative (Hasse derivative): sum binom(j, n) a_j x^{j-n}.
/// E^{(0)} is the identity and E^{(1)} the classical derivative; binomials
/// are taken mod p so the operator stays useful in characteristic p.
PolyFq hyper_derivative(const PolyFq& f, std::int64_t n);

/// Largest t with (x-c)^t dividing f, by repeated synthetic division.
std::int64_t root_multiplicity(const PolyFq& f, const FieldElem& c);

/// True iff E^{(n)}(f)(c) = 0 for every n < m; implies multiplicity >= m.
bool multiplicity_at_least_via_hyper(const PolyFq& f, const FieldElem& c,
                                     std::int64_t m);

/// Rectangular matrix over F_q, row-major.
class MatrixFq {
 public:
  MatrixFq(Field field, std::size_t rows, std::size_t cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const FieldElem& at(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  MatrixFq top_rows(std::size_t k) const;

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<FieldElem> a_;
};

/// Exact Gauss-Jordan elimination. Returns one solution of A x = b (free
/// variables set to zero) or nullopt when the system is inconsistent.
std::optional<std::vector<FieldElem>> gaussian_solve(
    const MatrixFq& A, const std::vector<FieldElem>& b);

std::size_t rank(const MatrixFq& A);

/// Column indices of a pivot basis of the column space, in ascending order.
std::vector<std::size_t> pivot_columns(const MatrixFq& A);

}  // namespace paleytk
