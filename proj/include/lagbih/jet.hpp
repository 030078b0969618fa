#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace lagbih {

// Truncated multivariate Taylor arithmetic: values plus all partial
// derivatives of total order <= 4 in m chart variables. Coefficients are
// stored as Taylor coefficients d^alpha f / alpha!, keyed by multi-index,
// so mixed-partial symmetry holds by construction.

inline constexpr int kMaxJetOrder = 4;

class JetTable {
public:
  // Cached table for m variables (m >= 1). Shared by all jets of that arity.
  static std::shared_ptr<const JetTable> get(int num_vars);

  int num_vars() const { return num_vars_; }

  // Number of multi-indices with total degree <= order.
  int size(int order) const { return size_by_order_[order]; }
  int degree(int idx) const { return degree_[idx]; }
  std::span<const int> exponents(int idx) const {
    return {exps_.data() + static_cast<size_t>(idx) * num_vars_, static_cast<size_t>(num_vars_)};
  }
  // Index of alpha, or -1 when |alpha| > kMaxJetOrder.
  int index_of(std::span<const int> alpha) const;
  // Index of alpha + e_var, or -1 when that would exceed the truncation order.
  int raise(int idx, int var) const { return raise_[static_cast<size_t>(idx) * num_vars_ + var]; }
  double factorial(int idx) const { return factorial_[idx]; }

  struct MulEntry {
    int target, a, b;
  };
  // Product entries whose target degree is <= order.
  std::span<const MulEntry> mul_entries(int order) const {
    return {mul_.data(), static_cast<size_t>(mul_size_by_order_[order])};
  }

private:
  explicit JetTable(int num_vars);

  int num_vars_;
  int size_by_order_[kMaxJetOrder + 1];
  std::vector<int> exps_;     // size() * num_vars_
  std::vector<int> degree_;
  std::vector<int> raise_;
  std::vector<double> factorial_;
  std::vector<MulEntry> mul_;
  int mul_size_by_order_[kMaxJetOrder + 1];
};

class Jet {
public:
  Jet() = default;

  static Jet constant(std::shared_ptr<const JetTable> table, double value,
                      int order = kMaxJetOrder);
  static Jet variable(std::shared_ptr<const JetTable> table, int var, double value,
                      int order = kMaxJetOrder);

  bool valid() const { return table_ != nullptr; }
  const std::shared_ptr<const JetTable>& table() const { return table_; }
  int order() const { return order_; }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }

  // d^alpha f at the expansion point; throws on |alpha| > order().
  double partial(std::span<const int> alpha) const;
  double coeff(int idx) const { return c_[idx]; }

  // Jet of d/dx_var, valid to order() - 1.
  Jet derivative(int var) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator+(Jet lhs, double rhs) { return lhs += rhs; }
  friend Jet operator+(double lhs, Jet rhs) { return rhs += lhs; }
  friend Jet operator-(Jet lhs, double rhs) { return lhs -= rhs; }
  friend Jet operator-(double lhs, const Jet& rhs);
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
  friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }
  friend Jet operator/(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(Jet lhs, double rhs) { return lhs *= 1.0 / rhs; }
  friend Jet operator/(double lhs, const Jet& rhs);

  // g(f) for analytic g given by its derivative values g(f0), g'(f0), ...
  // at f0 = f.value(); derivs must supply at least order()+1 entries.
  friend Jet compose_series(const Jet& f, std::span<const double> derivs);

  // allocation-free accumulation kernels for the hot paths:
  // dst += a*b, dst -= a*b, dst += s*x (each truncates dst to the min order)
  friend void fused_multiply_add(Jet& dst, const Jet& a, const Jet& b);
  friend void fused_multiply_sub(Jet& dst, const Jet& a, const Jet& b);
  friend void add_scaled(Jet& dst, double s, const Jet& x);

  friend Jet sin(const Jet& f);
  friend Jet cos(const Jet& f);
  friend Jet exp(const Jet& f);
  friend Jet sqrt(const Jet& f);
  friend Jet reciprocal(const Jet& f);

private:
  Jet(std::shared_ptr<const JetTable> table, int order);

  std::shared_ptr<const JetTable> table_;
  int order_ = -1;
  std::vector<double> c_;
};

Jet compose_series(const Jet& f, std::span<const double> derivs);
Jet sin(const Jet& f);
Jet cos(const Jet& f);
Jet exp(const Jet& f);
Jet sqrt(const Jet& f);
Jet reciprocal(const Jet& f);
void fused_multiply_add(Jet& dst, const Jet& a, const Jet& b);
void fused_multiply_sub(Jet& dst, const Jet& a, const Jet& b);
void add_scaled(Jet& dst, double s, const Jet& x);

}  // namespace lagbih
