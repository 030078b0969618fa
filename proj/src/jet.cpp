#include "lagbih/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>

namespace lagbih {

namespace {

// Exponents are each <= 4, so base-5 packing gives a unique key.
uint64_t pack(std::span<const int> alpha) {
  uint64_t key = 0, base = 1;
  for (int e : alpha) {
    key += static_cast<uint64_t>(e) * base;
    base *= 5;
  }
  return key;
}

void enumerate(int num_vars, int degree, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == num_vars - 1) {
    int used = 0;
    for (int e : current) used += e;
    current.push_back(degree - used);
    out.push_back(current);
    current.pop_back();
    return;
  }
  int used = 0;
  for (int e : current) used += e;
  for (int e = 0; e <= degree - used; ++e) {
    current.push_back(e);
    enumerate(num_vars, degree, current, out);
    current.pop_back();
  }
}

}  // namespace

JetTable::JetTable(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 1 || num_vars > 16)
    throw std::invalid_argument("JetTable: chart dimension must be in [1, 16]");

  std::vector<std::vector<int>> all;
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    std::vector<std::vector<int>> of_degree;
    std::vector<int> current;
    enumerate(num_vars, d, current, of_degree);
    std::sort(of_degree.begin(), of_degree.end());
    for (auto& a : of_degree) all.push_back(std::move(a));
    size_by_order_[d] = static_cast<int>(all.size());
  }

  std::unordered_map<uint64_t, int> lookup;
  const int n = static_cast<int>(all.size());
  exps_.reserve(static_cast<size_t>(n) * num_vars);
  degree_.reserve(n);
  factorial_.reserve(n);
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    double fact = 1.0;
    for (int v = 0; v < num_vars; ++v) {
      int e = all[i][v];
      exps_.push_back(e);
      deg += e;
      for (int k = 2; k <= e; ++k) fact *= k;
    }
    degree_.push_back(deg);
    factorial_.push_back(fact);
    lookup.emplace(pack(all[i]), i);
  }

  raise_.assign(static_cast<size_t>(n) * num_vars, -1);
  for (int i = 0; i < n; ++i) {
    for (int v = 0; v < num_vars; ++v) {
      if (degree_[i] == kMaxJetOrder) continue;
      auto alpha = all[i];
      alpha[v] += 1;
      raise_[static_cast<size_t>(i) * num_vars + v] = lookup.at(pack(alpha));
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (degree_[i] + degree_[j] > kMaxJetOrder) continue;
      std::vector<int> alpha(num_vars);
      for (int v = 0; v < num_vars; ++v) alpha[v] = all[i][v] + all[j][v];
      mul_.push_back({lookup.at(pack(alpha)), i, j});
    }
  }
  std::sort(mul_.begin(), mul_.end(), [this](const MulEntry& x, const MulEntry& y) {
    if (degree_[x.target] != degree_[y.target]) return degree_[x.target] < degree_[y.target];
    if (x.target != y.target) return x.target < y.target;
    return x.a < y.a;
  });
  {
    size_t pos = 0;
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      while (pos < mul_.size() && degree_[mul_[pos].target] <= d) ++pos;
      mul_size_by_order_[d] = static_cast<int>(pos);
    }
  }
}

std::shared_ptr<const JetTable> JetTable::get(int num_vars) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const JetTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(num_vars);
  if (it != cache.end()) return it->second;
  auto table = std::shared_ptr<const JetTable>(new JetTable(num_vars));
  cache.emplace(num_vars, table);
  return table;
}

int JetTable::index_of(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != num_vars_)
    throw std::invalid_argument("multi-index arity mismatch");
  int deg = 0;
  for (int e : alpha) {
    if (e < 0) throw std::invalid_argument("negative multi-index entry");
    deg += e;
  }
  if (deg > kMaxJetOrder) return -1;
  // Walk up from the origin through the raise table.
  int idx = 0;
  for (int v = 0; v < num_vars_; ++v)
    for (int k = 0; k < alpha[v]; ++k) idx = raise(idx, v);
  return idx;
}

Jet::Jet(std::shared_ptr<const JetTable> table, int order)
    : table_(std::move(table)), order_(order), c_(table_->size(order), 0.0) {}

Jet Jet::constant(std::shared_ptr<const JetTable> table, double value, int order) {
  Jet j(std::move(table), order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(std::shared_ptr<const JetTable> table, int var, double value, int order) {
  if (var < 0 || var >= table->num_vars()) throw std::invalid_argument("variable index out of range");
  Jet j(std::move(table), order);
  j.c_[0] = value;
  if (order >= 1) j.c_[j.table_->raise(0, var)] = 1.0;
  return j;
}

double Jet::partial(std::span<const int> alpha) const {
  int idx = table_->index_of(alpha);
  if (idx < 0) throw std::invalid_argument("requested derivative order exceeds 4");
  if (table_->degree(idx) > order_)
    throw std::domain_error("jet order overflow: derivative beyond valid truncation order");
  return c_[idx] * table_->factorial(idx);
}

Jet Jet::derivative(int var) const {
  if (order_ < 1) throw std::domain_error("jet order overflow: cannot differentiate order-0 jet");
  Jet out(table_, order_ - 1);
  const int n = table_->size(order_ - 1);
  for (int i = 0; i < n; ++i) {
    int up = table_->raise(i, var);
    out.c_[i] = c_[up] * (table_->exponents(i)[var] + 1);
  }
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& x : out.c_) x = -x;
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  if (table_ != rhs.table_) throw std::invalid_argument("jet arity mismatch");
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    c_.resize(table_->size(order_));
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  if (table_ != rhs.table_) throw std::invalid_argument("jet arity mismatch");
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    c_.resize(table_->size(order_));
  }
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

Jet& Jet::operator+=(double rhs) {
  c_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  c_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& x : c_) x *= rhs;
  return *this;
}

Jet operator-(double lhs, const Jet& rhs) {
  Jet out = -rhs;
  out.c_[0] += lhs;
  return out;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  if (lhs.table_ != rhs.table_) throw std::invalid_argument("jet arity mismatch");
  const int order = std::min(lhs.order_, rhs.order_);
  Jet out(lhs.table_, order);
  for (const auto& e : lhs.table_->mul_entries(order))
    out.c_[e.target] += lhs.c_[e.a] * rhs.c_[e.b];
  return out;
}

Jet operator/(const Jet& lhs, const Jet& rhs) { return lhs * reciprocal(rhs); }

void fused_multiply_add(Jet& dst, const Jet& a, const Jet& b) {
  if (dst.table_ != a.table_ || dst.table_ != b.table_)
    throw std::invalid_argument("jet arity mismatch");
  const int order = std::min({dst.order_, a.order_, b.order_});
  if (order < dst.order_) {
    dst.order_ = order;
    dst.c_.resize(dst.table_->size(order));
  }
  for (const auto& e : dst.table_->mul_entries(order))
    dst.c_[e.target] += a.c_[e.a] * b.c_[e.b];
}

void fused_multiply_sub(Jet& dst, const Jet& a, const Jet& b) {
  if (dst.table_ != a.table_ || dst.table_ != b.table_)
    throw std::invalid_argument("jet arity mismatch");
  const int order = std::min({dst.order_, a.order_, b.order_});
  if (order < dst.order_) {
    dst.order_ = order;
    dst.c_.resize(dst.table_->size(order));
  }
  for (const auto& e : dst.table_->mul_entries(order))
    dst.c_[e.target] -= a.c_[e.a] * b.c_[e.b];
}

void add_scaled(Jet& dst, double s, const Jet& x) {
  if (dst.table_ != x.table_) throw std::invalid_argument("jet arity mismatch");
  if (x.order_ < dst.order_) {
    dst.order_ = x.order_;
    dst.c_.resize(dst.table_->size(dst.order_));
  }
  for (size_t i = 0; i < dst.c_.size(); ++i) dst.c_[i] += s * x.c_[i];
}

Jet operator/(double lhs, const Jet& rhs) {
  Jet out = reciprocal(rhs);
  out *= lhs;
  return out;
}

Jet compose_series(const Jet& f, std::span<const double> derivs) {
  const int order = f.order_;
  if (static_cast<int>(derivs.size()) < order + 1)
    throw std::invalid_argument("compose_series: not enough derivative values");
  Jet delta = f;
  delta.c_[0] = 0.0;
  double fact = 1.0;
  for (int k = 2; k <= order; ++k) fact *= k;
  Jet acc = Jet::constant(f.table_, derivs[order] / fact, order);
  for (int k = order - 1; k >= 0; --k) {
    fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    acc = acc * delta;
    acc.c_[0] += derivs[k] / fact;
  }
  return acc;
}

Jet sin(const Jet& f) {
  const double s = std::sin(f.value()), c = std::cos(f.value());
  const double d[5] = {s, c, -s, -c, s};
  return compose_series(f, d);
}

Jet cos(const Jet& f) {
  const double s = std::sin(f.value()), c = std::cos(f.value());
  const double d[5] = {c, -s, -c, s, c};
  return compose_series(f, d);
}

Jet exp(const Jet& f) {
  const double e = std::exp(f.value());
  const double d[5] = {e, e, e, e, e};
  return compose_series(f, d);
}

Jet sqrt(const Jet& f) {
  const double x = f.value();
  if (!(x > 0.0)) throw std::domain_error("sqrt of non-positive jet value");
  const double r = std::sqrt(x);
  const double d[5] = {r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x),
                       -0.9375 / (r * x * x * x)};
  return compose_series(f, d);
}

Jet reciprocal(const Jet& f) {
  const double x = f.value();
  if (x == 0.0) throw std::domain_error("division by jet with zero value");
  const double inv = 1.0 / x;
  const double d[5] = {inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv,
                       24.0 * inv * inv * inv * inv * inv};
  return compose_series(f, d);
}

}  // namespace lagbih
