#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "lagbih/jet.hpp"

namespace lagbih {

// Small helpers for ambient vectors with jet components. Embedding
// coordinates are ordered (Re z1, Im z1, Re z2, Im z2, ...).

using JetVec = std::vector<Jet>;

inline Jet dot(std::span<const Jet> a, std::span<const Jet> b) {
  int order = kMaxJetOrder;
  for (size_t i = 0; i < a.size(); ++i)
    order = std::min({order, a[i].order(), b[i].order()});
  Jet acc = Jet::constant(a[0].table(), 0.0, order);
  for (size_t i = 0; i < a.size(); ++i) fused_multiply_add(acc, a[i], b[i]);
  return acc;
}

inline JetVec operator+(const JetVec& a, const JetVec& b) {
  JetVec out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline JetVec operator-(const JetVec& a, const JetVec& b) {
  JetVec out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

inline JetVec operator*(const Jet& s, const JetVec& v) {
  JetVec out;
  out.reserve(v.size());
  for (const Jet& x : v) out.push_back(s * x);
  return out;
}

inline JetVec operator*(double s, const JetVec& v) {
  JetVec out = v;
  for (Jet& x : out) x *= s;
  return out;
}

inline void axpy(JetVec& dst, const Jet& s, std::span<const Jet> x) {
  for (size_t i = 0; i < dst.size(); ++i) fused_multiply_add(dst[i], s, x[i]);
}

inline void axpy_neg(JetVec& dst, const Jet& s, std::span<const Jet> x) {
  for (size_t i = 0; i < dst.size(); ++i) fused_multiply_sub(dst[i], s, x[i]);
}

inline void axpy(JetVec& dst, double s, std::span<const Jet> x) {
  for (size_t i = 0; i < dst.size(); ++i) add_scaled(dst[i], s, x[i]);
}

// Multiplication by i in embedding coordinates.
inline JetVec apply_complex_structure(std::span<const Jet> v) {
  JetVec out(v.begin(), v.end());
  for (size_t k = 0; k + 1 < v.size(); k += 2) {
    out[k] = -v[k + 1];
    out[k + 1] = v[k];
  }
  return out;
}

inline JetVec component_derivative(std::span<const Jet> v, int var) {
  JetVec out;
  out.reserve(v.size());
  for (const Jet& x : v) out.push_back(x.derivative(var));
  return out;
}

// One complex scalar as a (re, im) pair of jets.
struct JetComplex {
  Jet re, im;

  JetComplex operator+(const JetComplex& o) const { return {re + o.re, im + o.im}; }
  JetComplex operator-(const JetComplex& o) const { return {re - o.re, im - o.im}; }
  JetComplex operator*(const JetComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  JetComplex operator*(const Jet& s) const { return {re * s, im * s}; }
  JetComplex operator*(double s) const { return {re * s, im * s}; }
  JetComplex conj() const { return {re, -im}; }
};

// e^{i theta} as a (cos, sin) pair.
inline JetComplex exp_i(const Jet& theta) { return {cos(theta), sin(theta)}; }

}  // namespace lagbih
