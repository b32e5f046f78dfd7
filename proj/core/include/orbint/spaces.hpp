#pragma once

#include <optional>
#include <vector>

#include "orbint/linalg.hpp"
#include "orbint/polynomial.hpp"
#include "orbint/scalar.hpp"

namespace orbint {

// a + b sqrt(tau) in E = F(sqrt(tau)).
struct EVal {
  Rational a = 0, b = 0;
  bool operator==(const EVal& o) const { return a == o.a && b == o.b; }
  bool operator!=(const EVal& o) const { return !(*this == o); }
  bool is_zero() const { return a == 0 && b == 0; }
};

EVal e_add(const EVal& x, const EVal& y);
EVal e_sub(const EVal& x, const EVal& y);
EVal e_mul(const EVal& x, const EVal& y, const Rational& tau);
EVal e_inv(const EVal& x, const Rational& tau);
inline EVal e_conj(const EVal& x) { return {x.a, -x.b}; }
inline Rational e_norm(const EVal& x, const Rational& tau) { return x.a * x.a - tau * x.b * x.b; }

// Square matrices and vectors over E, row-major.
struct EMat {
  std::size_t n = 0;
  std::vector<EVal> a;

  EMat() = default;
  explicit EMat(std::size_t dim) : n(dim), a(dim * dim) {}
  static EMat from_rational(const QMat& m);
  static EMat identity(std::size_t dim);
  EVal& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const EVal& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  bool operator==(const EMat& o) const { return n == o.n && a == o.a; }
};
using EVec = std::vector<EVal>;

EMat e_mul(const EMat& x, const EMat& y, const Rational& tau);
EVec e_apply(const EMat& x, const EVec& v, const Rational& tau);
EMat e_add(const EMat& x, const EMat& y);
EMat e_sub(const EMat& x, const EMat& y);
EMat e_conj_transpose(const EMat& x);
EVal e_det(const EMat& x, const Rational& tau);
EMat e_inverse(const EMat& x, const Rational& tau);
EMat e_block_diag(const EMat& x, const EMat& y);
// Characteristic polynomial; throws unless its coefficients lie in F.
Poly e_char_poly(const EMat& x, const Rational& tau);

// <u, v> = conj(u)^t H v.
class HermitianSpace {
 public:
  HermitianSpace(EMat gram, const LocalFieldSpec& spec);
  // anti-diagonal ones
  static HermitianSpace split(std::size_t n, const LocalFieldSpec& spec);
  // diag(1, ..., 1, c) with c chosen so the class bit is 1
  static HermitianSpace nonsplit(std::size_t n, const LocalFieldSpec& spec);
  static HermitianSpace of_class(std::size_t n, int bit, const LocalFieldSpec& spec);

  std::size_t dim() const { return h_.n; }
  const EMat& gram() const { return h_; }
  const LocalFieldSpec& spec() const { return spec_; }
  Rational det() const;  // lies in F
  // 0 for the split class, 1 otherwise: chi((-1)^{n(n-1)/2} det H)
  int class_bit() const;
  EVal form(const EVec& u, const EVec& v) const;

 private:
  EMat h_;
  LocalFieldSpec spec_;
};

// delta in the twisted Lie algebra of W: conj(delta)^t H = H delta.
class UnitaryLieElement {
 public:
  UnitaryLieElement(HermitianSpace w, EMat delta);
  const HermitianSpace& space() const { return w_; }
  const EMat& matrix() const { return d_; }
  std::size_t dim() const { return d_.n; }
  Poly char_poly() const;

 private:
  HermitianSpace w_;
  EMat d_;
};

bool is_twisted(const HermitianSpace& w, const EMat& delta);

struct GLTriple {
  QMat gamma;
  std::vector<Rational> v;
  std::vector<Rational> vstar;
  std::size_t dim() const { return gamma.rows(); }
};

// a_i: coefficient of t^i in det(t - x), i < n; b_i: <v*, x^i v> or <w, x^i w>.
struct InvariantVector {
  std::vector<Rational> a, b;
  bool operator==(const InvariantVector& o) const { return a == o.a && b == o.b; }
};

InvariantVector invariants(const GLTriple& d);
InvariantVector invariants(const UnitaryLieElement& x, const EVec& w);

// moments b_0 .. b_{count-1}
std::vector<Rational> moments(const GLTriple& d, std::size_t count);
std::vector<Rational> moments(const UnitaryLieElement& x, const EVec& w, std::size_t count);
// Delta = det(b_{i+j})_{i,j < n}
Rational delta_value(const GLTriple& d);
Rational delta_value(const UnitaryLieElement& x, const EVec& w);
inline bool is_rss(const GLTriple& d) { return delta_value(d) != 0; }

// chi(det[v | gamma v | ... | gamma^{n-1} v]); throws on a zero wedge.
int omega(const GLTriple& d, const LocalFieldSpec& spec);

bool match_predicate(const GLTriple& d, const UnitaryLieElement& x, const EVec& w);

struct UnitaryOrbit {
  UnitaryLieElement delta;
  EVec w;
  int class_bit;
};
// delta = companion matrix, H = (b_{i+j}), w = e_1.
UnitaryOrbit construct_unitary_match(const GLTriple& d, const LocalFieldSpec& spec);
// The converse direction: gamma = companion, v = e_1, v* = (b_0, ..., b_{n-1}).
GLTriple construct_gl_match(const UnitaryLieElement& x, const EVec& w);

// D = Res(p1, p2) = prod (x1 - x2) over the roots.
Rational d_delta(const Poly& p1, const Poly& p2);
// chi(D)|D|_F, times kappa_sign in the second case.
Rational endoscopic_factor(const Rational& d, const LocalFieldSpec& spec, int kappa_sign = 1);

UnitaryLieElement nice_matching_embed(const UnitaryLieElement& d1, const UnitaryLieElement& d2);

// Some w with Delta(x, w) != 0 (small integral vectors tried in order).
std::optional<EVec> cyclic_vector(const UnitaryLieElement& x);

// Block data for the transfer-factor identity omega(gamma) = chi(D) omega(gamma_1) omega(gamma_2).
GLTriple block_triple(const GLTriple& d1, const GLTriple& d2);

}  // namespace orbint
