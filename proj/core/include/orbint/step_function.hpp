#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orbint/cyclotomic.hpp"
#include "orbint/linalg.hpp"
#include "orbint/rational.hpp"

namespace orbint {

// center + prod_j p^{level[j]} Z_p. Centers are kept reduced by modrep so
// equal boxes have equal representations.
struct Box {
  std::vector<Rational> center;
  std::vector<long> level;

  std::size_t dim() const { return center.size(); }
  bool contains(const std::vector<Rational>& x, long p) const;
  long total_level() const;
  void reduce(long p);
  std::string key() const;
};

// Intersection of two boxes; returns false when empty.
bool intersect(const Box& a, const Box& b, long p, Box& out);

// coeff * psi(<phase, x>) * 1_box(x). Phases are reduced modulo the dual of
// the box lattice; a coordinate whose character is constant on the box gets
// phase 0 (the constant is folded into coeff).
struct Term {
  Box box;
  std::vector<Rational> phase;
  CycScalar coeff;
};

// One coordinate of a substitution x_old[j] = offset + scale * x_new[var]
// (var = -1: the coordinate is the constant offset).
struct Subst {
  int var = -1;
  Rational scale = 0;
  Rational offset = 0;
};

// Finite sum of character-weighted box indicators on F^n, F = Q_p.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::size_t dim, long p) : dim_(dim), p_(p) {}

  static StepFunction box(const Box& b, long p, const CycScalar& c = CycScalar(1));
  // 1 on p^k Z_p^n
  static StepFunction lattice(std::size_t dim, long p, long k);

  std::size_t dim() const { return dim_; }
  long p() const { return p_; }
  const std::vector<Term>& terms() const { return terms_; }
  void add_term(Box b, const CycScalar& c);
  void add_term(Box b, std::vector<Rational> phase, const CycScalar& c);

  StepFunction operator+(const StepFunction& o) const;
  StepFunction operator-(const StepFunction& o) const;
  StepFunction scaled(const CycScalar& c) const;
  StepFunction operator*(const StepFunction& o) const;  // pointwise
  StepFunction conj() const;

  CycScalar evaluate(const std::vector<Rational>& x) const;
  CycScalar integrate() const;

  // Merge identical boxes and drop zero coefficients (not a full normal form).
  StepFunction compressed() const;
  bool is_zero() const;
  bool equals(const StepFunction& o) const { return (*this - o).is_zero(); }

  // h(x) = f(M x + b).
  StepFunction pullback(const QMat& m, const std::vector<Rational>& b) const;
  StepFunction translate(const std::vector<Rational>& a) const;  // f(x + a)
  StepFunction reflect() const;                                  // f(-x)

  // h(y) = f(x) with x[j] given by subs[j] in terms of y in F^{new_dim}.
  // Every new variable must occur in some coordinate.
  StepFunction substitute(const std::vector<Subst>& subs, std::size_t new_dim) const;
  // Restrict coordinate j to the value vals[j] for each j with fixed[j].
  StepFunction restrict_coords(const std::vector<bool>& fixed, const std::vector<Rational>& vals) const;
  // Integrate out the listed coordinates.
  StepFunction fiber_integrate(const std::vector<bool>& drop) const;
  StepFunction tensor(const StepFunction& o) const;
  // Reorder coordinates: new coordinate i is old coordinate perm[i].
  StepFunction permuted(const std::vector<std::size_t>& perm) const;

  // Partial Fourier transform on the coordinates with mask[j], pairing
  // B(x, y) = x^t G y on those coordinates. G must be monomial (one nonzero
  // entry per row and column). Haar measure gives Z_p volume 1, psi level 0.
  // A box goes to the dual box, so no refinement happens here.
  StepFunction fourier(const std::vector<bool>& mask, const QMat& gram) const;
  StepFunction fourier(const QMat& gram) const;

  // Lower bound on the valuation of coordinate j over the support.
  long support_floor(std::size_t j) const;
  // Finest scale on which coordinate j matters (box level or character conductor).
  long constancy_level(std::size_t j) const;

 private:
  std::size_t dim_ = 0;
  long p_ = 3;
  std::vector<Term> terms_;
};

// Representatives of the cosets of the lattice spanned by the columns of L
// modulo p^r Z_p^n (requires p^r Z_p^n inside that lattice).
std::vector<std::vector<Rational>> lattice_quotient_reps(const QMat& l, long p, long r);

}  // namespace orbint
