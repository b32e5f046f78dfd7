#pragma once

#include <vector>

#include "orbint/etale.hpp"
#include "orbint/spaces.hpp"

namespace orbint {

// Element of prod_{S1} Z/2, indexed by position in S1 of the canonical algebra.
using H1Class = std::vector<int>;

H1Class h1_add(const H1Class& x, const H1Class& y);
int h1_weight(const H1Class& x);

// The algebra F[delta] in canonical factor order, and the image of delta.
std::pair<EtaleAlgebra, AlgElement> canonical_algebra(const Poly& char_poly, const LocalFieldSpec& spec);

// The form on W = E[delta] w is Tr_{E[delta]/E}(c conj(x) y) for a unique
// c in F[delta]^x; c is recovered from the moments <w, delta^k w>.
AlgElement form_element(const UnitaryLieElement& x, const EVec& w);
AlgElement form_element(const GLTriple& d, const LocalFieldSpec& spec);

// Class of E_i W over F_i for i in S1 (split -> 0).
H1Class rho(const UnitaryLieElement& x);
// inv(d1, d2) = rho(d1) - rho(d2); throws unless the characteristic polynomials agree.
H1Class inv(const UnitaryLieElement& d1, const UnitaryLieElement& d2);

// <Lambda, x> = (-1)^{sum_{i not in Lambda} x_i}; lambda indexed like x.
int pairing(const std::vector<bool>& lambda, const H1Class& x);
// kappa(x) = (-1)^{sum_{i in support} x_i}
int kappa(const std::vector<bool>& support, const H1Class& x);

struct DeltaX {
  H1Class bits;     // norm class of x
  AlgElement x;
  UnitaryOrbit orbit;  // matches (gamma, v, v* x)
};

// One entry per norm class of F[gamma]^x, x = norm_class_rep(bits).
std::vector<DeltaX> delta_x_family(const GLTriple& d, const LocalFieldSpec& spec);

// v* x: the row vector v* composed with multiplication by x in F[gamma].
std::vector<Rational> twist_vstar(const GLTriple& d, const EtaleAlgebra& a, const AlgElement& x);

}  // namespace orbint
