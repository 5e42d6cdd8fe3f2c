#pragma once
// Factorization of rational polynomials into irreducibles over Q, by the
// classical route: squarefree split, modular distinct/equal-degree
// factorization at a good prime, Hensel lifting past a Landau-Mignotte
// bound, then factor recombination. Each emitted factor carries the
// evidence for its irreducibility.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "common.hpp"
#include "poly.hpp"

namespace qcv::fact {

struct Certificate {
  enum class Kind {
    DegreeOne,               // linear, irreducible by definition
    IrreducibleModP,         // stays irreducible modulo the named prime
    RecombinationExhausted,  // no proper subset of modular factors divides
  };
  Kind kind = Kind::DegreeOne;
  std::uint64_t prime = 0;  // witness prime where applicable
};

struct IrreducibleFactor {
  poly::ZPoly f;  // primitive, positive leading coefficient
  unsigned multiplicity = 1;
  Certificate cert;
};

// input = scale * prod factors[i].f ^ factors[i].multiplicity, with the
// factors pairwise distinct and sorted by (degree, coefficients).
struct Factorization {
  mpq_class scale;
  std::vector<IrreducibleFactor> factors;
};

Factorization factor(const poly::QPoly& f);

// degrees of the irreducible factors, repeated per multiplicity, ascending
std::vector<unsigned> irreducible_degrees(const Factorization& fac);

}  // namespace qcv::fact
