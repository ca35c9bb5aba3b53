#pragma once

#include <gmpxx.h>

#include <string>

namespace hopfforms {

using Int = mpz_class;
using Rat = mpq_class;

// p-adic valuation of a nonzero integer / rational.
long int_valuation(const Int& n, const Int& p);
long rat_valuation(const Rat& x, const Int& p);

std::string rat_str(const Rat& x);

// Scalar plumbing used by the generic matrix code.  GMP's types live in the
// global namespace, so argument-dependent lookup cannot find these; they must
// be declared before the matrix templates (matrix.hpp includes this header).
inline Rat scalar_zero(const Rat&) { return Rat(0); }
inline Rat scalar_one(const Rat&) { return Rat(1); }
inline bool scalar_is_zero(const Rat& x) { return x == 0; }
inline Int scalar_zero(const Int&) { return Int(0); }
inline Int scalar_one(const Int&) { return Int(1); }
inline bool scalar_is_zero(const Int& x) { return x == 0; }

}  // namespace hopfforms
