#pragma once

#include "adelharm/funcspace.hpp"

namespace adelharm {

// The four transforms; at this level the plain and uniform versions agree
// and only the normalization and the sign of the exponent differ.
enum class Transform { F, Fprime, Ftilde, Ftildeprime };

// F(f)(alpha)  = (1/|A|) sum_a f(a) e^(-2 pi i alpha(a))
// F'(f)(alpha) = sum_a f(a) e^(+2 pi i alpha(a))
FnOnGroup fourier_F(const FnOnGroup& f);
FnOnGroup fourier_Fprime(const FnOnGroup& f);
FnOnGroup fourier0(const FnOnGroup& f, Transform which);

}  // namespace adelharm
