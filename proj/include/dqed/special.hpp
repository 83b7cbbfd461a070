#pragma once

// Sine and cosine integrals Si(x), Ci(x) and the auxiliary functions
//   f(x) = int_0^inf e^{-xt}/(1+t^2) dt,
//   g(x) = int_0^inf t e^{-xt}/(1+t^2) dt,
// related by Si = pi/2 - f cos - g sin, Ci = f sin - g cos.
// Power series below x = 4, auxiliary-function route above.

namespace dqed::special {

struct SiCi {
    double si;
    double ci;
};

// x >= 0. Ci(0) returns -infinity.
SiCi sici(double x);

// auxiliary functions, x > 0
double aux_f(double x);
double aux_g(double x);

}  // namespace dqed::special
