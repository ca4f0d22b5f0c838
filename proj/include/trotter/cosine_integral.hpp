#pragma once

namespace trotter {

// Ci(x) = gamma + log(x) + integral_0^x (cos(u) - 1)/u du for x > 0.
// Power series below the crossover, Lentz continued fraction for the
// exponential integral above it; absolute accuracy better than 1e-12 on
// (0, 50] and degrading only mildly beyond. Rejects x <= 0.
double cosine_integral(double x);

}  // namespace trotter
