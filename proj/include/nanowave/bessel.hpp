#pragma once

namespace nanowave {

// Bessel function of the first kind, integer order. Downward (Miller)
// recurrence normalized with J_0 + 2*sum_k J_{2k} = 1, stable for the
// order/argument ranges the pattern series needs (|n| to a few hundred,
// |x| to ~1e3). Negative order and argument map through
// J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
double bessel_j(int n, double x);

}  // namespace nanowave
