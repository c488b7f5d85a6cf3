#pragma once

#include <complex>

namespace relax {

// In-place unnormalized complex DFT on a 1-d or 2-d periodic lattice
// (n nodes per axis, row-major). sign = -1 forward, +1 backward.
// Plans are cached per (dim, n, sign); plan creation is serialized, execution
// uses the new-array interface so concurrent calls on distinct buffers are safe.
void dft(int dim, int n, std::complex<double>* data, int sign);

}  // namespace relax
