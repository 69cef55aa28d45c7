#pragma once

#include <complex>
#include <vector>

namespace cesaro::detail {

// In-place unnormalized DFT. sign = +1 computes Σ x_m e^{+2πimj/M}.
void dft(std::vector<std::complex<double>>& data, int sign);

} // namespace cesaro::detail
