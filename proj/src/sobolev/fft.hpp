#pragma once

#include <complex>
#include <vector>

namespace hb::sob::detail {

/// In-place unnormalized DFT of `howmany` contiguous blocks of shape `dims`.
/// sign = -1 forward, +1 backward. Plans are cached and shared across threads.
void fft(std::complex<double>* data, const std::vector<int>& dims, int howmany, int sign);

}  // namespace hb::sob::detail
