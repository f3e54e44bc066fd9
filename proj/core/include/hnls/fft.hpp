#pragma once

#include <span>

#include "hnls/field.hpp"

namespace hnls::fft {

/// In-place unnormalized DFT, X_k = sum_j x_j exp(-2 pi i jk/n), natural order.
void forward(std::span<Complex> data);
/// In-place unnormalized inverse DFT, x_j = sum_k X_k exp(+2 pi i jk/n).
void backward(std::span<Complex> data);

}  // namespace hnls::fft
