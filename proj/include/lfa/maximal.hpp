#pragma once

#include "lfa/function.hpp"
#include "lfa/weights.hpp"

namespace lfa {

/// Realize f on the window P^{-m}: zero-padded for on_D data,
/// Lambda-periodically tiled for periodic data. Identity for m = 0.
SampledFunction extend_to_window(const SampledFunction& f, int m);

/// Hardy-Littlewood maximal function over all balls of levels
/// [f.win_lo(), f.level()] inside the window, one bottom-up tree pass.
/// Exact rational arithmetic when f is exact.
SampledFunction maximal_windowed(const SampledFunction& f);

/// Mf for f on D (or periodic), window P^{-m} included; m defaults to 3.
/// Beyond the window, ball averages of D-supported data only decay.
SampledFunction maximal(const SampledFunction& f, int m = 3);

/// Sharp maximal f#(x) = sup_B avg_B |f - f_B| over the same ball family.
SampledFunction sharp_maximal(const SampledFunction& f, int m = 3);

/// M_s f = (M |f|^s)^{1/s}, s > 1. Always binary64 (fractional powers).
SampledFunction m_s(const SampledFunction& f, double s, int m = 3);

} // namespace lfa
