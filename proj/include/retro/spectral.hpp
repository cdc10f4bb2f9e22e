#pragma once

#include <functional>

#include "retro/fields.hpp"

namespace retro {

/// True when both end samples are at most rel_tol times the peak magnitude.
bool decays_at_ends(const SampledField& f, double rel_tol);

/// Applies a real, even Fourier multiplier m(|lambda|) with the FFT. Decaying
/// input is zero-padded to twice its length; otherwise the periodic extension
/// is used and a warning recorded. Modes whose content is below 1e-15 of the
/// peak are dropped when the multiplier cannot be evaluated there.
FieldResult apply_fourier_multiplier(const SampledField& f, const std::function<double(double)>& multiplier,
                                     double decay_tol = 1e-10);

}  // namespace retro
