// Umbrella header.
#ifndef FEJER_FEJER_HPP
#define FEJER_FEJER_HPP

#include "fejer/bounds.hpp"
#include "fejer/error.hpp"
#include "fejer/experiments.hpp"
#include "fejer/fejer_kernel.hpp"
#include "fejer/fft.hpp"
#include "fejer/lacunary.hpp"
#include "fejer/parallel.hpp"
#include "fejer/signal_io.hpp"
#include "fejer/spectral.hpp"

#endif  // FEJER_FEJER_HPP
