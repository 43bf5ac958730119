#pragma once

#include "dftstat/chisq.hpp"
#include "dftstat/errors.hpp"
#include "dftstat/experiments.hpp"
#include "dftstat/fft.hpp"
#include "dftstat/quadrature.hpp"
#include "dftstat/rng.hpp"
#include "dftstat/simulate.hpp"
#include "dftstat/spectral.hpp"
#include "dftstat/stattest.hpp"
