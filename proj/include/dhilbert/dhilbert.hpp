#pragma once

#include "dhilbert/box.hpp"
#include "dhilbert/errors.hpp"
#include "dhilbert/fft.hpp"
#include "dhilbert/kernels.hpp"
#include "dhilbert/lattice.hpp"
#include "dhilbert/operators.hpp"
#include "dhilbert/quadrature.hpp"
#include "dhilbert/spectral.hpp"
#include "dhilbert/verify.hpp"
