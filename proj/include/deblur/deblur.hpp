#pragma once

// Umbrella header for the deblurring library: space-invariant blur under
// zero / periodic / reflective / anti-reflective boundary conditions, the
// trigonometric-algebra fast transforms, symmetrized-PSF Tikhonov
// preconditioning, and (preconditioned) Landweber restoration.

#include "deblur/blur.hpp"
#include "deblur/boundary.hpp"
#include "deblur/core.hpp"
#include "deblur/experiment.hpp"
#include "deblur/image.hpp"
#include "deblur/io.hpp"
#include "deblur/preconditioner.hpp"
#include "deblur/psf.hpp"
#include "deblur/solver.hpp"
#include "deblur/spectral.hpp"
#include "deblur/synthetic.hpp"
#include "deblur/transforms.hpp"
