// Umbrella header for the ST-FMM steganography toolkit.
#pragma once

#include "stfmm/charset.hpp"
#include "stfmm/errors.hpp"
#include "stfmm/fmm.hpp"
#include "stfmm/gray_image.hpp"
#include "stfmm/image_io.hpp"
#include "stfmm/metrics.hpp"
#include "stfmm/stego.hpp"
