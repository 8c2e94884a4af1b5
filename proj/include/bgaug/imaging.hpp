// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "bgaug/raster.hpp"

namespace bgaug {

/// luma = round(0.299 R + 0.587 G + 0.114 B)
Raster to_grayscale(const RgbImage& rgb);

/// Bilinear resampling with half-pixel-centered sample coordinates.
/// Identical dimensions return a bit-exact copy.
Raster resize_bilinear(const Raster& img, int new_w, int new_h);

/// Bit-exact sub-rectangle; throws ErrorKind::Bounds if it leaves the image.
Raster crop(const Raster& img, int x0, int y0, int w, int h);
FloatPlane crop(const FloatPlane& img, int x0, int y0, int w, int h);

/// Normalized 1-D Gaussian taps of radius ceil(3 sigma), w(k) ~ exp(-k^2 / (2 sigma^2)).
/// sigma must be > 0.
std::vector<float> gaussian_kernel(double sigma);

/// Separable Gaussian blur with edge-replicated borders. sigma == 0 returns
/// the input unchanged; negative sigma throws ErrorKind::Argument.
FloatPlane gaussian_blur(const FloatPlane& img, double sigma);

FloatPlane to_float(const Raster& img);

/// Round-half-up and clamp to [0,255].
Raster quantize(const FloatPlane& img);

}  // namespace bgaug
