#pragma once

#include "bhtv/grid.hpp"

namespace bhtv {

struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

/// 10 log10(L^2 / MSE) with L = 1. Returns +infinity for identical images.
double psnr(const Image& test, const Image& reference);

/// Mean structural similarity over every position where the Gaussian window
/// fits entirely inside the image. Images smaller than the window use the
/// largest odd window that fits.
double ssim(const Image& test, const Image& reference, const SsimParams& params = {});

}  // namespace bhtv
