#pragma once

namespace cone {

/// Lower branch of the Lambert W function: the solution w <= -1 of
/// w * exp(w) = z for z in [-1/e, 0). Residual |w e^w - z| stays within
/// 1e-12 * max(1, |z|).
double lambert_w_minus1(double z);

/// The factor -W_{-1}(-exp(-zeta - 1)) for zeta >= 0, computed as the
/// root u >= 1 of u - ln(u) = zeta + 1. The exponential form underflows
/// for zeta beyond ~700; the root form is exact at any magnitude.
double neg_w_factor(double zeta);

}  // namespace cone
