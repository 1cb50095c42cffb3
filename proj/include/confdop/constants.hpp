#pragma once

namespace confdop {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kAstronomicalUnit = 1.495978707e11;  // m

// Reference rates quoted for the Pioneer comparison.
inline constexpr double kHubbleRate = 2.19e-18;      // 1/s
inline constexpr double kPioneerAnomalyRate = -2.80e-18;  // 1/s

// Fractional Doppler accuracy of the Pioneer S-band link.
inline constexpr double kDopplerAccuracy = 1e-12;

inline constexpr double kSingularEpsilon = 1e-12;

}  // namespace confdop
