#pragma once

namespace mescale {

/// Specific heat of water, J/(kg K).
inline constexpr double kWaterHeatCapacity = 4186.0;
/// Water density, kg/m^3.
inline constexpr double kWaterDensity = 1000.0;
inline constexpr double kCelsiusToKelvin = 273.15;

}  // namespace mescale
