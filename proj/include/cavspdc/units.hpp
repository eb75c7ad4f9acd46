#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <numbers>

namespace cavspdc {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kZeroCelsius = 273.15;  // K

/// Thin strongly typed wrapper around a double carrying an SI unit tag.
/// Only dimension-preserving arithmetic is provided; conversions between
/// dimensions are explicit free functions below.
template <class Tag>
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr explicit Quantity(double si) : value_(si) {}

  [[nodiscard]] constexpr double si() const { return value_; }

  constexpr Quantity operator+(Quantity o) const { return Quantity(value_ + o.value_); }
  constexpr Quantity operator-(Quantity o) const { return Quantity(value_ - o.value_); }
  constexpr Quantity operator-() const { return Quantity(-value_); }
  constexpr Quantity operator*(double s) const { return Quantity(value_ * s); }
  constexpr Quantity operator/(double s) const { return Quantity(value_ / s); }
  constexpr double operator/(Quantity o) const { return value_ / o.value_; }
  constexpr Quantity& operator+=(Quantity o) {
    value_ += o.value_;
    return *this;
  }

  constexpr auto operator<=>(const Quantity&) const = default;

 private:
  double value_ = 0.0;
};

template <class Tag>
constexpr Quantity<Tag> operator*(double s, Quantity<Tag> q) {
  return q * s;
}

struct LengthTag {};
struct AngularFrequencyTag {};
struct FrequencyTag {};
struct TemperatureTag {};

using Length = Quantity<LengthTag>;                      // m
using AngularFrequency = Quantity<AngularFrequencyTag>;  // rad/s
using Frequency = Quantity<FrequencyTag>;                // Hz
using Temperature = Quantity<TemperatureTag>;            // K

constexpr Length metres(double v) { return Length(v); }
constexpr Length millimetres(double v) { return Length(v * 1e-3); }
constexpr Length micrometres(double v) { return Length(v * 1e-6); }
constexpr Length nanometres(double v) { return Length(v * 1e-9); }
constexpr Temperature kelvin(double v) { return Temperature(v); }
constexpr Temperature celsius(double v) { return Temperature(v + kZeroCelsius); }
constexpr Frequency hertz(double v) { return Frequency(v); }
constexpr AngularFrequency rad_per_s(double v) { return AngularFrequency(v); }

constexpr AngularFrequency to_angular(Frequency f) { return AngularFrequency(kTwoPi * f.si()); }
constexpr Frequency to_hertz(AngularFrequency w) { return Frequency(w.si() / kTwoPi); }

/// Vacuum wavelength <-> angular frequency.
constexpr AngularFrequency angular_from_wavelength(Length lambda) {
  return AngularFrequency(kTwoPi * kSpeedOfLight / lambda.si());
}
constexpr Length wavelength_from_angular(AngularFrequency w) {
  return Length(kTwoPi * kSpeedOfLight / w.si());
}

constexpr double to_celsius(Temperature t) { return t.si() - kZeroCelsius; }

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_infinite(Frequency f) { return std::isinf(f.si()); }
inline Frequency infinite_frequency() { return Frequency(kInfinity); }

}  // namespace cavspdc
