#pragma once

#include <memory>
#include <optional>
#include <string>

#include "blindlink/errors.hpp"

namespace blindlink {

inline constexpr double speed_of_light = 299792458.0;  // m/s, exact

inline double wavelength(double f_hz) { return speed_of_light / f_hz; }

/// H-plane power radiation pattern. gain(f, theta) is normalized so the
/// maximum over theta in [-pi/2, pi/2] at fixed f equals 1. Implementations
/// are pure and safe to evaluate concurrently.
class AntennaPattern {
public:
    virtual ~AntennaPattern() = default;

    /// Normalized power gain at frequency f_hz (Hz) and angle theta_rad
    /// measured from boresight.
    virtual double gain(double f_hz, double theta_rad) const = 0;

    virtual std::string name() const = 0;
};

/// Uniform linear array of isotropic elements, broadside boresight. The
/// pattern is the squared array factor
///   AF = sin(N psi / 2) / (N sin(psi / 2)),  psi = (2 pi f / c) d sin(theta),
/// which peaks at 1 and has nulls at sin(theta) = m lambda / (N d).
class PhasedArrayAntenna : public AntennaPattern {
public:
    PhasedArrayAntenna(unsigned elements, double spacing_m);

    double gain(double f_hz, double theta_rad) const override;
    std::string name() const override { return "phased_array"; }

    unsigned elements() const noexcept { return elements_; }
    double spacing_m() const noexcept { return spacing_m_; }

    /// Angle of the m-th array-factor null (m >= 1); throws OutOfRange when
    /// the null is beyond 90 degrees.
    double null_angle(double f_hz, unsigned m) const;

private:
    unsigned elements_;
    double spacing_m_;
};

/// Circular-aperture dish: Airy pattern [2 J1(u) / u]^2 with
/// u = (pi D f / c) sin(theta). The absolute boresight gain is (pi D / lambda)^2.
class ParabolicDishAntenna : public AntennaPattern {
public:
    ParabolicDishAntenna(double diameter_m, double focal_length_m);

    double gain(double f_hz, double theta_rad) const override;
    std::string name() const override { return "parabolic_dish"; }

    double diameter_m() const noexcept { return diameter_m_; }
    double focal_length_m() const noexcept { return focal_length_m_; }

    /// Absolute boresight gain in dBi for a uniformly illuminated aperture.
    double boresight_gain_dbi(double f_hz) const;

private:
    double diameter_m_;
    double focal_length_m_;  // reported geometry; the far field depends on D only
};

/// Parallel-plate leaky-wave antenna. The fast-wave phase constant
///   beta(f) = (2 pi f / c) sqrt(1 - (f_c / f)^2),  f_c = c / (2 b),
/// steers the beam to sin(theta_peak) = f_c / f; the normalized pattern is the
/// Lorentzian alpha^2 / ((k cos(theta) - beta)^2 + alpha^2).
class LeakyWaveAntenna : public AntennaPattern {
public:
    LeakyWaveAntenna(double plate_separation_m, double attenuation_per_m);

    /// Throws BelowCutoff for f <= f_c.
    double gain(double f_hz, double theta_rad) const override;
    std::string name() const override { return "leaky_wave"; }

    double plate_separation_m() const noexcept { return plate_separation_m_; }
    double attenuation_per_m() const noexcept { return attenuation_per_m_; }
    double cutoff_hz() const noexcept { return speed_of_light / (2.0 * plate_separation_m_); }

    double peak_angle(double f_hz) const;  // asin(f_c / f), throws BelowCutoff

private:
    double plate_separation_m_;
    double attenuation_per_m_;
};

/// Diagonal horn modeled as a Gaussian aperture with waist w0 = 0.43 a:
/// gain = exp(-2 (pi w0 f sin(theta) / c)^2). Smooth and monotone off
/// boresight, so it has no nulls anywhere.
class DiagonalHornAntenna : public AntennaPattern {
public:
    DiagonalHornAntenna(double horn_length_m, double aperture_m);

    double gain(double f_hz, double theta_rad) const override;
    std::string name() const override { return "diagonal_horn"; }

    double horn_length_m() const noexcept { return horn_length_m_; }
    double aperture_m() const noexcept { return aperture_m_; }
    double waist_m() const noexcept { return 0.43 * aperture_m_; }

private:
    double horn_length_m_;  // reported geometry; the far field depends on the aperture only
    double aperture_m_;
};

/// Gaussian beam with an opaque strip of width a_block centered on the axis.
/// The far field is the 1-D Fraunhofer integral of the blocked aperture,
///   E(theta) = int exp(-x^2 / w0^2) 1[|x| > a_block / 2] e^(-i k x sin(theta)) dx
/// over [-6 w0, 6 w0]; E is real by symmetry and maximal at theta = 0, so the
/// normalized gain is (E(theta) / E(0))^2. The blockage carves deep frequency-
/// dependent minima into an otherwise null-free beam.
class HornWithBlockAntenna : public AntennaPattern {
public:
    HornWithBlockAntenna(double waist_m, double block_width_m);

    double gain(double f_hz, double theta_rad) const override;
    std::string name() const override { return "horn_with_block"; }

    double waist_m() const noexcept { return waist_m_; }
    double block_width_m() const noexcept { return block_width_m_; }

    /// Signed aperture field integral (unnormalized). Zeros of this function
    /// are the pattern minima.
    double field_amplitude(double f_hz, double theta_rad) const;

    /// First sign change of field_amplitude in (theta_lo, theta_hi), refined
    /// by bisection; nullopt when the field does not change sign there.
    std::optional<double> first_field_zero(double f_hz, double theta_lo_rad,
                                           double theta_hi_rad) const;

private:
    double waist_m_;
    double block_width_m_;
};

std::shared_ptr<const AntennaPattern> make_isotropic_antenna();  // gain == 1, for calibration

}  // namespace blindlink
