#include "blindlink/antenna.hpp"

#include <cmath>

#include "blindlink/quadrature.hpp"

namespace blindlink {

namespace {

void require_frequency(double f_hz) {
    if (!(f_hz > 0.0)) throw OutOfRange("frequency must be positive");
}

}  // namespace

// --- Phased array ------------------------------------------------------------

PhasedArrayAntenna::PhasedArrayAntenna(unsigned elements, double spacing_m)
    : elements_(elements), spacing_m_(spacing_m) {
    if (elements < 2) throw BadGeometry("phased array needs at least 2 elements");
    if (!(spacing_m > 0.0)) throw BadGeometry("element spacing must be positive");
}

double PhasedArrayAntenna::gain(double f_hz, double theta_rad) const {
    require_frequency(f_hz);
    const double half_psi =
        M_PI * f_hz / speed_of_light * spacing_m_ * std::sin(theta_rad);
    const double denom = std::sin(half_psi);
    if (std::abs(denom) < 1e-12) return 1.0;  // main lobe and grating lobes
    const double af = std::sin(elements_ * half_psi) / (elements_ * denom);
    return af * af;
}

double PhasedArrayAntenna::null_angle(double f_hz, unsigned m) const {
    require_frequency(f_hz);
    if (m == 0 || m % elements_ == 0) throw OutOfRange("m must be positive and not a lobe index");
    const double s = m * wavelength(f_hz) / (elements_ * spacing_m_);
    if (s > 1.0) throw OutOfRange("array-factor null lies beyond 90 degrees");
    return std::asin(s);
}

// --- Parabolic dish -----------------------------------------------------------

ParabolicDishAntenna::ParabolicDishAntenna(double diameter_m, double focal_length_m)
    : diameter_m_(diameter_m), focal_length_m_(focal_length_m) {
    if (!(diameter_m > 0.0)) throw BadGeometry("dish diameter must be positive");
    if (!(focal_length_m > 0.0)) throw BadGeometry("dish focal length must be positive");
}

double ParabolicDishAntenna::gain(double f_hz, double theta_rad) const {
    require_frequency(f_hz);
    const double u =
        std::abs(M_PI * diameter_m_ * f_hz / speed_of_light * std::sin(theta_rad));
    if (u < 1e-6) {
        const double t = 1.0 - u * u / 8.0;  // series for 2 J1(u) / u
        return t * t;
    }
    const double amp = 2.0 * std::cyl_bessel_j(1, u) / u;
    return amp * amp;
}

double ParabolicDishAntenna::boresight_gain_dbi(double f_hz) const {
    require_frequency(f_hz);
    const double g = M_PI * diameter_m_ / wavelength(f_hz);
    return 10.0 * std::log10(g * g);
}

// --- Leaky wave ---------------------------------------------------------------

LeakyWaveAntenna::LeakyWaveAntenna(double plate_separation_m, double attenuation_per_m)
    : plate_separation_m_(plate_separation_m), attenuation_per_m_(attenuation_per_m) {
    if (!(plate_separation_m > 0.0)) throw BadGeometry("plate separation must be positive");
    if (!(attenuation_per_m > 0.0)) throw BadGeometry("attenuation constant must be positive");
}

double LeakyWaveAntenna::gain(double f_hz, double theta_rad) const {
    require_frequency(f_hz);
    const double fc = cutoff_hz();
    if (f_hz <= fc) {
        throw BelowCutoff("frequency " + std::to_string(f_hz) +
                          " Hz is at or below the waveguide cutoff " + std::to_string(fc) + " Hz");
    }
    const double k = 2.0 * M_PI * f_hz / speed_of_light;
    const double ratio = fc / f_hz;
    const double beta = k * std::sqrt(1.0 - ratio * ratio);
    const double mismatch = k * std::cos(theta_rad) - beta;
    const double a2 = attenuation_per_m_ * attenuation_per_m_;
    // Peak value 1 is attained at cos(theta) = beta / k, which lies in [0, 1].
    return a2 / (mismatch * mismatch + a2);
}

double LeakyWaveAntenna::peak_angle(double f_hz) const {
    require_frequency(f_hz);
    const double fc = cutoff_hz();
    if (f_hz <= fc) {
        throw BelowCutoff("no radiated beam at or below the cutoff frequency");
    }
    return std::asin(fc / f_hz);
}

// --- Diagonal horn --------------------------------------------------------------

DiagonalHornAntenna::DiagonalHornAntenna(double horn_length_m, double aperture_m)
    : horn_length_m_(horn_length_m), aperture_m_(aperture_m) {
    if (!(horn_length_m > 0.0)) throw BadGeometry("horn length must be positive");
    if (!(aperture_m > 0.0)) throw BadGeometry("horn aperture must be positive");
}

double DiagonalHornAntenna::gain(double f_hz, double theta_rad) const {
    require_frequency(f_hz);
    const double arg = M_PI * waist_m() * f_hz / speed_of_light * std::sin(theta_rad);
    return std::exp(-2.0 * arg * arg);
}

// --- Horn with beam block -------------------------------------------------------

HornWithBlockAntenna::HornWithBlockAntenna(double waist_m, double block_width_m)
    : waist_m_(waist_m), block_width_m_(block_width_m) {
    if (!(waist_m > 0.0)) throw BadGeometry("beam waist must be positive");
    if (!(block_width_m > 0.0)) throw BadGeometry("block width must be positive");
}

double HornWithBlockAntenna::field_amplitude(double f_hz, double theta_rad) const {
    require_frequency(f_hz);
    const double half_block = 0.5 * block_width_m_;
    const double x_max = 6.0 * waist_m_;
    if (half_block >= x_max) return 0.0;  // fully blocked aperture
    const double ks = 2.0 * M_PI * f_hz / speed_of_light * std::sin(theta_rad);

    // By symmetry E = 2 int_{a/2}^{6 w0} exp(-x^2/w0^2) cos(ks x) dx. Composite
    // Gauss-Legendre with panels short enough that the cosine advances only a
    // few radians per panel even at 1 THz and 90 degrees.
    const auto integrand = [&](double x) {
        const double t = x / waist_m_;
        return std::exp(-t * t) * std::cos(ks * x);
    };
    const std::size_t panels = 48;
    const double width = (x_max - half_block) / panels;
    double acc = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = half_block + i * width;
        acc += integrate(integrand, a, a + width, 16);
    }
    return 2.0 * acc;
}

double HornWithBlockAntenna::gain(double f_hz, double theta_rad) const {
    // E(0) bounds |E(theta)| because the aperture distribution is nonnegative,
    // so boresight is the global maximum and the natural normalization.
    const double e0 = field_amplitude(f_hz, 0.0);
    if (!(e0 > 0.0)) throw BadGeometry("blocked aperture radiates no power");
    const double e = field_amplitude(f_hz, theta_rad) / e0;
    return e * e;
}

std::optional<double> HornWithBlockAntenna::first_field_zero(double f_hz, double theta_lo_rad,
                                                             double theta_hi_rad) const {
    const int scan_steps = 2000;
    const double step = (theta_hi_rad - theta_lo_rad) / scan_steps;
    if (!(step > 0.0)) throw OutOfRange("empty search interval");
    double lo = theta_lo_rad;
    double f_lo = field_amplitude(f_hz, lo);
    for (int i = 1; i <= scan_steps; ++i) {
        const double hi = theta_lo_rad + i * step;
        const double f_hi = field_amplitude(f_hz, hi);
        if (f_lo == 0.0) return lo;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            double a = lo;
            double b = hi;
            double fa = f_lo;
            for (int iter = 0; iter < 80; ++iter) {
                const double mid = 0.5 * (a + b);
                const double fm = field_amplitude(f_hz, mid);
                if (fm == 0.0) return mid;
                if ((fa < 0.0) != (fm < 0.0)) {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            return 0.5 * (a + b);
        }
        lo = hi;
        f_lo = f_hi;
    }
    return std::nullopt;
}

namespace {

class IsotropicAntenna final : public AntennaPattern {
public:
    double gain(double, double) const override { return 1.0; }
    std::string name() const override { return "isotropic"; }
};

}  // namespace

std::shared_ptr<const AntennaPattern> make_isotropic_antenna() {
    return std::make_shared<IsotropicAntenna>();
}

}  // namespace blindlink
