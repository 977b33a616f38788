#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace orbital {

using Complex = std::complex<double>;

/// A point of the open unit disk. Construction outside the disk throws
/// Error(OutsideDisk).
class DiskPoint {
public:
    DiskPoint() = default;
    explicit DiskPoint(Complex value);
    DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

    Complex value() const noexcept { return value_; }
    double abs() const noexcept { return std::abs(value_); }

    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

private:
    Complex value_{0.0, 0.0};
};

class MobiusMap;

namespace detail {
// Sign-canonicalizes (a, b) without rescaling; caller guarantees the
// determinant is already 1 up to rounding.
MobiusMap canonical_unchecked(Complex a, Complex b) noexcept;
} // namespace detail

enum class ElementClass { Identity, Elliptic, Parabolic, Hyperbolic };

std::string_view to_string(ElementClass c) noexcept;

inline constexpr double kClassifyTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-9;

/// Disk automorphism z -> (a z + b) / (conj(b) z + conj(a)) stored as the
/// unit-determinant representative (|a|^2 - |b|^2 = 1) with canonical sign:
/// Re(a) > 0, or Re(a) == 0 and Im(a) > 0.
class MobiusMap {
public:
    /// Identity.
    MobiusMap() = default;

    Complex a() const noexcept { return a_; }
    Complex b() const noexcept { return b_; }

    /// |g(0)| computed from the matrix; exact in form but rounds to 1 for
    /// very deep elements, which is why the quantities below exist.
    double base_radius() const noexcept;
    /// 1 - |g(0)| without cancellation: 1 / (|a| (|a| + |b|)).
    double boundary_gap() const noexcept;
    /// d(0, g(0)) = 2 log(|a| + |b|).
    double base_distance() const noexcept;
    /// |g'(0)| = 1 / |a|^2.
    double derivative_at_origin() const noexcept;

    friend bool operator==(const MobiusMap&, const MobiusMap&) = default;

private:
    friend MobiusMap make_mobius(Complex a, Complex b);
    friend MobiusMap detail::canonical_unchecked(Complex a, Complex b) noexcept;
    MobiusMap(Complex a, Complex b) noexcept : a_(a), b_(b) {}

    Complex a_{1.0, 0.0};
    Complex b_{0.0, 0.0};
};

/// Rescales (a, b) to unit determinant and canonical sign. Throws
/// Error(DegenerateMatrix) when |a|^2 - |b|^2 <= 1e-14.
MobiusMap make_mobius(Complex a, Complex b);

MobiusMap identity() noexcept;

/// Image of z; valid for any z with conj(b) z + conj(a) != 0 (the closed
/// disk in particular). Used for boundary points and deep orbits where the
/// result may round onto the unit circle.
Complex apply(const MobiusMap& g, Complex z) noexcept;
DiskPoint apply(const MobiusMap& g, const DiskPoint& z);

/// g ∘ h.
MobiusMap compose(const MobiusMap& g, const MobiusMap& h) noexcept;
MobiusMap inverse(const MobiusMap& g) noexcept;

inline MobiusMap operator*(const MobiusMap& g, const MobiusMap& h) noexcept { return compose(g, h); }

/// |g'(z)| = 1 / |conj(b) z + conj(a)|^2.
double derivative_modulus(const MobiusMap& g, Complex z) noexcept;
inline double derivative_modulus(const MobiusMap& g, const DiskPoint& z) noexcept {
    return derivative_modulus(g, z.value());
}

/// Curvature -1 distance: d(z, w) = log((1 + t) / (1 - t)), t = |z - w| / |1 - conj(w) z|.
double hyperbolic_distance(const DiskPoint& z, const DiskPoint& w) noexcept;
/// d(0, z) for |z| < 1.
double distance_from_origin(double radius) noexcept;
/// Inverse of distance_from_origin: the Euclidean radius at hyperbolic distance d.
double radius_at_distance(double d) noexcept;

ElementClass classify(const MobiusMap& g) noexcept;
bool is_identity(const MobiusMap& g, double tol = kIdentityTolerance) noexcept;

/// Hyperbolic: both boundary fixed points; parabolic: the boundary fixed
/// point; elliptic: the interior fixed point. Throws
/// Error(IdentityHasAllFixedPoints) for the identity.
std::vector<Complex> fixed_points(const MobiusMap& g);

/// z -> ((α+1) z + (α-1)) / ((α-1) z + (α+1)), translation length log α
/// along (-1, 1), attracting fixed point 1. Requires α > 1.
MobiusMap preset_hyperbolic(double alpha);
/// Conjugate of x -> x + τ on the upper half-plane; fixes the boundary point 1.
/// Requires τ != 0.
MobiusMap preset_parabolic(double tau);
/// Rotation by θ about the origin.
MobiusMap preset_rotation(double theta) noexcept;

/// Distortion constant K_r = 4 (1 + r) / ((1 - r)(1 - r^2)) bounding
/// |g'(z)| / |g'(0)| on the closed ball |z| <= r, for every automorphism g.
double distortion_constant(double r);

/// Max-entry distance between canonical representatives, also checking the
/// opposite sign so maps with Re(a) ~ 0 compare correctly.
double entry_distance(const MobiusMap& g, const MobiusMap& h) noexcept;

} // namespace orbital
