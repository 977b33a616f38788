#include "orbital/mobius.hpp"

#include "orbital/error.hpp"

#include <cmath>
#include <numbers>

namespace orbital {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorKind::OutsideDisk: return "OutsideDisk";
    case ErrorKind::IdentityHasAllFixedPoints: return "IdentityHasAllFixedPoints";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::InvalidBudget: return "InvalidBudget";
    case ErrorKind::IncompleteEnumeration: return "IncompleteEnumeration";
    case ErrorKind::EmptyCloud: return "EmptyCloud";
    case ErrorKind::InsufficientScales: return "InsufficientScales";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ExcessiveSampleSize: return "ExcessiveSampleSize";
    case ErrorKind::UnboundedSeedRequiresTruncation: return "UnboundedSeedRequiresTruncation";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

std::string_view to_string(ElementClass c) noexcept {
    switch (c) {
    case ElementClass::Identity: return "identity";
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::Parabolic: return "parabolic";
    case ElementClass::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

DiskPoint::DiskPoint(Complex value) : value_(value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) || std::abs(value) >= 1.0)
        throw Error(ErrorKind::OutsideDisk, "point must satisfy |z| < 1");
}

namespace {

// |a|^2 - |b|^2 with error-free products and compensated summation; the plain
// expression cancels catastrophically once |a| is large.
double accurate_determinant(Complex a, Complex b) noexcept {
    const double xs[4] = {a.real(), a.imag(), b.real(), b.imag()};
    const double signs[4] = {1.0, 1.0, -1.0, -1.0};
    double sum = 0.0;
    double comp = 0.0;
    auto add = [&](double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };
    for (int i = 0; i < 4; ++i) {
        const double p = xs[i] * xs[i];
        const double e = std::fma(xs[i], xs[i], -p);
        add(signs[i] * p);
        add(signs[i] * e);
    }
    return sum + comp;
}

bool needs_flip(Complex a) noexcept {
    return a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0);
}

} // namespace

MobiusMap detail::canonical_unchecked(Complex a, Complex b) noexcept {
    if (needs_flip(a)) {
        a = -a;
        b = -b;
    }
    return MobiusMap(a, b);
}

MobiusMap make_mobius(Complex a, Complex b) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
        !std::isfinite(b.imag()))
        throw Error(ErrorKind::DegenerateMatrix, "matrix entries must be finite");
    const double det = accurate_determinant(a, b);
    if (det <= 1e-14)
        throw Error(ErrorKind::DegenerateMatrix,
                    "|a|^2 - |b|^2 must be positive (got " + std::to_string(det) + ")");
    const double s = std::sqrt(det);
    return detail::canonical_unchecked(a / s, b / s);
}

MobiusMap identity() noexcept { return MobiusMap{}; }

double MobiusMap::base_radius() const noexcept { return std::abs(b_) / std::abs(a_); }

double MobiusMap::boundary_gap() const noexcept {
    const double aa = std::abs(a_);
    return 1.0 / (aa * (aa + std::abs(b_)));
}

double MobiusMap::base_distance() const noexcept { return 2.0 * std::log(std::abs(a_) + std::abs(b_)); }

double MobiusMap::derivative_at_origin() const noexcept { return 1.0 / std::norm(a_); }

Complex apply(const MobiusMap& g, Complex z) noexcept {
    return (g.a() * z + g.b()) / (std::conj(g.b()) * z + std::conj(g.a()));
}

DiskPoint apply(const MobiusMap& g, const DiskPoint& z) {
    Complex w = apply(g, z.value());
    const double r = std::abs(w);
    // Rounding can land an image of a near-boundary point on the circle.
    if (r >= 1.0) w *= std::nextafter(1.0, 0.0) / r;
    return DiskPoint(w);
}

// Entries of a product of unit-determinant matrices carry relative rounding
// of a few ulps; the determinant of the rounded entries does not (it cancels
// like |a|^2), so products are not rescaled.
MobiusMap compose(const MobiusMap& g, const MobiusMap& h) noexcept {
    const Complex a = g.a() * h.a() + g.b() * std::conj(h.b());
    const Complex b = g.a() * h.b() + g.b() * std::conj(h.a());
    return detail::canonical_unchecked(a, b);
}

MobiusMap inverse(const MobiusMap& g) noexcept {
    return detail::canonical_unchecked(std::conj(g.a()), -g.b());
}

double derivative_modulus(const MobiusMap& g, Complex z) noexcept {
    return 1.0 / std::norm(std::conj(g.b()) * z + std::conj(g.a()));
}

double hyperbolic_distance(const DiskPoint& z, const DiskPoint& w) noexcept {
    const double rz = z.abs();
    const double rw = w.abs();
    const double denom = std::sqrt((1.0 - rz) * (1.0 + rz) * (1.0 - rw) * (1.0 + rw));
    return 2.0 * std::asinh(std::abs(z.value() - w.value()) / denom);
}

double distance_from_origin(double radius) noexcept { return 2.0 * std::atanh(radius); }

double radius_at_distance(double d) noexcept { return std::tanh(0.5 * d); }

bool is_identity(const MobiusMap& g, double tol) noexcept {
    return std::abs(g.a() - Complex(1.0, 0.0)) <= tol && std::abs(g.b()) <= tol;
}

ElementClass classify(const MobiusMap& g) noexcept {
    if (is_identity(g)) return ElementClass::Identity;
    const double t = std::abs(2.0 * g.a().real());
    if (t < 2.0 - kClassifyTolerance) return ElementClass::Elliptic;
    if (t <= 2.0 + kClassifyTolerance) return ElementClass::Parabolic;
    return ElementClass::Hyperbolic;
}

std::vector<Complex> fixed_points(const MobiusMap& g) {
    const ElementClass cls = classify(g);
    if (cls == ElementClass::Identity)
        throw Error(ErrorKind::IdentityHasAllFixedPoints, "the identity fixes every point");

    // Roots of conj(b) z^2 + (conj(a) - a) z - b = 0; the discriminant is
    // 4 (Re(a)^2 - 1), real.
    const Complex a = g.a();
    const Complex b = g.b();
    const Complex bc = std::conj(b);
    const double re = a.real();
    const double im = a.imag();
    const Complex i(0.0, 1.0);

    switch (cls) {
    case ElementClass::Hyperbolic: {
        const double s = std::sqrt((std::abs(re) - 1.0) * (std::abs(re) + 1.0));
        Complex z1 = (i * im + s) / bc;
        Complex z2 = (i * im - s) / bc;
        z1 /= std::abs(z1);
        z2 /= std::abs(z2);
        // repelling first, attracting second
        if (derivative_modulus(g, z1) < 1.0) std::swap(z1, z2);
        return {z1, z2};
    }
    case ElementClass::Parabolic: {
        Complex z = i * im / bc;
        return {z / std::abs(z)};
    }
    case ElementClass::Elliptic: {
        if (std::abs(b) == 0.0) return {Complex(0.0, 0.0)};
        // The two roots are a reflection pair with product -b / conj(b); take
        // the interior one via that product to avoid cancellation.
        const double q = std::sqrt((1.0 - std::abs(re)) * (1.0 + std::abs(re)));
        const double big = im + std::copysign(q, im);
        return {i * b / big};
    }
    case ElementClass::Identity: break;
    }
    return {};
}

MobiusMap preset_hyperbolic(double alpha) {
    if (!(alpha > 1.0) || !std::isfinite(alpha))
        throw Error(ErrorKind::InvalidArgument, "preset_hyperbolic requires alpha > 1");
    const double root = std::sqrt(alpha);
    return make_mobius(Complex((alpha + 1.0) / (2.0 * root), 0.0), Complex((alpha - 1.0) / (2.0 * root), 0.0));
}

MobiusMap preset_parabolic(double tau) {
    if (tau == 0.0 || !std::isfinite(tau))
        throw Error(ErrorKind::InvalidArgument, "preset_parabolic requires tau != 0");
    return make_mobius(Complex(1.0, 0.5 * tau), Complex(0.0, -0.5 * tau));
}

MobiusMap preset_rotation(double theta) noexcept {
    return detail::canonical_unchecked(std::polar(1.0, 0.5 * theta), Complex(0.0, 0.0));
}

double distortion_constant(double r) {
    if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "distortion constant needs r in [0, 1)");
    return 4.0 * (1.0 + r) / ((1.0 - r) * (1.0 - r * r));
}

double entry_distance(const MobiusMap& g, const MobiusMap& h) noexcept {
    const double same = std::max(std::abs(g.a() - h.a()), std::abs(g.b() - h.b()));
    const double flipped = std::max(std::abs(g.a() + h.a()), std::abs(g.b() + h.b()));
    return std::min(same, flipped);
}

} // namespace orbital
