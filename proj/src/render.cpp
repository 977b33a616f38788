#include "orbital/render.hpp"

#include "orbital/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace orbital {

namespace {

int to_pixel(double coord, int size) {
    const double v = std::floor((coord + 1.0) / 2.0 * size);
    if (!(v >= 0.0)) return 0;
    return static_cast<int>(std::min(v, static_cast<double>(size - 1)));
}

} // namespace

std::string render_ppm(const PointCloud& cloud, int size, int point_radius) {
    if (size < 1) throw Error(ErrorKind::InvalidArgument, "image size must be positive");
    if (point_radius < 0) throw Error(ErrorKind::InvalidArgument, "point radius must be >= 0");
    std::vector<unsigned char> ink(static_cast<std::size_t>(size) * size, 0);
    const double s = size;

    for (int row = 0; row < size; ++row) {
        for (int col = 0; col < size; ++col) {
            const double x = (col + 0.5) / s * 2.0 - 1.0;
            const double y = (size - 1 - row + 0.5) / s * 2.0 - 1.0;
            if (std::abs(std::hypot(x, y) - 1.0) < 1.0 / s) ink[static_cast<std::size_t>(row) * size + col] = 1;
        }
    }

    const int r2 = point_radius * point_radius;
    for (const Point& p : cloud.points) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
        const int cx = to_pixel(p[0], size);
        const int cy = size - 1 - to_pixel(p[1], size);
        for (int dy = -point_radius; dy <= point_radius; ++dy) {
            for (int dx = -point_radius; dx <= point_radius; ++dx) {
                if (dx * dx + dy * dy > r2) continue;
                const int px = cx + dx, py = cy + dy;
                if (px < 0 || py < 0 || px >= size || py >= size) continue;
                ink[static_cast<std::size_t>(py) * size + px] = 1;
            }
        }
    }

    std::string out = "P6\n" + std::to_string(size) + " " + std::to_string(size) + "\n255\n";
    out.reserve(out.size() + ink.size() * 3);
    for (unsigned char v : ink) out.append(3, v ? '\0' : '\xff');
    return out;
}

} // namespace orbital
