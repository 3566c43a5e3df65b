#include "resspec/lag_window.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace resspec {

namespace {

double parzen_omega(double x) {
    const double ax = std::abs(x);
    if (ax <= 0.5) return 1.0 - 6.0 * ax * ax + 6.0 * ax * ax * ax;
    if (ax <= 1.0) {
        const double t = 1.0 - ax;
        return 2.0 * t * t * t;
    }
    return 0.0;
}

double bartlett_omega(double x) {
    const double ax = std::abs(x);
    return ax <= 1.0 ? 1.0 - ax : 0.0;
}

double daniell_omega(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

}  // namespace

double LagWindow::operator()(double x) const {
    switch (kind) {
        case WindowKind::parzen:
            return parzen_omega(x);
        case WindowKind::bartlett:
            return bartlett_omega(x);
        case WindowKind::daniell:
            return std::abs(x) <= support ? daniell_omega(x) : 0.0;
    }
    return 0.0;
}

LagWindow window_constants(std::string_view name) {
    if (name == "parzen") {
        // int omega^2 = 151/280, int omega^4 = 122559/320320 (piecewise
        // polynomial, integrated exactly)
        return {WindowKind::parzen, "parzen", 151.0 / 280.0, 122559.0 / 320320.0, 1.0};
    }
    if (name == "bartlett") {
        return {WindowKind::bartlett, "bartlett", 2.0 / 3.0, 2.0 / 5.0, 1.0};
    }
    if (name == "daniell") {
        // int sinc^2 = 1, int sinc^4 = 2/3
        return {WindowKind::daniell, "daniell", 1.0, 2.0 / 3.0, 8.0};
    }
    throw std::invalid_argument("unknown lag window '" + std::string(name) +
                                "' (expected parzen, bartlett, or daniell)");
}

}  // namespace resspec
