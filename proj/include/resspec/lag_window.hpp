#pragma once

#include <string>
#include <string_view>

namespace resspec {

enum class WindowKind { parzen, bartlett, daniell };

// Lag window omega(x): even, omega(0)=1, |omega| <= 1. eta2 = int omega^2,
// eta4 = int omega^4 enter the bias and variance of the L2 statistics.
// support_lags(M) bounds the lags where omega(h/M) is kept: parzen/bartlett
// vanish outside |x| <= 1; the daniell (sinc) window is truncated at |x| <= 8
// with tail sum_{|h|>8M} |omega(h/M)| = O(1/8) * (alternating, effective
// truncation error well below the smoothing bias at any usable M).
struct LagWindow {
    WindowKind kind;
    std::string name;
    double eta2;
    double eta4;
    double support;  // omega treated as zero outside |x| <= support

    double operator()(double x) const;

    int support_lags(int bandwidth) const {
        return static_cast<int>(support * bandwidth);
    }
};

// Recognized names: "parzen", "bartlett", "daniell". eta2/eta4 are exact
// closed forms (all three windows integrate analytically); the unit tests
// re-derive them by adaptive quadrature to 1e-10.
LagWindow window_constants(std::string_view name);

}  // namespace resspec
