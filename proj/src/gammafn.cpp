#include "fractel/gammafn.hpp"

#include <cmath>

#include "fractel/errors.hpp"

namespace fractel {

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

}  // namespace

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x)) {
        throw DomainError("gamma pole at nonpositive integer argument");
    }
    if (x < 0.5) {
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    }
    x -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (x + static_cast<double>(i));
    }
    const double t = x + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

}  // namespace fractel
