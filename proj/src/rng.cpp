#include "lnc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lnc {

namespace {
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed)
    : seed0_(mix(seed + 0x9e3779b97f4a7c15ull)), state_(seed0_) {}

Rng Rng::child(std::uint64_t index) const {
    return Rng(seed0_ ^ mix((index + 1) * 0xd1342543de82ef95ull));
}

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    return mix(z);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::size_t Rng::index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: n = 0");
    // top bits avoid modulo bias at these tiny n
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) %
           n;
}

Vector Rng::unit_vector(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("Rng::unit_vector: dim = 0");
    Vector v(dim);
    for (;;) {
        for (auto& x : v) x = normal();
        double n = vnorm(v);
        if (n > 1e-8) return vscale(1.0 / n, v);
    }
}

Vector Rng::in_box(const Vector& lo, const Vector& hi) {
    if (lo.size() != hi.size())
        throw std::invalid_argument("Rng::in_box: dim");
    Vector v(lo.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = uniform(lo[i], hi[i]);
    return v;
}

}  // namespace lnc
