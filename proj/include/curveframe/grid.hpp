#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "curveframe/errors.hpp"

namespace curveframe {

/// Uniform arc-length grid on [0, L] with n_samples nodes.
class Grid {
public:
    Grid(double length, std::size_t n_samples) : length_(length), n_(n_samples) {
        if (n_ < 3) {
            throw TooFewPoints("Grid requires at least 3 samples, got " + std::to_string(n_));
        }
        if (!(length_ > 0.0) || !std::isfinite(length_)) {
            throw Error("Grid length must be positive and finite");
        }
    }

    double length() const { return length_; }
    std::size_t size() const { return n_; }
    double spacing() const { return length_ / static_cast<double>(n_ - 1); }

    double node(std::size_t i) const {
        if (i + 1 == n_) return length_;  // exact endpoint
        return static_cast<double>(i) * spacing();
    }

    bool operator==(const Grid& other) const {
        return length_ == other.length_ && n_ == other.n_;
    }

private:
    double length_;
    std::size_t n_;
};

}  // namespace curveframe
