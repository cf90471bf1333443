#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "swarmforge/hypers.hpp"

namespace swarmforge {

/// An evaluation surface: bounds, dimension, and a deterministic batch
/// fitness map (minimization). evaluate_rows must process each row
/// independently so batched and per-particle evaluation agree exactly.
class FitnessProblem {
public:
    virtual ~FitnessProblem() = default;

    virtual const std::string& name() const = 0;
    virtual std::size_t dimension() const = 0;
    virtual const SearchBounds& bounds() const = 0;

    /// Evaluate `count` D-dimensional rows stored contiguously in `xs`
    /// (xs.size() == count * dimension()) into `out` (size count).
    virtual void evaluate_rows(std::span<const double> xs, std::size_t count,
                               std::span<double> out) const = 0;

    /// Scalar evaluation of a single point.
    double evaluate_point(std::span<const double> x) const {
        double f = 0.0;
        evaluate_rows(x, 1, {&f, 1});
        return f;
    }
};

} // namespace swarmforge
