#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmforge/problem.hpp"

namespace swarmforge {

/// The four standard test functions, batch-evaluable, on [-600, 600]^D with
/// known minimum value 0.
class BenchmarkProblem : public FitnessProblem {
public:
    enum class Kind { Sphere, Rosenbrock, Rastrigin, Griewank };

    BenchmarkProblem(Kind kind, std::size_t dim = 30)
        : kind_(kind), dim_(dim), bounds_(SearchBounds::uniform_box(-600.0, 600.0, dim)) {
        switch (kind) {
            case Kind::Sphere: id_ = "BF1"; name_ = "Sphere"; break;
            case Kind::Rosenbrock: id_ = "BF2"; name_ = "Rosenbrock"; break;
            case Kind::Rastrigin: id_ = "BF3"; name_ = "Rastrigin"; break;
            case Kind::Griewank: id_ = "BF4"; name_ = "Griewank"; break;
        }
    }

    Kind kind() const { return kind_; }
    const std::string& id() const { return id_; }
    const std::string& name() const override { return name_; }
    std::size_t dimension() const override { return dim_; }
    const SearchBounds& bounds() const override { return bounds_; }
    bool multimodal() const {
        return kind_ == Kind::Rastrigin || kind_ == Kind::Griewank;
    }

    /// Coordinates of the known global minimizer (all zeros, except
    /// Rosenbrock's all ones).
    std::vector<double> minimizer() const {
        return std::vector<double>(dim_, kind_ == Kind::Rosenbrock ? 1.0 : 0.0);
    }

    void evaluate_rows(std::span<const double> xs, std::size_t count,
                       std::span<double> out) const override {
        if (xs.size() != count * dim_ || out.size() != count)
            throw std::invalid_argument("BenchmarkProblem: row buffer size mismatch");
        for (std::size_t r = 0; r < count; ++r) {
            const double* p = xs.data() + r * dim_;
            out[r] = eval_one(p);
        }
    }

private:
    double eval_one(const double* p) const {
        switch (kind_) {
            case Kind::Sphere: {
                double s = 0.0;
                for (std::size_t i = 0; i < dim_; ++i) s += p[i] * p[i];
                return s;
            }
            case Kind::Rosenbrock: {
                double s = 0.0;
                for (std::size_t i = 0; i + 1 < dim_; ++i) {
                    const double a = p[i + 1] - p[i] * p[i];
                    const double b = 1.0 - p[i];
                    s += 100.0 * a * a + b * b;
                }
                return s;
            }
            case Kind::Rastrigin: {
                double s = 0.0;
                for (std::size_t i = 0; i < dim_; ++i)
                    s += p[i] * p[i] - 10.0 * std::cos(2.0 * std::numbers::pi * p[i]) + 10.0;
                return s;
            }
            case Kind::Griewank: {
                double sum = 0.0, prod = 1.0;
                for (std::size_t i = 0; i < dim_; ++i) {
                    sum += p[i] * p[i];
                    prod *= std::cos(p[i] / std::sqrt(static_cast<double>(i + 1)));
                }
                return 1.0 + sum / 4000.0 - prod;
            }
        }
        return 0.0;  // unreachable
    }

    Kind kind_;
    std::size_t dim_;
    SearchBounds bounds_;
    std::string id_;
    std::string name_;
};

/// Registry lookup by id ("BF1".."BF4").
inline std::unique_ptr<BenchmarkProblem> make_benchmark(const std::string& id,
                                                        std::size_t dim = 30) {
    if (id == "BF1") return std::make_unique<BenchmarkProblem>(BenchmarkProblem::Kind::Sphere, dim);
    if (id == "BF2") return std::make_unique<BenchmarkProblem>(BenchmarkProblem::Kind::Rosenbrock, dim);
    if (id == "BF3") return std::make_unique<BenchmarkProblem>(BenchmarkProblem::Kind::Rastrigin, dim);
    if (id == "BF4") return std::make_unique<BenchmarkProblem>(BenchmarkProblem::Kind::Griewank, dim);
    throw std::invalid_argument("unknown benchmark id: " + id + " (expected BF1..BF4)");
}

inline const std::vector<std::string>& benchmark_ids() {
    static const std::vector<std::string> ids = {"BF1", "BF2", "BF3", "BF4"};
    return ids;
}

} // namespace swarmforge
