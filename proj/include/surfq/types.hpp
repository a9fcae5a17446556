#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace surfq {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using VecX = Eigen::VectorXd;

/// hbar and particle mass; all curvature-induced energies scale as hbar^2/mu.
struct PhysicalConstants {
    double hbar = 1.0;
    double mu = 1.0;
};

struct DegenerateGradient : std::runtime_error {
    explicit DegenerateGradient(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMetric : std::runtime_error {
    explicit SingularMetric(const std::string& what) : std::runtime_error(what) {}
};

struct OffManifold : std::runtime_error {
    explicit OffManifold(const std::string& what) : std::runtime_error(what) {}
};

struct SingularConstraintMatrix : std::runtime_error {
    explicit SingularConstraintMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroMomentum : std::runtime_error {
    explicit ZeroMomentum(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    int iterations;
    NoConvergence(const std::string& what, int iters)
        : std::runtime_error(what), iterations(iters) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace surfq
