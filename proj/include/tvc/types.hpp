#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace tvc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using RowVec6 = Eigen::Matrix<double, 1, 6>;

constexpr double kPi = 3.14159265358979323846;

inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }
inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }

/// One violated invariant: dotted field path plus a readable reason.
struct Issue {
    std::string path;
    std::string message;

    bool operator==(const Issue&) const = default;
};

/// Raised when inputs violate invariants. Carries every violation found, not
/// only the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Issue> issues);
    ValidationError(std::string path, std::string message);

    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    std::vector<Issue> issues_;
};

/// A derived model constant made the equations degenerate (e.g. B_M <= 0).
class ModelDegeneracyError : public std::runtime_error {
public:
    ModelDegeneracyError(std::string constant, double value);

    const std::string& constant() const noexcept { return constant_; }
    double value() const noexcept { return value_; }

private:
    std::string constant_;
    double value_;
};

/// Euler-angle kinematics left the pitch guard band.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear solve or eigen decomposition failed, or produced non-finite output.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An optional model channel was requested without the data it needs.
class FeatureUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Controller configuration that makes a control law undefined.
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tvc
