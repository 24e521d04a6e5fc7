#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace leakywire {

enum class CurveMode { loop, open, periodic, infinite_truncated };

/// Raw ordered 3D samples of a curve, prior to arc-length reparametrization.
/// For a closed curve the first and last points are identified (the last
/// point must NOT repeat the first). A periodic (non-closed) curve covers one
/// period and states the translation vector mapping one period to the next.
struct CurveSamples {
    std::vector<Eigen::Vector3d> points;
    bool closed = false;
    bool has_period = false;
    Eigen::Vector3d period_vector = Eigen::Vector3d::Zero();
};

/// Scalar cubic spline on strictly increasing knots.
/// Kinds: not_a_knot (open data) and periodic (cyclic data; the knot list
/// omits the wrap point, whose value equals y[0] one period later).
class CubicSpline {
public:
    enum class Kind { not_a_knot, periodic };

    CubicSpline() = default;
    CubicSpline(std::vector<double> t, std::vector<double> y, Kind kind,
                double period = 0.0);

    double value(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;
    double deriv3(double x) const;

private:
    struct Segment { double h; };
    int locate(double& x) const; // wraps x for periodic splines
    std::vector<double> t_, y_, m_, h_;
    Kind kind_ = Kind::not_a_knot;
    double period_ = 0.0;
};

/// Unit-speed curve. `knots` live in [0, L]; the physical arc-length
/// coordinate is knot + s_offset (nonzero only for truncated infinite
/// curves, which are centered at s = 0).
class ArcLengthCurve {
public:
    std::vector<double> knots;
    std::vector<Eigen::Vector3d> positions;
    double L = 0.0;
    CurveMode mode = CurveMode::open;
    Eigen::Vector3d period_vector = Eigen::Vector3d::Zero(); // periodic mode
    double truncation_radius = 0.0;                          // infinite mode
    double s_offset = 0.0;

    /// Build the internal splines from the public fields and verify the
    /// unit-speed invariant (|gamma'| = 1 within 1e-8 at interior knots).
    void finalize();

    Eigen::Vector3d position(double s) const;
    Eigen::Vector3d derivative(double s) const;
    Eigen::Vector3d second_derivative(double s) const;
    Eigen::Vector3d third_derivative(double s) const;

private:
    bool cyclic() const { return mode == CurveMode::loop || mode == CurveMode::periodic; }
    CubicSpline sx_, sy_, sz_;
    Eigen::Vector3d drift_ = Eigen::Vector3d::Zero(); // per-period translation
    bool finalized_ = false;
};

enum class ProfileSource { from_curve, analytic };

/// Curvature kappa(s) >= 0 on a grid of physical s-values; the sole
/// geometric input to the longitudinal comparison operator.
struct CurvatureProfile {
    std::vector<double> grid;
    std::vector<double> kappa;
    double kappa_sup = 0.0;
    std::vector<double> torsion; // informational; empty when unresolvable
    ProfileSource source = ProfileSource::from_curve;
    CurveMode mode = CurveMode::open;
    double L = 0.0;
};

struct EmbeddingReport {
    double d = 0.0;
    bool self_intersection_free = false;
    bool local_diffeo_ok = false;
    double min_tube_clearance = 0.0; // +inf if no eligible pair
    double chord_constant = 0.0;     // in (0, 1]
    double kappa_sup = 0.0;
};

/// Catalog: circle (radius), planar-ellipse (a, b), helix (radius, pitch),
/// bent-line (truncation), sine-perturbed-line (amplitude, period).
/// All families accept an optional `knots` (resp. `samples`) count.
ArcLengthCurve builtin_curve(const std::string& name,
                             const std::map<std::string, double>& params);

ArcLengthCurve reparametrize_arclength(const CurveSamples& raw);

CurvatureProfile curvature_profile(const ArcLengthCurve& curve, int grid_size);

EmbeddingReport check_tube_embedding(const ArcLengthCurve& curve, double d);

/// Log-log regression of kappa against |s| over the outer part of a
/// truncated infinite curve; admissibility requires the result > 5/4.
double fitted_decay_exponent(const CurvatureProfile& profile);

/// CSV `s_or_index,x,y,z` (first column ignored beyond ordering).
CurveSamples load_curve_samples(const std::string& path);
/// CSV `s,kappa`.
CurvatureProfile load_curvature_profile(const std::string& path);

} // namespace leakywire
