#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leakywire/asymptotics.hpp"
#include "leakywire/bracketing.hpp"
#include "leakywire/comparison.hpp"
#include "leakywire/errors.hpp"
#include "leakywire/geometry.hpp"
#include "leakywire/transverse.hpp"

namespace py = pybind11;
using namespace leakywire;

namespace {

CurvatureProfile profile_from_builtin(const std::string& name,
                                      const std::map<std::string, double>& params,
                                      int grid) {
    return curvature_profile(builtin_curve(name, params), grid);
}

CurvatureProfile profile_from_arrays(std::vector<double> grid,
                                     std::vector<double> kappa,
                                     CurveMode mode) {
    if (grid.size() != kappa.size() || grid.size() < 2)
        throw ConfigError("grid and kappa must have equal length >= 2");
    CurvatureProfile p;
    p.source = ProfileSource::analytic;
    p.mode = mode;
    p.grid = std::move(grid);
    p.kappa = std::move(kappa);
    const bool cyc = mode == CurveMode::loop || mode == CurveMode::periodic;
    const double ds = p.grid[1] - p.grid[0];
    p.L = p.grid.back() - p.grid.front() + (cyc ? ds : 0.0);
    p.kappa_sup = *std::max_element(p.kappa.begin(), p.kappa.end());
    return p;
}

SpectrumResult spectrum(const CurvatureProfile& profile, BoundaryCondition bc,
                        int count, int n) {
    return eigenvalues(build_operator(profile, bc, n), count);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Strong-coupling spectra of curve-supported singular "
              "interactions in 3D";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ArithmeticError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<CurveMode>(m, "CurveMode")
        .value("loop", CurveMode::loop)
        .value("open", CurveMode::open)
        .value("periodic", CurveMode::periodic)
        .value("infinite_truncated", CurveMode::infinite_truncated);

    py::enum_<BoundaryCondition>(m, "BoundaryCondition")
        .value("periodic", BoundaryCondition::periodic)
        .value("dirichlet", BoundaryCondition::dirichlet)
        .value("neumann", BoundaryCondition::neumann)
        .value("floquet", BoundaryCondition::floquet);

    py::class_<CurvatureProfile>(m, "CurvatureProfile")
        .def_readonly("grid", &CurvatureProfile::grid)
        .def_readonly("kappa", &CurvatureProfile::kappa)
        .def_readonly("kappa_sup", &CurvatureProfile::kappa_sup)
        .def_readonly("mode", &CurvatureProfile::mode)
        .def_readonly("L", &CurvatureProfile::L)
        .def("__repr__", [](const CurvatureProfile& p) {
            return "<CurvatureProfile L=" + std::to_string(p.L) + " points=" +
                   std::to_string(p.grid.size()) + ">";
        });

    m.def("builtin_profile", &profile_from_builtin, py::arg("name"),
          py::arg("params") = std::map<std::string, double>{},
          py::arg("grid") = 2048,
          "Curvature profile of a catalog curve: circle(radius), "
          "planar-ellipse(a, b), helix(radius, pitch), bent-line(truncation), "
          "sine-perturbed-line(amplitude, period).");
    m.def("profile_from_arrays", &profile_from_arrays, py::arg("grid"),
          py::arg("kappa"), py::arg("mode") = CurveMode::loop,
          "Curvature profile from explicit uniform (s, kappa) samples.");

    py::class_<CouplingState>(m, "CouplingState")
        .def_readonly("alpha", &CouplingState::alpha)
        .def_readonly("xi_alpha", &CouplingState::xi_alpha)
        .def_readonly("zeta_alpha", &CouplingState::zeta_alpha);
    m.def("coupling_state", &coupling_state, py::arg("alpha"));

    py::class_<SpectrumResult>(m, "SpectrumResult")
        .def_readonly("mu", &SpectrumResult::mu)
        .def_readonly("refine_error", &SpectrumResult::refine_error)
        .def_readonly("n_negative", &SpectrumResult::n_negative);
    m.def("spectrum", &spectrum, py::arg("profile"),
          py::arg("bc") = BoundaryCondition::periodic, py::arg("count") = 6,
          py::arg("n") = 2048,
          "Lowest eigenvalues of the comparison operator "
          "S = -d^2/ds^2 - kappa^2/4.");
    m.def("infinite_curve_spectrum", &infinite_curve_spectrum,
          py::arg("profile"), py::arg("j_max") = 6, py::arg("n") = 4096);

    py::class_<BandTable>(m, "BandTable")
        .def_readonly("thetas", &BandTable::thetas)
        .def_readonly("bands", &BandTable::bands)
        .def_readonly("K", &BandTable::K);
    m.def("floquet_spectrum", &floquet_spectrum, py::arg("profile"),
          py::arg("K"), py::arg("theta_count") = 64, py::arg("j_max") = 6,
          py::arg("n") = 1024);
    m.def("band_table_with_edges", &band_table_with_edges, py::arg("profile"),
          py::arg("K"), py::arg("theta_count") = 64, py::arg("j_max") = 6,
          py::arg("n") = 1024);

    py::class_<GapReport>(m, "GapReport")
        .def_readonly("gaps", &GapReport::gaps)
        .def_readonly("open", &GapReport::open)
        .def_readonly("gap_tol", &GapReport::gap_tol);
    m.def("gap_widths", &gap_widths, py::arg("bands"));

    py::class_<TransverseEigenvalue>(m, "TransverseEigenvalue")
        .def_readonly("d", &TransverseEigenvalue::d)
        .def_readonly("M", &TransverseEigenvalue::M)
        .def_readonly("zeta", &TransverseEigenvalue::zeta)
        .def_readonly("k_root", &TransverseEigenvalue::k_root)
        .def_readonly("energy", &TransverseEigenvalue::energy)
        .def_readonly("energy_gap", &TransverseEigenvalue::energy_gap)
        .def_readonly("log_abs_gap", &TransverseEigenvalue::log_abs_gap)
        .def_readonly("residual", &TransverseEigenvalue::residual);
    m.def("solve_dirichlet_root", &solve_dirichlet_root, py::arg("coupling"),
          py::arg("d"));
    m.def("solve_robin_root", &solve_robin_root, py::arg("coupling"),
          py::arg("d"), py::arg("M"));

    py::class_<TubeConstants>(m, "TubeConstants")
        .def_readonly("d", &TubeConstants::d)
        .def_readonly("C_h", &TubeConstants::C_h)
        .def_readonly("C_V", &TubeConstants::C_V)
        .def_readonly("M", &TubeConstants::M)
        .def_readonly("v", &TubeConstants::v)
        .def_readonly("w_d", &TubeConstants::w_d)
        .def_readonly("w_d_positive", &TubeConstants::w_d_positive);
    m.def(
        "estimate_constants",
        [](const CurvatureProfile& p, double d) {
            return estimate_constants(p, d);
        },
        py::arg("profile"), py::arg("d"));

    py::class_<SqueezeRow>(m, "SqueezeRow")
        .def_readonly("j", &SqueezeRow::j)
        .def_readonly("lower", &SqueezeRow::lower)
        .def_readonly("center", &SqueezeRow::center)
        .def_readonly("upper", &SqueezeRow::upper)
        .def_readonly("passed", &SqueezeRow::pass)
        .def_readonly("bound_state", &SqueezeRow::bound_state);
    py::class_<SqueezeReport>(m, "SqueezeReport")
        .def_readonly("alpha", &SqueezeReport::alpha)
        .def_readonly("d", &SqueezeReport::d)
        .def_readonly("rows", &SqueezeReport::rows)
        .def_readonly("t_minus", &SqueezeReport::t_minus)
        .def_readonly("t_plus", &SqueezeReport::t_plus)
        .def_readonly("all_pass", &SqueezeReport::all_pass)
        .def_readonly("n_bound", &SqueezeReport::n_bound);
    m.def("squeeze_check", &squeeze_check, py::arg("profile"), py::arg("alpha"),
          py::arg("j_max") = 6, py::arg("d") = 0.0,
          py::arg("bc") = BoundaryCondition::periodic, py::arg("n") = 2048,
          "Two-sided certification lower <= xi_alpha + mu_j <= upper; "
          "d <= 0 selects the canonical rule d = exp(pi alpha).");

    py::class_<AsymptoticRow>(m, "AsymptoticRow")
        .def_readonly("j", &AsymptoticRow::j)
        .def_readonly("lambda_", &AsymptoticRow::lambda)
        .def_readonly("pair_lower", &AsymptoticRow::pair_lower)
        .def_readonly("pair_upper", &AsymptoticRow::pair_upper)
        .def_readonly("bracket_lower", &AsymptoticRow::bracket_lower)
        .def_readonly("bracket_upper", &AsymptoticRow::bracket_upper)
        .def_readonly("has_bracket", &AsymptoticRow::has_bracket)
        .def_readonly("two_sided", &AsymptoticRow::two_sided);
    py::class_<AsymptoticSpectrum>(m, "AsymptoticSpectrum")
        .def_readonly("alpha", &AsymptoticSpectrum::alpha)
        .def_readonly("d_used", &AsymptoticSpectrum::d_used)
        .def_readonly("threshold", &AsymptoticSpectrum::threshold)
        .def_readonly("rows", &AsymptoticSpectrum::rows)
        .def_readonly("n_negative", &AsymptoticSpectrum::n_negative);
    m.def("eigenvalue_asymptotics", &eigenvalue_asymptotics, py::arg("profile"),
          py::arg("alpha"), py::arg("bc") = BoundaryCondition::periodic,
          py::arg("j_max") = 6, py::arg("with_brackets") = false,
          py::arg("n") = 2048);

    py::class_<CountingEstimate>(m, "CountingEstimate")
        .def_readonly("alpha", &CountingEstimate::alpha)
        .def_readonly("L", &CountingEstimate::L)
        .def_readonly("v", &CountingEstimate::v)
        .def_readonly("n_formula", &CountingEstimate::n_formula)
        .def_readonly("n_lower", &CountingEstimate::n_lower)
        .def_readonly("n_upper", &CountingEstimate::n_upper)
        .def_readonly("spread", &CountingEstimate::spread);
    m.def("counting_function", &counting_function, py::arg("profile"),
          py::arg("alpha"));

    py::class_<SemiclassicalRow>(m, "SemiclassicalRow")
        .def_readonly("j", &SemiclassicalRow::j)
        .def_readonly("expansion", &SemiclassicalRow::expansion)
        .def_readonly("rescaled", &SemiclassicalRow::rescaled)
        .def_readonly("difference", &SemiclassicalRow::difference);
    py::class_<SemiclassicalView>(m, "SemiclassicalView")
        .def_readonly("alpha", &SemiclassicalView::alpha)
        .def_readonly("h", &SemiclassicalView::h)
        .def_readonly("alpha_of_h", &SemiclassicalView::alpha_of_h)
        .def_readonly("xi_alpha", &SemiclassicalView::xi_alpha)
        .def_readonly("xi_rescaled", &SemiclassicalView::xi_rescaled)
        .def_readonly("rows", &SemiclassicalView::rows)
        .def_readonly("counting", &SemiclassicalView::counting);
    m.def("semiclassical_view", &semiclassical_view, py::arg("profile"),
          py::arg("alpha"), py::arg("h"),
          py::arg("bc") = BoundaryCondition::periodic, py::arg("j_max") = 6,
          py::arg("n") = 2048);
}
