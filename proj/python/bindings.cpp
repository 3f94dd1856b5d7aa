#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "odeheat/experiment.hpp"

namespace py = pybind11;
using namespace odeheat;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Null controls for a 1D heat equation coupled to an ODE: weighted state space, "
              "coupled forward/adjoint solvers, penalized HUM with conjugate gradient, and the "
              "domain-extension boundary control pipeline.";

    py::class_<SpaceTimeGrid>(m, "SpaceTimeGrid")
        .def(py::init<double, double, int, int>(), py::arg("L"), py::arg("T"), py::arg("Nx"),
             py::arg("Nt"))
        .def_property_readonly("L", &SpaceTimeGrid::length)
        .def_property_readonly("T", &SpaceTimeGrid::final_time)
        .def_property_readonly("Nx", &SpaceTimeGrid::num_space_intervals)
        .def_property_readonly("Nt", &SpaceTimeGrid::num_time_steps)
        .def_property_readonly("dx", &SpaceTimeGrid::dx)
        .def_property_readonly("dt", &SpaceTimeGrid::dt)
        .def("node", &SpaceTimeGrid::node)
        .def("level", &SpaceTimeGrid::level)
        .def_property_readonly("space_quadrature", &SpaceTimeGrid::space_quadrature)
        .def_property_readonly("time_quadrature", &SpaceTimeGrid::time_quadrature);

    py::class_<Coupling>(m, "Coupling")
        .def(py::init<double, double>(), py::arg("mu"), py::arg("kappa"))
        .def_readonly("mu", &Coupling::mu)
        .def_readonly("kappa", &Coupling::kappa)
        .def_property_readonly("weight", &Coupling::weight);

    py::class_<ControlRegion>(m, "ControlRegion")
        .def(py::init<double, double, const SpaceTimeGrid&>(), py::arg("w0"), py::arg("w1"),
             py::arg("grid"))
        .def_property_readonly("lower", &ControlRegion::lower)
        .def_property_readonly("upper", &ControlRegion::upper)
        .def_property_readonly("mask", &ControlRegion::mask)
        .def_property_readonly("quadrature", &ControlRegion::quadrature)
        .def_property_readonly("first_node", &ControlRegion::first_node)
        .def_property_readonly("last_node", &ControlRegion::last_node);

    py::class_<HState>(m, "HState")
        .def(py::init<std::vector<double>, double>(), py::arg("y"), py::arg("z"))
        .def_static("zero", &HState::zero)
        .def_static("constant", &HState::constant)
        .def_readwrite("y", &HState::y)
        .def_readwrite("z", &HState::z);

    py::class_<SpaceTimeField>(m, "SpaceTimeField")
        .def(py::init<const SpaceTimeGrid&>(), py::arg("grid"))
        .def("get", [](const SpaceTimeField& f, int level, int node) { return f.at(level, node); })
        .def("set",
             [](SpaceTimeField& f, int level, int node, double v) { f.at(level, node) = v; })
        .def_property_readonly("values",
                               py::overload_cast<>(&SpaceTimeField::values, py::const_));

    py::class_<ProblemData>(m, "ProblemData")
        .def_static("sample", &ProblemData::sample, py::arg("a"), py::arg("b"), py::arg("c"),
                    py::arg("coupling"), py::arg("region"), py::arg("grid"))
        .def_static("constants", &ProblemData::constants, py::arg("a"), py::arg("b"),
                    py::arg("c"), py::arg("coupling"), py::arg("region"), py::arg("grid"))
        .def_readonly("coupling", &ProblemData::coupling)
        .def_readonly("region", &ProblemData::region);

    py::enum_<AdjointMode>(m, "AdjointMode")
        .value("discrete", AdjointMode::Discrete)
        .value("continuous", AdjointMode::Continuous);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("theta", &SolverConfig::theta)
        .def_readwrite("adjoint_mode", &SolverConfig::adjoint_mode)
        .def("set_neumann", [](SolverConfig& c) { c.right_bc = RightBoundary::neumann(); })
        .def("set_prescribed_flux", [](SolverConfig& c, std::vector<double> u) {
            c.right_bc = RightBoundary::prescribed(std::move(u));
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_property_readonly("initial", &Trajectory::initial)
        .def_property_readonly("final", &Trajectory::final_state);

    py::class_<AdjointSolution>(m, "AdjointSolution")
        .def_readonly("trajectory", &AdjointSolution::trajectory)
        .def_readonly("control_trace", &AdjointSolution::control_trace);

    py::class_<HumConfig>(m, "HumConfig")
        .def(py::init<double, double, int, HState>(), py::arg("epsilon"), py::arg("tol"),
             py::arg("max_iter"), py::arg("initial_guess"))
        .def_readonly("epsilon", &HumConfig::epsilon)
        .def_readonly("tol", &HumConfig::tol)
        .def_readonly("max_iter", &HumConfig::max_iter);

    py::class_<HumResult>(m, "HumResult")
        .def_readonly("control", &HumResult::control)
        .def_readonly("minimizer", &HumResult::minimizer)
        .def_readonly("final_state", &HumResult::final_state)
        .def_readonly("iterations", &HumResult::iterations)
        .def_readonly("residual_history", &HumResult::residual_history)
        .def_readonly("converged", &HumResult::converged)
        .def_readonly("norm_yT", &HumResult::norm_yT)
        .def_readonly("abs_zT", &HumResult::abs_zT)
        .def_readonly("norm_control", &HumResult::norm_control);

    m.def("inner_product", &inner_product);
    m.def("h_norm", &h_norm);
    m.def("field_l2_norm", &field_l2_norm);
    m.def("control_l2_norm", &control_l2_norm);
    m.def("time_l2_norm", &time_l2_norm);
    m.def("solve_forward", &solve_forward, py::arg("v"), py::arg("initial"), py::arg("data"),
          py::arg("grid"), py::arg("config"));
    m.def("solve_adjoint", &solve_adjoint);
    m.def("solve_adjoint_full", &solve_adjoint_full);
    m.def("uncontrolled_final", &uncontrolled_final);
    m.def("gramian_apply", &gramian_apply);
    m.def("control_cost", &control_cost);
    m.def("dual_cost", &dual_cost);
    m.def("hum_cg", &hum_cg, py::arg("initial"), py::arg("data"), py::arg("grid"),
          py::arg("config"), py::arg("hum"));
    m.def("duality_residual", &duality_residual);
    m.def("observability_ratio", &observability_ratio);

    py::class_<ExtensionConfig>(m, "ExtensionConfig")
        .def(py::init<double, SpaceTimeGrid, ControlRegion>(), py::arg("ell"),
             py::arg("extended_grid"), py::arg("omega"))
        .def_property_readonly("ell", &ExtensionConfig::ell)
        .def_property_readonly("interface_node", &ExtensionConfig::interface_node)
        .def("restricted_grid", &ExtensionConfig::restricted_grid);

    py::class_<BoundaryControl>(m, "BoundaryControl").def_readonly("u", &BoundaryControl::u);

    py::class_<VerificationNorms>(m, "VerificationNorms")
        .def_readonly("norm_yT", &VerificationNorms::norm_yT)
        .def_readonly("abs_zT", &VerificationNorms::abs_zT)
        .def_readonly("norm_u", &VerificationNorms::norm_u);

    m.def("extend_initial", &extend_initial);
    m.def("extract_trace_control", &extract_trace_control);
    m.def("verify_boundary_control", &verify_boundary_control);

    py::enum_<ExperimentMode>(m, "ExperimentMode")
        .value("distributed", ExperimentMode::Distributed)
        .value("boundary", ExperimentMode::Boundary);

    py::class_<SummaryRow>(m, "SummaryRow")
        .def_readonly("epsilon", &SummaryRow::epsilon)
        .def_readonly("n_iter", &SummaryRow::n_iter)
        .def_readonly("norm_yT", &SummaryRow::norm_yT)
        .def_readonly("abs_zT", &SummaryRow::abs_zT)
        .def_readonly("norm_v", &SummaryRow::norm_v);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("mode", &ExperimentConfig::mode)
        .def_readwrite("L", &ExperimentConfig::L)
        .def_readwrite("ell", &ExperimentConfig::ell)
        .def_readwrite("T", &ExperimentConfig::T)
        .def_readwrite("Nx", &ExperimentConfig::Nx)
        .def_readwrite("Nt", &ExperimentConfig::Nt)
        .def_readwrite("a_expr", &ExperimentConfig::a_expr)
        .def_readwrite("b_expr", &ExperimentConfig::b_expr)
        .def_readwrite("c_expr", &ExperimentConfig::c_expr)
        .def_readwrite("mu", &ExperimentConfig::mu)
        .def_readwrite("kappa", &ExperimentConfig::kappa)
        .def_readwrite("omega0", &ExperimentConfig::omega0)
        .def_readwrite("omega1", &ExperimentConfig::omega1)
        .def_readwrite("y0_expr", &ExperimentConfig::y0_expr)
        .def_readwrite("z0", &ExperimentConfig::z0)
        .def_readwrite("epsilons", &ExperimentConfig::epsilons)
        .def_readwrite("tol", &ExperimentConfig::tol)
        .def_readwrite("max_iter", &ExperimentConfig::max_iter)
        .def_readwrite("f0_expr", &ExperimentConfig::f0_expr)
        .def_readwrite("f0_z", &ExperimentConfig::f0_z)
        .def_readwrite("theta", &ExperimentConfig::theta)
        .def_readwrite("adjoint", &ExperimentConfig::adjoint)
        .def_readwrite("output_dir", &ExperimentConfig::output_dir);

    m.def("preset_config", &preset_config);
    m.def("load_config", &load_config);
    m.def("run_experiment", &run_experiment);
}
