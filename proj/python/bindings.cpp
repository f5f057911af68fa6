#include "gsqg/angle.hpp"
#include "gsqg/bounds.hpp"
#include "gsqg/config.hpp"
#include "gsqg/context.hpp"
#include "gsqg/contour.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/kernel.hpp"
#include "gsqg/sim.hpp"
#include "gsqg/specfun.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

namespace py = pybind11;
using namespace gsqg;

namespace {

py::array_t<double> to_array(const ScalarField& f) {
    py::array_t<double> a({f.n, f.n});
    std::memcpy(a.mutable_data(), f.values.data(), f.values.size() * sizeof(double));
    return a;
}

ScalarField from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a, double box_length) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw py::value_error("expected a square 2D array");
    ScalarField f(static_cast<int>(a.shape(0)), box_length);
    std::memcpy(f.values.data(), a.data(), f.values.size() * sizeof(double));
    return f;
}

py::dict record_dict(const DiagRecord& r) {
    py::dict d;
    d["time"] = r.time;
    d["sup_theta"] = r.sup_theta;
    d["l2_theta"] = r.l2_theta;
    d["sup_grad"] = r.sup_grad;
    d["holder_seminorm"] = r.holder_seminorm;
    d["theta_at_origin"] = r.theta_at_origin;
    d["opening_angle"] = r.opening_angle ? py::cast(*r.opening_angle) : py::none();
    d["level_distance"] = r.level_distance ? py::cast(*r.level_distance) : py::none();
    d["holder_time_integral"] = r.holder_time_integral;
    d["sup_velocity"] = r.sup_velocity;
    return d;
}

py::dict trajectory_dict(const AngleTrajectory& tr) {
    std::vector<double> t, g, w;
    for (const auto& s : tr.samples) {
        t.push_back(s.t);
        g.push_back(s.gamma);
        w.push_back(s.w);
    }
    py::dict d;
    d["t"] = py::array_t<double>(t.size(), t.data());
    d["gamma"] = py::array_t<double>(g.size(), g.data());
    d["w"] = py::array_t<double>(w.size(), w.data());
    d["vanish_time"] = tr.vanish_time ? py::cast(*tr.vanish_time) : py::none();
    d["floor_time"] = tr.floor_time ? py::cast(*tr.floor_time) : py::none();
    d["steps"] = tr.steps;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "gSQG saddle-collapse laboratory";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<CflViolation>(m, "CflViolation", PyExc_RuntimeError);

    m.def("gamma_fn", &gamma_fn, py::arg("x"));
    m.def("pochhammer", &pochhammer, py::arg("a"), py::arg("m"));
    m.def("hyp2f1", [](double a, double b, double c, double z) { return hyp2f1({a, b, c, z}); }, py::arg("a"),
          py::arg("b"), py::arg("c"), py::arg("z"));
    m.def("a_beta", &a_beta, py::arg("beta"));
    m.def("series_A", [](double b) { return series_A(b).value; }, py::arg("beta"));
    m.def("series_soma", [](double b) { return series_soma(b).value; }, py::arg("beta"));
    m.def("inc_beta", [](double x, double a, double b) { return inc_beta(x, a, b); }, py::arg("x"), py::arg("a"),
          py::arg("b"));

    m.def("angular_integral",
          [](double r, double b, bool printed) {
              return angular_integral(r, b, printed ? CoefficientFamily::half_parameter : CoefficientFamily::exact);
          },
          py::arg("r"), py::arg("beta"), py::arg("printed") = false);
    m.def("angular_integral_trapezoid", [](double r, double b) { return angular_integral_trapezoid(r, b); },
          py::arg("r"), py::arg("beta"));
    m.def("annulus_inner", [](double b) { return annulus_inner(b); }, py::arg("beta"));
    m.def("annulus_outer", [](double b, double L) { return annulus_outer(b, L); }, py::arg("beta"), py::arg("L"));
    m.def("quad_kernel_annulus",
          [](double b, double r_in, double r_out, double v1, double v2) {
              KernelSpec s;
              s.beta = b;
              s.r_in = r_in;
              s.r_out = r_out;
              s.v = {v1, v2};
              const QuadResult q = quad_kernel_annulus(s);
              return py::make_tuple(q.value, q.err_est);
          },
          py::arg("beta"), py::arg("r_in"), py::arg("r_out"), py::arg("v1") = 1.0, py::arg("v2") = 0.0);

    m.def("riesz_constant", &riesz_constant, py::arg("beta"));
    m.def("c_beta_L", [](double b, double L) { return c_beta_L(b, L); }, py::arg("beta"), py::arg("L"));
    m.def("d_beta_L", [](double b, double L) { return d_beta_L(b, L); }, py::arg("beta"), py::arg("L"));
    m.def("admissible_L", &admissible_L, py::arg("beta"), py::arg("K_const"));
    m.def("admissible_radius",
          [](double b, double s, double K, double L, double N, double theta0) {
              BoundContext c;
              c.beta = b;
              c.sigma = s;
              c.K_const = K;
              c.L = L;
              c.N_sigma = N;
              c.theta0_inf = theta0;
              c.C_beta_norm = riesz_constant(b);
              return admissible_radius(c);
          },
          py::arg("beta"), py::arg("sigma"), py::arg("K_const"), py::arg("L"), py::arg("N_sigma") = 1.0,
          py::arg("theta0_inf") = 1.0);
    m.def("stream_upper_bound",
          [](double b, double tau, double sup_norm, double l2_norm, double L_cut) {
              return stream_upper_bound(b, tau, {sup_norm, l2_norm}, L_cut, riesz_constant(b));
          },
          py::arg("beta"), py::arg("tau"), py::arg("sup_norm"), py::arg("l2_norm"), py::arg("L_cut") = 2.0);

    m.def("power_ode_exact_vanish_time", &power_ode_exact_vanish_time, py::arg("beta"), py::arg("gamma0"), py::arg("c"));
    m.def("blowup_time_lower_bound", [](double b, double g, double C) { return blowup_time_lower_bound(b, g, C); },
          py::arg("beta"), py::arg("gamma0"), py::arg("C"));
    m.def("integrate_angle",
          [](const std::string& envelope, double beta, double gamma0, double t_max, double c) {
              AngleRhs rhs;
              if (envelope == "upper")
                  rhs = upper_envelope(c, beta);
              else if (envelope == "power")
                  rhs = power_law_rhs(beta, c);
              else if (envelope == "lower")
                  rhs = lower_envelope(c, 0.0, beta);
              else
                  throw py::value_error("envelope must be upper, lower or power");
              return trajectory_dict(integrate_angle(rhs, gamma0, t_max));
          },
          py::arg("envelope"), py::arg("beta"), py::arg("gamma0"), py::arg("t_max"), py::arg("c") = 1.0);
    m.def("holder_distance_bound", &holder_distance_bound, py::arg("c1"), py::arg("c2"), py::arg("seminorm"),
          py::arg("sigma"));
    m.def("saddle_angle",
          [](double a, double d) {
              const SaddleAngle s = saddle_angle(a, d);
              return py::make_tuple(s.gamma_exact, s.gamma_approx);
          },
          py::arg("alpha"), py::arg("delta"));

    m.def("parse_config", &parse_config_string, py::arg("text"));
    m.def("dump_config", &dump_config, py::arg("config"));
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("beta", &SimConfig::beta)
        .def_readwrite("n", &SimConfig::n)
        .def_readwrite("box_length", &SimConfig::box_length)
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("alpha0", &SimConfig::alpha0)
        .def_readwrite("delta0", &SimConfig::delta0)
        .def_readwrite("sigma", &SimConfig::sigma)
        .def_readwrite("diag_every", &SimConfig::diag_every)
        .def_readwrite("level_values", &SimConfig::level_values)
        .def("set", [](SimConfig& c, const std::string& k, const std::string& v) { apply_override(c, k, v); })
        .def("__repr__", [](const SimConfig& c) { return dump_config(c); });

    m.def("make_initial_field", [](const SimConfig& c) { return to_array(make_initial_field(c)); }, py::arg("config"));
    m.def("riesz_stream",
          [](py::array_t<double> a, double beta, double box_length) {
              return to_array(riesz_stream(from_array(a, box_length), beta));
          },
          py::arg("theta"), py::arg("beta"), py::arg("box_length") = 2.0 * std::numbers::pi);
    m.def("run",
          [](const SimConfig& c) {
              py::list recs;
              ScalarField f;
              {
                  py::gil_scoped_release release;
                  std::vector<DiagRecord> out;
                  f = run(c, [&](const DiagRecord& r) { out.push_back(r); });
                  py::gil_scoped_acquire acquire;
                  for (const auto& r : out) recs.append(record_dict(r));
              }
              return py::make_tuple(recs, to_array(f));
          },
          py::arg("config"));
}
