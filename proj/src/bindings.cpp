#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sphsolve/driver.hpp"
#include "sphsolve/hessdesc.hpp"
#include "sphsolve/mss.hpp"
#include "sphsolve/newton.hpp"
#include "sphsolve/serialize.hpp"
#include "sphsolve/spectral.hpp"
#include "sphsolve/verify.hpp"

namespace py = pybind11;
using namespace sphsolve;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solvers for random homogeneous polynomial systems on the sphere";

  py::class_<PolynomialSystem>(m, "PolynomialSystem")
      .def_property_readonly("d", &PolynomialSystem::dim)
      .def_property_readonly("n", &PolynomialSystem::num_polys)
      .def_property_readonly("degrees", &PolynomialSystem::degrees)
      .def_property_readonly("total_coeffs", &PolynomialSystem::total_coeffs)
      .def("evaluate", &PolynomialSystem::evaluate)
      .def("jacobian", &PolynomialSystem::jacobian)
      .def("energy", &PolynomialSystem::energy)
      .def("energy_gradient", &PolynomialSystem::energy_gradient)
      .def("energy_hessian", &PolynomialSystem::energy_hessian)
      .def("to_json", [](const PolynomialSystem& s) {
        return system_to_json(s).dump();
      })
      .def_static("from_json", [](const std::string& text) {
        return load_system(nlohmann::json::parse(text));
      });

  m.def("sample_system", &sample_system, py::arg("d"), py::arg("degrees"),
        py::arg("seed"));

  m.def("newton_step", [](const PolynomialSystem& sys, const Vec& x) {
    NewtonStepResult r = newton_step(sys, SpherePoint(x));
    return py::make_tuple(r.next.coords, r.step, r.sigma_min_tangent,
                          r.degenerate);
  });

  m.def(
      "certify",
      [](const PolynomialSystem& sys, const Vec& x, const std::string& mode) {
        CertifyConfig cfg;
        cfg.mode = mode == "analytic" ? CertMode::analytic : CertMode::empirical;
        CertReport rep = certify(sys, SpherePoint(x), cfg);
        return cert_to_json(rep).dump();
      },
      py::arg("sys"), py::arg("x"), py::arg("mode") = "empirical");

  m.def(
      "find_descent_direction",
      [](const PolynomialSystem& sys, const Vec& x) {
        DirectionResult r = find_descent_direction(sys, SpherePoint(x));
        if (!r.ok) throw std::runtime_error("direction finder degenerate");
        return py::make_tuple(r.v, r.rayleigh);
      },
      py::arg("sys"), py::arg("x"));

  m.def("s_max_sq", &s_max_sq);
  m.def("s_min", &s_min, py::arg("A"), py::arg("kappa"));

  m.def(
      "hd_solve",
      [](const PolynomialSystem& sys, double C1, long max_iters) {
        HDConfig cfg;
        if (C1 > 0) cfg.C1 = C1;
        if (max_iters > 0) cfg.max_iters = max_iters;
        HDResult r = hd_run(sys, cfg);
        py::dict out;
        out["solved"] = r.outcome == HDOutcome::point;
        if (r.outcome == HDOutcome::point) out["point"] = r.point.coords;
        out["iterations"] = r.iterations;
        out["certified"] = r.certification.certified;
        out["termination"] = r.termination;
        return out;
      },
      py::arg("sys"), py::arg("C1") = -1.0, py::arg("max_iters") = -1);

  m.def(
      "mss_solve",
      [](const PolynomialSystem& sys, double u1, double u2, double u3,
         double delta, double C0) {
        MSSParams prm =
            mss_params(sys.dim(), sys.max_degree(), u1, u2, u3, delta, C0);
        MSSResult r = mss_run(sys, prm);
        py::dict out;
        out["solved"] = r.outcome == MSSOutcome::point;
        if (r.outcome == MSSOutcome::point) out["point"] = r.point.coords;
        out["blocks_visited"] = r.blocks_visited;
        out["certified"] = r.certification.certified;
        out["termination"] = r.termination;
        return out;
      },
      py::arg("sys"), py::arg("u1") = 2.0, py::arg("u2") = 0.25,
      py::arg("u3") = 1e3, py::arg("delta") = 0.1, py::arg("C0") = 1.0);

  m.def(
      "solve_auto",
      [](int d, int p, double delta, std::uint64_t seed) {
        SolverConfig cfg;
        cfg.delta = delta;
        cfg.seed = seed;
        return dispatch_generate(d, p, cfg).to_json().dump();
      },
      py::arg("d"), py::arg("p"), py::arg("delta") = 0.1, py::arg("seed") = 0);

  m.def("kac_rice_mean", &kac_rice_mean, py::arg("d"), py::arg("degrees"));
  m.def(
      "circle_roots",
      [](const PolynomialSystem& sys, int grid) {
        auto rs = circle_roots(sys, grid);
        std::vector<Vec> pts;
        for (const auto& r : rs.roots) pts.push_back(r.coords);
        return pts;
      },
      py::arg("sys"), py::arg("grid_size") = 100000);
}
