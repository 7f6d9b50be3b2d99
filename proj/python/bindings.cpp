#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "experiments.hpp"
#include "ncf/compact.hpp"
#include "ncf/hup.hpp"
#include "ncf/motion.hpp"
#include "ncf/special_fn.hpp"

namespace py = pybind11;
using namespace ncf;

namespace {

special::BesselOrder order_from(double nu) {
  const double twice = 2.0 * nu;
  if (std::abs(twice - std::round(twice)) > 1e-12) throw py::value_error("Bessel order must be an integer or half-integer");
  return special::BesselOrder::from_twice(static_cast<int>(std::round(twice)));
}

compact::SpecPtr make_group(const std::string& name, int band) {
  if (name == "so2") return compact::make_so2_spec(band);
  if (name == "cyclic") return compact::make_cyclic_spec(band);
  if (name == "so3") return compact::make_so3_spec(band);
  throw py::value_error("group must be so2, cyclic or so3");
}

// pybind11 holders cannot be shared_ptr<const T>, so specs travel in a wrapper.
struct Group {
  compact::SpecPtr spec;
};

py::object cell_to_py(const cli::Cell& c) {
  return std::visit([](const auto& v) -> py::object { return py::cast(v); }, c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fourier transforms on compact groups and the motion group M(2)";

  m.def("bessel_j", [](double nu, double x) { return special::bessel_j(order_from(nu), x); }, py::arg("nu"), py::arg("x"),
        "J_nu(x) for integer or half-integer nu >= 0");
  m.def("bessel_zero", [](double nu, int k) { return special::bessel_zero(order_from(nu), k); }, py::arg("nu"),
        py::arg("k"), "k-th positive zero of J_nu");

  py::class_<Group>(m, "GroupSpec")
      .def_property_readonly("name", [](const Group& g) { return g.spec->name(); })
      .def_property_readonly("band_limit", [](const Group& g) { return g.spec->band_limit(); })
      .def_property_readonly("labels", [](const Group& g) {
        std::vector<int> out;
        for (const auto& ir : g.spec->irreps()) out.push_back(ir.label);
        return out;
      });
  m.def("group", [](const std::string& name, int band) { return Group{make_group(name, band)}; }, py::arg("name"),
        py::arg("band"));

  py::class_<compact::GroupFunction>(m, "GroupFunction")
      .def_static("random", [](const Group& g, std::uint64_t seed, double decay) {
        std::mt19937_64 rng(seed);
        return compact::random_group_function(g.spec, rng, decay);
      }, py::arg("spec"), py::arg("seed") = 0, py::arg("decay") = 0.0)
      .def_static("from_blocks", [](const Group& g, std::map<int, Eigen::MatrixXcd> blocks) {
        return compact::GroupFunction::from_blocks(g.spec, std::move(blocks));
      }, py::arg("spec"), py::arg("blocks"))
      .def("block", &compact::GroupFunction::block)
      .def("l2_norm", &compact::GroupFunction::l2_norm)
      .def("samples", &compact::GroupFunction::samples)
      .def("weyl", [](const compact::GroupFunction& g) { return compact::weyl_transform(g, *g.spec()).matrix; })
      .def("convolve", &compact::group_convolve)
      .def("adjoint", &compact::adjoint_function)
      .def("character_project", &compact::character_project, py::arg("label"));

  m.def("numerical_rank", [](const Eigen::MatrixXcd& a, double tol) { return compact::spectral(a, tol).rank; },
        py::arg("matrix"), py::arg("tol") = compact::kDefaultRankTol);
  m.def("singular_values", [](const Eigen::MatrixXcd& a) { return compact::spectral(a).singular_values; });

  m.def("calibrate_c2", [] {
    const auto c = motion::calibrate_c2();
    return py::make_tuple(c.c2, c.residual);
  }, "(c2, residual) from the Gaussian oracle");
  m.def("gaussian_rank_scan", [](int theta_mode, const std::vector<double>& a_grid, int N) {
    const motion::HarmonicTermFunction f({motion::HarmonicTerm{0, theta_mode, 1.0, motion::gaussian_profile()}});
    py::list out;
    for (const auto& r : motion::rank_scan(f, a_grid, N)) out.append(py::make_tuple(r.a, r.rank, r.sigma1, r.ratio));
    return out;
  }, py::arg("theta_mode"), py::arg("a_grid"), py::arg("N") = motion::kDefaultModes,
     "rows (a, rank, sigma1, sigma2/sigma1) for e^{-|x|^2/2} e^{i n theta}");

  m.def("sphere_hup", [](double r, int n, int k_max) {
    const auto c = hup::sphere_hup_certificate(r, n, k_max);
    py::dict d;
    d["verdict"] = c.verdict();
    d["fails_at"] = c.fails_at ? py::cast(*c.fails_at) : py::none();
    d["values"] = c.values;
    d["min_abs"] = c.min_abs;
    return d;
  }, py::arg("r"), py::arg("n") = 2, py::arg("k_max") = 20);

  m.def("experiments", [] {
    std::vector<std::string> names;
    for (const auto& e : cli::registry()) names.push_back(e.name);
    return names;
  });
  m.def("run_experiment", [](const std::string& name, const std::string& params_json, std::uint64_t seed) {
    const auto* e = cli::find_experiment(name);
    if (!e) throw py::key_error("unknown experiment '" + name + "'");
    std::optional<cli::Calibration> cal;
    if (e->needs_calibration) cal = cli::parse_calibration(cli::compute_calibration());
    cli::RunResult res;
    {
      py::gil_scoped_release nogil;
      res = e->run(cli::merge_params(e->defaults, cli::json::parse(params_json)), seed, cal);
    }
    py::list rows;
    for (const auto& r : res.table.rows) {
      py::dict d;
      for (std::size_t i = 0; i < r.size(); ++i) d[py::str(res.table.columns[i])] = cell_to_py(r[i]);
      rows.append(d);
    }
    return py::make_tuple(rows, res.all_pass);
  }, py::arg("name"), py::arg("params_json") = "{}", py::arg("seed") = 0,
     "(rows, all_pass); calibration is computed in memory when needed");
}
