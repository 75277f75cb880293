#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mphase/analytic.hpp"
#include "mphase/chioptim.hpp"
#include "mphase/costs.hpp"
#include "mphase/errors.hpp"
#include "mphase/integrate.hpp"
#include "mphase/povm.hpp"
#include "mphase/states.hpp"
#include "mphase/symbasis.hpp"

namespace py = pybind11;
using namespace mphase;

namespace {

PhaseVector to_phases(const std::vector<double>& v) { return PhaseVector(v); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal covariant POVM for simultaneous estimation of d-1 phases";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidDimension>(m, "InvalidDimension", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<Overflow>(m, "Overflow", base.ptr());
  py::register_exception<NotFound>(m, "NotFound", base.ptr());
  py::register_exception<GridTooCoarse>(m, "GridTooCoarse", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<NotHolevoClass>(m, "NotHolevoClass", base.ptr());
  py::register_exception<NonHermitian>(m, "NonHermitian", base.ptr());

  // symbasis
  m.def("enumerate_occupations", [](int d, int N) {
    std::vector<std::vector<int>> out;
    for (const auto& occ : enumerate_occupations(d, N)) {
      out.emplace_back(occ.counts().begin(), occ.counts().end());
    }
    return out;
  }, py::arg("d"), py::arg("N"));
  m.def("multinomial", [](std::vector<int> counts) { return multinomial(OccupationVector(std::move(counts))); },
        py::arg("counts"));
  m.def("sym_dim", &sym_dim, py::arg("d"), py::arg("N"));
  m.def("index_of", [](std::vector<int> counts) { return index_of(OccupationVector(std::move(counts))); },
        py::arg("counts"));

  // states
  py::class_<AmplitudeVector>(m, "AmplitudeVector")
      .def(py::init<int, int, std::vector<Complex>>(), py::arg("d"), py::arg("N"), py::arg("amps"))
      .def_property_readonly("d", &AmplitudeVector::levels)
      .def_property_readonly("N", &AmplitudeVector::copies)
      .def_property_readonly("amps", [](const AmplitudeVector& a) {
        return std::vector<Complex>(a.amps().begin(), a.amps().end());
      })
      .def("norm_squared", &AmplitudeVector::norm_squared)
      .def("__len__", &AmplitudeVector::size);
  m.def("psi0_amplitudes", &psi0_amplitudes, py::arg("d"), py::arg("N"));
  m.def("apply_phases", [](const AmplitudeVector& a, const std::vector<double>& p) {
    return apply_phases(a, to_phases(p));
  }, py::arg("amps"), py::arg("phases"));
  m.def("overlap", &overlap, py::arg("a"), py::arg("b"));

  // costs
  py::class_<CostSpec>(m, "CostSpec")
      .def(py::init<int, double, std::map<LatticeVector, double>>(), py::arg("phase_count"),
           py::arg("c0"), py::arg("coeffs"))
      .def_property_readonly("phase_count", &CostSpec::phase_count)
      .def_property_readonly("c0", &CostSpec::c0)
      .def_property_readonly("coeffs", &CostSpec::coeffs)
      .def("evaluate", [](const CostSpec& s, const std::vector<double>& p) { return s.evaluate(to_phases(p)); },
           py::arg("phases"));
  m.def("fidelity_point", [](int d, const std::vector<double>& p) { return fidelity_point(d, to_phases(p)); },
        py::arg("d"), py::arg("phases"));
  m.def("variance_point", [](const std::vector<double>& p) { return variance_point(to_phases(p)); },
        py::arg("phases"));
  m.def("fidelity_cost_spec", &fidelity_cost_spec, py::arg("d"));
  m.def("variance_cost_spec", &variance_cost_spec, py::arg("phase_count"));
  m.def("is_holevo_class", &is_holevo_class, py::arg("spec"));

  // povm
  m.def("e_overlap", [](const AmplitudeVector& a, const std::vector<double>& d) {
    return e_overlap(a, to_phases(d));
  }, py::arg("amps"), py::arg("deltas"));
  m.def("conditional_density", [](const AmplitudeVector& a, const std::vector<double>& d) {
    return conditional_density(a, to_phases(d));
  }, py::arg("amps"), py::arg("deltas"));
  m.def("density_fourier_coefficients", &density_fourier_coefficients, py::arg("amps"));
  m.def("completeness_defect", &completeness_defect, py::arg("d"), py::arg("N"), py::arg("points_per_axis"));

  // analytic
  m.def("avg_fidelity_qudit", &avg_fidelity_qudit, py::arg("d"), py::arg("N"));
  m.def("avg_fidelity_qutrit", &avg_fidelity_qutrit, py::arg("N"));
  m.def("avg_fidelity_single", &avg_fidelity_single, py::arg("d"));
  m.def("universal_fidelity_single", &universal_fidelity_single, py::arg("d"));
  m.def("avg_variance_qutrit", &avg_variance_qutrit, py::arg("N"));
  m.def("min_cost", &min_cost, py::arg("spec"), py::arg("amps"));

  // chioptim
  py::class_<ChiMatrix>(m, "ChiMatrix")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("entries"))
      .def_property_readonly("dim", &ChiMatrix::dim)
      .def_property_readonly("entries", &ChiMatrix::entries);
  m.def("chi_optimal", &chi_optimal, py::arg("dim"));
  m.def("random_feasible_chi", &random_feasible_chi, py::arg("dim"), py::arg("seed"));
  m.def("psd_check", &psd_check, py::arg("chi"), py::arg("tol") = 1e-10);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("trials", &BoundReport::trials)
      .def_readonly("violations", &BoundReport::violations)
      .def_readonly("infeasible", &BoundReport::infeasible)
      .def_readonly("min_cost", &BoundReport::min_cost)
      .def_readonly("min_margin", &BoundReport::min_margin)
      .def_readonly("optimal_margin", &BoundReport::optimal_margin)
      .def_property_readonly("passed", &BoundReport::passed);
  m.def("verify_bound",
        py::overload_cast<const CostSpec&, const AmplitudeVector&, std::size_t, std::uint64_t>(&verify_bound),
        py::arg("spec"), py::arg("amps"), py::arg("trials"), py::arg("seed"));

  // integrate
  m.def("avg_cost_fourier", &avg_cost_fourier, py::arg("spec"), py::arg("amps"), py::arg("chi"));
  m.def("avg_cost_quadrature", &avg_cost_quadrature, py::arg("spec"), py::arg("amps"), py::arg("chi"),
        py::arg("points_per_axis"), py::arg("budget") = kDefaultPointBudget);

  py::class_<McReport>(m, "McReport")
      .def_readonly("mean", &McReport::mean)
      .def_readonly("stderr", &McReport::std_error)
      .def_readonly("samples", &McReport::samples)
      .def_readonly("acceptance_rate", &McReport::acceptance_rate)
      .def_readonly("seed", &McReport::seed);
  m.def("mc_average_cost",
        [](const CostSpec& spec, const AmplitudeVector& amps, std::size_t samples, std::uint64_t seed,
           unsigned workers) {
          py::gil_scoped_release release;
          return mc_average_cost(spec, amps, samples, seed, workers);
        },
        py::arg("spec"), py::arg("amps"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 0);
}
