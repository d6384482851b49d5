#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sector_primes/bounds.hpp"
#include "sector_primes/envelope.hpp"
#include "sector_primes/errors.hpp"
#include "sector_primes/lemma.hpp"
#include "sector_primes/phase.hpp"
#include "sector_primes/pipeline.hpp"
#include "sector_primes/report.hpp"
#include "sector_primes/sieve.hpp"

namespace py = pybind11;
namespace sp = sector_primes;

namespace {

sp::SieveConfig make_config(std::uint64_t limit, std::uint64_t segment_size, unsigned workers) {
    sp::SieveConfig c;
    c.limit = limit;
    c.segment_size = segment_size;
    c.worker_count = workers;
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sector sums of prime reciprocals: native core";
    m.attr("__version__") = std::string(sp::version());

    py::register_exception<sp::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<sp::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<sp::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<sp::PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<sp::OutOfRangeError>(m, "OutOfRangeError", PyExc_IndexError);
    py::register_exception<sp::ResumeError>(m, "ResumeError", PyExc_RuntimeError);

    py::enum_<sp::Sector>(m, "Sector")
        .value("Plus", sp::Sector::Plus)
        .value("Minus", sp::Sector::Minus)
        .value("Neither", sp::Sector::Neither);
    py::enum_<sp::ShellKind>(m, "ShellKind").value("A", sp::ShellKind::A).value("B", sp::ShellKind::B);

    py::class_<sp::SectorParams>(m, "SectorParams")
        .def(py::init(&sp::SectorParams::make), py::arg("y") = 10.0, py::arg("alpha") = 0.0, py::arg("K") = 0.5)
        .def_readonly("y", &sp::SectorParams::y)
        .def_readonly("alpha", &sp::SectorParams::alpha)
        .def_readonly("K", &sp::SectorParams::K)
        .def_readonly("beta", &sp::SectorParams::beta)
        .def("__repr__", [](const sp::SectorParams& p) {
            return "SectorParams(y=" + sp::format_double(p.y) + ", alpha=" + sp::format_double(p.alpha) +
                   ", K=" + sp::format_double(p.K) + ")";
        });

    py::class_<sp::ShellId>(m, "ShellId")
        .def_readonly("kind", &sp::ShellId::kind)
        .def_readonly("n", &sp::ShellId::n)
        .def("__eq__", [](const sp::ShellId& a, const sp::ShellId& b) { return a == b; })
        .def("__repr__", [](const sp::ShellId& s) {
            return "ShellId(" + std::string(sp::to_string(s.kind)) + ", " + std::to_string(s.n) + ")";
        });

    py::class_<sp::PhaseResult>(m, "PhaseResult")
        .def_readonly("p", &sp::PhaseResult::p)
        .def_readonly("theta", &sp::PhaseResult::theta)
        .def_readonly("cos_theta", &sp::PhaseResult::cos_theta)
        .def_readonly("sector", &sp::PhaseResult::sector)
        .def_readonly("shell", &sp::PhaseResult::shell)
        .def_readonly("boundary_flag", &sp::PhaseResult::boundary_flag);

    py::class_<sp::ShellInterval>(m, "ShellInterval")
        .def_readonly("kind", &sp::ShellInterval::kind)
        .def_readonly("n", &sp::ShellInterval::n)
        .def_readonly("lo_exclusive", &sp::ShellInterval::lo_exclusive)
        .def_readonly("hi_inclusive", &sp::ShellInterval::hi_inclusive)
        .def("__contains__", &sp::ShellInterval::contains);

    py::class_<sp::BoundConstants>(m, "BoundConstants")
        .def_readonly("c", &sp::BoundConstants::c)
        .def_readonly("d", &sp::BoundConstants::d)
        .def_readwrite("N", &sp::BoundConstants::N)
        .def_readwrite("M", &sp::BoundConstants::M);

    py::class_<sp::TripleCertificate>(m, "TripleCertificate")
        .def_readonly("p1", &sp::TripleCertificate::p1)
        .def_readonly("p2", &sp::TripleCertificate::p2)
        .def_readonly("p3", &sp::TripleCertificate::p3)
        .def_readonly("h", &sp::TripleCertificate::h)
        .def_readonly("k", &sp::TripleCertificate::k)
        .def_readonly("residual", &sp::TripleCertificate::residual)
        .def_readonly("exact_inequality_holds", &sp::TripleCertificate::exact_inequality_holds)
        .def_readonly("lhs_digits", &sp::TripleCertificate::lhs_digits)
        .def_readonly("rhs_digits", &sp::TripleCertificate::rhs_digits);

    py::class_<sp::RayHit>(m, "RayHit")
        .def_readonly("p", &sp::RayHit::p)
        .def_readonly("n", &sp::RayHit::n)
        .def_readonly("phase_distance", &sp::RayHit::phase_distance);

    m.def("primes_up_to", &sp::primes_up_to, py::arg("limit"));
    m.def("prime_count",
          [](std::uint64_t x, std::uint64_t segment_size, unsigned workers) {
              return sp::prime_count(make_config(std::max<std::uint64_t>(x, 2), segment_size, workers), x);
          },
          py::arg("x"), py::arg("segment_size") = sp::kDefaultSegmentBytes, py::arg("workers") = 1u);

    m.def("phase_of", &sp::phase_of, py::arg("params"), py::arg("p"));
    m.def("shell_interval", &sp::shell_interval, py::arg("params"), py::arg("kind"), py::arg("n"));
    m.def("shell_index_of", &sp::shell_index_of, py::arg("params"), py::arg("p"));

    m.def("constants_of", &sp::constants_of, py::arg("params"));
    m.def("positivity_threshold", &sp::positivity_threshold, py::arg("params"));
    m.def("find_N", &sp::find_N, py::arg("params"), py::arg("M"));
    m.def("shell_count_lower_bound", &sp::shell_count_lower_bound, py::arg("params"), py::arg("constants"),
          py::arg("kind"), py::arg("n"));
    m.def("shell_recip_lower_bound", &sp::shell_recip_lower_bound, py::arg("params"), py::arg("constants"),
          py::arg("kind"), py::arg("n"));
    m.def("shell_recip_two_fraction", &sp::shell_recip_two_fraction, py::arg("params"), py::arg("kind"),
          py::arg("n"));
    m.def("comparison_series_partial_sum", &sp::comparison_series_partial_sum, py::arg("params"),
          py::arg("constants"), py::arg("kind"), py::arg("from_n"), py::arg("to_n"));
    m.def("series_crossing", &sp::series_crossing, py::arg("params"), py::arg("constants"), py::arg("kind"),
          py::arg("target"), py::arg("max_terms"));

    m.def("check_triple", &sp::check_triple, py::arg("p1"), py::arg("p2"), py::arg("p3"), py::arg("h"), py::arg("k"));
    m.def("best_rational_approximation", &sp::best_rational_approximation, py::arg("x"), py::arg("max_denominator"));
    m.def("rational_exponent_guess", &sp::rational_exponent_guess, py::arg("p1"), py::arg("p2"), py::arg("p3"),
          py::arg("max_denominator"));
    m.def("is_prime", &sp::is_prime, py::arg("n"));
    m.def("scan_ray",
          [](double y, double gamma, double tolerance, std::uint64_t limit, unsigned workers) {
              return sp::scan_ray(sp::RaySpec::make(y, gamma, tolerance),
                                  make_config(limit, sp::kDefaultSegmentBytes, workers));
          },
          py::arg("y"), py::arg("gamma"), py::arg("tolerance"), py::arg("limit"), py::arg("workers") = 1u);

    // Full pipeline; the report comes back as the JSON text of the CLI.
    m.def("run_json",
          [](const sp::SectorParams& params, std::uint64_t limit, std::uint64_t segment_size, unsigned workers,
             bool with_timings) {
              const sp::SieveConfig config = make_config(limit, segment_size, workers);
              sp::RunReport report;
              {
                  py::gil_scoped_release release;
                  report = sp::run(params, config);
              }
              return sp::to_json(report, with_timings).dump();
          },
          py::arg("params"), py::arg("limit"), py::arg("segment_size") = sp::kDefaultSegmentBytes,
          py::arg("workers") = 1u, py::arg("with_timings") = true);
    m.def("envelope_json",
          [](const sp::SectorParams& params, std::uint64_t limit, unsigned workers) {
              return sp::to_json(sp::find_envelope_M(params, make_config(limit, sp::kDefaultSegmentBytes, workers)))
                  .dump();
          },
          py::arg("params"), py::arg("limit"), py::arg("workers") = 1u);
}
