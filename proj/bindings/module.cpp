#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdhom/csv_io.hpp"
#include "fdhom/gp_sim.hpp"
#include "fdhom/version.hpp"

namespace py = pybind11;
using namespace fdhom;

PYBIND11_MODULE(_fdhom, m) {
    m.doc() = "Depth-based two-sample homogeneity testing for functional data";
    m.attr("__version__") = kVersion;

    py::register_exception<ContractError>(m, "ContractError");
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError");
    py::register_exception<DegenerateSampleError>(m, "DegenerateSampleError");
    py::register_exception<NumericError>(m, "NumericError");
    py::register_exception<ParseError>(m, "ParseError");

    py::enum_<DepthKind>(m, "DepthKind")
        .value("FM", DepthKind::FraimanMuniz)
        .value("HMODAL", DepthKind::HModal)
        .value("RPD", DepthKind::RandomProjection)
        .value("BD", DepthKind::Band)
        .value("MBD", DepthKind::ModifiedBand);

    py::enum_<StatisticKind>(m, "StatisticKind")
        .value("P1", StatisticKind::P1)
        .value("P2", StatisticKind::P2)
        .value("P3", StatisticKind::P3)
        .value("P4", StatisticKind::P4);

    py::enum_<Tail>(m, "Tail")
        .value("LOWER", Tail::Lower)
        .value("UPPER", Tail::Upper);

    py::class_<Grid>(m, "Grid")
        .def(py::init<std::vector<double>>(), py::arg("points"))
        .def_property_readonly("points", &Grid::points)
        .def_property_readonly("length", &Grid::length)
        .def("__len__", &Grid::size);

    py::class_<FunctionalSample>(m, "FunctionalSample")
        .def(py::init<Grid, std::vector<Curve>, std::vector<std::string>>(),
             py::arg("grid"), py::arg("curves"), py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("grid", &FunctionalSample::grid)
        .def_property_readonly("curves", &FunctionalSample::curves)
        .def_property_readonly("labels", &FunctionalSample::labels)
        .def("__len__", &FunctionalSample::size);

    py::class_<DepthSpec>(m, "DepthSpec")
        .def(py::init([](DepthKind kind, double bandwidth_percentile, int projection_count,
                         int band_order, std::uint64_t rng_seed) {
                 DepthSpec s;
                 s.kind = kind;
                 s.bandwidth_percentile = bandwidth_percentile;
                 s.projection_count = projection_count;
                 s.band_order = band_order;
                 s.rng_seed = rng_seed;
                 s.validate();
                 return s;
             }),
             py::arg("kind") = DepthKind::FraimanMuniz, py::arg("bandwidth_percentile") = 15.0,
             py::arg("projection_count") = 50, py::arg("band_order") = 2,
             py::arg("rng_seed") = 0)
        .def_readwrite("kind", &DepthSpec::kind)
        .def_readwrite("bandwidth_percentile", &DepthSpec::bandwidth_percentile)
        .def_readwrite("projection_count", &DepthSpec::projection_count)
        .def_readwrite("band_order", &DepthSpec::band_order)
        .def_readwrite("rng_seed", &DepthSpec::rng_seed);

    m.def("trapezoid_integral",
          [](const std::vector<double>& values, const Grid& grid) {
              return trapezoid_integral(values, grid);
          },
          py::arg("values"), py::arg("grid"));
    m.def("l2_distance", &l2_distance, py::arg("a"), py::arg("b"), py::arg("grid"));
    m.def("finite_difference", &finite_difference, py::arg("sample"), py::arg("order") = 1);
    m.def("pointwise_ranks", &pointwise_ranks, py::arg("sample"));

    m.def("depth_values",
          [](const FunctionalSample& sample, const DepthSpec& spec) {
              return compute_depth(sample, spec).values;
          },
          py::arg("sample"), py::arg("spec"), "Per-curve depths in sample order");
    m.def("depth_wrt",
          [](const FunctionalSample& base, const Curve& g, const DepthSpec& spec) {
              return depth_wrt(base, g, spec);
          },
          py::arg("base"), py::arg("g"), py::arg("spec"));
    m.def("deepest",
          [](const FunctionalSample& base, const FunctionalSample& candidates,
             const DepthSpec& spec) {
              const DeepestResult r = deepest(base, candidates, spec);
              return py::make_tuple(r.index, r.depth);
          },
          py::arg("base"), py::arg("candidates"), py::arg("spec"));

    m.def("stat_p1",
          [](const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& d) {
              return stat_p1(f, g, d);
          });
    m.def("stat_p2",
          [](const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& d) {
              return stat_p2(f, g, d);
          });
    m.def("stat_p3",
          [](const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& d) {
              return stat_p3(f, g, d);
          });
    m.def("stat_p4",
          [](const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& d) {
              return stat_p4(f, g, d);
          });
    m.def("rejection_tail", &rejection_tail, py::arg("statistic"));

    py::class_<TestConfig>(m, "TestConfig")
        .def(py::init([](int bootstrap_count, double alpha, std::uint64_t rng_seed,
                         DepthSpec depth, StatisticKind statistic, int threads) {
                 TestConfig c;
                 c.bootstrap_count = bootstrap_count;
                 c.alpha = alpha;
                 c.rng_seed = rng_seed;
                 c.depth = depth;
                 c.statistic = statistic;
                 c.threads = threads;
                 c.validate();
                 return c;
             }),
             py::arg("bootstrap_count") = 1000, py::arg("alpha") = 0.05,
             py::arg("rng_seed") = 0, py::arg("depth") = DepthSpec{},
             py::arg("statistic") = StatisticKind::P3, py::arg("threads") = 1)
        .def_readwrite("bootstrap_count", &TestConfig::bootstrap_count)
        .def_readwrite("alpha", &TestConfig::alpha)
        .def_readwrite("rng_seed", &TestConfig::rng_seed)
        .def_readwrite("depth", &TestConfig::depth)
        .def_readwrite("statistic", &TestConfig::statistic)
        .def_readwrite("threads", &TestConfig::threads);

    py::class_<TestResult>(m, "TestResult")
        .def_readonly("observed", &TestResult::observed)
        .def_readonly("bootstrap_values", &TestResult::bootstrap_values)
        .def_readonly("critical_value", &TestResult::critical_value)
        .def_readonly("reject", &TestResult::reject)
        .def_readonly("tail", &TestResult::tail);

    m.def("bootstrap_test", &bootstrap_test, py::arg("f"), py::arg("g"), py::arg("config"));

    py::enum_<MeanKind>(m, "MeanKind")
        .value("LATE_PEAK", MeanKind::LatePeak)
        .value("EARLY_PEAK", MeanKind::EarlyPeak);

    py::class_<GpPopulation>(m, "GpPopulation")
        .def(py::init([](MeanKind mean, double shift, double cov_scale, double cov_range) {
                 GpPopulation p{mean, shift, cov_scale, cov_range};
                 p.validate();
                 return p;
             }),
             py::arg("mean") = MeanKind::LatePeak, py::arg("shift") = 0.0,
             py::arg("cov_scale") = 0.3, py::arg("cov_range") = 0.3)
        .def_readwrite("mean", &GpPopulation::mean)
        .def_readwrite("shift", &GpPopulation::shift)
        .def_readwrite("cov_scale", &GpPopulation::cov_scale)
        .def_readwrite("cov_range", &GpPopulation::cov_range);

    m.def("standard_population", &standard_population, py::arg("index"),
          "The six study scenarios; 0 is the reference");
    m.def("uniform_grid", &uniform_grid, py::arg("size"));
    m.def("mean_value", &mean_value, py::arg("kind"), py::arg("t"));
    m.def("cov_matrix", &cov_matrix, py::arg("population"), py::arg("grid"));
    m.def("draw_sample",
          [](const GpPopulation& pop, std::size_t count, const Grid& grid, std::uint64_t seed) {
              return draw_sample(pop, count, grid, seed);
          },
          py::arg("population"), py::arg("count"), py::arg("grid"), py::arg("seed"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](std::size_t grid_size, std::size_t curves_per_sample, int replications,
                         TestConfig test, int threads) {
                 SimConfig c;
                 c.grid_size = grid_size;
                 c.curves_per_sample = curves_per_sample;
                 c.replications = replications;
                 c.test = test;
                 c.threads = threads;
                 return c;
             }),
             py::arg("grid_size") = 30, py::arg("curves_per_sample") = 50,
             py::arg("replications") = 100, py::arg("test") = TestConfig{},
             py::arg("threads") = 1)
        .def_readwrite("grid_size", &SimConfig::grid_size)
        .def_readwrite("curves_per_sample", &SimConfig::curves_per_sample)
        .def_readwrite("replications", &SimConfig::replications)
        .def_readwrite("test", &SimConfig::test)
        .def_readwrite("threads", &SimConfig::threads);

    m.def("run_rejection_count", &run_rejection_count, py::arg("a"), py::arg("b"),
          py::arg("config"));

    m.def("load_sample_csv", &load_sample_csv, py::arg("path"));
}
