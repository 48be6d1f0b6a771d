#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rsm/adaptation.hpp"
#include "rsm/error.hpp"
#include "rsm/experiment.hpp"
#include "rsm/network.hpp"
#include "rsm/output.hpp"
#include "rsm/platform.hpp"
#include "rsm/scenario_file.hpp"
#include "rsm/withinday.hpp"

namespace py = pybind11;
using namespace rsm;

namespace {

// Ledger as {column: [value per day]}, plus "day" and "stage".
py::dict ledger_columns(const std::vector<DayLedger>& ledger) {
    py::dict out;
    std::vector<int> days;
    std::vector<std::string> stages;
    const auto& names = DayLedger::value_columns();
    std::vector<std::vector<double>> cols(names.size());
    for (const auto& row : ledger) {
        days.push_back(row.day);
        stages.push_back(row.stage);
        const auto v = row.values();
        for (std::size_t c = 0; c < v.size(); ++c) cols[c].push_back(v[c]);
    }
    out["day"] = days;
    out["stage"] = stages;
    for (std::size_t c = 0; c < names.size(); ++c) out[py::str(names[c])] = cols[c];
    return out;
}

Scenario scenario_from(const std::string& path, const std::vector<std::string>& overrides) {
    return config::build(config::load(path, overrides));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-sided ride-sourcing market simulator";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

    m.def("sigmoid_utility", &sigmoid_utility, py::arg("cu"), py::arg("beta") = 1.0);
    m.def("inverse_sigmoid", &inverse_sigmoid, py::arg("utility"), py::arg("beta") = 1.0);
    m.def("participation_probability", &participation_probability, py::arg("perceived"),
          py::arg("alternative"), py::arg("mu"), py::arg("notified") = true);
    m.def("driver_experience_delta", &driver_experience_delta, py::arg("reservation_wage"),
          py::arg("shift_hours"), py::arg("income"));
    m.def("traveler_experience_delta", &traveler_experience_delta, py::arg("pt_cost"),
          py::arg("rs_cost"));
    m.def("wom_delta", &wom_delta, py::arg("own_wom_utility"), py::arg("peer_perceived_utility"),
          py::arg("p_wom"));
    m.def("marketing_delta", &marketing_delta, py::arg("own_marketing_utility"), py::arg("p_m"));
    m.def(
        "update_component",
        [](double cu, double delta, double alpha, double beta, double cu_max_scale) {
            LearningParams p;
            p.alpha.fill(alpha);
            p.beta.fill(beta);
            p.cu_max_scale = cu_max_scale;
            return update_component(cu, delta, p, Component::experience);
        },
        py::arg("cu"), py::arg("delta"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
        py::arg("cu_max_scale") = 8.0);
    m.def(
        "compute_fare",
        [](double km, double per_km, double min_fare, double rate, bool discounted) {
            auto q = compute_fare(km, per_km, min_fare, rate, discounted);
            return py::make_tuple(q.traveler_pays, q.gross_fare);
        },
        py::arg("distance_km"), py::arg("per_km_fare") = 1.2, py::arg("min_fare") = 2.0,
        py::arg("discount_rate") = 0.0, py::arg("discounted") = false,
        "Returns (traveler_pays, gross_fare).");

    py::class_<NetworkGraph>(m, "NetworkGraph")
        .def_property_readonly("node_count", [](const NetworkGraph& g) { return g.nodes().size(); })
        .def_property_readonly("edge_count", [](const NetworkGraph& g) { return g.edges().size(); })
        .def_property_readonly("speed_kmh", &NetworkGraph::speed_kmh)
        .def(
            "travel_time",
            [](const NetworkGraph& g, NodeId a, NodeId b) {
                auto t = g.travel_time(a, b);
                return py::make_tuple(t.seconds, t.meters);
            },
            py::arg("origin"), py::arg("destination"), "Returns (seconds, meters).");
    m.def("make_grid", &make_grid, py::arg("n"), py::arg("spacing_m"), py::arg("speed_kmh") = 36.0);
    m.def("load_graph", &load_graph, py::arg("nodes_file"), py::arg("edges_file"),
          py::arg("speed_kmh") = 36.0);

    m.def(
        "stage_table",
        [](const std::string& path, const std::vector<std::string>& overrides) {
            return config::stage_table(config::schedule(config::load(path, overrides)));
        },
        py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{});
    m.def(
        "run_scenario",
        [](const std::string& path, const std::vector<std::string>& overrides) {
            Scenario sc = scenario_from(path, overrides);
            ReplicationResult res;
            {
                py::gil_scoped_release release;
                res = run_replications(sc);
            }
            py::list runs;
            for (const auto& r : res.runs) runs.append(ledger_columns(r.ledger));
            return runs;
        },
        py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{},
        "Runs every replication; returns one {column: values} dict per replication.");
    m.def(
        "run_to_directory",
        [](const std::string& path, const std::string& out_dir,
           const std::vector<std::string>& overrides) {
            auto resolved = config::load(path, overrides);
            Scenario sc = config::build(resolved);
            std::vector<std::string> written;
            {
                py::gil_scoped_release release;
                auto files = output::write_run(out_dir, run_replications(sc));
                for (const auto& p : files.paths) written.push_back(p.string());
            }
            return written;
        },
        py::arg("scenario"), py::arg("out_dir"), py::arg("overrides") = std::vector<std::string>{});
    m.def("ledger_columns", [] { return DayLedger::value_columns(); });
}
